#include "dbang/syntax.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace dbang {

namespace {

class Enumerator {
public:
    Enumerator(Lang lang, std::vector<std::string> pool) : lang_(lang), pool_(std::move(pool)) {
        static const char* names[] = {"x", "y", "z", "w", "u", "v", "a", "b", "c", "d", "e", "f"};
        for (const char* n : names)
            if (std::find(pool_.begin(), pool_.end(), n) == pool_.end()) hints_.push_back(n);
    }

    const std::vector<Term>& exact(std::size_t s, std::uint32_t depth) {
        auto key = std::make_pair(s, depth);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<Term> out;
        build(s, depth, out);
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    Lang lang_;
    std::vector<std::string> pool_;
    std::vector<std::string> hints_;
    std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Term>> memo_;

    std::string hint(std::uint32_t depth) const {
        if (depth < hints_.size()) return hints_[depth];
        return "x" + std::to_string(depth);
    }

    bool has_bang() const { return lang_ == Lang::DBang || lang_ == Lang::DBangBot; }
    bool has_der() const { return lang_ != Lang::Lambda; }

    void build(std::size_t s, std::uint32_t depth, std::vector<Term>& out) {
        if (s == 0) return;
        if (s == 1) {
            for (std::uint32_t i = 0; i < depth; ++i) out.push_back(bvar(i));
            for (const auto& n : pool_) out.push_back(var(n));
            if (lang_ == Lang::DBangBot) out.push_back(bot());
            if (lang_ == Lang::Resource) out.push_back(bag({}));
            return;
        }
        for (const auto& b : exact(s - 1, depth + 1)) out.push_back(lam(hint(depth), b));
        if (has_bang())
            for (const auto& b : exact(s - 1, depth)) out.push_back(bang(b));
        if (has_der())
            for (const auto& b : exact(s - 1, depth)) out.push_back(der(b));
        for (std::size_t l = 1; l + 1 < s; ++l) {
            std::size_t r = s - 1 - l;
            const auto& fs = exact(l, depth);
            const auto& as = exact(r, depth);
            for (const auto& f : fs)
                for (const auto& a : as) out.push_back(app(f, a));
        }
        for (std::size_t l = 1; l + 1 < s; ++l) {
            std::size_t r = s - 1 - l;
            const auto& bs = exact(l, depth + 1);
            const auto& as = exact(r, depth);
            for (const auto& b : bs)
                for (const auto& a : as) out.push_back(esub(hint(depth), b, a));
        }
        if (lang_ == Lang::Resource) bags(s - 1, depth, out);
    }

    // Multisets of elements with total size `budget`, generated as
    // non-decreasing index sequences over a sorted candidate pool.
    void bags(std::size_t budget, std::uint32_t depth, std::vector<Term>& out) {
        std::vector<Term> pool;
        for (std::size_t k = 1; k <= budget; ++k) {
            const auto& v = exact(k, depth);
            pool.insert(pool.end(), v.begin(), v.end());
        }
        std::sort(pool.begin(), pool.end(), TermLess{});
        std::vector<Term> cur;
        multisets(pool, 0, budget, cur, out);
    }

    void multisets(const std::vector<Term>& pool, std::size_t from, std::size_t left, std::vector<Term>& cur,
                   std::vector<Term>& out) {
        if (left == 0) {
            if (!cur.empty()) out.push_back(bag(cur));
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            if (pool[i]->size > left) break;  // pool is sorted by size
            cur.push_back(pool[i]);
            multisets(pool, i, left - pool[i]->size, cur, out);
            cur.pop_back();
        }
    }
};

}  // namespace

std::vector<Term> enumerate_terms_exact(std::size_t size, Lang lang, const std::vector<std::string>& pool) {
    Enumerator e(lang, pool);
    return e.exact(size, 0);
}

std::vector<Term> enumerate_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool) {
    Enumerator e(lang, pool);
    std::vector<Term> out;
    for (std::size_t s = 1; s <= size_cap; ++s) {
        const auto& v = e.exact(s, 0);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::size_t count_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool) {
    Enumerator e(lang, pool);
    std::size_t n = 0;
    for (std::size_t s = 1; s <= size_cap; ++s) n += e.exact(s, 0).size();
    return n;
}

std::vector<Term> sample_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool,
                               std::size_t count, std::uint64_t seed) {
    std::vector<Term> all = enumerate_terms(size_cap, lang, pool);
    if (count >= all.size()) return all;
    // partial Fisher-Yates with an explicit modulus keeps the draw portable
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

}  // namespace dbang
