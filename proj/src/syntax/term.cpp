#include "dbang/syntax.hpp"

#include <algorithm>

namespace dbang {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term make(Kind k, bool is_free, std::uint32_t idx, std::string name, std::vector<Term> kids) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->free = is_free;
    n->index = idx;
    n->name = std::move(name);
    n->kids = std::move(kids);
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(k));
    std::uint32_t sz = 1;
    std::uint32_t loose = 0;
    if (k == Kind::Var) {
        if (is_free)
            h = mix(h, std::hash<std::string>{}(n->name));
        else {
            h = mix(h, 0xb0b + idx);
            loose = idx + 1;
        }
    }
    for (std::size_t i = 0; i < n->kids.size(); ++i) {
        const auto& c = n->kids[i];
        h = mix(h, c->hash);
        sz += c->size;
        std::uint32_t l = c->loose;
        if ((k == Kind::Lam || k == Kind::ESub) && i == 0) l = l > 0 ? l - 1 : 0;
        loose = std::max(loose, l);
    }
    n->hash = h;
    n->size = sz;
    n->loose = loose;
    return n;
}

}  // namespace

Term var(const std::string& name) { return make(Kind::Var, true, 0, name, {}); }
Term bvar(std::uint32_t index) { return make(Kind::Var, false, index, {}, {}); }
Term app(Term fun, Term arg) { return make(Kind::App, false, 0, {}, {std::move(fun), std::move(arg)}); }
Term lam(const std::string& hint, Term body) { return make(Kind::Lam, false, 0, hint, {std::move(body)}); }
Term bang(Term body) { return make(Kind::Bang, false, 0, {}, {std::move(body)}); }
Term der(Term body) { return make(Kind::Der, false, 0, {}, {std::move(body)}); }
Term esub(const std::string& hint, Term body, Term arg) {
    return make(Kind::ESub, false, 0, hint, {std::move(body), std::move(arg)});
}
Term bag(std::vector<Term> elements) {
    std::sort(elements.begin(), elements.end(), TermLess{});
    return make(Kind::Bag, false, 0, {}, std::move(elements));
}
Term bot() {
    static const Term b = make(Kind::Bot, false, 0, {}, {});
    return b;
}

Term lam_named(const std::string& x, const Term& body) { return lam(x, abstract(body, x)); }
Term esub_named(const Term& body, const std::string& x, const Term& arg) { return esub(x, abstract(body, x), arg); }

Term rebuild(const Term& t, std::vector<Term> kids) {
    if (t->kind == Kind::Bag) return bag(std::move(kids));
    bool same = kids.size() == t->kids.size();
    for (std::size_t i = 0; same && i < kids.size(); ++i) same = kids[i].get() == t->kids[i].get();
    if (same) return t;
    return make(t->kind, t->free, t->index, t->name, std::move(kids));
}

int compare(const Term& a, const Term& b) {
    if (a.get() == b.get()) return 0;
    if (a->size != b->size) return a->size < b->size ? -1 : 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->kind == Kind::Var) {
        if (a->free != b->free) return a->free ? -1 : 1;
        if (a->free) return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
        return a->index == b->index ? 0 : (a->index < b->index ? -1 : 1);
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (int c = compare(a->kids[i], b->kids[i])) return c;
    return 0;
}

bool equal(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (a->hash != b->hash) return false;
    return compare(a, b) == 0;
}

std::size_t size(const Term& t) { return t->size; }

Term canonicalize(const Term& t) {
    if (t->kids.empty()) return t;
    std::vector<Term> ks;
    ks.reserve(t->kids.size());
    for (const auto& k : t->kids) ks.push_back(canonicalize(k));
    return rebuild(t, std::move(ks));
}

bool alpha_eq(const Term& a, const Term& b) { return equal(canonicalize(a), canonicalize(b)); }

namespace {

std::uint32_t binder_depth(const Term& t, std::size_t child) {
    return ((t->kind == Kind::Lam || t->kind == Kind::ESub) && child == 0) ? 1 : 0;
}

Term shift_rec(const Term& t, std::int64_t d, std::uint32_t cutoff) {
    if (t->loose <= cutoff) return t;
    if (t->kind == Kind::Var) return bvar(static_cast<std::uint32_t>(static_cast<std::int64_t>(t->index) + d));
    std::vector<Term> ks;
    ks.reserve(t->kids.size());
    for (std::size_t i = 0; i < t->kids.size(); ++i) ks.push_back(shift_rec(t->kids[i], d, cutoff + binder_depth(t, i)));
    return rebuild(t, std::move(ks));
}

Term inst_rec(const Term& t, const Term& arg, std::uint32_t depth) {
    if (t->loose <= depth) return t;
    if (t->kind == Kind::Var) {
        if (t->index == depth) return shift(arg, depth, 0);
        return bvar(t->index - 1);
    }
    std::vector<Term> ks;
    ks.reserve(t->kids.size());
    for (std::size_t i = 0; i < t->kids.size(); ++i) ks.push_back(inst_rec(t->kids[i], arg, depth + binder_depth(t, i)));
    return rebuild(t, std::move(ks));
}

Term abs_rec(const Term& t, const std::string& x, std::uint32_t depth) {
    if (t->kind == Kind::Var) {
        if (t->free) return t->name == x ? bvar(depth) : t;
        return t->index >= depth ? bvar(t->index + 1) : t;
    }
    if (t->kids.empty()) return t;
    std::vector<Term> ks;
    ks.reserve(t->kids.size());
    for (std::size_t i = 0; i < t->kids.size(); ++i) ks.push_back(abs_rec(t->kids[i], x, depth + binder_depth(t, i)));
    return rebuild(t, std::move(ks));
}

void count0_rec(const Term& t, std::uint32_t depth, std::size_t& n) {
    if (t->loose <= depth) return;
    if (t->kind == Kind::Var) {
        if (t->index == depth) ++n;
        return;
    }
    for (std::size_t i = 0; i < t->kids.size(); ++i) count0_rec(t->kids[i], depth + binder_depth(t, i), n);
}

Term fill_rec(const Term& t, const std::vector<Term>& fillers, std::uint32_t depth, std::size_t& next) {
    if (t->loose <= depth) return t;
    if (t->kind == Kind::Var) {
        if (t->index == depth) return shift(fillers.at(next++), depth, 0);
        return bvar(t->index - 1);
    }
    std::vector<Term> ks;
    ks.reserve(t->kids.size());
    for (std::size_t i = 0; i < t->kids.size(); ++i) ks.push_back(fill_rec(t->kids[i], fillers, depth + binder_depth(t, i), next));
    return rebuild(t, std::move(ks));
}

void free_rec(const Term& t, std::set<std::string>& out) {
    if (t->kind == Kind::Var) {
        if (t->free) out.insert(t->name);
        return;
    }
    for (const auto& k : t->kids) free_rec(k, out);
}

}  // namespace

Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff) {
    if (d == 0) return t;
    return shift_rec(t, d, cutoff);
}

Term instantiate(const Term& body, const Term& arg) { return inst_rec(body, arg, 0); }

Term abstract(const Term& t, const std::string& x) { return abs_rec(t, x, 0); }

std::set<std::string> free_names(const Term& t) {
    std::set<std::string> out;
    free_rec(t, out);
    return out;
}

bool is_closed_under(const Term& t, std::uint32_t depth) { return t->loose <= depth; }

bool contains_kind(const Term& t, Kind k) {
    if (t->kind == k) return true;
    for (const auto& c : t->kids)
        if (contains_kind(c, k)) return true;
    return false;
}

Term substitute(const Term& m, const std::string& x, const Term& n) { return instantiate(abstract(m, x), n); }

std::size_t occurrences(const Term& m, const std::string& x) {
    if (m->kind == Kind::Var) return (m->free && m->name == x) ? 1 : 0;
    std::size_t n = 0;
    for (const auto& k : m->kids) n += occurrences(k, x);
    return n;
}

std::size_t count_index0(const Term& body) {
    std::size_t n = 0;
    count0_rec(body, 0, n);
    return n;
}

Term fill_occurrences(const Term& body, const std::vector<Term>& fillers) {
    std::size_t next = 0;
    return fill_rec(body, fillers, 0, next);
}

TermSet multilinear_instantiate(const Term& body, std::vector<Term> elements) {
    TermSet out;
    if (count_index0(body) != elements.size()) return out;
    std::sort(elements.begin(), elements.end(), TermLess{});
    do {
        out.insert(fill_occurrences(body, elements));
    } while (std::next_permutation(elements.begin(), elements.end(), TermLess{}));
    return out;
}

TermSet multilinear_substitute(const Term& m, const std::string& x, const std::vector<Term>& elements) {
    return multilinear_instantiate(abstract(m, x), elements);
}

bool is_value(const Term& t) { return t->kind == Kind::Var || t->kind == Kind::Lam; }

bool conforms(const Term& t, Lang lang) {
    switch (t->kind) {
    case Kind::Bang:
        if (lang == Lang::Resource || lang == Lang::Lambda) return false;
        break;
    case Kind::Der:
        if (lang == Lang::Lambda) return false;
        break;
    case Kind::Bag:
        if (lang != Lang::Resource) return false;
        break;
    case Kind::Bot:
        return lang == Lang::DBangBot;
    default:
        break;
    }
    for (const auto& k : t->kids)
        if (!conforms(k, lang)) return false;
    return true;
}

std::string lang_name(Lang lang) {
    switch (lang) {
    case Lang::DBang: return "dbang";
    case Lang::DBangBot: return "dbang_bot";
    case Lang::Resource: return "resource";
    case Lang::Lambda: return "lambda";
    }
    return "?";
}

Lang lang_from_name(const std::string& s) {
    if (s == "dbang") return Lang::DBang;
    if (s == "dbang_bot") return Lang::DBangBot;
    if (s == "resource") return Lang::Resource;
    if (s == "lambda") return Lang::Lambda;
    throw std::invalid_argument("unknown language: " + s);
}

}  // namespace dbang
