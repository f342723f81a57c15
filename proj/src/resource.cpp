#include "dbang/resource.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>

namespace dbang {

namespace {

using Subs = std::vector<std::pair<Term, std::string>>;

TermSet singleton(Term t) {
    TermSet s;
    s.insert(std::move(t));
    return s;
}

// Every way to pick one option per slot.
template <class F>
void product(const std::vector<std::vector<Term>>& options, F&& f) {
    for (const auto& o : options)
        if (o.empty()) return;
    std::vector<Term> pick(options.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == options.size()) {
            f(pick);
            return;
        }
        for (const auto& t : options[i]) {
            pick[i] = t;
            go(i + 1);
        }
    };
    go(0);
}

TermSet plug(const Term& m, const Path& p, std::size_t from, const TermSet& results) {
    if (from == p.size()) return results;
    TermSet inner = plug(m->kids[p[from]], p, from + 1, results);
    TermSet out;
    for (const auto& r : inner) {
        std::vector<Term> ks = m->kids;
        ks[p[from]] = r;
        out.insert(rebuild(m, std::move(ks)));
    }
    return out;
}

}  // namespace

std::optional<TermSet> res_root_step(const Term& m) {
    auto k = root_redex(m);
    if (!k) return std::nullopt;
    switch (*k) {
    case RedexKind::DistantBeta:
        return singleton(contract_root(m));
    case RedexKind::SubstFire: {
        ListView lv = list_view(m->kids[1]);
        if (lv.core->kind != Kind::Bag) return std::nullopt;
        Term body = shift(m->kids[0], static_cast<std::int64_t>(lv.outer_subs.size()), 1);
        TermSet out;
        for (const auto& r : multilinear_instantiate(body, lv.core->kids)) out.insert(wrap_subs(r, lv.outer_subs));
        return out;
    }
    case RedexKind::DerFire: {
        ListView lv = list_view(m->kids[0]);
        if (lv.core->kind != Kind::Bag) return std::nullopt;
        if (lv.core->kids.size() != 1) return TermSet{};
        return singleton(wrap_subs(lv.core->kids[0], lv.outer_subs));
    }
    }
    return std::nullopt;
}

StepFan res_one_steps(const Term& m, Ctx cls) {
    StepFan fan;
    for (const auto& site : find_redexes(m, cls)) {
        auto root = res_root_step(subterm_at(m, site.path));
        if (!root) continue;
        fan.push_back({site, plug(m, site.path, 0, *root)});
    }
    return fan;
}

bool res_is_normal(const Term& m) { return find_redexes(m, Ctx::Full).empty(); }

namespace {

using Memo = std::unordered_map<Term, TermSet, TermHash, TermEq>;

Memo& memo_for(SiteOrder o) {
    thread_local Memo memos[3];
    return memos[static_cast<int>(o)];
}

constexpr std::size_t kMemoLimit = 400000;

TermSet nf_rec(const Term& m, SiteOrder order) {
    Memo& memo = memo_for(order);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    auto sites = find_redexes(m, Ctx::Full);
    TermSet out;
    if (sites.empty()) {
        out.insert(m);
    } else {
        std::vector<RedexSite> chosen;
        if (order == SiteOrder::First)
            chosen.push_back(sites.front());
        else if (order == SiteOrder::Last)
            chosen.push_back(sites.back());
        else
            chosen = sites;
        for (const auto& site : chosen) {
            auto root = res_root_step(subterm_at(m, site.path));
            for (const auto& r : plug(m, site.path, 0, *root)) {
                TermSet sub = nf_rec(r, order);
                out.insert(sub.begin(), sub.end());
            }
        }
    }
    if (memo.size() > kMemoLimit) memo.clear();
    memo.emplace(m, out);
    return out;
}

}  // namespace

TermSet res_normal_forms(const Term& m, SiteOrder order) { return nf_rec(m, order); }

void clear_res_memo() {
    for (auto o : {SiteOrder::First, SiteOrder::Last, SiteOrder::All}) memo_for(o).clear();
}

namespace {

Subs with_args(const Subs& subs, const std::vector<Term>& pick, std::size_t offset) {
    Subs out = subs;
    for (std::size_t i = 0; i < out.size(); ++i) out[i].first = pick[offset + i];
    return out;
}

// A parallel step picks which redexes to fire; the result of one such choice
// is a sum (the permutations of a bag give several summands, a clash gives
// the empty sum). Developments enumerate those sums.
struct SumLess {
    bool operator()(const TermSet& a, const TermSet& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), TermLess{});
    }
};
using Sums = std::set<TermSet, SumLess>;

class Developments {
public:
    const Sums& of(const Term& t) {
        auto it = memo_.find(t);
        if (it != memo_.end()) return it->second;
        Sums r = compute(t);
        return memo_.emplace(t, std::move(r)).first->second;
    }

    // every sum reachable from `s` by developing each summand once
    // (nullopt when there are more than `limit` of them)
    std::optional<Sums> step(const TermSet& s, std::size_t limit) {
        Sums acc{TermSet{}};
        for (const auto& t : s) {
            Sums next;
            for (const auto& a : acc)
                for (const auto& d : of(t)) {
                    TermSet u = a;
                    u.insert(d.begin(), d.end());
                    next.insert(std::move(u));
                    if (next.size() > limit) return std::nullopt;
                }
            acc = std::move(next);
        }
        return acc;
    }

private:
    std::unordered_map<Term, Sums, TermHash, TermEq> memo_;

    // pick one development per slot, then expand the chosen sums
    template <class F>
    void combine(const std::vector<const Sums*>& slots, F&& build, Sums& out) {
        std::vector<const TermSet*> choice(slots.size());
        std::function<void(std::size_t)> go = [&](std::size_t i) {
            if (i == slots.size()) {
                std::vector<std::vector<Term>> options;
                for (const auto* c : choice) options.emplace_back(c->begin(), c->end());
                TermSet sum;
                bool any_empty = false;
                for (const auto& o : options) any_empty |= o.empty();
                if (!any_empty) product(options, [&](const std::vector<Term>& pick) { build(pick, sum); });
                out.insert(std::move(sum));
                return;
            }
            for (const auto& s : *slots[i]) {
                choice[i] = &s;
                go(i + 1);
            }
        };
        go(0);
    }

    Sums compute(const Term& t) {
        Sums out;
        if (t->kids.empty()) {
            out.insert(singleton(t));
            return out;
        }
        if (t->kind == Kind::Bag) {
            std::vector<const Sums*> slots;
            for (const auto& e : t->kids) slots.push_back(&of(e));
            combine(slots, [](const std::vector<Term>& pick, TermSet& sum) { sum.insert(bag(pick)); }, out);
            return out;
        }
        // congruence, developing every child at once
        std::vector<const Sums*> kids;
        for (const auto& c : t->kids) kids.push_back(&of(c));
        combine(kids, [&](const std::vector<Term>& pick, TermSet& sum) { sum.insert(rebuild(t, pick)); }, out);
        auto k = root_redex(t);
        if (!k) return out;
        std::vector<const Sums*> slots;
        auto add_subs = [&](const Subs& subs) {
            for (const auto& s : subs) slots.push_back(&of(s.first));
        };
        if (*k == RedexKind::DistantBeta) {
            ListView lv = list_view(t->kids[0]);
            const Term& abs = lv.core;
            slots = {&of(abs->kids[0]), &of(t->kids[1])};
            add_subs(lv.outer_subs);
            std::int64_t depth = static_cast<std::int64_t>(lv.outer_subs.size());
            combine(slots, [&](const std::vector<Term>& pick, TermSet& sum) {
                sum.insert(wrap_subs(esub(abs->name, pick[0], shift(pick[1], depth)), with_args(lv.outer_subs, pick, 2)));
            }, out);
        } else if (*k == RedexKind::SubstFire) {
            ListView lv = list_view(t->kids[1]);
            if (lv.core->kind != Kind::Bag) return out;
            slots = {&of(t->kids[0]), &of(lv.core)};
            add_subs(lv.outer_subs);
            std::int64_t depth = static_cast<std::int64_t>(lv.outer_subs.size());
            combine(slots, [&](const std::vector<Term>& pick, TermSet& sum) {
                Term body = shift(pick[0], depth, 1);
                const auto& elems = pick[1]->kids;
                if (count_index0(body) != elems.size()) return;
                Subs l = with_args(lv.outer_subs, pick, 2);
                for (const auto& r : multilinear_instantiate(body, elems)) sum.insert(wrap_subs(r, l));
            }, out);
        } else {
            ListView lv = list_view(t->kids[0]);
            if (lv.core->kind != Kind::Bag) return out;
            if (lv.core->kids.size() != 1) {
                out.insert(TermSet{});
                return out;
            }
            // the list itself may fire alongside the dereliction
            const Sums& inner = of(wrap_subs(lv.core->kids[0], lv.outer_subs));
            out.insert(inner.begin(), inner.end());
        }
        return out;
    }
};

// All terms reachable by full steps, and whether some path hits the empty sum.
TermSet full_reach(const Term& m, bool& hits_empty, bool internal_only = false) {
    TermSet seen{m};
    std::vector<Term> todo{m};
    while (!todo.empty()) {
        Term t = todo.back();
        todo.pop_back();
        std::vector<RedexSite> sites = internal_only ? internal_redexes(t) : find_redexes(t, Ctx::Full);
        for (const auto& site : sites) {
            auto root = res_root_step(subterm_at(t, site.path));
            TermSet rs = plug(t, site.path, 0, *root);
            if (rs.empty()) hits_empty = true;
            for (const auto& r : rs)
                if (seen.insert(r).second) todo.push_back(r);
        }
    }
    return seen;
}

// Replace every maximal bag by an empty bag: the part surface steps can see.
Term skeleton(const Term& t) {
    if (t->kind == Kind::Bag) return bag({});
    if (t->kids.empty()) return t;
    std::vector<Term> ks;
    for (const auto& k : t->kids) ks.push_back(skeleton(k));
    return rebuild(t, std::move(ks));
}

}  // namespace

ParallelResult parallel_reducts(const Term& m) {
    Developments dev;
    ParallelResult out;
    for (const auto& sum : dev.of(m)) {
        if (sum.empty()) out.to_empty = true;
        out.terms.insert(sum.begin(), sum.end());
    }
    return out;
}

std::size_t size_measure(const Term& m) { return size(m); }

CheckReport check_sn_measure(const Term& m) {
    CheckReport rep;
    rep.check = "sn-measure";
    rep.params = {{"term", print(m)}};
    for (const auto& e : res_one_steps(m, Ctx::Full))
        for (const auto& n : e.results)
            if (size_measure(n) >= size_measure(m)) {
                rep.fail(print(m) + " -> " + print(n) + " does not shrink");
                return rep;
            }
    rep.passed = 1;
    return rep;
}

CheckReport check_parallel_diamond(const Term& m) {
    CheckReport rep;
    rep.check = "diamond";
    rep.params = {{"term", print(m)}};
    constexpr std::size_t kLimit = 20000;
    Developments dev;
    std::vector<TermSet> branches(dev.of(m).begin(), dev.of(m).end());
    std::vector<std::optional<Sums>> next;
    for (const auto& b : branches) next.push_back(dev.step(b, kLimit));
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            if (!next[i] || !next[j]) {
                rep.inconclude("too many developments to compare");
                return rep;
            }
            bool meet = std::any_of(next[i]->begin(), next[i]->end(), [&](const TermSet& s) { return next[j]->count(s) > 0; });
            if (!meet) {
                auto show = [](const TermSet& s) {
                    std::string o = "{";
                    for (const auto& t : s) o += (o.size() > 1 ? ", " : "") + print(t);
                    return o + "}";
                };
                rep.fail(print(m) + " => " + show(branches[i]) + " | " + show(branches[j]) + " do not close");
                return rep;
            }
        }
    rep.passed = 1;
    return rep;
}

CheckReport check_nf_order_independence(const Term& m) {
    CheckReport rep;
    rep.check = "nf-order";
    rep.params = {{"term", print(m)}};
    TermSet a = res_normal_forms(m, SiteOrder::First);
    TermSet b = res_normal_forms(m, SiteOrder::Last);
    TermSet c = res_normal_forms(m, SiteOrder::All);
    auto same = [](const TermSet& x, const TermSet& y) {
        return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), TermEq{});
    };
    if (!same(a, b) || !same(a, c))
        rep.fail(print(m) + ": normal forms depend on the site order");
    else
        rep.passed = 1;
    return rep;
}

CheckReport check_parallel_sandwich(const Term& m) {
    CheckReport rep;
    rep.check = "parallel-sandwich";
    rep.params = {{"term", print(m)}};
    ParallelResult par = parallel_reducts(m);
    for (const auto& e : res_one_steps(m, Ctx::Full)) {
        if (e.results.empty() && !par.to_empty) {
            rep.fail(print(m) + ": one full step reaches the empty sum but no parallel step does");
            return rep;
        }
        for (const auto& n : e.results)
            if (!par.terms.count(n)) {
                rep.fail(print(m) + " -> " + print(n) + " is not a parallel step");
                return rep;
            }
    }
    bool hits_empty = false;
    TermSet reach = full_reach(m, hits_empty);
    for (const auto& n : par.terms)
        if (!reach.count(n)) {
            rep.fail(print(m) + " => " + print(n) + " is not reachable by full steps");
            return rep;
        }
    if (par.to_empty && !hits_empty) {
        rep.fail(print(m) + ": parallel step to the empty sum not matched by full steps");
        return rep;
    }
    rep.passed = 1;
    return rep;
}

CheckReport check_resource_factorization(const Term& m) {
    CheckReport rep;
    rep.check = "resource-factorization";
    rep.params = {{"term", print(m)}};
    bool e1 = false;
    TermSet all = full_reach(m, e1);
    // surface-reachable terms
    TermSet surf{m};
    std::vector<Term> todo{m};
    while (!todo.empty()) {
        Term t = todo.back();
        todo.pop_back();
        for (const auto& e : res_one_steps(t, Ctx::Surface))
            for (const auto& r : e.results)
                if (surf.insert(r).second) todo.push_back(r);
    }
    std::unordered_map<Term, std::vector<Term>, TermHash, TermEq> by_skeleton;
    for (const auto& q : surf) by_skeleton[skeleton(q)].push_back(q);
    for (const auto& p : all) {
        bool ok = false;
        auto it = by_skeleton.find(skeleton(p));
        if (it != by_skeleton.end())
            for (const auto& q : it->second) {
                bool e2 = false;
                if (full_reach(q, e2, true).count(p)) {
                    ok = true;
                    break;
                }
            }
        if (!ok) {
            rep.fail(print(m) + " ->rf* " + print(p) + " has no surface-then-bag factorization");
            return rep;
        }
    }
    rep.passed = 1;
    return rep;
}

}  // namespace dbang
