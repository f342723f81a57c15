#include "dbang/taylor.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "dbang/resource.hpp"

namespace dbang {

bool approximates(const Term& m, const Term& M) {
    switch (M->kind) {
    case Kind::Bot:
        return false;
    case Kind::Var:
        return m->kind == Kind::Var && m->free == M->free && (M->free ? m->name == M->name : m->index == M->index);
    case Kind::Bang:
        if (m->kind != Kind::Bag) return false;
        for (const auto& e : m->kids)
            if (!approximates(e, M->kids[0])) return false;
        return true;
    case Kind::App:
    case Kind::Lam:
    case Kind::Der:
    case Kind::ESub:
        if (m->kind != M->kind) return false;
        for (std::size_t i = 0; i < M->kids.size(); ++i)
            if (!approximates(m->kids[i], M->kids[i])) return false;
        return true;
    case Kind::Bag:
        return false;
    }
    return false;
}

namespace {

// Multisets over a sorted pool whose sizes add up to `budget`; `count`
// restricts the cardinality when set.
void multisets(const std::vector<Term>& pool, std::size_t from, std::size_t budget, std::vector<Term>& cur,
               const std::function<void(const std::vector<Term>&)>& emit, long count = -1) {
    if (budget == 0 && (count < 0 || static_cast<long>(cur.size()) == count)) {
        emit(cur);
        return;
    }
    if (budget == 0 || (count >= 0 && static_cast<long>(cur.size()) >= count)) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
        if (pool[i]->size > budget) break;  // pool is sorted by size
        cur.push_back(pool[i]);
        multisets(pool, i, budget - pool[i]->size, cur, emit, count);
        cur.pop_back();
    }
}

class TaylorEnum {
public:
    const std::vector<Term>& exact(const Term& M, std::size_t s) {
        auto key = std::make_pair(M.get(), s);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<Term> out;
        build(M, s, out);
        keep_.push_back(M);
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::vector<Term> upto(const Term& M, std::size_t cap) {
        std::vector<Term> out;
        for (std::size_t s = 1; s <= cap; ++s) {
            const auto& v = exact(M, s);
            out.insert(out.end(), v.begin(), v.end());
        }
        std::sort(out.begin(), out.end(), TermLess{});
        return out;
    }

private:
    std::map<std::pair<const Node*, std::size_t>, std::vector<Term>> memo_;
    std::vector<Term> keep_;

    void build(const Term& M, std::size_t s, std::vector<Term>& out) {
        if (s == 0) return;
        switch (M->kind) {
        case Kind::Bot:
        case Kind::Bag:
            return;
        case Kind::Var:
            if (s == 1) out.push_back(M);
            return;
        case Kind::Lam:
            for (const auto& b : exact(M->kids[0], s - 1)) out.push_back(lam(M->name, b));
            return;
        case Kind::Der:
            for (const auto& b : exact(M->kids[0], s - 1)) out.push_back(der(b));
            return;
        case Kind::App:
        case Kind::ESub:
            for (std::size_t l = 1; l + 1 < s; ++l) {
                const auto& ls = exact(M->kids[0], l);
                if (ls.empty()) continue;
                const auto& rs = exact(M->kids[1], s - 1 - l);
                for (const auto& a : ls)
                    for (const auto& b : rs) out.push_back(M->kind == Kind::App ? app(a, b) : esub(M->name, a, b));
            }
            return;
        case Kind::Bang: {
            std::vector<Term> pool = upto(M->kids[0], s - 1);
            std::vector<Term> cur;
            multisets(pool, 0, s - 1, cur, [&](const std::vector<Term>& es) { out.push_back(bag(es)); });
            return;
        }
        }
    }
};

}  // namespace

std::vector<Term> taylor_exact(const Term& M, std::size_t s) {
    TaylorEnum e;
    return e.exact(M, s);
}

TaylorSet taylor_enum(const Term& M, std::size_t size_cap) {
    TaylorEnum e;
    TaylorSet ts;
    ts.size_cap = size_cap;
    for (const auto& t : e.upto(M, size_cap)) ts.terms.insert(t);
    ts.complete_up_to_cap = true;
    return ts;
}

TaylorSet taylor_nf(const Term& M, std::size_t size_cap, NfWindow window) {
    TaylorSet out;
    out.size_cap = size_cap;
    std::vector<Term> sources{M};
    out.complete_up_to_cap = false;
    if (window.fuel > 0) {
        ReductSet rs = reducts(M, Ctx::Full, window.fuel, window.reduct_cap);
        sources.assign(rs.terms.begin(), rs.terms.end());
        // every member of the Taylor normal form approximates some reduct,
        // so a closed reduct set yields every member within the cap
        out.complete_up_to_cap = rs.closed();
    }
    for (const auto& src : sources) {
        TaylorEnum e;
        for (const auto& m : e.upto(src, size_cap)) {
            TermSet nf = res_normal_forms(m);
            out.terms.insert(nf.begin(), nf.end());
        }
    }
    return out;
}

namespace {

// Peel exactly k outer explicit substitutions of t.
bool peel(const Term& t, std::size_t k, std::vector<std::pair<Term, std::string>>& subs, Term& core) {
    std::vector<std::pair<Term, std::string>> outer_first;
    Term cur = t;
    for (std::size_t i = 0; i < k; ++i) {
        if (cur->kind != Kind::ESub) return false;
        outer_first.emplace_back(cur->kids[1], cur->name);
        cur = cur->kids[0];
    }
    subs.assign(outer_first.rbegin(), outer_first.rend());
    core = cur;
    return true;
}

// Does t refer to one of the k binders just outside it (seen at `depth`)?
bool mentions_below(const Term& t, std::uint32_t k, std::uint32_t depth) {
    if (k == 0 || t->loose <= depth) return false;
    if (t->kind == Kind::Var) return !t->free && t->index >= depth && t->index < depth + k;
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
        bool binds = (t->kind == Kind::Lam || t->kind == Kind::ESub) && i == 0;
        if (mentions_below(t->kids[i], k, depth + (binds ? 1 : 0))) return true;
    }
    return false;
}

// A resource term whose root step (on the redex R) can produce `target`,
// with the result approximating R. Complete for the three root rules.
std::optional<Term> root_preimage(const Term& R, const Term& target) {
    auto kind = root_redex(R);
    if (!kind) return std::nullopt;
    std::vector<std::pair<Term, std::string>> subs;
    Term core;
    switch (*kind) {
    case RedexKind::DistantBeta: {
        ListView lv = list_view(R->kids[0]);
        std::size_t k = lv.outer_subs.size();
        if (!peel(target, k, subs, core) || core->kind != Kind::ESub) return std::nullopt;
        // the argument must not mention the list binders
        if (mentions_below(core->kids[1], static_cast<std::uint32_t>(k), 0)) return std::nullopt;
        Term arg = shift(core->kids[1], -static_cast<std::int64_t>(k));
        return app(wrap_subs(lam(lv.core->name, core->kids[0]), subs), arg);
    }
    case RedexKind::DerFire: {
        ListView lv = list_view(R->kids[0]);
        if (!peel(target, lv.outer_subs.size(), subs, core)) return std::nullopt;
        return der(wrap_subs(bag({core}), subs));
    }
    case RedexKind::SubstFire: {
        ListView lv = list_view(R->kids[1]);
        std::size_t k = lv.outer_subs.size();
        if (!peel(target, k, subs, core)) return std::nullopt;
        Term body1 = shift(R->kids[0], static_cast<std::int64_t>(k), 1);
        const Term& P = lv.core->kids[0];
        std::size_t q = core->size;
        TaylorEnum e;
        std::vector<Term> elem_pool = e.upto(P, q);
        for (std::size_t sa = 1; sa <= q; ++sa) {
            for (const auto& a : e.exact(body1, sa)) {
                std::size_t d = count_index0(a);
                // size(core) = size(a) - d + sum of element sizes
                if (q + d < sa) continue;
                std::size_t budget = q + d - sa;
                std::optional<Term> found;
                std::vector<Term> cur;
                if (d == 0 && budget != 0) continue;
                multisets(
                    elem_pool, 0, budget, cur,
                    [&](const std::vector<Term>& es) {
                        if (found) return;
                        if (multilinear_instantiate(a, es).count(core))
                            found = esub(R->name, shift(a, -static_cast<std::int64_t>(k), 1), wrap_subs(bag(es), subs));
                    },
                    static_cast<long>(d));
                if (found) return found;
            }
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

// Preimage for a step at `path` in M, where n approximates the reduct; bags
// met on the way are handled element-wise (parallel reduction).
std::optional<Term> preimage(const Term& M, const Term& n, const Path& path, std::size_t i) {
    if (i == path.size()) return root_preimage(M, n);
    if (M->kind == Kind::Bang) {
        if (n->kind != Kind::Bag) return std::nullopt;
        std::vector<Term> es;
        for (const auto& e : n->kids) {
            auto pe = preimage(M->kids[0], e, path, i + 1);
            if (!pe) return std::nullopt;
            es.push_back(*pe);
        }
        return bag(std::move(es));
    }
    if (n->kind != M->kind || n->kids.size() != M->kids.size()) return std::nullopt;
    auto sub = preimage(M->kids[path[i]], n->kids[path[i]], path, i + 1);
    if (!sub) return std::nullopt;
    std::vector<Term> ks = n->kids;
    ks[path[i]] = *sub;
    return rebuild(n, std::move(ks));
}

bool surface_steps_to(const Term& m, const Term& n) {
    for (const auto& e : res_one_steps(m, Ctx::Surface))
        if (e.results.count(n)) return true;
    return false;
}

CheckReport simulation(const Term& M0, std::size_t fuel, std::size_t cap, Ctx cls) {
    CheckReport rep;
    rep.check = cls == Ctx::Surface ? "simulation-surface" : "simulation-full";
    rep.params = {{"term", print(M0)}, {"fuel", fuel}, {"cap", cap}};
    ReductSet sources = reducts(M0, cls, fuel, 50);
    std::size_t pairs = 0, pushed = 0, pulled = 0;
    for (const auto& M : sources.terms) {
        TaylorEnum em;
        std::vector<Term> TM = em.upto(M, cap);
        for (const auto& site : find_redexes(M, cls)) {
            Term N = step_at(M, site);
            ++pairs;
            std::string where = print(M) + " -> " + print(N);
            for (const auto& m : TM) {
                bool ok = false;
                if (cls == Ctx::Surface) {
                    for (const auto& e : res_one_steps(m, Ctx::Surface)) {
                        if (e.results.empty()) ok = true;
                        for (const auto& r : e.results)
                            if (approximates(r, N)) ok = true;
                        if (ok) break;
                    }
                } else {
                    ParallelResult par = parallel_reducts(m);
                    ok = par.to_empty;
                    for (auto it = par.terms.begin(); !ok && it != par.terms.end(); ++it) ok = approximates(*it, N);
                }
                if (!ok) {
                    rep.fail("push-forward: " + print(m) + " approximates " + where + " but no step matches");
                    return rep;
                }
                ++pushed;
            }
            TaylorEnum en;
            for (const auto& n : en.upto(N, cap)) {
                auto m = preimage(M, n, site.path, 0);
                bool ok = m && approximates(*m, M);
                if (ok) ok = cls == Ctx::Surface ? surface_steps_to(*m, n) : parallel_reducts(*m).terms.count(n) > 0;
                if (!ok) {
                    rep.fail("pull-back: " + print(n) + " approximates " + where + " without a preimage");
                    return rep;
                }
                ++pulled;
            }
        }
    }
    rep.details["pairs"] = pairs;
    rep.details["pushed"] = pushed;
    rep.details["pulled"] = pulled;
    rep.passed = 1;
    return rep;
}

bool subset(const TermSet& a, const TermSet& b, Term* witness) {
    for (const auto& t : a)
        if (!b.count(t)) {
            if (witness) *witness = t;
            return false;
        }
    return true;
}

}  // namespace

CheckReport check_simulation_surface(const Term& M, std::size_t fuel, std::size_t size_cap) {
    return simulation(M, fuel, size_cap, Ctx::Surface);
}

CheckReport check_simulation_full(const Term& M, std::size_t fuel, std::size_t size_cap) {
    return simulation(M, fuel, size_cap, Ctx::Full);
}

CheckReport check_nf_invariance(const Term& M, std::size_t fuel, std::size_t size_cap) {
    CheckReport rep;
    rep.check = "nf-invariance";
    rep.params = {{"term", print(M)}, {"fuel", fuel}, {"cap", size_cap}};
    ReductSet rs = reducts(M, Ctx::Full, fuel, 100);
    NfWindow direct{0, 0};
    NfWindow wide{std::max<std::size_t>(12, 2 * fuel), 400};
    TaylorSet dM = taylor_nf(M, size_cap, direct);
    TaylorSet wM = taylor_nf(M, size_cap, wide);
    for (const auto& N : rs.terms) {
        if (equal(N, M)) continue;
        TaylorSet dN = taylor_nf(N, size_cap, direct);
        TaylorSet wN = taylor_nf(N, size_cap, wide);
        Term w;
        if (!subset(dM.terms, wN.terms, &w) || !subset(dN.terms, wM.terms, &w)) {
            std::string cex = print(M) + " ->f* " + print(N) + " disagree on " + print(w);
            if (wN.complete_up_to_cap && wM.complete_up_to_cap)
                rep.fail(cex);
            else
                rep.inconclude("reduct window not closed: " + cex);
        }
    }
    for (const auto& n : dM.terms) {
        bool found = false;
        for (const auto& Mp : rs.terms)
            if (approximates(n, Mp)) {
                found = true;
                break;
            }
        if (!found) {
            std::string cex = print(n) + " has no approximated reduct of " + print(M);
            if (rs.closed())
                rep.fail(cex);
            else
                rep.inconclude("fuel exhausted: " + cex);
        }
    }
    rep.details["reducts"] = rs.terms.size();
    rep.details["direct_nf"] = dM.terms.size();
    if (rep.verdict == Verdict::Pass) rep.passed = 1;
    return rep;
}

CheckReport check_substitution_lemma(const Term& M, const std::string& x, const Term& N, std::size_t size_cap) {
    CheckReport rep;
    rep.check = "substitution-lemma";
    rep.params = {{"M", print(M)}, {"x", x}, {"N", print(N)}, {"cap", size_cap}};
    Term MN = substitute(M, x, N);
    TaylorEnum e;
    std::vector<Term> TMs = e.upto(M, size_cap);
    std::vector<Term> TN = e.upto(N, size_cap);
    TermSet produced;
    for (const auto& m : TMs) {
        std::size_t d = occurrences(m, x);
        std::vector<Term> cur;
        for (std::size_t budget = d; budget <= size_cap; ++budget) {
            multisets(
                TN, 0, budget, cur,
                [&](const std::vector<Term>& es) {
                    for (const auto& r : multilinear_substitute(m, x, es)) {
                        if (!approximates(r, MN) && rep.verdict != Verdict::Fail)
                            rep.fail(print(r) + " built from " + print(m) + " does not approximate " + print(MN));
                        produced.insert(r);
                    }
                },
                static_cast<long>(d));
            if (d == 0) break;
        }
        if (rep.verdict == Verdict::Fail) return rep;
    }
    TaylorEnum e2;
    for (const auto& p : e2.upto(MN, size_cap))
        if (!produced.count(p)) {
            rep.fail(print(p) + " approximates " + print(MN) + " but has no decomposition");
            return rep;
        }
    rep.details["produced"] = produced.size();
    rep.passed = 1;
    return rep;
}

CheckReport check_context_decomposition(const Term& M, std::size_t size_cap) {
    CheckReport rep;
    rep.check = "context-decomposition";
    rep.params = {{"term", print(M)}, {"cap", size_cap}};
    ListView lv = list_view(M);
    std::size_t k = lv.outer_subs.size();
    for (const auto& m : taylor_enum(M, size_cap).terms) {
        std::vector<std::pair<Term, std::string>> subs;
        Term core;
        bool ok = peel(m, k, subs, core) && approximates(core, lv.core);
        for (std::size_t i = 0; ok && i < k; ++i) ok = approximates(subs[i].first, lv.outer_subs[i].first);
        if (!ok) {
            rep.fail(print(m) + " does not split along " + print(M));
            return rep;
        }
    }
    rep.passed = 1;
    return rep;
}

}  // namespace dbang
