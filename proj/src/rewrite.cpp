#include "dbang/rewrite.hpp"

#include <deque>
#include <unordered_set>

namespace dbang {

std::string redex_kind_name(RedexKind k) {
    switch (k) {
    case RedexKind::DistantBeta: return "beta";
    case RedexKind::SubstFire: return "subst";
    case RedexKind::DerFire: return "der";
    }
    return "?";
}

std::string path_string(const Path& p) {
    if (p.empty()) return "root";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(p[i]);
    }
    return s;
}

ListView list_view(const Term& m) {
    ListView v;
    std::vector<std::pair<Term, std::string>> outer_first;
    Term cur = m;
    while (cur->kind == Kind::ESub) {
        outer_first.emplace_back(cur->kids[1], cur->name);
        cur = cur->kids[0];
    }
    v.outer_subs.assign(outer_first.rbegin(), outer_first.rend());
    v.core = cur;
    return v;
}

Term wrap_subs(Term core, const std::vector<std::pair<Term, std::string>>& subs) {
    for (const auto& [arg, x] : subs) core = esub(x, core, arg);
    return core;
}

namespace {

bool exposes_box(const Term& t) {
    Kind k = list_view(t).core->kind;
    return k == Kind::Bang || k == Kind::Bag;
}

void collect(const Term& m, Ctx cls, bool under_bang, Path& path, std::vector<RedexSite>& out, bool internal_only) {
    if (auto k = root_redex(m)) {
        if (!internal_only || under_bang) out.push_back({path, *k, under_bang ? Ctx::Full : cls});
    }
    bool box = m->kind == Kind::Bang || m->kind == Kind::Bag;
    if (box && cls == Ctx::Surface) return;
    for (std::size_t i = 0; i < m->kids.size(); ++i) {
        path.push_back(static_cast<std::uint8_t>(i));
        collect(m->kids[i], cls, under_bang || box, path, out, internal_only);
        path.pop_back();
    }
}

bool first_site(const Term& m, Ctx cls, Path& path, RedexSite& out) {
    if (auto k = root_redex(m)) {
        out = {path, *k, cls};
        return true;
    }
    if ((m->kind == Kind::Bang || m->kind == Kind::Bag) && cls == Ctx::Surface) return false;
    for (std::size_t i = 0; i < m->kids.size(); ++i) {
        path.push_back(static_cast<std::uint8_t>(i));
        if (first_site(m->kids[i], cls, path, out)) return true;
        path.pop_back();
    }
    return false;
}

}  // namespace

std::optional<RedexKind> root_redex(const Term& m) {
    switch (m->kind) {
    case Kind::App:
        if (list_view(m->kids[0]).core->kind == Kind::Lam) return RedexKind::DistantBeta;
        return std::nullopt;
    case Kind::ESub:
        if (exposes_box(m->kids[1])) return RedexKind::SubstFire;
        return std::nullopt;
    case Kind::Der:
        if (exposes_box(m->kids[0])) return RedexKind::DerFire;
        return std::nullopt;
    default:
        return std::nullopt;
    }
}

std::vector<RedexSite> find_redexes(const Term& m, Ctx cls) {
    std::vector<RedexSite> out;
    Path p;
    collect(m, cls, false, p, out, false);
    for (auto& s : out) s.context_class = cls;
    return out;
}

std::vector<RedexSite> internal_redexes(const Term& m) {
    std::vector<RedexSite> out;
    Path p;
    collect(m, Ctx::Full, false, p, out, true);
    return out;
}

Term contract_root(const Term& m) {
    auto k = root_redex(m);
    if (!k) throw InvalidSite("no redex at this position");
    switch (*k) {
    case RedexKind::DistantBeta: {
        ListView lv = list_view(m->kids[0]);
        const Term& abs = lv.core;
        Term arg = shift(m->kids[1], static_cast<std::int64_t>(lv.outer_subs.size()));
        return wrap_subs(esub(abs->name, abs->kids[0], arg), lv.outer_subs);
    }
    case RedexKind::SubstFire: {
        ListView lv = list_view(m->kids[1]);
        if (lv.core->kind != Kind::Bang) throw InvalidSite("set-valued substitution; use the resource module");
        Term body = shift(m->kids[0], static_cast<std::int64_t>(lv.outer_subs.size()), 1);
        return wrap_subs(instantiate(body, lv.core->kids[0]), lv.outer_subs);
    }
    case RedexKind::DerFire: {
        ListView lv = list_view(m->kids[0]);
        if (lv.core->kind != Kind::Bang) throw InvalidSite("set-valued dereliction; use the resource module");
        return wrap_subs(lv.core->kids[0], lv.outer_subs);
    }
    }
    throw InvalidSite("unreachable");
}

const Term& subterm_at(const Term& m, const Path& p) {
    const Term* cur = &m;
    for (auto i : p) {
        if (i >= (*cur)->kids.size()) throw InvalidSite("path leaves the term");
        cur = &(*cur)->kids[i];
    }
    return *cur;
}

Term replace_at(const Term& m, const Path& p, std::size_t from, const std::function<Term(const Term&)>& f) {
    if (from == p.size()) return f(m);
    if (p[from] >= m->kids.size()) throw InvalidSite("path leaves the term");
    std::vector<Term> ks = m->kids;
    ks[p[from]] = replace_at(m->kids[p[from]], p, from + 1, f);
    return rebuild(m, std::move(ks));
}

Term step_at(const Term& m, const RedexSite& site) {
    bool crosses_bang = false;
    const Term* cur = &m;
    for (auto i : site.path) {
        if ((*cur)->kind == Kind::Bang || (*cur)->kind == Kind::Bag) crosses_bang = true;
        if (i >= (*cur)->kids.size()) throw InvalidSite("path leaves the term");
        cur = &(*cur)->kids[i];
    }
    if (crosses_bang && site.context_class == Ctx::Surface) throw InvalidSite("surface site under a bang");
    auto k = root_redex(*cur);
    if (!k || *k != site.kind) throw InvalidSite("no " + redex_kind_name(site.kind) + " redex at " + path_string(site.path));
    return replace_at(m, site.path, 0, contract_root);
}

NormalizeOutcome normalize(const Term& m, Ctx cls, std::size_t fuel, const TraceFn& trace) {
    Term cur = m;
    std::size_t steps = 0;
    for (;;) {
        RedexSite site;
        Path p;
        if (!first_site(cur, cls, p, site)) return {cur, NormalizeOutcome::Status::NormalForm, steps};
        if (steps == fuel) return {cur, NormalizeOutcome::Status::FuelExhausted, steps};
        cur = replace_at(cur, site.path, 0, contract_root);
        ++steps;
        if (trace) trace(steps, site, cur);
    }
}

std::vector<Term> one_step(const Term& m, Ctx cls) {
    std::vector<Term> out;
    TermSet seen;
    for (const auto& s : find_redexes(m, cls)) {
        Term r = replace_at(m, s.path, 0, contract_root);
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

std::vector<Term> one_step_internal(const Term& m) {
    std::vector<Term> out;
    TermSet seen;
    for (const auto& s : internal_redexes(m)) {
        Term r = replace_at(m, s.path, 0, contract_root);
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

ReductSet reach_set(const Term& m, std::size_t fuel, std::size_t cap, const std::function<std::vector<Term>(const Term&)>& next) {
    ReductSet rs;
    rs.terms.insert(m);
    std::vector<Term> frontier{m};
    for (std::size_t depth = 0; depth < fuel && !frontier.empty(); ++depth) {
        std::vector<Term> nf;
        for (const auto& t : frontier) {
            for (const auto& r : next(t)) {
                if (rs.terms.count(r)) continue;
                if (rs.terms.size() >= cap) {
                    rs.truncated = true;
                    return rs;
                }
                rs.terms.insert(r);
                nf.push_back(r);
            }
        }
        frontier = std::move(nf);
    }
    for (const auto& t : frontier) {
        for (const auto& r : next(t))
            if (!rs.terms.count(r)) {
                rs.fuel_limited = true;
                return rs;
            }
    }
    return rs;
}

ReductSet reducts(const Term& m, Ctx cls, std::size_t fuel, std::size_t cap) {
    return reach_set(m, fuel, cap, [cls](const Term& t) { return one_step(t, cls); });
}

ReductSet internal_reducts(const Term& m, std::size_t fuel, std::size_t cap) {
    return reach_set(m, fuel, cap, one_step_internal);
}

CheckReport check_factorization(const Term& m, std::size_t fuel) {
    CheckReport rep;
    rep.check = "factorization";
    rep.params = {{"term", print(m)}, {"fuel", fuel}};
    ReductSet full = reducts(m, Ctx::Full, fuel);
    ReductSet surf = reducts(m, Ctx::Surface, fuel);
    TermSet pending = full.terms;
    bool bounded = !surf.closed();
    for (const auto& p : surf.terms) {
        if (pending.empty()) break;
        pending.erase(p);
        ReductSet in = internal_reducts(p, 2 * fuel + 2);
        if (!in.closed()) bounded = true;
        for (const auto& n : in.terms) pending.erase(n);
    }
    rep.details["targets"] = full.terms.size();
    rep.details["surface_prefixes"] = surf.terms.size();
    if (pending.empty()) {
        rep.passed = 1;
        return rep;
    }
    std::string cex = print(m) + " ->f* " + print(*pending.begin()) + " without a surface-then-internal split";
    if (bounded)
        rep.inconclude("search window exhausted: " + cex);
    else
        rep.fail(cex);
    return rep;
}

CheckReport check_confluence(const Term& m, Ctx cls, std::size_t fuel) {
    CheckReport rep;
    rep.check = "confluence";
    rep.params = {{"term", print(m)}, {"fuel", fuel}, {"class", cls == Ctx::Surface ? "surface" : "full"}};
    std::vector<Term> succ = one_step(m, cls);
    std::vector<ReductSet> rs;
    for (const auto& s : succ) rs.push_back(reducts(s, cls, fuel, 500));
    for (std::size_t i = 0; i < succ.size(); ++i)
        for (std::size_t j = i + 1; j < succ.size(); ++j) {
            bool joined = false;
            for (const auto& t : rs[i].terms)
                if (rs[j].terms.count(t)) {
                    joined = true;
                    break;
                }
            if (joined) continue;
            std::string cex = print(succ[i]) + " and " + print(succ[j]) + " do not join";
            if (rs[i].closed() && rs[j].closed())
                rep.fail(cex);
            else
                rep.inconclude(cex);
        }
    if (rep.verdict == Verdict::Pass) rep.passed = 1;
    return rep;
}

}  // namespace dbang
