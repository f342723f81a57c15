#include "dbang/bohm.hpp"

#include "dbang/resource.hpp"

namespace dbang {

namespace {

bool in_a(const Term& t);
bool in_b(const Term& t);
bool in_abang(const Term& t);
bool in_alam(const Term& t);

bool in_a(const Term& t) {
    switch (t->kind) {
    case Kind::Bot: return true;
    case Kind::Lam:
    case Kind::Bang: return in_a(t->kids[0]);
    case Kind::ESub: return in_a(t->kids[0]) && in_abang(t->kids[1]);
    default: return in_b(t);
    }
}

bool in_b(const Term& t) {
    switch (t->kind) {
    case Kind::Var: return true;
    case Kind::App: return in_alam(t->kids[0]) && in_a(t->kids[1]);
    case Kind::Der: return in_abang(t->kids[0]);
    default: return false;
    }
}

bool in_abang(const Term& t) {
    switch (t->kind) {
    case Kind::Lam: return in_a(t->kids[0]);
    case Kind::ESub: return in_abang(t->kids[0]) && in_abang(t->kids[1]);
    default: return in_b(t);
    }
}

bool in_alam(const Term& t) {
    switch (t->kind) {
    case Kind::Bang: return in_a(t->kids[0]);
    case Kind::ESub: return in_alam(t->kids[0]) && in_abang(t->kids[1]);
    default: return in_b(t);
    }
}

// best approximant per sort; null when the sort has none below the term
struct Best {
    Term a, b, abang, alam;
};

Best omega(const Term& n) {
    Best r;
    switch (n->kind) {
    case Kind::Var:
        r.a = r.b = r.abang = r.alam = n;
        return r;
    case Kind::Bot:
    case Kind::Bag:
        r.a = bot();
        return r;
    case Kind::Lam: {
        Best k = omega(n->kids[0]);
        r.a = r.abang = lam(n->name, k.a);
        return r;
    }
    case Kind::Bang: {
        Best k = omega(n->kids[0]);
        r.a = r.alam = bang(k.a);
        return r;
    }
    case Kind::App: {
        Best f = omega(n->kids[0]);
        if (f.alam) r.b = r.abang = r.alam = r.a = app(f.alam, omega(n->kids[1]).a);
        break;
    }
    case Kind::Der: {
        Best k = omega(n->kids[0]);
        if (k.abang) r.b = r.abang = r.alam = r.a = der(k.abang);
        break;
    }
    case Kind::ESub: {
        Best body = omega(n->kids[0]);
        Best arg = omega(n->kids[1]);
        if (arg.abang) {
            r.a = esub(n->name, body.a, arg.abang);
            if (body.abang) r.abang = esub(n->name, body.abang, arg.abang);
            if (body.alam) r.alam = esub(n->name, body.alam, arg.abang);
        }
        break;
    }
    }
    if (!r.a) r.a = bot();
    return r;
}

}  // namespace

bool is_approximant(const Term& a) { return in_a(a); }

bool bot_leq(const Term& a, const Term& m) {
    if (a->kind == Kind::Bot) return true;
    if (a->kind != m->kind || a->free != m->free || a->kids.size() != m->kids.size()) return false;
    if (a->kind == Kind::Var) return a->free ? a->name == m->name : a->index == m->index;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!bot_leq(a->kids[i], m->kids[i])) return false;
    return true;
}

Term direct_approximant(const Term& n) { return omega(n).a; }

std::optional<Term> join(const Term& a, const Term& b) {
    if (a->kind == Kind::Bot) return b;
    if (b->kind == Kind::Bot) return a;
    if (a->kind != b->kind || a->free != b->free || a->kids.size() != b->kids.size()) return std::nullopt;
    if (a->kind == Kind::Var) {
        bool same = a->free ? a->name == b->name : a->index == b->index;
        return same ? std::optional<Term>(a) : std::nullopt;
    }
    std::vector<Term> ks;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        auto j = join(a->kids[i], b->kids[i]);
        if (!j) return std::nullopt;
        ks.push_back(*j);
    }
    return rebuild(a, std::move(ks));
}

std::vector<Term> bot_truncations(const Term& n) {
    std::vector<Term> out{bot()};
    if (n->kind == Kind::Bot) return out;
    std::vector<std::vector<Term>> options;
    for (const auto& k : n->kids) options.push_back(bot_truncations(k));
    std::vector<Term> cur(options.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == options.size()) {
            out.push_back(options.empty() ? n : rebuild(n, cur));
            return;
        }
        for (const auto& o : options[i]) {
            cur[i] = o;
            go(i + 1);
        }
    };
    go(0);
    return out;
}

TermSet ApproximantSet::closure() const {
    TermSet out;
    for (const auto& g : generators)
        for (const auto& t : bot_truncations(g))
            if (is_approximant(t)) out.insert(t);
    return out;
}

ApproximantSet approximant_set(const Term& m, std::size_t fuel, std::size_t cap) {
    ApproximantSet s;
    s.fuel = fuel;
    ReductSet rs = reducts(m, Ctx::Full, fuel, cap);
    s.truncated = !rs.closed();
    for (const auto& n : rs.terms) s.generators.insert(direct_approximant(n));
    return s;
}

Term bt_truncate(const Term& m, std::size_t fuel, std::size_t cap) {
    ApproximantSet s = approximant_set(m, fuel, cap);
    Term acc = bot();
    for (const auto& g : s.generators) {
        auto j = join(acc, g);
        if (!j) throw JoinFailure("approximants " + print(acc) + " and " + print(g) + " have no upper bound");
        acc = *j;
    }
    return acc;
}

TaylorSet taylor_of_bt(const Term& m, std::size_t fuel, std::size_t size_cap, std::size_t cap) {
    ApproximantSet s = approximant_set(m, fuel, cap);
    TaylorSet out;
    out.size_cap = size_cap;
    out.complete_up_to_cap = !s.truncated;
    for (const auto& g : s.generators) {
        TaylorSet t = taylor_enum(g, size_cap);
        out.terms.insert(t.terms.begin(), t.terms.end());
    }
    return out;
}

CheckReport check_commutation(const Term& m, std::size_t fuel, std::size_t size_cap, std::size_t cap) {
    CheckReport rep;
    rep.check = "commutation";
    rep.params = {{"term", print(m)}, {"fuel", fuel}, {"cap", size_cap}};
    // both sides read the same reduct window
    TaylorSet bt = taylor_of_bt(m, fuel, size_cap, cap);
    TaylorSet nf = taylor_nf(m, size_cap, NfWindow{fuel, cap});
    TaylorSet direct = taylor_nf(m, size_cap, NfWindow{0, 0});
    rep.details["bt_size"] = bt.terms.size();
    rep.details["nf_size"] = nf.terms.size();
    rep.details["window_closed"] = bt.complete_up_to_cap;
    for (const auto& t : bt.terms)
        if (!nf.terms.count(t)) {
            rep.fail(print(t) + " expands the Boehm tree but is no Taylor normal form");
            return rep;
        }
    auto missing = [&](const TaylorSet& side, const char* what) {
        for (const auto& t : side.terms)
            if (!bt.terms.count(t)) {
                std::string cex = print(t) + " in the " + what + " Taylor normal form only";
                if (bt.complete_up_to_cap)
                    rep.fail(cex);
                else
                    rep.inconclude("reduct window truncated at fuel " + std::to_string(fuel) + ": " + cex);
                return;
            }
    };
    missing(nf, "windowed");
    if (rep.verdict == Verdict::Pass) missing(direct, "direct");
    if (rep.verdict == Verdict::Pass) rep.passed = 1;
    return rep;
}

CheckReport check_bohm_properties(const Term& m, std::size_t fuel) {
    CheckReport rep;
    rep.check = "bohm-properties";
    rep.params = {{"term", print(m)}, {"fuel", fuel}};
    ReductSet rs = reducts(m, Ctx::Full, fuel, kBohmReductCap);
    for (const auto& p : rs.terms) {
        Term w = direct_approximant(p);
        if (!is_approximant(w) || !bot_leq(w, p)) {
            rep.fail("direct approximant of " + print(p) + " is not below it");
            return rep;
        }
        for (const auto& q : one_step(p, Ctx::Full))
            if (!bot_leq(w, q)) {
                rep.fail(print(w) + " is lost along " + print(p) + " -> " + print(q));
                return rep;
            }
    }
    Term prev = bot();
    for (std::size_t f = 0; f <= fuel; ++f) {
        Term cur;
        try {
            cur = bt_truncate(m, f);
        } catch (const JoinFailure& e) {
            rep.fail(e.what());
            return rep;
        }
        if (!bot_leq(prev, cur)) {
            rep.fail("truncation shrinks from fuel " + std::to_string(f - 1) + " to " + std::to_string(f));
            return rep;
        }
        prev = cur;
    }
    Term t = bt_truncate(m, fuel);
    if (!equal(bt_truncate(lam("x", m), fuel), lam("x", t)) || !equal(bt_truncate(bang(m), fuel), bang(t))) {
        rep.fail("truncation does not commute with abstraction or bang");
        return rep;
    }
    rep.passed = 1;
    return rep;
}

}  // namespace dbang
