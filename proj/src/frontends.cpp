#include "dbang/frontends.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "dbang/bohm.hpp"
#include "dbang/resource.hpp"

namespace dbang {

std::string mode_name(Mode m) { return m == Mode::CbN ? "n" : "v"; }

Mode mode_from_name(const std::string& s) {
    if (s == "n" || s == "cbn" || s == "N") return Mode::CbN;
    if (s == "v" || s == "cbv" || s == "V") return Mode::CbV;
    throw std::invalid_argument("unknown mode: " + s);
}

// ---------------------------------------------------------------- reduction

std::optional<Term> lam_root_step(const Term& m, Mode mode) {
    if (m->kind == Kind::App) {
        ListView lv = list_view(m->kids[0]);
        if (lv.core->kind != Kind::Lam) return std::nullopt;
        Term arg = shift(m->kids[1], static_cast<std::int64_t>(lv.outer_subs.size()));
        return wrap_subs(esub(lv.core->name, lv.core->kids[0], arg), lv.outer_subs);
    }
    if (m->kind == Kind::ESub) {
        if (mode == Mode::CbN) return instantiate(m->kids[0], m->kids[1]);
        ListView lv = list_view(m->kids[1]);
        if (!is_value(lv.core)) return std::nullopt;
        Term body = shift(m->kids[0], static_cast<std::int64_t>(lv.outer_subs.size()), 1);
        return wrap_subs(instantiate(body, lv.core), lv.outer_subs);
    }
    return std::nullopt;
}

namespace {

void lam_collect(const Term& m, Mode mode, Path& p, std::vector<Path>& out) {
    if (lam_root_step(m, mode)) out.push_back(p);
    for (std::size_t i = 0; i < m->kids.size(); ++i) {
        p.push_back(static_cast<std::uint8_t>(i));
        lam_collect(m->kids[i], mode, p, out);
        p.pop_back();
    }
}

Term lam_contract_at(const Term& m, const Path& p, Mode mode) {
    return replace_at(m, p, 0, [mode](const Term& t) { return *lam_root_step(t, mode); });
}

}  // namespace

std::vector<Path> lam_redexes(const Term& m, Mode mode) {
    std::vector<Path> out;
    Path p;
    lam_collect(m, mode, p, out);
    return out;
}

std::optional<Term> lam_step(const Term& m, Mode mode) {
    auto sites = lam_redexes(m, mode);
    if (sites.empty()) return std::nullopt;
    return lam_contract_at(m, sites.front(), mode);
}

NormalizeOutcome lam_normalize(const Term& m, Mode mode, std::size_t fuel) {
    Term cur = m;
    for (std::size_t steps = 0;; ++steps) {
        auto next = lam_step(cur, mode);
        if (!next) return {cur, NormalizeOutcome::Status::NormalForm, steps};
        if (steps == fuel) return {cur, NormalizeOutcome::Status::FuelExhausted, steps};
        cur = *next;
    }
}

std::vector<Term> lam_one_step(const Term& m, Mode mode) {
    std::vector<Term> out;
    TermSet seen;
    for (const auto& p : lam_redexes(m, mode)) {
        Term r = lam_contract_at(m, p, mode);
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

ReductSet lam_reducts(const Term& m, Mode mode, std::size_t fuel, std::size_t cap) {
    return reach_set(m, fuel, cap, [mode](const Term& t) { return lam_one_step(t, mode); });
}

// -------------------------------------------------------------- translation

Term translate(const Term& m, Mode mode) {
    switch (m->kind) {
    case Kind::Bot:
        return m;
    case Kind::Var:
        return mode == Mode::CbN ? m : bang(m);
    case Kind::Lam: {
        Term l = lam(m->name, translate(m->kids[0], mode));
        return mode == Mode::CbN ? l : bang(l);
    }
    case Kind::App: {
        Term f = translate(m->kids[0], mode);
        Term a = translate(m->kids[1], mode);
        if (mode == Mode::CbN) return app(f, bang(a));
        ListView lv = list_view(f);
        if (lv.core->kind == Kind::Bang) return app(wrap_subs(lv.core->kids[0], lv.outer_subs), a);
        return app(der(f), a);
    }
    case Kind::ESub: {
        Term b = translate(m->kids[0], mode);
        Term a = translate(m->kids[1], mode);
        return esub(m->name, b, mode == Mode::CbN ? bang(a) : a);
    }
    default:
        throw std::invalid_argument("translate expects a source term");
    }
}

// ---------------------------------------------------------------- fragments

namespace {

bool in_frag_n(const Term& t) {
    switch (t->kind) {
    case Kind::Var: return true;
    case Kind::Lam: return in_frag_n(t->kids[0]);
    case Kind::App:
    case Kind::ESub:
        return in_frag_n(t->kids[0]) && t->kids[1]->kind == Kind::Bang && in_frag_n(t->kids[1]->kids[0]);
    default: return false;
    }
}

bool in_frag_v(const Term& t);

// L_v<x> or L_v<\x. M_v>
bool frag_v_head(const Term& f) {
    if (f->kind == Kind::ESub) return frag_v_head(f->kids[0]) && in_frag_v(f->kids[1]);
    if (f->kind == Kind::Var) return true;
    if (f->kind == Kind::Lam) return in_frag_v(f->kids[0]);
    return false;
}

bool in_frag_v(const Term& t) {
    switch (t->kind) {
    case Kind::Bang: {
        const Term& b = t->kids[0];
        return b->kind == Kind::Var || (b->kind == Kind::Lam && in_frag_v(b->kids[0]));
    }
    case Kind::App: {
        const Term& f = t->kids[0];
        if (!in_frag_v(t->kids[1])) return false;
        if (f->kind == Kind::Der) return in_frag_v(f->kids[0]);
        return frag_v_head(f);
    }
    case Kind::ESub: return in_frag_v(t->kids[0]) && in_frag_v(t->kids[1]);
    default: return false;
    }
}

}  // namespace

bool fragment_check(const Term& m, Mode mode) { return mode == Mode::CbN ? in_frag_n(m) : in_frag_v(m); }

// ------------------------------------------------------------ normal shapes

std::string shape_name(NfShape::Kind k) {
    switch (k) {
    case NfShape::Kind::Cbn: return "cbn-head";
    case NfShape::Kind::CbvB: return "cbv-B";
    case NfShape::Kind::CbvBBang: return "cbv-B!";
    case NfShape::Kind::NotShaped: return "none";
    }
    return "?";
}

namespace {

bool is_box(const Term& t, bool res) { return t->kind == (res ? Kind::Bag : Kind::Bang); }

NfShape cbn_shape(const Term& t, bool res) {
    NfShape s;
    Term cur = t;
    while (cur->kind == Kind::Lam) {
        s.lams.push_back(cur->name);
        cur = cur->kids[0];
    }
    std::vector<Term> args;
    while (cur->kind == Kind::App) {
        if (!is_box(cur->kids[1], res)) return {};
        args.push_back(res ? cur->kids[1] : cur->kids[1]->kids[0]);
        cur = cur->kids[0];
    }
    if (cur->kind != Kind::Var) return {};
    s.args.assign(args.rbegin(), args.rend());
    std::size_t k = s.lams.size();
    if (cur->free) {
        s.head = cur->name;
    } else if (cur->index < k) {
        s.head_binder = static_cast<int>(k - 1 - cur->index);
        s.head = s.lams[s.head_binder];
    } else {
        return {};
    }
    s.kind = NfShape::Kind::Cbn;
    return s;
}

bool in_b(const Term& t, bool res);
bool in_bb(const Term& t, bool res);

bool var_head(const Term& f, bool res) {
    if (f->kind == Kind::ESub) return var_head(f->kids[0], res) && in_bb(f->kids[1], res);
    return f->kind == Kind::Var;
}

bool in_bb(const Term& t, bool res) {
    switch (t->kind) {
    case Kind::ESub: return in_bb(t->kids[1], res) && in_bb(t->kids[0], res);
    case Kind::App: {
        const Term& f = t->kids[0];
        if (!in_b(t->kids[1], res)) return false;
        if (f->kind == Kind::Der) return in_bb(f->kids[0], res);
        return var_head(f, res);
    }
    default: return false;
    }
}

bool in_b(const Term& t, bool res) {
    if (in_bb(t, res)) return true;
    if (t->kind == Kind::ESub) return in_bb(t->kids[1], res) && in_b(t->kids[0], res);
    if (!res) {
        if (t->kind != Kind::Bang) return false;
        const Term& b = t->kids[0];
        return b->kind == Kind::Var || (b->kind == Kind::Lam && in_b(b->kids[0], res));
    }
    if (t->kind != Kind::Bag) return false;
    if (t->kids.empty()) return true;
    const Term& first = t->kids.front();
    for (const auto& e : t->kids) {
        if (first->kind == Kind::Var) {
            if (!equal(e, first)) return false;
        } else if (e->kind != Kind::Lam || !in_b(e->kids[0], res)) {
            return false;
        }
    }
    return first->kind == Kind::Var || first->kind == Kind::Lam;
}

}  // namespace

NfShape classify_nf(const Term& m, Mode mode, Level level) {
    bool res = level == Level::Resource;
    if (res) {
        if (!res_is_normal(m)) throw std::invalid_argument("not a resource normal form");
    } else if (mode == Mode::CbN) {
        if (!find_redexes(m, Ctx::Surface).empty()) throw std::invalid_argument("not surface-normal");
    } else if (!find_redexes(m, Ctx::Full).empty()) {
        throw std::invalid_argument("not normal");
    }
    if (mode == Mode::CbN) return cbn_shape(m, res);
    NfShape s;
    if (in_bb(m, res))
        s.kind = NfShape::Kind::CbvBBang;
    else if (in_b(m, res))
        s.kind = NfShape::Kind::CbvB;
    return s;
}

Term circ(std::size_t k) {
    Term t = lam("x0", bvar(0));
    for (std::size_t i = 1; i <= k; ++i) t = lam("x" + std::to_string(i), bang(t));
    return t;
}

// ----------------------------------------------------------- meaningfulness

Term TestingContext::plug(const Term& m) const {
    Term cur = m;
    for (const auto& f : frames) {
        if (f.kind == Frame::Kind::Arg)
            cur = app(cur, f.arg);
        else
            cur = app(lam_named(f.binder, cur), f.arg);
    }
    return cur;
}

std::string TestingContext::to_string() const { return print(plug(var("□"))); }

namespace {

std::string fresh(const std::string& base, std::set<std::string>& used) {
    for (std::size_t i = 0;; ++i) {
        std::string n = base + std::to_string(i);
        if (used.insert(n).second) return n;
    }
}

bool verify(const TestingContext& ctx, const Term& m, std::size_t fuel, MeaningfulResult& out) {
    NormalizeOutcome r = normalize(ctx.plug(m), Ctx::Surface, fuel);
    if (r.status != NormalizeOutcome::Status::NormalForm || r.result->kind != Kind::Bang) return false;
    out.witness = true;
    out.context = ctx;
    out.steps = r.steps_used;
    out.result = r.result;
    return true;
}

// head-variable route: erase the arguments through the head
std::optional<TestingContext> cbn_context(const Term& m, std::size_t fuel) {
    NormalizeOutcome r = normalize(m, Ctx::Surface, fuel);
    if (r.status != NormalizeOutcome::Status::NormalForm) return std::nullopt;
    std::set<std::string> used = free_names(r.result);
    for (const auto& n : free_names(m)) used.insert(n);
    Term cur = r.result;
    std::size_t k = 0;
    while (cur->kind == Kind::Lam) {
        ++k;
        cur = cur->kids[0];
    }
    TestingContext ctx;
    if (cur->kind == Kind::Bang) {
        for (std::size_t i = 0; i < k; ++i) ctx.frames.push_back({Frame::Kind::Arg, bang(var(fresh("z", used))), ""});
        return ctx;
    }
    NfShape s = cbn_shape(r.result, false);
    if (s.kind != NfShape::Kind::Cbn) return std::nullopt;
    Term eraser = bang(var(fresh("z", used)));
    for (std::size_t i = 0; i < s.args.size(); ++i) eraser = lam("y" + std::to_string(s.args.size() - i), eraser);
    if (s.head_binder < 0) ctx.frames.push_back({Frame::Kind::Let, bang(eraser), s.head});
    for (std::size_t i = 0; i < k; ++i) {
        Term a = static_cast<int>(i) == s.head_binder ? eraser : var(fresh("z", used));
        ctx.frames.push_back({Frame::Kind::Arg, bang(a), ""});
    }
    return ctx;
}

}  // namespace

MeaningfulResult meaningful_witness(const Term& m, std::optional<Mode> hint, std::size_t fuel, std::size_t budget) {
    MeaningfulResult out;
    if (m->kind == Kind::Bang) {
        out.witness = true;
        out.route = "bang";
        out.result = m;
        return out;
    }
    bool cbn_first = hint ? *hint == Mode::CbN : !fragment_check(m, Mode::CbV);
    std::size_t tried = 0;
    auto try_cbn = [&]() {
        if (tried >= budget) return false;
        ++tried;
        auto ctx = cbn_context(m, fuel);
        if (ctx && verify(*ctx, m, fuel, out)) {
            out.route = "cbn";
            return true;
        }
        return false;
    };
    auto try_cbv = [&]() {
        std::set<std::string> fv = free_names(m);
        for (std::size_t c = 0; tried < budget; ++c) {
            ++tried;
            TestingContext ctx;
            for (auto it = fv.rbegin(); it != fv.rend(); ++it) ctx.frames.push_back({Frame::Kind::Let, bang(circ(c)), *it});
            if (verify(ctx, m, fuel, out)) {
                out.route = "cbv";
                return true;
            }
            if (fv.empty()) return false;
        }
        return false;
    };
    bool found = cbn_first ? (try_cbn() || try_cbv()) : (try_cbv() || try_cbn());
    if (!found) out.reason = "no verified context within fuel " + std::to_string(fuel) + " and budget " + std::to_string(budget);
    return out;
}

// ------------------------------------------------------ source-level Taylor

bool lam_approximates(const Term& r, const Term& m, Mode mode) {
    if (mode == Mode::CbN) {
        switch (m->kind) {
        case Kind::Var: return equal(r, m);
        case Kind::Lam: return r->kind == Kind::Lam && lam_approximates(r->kids[0], m->kids[0], mode);
        case Kind::App:
        case Kind::ESub:
            if (r->kind != m->kind || r->kids[1]->kind != Kind::Bag) return false;
            if (!lam_approximates(r->kids[0], m->kids[0], mode)) return false;
            for (const auto& e : r->kids[1]->kids)
                if (!lam_approximates(e, m->kids[1], mode)) return false;
            return true;
        default: return false;
        }
    }
    switch (m->kind) {
    case Kind::Var:
    case Kind::Lam:
        if (r->kind != Kind::Bag) return false;
        for (const auto& e : r->kids) {
            if (m->kind == Kind::Var ? !equal(e, m)
                                     : (e->kind != Kind::Lam || !lam_approximates(e->kids[0], m->kids[0], mode)))
                return false;
        }
        return true;
    case Kind::ESub:
        return r->kind == Kind::ESub && lam_approximates(r->kids[0], m->kids[0], mode) &&
               lam_approximates(r->kids[1], m->kids[1], mode);
    case Kind::App: {
        if (r->kind != Kind::App || !lam_approximates(r->kids[1], m->kids[1], mode)) return false;
        ListView lv = list_view(m->kids[0]);
        if (!is_value(lv.core)) {
            return r->kids[0]->kind == Kind::Der && lam_approximates(r->kids[0]->kids[0], m->kids[0], mode);
        }
        // a value head under a list: the singleton bag is consumed
        Term h = r->kids[0];
        for (std::size_t i = lv.outer_subs.size(); i-- > 0;) {
            if (h->kind != Kind::ESub || !lam_approximates(h->kids[1], lv.outer_subs[i].first, mode)) return false;
            h = h->kids[0];
        }
        if (lv.core->kind == Kind::Var) return equal(h, lv.core);
        return h->kind == Kind::Lam && lam_approximates(h->kids[0], lv.core->kids[0], mode);
    }
    default:
        return false;
    }
}

namespace {

void bags_of(const std::vector<Term>& pool, std::size_t budget, const std::function<void(std::vector<Term>)>& emit) {
    std::vector<Term> cur;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t from, std::size_t left) {
        if (left == 0) {
            emit(cur);
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            if (pool[i]->size > left) break;  // pool is sorted by size
            cur.push_back(pool[i]);
            go(i, left - pool[i]->size);
            cur.pop_back();
        }
    };
    go(0, budget);
}

class LamTaylor {
public:
    explicit LamTaylor(Mode mode) : mode_(mode) {}

    const std::vector<Term>& exact(const Term& m, std::size_t s) { return get(m, s, false); }

    std::vector<Term> upto(const Term& m, std::size_t cap) {
        std::vector<Term> out;
        for (std::size_t s = 1; s <= cap; ++s) {
            const auto& v = exact(m, s);
            out.insert(out.end(), v.begin(), v.end());
        }
        std::sort(out.begin(), out.end(), TermLess{});
        return out;
    }

private:
    Mode mode_;
    std::map<std::tuple<const Node*, std::size_t, bool>, std::vector<Term>> memo_;
    std::vector<Term> keep_;

    const std::vector<Term>& get(const Term& m, std::size_t s, bool head) {
        auto key = std::make_tuple(m.get(), s, head);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<Term> out;
        if (s > 0) {
            if (head)
                build_head(m, s, out);
            else if (mode_ == Mode::CbN)
                build_n(m, s, out);
            else
                build_v(m, s, out);
        }
        keep_.push_back(m);
        return memo_.emplace(key, std::move(out)).first->second;
    }

    void build_n(const Term& m, std::size_t s, std::vector<Term>& out) {
        switch (m->kind) {
        case Kind::Var:
            if (s == 1) out.push_back(m);
            return;
        case Kind::Lam:
            for (const auto& b : exact(m->kids[0], s - 1)) out.push_back(lam(m->name, b));
            return;
        case Kind::App:
        case Kind::ESub:
            for (std::size_t l = 1; l + 2 <= s; ++l) {
                const auto& fs = exact(m->kids[0], l);
                if (fs.empty()) continue;
                std::vector<Term> pool = upto(m->kids[1], s - 2 - l);
                bags_of(pool, s - 2 - l, [&](std::vector<Term> es) {
                    Term b = bag(std::move(es));
                    for (const auto& f : fs) out.push_back(m->kind == Kind::App ? app(f, b) : esub(m->name, f, b));
                });
            }
            return;
        default:
            return;
        }
    }

    void build_v(const Term& m, std::size_t s, std::vector<Term>& out) {
        switch (m->kind) {
        case Kind::Var:
            out.push_back(bag(std::vector<Term>(s - 1, m)));
            return;
        case Kind::Lam: {
            std::vector<Term> pool;
            for (std::size_t k = 1; k + 1 < s; ++k)
                for (const auto& b : exact(m->kids[0], k)) pool.push_back(lam(m->name, b));
            std::sort(pool.begin(), pool.end(), TermLess{});
            bags_of(pool, s - 1, [&](std::vector<Term> es) { out.push_back(bag(std::move(es))); });
            return;
        }
        case Kind::ESub:
            for (std::size_t l = 1; l + 1 < s; ++l)
                for (const auto& b : exact(m->kids[0], l))
                    for (const auto& a : exact(m->kids[1], s - 1 - l)) out.push_back(esub(m->name, b, a));
            return;
        case Kind::App: {
            bool value_head = is_value(list_view(m->kids[0]).core);
            for (std::size_t l = 1; l + 1 < s; ++l) {
                const auto& ns = exact(m->kids[1], s - 1 - l);
                if (ns.empty()) continue;
                if (value_head) {
                    for (const auto& h : get(m->kids[0], l, true))
                        for (const auto& n : ns) out.push_back(app(h, n));
                } else if (l >= 2) {
                    for (const auto& f : exact(m->kids[0], l - 1))
                        for (const auto& n : ns) out.push_back(app(der(f), n));
                }
            }
            return;
        }
        default:
            return;
        }
    }

    // l<p> for a head L<V>, where l<[p]> approximates it
    void build_head(const Term& m, std::size_t s, std::vector<Term>& out) {
        switch (m->kind) {
        case Kind::Var:
            if (s == 1) out.push_back(m);
            return;
        case Kind::Lam:
            for (const auto& b : exact(m->kids[0], s - 1)) out.push_back(lam(m->name, b));
            return;
        case Kind::ESub:
            for (std::size_t l = 1; l + 1 < s; ++l)
                for (const auto& b : get(m->kids[0], l, true))
                    for (const auto& a : exact(m->kids[1], s - 1 - l)) out.push_back(esub(m->name, b, a));
            return;
        default:
            return;
        }
    }
};

}  // namespace

TaylorSet lam_taylor_enum(const Term& m, Mode mode, std::size_t size_cap) {
    LamTaylor e(mode);
    TaylorSet ts;
    ts.size_cap = size_cap;
    for (const auto& t : e.upto(m, size_cap)) ts.terms.insert(t);
    return ts;
}

// ------------------------------------------------------- source-level Boehm

namespace {

bool an(const Term& t);
bool nlam(const Term& t) {
    if (t->kind == Kind::Var) return true;
    return t->kind == Kind::App && nlam(t->kids[0]) && an(t->kids[1]);
}
bool an(const Term& t) {
    if (t->kind == Kind::Bot) return true;
    if (t->kind == Kind::Lam) return an(t->kids[0]);
    return nlam(t);
}

bool av(const Term& t);
bool axl(const Term& t);
bool al(const Term& t) {
    switch (t->kind) {
    case Kind::Var: return true;
    case Kind::App: return al(t->kids[0]) && av(t->kids[1]);
    case Kind::ESub: return al(t->kids[0]) && axl(t->kids[1]);
    default: return false;
    }
}
bool axl(const Term& t) {
    switch (t->kind) {
    case Kind::App: return al(t->kids[0]) && av(t->kids[1]);
    case Kind::ESub: return axl(t->kids[0]) && axl(t->kids[1]);
    default: return false;
    }
}
bool av(const Term& t) {
    switch (t->kind) {
    case Kind::Bot: return true;
    case Kind::Lam: return av(t->kids[0]);
    case Kind::ESub: return (av(t->kids[0]) || al(t->kids[0])) && axl(t->kids[1]);
    default: return al(t);
    }
}

struct BestN {
    Term a, nl;
};
BestN omega_n(const Term& t) {
    BestN r;
    switch (t->kind) {
    case Kind::Var: r.a = r.nl = t; return r;
    case Kind::Lam: r.a = lam(t->name, omega_n(t->kids[0]).a); return r;
    case Kind::App: {
        BestN f = omega_n(t->kids[0]);
        if (f.nl) r.a = r.nl = app(f.nl, omega_n(t->kids[1]).a);
        break;
    }
    default: break;
    }
    if (!r.a) r.a = bot();
    return r;
}

struct BestV {
    Term v, l, xl;
};
BestV omega_v(const Term& t) {
    BestV r;
    switch (t->kind) {
    case Kind::Var: r.v = r.l = t; return r;
    case Kind::Lam: r.v = lam(t->name, omega_v(t->kids[0]).v); return r;
    case Kind::App: {
        BestV f = omega_v(t->kids[0]);
        if (f.l) r.v = r.l = r.xl = app(f.l, omega_v(t->kids[1]).v);
        break;
    }
    case Kind::ESub: {
        BestV a = omega_v(t->kids[1]);
        if (!a.xl) break;
        BestV b = omega_v(t->kids[0]);
        r.v = esub(t->name, b.v, a.xl);
        if (b.l) r.l = esub(t->name, b.l, a.xl);
        if (b.xl) r.xl = esub(t->name, b.xl, a.xl);
        break;
    }
    default: break;
    }
    if (!r.v) r.v = bot();
    return r;
}

}  // namespace

bool lam_is_approximant(const Term& a, Mode mode) { return mode == Mode::CbN ? an(a) : av(a); }

Term lam_direct_approximant(const Term& n, Mode mode) { return mode == Mode::CbN ? omega_n(n).a : omega_v(n).v; }

namespace {

struct LamBt {
    Term tree;
    bool closed;
};

LamBt lam_bt(const Term& m, Mode mode, std::size_t fuel, std::size_t cap) {
    ReductSet rs = lam_reducts(m, mode, fuel, cap);
    Term acc = bot();
    for (const auto& n : rs.terms) {
        auto j = join(acc, lam_direct_approximant(n, mode));
        if (!j) throw JoinFailure("source approximants of " + print(m) + " have no upper bound");
        acc = *j;
    }
    return {acc, rs.closed()};
}

}  // namespace

Term lam_bt_truncate(const Term& m, Mode mode, std::size_t fuel, std::size_t cap) {
    return lam_bt(m, mode, fuel, cap).tree;
}

// ------------------------------------------------------------------- checks

namespace {

CheckReport mode_report(const std::string& name, const Term& m, Mode mode) {
    CheckReport rep;
    rep.check = name;
    rep.params = {{"term", print(m)}, {"mode", mode_name(mode)}};
    return rep;
}

void finish(CheckReport& rep) {
    if (rep.verdict == Verdict::Pass) rep.passed = 1;
}

}  // namespace

CheckReport check_translation_simulation(const Term& m, Mode mode, std::size_t fuel) {
    CheckReport rep = mode_report("translation-simulation", m, mode);
    rep.params["fuel"] = fuel;
    Term tm = translate(m, mode);
    ReductSet rs = reducts(tm, Ctx::Full, fuel, 2000);
    for (const auto& n : lam_one_step(m, mode)) {
        Term tn = translate(n, mode);
        if (rs.terms.count(tn) && !equal(tn, tm)) continue;
        std::string cex = print(m) + " -> " + print(n) + " but " + print(tm) + " does not reach " + print(tn);
        if (rs.closed())
            rep.fail(cex);
        else
            rep.inconclude("fuel exhausted: " + cex);
    }
    finish(rep);
    return rep;
}

CheckReport check_embedding(const Term& m, Mode mode, std::size_t fuel) {
    CheckReport rep = mode_report("embedding", m, mode);
    rep.params["fuel"] = fuel;
    Term tm = translate(m, mode);
    ReductSet src = lam_reducts(m, mode, fuel, 2000);
    std::vector<Term> src_t;
    for (const auto& p : src.terms) src_t.push_back(translate(p, mode));
    std::size_t witnessed = 0;
    for (const auto& n : one_step(tm, Ctx::Full)) {
        ReductSet rn = reducts(n, Ctx::Full, fuel, 2000);
        bool found = false;
        for (const auto& tp : src_t)
            if (rn.terms.count(tp)) {
                found = true;
                break;
            }
        if (found) {
            ++witnessed;
            continue;
        }
        std::string cex = print(tm) + " -> " + print(n) + " has no translated source reduct in reach";
        if (rn.closed() && src.closed())
            rep.fail(cex);
        else
            rep.inconclude("fuel " + std::to_string(fuel) + " exhausted: " + cex);
    }
    rep.details["witnessed"] = witnessed;
    finish(rep);
    return rep;
}

CheckReport check_translation_taylor(const Term& m, Mode mode, std::size_t size_cap) {
    CheckReport rep = mode_report("translation-taylor", m, mode);
    rep.params["cap"] = size_cap;
    TaylorSet src = lam_taylor_enum(m, mode, size_cap);
    Term tm = translate(m, mode);
    TaylorSet tgt = taylor_enum(tm, size_cap);
    for (const auto& r : src.terms)
        if (!lam_approximates(r, m, mode)) {
            rep.fail("enumerated " + print(r) + " is rejected by the relation");
            return rep;
        }
    for (const auto& r : tgt.terms)
        if (!src.terms.count(r)) {
            rep.fail(print(r) + " approximates " + print(tm) + " but not the source term");
            return rep;
        }
    for (const auto& r : src.terms)
        if (!tgt.terms.count(r)) {
            rep.fail(print(r) + " approximates the source term but not " + print(tm));
            return rep;
        }
    rep.details["size"] = src.terms.size();
    finish(rep);
    return rep;
}

CheckReport check_translation_bohm(const Term& m, Mode mode, std::size_t fuel, std::size_t factor) {
    CheckReport rep = mode_report("translation-bohm", m, mode);
    rep.params["fuel"] = fuel;
    rep.params["factor"] = factor;
    Term tm = translate(m, mode);
    LamBt low = lam_bt(m, mode, fuel, 600);
    LamBt high = lam_bt(m, mode, factor * fuel, 600);
    ReductSet rl = reducts(tm, Ctx::Full, fuel, 600);
    ReductSet rh = reducts(tm, Ctx::Full, factor * fuel, 600);
    Term bl, bh;
    try {
        bl = bt_truncate(tm, fuel, 600);
        bh = bt_truncate(tm, factor * fuel, 600);
    } catch (const JoinFailure& e) {
        rep.fail(e.what());
        return rep;
    }
    Term tl = translate(low.tree, mode);
    Term th = translate(high.tree, mode);
    rep.details["source"] = print(low.tree);
    rep.details["target"] = print(bh);
    if (low.closed && rl.closed()) {
        if (!equal(tl, bl)) rep.fail("translated truncation " + print(tl) + " differs from " + print(bl));
    } else if (!bot_leq(tl, bh) || !bot_leq(bl, th)) {
        std::string cex = print(tl) + " vs " + print(bh);
        if (high.closed && rh.closed() && low.closed && rl.closed())
            rep.fail(cex);
        else
            rep.inconclude("windows x" + std::to_string(factor) + " not closed: " + cex);
    }
    finish(rep);
    return rep;
}

CheckReport check_translation_commutation(const Term& m, Mode mode, std::size_t fuel, std::size_t size_cap) {
    CheckReport rep = mode_report("translation-commutation", m, mode);
    rep.params["fuel"] = fuel;
    rep.params["cap"] = size_cap;
    ReductSet rs = lam_reducts(m, mode, fuel, 400);
    TermSet bt, nf;
    for (const auto& n : rs.terms) {
        for (const auto& t : lam_taylor_enum(lam_direct_approximant(n, mode), mode, size_cap).terms) bt.insert(t);
        for (const auto& t : lam_taylor_enum(n, mode, size_cap).terms) {
            TermSet f = res_normal_forms(t);
            nf.insert(f.begin(), f.end());
        }
    }
    for (const auto& t : bt)
        if (!nf.count(t)) {
            rep.fail(print(t) + " expands the Boehm tree but is no Taylor normal form");
            return rep;
        }
    for (const auto& t : nf)
        if (!bt.count(t)) {
            std::string cex = print(t) + " is a Taylor normal form outside the Boehm tree expansion";
            if (rs.closed())
                rep.fail(cex);
            else
                rep.inconclude("fuel exhausted: " + cex);
            break;
        }
    rep.details["size"] = nf.size();
    finish(rep);
    return rep;
}

CheckReport check_fragment_membership(Mode mode, std::size_t size_cap) {
    CheckReport rep;
    rep.check = "fragment-membership";
    rep.params = {{"mode", mode_name(mode)}, {"cap", size_cap}};
    std::size_t n = 0;
    for (const auto& t : enumerate_terms(size_cap, Lang::Lambda, {"x", "y"})) {
        ++n;
        if (!fragment_check(translate(t, mode), mode)) {
            rep.fail(print(t) + " translates outside the fragment: " + print(translate(t, mode)));
            return rep;
        }
    }
    rep.details["terms"] = n;
    rep.passed = n;
    return rep;
}

CheckReport check_fragment_closure(Mode mode, std::size_t size_cap, std::size_t fuel) {
    CheckReport rep;
    rep.check = "fragment-closure";
    rep.params = {{"mode", mode_name(mode)}, {"cap", size_cap}, {"fuel", fuel}};
    std::size_t members = 0, reached = 0;
    for (const auto& t : enumerate_terms(size_cap, Lang::DBang, {"x", "y"})) {
        if (!fragment_check(t, mode)) continue;
        ++members;
        ReductSet rs = reducts(t, Ctx::Full, fuel, 200);
        for (const auto& r : rs.terms) {
            ++reached;
            if (!fragment_check(r, mode)) {
                rep.fail(print(t) + " reduces to " + print(r) + " outside the fragment");
                return rep;
            }
        }
    }
    rep.details["members"] = members;
    rep.details["reducts"] = reached;
    rep.passed = members;
    return rep;
}

}  // namespace dbang
