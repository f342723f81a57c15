#include "dbang/bohm.hpp"
#include "dbang/cli.hpp"
#include "dbang/resource.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/taylor.hpp"

namespace dbang::cli {

namespace {

using Run = std::function<CheckReport(const Term*, const SuiteParams&)>;

// runs a source-level check in the requested mode, or in both
Run per_mode(std::function<CheckReport(const Term&, Mode, const SuiteParams&)> f) {
    return [f](const Term* t, const SuiteParams& p) {
        if (p.mode) return f(*t, *p.mode, p);
        CheckReport both = f(*t, Mode::CbN, p);
        CheckReport v = f(*t, Mode::CbV, p);
        CheckReport agg;
        agg.check = both.check;
        agg.params = {{"term", print(*t)}, {"mode", "n,v"}};
        agg.details["n"] = both.to_json()["details"];
        agg.details["v"] = v.to_json()["details"];
        agg.absorb(both);
        agg.absorb(v);
        return agg;
    };
}

std::vector<Suite> make_suites() {
    std::vector<Suite> s;
    auto add = [&](std::string name, std::optional<Lang> lang, Run run) { s.push_back({std::move(name), lang, std::move(run)}); };
    add("factorization", Lang::DBang, [](const Term* t, const SuiteParams& p) { return check_factorization(*t, p.fuel); });
    add("confluence", Lang::DBang, [](const Term* t, const SuiteParams& p) { return check_confluence(*t, Ctx::Full, p.fuel); });
    add("sn-measure", Lang::Resource, [](const Term* t, const SuiteParams&) { return check_sn_measure(*t); });
    add("diamond", Lang::Resource, [](const Term* t, const SuiteParams&) { return check_parallel_diamond(*t); });
    add("nf-order", Lang::Resource, [](const Term* t, const SuiteParams&) { return check_nf_order_independence(*t); });
    add("sandwich", Lang::Resource, [](const Term* t, const SuiteParams&) { return check_parallel_sandwich(*t); });
    add("res-factorization", Lang::Resource,
        [](const Term* t, const SuiteParams&) { return check_resource_factorization(*t); });
    add("simulation-surface", Lang::DBang,
        [](const Term* t, const SuiteParams& p) { return check_simulation_surface(*t, 0, p.cap); });
    add("simulation-full", Lang::DBang,
        [](const Term* t, const SuiteParams& p) { return check_simulation_full(*t, 0, p.cap); });
    add("simulation", Lang::DBang, [](const Term* t, const SuiteParams& p) {
        CheckReport agg;
        agg.check = "simulation";
        agg.params = {{"term", print(*t)}, {"cap", p.cap}};
        agg.absorb(check_simulation_surface(*t, 0, p.cap));
        agg.absorb(check_simulation_full(*t, 0, p.cap));
        return agg;
    });
    add("nf-invariance", Lang::DBang, [](const Term* t, const SuiteParams& p) { return check_nf_invariance(*t, p.fuel, p.cap); });
    add("substitution", Lang::DBang, [](const Term* t, const SuiteParams& p) {
        return check_substitution_lemma(*t, p.var, parse(p.with, Lang::DBang), p.cap);
    });
    add("context-decomposition", Lang::DBang,
        [](const Term* t, const SuiteParams& p) { return check_context_decomposition(*t, p.cap); });
    add("commutation", Lang::DBang, [](const Term* t, const SuiteParams& p) { return check_commutation(*t, p.fuel, p.cap); });
    add("bohm-properties", Lang::DBang, [](const Term* t, const SuiteParams& p) { return check_bohm_properties(*t, p.fuel); });
    add("embedding", Lang::Lambda,
        per_mode([](const Term& t, Mode m, const SuiteParams& p) { return check_embedding(t, m, p.fuel); }));
    add("translation-simulation", Lang::Lambda,
        per_mode([](const Term& t, Mode m, const SuiteParams& p) { return check_translation_simulation(t, m, p.fuel); }));
    add("translation-taylor", Lang::Lambda,
        per_mode([](const Term& t, Mode m, const SuiteParams& p) { return check_translation_taylor(t, m, p.cap); }));
    add("translation-bohm", Lang::Lambda,
        per_mode([](const Term& t, Mode m, const SuiteParams& p) { return check_translation_bohm(t, m, p.fuel); }));
    add("translation-commutation", Lang::Lambda, per_mode([](const Term& t, Mode m, const SuiteParams& p) {
            return check_translation_commutation(t, m, p.fuel, p.cap);
        }));
    auto global = [](std::function<CheckReport(Mode, const SuiteParams&)> f) -> Run {
        return [f](const Term*, const SuiteParams& p) {
            if (p.mode) return f(*p.mode, p);
            CheckReport agg;
            for (Mode m : {Mode::CbN, Mode::CbV}) {
                CheckReport r = f(m, p);
                agg.check = r.check;
                agg.details[mode_name(m)] = r.to_json()["details"];
                agg.params[mode_name(m)] = r.params;
                agg.absorb(r);
            }
            return agg;
        };
    };
    add("fragment-membership", std::nullopt,
        global([](Mode m, const SuiteParams& p) { return check_fragment_membership(m, p.cap); }));
    add("fragment-closure", std::nullopt,
        global([](Mode m, const SuiteParams& p) { return check_fragment_closure(m, p.cap, p.fuel); }));
    return s;
}

}  // namespace

const std::vector<Suite>& suites() {
    static const std::vector<Suite> s = make_suites();
    return s;
}

const Suite* find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

CheckReport fuzz(std::uint64_t seed, std::size_t size_cap, std::size_t count, const Suite& suite,
                 const SuiteParams& params, const std::function<void(const CheckReport&)>& on_item) {
    CheckReport agg;
    agg.check = "fuzz:" + suite.name;
    agg.params = {{"seed", seed}, {"size", size_cap}, {"count", count}, {"fuel", params.fuel}, {"cap", params.cap}};
    if (params.mode) agg.params["mode"] = mode_name(*params.mode);
    if (!suite.lang) {
        CheckReport r = suite.run(nullptr, params);
        if (on_item) on_item(r);
        agg.absorb(r);
        return agg;
    }
    for (const auto& t : sample_terms(size_cap, *suite.lang, {"x", "y"}, count, seed)) {
        CheckReport r = suite.run(&t, params);
        if (on_item) on_item(r);
        agg.absorb(r);
    }
    return agg;
}

int exit_code(Verdict v) {
    switch (v) {
    case Verdict::Pass: return kExitOk;
    case Verdict::Fail: return kExitFailure;
    case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitFailure;
}

}  // namespace dbang::cli
