#include <CLI11.hpp>
#include <algorithm>
#include <ostream>

#include "dbang/bohm.hpp"
#include "dbang/cli.hpp"
#include "dbang/resource.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/taylor.hpp"

namespace dbang::cli {

namespace {

struct Options {
    std::size_t fuel = 0;  // 0: subcommand default
    std::size_t cap = 0;
    std::size_t budget = 64;
    std::size_t window = 12;
    std::size_t size = 6;
    std::size_t count = 20;
    std::uint64_t seed = 1;
    std::string mode;
    std::string lang;
    std::string cls = "full";
    std::string corpus;
    std::string var = "x";
    std::string with = "y";
    std::string term;
    std::string suite;
    bool json = false;
    bool trace = false;
    bool closure = false;
    bool nf = false;
};

std::string unicode_lambda(std::string s) {
    const std::string lam = "\xce\xbb";  // U+03BB
    for (std::size_t p; (p = s.find(lam)) != std::string::npos;) s.replace(p, lam.size(), "\\");
    return s;
}

class Runner {
public:
    Runner(Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    std::size_t fuel(std::size_t dflt) const { return o_.fuel ? o_.fuel : dflt; }
    std::size_t cap(std::size_t dflt) const { return o_.cap ? o_.cap : dflt; }

    std::optional<Mode> mode() const {
        if (o_.mode.empty()) return std::nullopt;
        return mode_from_name(o_.mode);
    }

    const std::vector<CorpusEntry>& corpus() {
        if (!loaded_) {
            corpus_ = o_.corpus.empty() ? builtin_corpus() : load_corpus(o_.corpus);
            loaded_ = true;
        }
        return corpus_;
    }

    Term term(const std::string& text, Lang dflt) {
        Lang lang = o_.lang.empty() ? dflt : lang_from_name(o_.lang);
        for (const auto& e : corpus())
            if (e.name == text) {
                Term t = parse(e.source, e.lang);
                if (!conforms(t, lang)) throw ParseError("corpus term " + text + " is not a " + lang_name(lang) + " term", 0);
                return t;
            }
        return parse(unicode_lambda(text), lang);
    }

    void report(const CheckReport& r) {
        if (o_.json) {
            out_ << r.to_json().dump() << "\n";
            return;
        }
        out_ << r.check << " " << verdict_name(r.verdict);
        if (r.params.contains("term")) out_ << " " << r.params["term"].get<std::string>();
        if (r.passed + r.failed + r.inconclusive > 1)
            out_ << " (pass " << r.passed << ", fail " << r.failed << ", inconclusive " << r.inconclusive << ")";
        if (!r.counterexample.empty()) out_ << "\n  counterexample: " << r.counterexample;
        if (!r.reason.empty()) out_ << "\n  reason: " << r.reason;
        out_ << "\n";
    }

    void terms(const TermSet& ts) {
        if (o_.json) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& t : ts) arr.push_back(print(t));
            out_ << arr.dump() << "\n";
            return;
        }
        if (ts.empty()) out_ << "(empty)\n";
        for (const auto& t : ts) out_ << print(t) << "\n";
    }

    int reduce(bool only_result) {
        Term t = term(o_.term, Lang::DBang);
        if (o_.cls != "full" && o_.cls != "surface") throw CLI::ValidationError("--class", "expected full or surface");
        Ctx cls = o_.cls == "surface" ? Ctx::Surface : Ctx::Full;
        nlohmann::json trace = nlohmann::json::array();
        TraceFn fn;
        if (o_.trace && !only_result) {
            fn = [&](std::size_t k, const RedexSite& s, const Term& after) {
                std::string loc = redex_kind_name(s.kind) + "@" + path_string(s.path);
                if (o_.json)
                    trace.push_back({{"step", k}, {"redex", loc}, {"term", print(after)}});
                else
                    out_ << "step " << k << ": " << loc << "  " << print(after) << "\n";
            };
        }
        NormalizeOutcome r = normalize(t, cls, fuel(1000), fn);
        bool normal = r.status == NormalizeOutcome::Status::NormalForm;
        if (o_.json) {
            nlohmann::json j{{"term", print(t)},
                             {"result", print(r.result)},
                             {"steps", r.steps_used},
                             {"status", normal ? "normal-form" : "fuel-exhausted"}};
            if (o_.trace) j["trace"] = trace;
            out_ << j.dump() << "\n";
        } else if (only_result) {
            out_ << print(r.result) << "\n";
        } else {
            out_ << "result: " << print(r.result) << "\n";
            out_ << "steps: " << r.steps_used << (normal ? " (normal form)" : " (fuel exhausted)") << "\n";
        }
        return normal ? kExitOk : kExitInconclusive;
    }

    int meaningful() {
        Term t = term(o_.term, Lang::DBang);
        MeaningfulResult r = meaningful_witness(t, mode(), fuel(200), o_.budget);
        if (o_.json) {
            nlohmann::json j{{"term", print(t)}, {"verdict", r.witness ? "Witness" : "Unknown"}};
            if (r.witness) {
                j["context"] = r.context.to_string();
                j["route"] = r.route;
                j["steps"] = r.steps;
                j["result"] = print(r.result);
            } else {
                j["reason"] = r.reason;
            }
            out_ << j.dump() << "\n";
        } else if (r.witness) {
            out_ << "Witness (" << r.route << "): T = " << r.context.to_string() << "\n";
            out_ << "T<M> ->s^" << r.steps << " " << print(r.result) << "\n";
        } else {
            out_ << "Unknown: " << r.reason << "\n";
        }
        return r.witness ? kExitOk : kExitInconclusive;
    }

    SuiteParams params(std::size_t dfuel, std::size_t dcap) const {
        SuiteParams p;
        p.fuel = fuel(dfuel);
        p.cap = cap(dcap);
        p.mode = mode();
        p.var = o_.var;
        p.with = o_.with;
        return p;
    }

    int check() {
        const Suite* s = find_suite(o_.suite);
        if (!s) throw CLI::ValidationError("suite", "unknown suite " + o_.suite);
        SuiteParams p = params(10, 8);
        CheckReport agg;
        agg.check = s->name;
        if (!s->lang) {
            agg = s->run(nullptr, p);
            report(agg);
            return exit_code(agg.verdict);
        }
        std::vector<Term> targets;
        if (!o_.term.empty()) {
            targets.push_back(term(o_.term, *s->lang));
        } else {
            for (const auto& e : corpus())
                if (e.lang == *s->lang) targets.push_back(parse(e.source, e.lang));
            if (targets.empty()) throw CLI::ValidationError("--term", "no corpus term fits suite " + s->name);
        }
        for (const auto& t : targets) {
            CheckReport r = s->run(&t, p);
            report(r);
            agg.absorb(r);
        }
        if (targets.size() > 1) report(agg);
        return exit_code(agg.verdict);
    }

    int fuzz_cmd() {
        const Suite* s = find_suite(o_.suite);
        if (!s) throw CLI::ValidationError("--suite", "unknown suite " + o_.suite);
        CheckReport agg = fuzz(o_.seed, o_.size, o_.count, *s, params(10, 8), [&](const CheckReport& r) { report(r); });
        report(agg);
        return exit_code(agg.verdict);
    }

    Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    std::vector<CorpusEntry> corpus_;
    bool loaded_ = false;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    Runner run(o, out, err);
    CLI::App app{"Distant bang calculus workbench"};
    app.name("dbang");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--fuel", o.fuel, "reduction steps");
    app.add_option("--cap", o.cap, "size cap for resource terms");
    app.add_option("--budget", o.budget, "candidate contexts for meaningful");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--mode", o.mode, "n or v")->check(CLI::IsMember({"n", "v", "cbn", "cbv"}));
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--corpus", o.corpus, "corpus file");
    app.add_option("--lang", o.lang, "input language")->check(CLI::IsMember({"dbang", "dbang_bot", "resource", "lambda"}));

    std::function<int()> action;
    auto sub = [&](const char* name, const char* help, std::function<int()> f, bool takes_term = true) {
        CLI::App* s = app.add_subcommand(name, help);
        if (takes_term) s->add_option("term", o.term, "term or corpus name")->required();
        s->callback([&action, f] { action = f; });
        return s;
    };

    sub("parse", "print the canonical form of a term", [&] {
        Term t = run.term(o.term, Lang::DBang);
        out << (o.json ? to_json_string(t) : print(t)) << "\n";
        return kExitOk;
    });
    auto* red = sub("reduce", "reduce leftmost-outermost", [&] { return run.reduce(false); });
    red->add_option("--class", o.cls, "full or surface");
    red->add_flag("--trace", o.trace, "print every step");
    auto* nf = sub("nf", "print the normal form", [&] { return run.reduce(true); });
    nf->add_option("--class", o.cls, "full or surface");
    sub("res-nf", "normal forms of a resource term", [&] {
        run.terms(res_normal_forms(run.term(o.term, Lang::Resource)));
        return kExitOk;
    });
    auto* tay = sub("taylor", "Taylor expansion up to the size cap", [&] {
        Term t = run.term(o.term, Lang::DBang);
        TaylorSet ts = o.nf ? taylor_nf(t, run.cap(8), NfWindow{o.window, 400}) : taylor_enum(t, run.cap(8));
        run.terms(ts.terms);
        return ts.complete_up_to_cap || !o.nf ? kExitOk : kExitInconclusive;
    });
    tay->add_flag("--nf", o.nf, "normal forms of the expansion");
    tay->add_option("--window", o.window, "reduct window for --nf (0: the term alone)");
    sub("bt", "Boehm tree truncation", [&] {
        out << print(bt_truncate(run.term(o.term, Lang::DBang), run.fuel(12))) << "\n";
        return kExitOk;
    });
    auto* apx = sub("approximants", "approximant generators", [&] {
        ApproximantSet s = approximant_set(run.term(o.term, Lang::DBang), run.fuel(12));
        run.terms(o.closure ? s.closure() : s.generators);
        return s.truncated ? kExitInconclusive : kExitOk;
    });
    apx->add_flag("--closure", o.closure, "list everything below the generators");
    sub("translate", "translate a source term", [&] {
        Term t = run.term(o.term, Lang::Lambda);
        std::vector<Mode> modes;
        if (auto m = run.mode())
            modes.push_back(*m);
        else
            modes = {Mode::CbN, Mode::CbV};
        for (Mode m : modes) out << (modes.size() > 1 ? mode_name(m) + ": " : "") << print(translate(t, m)) << "\n";
        return kExitOk;
    });
    sub("fragment", "fragment membership", [&] {
        Term t = run.term(o.term, Lang::DBang);
        bool all = true;
        for (Mode m : {Mode::CbN, Mode::CbV}) {
            if (run.mode() && *run.mode() != m) continue;
            bool in = fragment_check(t, m);
            all = all && in;
            out << mode_name(m) << ": " << (in ? "yes" : "no") << "\n";
        }
        return all ? kExitOk : kExitFailure;
    });
    sub("meaningful", "search a testing context", [&] { return run.meaningful(); });
    auto* chk = sub("check", "run a property suite", [&] { return run.check(); }, false);
    chk->add_option("suite", o.suite, "suite name")->required();
    chk->add_option("--term", o.term, "term or corpus name (default: corpus)");
    chk->add_option("--var", o.var, "substituted variable");
    chk->add_option("--with", o.with, "substituted term");
    auto* fz = sub("fuzz", "seeded sweep", [&] { return run.fuzz_cmd(); }, false);
    fz->add_option("--suite", o.suite, "suite name")->required();
    fz->add_option("--size", o.size, "size cap of sampled terms");
    fz->add_option("--count", o.count, "number of sampled terms");
    fz->add_option("--var", o.var, "substituted variable");
    fz->add_option("--with", o.with, "substituted term");
    app.add_subcommand("suites", "list suite names")->callback([&] {
        action = [&] {
            for (const auto& s : suites()) out << s.name << (s.lang ? " (" + lang_name(*s.lang) + ")" : "") << "\n";
            return kExitOk;
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error at " << e.position << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const JoinFailure& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace dbang::cli
