#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dbang/cli.hpp"

using namespace dbang;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("exit codes") {
        CHECK(run({"parse", "x !y"}).code == cli::kExitOk);
        CHECK(run({"parse", "(x"}).code == cli::kExitUsage);
        CHECK(run({}).code == cli::kExitUsage);
        CHECK(run({"check", "no-such-suite"}).code == cli::kExitUsage);
        CHECK(run({"--fuel", "3", "reduce", "Omega"}).code == cli::kExitInconclusive);
        CHECK(run({"reduce", "running"}).code == cli::kExitOk);
        CHECK(run({"check", "commutation", "--term", "Yn", "--fuel", "30", "--cap", "10"}).code == cli::kExitOk);
    }

    TEST_CASE("reduce output") {
        Run r = run({"reduce", "running", "--trace"});
        CHECK(r.out.find("step 4: beta@0.0") != std::string::npos);
        CHECK(r.out.find("result: !N z") != std::string::npos);
        Run j = run({"--json", "reduce", "running"});
        auto doc = nlohmann::json::parse(j.out);
        CHECK(doc["result"] == "!N z");
        CHECK(doc["steps"] == 5);
        CHECK(doc["status"] == "normal-form");
    }

    TEST_CASE("unicode lambdas are accepted") {
        Run r = run({"parse", "λx. x"});
        CHECK(r.code == cli::kExitOk);
        CHECK(r.out == "\\x. x\n");
    }

    TEST_CASE("fuzzing is deterministic and leaves timings out of json") {
        std::vector<std::string> args{"--json", "--seed", "11", "fuzz", "--suite", "simulation", "--size", "5", "--count", "20"};
        Run a = run(args), b = run(args);
        CHECK(a.code == cli::kExitOk);
        CHECK(a.out == b.out);
        CHECK(a.out.find("time") == std::string::npos);
        Run c = run({"--json", "--seed", "12", "fuzz", "--suite", "simulation", "--size", "5", "--count", "20"});
        CHECK(c.out != a.out);
    }

    TEST_CASE("every suite runs on the corpus") {
        for (const auto& s : cli::suites()) {
            CAPTURE(s.name);
            cli::SuiteParams p;
            p.fuel = 6;
            p.cap = 6;
            if (!s.lang) {
                p.cap = 4;
                CHECK(s.run(nullptr, p).verdict != Verdict::Fail);
                continue;
            }
            for (const auto& e : cli::builtin_corpus())
                if (e.lang == *s.lang) {
                    Term t = parse(e.source, e.lang);
                    CHECK(s.run(&t, p).verdict != Verdict::Fail);
                }
        }
    }

    TEST_CASE("shipped corpus file matches the built-in corpus") {
        auto file = cli::load_corpus(std::string(DBANG_SOURCE_DIR) + "/data/corpus.txt");
        const auto& builtin = cli::builtin_corpus();
        REQUIRE(file.size() == builtin.size());
        for (std::size_t i = 0; i < file.size(); ++i) {
            CHECK(file[i].name == builtin[i].name);
            CHECK(file[i].source == builtin[i].source);
            CHECK(file[i].lang == builtin[i].lang);
        }
        for (const char* n : {"Delta", "Omega", "Yn", "Yv", "circ0", "circ3", "I", "running", "xbx_xbx", "der_id"})
            CHECK(cli::corpus_term(builtin, n).has_value());
    }

    TEST_CASE("corpus parser") {
        auto c = cli::parse_corpus("# lang: lambda\nid = \\x. x\n\n# lang: dbang\nb = !y\n");
        REQUIRE(c.size() == 2);
        CHECK(c[0].lang == Lang::Lambda);
        CHECK(c[1].lang == Lang::DBang);
        CHECK_FALSE(cli::corpus_term(c, "nope").has_value());
    }
}
