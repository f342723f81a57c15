#include <doctest.h>

#include "dbang/cli.hpp"
#include "dbang/taylor.hpp"

using namespace dbang;

namespace {

Term P(const std::string& s) { return parse(s, Lang::DBang); }
Term R(const std::string& s) { return parse(s, Lang::Resource); }

// Test-local recognizer: same shape everywhere, a bag of approximants for each bang.
bool linearizes(const Term& r, const Term& m) {
    if (m->kind == Kind::Bang) {
        if (r->kind != Kind::Bag) return false;
        for (const auto& e : r->kids)
            if (!linearizes(e, m->kids[0])) return false;
        return true;
    }
    if (r->kind != m->kind || r->kids.size() != m->kids.size()) return false;
    if (m->kind == Kind::Var) return print(r) == print(m);
    for (std::size_t i = 0; i < m->kids.size(); ++i)
        if (!linearizes(r->kids[i], m->kids[i])) return false;
    return true;
}

Term corpus(const std::string& n) { return *cli::corpus_term(cli::builtin_corpus(), n); }

}  // namespace

TEST_SUITE("taylor") {
    TEST_CASE("enumerated expansion equals brute-force filtering") {
        auto pool = enumerate_terms(7, Lang::Resource, {"x"});
        for (const auto& m : enumerate_terms(4, Lang::DBang, {"x"})) {
            CAPTURE(print(m));
            TaylorSet ts = taylor_enum(m, 7);
            std::size_t brute = 0;
            for (const auto& r : pool)
                if (linearizes(r, m)) {
                    ++brute;
                    CHECK(ts.terms.count(r));
                    CHECK(approximates(r, m));
                }
            CHECK(ts.terms.size() == brute);
        }
    }

    TEST_CASE("approximation basics") {
        CHECK(approximates(R("x [x, x]"), P("x !x")));
        CHECK(approximates(R("x []"), P("x !y")));
        CHECK_FALSE(approximates(R("x x"), P("x !x")));
        CHECK_FALSE(approximates(R("y"), P("x")));
        CHECK(taylor_exact(P("!x"), 3).size() == 1);  // [x, x]
    }

    TEST_CASE("Taylor normal forms of the looping examples") {
        CHECK(taylor_nf(corpus("Omega"), 12).terms.empty());
        CHECK(taylor_nf(corpus("Yv"), 12).terms.empty());
        auto yn = taylor_nf(corpus("Yn"), 7);
        CHECK(yn.terms.size() == 2);
        CHECK(yn.terms.count(R("x []")));
        CHECK(yn.terms.count(R("x [x []]")));
        // a normal term is its own expansion
        auto id = taylor_nf(P("\\x. x"), 6);
        CHECK(id.complete_up_to_cap);
        CHECK(id.terms.size() == 1);
    }

    TEST_CASE("windowed and direct normal forms agree on terminating terms") {
        Term run = corpus("running");
        auto direct = taylor_nf(run, 9, {0, 0});
        auto windowed = taylor_nf(run, 9);
        CHECK(windowed.complete_up_to_cap);
        for (const auto& t : direct.terms) CHECK(windowed.terms.count(t));
    }

    TEST_CASE("substitution lemma, both directions") {
        auto small = enumerate_terms(3, Lang::DBang, {"x", "y"});
        for (const auto& m : small)
            for (const auto& n : small) {
                CAPTURE(print(m));
                CAPTURE(print(n));
                CHECK(check_substitution_lemma(m, "x", n, 6).verdict == Verdict::Pass);
            }
    }

    TEST_CASE("simulation and invariance on the corpus and small terms") {
        for (const auto& e : cli::builtin_corpus()) {
            if (e.lang != Lang::DBang) continue;
            Term t = parse(e.source, Lang::DBang);
            CAPTURE(e.name);
            CHECK(check_simulation_surface(t, 2, 7).verdict != Verdict::Fail);
            CHECK(check_simulation_full(t, 2, 7).verdict != Verdict::Fail);
            CHECK(check_nf_invariance(t, 4, 7).verdict != Verdict::Fail);
            CHECK(check_context_decomposition(t, 7).verdict == Verdict::Pass);
        }
        for (const auto& t : enumerate_terms(5, Lang::DBang, {"x"})) {
            CAPTURE(print(t));
            CHECK(check_simulation_full(t, 0, 7).verdict == Verdict::Pass);
            CHECK(check_nf_invariance(t, 4, 6).verdict != Verdict::Fail);
        }
    }
}
