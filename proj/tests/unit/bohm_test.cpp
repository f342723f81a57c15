#include <doctest.h>

#include "dbang/bohm.hpp"
#include "dbang/cli.hpp"

using namespace dbang;

namespace {

Term B(const std::string& s) { return parse(s, Lang::DBangBot); }
Term corpus(const std::string& n) { return *cli::corpus_term(cli::builtin_corpus(), n); }

// distinct cuts: bot itself, or keep the root and cut each child independently
std::size_t cut_count(const Term& t) {
    if (t->kind == Kind::Bot) return 1;
    std::size_t keep = 1;
    for (const auto& k : t->kids) keep *= cut_count(k);
    return 1 + keep;
}

}  // namespace

TEST_SUITE("bohm") {
    TEST_CASE("approximant grammar") {
        for (const char* s : {"bot", "x bot", "\\x. bot", "!bot", "x !bot", "der x", "x[y/y]"}) CHECK(is_approximant(B(s)));
        // bot in function or argument positions that could still fire
        for (const char* s : {"bot x", "der bot", "x[bot/y]", "(\\x. x) bot", "der !x"}) CHECK_FALSE(is_approximant(B(s)));
    }

    TEST_CASE("bot truncations are all cuts") {
        for (const auto& t : enumerate_terms(6, Lang::DBangBot, {"x"})) {
            CAPTURE(print(t));
            auto cuts = bot_truncations(t);
            CHECK(cuts.size() == cut_count(t));
            for (const auto& c : cuts) CHECK(bot_leq(c, t));
        }
    }

    TEST_CASE("direct approximant is the greatest approximant below") {
        for (const auto& t : enumerate_terms(6, Lang::DBangBot, {"x"})) {
            CAPTURE(print(t));
            Term w = direct_approximant(t);
            CHECK(is_approximant(w));
            CHECK(bot_leq(w, t));
            for (const auto& c : bot_truncations(t))
                if (is_approximant(c)) CHECK(bot_leq(c, w));
        }
    }

    TEST_CASE("join") {
        CHECK(equal(*join(B("x bot"), B("x !bot")), B("x !bot")));
        CHECK(equal(*join(B("bot"), B("\\x. x")), B("\\x. x")));
        CHECK_FALSE(join(B("x"), B("y")).has_value());
        CHECK_FALSE(join(B("x !bot"), B("y bot")).has_value());
    }

    TEST_CASE("truncations of the examples") {
        for (std::size_t f : {0u, 1u, 5u, 20u}) CHECK(bt_truncate(corpus("Omega"), f)->kind == Kind::Bot);
        CHECK(print(bt_truncate(corpus("Yn"), 6)) == "x !(x !(x !bot))");
        CHECK(print(bt_truncate(corpus("Yv"), 6)) == "x (x (x bot))");
        CHECK(print(bt_truncate(corpus("running"), 10)) == "!N z");
        auto s = approximant_set(corpus("Yn"), 4);
        CHECK(s.closure().size() == 5);
    }

    TEST_CASE("Taylor expansion of truncations") {
        auto t = taylor_of_bt(corpus("Yn"), 12, 7);
        CHECK(t.terms.size() == 2);
        CHECK(taylor_of_bt(corpus("Omega"), 12, 10).terms.empty());
    }

    TEST_CASE("commutation and structural properties on small terms") {
        for (const auto& t : enumerate_terms(5, Lang::DBang, {"x"})) {
            CAPTURE(print(t));
            CHECK(check_commutation(t, 8, 7).verdict != Verdict::Fail);
            CHECK(check_bohm_properties(t, 6).verdict != Verdict::Fail);
        }
        for (const auto& e : cli::builtin_corpus())
            if (e.lang == Lang::DBang) {
                CAPTURE(e.name);
                CHECK(check_bohm_properties(parse(e.source, Lang::DBang), 8).verdict != Verdict::Fail);
            }
    }
}
