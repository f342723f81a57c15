#include <doctest.h>

#include <map>

#include "dbang/syntax.hpp"

using namespace dbang;

namespace {

Term P(const std::string& s, Lang l = Lang::DBang) { return parse(s, l); }

// Independent count of terms of exactly `n` nodes under `depth` binders:
// variables are either bound (depth choices) or from a pool of `free` names.
std::size_t oracle_count(std::size_t n, std::size_t depth, std::size_t free, Lang lang,
                         std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
    if (n == 0) return 0;
    auto key = std::make_pair(n, depth);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t c = n == 1 ? depth + free : 0;
    if (n >= 2) {
        c += oracle_count(n - 1, depth + 1, free, lang, memo);  // lambda
        if (lang == Lang::DBang) c += 2 * oracle_count(n - 1, depth, free, lang, memo);  // bang, der
        for (std::size_t l = 1; l + 1 < n; ++l) {
            c += oracle_count(l, depth, free, lang, memo) * oracle_count(n - 1 - l, depth, free, lang, memo);
            c += oracle_count(l, depth + 1, free, lang, memo) * oracle_count(n - 1 - l, depth, free, lang, memo);
        }
    }
    memo[key] = c;
    return c;
}

}  // namespace

TEST_SUITE("syntax") {
    TEST_CASE("parse and print round trip") {
        for (const char* s : {"x", "\\x. x", "(\\x. x !x) !(\\x. x !x)", "der (\\x. x)", "(x y)[!z/y]", "!!N z",
                              "\\x. \\y. x"}) {
            Term t = P(s);
            CHECK(print(t) == s);
            CHECK(equal(P(print(t)), t));
        }
        CHECK(print(P("x [[], y]", Lang::Resource)) == "x [y, []]");
        CHECK(print(P("bot x", Lang::DBangBot)) == "bot x");
    }

    TEST_CASE("bags are multisets") {
        Term a = var("a"), b = P("b c", Lang::Resource);
        CHECK(equal(bag({a, b}), bag({b, a})));
        CHECK_FALSE(equal(bag({a, a}), bag({a})));
        CHECK(equal(P("[x, y, x]", Lang::Resource), P("[y, x, x]", Lang::Resource)));
    }

    TEST_CASE("binder names do not matter") {
        CHECK(equal(P("\\x. x"), P("\\y. y")));
        CHECK(equal(P("x[!z/x]"), P("w[!z/w]")));
        CHECK_FALSE(equal(P("\\x. y"), P("\\y. y")));
    }

    TEST_CASE("substitution avoids capture") {
        Term m = P("\\y. x y");
        Term r = substitute(m, "x", var("y"));
        // the free y must stay free under the binder
        CHECK(free_names(r) == std::set<std::string>{"y"});
        CHECK(equal(r, P("\\z. y z")));
        CHECK(equal(substitute(P("x[x/y]"), "x", P("!w")), P("(!w)[!w/y]")));
        CHECK(occurrences(P("x (\\x. x) x"), "x") == 2);
    }

    TEST_CASE("multilinear substitution fills each occurrence once") {
        Term m = P("x x", Lang::Resource);
        TermSet two = multilinear_substitute(m, "x", {var("a"), var("b")});
        CHECK(two.size() == 2);
        CHECK(two.count(P("a b", Lang::Resource)));
        CHECK(two.count(P("b a", Lang::Resource)));
        CHECK(multilinear_substitute(m, "x", {var("a")}).empty());
        CHECK(multilinear_substitute(m, "x", {var("a"), var("a")}).size() == 1);
    }

    TEST_CASE("language conformance") {
        CHECK(conforms(P("!x"), Lang::DBang));
        CHECK_FALSE(conforms(P("[x]", Lang::Resource), Lang::DBang));
        CHECK_FALSE(conforms(P("!x"), Lang::Lambda));
        CHECK_THROWS_AS(parse("bot", Lang::DBang), ParseError);
        CHECK_THROWS_AS(parse("(x", Lang::DBang), ParseError);
        CHECK_THROWS_AS(parse("!x", Lang::Lambda), ParseError);
    }

    TEST_CASE("json wire format round trips") {
        for (const auto& t : enumerate_terms(5, Lang::DBang, {"x"})) CHECK(equal(from_json_string(to_json_string(t), Lang::DBang), t));
        for (const auto& t : enumerate_terms(5, Lang::Resource, {"x"}))
            CHECK(equal(from_json_string(to_json_string(t), Lang::Resource), t));
    }

    TEST_CASE("enumeration matches an independent count") {
        for (Lang lang : {Lang::Lambda, Lang::DBang}) {
            std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
            for (std::size_t n = 1; n <= 6; ++n) {
                CAPTURE(n);
                CHECK(enumerate_terms_exact(n, lang, {"x", "y"}).size() == oracle_count(n, 0, 2, lang, memo));
            }
        }
    }

    TEST_CASE("enumeration is duplicate free and round trips through the printer") {
        auto ts = enumerate_terms(6, Lang::Resource, {"x"});
        TermSet seen(ts.begin(), ts.end());
        CHECK(seen.size() == ts.size());
        for (const auto& t : ts) CHECK(equal(parse(print(t), Lang::Resource), t));
        CHECK(count_terms(6, Lang::Resource, {"x"}) == ts.size());
    }

    TEST_CASE("sampling is deterministic and stays in bounds") {
        auto a = sample_terms(6, Lang::DBang, {"x", "y"}, 50, 7);
        auto b = sample_terms(6, Lang::DBang, {"x", "y"}, 50, 7);
        REQUIRE(a.size() == 50);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(equal(a[i], b[i]));
            CHECK(size(a[i]) <= 6);
        }
        TermSet distinct(a.begin(), a.end());
        CHECK(distinct.size() == a.size());
    }
}
