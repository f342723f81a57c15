#include <doctest.h>

#include "dbang/resource.hpp"

using namespace dbang;

namespace {

Term R(const std::string& s) { return parse(s, Lang::Resource); }

bool same(const TermSet& a, const TermSet& b) { return std::equal(a.begin(), a.end(), b.begin(), b.end(), TermEq{}); }

// Normal forms by plain breadth-first search over one-step sums.
TermSet bfs_normal_forms(const Term& m) {
    TermSet seen{m}, nfs;
    std::vector<Term> todo{m};
    while (!todo.empty()) {
        Term t = todo.back();
        todo.pop_back();
        auto fan = res_one_steps(t, Ctx::Full);
        if (fan.empty()) nfs.insert(t);
        for (const auto& e : fan)
            for (const auto& r : e.results)
                if (seen.insert(r).second) todo.push_back(r);
    }
    return nfs;
}

}  // namespace

TEST_SUITE("resource") {
    TEST_CASE("linear substitution sums over arrangements") {
        auto r = res_root_step(R("(y y)[[x, []]/y]"));
        REQUIRE(r.has_value());
        CHECK(r->size() == 2);
        CHECK(r->count(R("x []")));
        CHECK(r->count(R("[] x")));
    }

    TEST_CASE("arity mismatches annihilate") {
        CHECK(res_root_step(R("der [x, x]"))->empty());
        CHECK(res_root_step(R("der []"))->empty());
        CHECK(res_root_step(R("(y y)[[x]/y]"))->empty());
        CHECK(res_normal_forms(R("(\\x. x) []")).empty());
        CHECK(same(res_normal_forms(R("(\\x. y) []")), TermSet{var("y")}));
        CHECK(equal(*res_root_step(R("der [x][[]/z]"))->begin(), R("x[[]/z]")));
    }

    TEST_CASE("normal forms agree with breadth-first search") {
        for (const auto& t : enumerate_terms(7, Lang::Resource, {"x"})) {
            CAPTURE(print(t));
            TermSet a = res_normal_forms(t), b = bfs_normal_forms(t);
            CHECK(same(a, b));
        }
        clear_res_memo();
    }

    TEST_CASE("measure, diamond, order and sandwich on small terms") {
        for (const auto& t : enumerate_terms(6, Lang::Resource, {"x", "y"})) {
            CAPTURE(print(t));
            CHECK(check_sn_measure(t).verdict == Verdict::Pass);
            CHECK(check_parallel_diamond(t).verdict == Verdict::Pass);
            CHECK(check_nf_order_independence(t).verdict == Verdict::Pass);
            CHECK(check_parallel_sandwich(t).verdict == Verdict::Pass);
            CHECK(check_resource_factorization(t).verdict != Verdict::Fail);
        }
    }

    TEST_CASE("diamond needs sums and simultaneous congruence") {
        for (const char* s : {"(y y)[[x, []]/y]", "der [y][[x][[]/y]/y]", "(\\y. der [x]) der [x]"})
            CHECK(check_parallel_diamond(R(s)).verdict == Verdict::Pass);
        // one parallel step fires the body and the argument together
        CHECK(parallel_reducts(R("(\\y. der [x]) der [x]")).terms.count(R("x[x/y]")));
    }

    TEST_CASE("parallel steps are reflexive and may annihilate") {
        auto p = parallel_reducts(R("[] (der [x, x])"));
        CHECK(p.terms.count(R("[] (der [x, x])")));
        CHECK(p.to_empty);
        CHECK(same(parallel_reducts(R("x")).terms, TermSet{var("x")}));
    }
}
