#pragma once

#include <optional>
#include <stdexcept>

#include "dbang/report.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/syntax.hpp"
#include "dbang/taylor.hpp"

namespace dbang {

bool is_approximant(const Term& a);

// a is m with zero or more subterms replaced by bot
bool bot_leq(const Term& a, const Term& m);

// Greatest approximant below n.
Term direct_approximant(const Term& n);

std::optional<Term> join(const Term& a, const Term& b);

// Every way of cutting subterms of n down to bot (n itself included).
std::vector<Term> bot_truncations(const Term& n);

struct ApproximantSet {
    TermSet generators;
    std::size_t fuel = 0;
    bool truncated = false;  // reduct search did not close

    // approximants below some generator
    TermSet closure() const;
};

inline constexpr std::size_t kBohmReductCap = 600;

ApproximantSet approximant_set(const Term& m, std::size_t fuel, std::size_t cap = kBohmReductCap);

struct JoinFailure : std::logic_error {
    using std::logic_error::logic_error;
};

// Join of every generator; throws JoinFailure if two generators clash.
Term bt_truncate(const Term& m, std::size_t fuel, std::size_t cap = kBohmReductCap);

TaylorSet taylor_of_bt(const Term& m, std::size_t fuel, std::size_t size_cap, std::size_t cap = kBohmReductCap);

CheckReport check_commutation(const Term& m, std::size_t fuel, std::size_t size_cap,
                              std::size_t cap = kBohmReductCap);

// persistence of approximants along reduction, ideal property, fuel
// monotonicity and the structural congruences of truncations
CheckReport check_bohm_properties(const Term& m, std::size_t fuel);

}  // namespace dbang
