#pragma once

#include "dbang/report.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/syntax.hpp"

namespace dbang {

struct TaylorSet {
    TermSet terms;
    std::size_t size_cap = 0;
    bool complete_up_to_cap = true;
};

bool approximates(const Term& m, const Term& M);

TaylorSet taylor_enum(const Term& M, std::size_t size_cap);

// Approximants of M of exactly size s (helper for bounded searches).
std::vector<Term> taylor_exact(const Term& M, std::size_t s);

// Reduct window used to gather sources for Taylor normal forms. With
// fuel = 0 only the approximants of M itself are normalized.
struct NfWindow {
    std::size_t fuel = 12;
    std::size_t reduct_cap = 400;
};

TaylorSet taylor_nf(const Term& M, std::size_t size_cap, NfWindow window = {});

CheckReport check_simulation_surface(const Term& M, std::size_t fuel, std::size_t size_cap);
CheckReport check_simulation_full(const Term& M, std::size_t fuel, std::size_t size_cap);
CheckReport check_nf_invariance(const Term& M, std::size_t fuel, std::size_t size_cap);

// Both directions of the substitution lemma for one (M, N) pair, x free.
CheckReport check_substitution_lemma(const Term& M, const std::string& x, const Term& N, std::size_t size_cap);

CheckReport check_context_decomposition(const Term& M, std::size_t size_cap);

}  // namespace dbang
