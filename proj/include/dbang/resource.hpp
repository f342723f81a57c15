#pragma once

#include <optional>

#include "dbang/report.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/syntax.hpp"

namespace dbang {

// nullopt: not a redex. An empty set is reduction to the empty sum.
std::optional<TermSet> res_root_step(const Term& m);

struct FanEntry {
    RedexSite site;
    TermSet results;
};
using StepFan = std::vector<FanEntry>;

StepFan res_one_steps(const Term& m, Ctx cls);

bool res_is_normal(const Term& m);

enum class SiteOrder { First, Last, All };

// Normal forms of all full reduction paths. Memoized per thread.
TermSet res_normal_forms(const Term& m, SiteOrder order = SiteOrder::First);
void clear_res_memo();

struct ParallelResult {
    TermSet terms;
    bool to_empty = false;  // some derivation produces the empty sum
};

ParallelResult parallel_reducts(const Term& m);

std::size_t size_measure(const Term& m);

CheckReport check_sn_measure(const Term& m);
CheckReport check_parallel_diamond(const Term& m);
CheckReport check_nf_order_independence(const Term& m);
CheckReport check_parallel_sandwich(const Term& m);
CheckReport check_resource_factorization(const Term& m);

}  // namespace dbang
