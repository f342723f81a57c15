#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbang/report.hpp"
#include "dbang/syntax.hpp"

namespace dbang {

enum class RedexKind { DistantBeta, SubstFire, DerFire };
enum class Ctx { Surface, Full };

std::string redex_kind_name(RedexKind k);

using Path = std::vector<std::uint8_t>;

struct RedexSite {
    Path path;
    RedexKind kind;
    Ctx context_class;
};

std::string path_string(const Path& p);

// outer_subs[i] = (argument, binder hint), innermost first (outermost last).
struct ListView {
    std::vector<std::pair<Term, std::string>> outer_subs;
    Term core;
};

ListView list_view(const Term& m);
Term wrap_subs(Term core, const std::vector<std::pair<Term, std::string>>& subs);

// Root redex recognition; works for plain terms (Bang) and resource terms (Bag).
std::optional<RedexKind> root_redex(const Term& m);

std::vector<RedexSite> find_redexes(const Term& m, Ctx cls);

// Sites whose path crosses a bang (full minus surface).
std::vector<RedexSite> internal_redexes(const Term& m);

struct InvalidSite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Term contract_root(const Term& m);  // throws InvalidSite if not a redex
Term step_at(const Term& m, const RedexSite& site);

const Term& subterm_at(const Term& m, const Path& p);
Term replace_at(const Term& m, const Path& p, std::size_t from, const std::function<Term(const Term&)>& f);

struct NormalizeOutcome {
    enum class Status { NormalForm, FuelExhausted };
    Term result;
    Status status;
    std::size_t steps_used = 0;
};

using TraceFn = std::function<void(std::size_t step, const RedexSite& site, const Term& after)>;

NormalizeOutcome normalize(const Term& m, Ctx cls, std::size_t fuel, const TraceFn& trace = {});

std::vector<Term> one_step(const Term& m, Ctx cls);
std::vector<Term> one_step_internal(const Term& m);

struct ReductSet {
    TermSet terms;
    bool truncated = false;     // stopped because `cap` distinct terms were reached
    bool fuel_limited = false;  // some term at the fuel horizon still had successors
    bool closed() const { return !truncated && !fuel_limited; }
};

inline constexpr std::size_t kDefaultReductCap = 2000;

// Breadth-first closure of `m` under `next`, at most `fuel` levels deep.
ReductSet reach_set(const Term& m, std::size_t fuel, std::size_t cap,
                    const std::function<std::vector<Term>(const Term&)>& next);

ReductSet reducts(const Term& m, Ctx cls, std::size_t fuel, std::size_t cap = kDefaultReductCap);
ReductSet internal_reducts(const Term& m, std::size_t fuel, std::size_t cap = kDefaultReductCap);

CheckReport check_factorization(const Term& m, std::size_t fuel);
CheckReport check_confluence(const Term& m, Ctx cls, std::size_t fuel);

}  // namespace dbang
