#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbang/report.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/syntax.hpp"
#include "dbang/taylor.hpp"

namespace dbang {

enum class Mode { CbN, CbV };

std::string mode_name(Mode m);  // "n" / "v"
Mode mode_from_name(const std::string& s);

// Source calculi share one syntax (Lang::Lambda); reduction is closed under
// every context, which is what their Boehm trees read.
std::optional<Term> lam_root_step(const Term& m, Mode mode);
std::vector<Path> lam_redexes(const Term& m, Mode mode);
std::optional<Term> lam_step(const Term& m, Mode mode);  // leftmost-outermost
NormalizeOutcome lam_normalize(const Term& m, Mode mode, std::size_t fuel);
std::vector<Term> lam_one_step(const Term& m, Mode mode);
ReductSet lam_reducts(const Term& m, Mode mode, std::size_t fuel, std::size_t cap = kDefaultReductCap);

Term translate(const Term& m, Mode mode);

bool fragment_check(const Term& m, Mode mode);

enum class Level { Term, Resource };

struct NfShape {
    enum class Kind { Cbn, CbvB, CbvBBang, NotShaped } kind = Kind::NotShaped;
    std::vector<std::string> lams;  // binder hints, outermost first
    std::string head;               // free name, or the binder hint when bound
    int head_binder = -1;           // position in `lams` when bound
    std::vector<Term> args;         // bodies of the banged (or bagged) arguments
};

std::string shape_name(NfShape::Kind k);

// Throws std::invalid_argument when the input is not normal: surface-normal
// for the CbN shape of plain terms, fully normal otherwise.
NfShape classify_nf(const Term& m, Mode mode, Level level);

Term circ(std::size_t k);

struct Frame {
    enum class Kind { Arg, Let } kind;
    Term arg;
    std::string binder;  // Let only
};

// T ::= [] | T N | (\x. T) N, frames listed innermost first
struct TestingContext {
    std::vector<Frame> frames;
    Term plug(const Term& m) const;
    std::string to_string() const;
};

struct MeaningfulResult {
    bool witness = false;
    TestingContext context;
    std::string route;  // "bang", "cbn" or "cbv"
    std::size_t steps = 0;
    Term result;
    std::string reason;
};

MeaningfulResult meaningful_witness(const Term& m, std::optional<Mode> hint, std::size_t fuel, std::size_t budget);

bool lam_approximates(const Term& r, const Term& m, Mode mode);
TaylorSet lam_taylor_enum(const Term& m, Mode mode, std::size_t size_cap);

bool lam_is_approximant(const Term& a, Mode mode);
Term lam_direct_approximant(const Term& n, Mode mode);
Term lam_bt_truncate(const Term& m, Mode mode, std::size_t fuel, std::size_t cap = 600);

CheckReport check_translation_simulation(const Term& m, Mode mode, std::size_t fuel);
CheckReport check_embedding(const Term& m, Mode mode, std::size_t fuel);
CheckReport check_translation_taylor(const Term& m, Mode mode, std::size_t size_cap);
CheckReport check_translation_bohm(const Term& m, Mode mode, std::size_t fuel, std::size_t factor = 3);
CheckReport check_translation_commutation(const Term& m, Mode mode, std::size_t fuel, std::size_t size_cap);

// translations of every source term up to size_cap land in the fragment
CheckReport check_fragment_membership(Mode mode, std::size_t size_cap);
// fragment members up to size_cap stay in the fragment along full reduction
CheckReport check_fragment_closure(Mode mode, std::size_t size_cap, std::size_t fuel);

}  // namespace dbang
