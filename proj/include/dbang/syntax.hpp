#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbang {

enum class Kind : std::uint8_t { Var, App, Lam, Bang, Der, ESub, Bag, Bot };

// dbang: plain terms; dbang_bot: plain terms plus bot; resource: bags instead
// of bangs; lambda: the shared CbN/CbV syntax.
enum class Lang : std::uint8_t { DBang, DBangBot, Resource, Lambda };

struct Node;
using Term = std::shared_ptr<const Node>;

// Locally nameless: bound variables are de Bruijn indices, free variables are
// names. Binder names are only hints for printing and never take part in
// equality. Both Lam and ESub bind in kids[0].
struct Node {
    Kind kind = Kind::Var;
    bool free = false;
    std::uint32_t index = 0;
    std::string name;
    std::vector<Term> kids;  // App: fun,arg  Lam/Bang/Der: body  ESub: body,arg  Bag: elements
    std::size_t hash = 0;
    std::uint32_t size = 0;
    std::uint32_t loose = 0;  // 1 + largest dangling index, 0 when locally closed
};

// constructors (Bag sorts its elements)
Term var(const std::string& name);
Term bvar(std::uint32_t index);
Term app(Term fun, Term arg);
Term lam(const std::string& hint, Term body);
Term bang(Term body);
Term der(Term body);
Term esub(const std::string& hint, Term body, Term arg);
Term bag(std::vector<Term> elements);
Term bot();

// named binders: abstract the free variable `x` of `body`
Term lam_named(const std::string& x, const Term& body);
Term esub_named(const Term& body, const std::string& x, const Term& arg);

// Same kind with new children; re-sorts bags.
Term rebuild(const Term& t, std::vector<Term> kids);

int compare(const Term& a, const Term& b);
bool equal(const Term& a, const Term& b);
struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};
struct TermHash {
    std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
    bool operator()(const Term& a, const Term& b) const { return equal(a, b); }
};

using TermSet = std::set<Term, TermLess>;

std::size_t size(const Term& t);
bool alpha_eq(const Term& a, const Term& b);
Term canonicalize(const Term& t);

// index manipulation
Term shift(const Term& t, std::int64_t d, std::uint32_t cutoff = 0);
Term instantiate(const Term& body, const Term& arg);  // body{arg/0}
Term abstract(const Term& t, const std::string& x);   // free x becomes index 0

std::set<std::string> free_names(const Term& t);
bool is_closed_under(const Term& t, std::uint32_t depth);
bool contains_kind(const Term& t, Kind k);

Term substitute(const Term& m, const std::string& x, const Term& n);
std::size_t occurrences(const Term& m, const std::string& x);
TermSet multilinear_substitute(const Term& m, const std::string& x, const std::vector<Term>& elements);

// body has index 0 free; fill its occurrences, in traversal order, with every
// arrangement of `elements`. Empty when the counts differ.
std::size_t count_index0(const Term& body);
TermSet multilinear_instantiate(const Term& body, std::vector<Term> elements);

// a fixed filling (fillers[i] goes to the i-th occurrence)
Term fill_occurrences(const Term& body, const std::vector<Term>& fillers);

// Value: variable or abstraction.
bool is_value(const Term& t);
bool conforms(const Term& t, Lang lang);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos);
};

Term parse(const std::string& text, Lang lang);
std::string print(const Term& t);

// JSON wire format; returns a serialized JSON value.
std::string to_json_string(const Term& t);
Term from_json_string(const std::string& json, Lang lang);

std::string lang_name(Lang lang);
Lang lang_from_name(const std::string& s);

// Every term of node count <= size_cap (one per alpha class) with free
// variables drawn from `pool`, ordered by size then construction order.
std::vector<Term> enumerate_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool);
std::vector<Term> enumerate_terms_exact(std::size_t size, Lang lang, const std::vector<std::string>& pool);
std::size_t count_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool);

// Deterministic sample (seeded) of `count` distinct terms of size <= cap.
std::vector<Term> sample_terms(std::size_t size_cap, Lang lang, const std::vector<std::string>& pool,
                               std::size_t count, std::uint64_t seed);

}  // namespace dbang
