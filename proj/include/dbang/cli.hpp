#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dbang/frontends.hpp"
#include "dbang/report.hpp"
#include "dbang/syntax.hpp"

namespace dbang::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

struct CorpusEntry {
    std::string name;
    std::string source;
    Lang lang;
};

// `name = term` lines; a `# lang: <name>` line switches the language of the
// entries that follow.
std::vector<CorpusEntry> parse_corpus(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::string& path);
const std::vector<CorpusEntry>& builtin_corpus();

std::optional<Term> corpus_term(const std::vector<CorpusEntry>& corpus, const std::string& name);

struct SuiteParams {
    std::size_t fuel = 10;
    std::size_t cap = 8;
    std::optional<Mode> mode;
    std::string var = "x";
    std::string with = "y";  // substituted term for the substitution suite
};

struct Suite {
    std::string name;
    std::optional<Lang> lang;  // empty for suites that sweep on their own
    std::function<CheckReport(const Term*, const SuiteParams&)> run;
};

const std::vector<Suite>& suites();
const Suite* find_suite(const std::string& name);

// Seeded sweep: `count` sampled terms of size <= size_cap in the suite's language.
CheckReport fuzz(std::uint64_t seed, std::size_t size_cap, std::size_t count, const Suite& suite,
                 const SuiteParams& params, const std::function<void(const CheckReport&)>& on_item = {});

int exit_code(Verdict v);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dbang::cli
