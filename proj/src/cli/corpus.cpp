#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dbang/cli.hpp"

namespace dbang::cli {

namespace {

// kept in step with data/corpus.txt (a unit test compares them)
const char* const kBuiltin = R"(# lang: dbang
Delta = \x. x !x
Omega = (\x. x !x) !(\x. x !x)
Yn = (\y. x !(y !y)) !(\y. x !(y !y))
Yv = (\y. x (y !y)) !(\y. x (y !y))
circ0 = \x0. x0
circ1 = \x1. !(\x0. x0)
circ2 = \x2. !(\x1. !(\x0. x0))
circ3 = \x3. !(\x2. !(\x1. !(\x0. x0)))
I = \x. x
running = (\x. x y)[!z/y] !!((\w. w) !N)
xbx_xbx = (x !x) (x !x)
der_id = der (\x. x)

# lang: lambda
I_src = \x. x
IN_src = (\x. x) y
Delta_src = \x. x x
Omega_src = (\x. x x) (\x. x x)
K_src = \x. \y. x
erase_src = y[(x x)/z]
)";

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
    std::vector<CorpusEntry> out;
    Lang lang = Lang::DBang;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            auto pos = t.find("lang:");
            if (pos != std::string::npos) lang = lang_from_name(trim(t.substr(pos + 5)));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("corpus line " + std::to_string(lineno) + ": missing '='");
        CorpusEntry e{trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lang};
        parse(e.source, lang);  // reject bad entries early
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open corpus file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_corpus(ss.str());
}

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> c = parse_corpus(kBuiltin);
    return c;
}

std::optional<Term> corpus_term(const std::vector<CorpusEntry>& corpus, const std::string& name) {
    for (const auto& e : corpus)
        if (e.name == name) return parse(e.source, e.lang);
    return std::nullopt;
}

}  // namespace dbang::cli
