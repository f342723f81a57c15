#include "dbang/syntax.hpp"

#include <cctype>

namespace dbang {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

enum class Tok { Backslash, Dot, LParen, RParen, LBrack, RBrack, Comma, Slash, Bang, Der, Bot, Ident, End };

struct Token {
    Tok type;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        switch (c) {
        case '\\': out.push_back({Tok::Backslash, "\\", start}); ++i; continue;
        case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
        case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
        case '[': out.push_back({Tok::LBrack, "[", start}); ++i; continue;
        case ']': out.push_back({Tok::RBrack, "]", start}); ++i; continue;
        case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
        case '/': out.push_back({Tok::Slash, "/", start}); ++i; continue;
        case '!': out.push_back({Tok::Bang, "!", start}); ++i; continue;
        default: break;
        }
        if (!ident_start(c)) throw ParseError(std::string("unexpected character '") + c + "'", start);
        while (i < s.size() && ident_char(s[i])) ++i;
        std::string word = s.substr(start, i - start);
        Tok t = word == "der" ? Tok::Der : word == "bot" ? Tok::Bot : Tok::Ident;
        out.push_back({t, word, start});
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

// Named syntax tree, resolved to indices afterwards.
struct PNode {
    Kind kind;
    std::string name;
    std::vector<PNode> kids;
};

class Parser {
public:
    Parser(std::vector<Token> toks, Lang lang) : toks_(std::move(toks)), lang_(lang) { match_brackets(); }

    PNode parse_all() {
        PNode t = term();
        if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
        return t;
    }

private:
    std::vector<Token> toks_;
    std::vector<std::size_t> partner_;
    std::size_t i_ = 0;
    Lang lang_;

    const Token& peek() const { return toks_[i_]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
    void expect(Tok t, const char* what) {
        if (peek().type != t) fail(std::string("expected ") + what);
        ++i_;
    }

    void match_brackets() {
        partner_.assign(toks_.size(), 0);
        std::vector<std::size_t> stack;
        for (std::size_t k = 0; k < toks_.size(); ++k) {
            Tok t = toks_[k].type;
            if (t == Tok::LBrack || t == Tok::LParen) stack.push_back(k);
            if (t == Tok::RBrack || t == Tok::RParen) {
                Tok want = t == Tok::RBrack ? Tok::LBrack : Tok::LParen;
                if (stack.empty() || toks_[stack.back()].type != want)
                    throw ParseError("unbalanced '" + toks_[k].text + "'", toks_[k].pos);
                partner_[stack.back()] = k;
                partner_[k] = stack.back();
                stack.pop_back();
            }
        }
        if (!stack.empty()) throw ParseError("unclosed '" + toks_[stack.back()].text + "'", toks_[stack.back()].pos);
    }

    // `[` opening an explicit substitution: the region ends with `/ ident ]`.
    bool esub_bracket(std::size_t k) const {
        std::size_t close = partner_[k];
        return close >= k + 3 && toks_[close - 1].type == Tok::Ident && toks_[close - 2].type == Tok::Slash;
    }

    bool starts_atom() const {
        switch (peek().type) {
        case Tok::Ident:
        case Tok::Bot:
        case Tok::Bang:
        case Tok::Der:
        case Tok::LParen:
            return true;
        case Tok::LBrack:
            return !esub_bracket(i_);
        default:
            return false;
        }
    }

    PNode term() {
        if (peek().type == Tok::Backslash) {
            ++i_;
            std::vector<std::string> binders;
            while (peek().type == Tok::Ident) binders.push_back(toks_[i_++].text);
            if (binders.empty()) fail("expected binder after '\\'");
            expect(Tok::Dot, "'.'");
            PNode body = term();
            for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = PNode{Kind::Lam, *it, {std::move(body)}};
            return body;
        }
        return application();
    }

    PNode application() {
        if (!starts_atom()) fail(peek().type == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
        PNode t = postfix();
        while (starts_atom()) t = PNode{Kind::App, {}, {std::move(t), postfix()}};
        return t;
    }

    PNode postfix() {
        PNode t = atom();
        while (peek().type == Tok::LBrack && esub_bracket(i_)) {
            ++i_;
            PNode arg = term();
            expect(Tok::Slash, "'/'");
            if (peek().type != Tok::Ident) fail("expected identifier");
            std::string x = toks_[i_++].text;
            expect(Tok::RBrack, "']'");
            t = PNode{Kind::ESub, x, {std::move(t), std::move(arg)}};
        }
        return t;
    }

    PNode atom() {
        const Token& tk = peek();
        switch (tk.type) {
        case Tok::Ident:
            ++i_;
            return PNode{Kind::Var, tk.text, {}};
        case Tok::Bot:
            if (lang_ != Lang::DBangBot) fail("'bot' is only allowed in dbang_bot mode");
            ++i_;
            return PNode{Kind::Bot, {}, {}};
        case Tok::Bang:
            if (lang_ == Lang::Lambda || lang_ == Lang::Resource) fail("'!' is not allowed in " + lang_name(lang_) + " mode");
            ++i_;
            return PNode{Kind::Bang, {}, {postfix()}};
        case Tok::Der:
            if (lang_ == Lang::Lambda) fail("'der' is not allowed in lambda mode");
            ++i_;
            return PNode{Kind::Der, {}, {postfix()}};
        case Tok::LParen: {
            ++i_;
            PNode t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        case Tok::LBrack: {
            if (esub_bracket(i_)) fail("explicit substitution without a body");
            if (lang_ != Lang::Resource) fail("bags are only allowed in resource mode");
            ++i_;
            PNode b{Kind::Bag, {}, {}};
            if (peek().type != Tok::RBrack) {
                b.kids.push_back(term());
                while (peek().type == Tok::Comma) {
                    ++i_;
                    b.kids.push_back(term());
                }
            }
            expect(Tok::RBrack, "']'");
            return b;
        }
        default:
            fail(tk.type == Tok::End ? "unexpected end of input" : "unexpected '" + tk.text + "'");
        }
    }
};

Term resolve(const PNode& p, std::vector<std::string>& env) {
    switch (p.kind) {
    case Kind::Var:
        for (std::size_t k = env.size(); k-- > 0;)
            if (env[k] == p.name) return bvar(static_cast<std::uint32_t>(env.size() - 1 - k));
        return var(p.name);
    case Kind::Bot:
        return bot();
    case Kind::Lam: {
        env.push_back(p.name);
        Term body = resolve(p.kids[0], env);
        env.pop_back();
        return lam(p.name, body);
    }
    case Kind::ESub: {
        Term arg = resolve(p.kids[1], env);
        env.push_back(p.name);
        Term body = resolve(p.kids[0], env);
        env.pop_back();
        return esub(p.name, body, arg);
    }
    case Kind::App:
        return app(resolve(p.kids[0], env), resolve(p.kids[1], env));
    case Kind::Bang:
        return bang(resolve(p.kids[0], env));
    case Kind::Der:
        return der(resolve(p.kids[0], env));
    case Kind::Bag: {
        std::vector<Term> es;
        for (const auto& k : p.kids) es.push_back(resolve(k, env));
        return bag(std::move(es));
    }
    }
    return bot();
}

}  // namespace

Term parse(const std::string& text, Lang lang) {
    Parser p(lex(text), lang);
    PNode tree = p.parse_all();
    std::vector<std::string> env;
    return resolve(tree, env);
}

}  // namespace dbang
