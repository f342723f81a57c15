#include "dbang/syntax.hpp"

#include <nlohmann/json.hpp>

namespace dbang {

namespace {

// Names used inside `t` that a binder at this point must not shadow:
// free names and the printed names of enclosing binders referenced from t.
void used_names(const Term& t, std::uint32_t depth, const std::vector<std::string>& env, std::set<std::string>& out) {
    if (t->kind == Kind::Var) {
        if (t->free)
            out.insert(t->name);
        else if (t->index >= depth) {
            std::size_t k = t->index - depth;
            if (k < env.size()) out.insert(env[env.size() - 1 - k]);
        }
        return;
    }
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
        std::uint32_t d = ((t->kind == Kind::Lam || t->kind == Kind::ESub) && i == 0) ? 1 : 0;
        used_names(t->kids[i], depth + d, env, out);
    }
}

bool reserved(const std::string& s) { return s == "der" || s == "bot"; }

std::string pick_name(const std::string& hint, const Term& body, const std::vector<std::string>& env) {
    std::set<std::string> used;
    used_names(body, 1, env, used);
    std::string n = hint.empty() ? "x" : hint;
    if (reserved(n)) n += "_";
    while (used.count(n)) n += "'";
    return n;
}

std::string bound_name(std::uint32_t index, const std::vector<std::string>& env) {
    if (index >= env.size()) return "#" + std::to_string(index - env.size());
    return env[env.size() - 1 - index];
}

// level 0: any term; 1: head of an application; 2: argument or operand of
// ! and der; 3: body of an explicit substitution.
std::string pr(const Term& t, int level, std::vector<std::string>& env) {
    auto wrap = [](std::string s, bool paren) { return paren ? "(" + s + ")" : s; };
    switch (t->kind) {
    case Kind::Var:
        return t->free ? t->name : bound_name(t->index, env);
    case Kind::Bot:
        return "bot";
    case Kind::Lam: {
        std::string x = pick_name(t->name, t->kids[0], env);
        env.push_back(x);
        std::string s = "\\" + x + ". " + pr(t->kids[0], 0, env);
        env.pop_back();
        return wrap(s, level > 0);
    }
    case Kind::App:
        return wrap(pr(t->kids[0], 1, env) + " " + pr(t->kids[1], 2, env), level >= 2);
    case Kind::Bang:
        return wrap("!" + pr(t->kids[0], 2, env), level >= 3);
    case Kind::Der:
        return wrap("der " + pr(t->kids[0], 2, env), level >= 3);
    case Kind::ESub: {
        std::string arg = pr(t->kids[1], 0, env);
        std::string x = pick_name(t->name, t->kids[0], env);
        env.push_back(x);
        std::string body = pr(t->kids[0], 3, env);
        env.pop_back();
        return body + "[" + arg + "/" + x + "]";
    }
    case Kind::Bag: {
        std::string s = "[";
        for (std::size_t i = 0; i < t->kids.size(); ++i) {
            if (i) s += ", ";
            s += pr(t->kids[i], 0, env);
        }
        return s + "]";
    }
    }
    return "?";
}

nlohmann::json js(const Term& t, std::vector<std::string>& env) {
    using nlohmann::json;
    switch (t->kind) {
    case Kind::Var:
        return json{{"kind", "var"}, {"name", t->free ? t->name : bound_name(t->index, env)}};
    case Kind::Bot:
        return json{{"kind", "bot"}};
    case Kind::Lam: {
        std::string x = pick_name(t->name, t->kids[0], env);
        env.push_back(x);
        json body = js(t->kids[0], env);
        env.pop_back();
        return json{{"kind", "lam"}, {"binder", x}, {"body", body}};
    }
    case Kind::App:
        return json{{"kind", "app"}, {"fun", js(t->kids[0], env)}, {"arg", js(t->kids[1], env)}};
    case Kind::Bang:
        return json{{"kind", "bang"}, {"body", js(t->kids[0], env)}};
    case Kind::Der:
        return json{{"kind", "der"}, {"body", js(t->kids[0], env)}};
    case Kind::ESub: {
        json arg = js(t->kids[1], env);
        std::string x = pick_name(t->name, t->kids[0], env);
        env.push_back(x);
        json body = js(t->kids[0], env);
        env.pop_back();
        return json{{"kind", "esub"}, {"body", body}, {"arg", arg}, {"binder", x}};
    }
    case Kind::Bag: {
        json es = json::array();
        for (const auto& e : t->kids) es.push_back(js(e, env));
        return json{{"kind", "bag"}, {"elements", es}};
    }
    }
    return nullptr;
}

Term unjs(const nlohmann::json& j, std::vector<std::string>& env) {
    std::string k = j.at("kind").get<std::string>();
    if (k == "var") {
        std::string n = j.at("name").get<std::string>();
        for (std::size_t i = env.size(); i-- > 0;)
            if (env[i] == n) return bvar(static_cast<std::uint32_t>(env.size() - 1 - i));
        return var(n);
    }
    if (k == "bot") return bot();
    if (k == "app") return app(unjs(j.at("fun"), env), unjs(j.at("arg"), env));
    if (k == "bang") return bang(unjs(j.at("body"), env));
    if (k == "der") return der(unjs(j.at("body"), env));
    if (k == "lam" || k == "esub") {
        std::string x = j.at("binder").get<std::string>();
        Term arg = k == "esub" ? unjs(j.at("arg"), env) : nullptr;
        env.push_back(x);
        Term body = unjs(j.at("body"), env);
        env.pop_back();
        return k == "lam" ? lam(x, body) : esub(x, body, arg);
    }
    if (k == "bag") {
        std::vector<Term> es;
        for (const auto& e : j.at("elements")) es.push_back(unjs(e, env));
        return bag(std::move(es));
    }
    throw std::invalid_argument("unknown term kind in JSON: " + k);
}

}  // namespace

std::string print(const Term& t) {
    std::vector<std::string> env;
    return pr(t, 0, env);
}

std::string to_json_string(const Term& t) {
    std::vector<std::string> env;
    return js(t, env).dump();
}

Term from_json_string(const std::string& text, Lang lang) {
    std::vector<std::string> env;
    Term t = unjs(nlohmann::json::parse(text), env);
    if (!conforms(t, lang)) throw std::invalid_argument("term does not belong to language " + lang_name(lang));
    return t;
}

}  // namespace dbang
