#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dbang/bohm.hpp"
#include "dbang/cli.hpp"
#include "dbang/frontends.hpp"
#include "dbang/resource.hpp"
#include "dbang/rewrite.hpp"
#include "dbang/syntax.hpp"
#include "dbang/taylor.hpp"

namespace py = pybind11;
using namespace dbang;

namespace {

// Term is a shared pointer to a const node; Python sees it through this value type.
struct PyTerm {
    Term t;
};

std::vector<PyTerm> wrap_all(const std::vector<Term>& ts) {
    std::vector<PyTerm> out;
    for (const auto& t : ts) out.push_back({t});
    return out;
}

std::vector<std::string> printed(const TermSet& s) {
    std::vector<std::string> out;
    for (const auto& t : s) out.push_back(print(t));
    return out;
}

Ctx ctx_from(const std::string& s) {
    if (s == "full") return Ctx::Full;
    if (s == "surface") return Ctx::Surface;
    throw py::value_error("context class must be 'full' or 'surface'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "distant bang calculus workbench";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<JoinFailure>(m, "JoinFailure", PyExc_RuntimeError);

    py::enum_<Lang>(m, "Lang")
        .value("DBANG", Lang::DBang)
        .value("DBANG_BOT", Lang::DBangBot)
        .value("RESOURCE", Lang::Resource)
        .value("LAMBDA", Lang::Lambda);

    py::enum_<Mode>(m, "Mode").value("CBN", Mode::CbN).value("CBV", Mode::CbV);

    py::class_<PyTerm>(m, "Term")
        .def_property_readonly("size", [](const PyTerm& t) { return size(t.t); })
        .def("to_json", [](const PyTerm& t) { return to_json_string(t.t); })
        .def("__str__", [](const PyTerm& t) { return print(t.t); })
        .def("__repr__", [](const PyTerm& t) { return "Term('" + print(t.t) + "')"; })
        .def("__eq__", [](const PyTerm& a, const PyTerm& b) { return equal(a.t, b.t); })
        .def("__hash__", [](const PyTerm& t) { return t.t->hash; });

    m.def(
        "parse", [](const std::string& text, Lang lang) { return PyTerm{parse(text, lang)}; }, py::arg("text"),
        py::arg("lang") = Lang::DBang);
    m.def(
        "from_json", [](const std::string& json, Lang lang) { return PyTerm{from_json_string(json, lang)}; },
        py::arg("json"), py::arg("lang") = Lang::DBang);

    m.def(
        "normalize",
        [](const PyTerm& t, const std::string& cls, std::size_t fuel) {
            auto r = normalize(t.t, ctx_from(cls), fuel);
            return py::make_tuple(PyTerm{r.result}, r.status == NormalizeOutcome::Status::NormalForm, r.steps_used);
        },
        py::arg("term"), py::arg("cls") = "full", py::arg("fuel") = 100, "(result, reached_normal_form, steps)");

    m.def(
        "one_step", [](const PyTerm& t, const std::string& cls) { return wrap_all(one_step(t.t, ctx_from(cls))); },
        py::arg("term"), py::arg("cls") = "full");

    m.def(
        "res_normal_forms", [](const PyTerm& t) { return printed(res_normal_forms(t.t)); }, py::arg("term"));

    m.def(
        "taylor", [](const PyTerm& t, std::size_t cap) { return printed(taylor_enum(t.t, cap).terms); },
        py::arg("term"), py::arg("cap") = 8);

    m.def(
        "taylor_nf",
        [](const PyTerm& t, std::size_t cap, std::size_t window) {
            TaylorSet s = taylor_nf(t.t, cap, {window, NfWindow{}.reduct_cap});
            return py::make_tuple(printed(s.terms), s.complete_up_to_cap);
        },
        py::arg("term"), py::arg("cap") = 8, py::arg("window") = NfWindow{}.fuel, "(terms, complete)");

    m.def(
        "bt_truncate", [](const PyTerm& t, std::size_t fuel) { return PyTerm{bt_truncate(t.t, fuel)}; },
        py::arg("term"), py::arg("fuel") = 10);

    m.def(
        "approximants",
        [](const PyTerm& t, std::size_t fuel, bool closure) {
            ApproximantSet s = approximant_set(t.t, fuel);
            return printed(closure ? s.closure() : s.generators);
        },
        py::arg("term"), py::arg("fuel") = 10, py::arg("closure") = false);

    m.def(
        "translate", [](const PyTerm& t, Mode mode) { return PyTerm{translate(t.t, mode)}; }, py::arg("term"),
        py::arg("mode"));
    m.def(
        "in_fragment", [](const PyTerm& t, Mode mode) { return fragment_check(t.t, mode); }, py::arg("term"),
        py::arg("mode"));

    m.def(
        "meaningful",
        [](const PyTerm& t, std::optional<Mode> hint, std::size_t fuel, std::size_t budget) -> py::object {
            MeaningfulResult r = meaningful_witness(t.t, hint, fuel, budget);
            if (!r.witness) return py::none();
            py::dict d;
            d["context"] = r.context.to_string();
            d["route"] = r.route;
            d["steps"] = r.steps;
            d["result"] = print(r.result);
            d["plugged"] = print(r.context.plug(t.t));
            return d;
        },
        py::arg("term"), py::arg("mode") = py::none(), py::arg("fuel") = 200, py::arg("budget") = 64,
        "testing context as a dict, or None when no witness is found");

    m.def("suites", [] {
        std::vector<std::string> names;
        for (const auto& s : cli::suites()) names.push_back(s.name);
        return names;
    });

    m.def(
        "check",
        [](const std::string& suite, std::optional<PyTerm> term, std::size_t fuel, std::size_t cap) {
            const cli::Suite* s = cli::find_suite(suite);
            if (!s) throw py::key_error("unknown suite " + suite);
            cli::SuiteParams p;
            p.fuel = fuel;
            p.cap = cap;
            if (s->lang && !term) throw py::value_error("suite " + suite + " needs a term");
            return s->run(term ? &term->t : nullptr, p).to_json().dump();
        },
        py::arg("suite"), py::arg("term") = py::none(), py::arg("fuel") = 10, py::arg("cap") = 8,
        "report as a JSON string");

    m.def(
        "main",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::dispatch(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run the command line tool: (exit code, stdout, stderr)");
}
