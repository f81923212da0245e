#include <memalg/cardinal.hpp>
#include <memalg/certificate.hpp>
#include <memalg/error.hpp>
#include <memalg/isomorphism.hpp>
#include <memalg/machine_io.hpp>
#include <memalg/models.hpp>
#include <memalg/reduction_laws.hpp>
#include <memalg/reductions.hpp>
#include <memalg/universality.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace memalg;

namespace {

std::vector<std::vector<StateIndex>> tables(const Machine & m)
{
    std::vector<std::vector<StateIndex>> out;
    for (auto & f : m.functions())
        out.emplace_back(f.table().begin(), f.table().end());
    return out;
}

py::list derivation_list(const Derivation & d)
{
    py::list out;
    for (auto & s : d)
        out.append(py::make_tuple(s.rule, s.rewrite));
    return out;
}

py::object morphism_dict(const std::optional<Morphism> & m)
{
    if (! m)
        return py::none();
    py::dict d;
    d["g"] = m->g;
    d["h"] = m->h;
    return std::move(d);
}

MachineTemplate make_template(const std::string & kind, std::uint64_t k, std::uint64_t m, std::uint64_t n)
{
    if (kind == "finite-turing")
        return MachineTemplate::finite_turing(k, m, n);
    if (kind == "infinite-tape-turing")
        return MachineTemplate::infinite_tape_turing(k, m);
    if (kind == "umm")
        return MachineTemplate::umm(n);
    if (kind == "lsm")
        return MachineTemplate::lsm(n == 0 ? 1 : n);
    if (kind == "quantum")
        return MachineTemplate::quantum(m, n);
    throw Error(ErrorKind::InvalidArgument, "unknown template '" + kind + "'");
}

} // namespace

PYBIND11_MODULE(_memalg, mod)
{
    mod.doc() = "Transition-system algebra: cardinalities, reductions, isomorphism, completeness and machine compilers";

    static py::exception<Error> error(mod, "MemalgError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const Error & e) {
            error(e.what());
        }
    });

    py::class_<Cardinal>(mod, "Cardinal")
        .def_static("finite", &Cardinal::finite)
        .def_static("beth", &Cardinal::beth)
        .def_property_readonly("is_finite", &Cardinal::is_finite)
        .def_property_readonly("value", &Cardinal::value)
        .def_property_readonly("beth_index", &Cardinal::beth_index)
        .def("__eq__", [](const Cardinal & a, const Cardinal & b) { return a == b; })
        .def("__lt__", [](const Cardinal & a, const Cardinal & b) { return a < b; })
        .def("__le__", [](const Cardinal & a, const Cardinal & b) { return a <= b; })
        .def("__hash__", [](const Cardinal & c) { return py::hash(py::make_tuple(c.is_finite(), c.is_finite() ? c.value() : c.beth_index())); })
        .def("__add__", [](const Cardinal & a, const Cardinal & b) { return card_add(a, b); })
        .def("__mul__", [](const Cardinal & a, const Cardinal & b) { return card_mul(a, b); })
        .def("__pow__", [](const Cardinal & a, const Cardinal & b) { return card_pow(a, b); })
        .def("__str__", &Cardinal::to_string)
        .def("__repr__", &Cardinal::to_string);

    mod.def("evaluate", [](const std::string & text) {
        Derivation d;
        auto c = evaluate_cardinal_expression(text, &d);
        return py::make_tuple(c, derivation_list(d));
    }, py::arg("expression"), "Evaluate a cardinal expression; returns (value, [(rule, rewrite), ...]).");

    mod.def("state_cardinality", [](const std::string & kind, std::uint64_t k, std::uint64_t m, std::uint64_t n) {
        Derivation d;
        auto c = state_cardinality(make_template(kind, k, m, n), &d);
        return py::make_tuple(c, derivation_list(d));
    }, py::arg("template"), py::arg("k") = 0, py::arg("m") = 0, py::arg("n") = 0);

    mod.def("transition_space_cardinality", [](const Cardinal & c) { return transition_space_cardinality(c); });

    py::class_<Machine>(mod, "Machine")
        .def_property_readonly("name", &Machine::name)
        .def_property_readonly("states", [](const Machine & m) { return m.states().labels(); })
        .def_property_readonly("function_names", &Machine::function_names)
        .def_property_readonly("tables", &tables)
        .def_property_readonly("is_full", &Machine::is_full)
        .def("__eq__", [](const Machine & a, const Machine & b) { return a == b; })
        .def("__str__", &format_machine);

    mod.def("make_machine", [](std::vector<std::string> states, std::vector<std::vector<StateIndex>> fns, std::vector<std::string> names, std::string name) {
        StateSet s(std::move(states));
        std::vector<TransitionFunction> f;
        for (auto & t : fns)
            f.emplace_back(s, std::move(t));
        return make_machine(s, std::move(f), std::move(names), {}, std::move(name));
    }, py::arg("states"), py::arg("tables"), py::arg("names") = std::vector<std::string>{}, py::arg("name") = "");
    mod.def("parse_machine", &parse_machine);
    mod.def("format_machine", &format_machine);
    mod.def("full_machine", [](std::size_t n, std::uint64_t cap) { return full_machine(StateSet::numbered(n), cap); },
        py::arg("n"), py::arg("cap") = default_enumeration_cap);
    mod.def("full_bijection_machine", [](std::size_t n, std::uint64_t cap) { return full_bijection_machine(StateSet::numbered(n), cap); },
        py::arg("n"), py::arg("cap") = default_enumeration_cap);

    mod.def("functional_reduce", [](const Machine & m, std::vector<std::string> names) { return functional_reduce(m, names); });
    mod.def("state_reduce", [](const Machine & m, std::vector<std::string> labels) { return state_reduce(m, labels); });
    mod.def("is_sub_machine", [](const Machine & a, const Machine & b) { return is_sub_machine(a, b).has_value(); });

    mod.def("find_isomorphism", [](const Machine & a, const Machine & b, std::uint64_t node_cap) {
        return morphism_dict(find_isomorphism(a, b, {node_cap, default_subset_cap}));
    }, py::arg("a"), py::arg("b"), py::arg("node_cap") = default_search_node_cap,
        "Returns {'g': [...], 'h': [...]} with the least g, or None.");
    mod.def("verify_morphism", [](const Machine & a, const Machine & b, std::vector<StateIndex> g, std::vector<std::size_t> h) {
        return verify_morphism(a, b, Morphism{std::move(g), std::move(h)});
    });
    mod.def("is_complete", [](const Machine & a, const Machine & b, const std::string & path) -> py::object {
        auto p = path == "construct" ? CompletenessPath::Construct : path == "search" ? CompletenessPath::Search : CompletenessPath::Automatic;
        auto w = is_complete(a, b, {}, p);
        if (! w)
            return py::none();
        py::dict d;
        d["sub_machine"] = w->sub_machine;
        d["kept_states"] = w->reductions.state.kept;
        d["g"] = w->morphism.g;
        d["h"] = w->morphism.h;
        d["verified"] = verify_completeness(a, b, *w);
        return std::move(d);
    }, py::arg("a"), py::arg("b"), py::arg("path") = "auto");

    mod.def("simulate_tm", [](const std::string & text, std::size_t max_steps) {
        auto t = parse_turing(text);
        auto trace = simulate_tm(t, max_steps);
        py::list configs;
        for (auto & c : trace.configs)
            configs.append(py::make_tuple(t.registers[c.reg], c.tape, c.head));
        return py::make_tuple(std::string(to_string(trace.status)), configs);
    }, py::arg("tm"), py::arg("max_steps") = 1000);
    mod.def("compile_tm", [](const std::string & text, std::uint64_t cap) { return compile_tm(parse_turing(text), cap).machine; },
        py::arg("tm"), py::arg("cap") = default_enumeration_cap);
    mod.def("compile_mem", [](const std::string & text, std::uint64_t cap) { return compile_mem(parse_mem(text), cap).machine; },
        py::arg("mem"), py::arg("cap") = default_enumeration_cap);
    mod.def("tm_to_mem", [](const std::string & text) { return format_mem(tm_to_mem(parse_turing(text))); });
    mod.def("verify_lockstep", [](const std::string & tm, std::size_t steps, std::optional<std::string> mem) {
        auto t = parse_turing(tm);
        auto report = verify_lockstep(t, mem ? parse_mem(*mem) : tm_to_mem(t), steps);
        return py::make_tuple(! report.divergence.has_value(), report.summary());
    }, py::arg("tm"), py::arg("steps"), py::arg("mem") = py::none(), "Returns (agrees, summary).");

    mod.def("universality_report", [] {
        auto r = universality_report();
        py::dict verdicts;
        for (auto & v : r.verdicts)
            verdicts[py::str(v.family)] = v.complete() ? "UMM-complete" : "not established";
        return py::make_tuple(verdicts, format_universality(r));
    });
    mod.def("check_reduction_laws", [](std::uint64_t seed, std::size_t iters) {
        auto r = check_reduction_laws(seed, iters);
        py::dict violations;
        for (auto & l : r.laws)
            violations[py::str(l.law)] = l.violations;
        return py::make_tuple(r.clean(), violations);
    }, py::arg("seed"), py::arg("iters"));

    mod.def("verify_certificate", [](const std::string & text) {
        auto v = verify_certificate(parse_certificate(text));
        return py::make_tuple(v.valid, v.method, v.detail);
    }, "Returns (valid, method, detail).");
}
