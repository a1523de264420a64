#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "afsm/bisimulation.hpp"
#include "afsm/cli.hpp"
#include "afsm/compositional.hpp"
#include "afsm/expansion.hpp"
#include "afsm/format.hpp"

namespace py = pybind11;
using namespace afsm;

namespace {

py::object big_int(const boost::multiprecision::cpp_int& n) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(n.str().c_str(), nullptr, 10));
}

std::vector<std::pair<std::string, std::string>> named_pairs(const Fsm& m1, const Fsm& m2, const Relation& r) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [a, b] : r.pairs) {
        out.emplace_back(m1.state_name(a), m2.state_name(b));
    }
    return out;
}

std::vector<std::string> names(const SymbolSet& s) {
    return s.sorted_names();
}

}  // namespace

PYBIND11_MODULE(_afsm, m) {
    m.doc() = "Arenas of finite state machines";

    static py::exception<Error> error(m, "AfsmError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            py::object args = py::make_tuple(std::string(to_string(e.code())), e.what());
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    py::class_<Fsm, std::shared_ptr<Fsm>>(m, "Fsm")
        .def_property_readonly("id", &Fsm::id)
        .def_property_readonly("states",
                               [](const Fsm& f) { return std::vector<std::string>(f.states().begin(), f.states().end()); })
        .def_property_readonly("initial",
                               [](const Fsm& f) -> std::optional<std::string> {
                                   if (!f.initial()) {
                                       return std::nullopt;
                                   }
                                   return f.state_name(*f.initial());
                               })
        .def_property_readonly("inputs", [](const Fsm& f) { return names(f.inputs()); })
        .def_property_readonly("outputs", [](const Fsm& f) { return names(f.outputs()); })
        .def("output",
             [](const Fsm& f, const std::string& state) {
                 auto s = f.find_state(state);
                 if (!s) {
                     throw py::key_error(state);
                 }
                 return names(f.output(*s));
             })
        .def_property_readonly("transitions",
                               [](const Fsm& f) {
                                   py::list out;
                                   for (const auto& t : f.transitions()) {
                                       out.append(py::make_tuple(f.state_name(t.src), names(t.label),
                                                                 f.state_name(t.dst)));
                                   }
                                   return out;
                               })
        .def("__len__", &Fsm::state_count)
        .def("__eq__", [](const Fsm& a, const Fsm& b) { return a == b; })
        .def("__repr__", [](const Fsm& f) {
            return "<Fsm " + f.id() + ": " + std::to_string(f.state_count()) + " states, " +
                   std::to_string(f.transitions().size()) + " transitions>";
        });

    py::class_<Arena>(m, "Arena")
        .def_property_readonly("id", &Arena::id)
        .def_property_readonly("vertices",
                               [](const Arena& a) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const auto& v : a.vertices()) {
                                       out.emplace_back(v.id, v.machine->id());
                                   }
                                   return out;
                               })
        .def_property_readonly("edges",
                               [](const Arena& a) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (auto [x, y] : a.edges()) {
                                       out.emplace_back(a.vertex(x).id, a.vertex(y).id);
                                   }
                                   return out;
                               })
        .def("predecessors", [](const Arena& a, const std::string& v) { return predecessors(a, v); })
        .def("__len__", &Arena::size)
        .def("__repr__", [](const Arena& a) {
            return "<Arena " + a.id() + ": " + std::to_string(a.size()) + " vertices, " +
                   std::to_string(a.edges().size()) + " edges>";
        });

    py::class_<ModelDocument>(m, "Document")
        .def_property_readonly("fsms",
                               [](const ModelDocument& d) {
                                   py::dict out;
                                   for (const auto& f : d.fsms) {
                                       out[py::str(f->id())] = std::const_pointer_cast<Fsm>(f);
                                   }
                                   return out;
                               })
        .def_property_readonly("arenas",
                               [](const ModelDocument& d) {
                                   py::dict out;
                                   for (const auto& a : d.arenas) {
                                       out[py::str(a.id())] = a;
                                   }
                                   return out;
                               })
        .def("serialize", [](const ModelDocument& d) { return serialize(d); });

    m.def("parse", [](const std::string& text) { return parse(text); }, py::arg("text"));
    m.def("parse_file", &parse_file, py::arg("path"));
    m.def("serialize_fsm", [](const Fsm& f) { return serialize(f); });
    m.def("serialize_arena", [](const Arena& a) { return serialize(a); });

    m.def("max_bisimulation",
          [](const Fsm& a, const Fsm& b) { return named_pairs(a, b, max_bisimulation(a, b)); });
    m.def("naive_bisim_oracle",
          [](const Fsm& a, const Fsm& b) { return named_pairs(a, b, naive_bisim_oracle(a, b)); });
    m.def("is_bisimilar", &is_bisimilar);
    m.def("quotient", [](const Fsm& f) { return std::make_shared<Fsm>(quotient(f)); });
    m.def("is_minimal", &is_minimal);
    m.def("is_isomorphic", &is_isomorphic, py::arg("m1"), py::arg("m2"), py::arg("max_class_size") = 12);

    m.def(
        "expand",
        [](const Arena& a, bool accessible, std::size_t max_states) {
            return std::make_shared<Fsm>(
                expand(a, {accessible ? ExpandMode::Accessible : ExpandMode::Full, max_states}).machine);
        },
        py::arg("arena"), py::arg("accessible") = false, py::arg("max_states") = kDefaultMaxStates);
    m.def("state_count", [](const Arena& a) { return big_int(state_count(a)); });

    m.def(
        "machine_classes",
        [](const Arena& a1, const Arena* a2) {
            const auto c = a2 ? machine_classes(a1, *a2) : machine_classes(a1);
            std::vector<std::vector<std::pair<int, std::string>>> out;
            for (const auto& cls : c.classes) {
                auto& row = out.emplace_back();
                for (const auto& r : cls) {
                    row.emplace_back(r.arena, (r.arena == 0 ? a1 : *a2).vertex(r.vertex).id);
                }
            }
            return out;
        },
        py::arg("a1"), py::arg("a2") = nullptr);
    m.def("induce_fsm", [](const Arena& a) { return std::make_shared<Fsm>(induce_fsm(a, machine_classes(a))); });
    m.def("is_comp_bisimilar", &is_comp_bisimilar);
    m.def("comp_bisimulation", [](const Arena& a1, const Arena& a2) {
        const auto r = comp_bisimulation(a1, a2);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto [v, w] : r.witness.pairs) {
            pairs.emplace_back(a1.vertex(v).id, a2.vertex(w).id);
        }
        return py::make_tuple(r.bisimilar, pairs);
    });
    m.def("arena_quotient", [](const Arena& a) { return arena_quotient(a); });
    m.def(
        "reduce",
        [](const Arena& a, std::size_t max_states) {
            const auto r = reduce(a, {ExpandMode::Full, max_states});
            py::dict report;
            report["classes"] = r.report.classes;
            report["quotient_vertices"] = r.report.quotient_vertices;
            report["quotient_edges"] = r.report.quotient_edges;
            report["expansion_states"] = r.report.expansion_states;
            report["expansion_transitions"] = r.report.expansion_transitions;
            report["final_states"] = r.report.final_states;
            report["final_transitions"] = r.report.final_transitions;
            return py::make_tuple(std::make_shared<Fsm>(r.minimal), report);
        },
        py::arg("arena"), py::arg("max_states") = kDefaultMaxStates);
    m.def(
        "check_comp_implies_flat",
        [](const Arena& a1, const Arena& a2) {
            const auto v = check_comp_implies_flat(a1, a2);
            py::dict out;
            out["comp"] = v.comp;
            out["flat"] = v.flat;
            out["consistent"] = v.consistent;
            return out;
        });

    m.def("export_dot", [](const Fsm& f) { return export_dot(f); });
    m.def("export_dot", [](const Arena& a) { return export_dot(a); });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
