#include "afsm/format.hpp"

namespace afsm {

namespace {

std::string escaped(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

std::string quoted(std::string_view s) {
    return '"' + escaped(s) + '"';
}

}  // namespace

std::string export_dot(const Fsm& fsm, const DotOptions& options) {
    std::string out = "digraph " + quoted(options.graph_name.empty() ? fsm.id() : options.graph_name) + " {\n";
    out += "  rankdir=LR;\n";
    out += "  node [shape=ellipse];\n";
    for (StateIndex s = 0; s < fsm.state_count(); ++s) {
        out += "  " + quoted(fsm.state_name(s)) + " [label=" +
               quoted(fsm.state_name(s) + " / " + fsm.output(s).to_string()) + "];\n";
    }
    if (fsm.initial()) {
        out += "  \"__init\" [shape=point];\n";
        out += "  \"__init\" -> " + quoted(fsm.state_name(*fsm.initial())) + ";\n";
    }
    for (const auto& t : fsm.transitions()) {
        out += "  " + quoted(fsm.state_name(t.src)) + " -> " + quoted(fsm.state_name(t.dst)) +
               " [label=" + quoted(t.label.to_string()) + "];\n";
    }
    return out + "}\n";
}

std::string export_dot(const Arena& arena, const DotOptions& options) {
    std::string out = "digraph " + quoted(options.graph_name.empty() ? arena.id() : options.graph_name) + " {\n";
    out += "  node [shape=box];\n";
    for (const auto& v : arena.vertices()) {
        out += "  " + quoted(v.id) + " [label=\"" + escaped(v.id) + "\\n" + escaped(v.machine->id()) + "\"];\n";
    }
    for (auto [from, to] : arena.edges()) {
        out += "  " + quoted(arena.vertex(from).id) + " -> " + quoted(arena.vertex(to).id) + ";\n";
    }
    return out + "}\n";
}

}  // namespace afsm
