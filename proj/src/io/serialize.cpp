#include <algorithm>
#include <map>

#include "afsm/format.hpp"

namespace afsm {

namespace {

void write_fsm(std::string& out, const Fsm& m) {
    out += "fsm " + m.id() + "\n";
    out += "  inputs " + m.inputs().to_string() + "\n";
    out += "  outputs " + m.outputs().to_string() + "\n";
    for (StateIndex s = 0; s < m.state_count(); ++s) {
        out += "  state " + m.state_name(s) + " " + m.output(s).to_string() + "\n";
    }
    if (m.initial()) {
        out += "  initial " + m.state_name(*m.initial()) + "\n";
    }
    for (const auto& t : m.transitions()) {
        out += "  trans " + m.state_name(t.src) + " " + t.label.to_string() + " " + m.state_name(t.dst) + "\n";
    }
    out += "end\n";
}

void write_arena(std::string& out, const Arena& a) {
    out += "arena " + a.id() + "\n";
    for (const auto& v : a.vertices()) {
        out += "  node " + v.id + " " + v.machine->id() + "\n";
    }
    for (auto [from, to] : a.edges()) {
        out += "  edge " + a.vertex(from).id + " " + a.vertex(to).id + "\n";
    }
    out += "end\n";
}

}  // namespace

std::string serialize(const Fsm& fsm) {
    std::string out;
    write_fsm(out, fsm);
    return out;
}

std::string serialize(const Arena& arena) {
    std::string out;
    write_arena(out, arena);
    return out;
}

std::string serialize(const ModelDocument& doc) {
    std::vector<const Fsm*> fsms;
    for (const auto& f : doc.fsms) {
        fsms.push_back(f.get());
    }
    std::sort(fsms.begin(), fsms.end(), [](auto a, auto b) { return a->id() < b->id(); });
    std::vector<const Arena*> arenas;
    for (const auto& a : doc.arenas) {
        arenas.push_back(&a);
    }
    std::sort(arenas.begin(), arenas.end(), [](auto a, auto b) { return a->id() < b->id(); });

    std::string out;
    bool first = true;
    for (auto f : fsms) {
        out += first ? "" : "\n";
        write_fsm(out, *f);
        first = false;
    }
    for (auto a : arenas) {
        out += first ? "" : "\n";
        write_arena(out, *a);
        first = false;
    }
    return out;
}

bool structurally_equal(const ModelDocument& a, const ModelDocument& b) {
    if (a.fsms.size() != b.fsms.size() || a.arenas.size() != b.arenas.size()) {
        return false;
    }
    for (const auto& f : a.fsms) {
        const auto* g = b.find_fsm(f->id());
        if (!g || !(*f == *g)) {
            return false;
        }
    }
    for (const auto& x : a.arenas) {
        const auto* y = b.find_arena(x.id());
        if (!y || !structurally_equal(x, *y)) {
            return false;
        }
    }
    return true;
}

}  // namespace afsm
