#include "afsm/compositional.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace afsm {

namespace {

// Bisimulation-invariant digest of a machine: whether it has an initial
// state, and the distinct output sets it can exhibit (reachable ones when
// an initial state exists, all of them otherwise).
struct Fingerprint {
    bool has_initial = false;
    SymbolSet initial_output;
    std::set<SymbolSet> outputs;

    friend auto operator<=>(const Fingerprint& a, const Fingerprint& b) {
        if (a.has_initial != b.has_initial) {
            return a.has_initial <=> b.has_initial;
        }
        if (!(a.initial_output == b.initial_output)) {
            return a.initial_output < b.initial_output ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (a.outputs != b.outputs) {
            return a.outputs < b.outputs ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
};

Fingerprint fingerprint(const Fsm& m) {
    Fingerprint f;
    if (!m.initial()) {
        for (const auto& out : m.output_map()) {
            f.outputs.insert(out);
        }
        return f;
    }
    f.has_initial = true;
    f.initial_output = m.output(*m.initial());
    std::vector<bool> seen(m.state_count(), false);
    std::deque<StateIndex> queue{*m.initial()};
    seen[*m.initial()] = true;
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        f.outputs.insert(m.output(s));
        for (const auto& t : m.outgoing(s)) {
            if (!seen[t.dst]) {
                seen[t.dst] = true;
                queue.push_back(t.dst);
            }
        }
    }
    return f;
}

MachineClasses classify(std::span<const Arena* const> arenas) {
    std::vector<VertexRef> refs;
    std::vector<const Fsm*> machines;
    for (std::size_t a = 0; a < arenas.size(); ++a) {
        for (VertexIndex v = 0; v < arenas[a]->size(); ++v) {
            refs.push_back({static_cast<std::uint8_t>(a), v});
            machines.push_back(arenas[a]->vertex(v).machine.get());
        }
    }
    for (std::size_t i = 1; i < machines.size(); ++i) {
        if (machines[i]->initial().has_value() != machines[0]->initial().has_value()) {
            throw Error(ErrorCode::InitialStateMismatch, "machine '" + machines[0]->id() + "' and machine '" +
                                                             machines[i]->id() +
                                                             "' disagree on declaring an initial state");
        }
    }

    // Within a fingerprint bucket, each vertex is compared against one
    // representative per class found so far.
    std::map<Fingerprint, std::vector<std::uint32_t>> buckets;  // -> class ids
    std::vector<std::vector<std::size_t>> members;               // class -> positions in refs
    std::map<const Fsm*, std::uint32_t> by_machine;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (auto it = by_machine.find(machines[i]); it != by_machine.end()) {
            members[it->second].push_back(i);
            continue;
        }
        auto& bucket = buckets[fingerprint(*machines[i])];
        std::optional<std::uint32_t> found;
        for (auto k : bucket) {
            if (is_bisimilar(*machines[members[k].front()], *machines[i])) {
                found = k;
                break;
            }
        }
        if (!found) {
            found = static_cast<std::uint32_t>(members.size());
            members.emplace_back();
            bucket.push_back(*found);
        }
        members[*found].push_back(i);
        by_machine.emplace(machines[i], *found);
    }

    // Members were appended in ref order, so members[k].front() is the
    // least member; order classes by it.
    std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });

    MachineClasses out;
    out.class_index.resize(arenas.size());
    for (std::size_t a = 0; a < arenas.size(); ++a) {
        out.class_index[a].resize(arenas[a]->size());
    }
    for (std::uint32_t k = 0; k < members.size(); ++k) {
        auto& cls = out.classes.emplace_back();
        for (auto i : members[k]) {
            cls.push_back(refs[i]);
            out.class_index[refs[i].arena][refs[i].vertex] = k;
        }
    }
    return out;
}

}  // namespace

MachineClasses machine_classes(const Arena& arena) {
    const Arena* arenas[] = {&arena};
    return classify(arenas);
}

MachineClasses machine_classes(const Arena& a1, const Arena& a2) {
    const Arena* arenas[] = {&a1, &a2};
    return classify(arenas);
}

Fsm induce_fsm(const Arena& arena, const MachineClasses& classes, std::uint8_t tag) {
    if (tag >= classes.class_index.size() || classes.class_index[tag].size() != arena.size()) {
        throw Error(ErrorCode::ClassCoverageGap,
                    "machine classes do not cover the vertices of arena '" + arena.id() + "'");
    }
    FsmParts parts;
    parts.id = arena.id();
    std::vector<Symbol> tokens;
    for (std::uint32_t k = 0; k < classes.size(); ++k) {
        tokens.push_back(Symbol::intern(MachineClasses::token(k)));
    }
    parts.outputs = SymbolSet(tokens);
    for (VertexIndex v = 0; v < arena.size(); ++v) {
        const auto k = classes.class_index[tag][v];
        if (k >= tokens.size()) {
            throw Error(ErrorCode::ClassCoverageGap, "vertex '" + arena.vertex(v).id + "' has no class");
        }
        parts.states.push_back(arena.vertex(v).id);
        parts.output_map.push_back(SymbolSet{tokens[k]});
    }
    for (auto [from, to] : arena.edges()) {
        parts.transitions.push_back({from, SymbolSet{}, to});
    }
    return Fsm::build(std::move(parts));
}

CompBisimResult comp_bisimulation(const Arena& a1, const Arena& a2) {
    CompBisimResult result;
    result.classes = machine_classes(a1, a2);
    const auto f1 = induce_fsm(a1, result.classes, 0);
    const auto f2 = induce_fsm(a2, result.classes, 1);
    const auto r = max_bisimulation(f1, f2);
    result.bisimilar = r.is_total(f1.state_count(), f2.state_count());
    // Induced states are sorted by vertex id; report vertex indices.
    for (auto [s1, s2] : r.pairs) {
        result.witness.pairs.emplace_back(*a1.find_vertex(f1.state_name(s1)), *a2.find_vertex(f2.state_name(s2)));
    }
    std::sort(result.witness.pairs.begin(), result.witness.pairs.end());
    return result;
}

bool is_comp_bisimilar(const Arena& a1, const Arena& a2) {
    return comp_bisimulation(a1, a2).bisimilar;
}

Arena arena_quotient(const Arena& arena) {
    return arena_quotient(arena, machine_classes(arena));
}

Arena arena_quotient(const Arena& arena, const MachineClasses& classes) {
    if (classes.class_index.empty() || classes.class_index[0].size() != arena.size()) {
        throw Error(ErrorCode::ClassCoverageGap,
                    "machine classes do not cover the vertices of arena '" + arena.id() + "'");
    }
    const auto& of = classes.class_index[0];
    std::vector<Vertex> vertices;
    for (const auto& cls : classes.classes) {
        vertices.push_back(arena.vertex(cls.front().vertex));
    }
    std::vector<std::pair<VertexIndex, VertexIndex>> edges;
    for (auto [from, to] : arena.edges()) {
        if (of[from] == of[to]) {
            throw Error(ErrorCode::QuotientSelfLoop, "edge " + arena.vertex(from).id + " -> " + arena.vertex(to).id +
                                                         " joins two vertices of the same machine class");
        }
        edges.emplace_back(of[from], of[to]);
    }
    return Arena::build(arena.id(), std::move(vertices), std::move(edges));
}

ReduceResult reduce(const Arena& arena, const ExpandOptions& options) {
    const auto classes = machine_classes(arena);
    auto q = arena_quotient(arena, classes);
    const auto expanded = expand(q, options);
    auto minimal = quotient(expanded.machine);

    ReduceReport report;
    report.classes = classes.size();
    report.quotient_vertices = q.size();
    report.quotient_edges = q.edges().size();
    report.expansion_states = expanded.machine.state_count();
    report.expansion_transitions = expanded.machine.transitions().size();
    report.final_states = minimal.state_count();
    report.final_transitions = minimal.transitions().size();
    return ReduceResult{std::move(minimal), std::move(q), report};
}

ImplicationVerdict check_comp_implies_flat(const Arena& a1, const Arena& a2, const ExpandOptions& options) {
    ImplicationVerdict v;
    v.comp = is_comp_bisimilar(a1, a2);
    ExpandOptions full = options;
    full.mode = ExpandMode::Full;
    v.flat = is_bisimilar(expand(a1, full).machine, expand(a2, full).machine);
    v.consistent = !v.comp || v.flat;
    return v;
}

}  // namespace afsm
