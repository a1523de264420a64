#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "afsm/arena.hpp"
#include "afsm/bisimulation.hpp"
#include "afsm/expansion.hpp"

namespace afsm {

/// A vertex of one of (up to) two arenas being compared together.
struct VertexRef {
    std::uint8_t arena;  // 0 or 1
    VertexIndex vertex;

    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Partition of the vertices of one or two arenas by bisimilarity of
/// their machines. Classes are ordered by their least member (arena tag
/// first, then vertex declaration order); class k has token `C<k+1>`.
struct MachineClasses {
    std::vector<std::vector<VertexRef>> classes;
    /// class_index[arena][vertex]
    std::vector<std::vector<std::uint32_t>> class_index;

    std::size_t size() const noexcept { return classes.size(); }
    std::uint32_t class_of(VertexRef v) const { return class_index.at(v.arena).at(v.vertex); }
    static std::string token(std::uint32_t k) { return "C" + std::to_string(k + 1); }
};

MachineClasses machine_classes(const Arena& arena);
MachineClasses machine_classes(const Arena& a1, const Arena& a2);

/// The machine M_A: one state per vertex (named by vertex id) with output
/// {C_k} for its class, an empty-label transition per edge, no initial
/// state. `tag` selects which arena of `classes` this is.
Fsm induce_fsm(const Arena& arena, const MachineClasses& classes, std::uint8_t tag = 0);

struct CompBisimResult {
    bool bisimilar = false;
    /// Maximal compositional bisimulation, as (vertex of a1, vertex of a2).
    Relation witness;
    MachineClasses classes;
};

/// Decides A1 ~c A2 through the induced machines: the maximal
/// bisimulation between M_A1 and M_A2 must be total.
CompBisimResult comp_bisimulation(const Arena& a1, const Arena& a2);
bool is_comp_bisimilar(const Arena& a1, const Arena& a2);

/// One vertex per machine class (the class's first vertex, machine reused
/// verbatim); edge (C, C') whenever some edge joins the two classes.
/// Throws Error(QuotientSelfLoop) if an edge joins two vertices of one class.
Arena arena_quotient(const Arena& arena);
Arena arena_quotient(const Arena& arena, const MachineClasses& classes);

struct ReduceReport {
    std::size_t classes = 0;
    std::size_t quotient_vertices = 0;
    std::size_t quotient_edges = 0;
    std::size_t expansion_states = 0;
    std::size_t expansion_transitions = 0;
    std::size_t final_states = 0;
    std::size_t final_transitions = 0;
};

struct ReduceResult {
    Fsm minimal;
    Arena quotient_arena;
    ReduceReport report;
};

/// Classes, arena quotient, expansion of the quotient, self-bisimulation
/// and quotient of the expansion, in that order.
ReduceResult reduce(const Arena& arena, const ExpandOptions& options = {});

/// Both sides of "A1 ~c A2 implies M(A1) ~ M(A2)" on concrete arenas.
struct ImplicationVerdict {
    bool comp = false;
    bool flat = false;
    bool consistent = false;
};

/// Evaluates compositional and flat bisimilarity (full expansions).
ImplicationVerdict check_comp_implies_flat(const Arena& a1, const Arena& a2, const ExpandOptions& options = {});

}  // namespace afsm
