#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "afsm/arena.hpp"

namespace afsm {

/// One state index per arena vertex, in the arena's vertex order.
struct CompositeState {
    std::vector<StateIndex> parts;

    friend auto operator<=>(const CompositeState&, const CompositeState&) = default;
};

/// Per-vertex state names of `x`.
std::vector<std::string> part_names(const Arena& arena, const CompositeState& x);

/// Looks up component states by name. Throws ArityMismatch or
/// UnknownComponentState.
CompositeState composite_state(const Arena& arena, const std::vector<std::string>& names);

/// Separator between component names in composite state ids.
inline constexpr char kCompositeSeparator = '.';

/// `1.3.5` for parts (1, 3, 5).
std::string composite_name(const Arena& arena, const CompositeState& x);

struct CompositeStep {
    SymbolSet label;
    CompositeState target;

    friend bool operator<(const CompositeStep& a, const CompositeStep& b) {
        if (a.target != b.target) {
            return a.target < b.target;
        }
        return a.label < b.label;
    }
    friend bool operator==(const CompositeStep&, const CompositeStep&) = default;
};

/// Synchronous successors of x: every vertex takes exactly one of its
/// transitions, and vertex i's label loses the symbols its predecessors
/// currently output. Empty when some vertex has no outgoing transition.
/// Throws ArityMismatch or UnknownComponentState on a malformed x.
std::vector<CompositeStep> composite_successors(const Arena& arena, const CompositeState& x);

enum class ExpandMode { Full, Accessible };

inline constexpr std::size_t kDefaultMaxStates = 10'000'000;

struct ExpandOptions {
    ExpandMode mode = ExpandMode::Full;
    std::size_t max_states = kDefaultMaxStates;
};

/// The flat machine M(A) plus the provenance needed to read its states.
struct CompositeFsm {
    Fsm machine;
    /// parts[s] describes machine.states()[s].
    std::vector<CompositeState> parts;
    std::string arena_id;
    std::vector<std::string> vertex_order;
};

/// Full mode enumerates the whole product (Error(GuardExceeded) above
/// max_states); accessible mode explores from the composite initial state
/// (Error(NoInitialState) unless every machine declares one).
CompositeFsm expand(const Arena& arena, const ExpandOptions& options = {});

/// Product of the component state counts, never enumerated.
boost::multiprecision::cpp_int state_count(const Arena& arena);

}  // namespace afsm
