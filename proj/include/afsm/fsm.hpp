#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afsm/error.hpp"
#include "afsm/symbol.hpp"

namespace afsm {

using StateIndex = std::uint32_t;

struct Transition {
    StateIndex src;
    SymbolSet label;
    StateIndex dst;

    friend bool operator==(const Transition&, const Transition&) = default;
};

// Unvalidated machine description, as read from text or assembled by hand.
// Positions are optional and only used to decorate errors.

struct RawState {
    std::string name;
    std::vector<std::string> outputs;
    std::optional<Position> where;
};

struct RawTransition {
    std::string src;
    std::vector<std::string> label;
    std::string dst;
    std::optional<Position> where;
};

struct RawFsm {
    std::string id;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<RawState> states;
    std::optional<std::string> initial;
    std::optional<Position> initial_where;
    std::vector<RawTransition> transitions;
    std::optional<Position> where;
};

/// Index-based description used by algorithms that synthesize machines
/// (quotients, expansions, induced machines). Fsm::build canonicalizes it.
struct FsmParts {
    std::string id;
    SymbolSet inputs;
    SymbolSet outputs;
    std::vector<std::string> states;
    std::vector<SymbolSet> output_map;
    std::optional<StateIndex> initial;
    std::vector<Transition> transitions;
};

/// Moore-style machine (X, x0, U, Y, H, Delta) with set-valued inputs
/// and outputs. Immutable; states are sorted by name and transitions by
/// (src, label names, dst).
class Fsm {
public:
    /// Validates and canonicalizes. Throws Error on any violated invariant.
    static Fsm build(FsmParts parts);

    const std::string& id() const noexcept { return id_; }
    std::size_t state_count() const noexcept { return states_.size(); }
    std::span<const std::string> states() const noexcept { return states_; }
    const std::string& state_name(StateIndex s) const { return states_.at(s); }
    std::optional<StateIndex> find_state(std::string_view name) const;

    std::optional<StateIndex> initial() const noexcept { return initial_; }
    const SymbolSet& inputs() const noexcept { return inputs_; }
    const SymbolSet& outputs() const noexcept { return outputs_; }
    const SymbolSet& output(StateIndex s) const { return output_map_.at(s); }
    std::span<const SymbolSet> output_map() const noexcept { return output_map_; }

    std::span<const Transition> transitions() const noexcept { return transitions_; }
    /// Transitions leaving `s`, contiguous in canonical order.
    std::span<const Transition> outgoing(StateIndex s) const;

    /// Same machine under a different id.
    Fsm renamed(std::string id) const;

    friend bool operator==(const Fsm&, const Fsm&) = default;

private:
    Fsm() = default;

    std::string id_;
    std::vector<std::string> states_;
    std::optional<StateIndex> initial_;
    SymbolSet inputs_;
    SymbolSet outputs_;
    std::vector<SymbolSet> output_map_;
    std::vector<Transition> transitions_;
    std::vector<std::uint32_t> out_offsets_;
};

/// Validates a raw description: every referenced state declared, every
/// symbol inside the declared alphabets, no duplicates.
Fsm validate_fsm(const RawFsm& raw);

}  // namespace afsm
