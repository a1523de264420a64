#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "afsm/fsm.hpp"

namespace afsm {

/// Which of the two machines a state belongs to.
enum class Side : std::uint8_t { First = 0, Second = 1 };

struct StateRef {
    Side machine;
    StateIndex state;

    friend auto operator<=>(const StateRef&, const StateRef&) = default;
};

/// Blocks of bisimilar states over the disjoint union X1 + X2.
struct Partition {
    std::vector<std::vector<StateRef>> blocks;
    /// block_of[0][s] / block_of[1][s]: block index of state s of machine 1 / 2.
    std::vector<std::uint32_t> block_of[2];

    std::uint32_t block(StateRef r) const { return block_of[static_cast<int>(r.machine)][r.state]; }
};

/// Relation R subset of X1 x X2, as sorted (state of m1, state of m2) pairs.
struct Relation {
    std::vector<std::pair<StateIndex, StateIndex>> pairs;

    bool contains(StateIndex a, StateIndex b) const;
    bool empty() const noexcept { return pairs.empty(); }
    std::size_t size() const noexcept { return pairs.size(); }
    /// Every state of each side occurs in some pair.
    bool is_total(std::size_t left_count, std::size_t right_count) const;

    friend bool operator==(const Relation&, const Relation&) = default;
};

/// Maximal bisimulation partition on the disjoint union of m1 and m2.
/// Labels are compared by set equality. O((|D1|+|D2|) log(|X1|+|X2|)).
Partition bisimulation_partition(const Fsm& m1, const Fsm& m2);

/// Self-bisimulation partition of one machine (blocks use Side::First).
Partition bisimulation_partition(const Fsm& m);

/// R*(m1, m2): the largest bisimulation relation between m1 and m2.
Relation max_bisimulation(const Fsm& m1, const Fsm& m2);

/// Greatest-fixpoint reference for max_bisimulation over a dense pair
/// table. Throws Error(TooLarge) above `max_pairs` pairs.
Relation naive_bisim_oracle(const Fsm& m1, const Fsm& m2, std::size_t max_pairs = 1'000'000);

/// With initial states on both sides: (x0_1, x0_2) in R*. With neither:
/// R* is total. Throws Error(InitialStateMismatch) otherwise.
bool is_bisimilar(const Fsm& m1, const Fsm& m2);

/// The quotient of m by R*(m, m). Each block is named after its
/// lexicographically least member.
Fsm quotient(const Fsm& m);

/// True if the self-bisimulation of m is the identity.
bool is_minimal(const Fsm& m);

/// Isomorphism (bijection preserving initial state, outputs and
/// transitions). Polynomial when both machines are minimal; otherwise a
/// pruned backtracking search, refused with Error(TooLargeForGeneralIso)
/// when some output class has more than `max_class_size` states.
bool is_isomorphic(const Fsm& m1, const Fsm& m2, std::size_t max_class_size = 12);

}  // namespace afsm
