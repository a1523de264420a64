#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace afsm {

/// Relational coarsest partition of an unlabeled graph.
///
/// Given nodes 0..node_count-1 with an initial labelling and a directed
/// edge list, returns the coarsest refinement of the labelling in which
/// every block B is stable with respect to every block S: either all of
/// B has an edge into S or none of it does. Uses the process-the-smaller-
/// half strategy with per-(node, compound block) edge counters, giving
/// O(m log n) time and O(n + m) space.
///
/// Block ids in the result are numbered 0.. in order of first occurrence
/// by node index, so equal inputs give identical outputs.
std::vector<std::uint32_t> coarsest_stable_partition(std::size_t node_count,
                                                     std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                                                     std::span<const std::uint32_t> initial_labels);

}  // namespace afsm
