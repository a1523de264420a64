#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "afsm/arena.hpp"

namespace afsm {

enum class BenchFamily { Star, Ring };

/// Parses "star" / "ring"; throws std::invalid_argument otherwise.
BenchFamily parse_family(const std::string& name);

/// N-vertex arena over two fixed, non-bisimilar 2-state templates.
/// Star: v0 feeds every other vertex. Ring: v_i feeds v_{i+1 mod N}.
/// `reversed` declares the vertices in the opposite order, which gives a
/// compositionally bisimilar copy with a different layout.
Arena bench_arena(BenchFamily family, std::size_t n, bool reversed = false);

struct ScalingRow {
    std::size_t n = 0;
    boost::multiprecision::cpp_int product_states;
    std::size_t induced_states = 0;
    double comp_check_ms = 0;
    bool comp_bisimilar = false;
};

/// Rows for N = 1..n_max. comp_check_ms times one compositional check of
/// the arena against its reversed copy.
std::vector<ScalingRow> run_scaling(BenchFamily family, std::size_t n_max);

std::string scaling_csv(const std::vector<ScalingRow>& rows);

}  // namespace afsm
