#include "afsm/bench.hpp"

#include <chrono>
#include <stdexcept>

#include "afsm/compositional.hpp"
#include "afsm/expansion.hpp"

namespace afsm {

namespace {

FsmPtr template_machine(int which) {
    // T0 toggles on {a} and shows {p} when high; T1 toggles on {} and
    // shows {q} when high.
    const auto in = which == 0 ? SymbolSet::from_names({"a"}) : SymbolSet{};
    const auto out = SymbolSet::from_names({which == 0 ? "p" : "q"});
    FsmParts parts;
    parts.id = which == 0 ? "T0" : "T1";
    parts.inputs = in;
    parts.outputs = out;
    parts.states = {"lo", "hi"};
    parts.output_map = {SymbolSet{}, out};
    parts.initial = 0;
    parts.transitions = {{0, in, 1}, {1, SymbolSet{}, 0}};
    return std::make_shared<const Fsm>(Fsm::build(std::move(parts)));
}

}  // namespace

BenchFamily parse_family(const std::string& name) {
    if (name == "star") {
        return BenchFamily::Star;
    }
    if (name == "ring") {
        return BenchFamily::Ring;
    }
    throw std::invalid_argument("unknown family '" + name + "' (expected star or ring)");
}

Arena bench_arena(BenchFamily family, std::size_t n, bool reversed) {
    if (n == 0) {
        throw std::invalid_argument("bench arena needs at least one vertex");
    }
    static const FsmPtr t0 = template_machine(0);
    static const FsmPtr t1 = template_machine(1);

    // Logical vertex i sits at position pos(i).
    auto pos = [&](std::size_t i) { return static_cast<VertexIndex>(reversed ? n - 1 - i : i); };
    std::vector<Vertex> vertices(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool hub = family == BenchFamily::Star ? i == 0 : i % 2 == 0;
        vertices[pos(i)] = Vertex{"v" + std::to_string(i), hub ? t0 : t1};
    }
    std::vector<std::pair<VertexIndex, VertexIndex>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        if (family == BenchFamily::Star) {
            if (i > 0) {
                edges.emplace_back(pos(0), pos(i));
            }
        } else if (n > 1) {
            edges.emplace_back(pos(i), pos((i + 1) % n));
        }
    }
    const std::string id = std::string(family == BenchFamily::Star ? "star" : "ring") + std::to_string(n) +
                           (reversed ? "r" : "");
    return Arena::build(id, std::move(vertices), std::move(edges));
}

std::vector<ScalingRow> run_scaling(BenchFamily family, std::size_t n_max) {
    std::vector<ScalingRow> rows;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto a = bench_arena(family, n);
        const auto b = bench_arena(family, n, true);
        ScalingRow row;
        row.n = n;
        row.product_states = state_count(a);
        const auto start = std::chrono::steady_clock::now();
        const auto result = comp_bisimulation(a, b);
        const auto stop = std::chrono::steady_clock::now();
        row.comp_check_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        row.comp_bisimilar = result.bisimilar;
        row.induced_states = induce_fsm(a, result.classes, 0).state_count();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows) {
    std::string out = "N,product_states,induced_states,comp_check_ms\n";
    char ms[32];
    for (const auto& r : rows) {
        std::snprintf(ms, sizeof ms, "%.3f", r.comp_check_ms);
        out += std::to_string(r.n) + "," + r.product_states.str() + "," + std::to_string(r.induced_states) + "," + ms +
               "\n";
    }
    return out;
}

}  // namespace afsm
