#include "afsm/expansion.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace afsm {

namespace {

struct CompositeHash {
    std::size_t operator()(const CompositeState& x) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (auto p : x.parts) {
            h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

void check_state(const Arena& arena, const CompositeState& x) {
    if (x.parts.size() != arena.size()) {
        throw Error(ErrorCode::ArityMismatch, "composite state has " + std::to_string(x.parts.size()) +
                                                  " components, arena '" + arena.id() + "' has " +
                                                  std::to_string(arena.size()) + " vertices");
    }
    for (std::size_t i = 0; i < x.parts.size(); ++i) {
        if (x.parts[i] >= arena.machine(static_cast<VertexIndex>(i)).state_count()) {
            throw Error(ErrorCode::UnknownComponentState,
                        "component " + std::to_string(i) + " of composite state is not a state of vertex '" +
                            arena.vertex(static_cast<VertexIndex>(i)).id + "'");
        }
    }
}

// Appends the successors of x (unchecked) to `out`, sorted and unique.
void successors_into(const Arena& arena, const CompositeState& x, std::vector<CompositeStep>& out) {
    const auto n = arena.size();
    std::vector<std::span<const Transition>> options(n);
    std::vector<std::vector<SymbolSet>> contribution(n);
    for (VertexIndex i = 0; i < n; ++i) {
        const auto& m = arena.machine(i);
        options[i] = m.outgoing(x.parts[i]);
        if (options[i].empty()) {
            return;  // composite deadlock
        }
        SymbolSet provided;
        for (auto j : arena.predecessors(i)) {
            provided.unite(arena.machine(j).output(x.parts[j]));
        }
        contribution[i].reserve(options[i].size());
        for (const auto& t : options[i]) {
            contribution[i].push_back(provided.empty() ? t.label : t.label.minus(provided));
        }
    }

    const auto first = out.size();
    std::vector<std::size_t> choice(n, 0);
    while (true) {
        CompositeStep step;
        step.target.parts.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            step.label.unite(contribution[i][choice[i]]);
            step.target.parts[i] = options[i][choice[i]].dst;
        }
        out.push_back(std::move(step));

        std::size_t i = n;
        while (i > 0 && ++choice[i - 1] == options[i - 1].size()) {
            choice[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            break;
        }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
    out.erase(std::unique(out.begin() + static_cast<std::ptrdiff_t>(first), out.end()), out.end());
}

CompositeFsm assemble(const Arena& arena, std::vector<CompositeState> states,
                      const std::vector<std::vector<std::pair<SymbolSet, std::size_t>>>& edges,
                      std::optional<std::size_t> initial) {
    const auto count = states.size();
    std::vector<std::string> names(count);
    for (std::size_t s = 0; s < count; ++s) {
        names[s] = composite_name(arena, states[s]);
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
    std::vector<StateIndex> rank(count);
    for (std::size_t r = 0; r < count; ++r) {
        rank[order[r]] = static_cast<StateIndex>(r);
    }

    FsmParts parts;
    parts.id = arena.id();
    for (const auto& v : arena.vertices()) {
        parts.inputs.unite(v.machine->inputs());
        parts.outputs.unite(v.machine->outputs());
    }
    parts.states.reserve(count);
    parts.output_map.reserve(count);
    std::vector<CompositeState> ordered;
    ordered.reserve(count);
    for (auto s : order) {
        parts.states.push_back(std::move(names[s]));
        SymbolSet out;
        for (VertexIndex i = 0; i < arena.size(); ++i) {
            out.unite(arena.machine(i).output(states[s].parts[i]));
        }
        parts.output_map.push_back(std::move(out));
        ordered.push_back(std::move(states[s]));
    }
    if (initial) {
        parts.initial = rank[*initial];
    }
    for (std::size_t s = 0; s < count; ++s) {
        for (const auto& [label, dst] : edges[s]) {
            parts.transitions.push_back({rank[s], label, rank[dst]});
        }
    }
    std::vector<std::string> vertex_order;
    for (const auto& v : arena.vertices()) {
        vertex_order.push_back(v.id);
    }
    return CompositeFsm{Fsm::build(std::move(parts)), std::move(ordered), arena.id(), std::move(vertex_order)};
}

std::optional<CompositeState> composite_initial(const Arena& arena) {
    CompositeState x;
    for (const auto& v : arena.vertices()) {
        if (!v.machine->initial()) {
            return std::nullopt;
        }
        x.parts.push_back(*v.machine->initial());
    }
    return x;
}

}  // namespace

std::vector<std::string> part_names(const Arena& arena, const CompositeState& x) {
    check_state(arena, x);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < x.parts.size(); ++i) {
        out.push_back(arena.machine(static_cast<VertexIndex>(i)).state_name(x.parts[i]));
    }
    return out;
}

CompositeState composite_state(const Arena& arena, const std::vector<std::string>& names) {
    if (names.size() != arena.size()) {
        throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(arena.size()) + " component states, got " +
                                                  std::to_string(names.size()));
    }
    CompositeState x;
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto s = arena.machine(static_cast<VertexIndex>(i)).find_state(names[i]);
        if (!s) {
            throw Error(ErrorCode::UnknownComponentState, "'" + names[i] + "' is not a state of vertex '" +
                                                              arena.vertex(static_cast<VertexIndex>(i)).id + "'");
        }
        x.parts.push_back(*s);
    }
    return x;
}

std::string composite_name(const Arena& arena, const CompositeState& x) {
    std::string out;
    for (std::size_t i = 0; i < x.parts.size(); ++i) {
        if (i > 0) {
            out += kCompositeSeparator;
        }
        out += arena.machine(static_cast<VertexIndex>(i)).state_name(x.parts[i]);
    }
    return out;
}

std::vector<CompositeStep> composite_successors(const Arena& arena, const CompositeState& x) {
    check_state(arena, x);
    std::vector<CompositeStep> out;
    successors_into(arena, x, out);
    return out;
}

boost::multiprecision::cpp_int state_count(const Arena& arena) {
    boost::multiprecision::cpp_int total = 1;
    for (const auto& v : arena.vertices()) {
        total *= v.machine->state_count();
    }
    return total;
}

CompositeFsm expand(const Arena& arena, const ExpandOptions& options) {
    const auto n = arena.size();
    std::vector<CompositeState> states;
    std::vector<std::vector<std::pair<SymbolSet, std::size_t>>> edges;
    std::optional<std::size_t> initial;
    std::vector<CompositeStep> steps;

    if (options.mode == ExpandMode::Full) {
        const auto total = state_count(arena);
        if (total > options.max_states) {
            throw Error(ErrorCode::GuardExceeded, "full expansion of arena '" + arena.id() + "' has " +
                                                      total.str() + " states, above the limit of " +
                                                      std::to_string(options.max_states));
        }
        const auto count = total.convert_to<std::size_t>();
        // Mixed radix, last vertex varies fastest.
        std::vector<std::size_t> stride(n, 1);
        for (std::size_t i = n; i-- > 1;) {
            stride[i - 1] = stride[i] * arena.machine(static_cast<VertexIndex>(i)).state_count();
        }
        auto encode = [&](const CompositeState& x) {
            std::size_t code = 0;
            for (std::size_t i = 0; i < n; ++i) {
                code += x.parts[i] * stride[i];
            }
            return code;
        };
        states.resize(count);
        edges.resize(count);
        for (std::size_t code = 0; code < count; ++code) {
            auto& x = states[code].parts;
            x.resize(n);
            auto rest = code;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = static_cast<StateIndex>(rest / stride[i]);
                rest %= stride[i];
            }
        }
        for (std::size_t code = 0; code < count; ++code) {
            steps.clear();
            successors_into(arena, states[code], steps);
            edges[code].reserve(steps.size());
            for (auto& step : steps) {
                edges[code].emplace_back(std::move(step.label), encode(step.target));
            }
        }
        if (auto x0 = composite_initial(arena)) {
            initial = encode(*x0);
        }
    } else {
        auto x0 = composite_initial(arena);
        if (!x0) {
            throw Error(ErrorCode::NoInitialState,
                        "accessible expansion of arena '" + arena.id() + "' needs every machine to declare an initial state");
        }
        std::unordered_map<CompositeState, std::size_t, CompositeHash> index;
        std::deque<std::size_t> frontier;
        auto visit = [&](CompositeState x) {
            auto [it, fresh] = index.emplace(x, states.size());
            if (fresh) {
                if (states.size() >= options.max_states) {
                    throw Error(ErrorCode::GuardExceeded, "accessible part of arena '" + arena.id() +
                                                              "' exceeds the limit of " +
                                                              std::to_string(options.max_states) + " states");
                }
                states.push_back(std::move(x));
                edges.emplace_back();
                frontier.push_back(it->second);
            }
            return it->second;
        };
        initial = visit(*x0);
        while (!frontier.empty()) {
            const auto s = frontier.front();
            frontier.pop_front();
            steps.clear();
            successors_into(arena, states[s], steps);
            std::vector<std::pair<SymbolSet, std::size_t>> out;
            out.reserve(steps.size());
            for (auto& step : steps) {
                const auto dst = visit(std::move(step.target));
                out.emplace_back(std::move(step.label), dst);
            }
            edges[s] = std::move(out);
        }
    }
    return assemble(arena, std::move(states), edges, initial);
}

}  // namespace afsm
