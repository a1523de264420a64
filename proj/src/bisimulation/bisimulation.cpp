#include "afsm/bisimulation.hpp"

#include <algorithm>
#include <unordered_map>

#include "afsm/partition_refinement.hpp"

namespace afsm {

bool Relation::contains(StateIndex a, StateIndex b) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

bool Relation::is_total(std::size_t left_count, std::size_t right_count) const {
    std::vector<bool> left(left_count, false);
    std::vector<bool> right(right_count, false);
    for (auto [a, b] : pairs) {
        left[a] = true;
        right[b] = true;
    }
    return std::all_of(left.begin(), left.end(), [](bool x) { return x; }) &&
           std::all_of(right.begin(), right.end(), [](bool x) { return x; });
}

namespace {

// Moore machine -> unlabeled graph: every transition (x, u, x') becomes a
// node t with edges x -> t -> x'. States start in blocks keyed by output
// set, transition nodes in blocks keyed by label. Bisimilarity of states
// then coincides with the coarsest stable partition.
Partition refine(const Fsm* const* machines, std::size_t count) {
    std::size_t state_total = 0;
    std::size_t trans_total = 0;
    for (std::size_t i = 0; i < count; ++i) {
        state_total += machines[i]->state_count();
        trans_total += machines[i]->transitions().size();
    }
    const auto nodes = state_total + trans_total;

    std::vector<std::uint32_t> labels(nodes);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(2 * trans_total);

    std::unordered_map<SymbolSet, std::uint32_t, SymbolSetHash> output_ids;
    std::unordered_map<SymbolSet, std::uint32_t, SymbolSetHash> label_ids;
    std::vector<std::uint32_t> base(count);

    std::uint32_t next_state = 0;
    for (std::size_t i = 0; i < count; ++i) {
        base[i] = next_state;
        for (std::size_t s = 0; s < machines[i]->state_count(); ++s) {
            auto [it, _] = output_ids.emplace(machines[i]->output(static_cast<StateIndex>(s)),
                                              static_cast<std::uint32_t>(output_ids.size()));
            labels[next_state++] = it->second;
        }
    }
    const auto output_kinds = static_cast<std::uint32_t>(output_ids.size());
    auto next_trans = static_cast<std::uint32_t>(state_total);
    for (std::size_t i = 0; i < count; ++i) {
        for (const auto& t : machines[i]->transitions()) {
            auto [it, _] = label_ids.emplace(t.label, static_cast<std::uint32_t>(label_ids.size()));
            labels[next_trans] = output_kinds + it->second;
            edges.emplace_back(base[i] + t.src, next_trans);
            edges.emplace_back(next_trans, base[i] + t.dst);
            ++next_trans;
        }
    }

    const auto blocks = coarsest_stable_partition(nodes, edges, labels);

    Partition p;
    std::unordered_map<std::uint32_t, std::uint32_t> renumber;
    for (std::size_t i = 0; i < count; ++i) {
        auto& of = p.block_of[i];
        of.resize(machines[i]->state_count());
        for (std::size_t s = 0; s < of.size(); ++s) {
            auto [it, fresh] = renumber.emplace(blocks[base[i] + s], static_cast<std::uint32_t>(p.blocks.size()));
            if (fresh) {
                p.blocks.emplace_back();
            }
            of[s] = it->second;
            p.blocks[it->second].push_back({static_cast<Side>(i), static_cast<StateIndex>(s)});
        }
    }
    return p;
}

}  // namespace

Partition bisimulation_partition(const Fsm& m1, const Fsm& m2) {
    const Fsm* machines[] = {&m1, &m2};
    return refine(machines, 2);
}

Partition bisimulation_partition(const Fsm& m) {
    const Fsm* machines[] = {&m};
    return refine(machines, 1);
}

Relation max_bisimulation(const Fsm& m1, const Fsm& m2) {
    const auto p = bisimulation_partition(m1, m2);
    Relation r;
    for (const auto& block : p.blocks) {
        // Blocks list First-side states before Second-side states.
        auto split = std::find_if(block.begin(), block.end(), [](StateRef s) { return s.machine == Side::Second; });
        for (auto a = block.begin(); a != split; ++a) {
            for (auto b = split; b != block.end(); ++b) {
                r.pairs.emplace_back(a->state, b->state);
            }
        }
    }
    std::sort(r.pairs.begin(), r.pairs.end());
    return r;
}

bool is_bisimilar(const Fsm& m1, const Fsm& m2) {
    if (m1.initial().has_value() != m2.initial().has_value()) {
        throw Error(ErrorCode::InitialStateMismatch, "machine '" + m1.id() + "' and machine '" + m2.id() +
                                                         "' disagree on declaring an initial state");
    }
    const auto p = bisimulation_partition(m1, m2);
    if (m1.initial()) {
        return p.block_of[0][*m1.initial()] == p.block_of[1][*m2.initial()];
    }
    for (const auto& block : p.blocks) {
        const bool has_first = block.front().machine == Side::First;
        const bool has_second = block.back().machine == Side::Second;
        if (!has_first || !has_second) {
            return false;
        }
    }
    return true;
}

Fsm quotient(const Fsm& m) {
    const auto p = bisimulation_partition(m);
    FsmParts parts;
    parts.id = m.id();
    parts.inputs = m.inputs();
    parts.outputs = m.outputs();
    parts.states.reserve(p.blocks.size());
    for (const auto& block : p.blocks) {
        // States are sorted by name, so the first member is the least.
        parts.states.push_back(m.state_name(block.front().state));
        parts.output_map.push_back(m.output(block.front().state));
    }
    const auto& of = p.block_of[0];
    if (m.initial()) {
        parts.initial = of[*m.initial()];
    }
    std::vector<Transition> ts;
    ts.reserve(m.transitions().size());
    for (const auto& t : m.transitions()) {
        ts.push_back({of[t.src], t.label, of[t.dst]});
    }
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
        return std::tie(a.src, a.label, a.dst) < std::tie(b.src, b.label, b.dst);
    });
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    parts.transitions = std::move(ts);
    return Fsm::build(std::move(parts));
}

bool is_minimal(const Fsm& m) {
    return bisimulation_partition(m).blocks.size() == m.state_count();
}

}  // namespace afsm
