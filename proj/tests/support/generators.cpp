#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace afsm::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

SymbolSet random_subset(Rng& rng, const std::vector<Symbol>& pool) {
    std::vector<Symbol> out;
    for (auto s : pool) {
        if (rng() & 1) {
            out.push_back(s);
        }
    }
    return SymbolSet(std::move(out));
}

std::vector<Symbol> symbols(const char* stem, std::size_t n) {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(Symbol::intern(stem + std::to_string(i)));
    }
    return out;
}

FsmParts parts_of(const Fsm& m) {
    FsmParts p;
    p.id = m.id();
    p.inputs = m.inputs();
    p.outputs = m.outputs();
    p.states.assign(m.states().begin(), m.states().end());
    p.output_map.assign(m.output_map().begin(), m.output_map().end());
    p.initial = m.initial();
    p.transitions.assign(m.transitions().begin(), m.transitions().end());
    return p;
}

}  // namespace

Fsm random_fsm(Rng& rng, const FsmShape& shape) {
    const auto ins = symbols("i", shape.input_symbols);
    const auto outs = symbols("o", shape.output_symbols);
    FsmParts p;
    p.id = shape.id;
    p.inputs = SymbolSet(ins);
    p.outputs = SymbolSet(outs);
    const auto n = pick(rng, 1, shape.max_states);
    for (std::size_t s = 0; s < n; ++s) {
        p.states.push_back("s" + std::to_string(s));
        p.output_map.push_back(random_subset(rng, outs));
    }
    if (shape.initial) {
        p.initial = static_cast<StateIndex>(pick(rng, 0, n - 1));
    }
    std::set<std::tuple<StateIndex, SymbolSet, StateIndex>> seen;
    const auto t = pick(rng, 0, shape.max_transitions);
    for (std::size_t k = 0; k < t; ++k) {
        const auto src = static_cast<StateIndex>(pick(rng, 0, n - 1));
        const auto dst = static_cast<StateIndex>(pick(rng, 0, n - 1));
        auto label = random_subset(rng, ins);
        if (seen.emplace(src, label, dst).second) {
            p.transitions.push_back({src, std::move(label), dst});
        }
    }
    return Fsm::build(std::move(p));
}

Fsm inflate(Rng& rng, const Fsm& m, std::size_t extra_states) {
    auto p = parts_of(m);
    const auto n = static_cast<StateIndex>(m.state_count());
    std::vector<StateIndex> original_of;  // copy k -> original state
    for (std::size_t k = 0; k < extra_states; ++k) {
        const auto orig = static_cast<StateIndex>(pick(rng, 0, n - 1));
        original_of.push_back(orig);
        std::string name = "c" + std::to_string(k);
        while (m.find_state(name) || std::find(p.states.begin(), p.states.end(), name) != p.states.end()) {
            name += "'";
        }
        p.states.push_back(std::move(name));
        p.output_map.push_back(m.output(orig));
    }
    std::vector<Transition> out;
    std::set<std::tuple<StateIndex, SymbolSet, StateIndex>> seen;
    auto add = [&](Transition t) {
        if (seen.emplace(t.src, t.label, t.dst).second) {
            out.push_back(std::move(t));
        }
    };
    // Every transition into x may also (or instead) target a copy of x.
    auto targets = [&](StateIndex dst) {
        std::vector<StateIndex> ts{dst};
        for (std::size_t k = 0; k < original_of.size(); ++k) {
            if (original_of[k] == dst) {
                ts.push_back(n + static_cast<StateIndex>(k));
            }
        }
        std::vector<StateIndex> chosen;
        for (auto x : ts) {
            if (rng() & 1) {
                chosen.push_back(x);
            }
        }
        if (chosen.empty()) {
            chosen.push_back(ts[pick(rng, 0, ts.size() - 1)]);
        }
        return chosen;
    };
    for (std::size_t k = 0; k <= original_of.size(); ++k) {
        for (const auto& t : m.transitions()) {
            const bool from_original = k == original_of.size();
            if (!from_original && t.src != original_of[k]) {
                continue;
            }
            const auto src = from_original ? t.src : n + static_cast<StateIndex>(k);
            for (auto dst : targets(t.dst)) {
                add({src, t.label, dst});
            }
        }
    }
    p.transitions = std::move(out);
    return Fsm::build(std::move(p));
}

Fsm rename_states(Rng& rng, const Fsm& m, const std::string& prefix) {
    auto p = parts_of(m);
    std::vector<std::size_t> perm(m.state_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t s = 0; s < perm.size(); ++s) {
        p.states[s] = prefix + std::to_string(perm[s]);
    }
    return Fsm::build(std::move(p));
}

Arena random_arena(Rng& rng, const std::vector<FsmPtr>& pool, std::size_t max_vertices, double edge_probability,
                   const std::string& id) {
    const auto n = pick(rng, 1, max_vertices);
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) {
        vs.push_back({"v" + std::to_string(i), pool[pick(rng, 0, pool.size() - 1)]});
    }
    std::bernoulli_distribution coin(edge_probability);
    std::vector<std::pair<VertexIndex, VertexIndex>> es;
    for (VertexIndex a = 0; a < n; ++a) {
        for (VertexIndex b = 0; b < n; ++b) {
            if (a != b && coin(rng)) {
                es.emplace_back(a, b);
            }
        }
    }
    return Arena::build(id, std::move(vs), std::move(es));
}

Arena permute_arena(Rng& rng, const Arena& a, const std::string& id) {
    std::vector<VertexIndex> pos(a.size());
    std::iota(pos.begin(), pos.end(), 0);
    std::shuffle(pos.begin(), pos.end(), rng);
    std::vector<Vertex> vs(a.size());
    for (VertexIndex v = 0; v < a.size(); ++v) {
        vs[pos[v]] = {"w" + std::to_string(v), a.vertex(v).machine};
    }
    std::vector<std::pair<VertexIndex, VertexIndex>> es;
    for (auto [x, y] : a.edges()) {
        es.emplace_back(pos[x], pos[y]);
    }
    return Arena::build(id, std::move(vs), std::move(es));
}

ModelDocument random_document(Rng& rng) {
    ModelDocument doc;
    const auto machines = pick(rng, 1, 4);
    for (std::size_t i = 0; i < machines; ++i) {
        FsmShape shape;
        shape.max_states = 6;
        shape.max_transitions = 10;
        shape.initial = rng() & 1;
        shape.id = "F" + std::to_string(i);
        doc.fsms.push_back(std::make_shared<const Fsm>(random_fsm(rng, shape)));
    }
    // Shuffle so declaration order differs from canonical order.
    std::shuffle(doc.fsms.begin(), doc.fsms.end(), rng);
    const auto arenas = pick(rng, 0, 2);
    for (std::size_t i = 0; i < arenas; ++i) {
        doc.arenas.push_back(random_arena(rng, doc.fsms, 5, 0.3, "A" + std::to_string(i)));
    }
    return doc;
}

}  // namespace afsm::testing
