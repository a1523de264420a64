#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "afsm/bisimulation.hpp"

namespace afsm {

namespace {

using Edge = std::tuple<StateIndex, SymbolSet, StateIndex>;

bool same_shape(const Fsm& m1, const Fsm& m2) {
    if (m1.state_count() != m2.state_count() || m1.transitions().size() != m2.transitions().size() ||
        m1.initial().has_value() != m2.initial().has_value()) {
        return false;
    }
    auto outputs = [](const Fsm& m) {
        std::vector<SymbolSet> v(m.output_map().begin(), m.output_map().end());
        std::sort(v.begin(), v.end());
        return v;
    };
    return outputs(m1) == outputs(m2);
}

// Checks that `map` is a bijection X1 -> X2 satisfying every condition
// of an isomorphism.
bool verify(const Fsm& m1, const Fsm& m2, const std::vector<StateIndex>& map) {
    std::vector<bool> hit(m2.state_count(), false);
    for (StateIndex s = 0; s < m1.state_count(); ++s) {
        if (hit[map[s]] || !(m1.output(s) == m2.output(map[s]))) {
            return false;
        }
        hit[map[s]] = true;
    }
    if (m1.initial() && map[*m1.initial()] != *m2.initial()) {
        return false;
    }
    std::set<Edge> image;
    for (const auto& t : m1.transitions()) {
        image.emplace(map[t.src], t.label, map[t.dst]);
    }
    std::set<Edge> target;
    for (const auto& t : m2.transitions()) {
        target.emplace(t.src, t.label, t.dst);
    }
    return image == target;
}

// Local invariants a bijection must preserve: output, degrees and the
// multiset of outgoing / incoming labels.
struct Signature {
    SymbolSet output;
    std::vector<SymbolSet> out_labels;
    std::vector<SymbolSet> in_labels;
    bool initial = false;

    friend bool operator==(const Signature&, const Signature&) = default;
};

std::vector<Signature> signatures(const Fsm& m) {
    std::vector<Signature> sig(m.state_count());
    for (StateIndex s = 0; s < m.state_count(); ++s) {
        sig[s].output = m.output(s);
        sig[s].initial = m.initial() == s;
    }
    for (const auto& t : m.transitions()) {
        sig[t.src].out_labels.push_back(t.label);
        sig[t.dst].in_labels.push_back(t.label);
    }
    for (auto& s : sig) {
        std::sort(s.out_labels.begin(), s.out_labels.end());
        std::sort(s.in_labels.begin(), s.in_labels.end());
    }
    return sig;
}

class Backtracker {
public:
    Backtracker(const Fsm& m1, const Fsm& m2) : m1_(m1), m2_(m2), map_(m1.state_count(), kUnset), used_(m2.state_count()) {
        const auto s1 = signatures(m1);
        const auto s2 = signatures(m2);
        candidates_.resize(m1.state_count());
        for (StateIndex a = 0; a < m1.state_count(); ++a) {
            for (StateIndex b = 0; b < m2.state_count(); ++b) {
                if (s1[a] == s2[b]) {
                    candidates_[a].push_back(b);
                }
            }
        }
        for (const auto& t : m2.transitions()) {
            edges2_.emplace(t.src, t.label, t.dst);
        }
        order_.resize(m1.state_count());
        for (StateIndex a = 0; a < m1.state_count(); ++a) {
            order_[a] = a;
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&](auto a, auto b) { return candidates_[a].size() < candidates_[b].size(); });
    }

    bool solve() { return assign(0); }
    const std::vector<StateIndex>& mapping() const { return map_; }

private:
    static constexpr StateIndex kUnset = static_cast<StateIndex>(-1);

    bool consistent(StateIndex a, StateIndex b) const {
        for (const auto& t : m1_.transitions()) {
            if (t.src != a && t.dst != a) {
                continue;
            }
            const auto src = t.src == a ? b : map_[t.src];
            const auto dst = t.dst == a ? b : map_[t.dst];
            if (src == kUnset || dst == kUnset) {
                continue;
            }
            if (!edges2_.contains({src, t.label, dst})) {
                return false;
            }
        }
        return true;
    }

    bool assign(std::size_t depth) {
        if (depth == order_.size()) {
            return verify(m1_, m2_, map_);
        }
        const auto a = order_[depth];
        for (auto b : candidates_[a]) {
            if (used_[b] || !consistent(a, b)) {
                continue;
            }
            map_[a] = b;
            used_[b] = true;
            if (assign(depth + 1)) {
                return true;
            }
            map_[a] = kUnset;
            used_[b] = false;
        }
        return false;
    }

    const Fsm& m1_;
    const Fsm& m2_;
    std::vector<StateIndex> map_;
    std::vector<bool> used_;
    std::vector<std::vector<StateIndex>> candidates_;
    std::vector<StateIndex> order_;
    std::set<Edge> edges2_;
};

}  // namespace

bool is_isomorphic(const Fsm& m1, const Fsm& m2, std::size_t max_class_size) {
    if (!same_shape(m1, m2)) {
        return false;
    }
    if (is_minimal(m1) && is_minimal(m2)) {
        // Any isomorphism is a bisimulation, and between minimal machines
        // R* relates each state to at most one partner. So R* itself must
        // be the bijection.
        const auto r = max_bisimulation(m1, m2);
        if (r.size() != m1.state_count()) {
            return false;
        }
        std::vector<StateIndex> map(m1.state_count(), static_cast<StateIndex>(-1));
        for (auto [a, b] : r.pairs) {
            if (map[a] != static_cast<StateIndex>(-1)) {
                return false;
            }
            map[a] = b;
        }
        return verify(m1, m2, map);
    }

    std::map<SymbolSet, std::size_t> class_sizes;
    for (const auto& out : m1.output_map()) {
        if (++class_sizes[out] > max_class_size) {
            throw Error(ErrorCode::TooLargeForGeneralIso,
                        "machine '" + m1.id() + "' is not minimal and has more than " + std::to_string(max_class_size) +
                            " states with output " + out.to_string());
        }
    }
    Backtracker search(m1, m2);
    return search.solve();
}

}  // namespace afsm
