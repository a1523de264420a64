#include "afsm/fsm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <stdexcept>
#include <unordered_map>

namespace afsm {

namespace {

void require_token(std::string_view text, std::string_view what, const std::optional<Position>& where = {}) {
    if (!is_token(text)) {
        throw Error(ErrorCode::InvalidToken, std::string(what) + " '" + std::string(text) + "' is not a valid token",
                    where);
    }
}

}  // namespace

Fsm Fsm::build(FsmParts parts) {
    require_token(parts.id, "machine id");
    if (parts.states.empty()) {
        throw Error(ErrorCode::EmptyStateSet, "machine '" + parts.id + "' declares no states");
    }
    if (parts.output_map.size() != parts.states.size()) {
        throw std::invalid_argument("Fsm::build: output_map must have one entry per state");
    }
    const auto n = parts.states.size();
    if (parts.initial && *parts.initial >= n) {
        throw Error(ErrorCode::BadInitial, "machine '" + parts.id + "': initial state index out of range");
    }
    for (const auto& s : parts.states) {
        require_token(s, "state id");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!parts.output_map[i].is_subset_of(parts.outputs)) {
            throw Error(ErrorCode::AlphabetViolation, "machine '" + parts.id + "': output of state '" + parts.states[i] +
                                                          "' " + parts.output_map[i].to_string() +
                                                          " is outside the output alphabet " +
                                                          parts.outputs.to_string());
        }
    }
    for (const auto& t : parts.transitions) {
        if (t.src >= n || t.dst >= n) {
            throw Error(ErrorCode::MissingState, "machine '" + parts.id + "': transition endpoint out of range");
        }
        if (!t.label.is_subset_of(parts.inputs)) {
            throw Error(ErrorCode::AlphabetViolation, "machine '" + parts.id + "': label " + t.label.to_string() +
                                                          " is outside the input alphabet " +
                                                          parts.inputs.to_string());
        }
    }

    // Canonical state order.
    std::vector<StateIndex> order(n);
    std::iota(order.begin(), order.end(), StateIndex{0});
    std::sort(order.begin(), order.end(), [&](StateIndex a, StateIndex b) { return parts.states[a] < parts.states[b]; });
    std::vector<StateIndex> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
        rank[order[i]] = static_cast<StateIndex>(i);
    }

    Fsm m;
    m.id_ = std::move(parts.id);
    m.inputs_ = std::move(parts.inputs);
    m.outputs_ = std::move(parts.outputs);
    m.states_.reserve(n);
    m.output_map_.reserve(n);
    for (auto old : order) {
        m.states_.push_back(std::move(parts.states[old]));
        m.output_map_.push_back(std::move(parts.output_map[old]));
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (m.states_[i - 1] == m.states_[i]) {
            throw Error(ErrorCode::DuplicateName, "machine '" + m.id_ + "': state '" + m.states_[i] + "' declared twice");
        }
    }
    if (parts.initial) {
        m.initial_ = rank[*parts.initial];
    }

    // Labels are ordered by their sorted member names; rank each distinct label once.
    std::map<SymbolSet, std::uint32_t> label_rank;
    for (const auto& t : parts.transitions) {
        label_rank.emplace(t.label, 0);
    }
    {
        std::vector<const SymbolSet*> labels;
        std::vector<std::vector<std::string>> keys;
        labels.reserve(label_rank.size());
        for (const auto& [label, _] : label_rank) {
            labels.push_back(&label);
            keys.push_back(label.sorted_names());
        }
        std::vector<std::uint32_t> idx(labels.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
        for (std::uint32_t r = 0; r < idx.size(); ++r) {
            label_rank[*labels[idx[r]]] = r;
        }
    }

    struct Keyed {
        StateIndex src;
        std::uint32_t label;
        StateIndex dst;
        std::size_t at;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(parts.transitions.size());
    for (std::size_t i = 0; i < parts.transitions.size(); ++i) {
        auto& t = parts.transitions[i];
        keyed.push_back({rank[t.src], label_rank[t.label], rank[t.dst], i});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.src, a.label, a.dst) < std::tie(b.src, b.label, b.dst);
    });
    m.transitions_.reserve(keyed.size());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        const auto& k = keyed[i];
        if (i > 0 && keyed[i - 1].src == k.src && keyed[i - 1].label == k.label && keyed[i - 1].dst == k.dst) {
            const auto& t = parts.transitions[k.at];
            throw Error(ErrorCode::DuplicateTransition, "machine '" + m.id_ + "': transition " + m.states_[k.src] + " " +
                                                            t.label.to_string() + " " + m.states_[k.dst] +
                                                            " declared twice");
        }
        m.transitions_.push_back({k.src, std::move(parts.transitions[k.at].label), k.dst});
    }

    m.out_offsets_.assign(n + 1, 0);
    for (const auto& t : m.transitions_) {
        ++m.out_offsets_[t.src + 1];
    }
    std::partial_sum(m.out_offsets_.begin(), m.out_offsets_.end(), m.out_offsets_.begin());
    return m;
}

std::optional<StateIndex> Fsm::find_state(std::string_view name) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), name,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == states_.end() || *it != name) {
        return std::nullopt;
    }
    return static_cast<StateIndex>(it - states_.begin());
}

std::span<const Transition> Fsm::outgoing(StateIndex s) const {
    if (s >= states_.size()) {
        throw std::out_of_range("Fsm::outgoing: state index out of range");
    }
    return std::span<const Transition>(transitions_).subspan(out_offsets_[s], out_offsets_[s + 1] - out_offsets_[s]);
}

Fsm Fsm::renamed(std::string id) const {
    require_token(id, "machine id");
    Fsm copy = *this;
    copy.id_ = std::move(id);
    return copy;
}

Fsm validate_fsm(const RawFsm& raw) {
    require_token(raw.id, "machine id", raw.where);
    if (raw.states.empty()) {
        throw Error(ErrorCode::EmptyStateSet, "machine '" + raw.id + "' declares no states", raw.where);
    }

    FsmParts parts;
    parts.id = raw.id;
    parts.inputs = SymbolSet::from_names(raw.inputs);
    parts.outputs = SymbolSet::from_names(raw.outputs);

    std::unordered_map<std::string_view, StateIndex> index;
    for (const auto& s : raw.states) {
        require_token(s.name, "state id", s.where);
        if (!index.emplace(s.name, static_cast<StateIndex>(parts.states.size())).second) {
            throw Error(ErrorCode::DuplicateName, "machine '" + raw.id + "': state '" + s.name + "' declared twice",
                        s.where);
        }
        auto out = SymbolSet::from_names(s.outputs);
        if (!out.is_subset_of(parts.outputs)) {
            throw Error(ErrorCode::AlphabetViolation,
                        "machine '" + raw.id + "': output " + out.minus(parts.outputs).to_string() + " of state '" +
                            s.name + "' is not declared in outputs",
                        s.where);
        }
        parts.states.push_back(s.name);
        parts.output_map.push_back(std::move(out));
    }

    if (raw.initial) {
        auto it = index.find(*raw.initial);
        if (it == index.end()) {
            throw Error(ErrorCode::BadInitial, "machine '" + raw.id + "': initial state '" + *raw.initial +
                                                   "' is not declared",
                        raw.initial_where);
        }
        parts.initial = it->second;
    }

    std::set<std::tuple<StateIndex, SymbolSet, StateIndex>> seen;
    for (const auto& t : raw.transitions) {
        auto src = index.find(t.src);
        if (src == index.end()) {
            throw Error(ErrorCode::MissingState,
                        "machine '" + raw.id + "': transition source '" + t.src + "' is not declared", t.where);
        }
        auto dst = index.find(t.dst);
        if (dst == index.end()) {
            throw Error(ErrorCode::MissingState,
                        "machine '" + raw.id + "': transition target '" + t.dst + "' is not declared", t.where);
        }
        auto label = SymbolSet::from_names(t.label);
        if (!label.is_subset_of(parts.inputs)) {
            throw Error(ErrorCode::AlphabetViolation,
                        "machine '" + raw.id + "': label symbol " + label.minus(parts.inputs).to_string() +
                            " is not declared in inputs",
                        t.where);
        }
        if (!seen.emplace(src->second, label, dst->second).second) {
            throw Error(ErrorCode::DuplicateTransition,
                        "machine '" + raw.id + "': transition " + t.src + " " + label.to_string() + " " + t.dst +
                            " declared twice",
                        t.where);
        }
        parts.transitions.push_back({src->second, std::move(label), dst->second});
    }

    try {
        return Fsm::build(std::move(parts));
    } catch (const Error& e) {
        if (e.where() || !raw.where) {
            throw;
        }
        throw Error(e.code(), e.detail(), raw.where);
    }
}

}  // namespace afsm
