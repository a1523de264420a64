#include "afsm/bisimulation.hpp"

namespace afsm {

namespace {

bool matched(std::span<const Transition> from, std::span<const Transition> to, const std::vector<char>& rel,
             std::size_t width, bool forward) {
    for (const auto& t : from) {
        bool found = false;
        for (const auto& u : to) {
            if (!(t.label == u.label)) {
                continue;
            }
            const auto cell = forward ? t.dst * width + u.dst : u.dst * width + t.dst;
            if (rel[cell]) {
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

}  // namespace

Relation naive_bisim_oracle(const Fsm& m1, const Fsm& m2, std::size_t max_pairs) {
    const auto n1 = m1.state_count();
    const auto n2 = m2.state_count();
    if (n1 * n2 > max_pairs) {
        throw Error(ErrorCode::TooLarge, "pair table of " + std::to_string(n1 * n2) + " entries exceeds the limit of " +
                                             std::to_string(max_pairs));
    }
    // rel[a * n2 + b]: (a, b) still a candidate pair.
    std::vector<char> rel(n1 * n2, 0);
    for (StateIndex a = 0; a < n1; ++a) {
        for (StateIndex b = 0; b < n2; ++b) {
            rel[a * n2 + b] = m1.output(a) == m2.output(b);
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (StateIndex a = 0; a < n1; ++a) {
            for (StateIndex b = 0; b < n2; ++b) {
                if (!rel[a * n2 + b]) {
                    continue;
                }
                if (!matched(m1.outgoing(a), m2.outgoing(b), rel, n2, true) ||
                    !matched(m2.outgoing(b), m1.outgoing(a), rel, n2, false)) {
                    rel[a * n2 + b] = 0;
                    changed = true;
                }
            }
        }
    }
    Relation r;
    for (StateIndex a = 0; a < n1; ++a) {
        for (StateIndex b = 0; b < n2; ++b) {
            if (rel[a * n2 + b]) {
                r.pairs.emplace_back(a, b);
            }
        }
    }
    return r;
}

}  // namespace afsm
