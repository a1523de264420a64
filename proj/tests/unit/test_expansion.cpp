#include <doctest.h>

#include <set>

#include "afsm/bisimulation.hpp"
#include "afsm/expansion.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace afsm;
using testing::Rng;

namespace {

std::set<testing::NamedStep> steps_of(const Arena& arena, const CompositeFsm& e) {
    std::set<testing::NamedStep> out;
    for (const auto& t : e.machine.transitions()) {
        out.emplace(part_names(arena, e.parts[t.src]), t.label.sorted_names(), part_names(arena, e.parts[t.dst]));
    }
    return out;
}

SymbolSet set(std::initializer_list<std::string_view> names) {
    return SymbolSet::from_names(names);
}

std::vector<FsmPtr> machine_pool(Rng& rng, std::size_t count) {
    std::vector<FsmPtr> pool;
    for (std::size_t i = 0; i < count; ++i) {
        testing::FsmShape s;
        s.max_states = 3;
        s.max_transitions = 5;
        s.input_symbols = 3;
        s.output_symbols = 3;
        s.id = "P" + std::to_string(i);
        pool.push_back(std::make_shared<const Fsm>(testing::random_fsm(rng, s)));
    }
    return pool;
}

}  // namespace

TEST_CASE("successors in the norm arena") {
    const auto doc = testing::load_fixture("euclid.afsm");
    const auto& a = *doc.find_arena("A");
    auto s = composite_successors(a, composite_state(a, {"1", "3", "5"}));
    REQUIRE(s.size() == 1);
    CHECK(s[0].label == set({"z1", "z2"}));
    CHECK(part_names(a, s[0].target) == std::vector<std::string>{"2", "4", "6"});

    s = composite_successors(a, composite_state(a, {"2", "4", "6"}));
    REQUIRE(s.size() == 1);
    CHECK(s[0].label.empty());
    CHECK(part_names(a, s[0].target) == std::vector<std::string>{"1", "3", "7"});
}

TEST_CASE("malformed composite states are rejected") {
    const auto doc = testing::load_fixture("euclid.afsm");
    const auto& a = *doc.find_arena("A");
    CHECK_THROWS_AS(composite_state(a, {"1", "3"}), Error);
    CHECK_THROWS_AS(composite_state(a, {"1", "3", "9"}), Error);
    CompositeState bad{{0, 0}};
    try {
        composite_successors(a, bad);
        FAIL("expected ArityMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ArityMismatch);
    }
    CompositeState out_of_range{{0, 0, 7}};
    try {
        composite_successors(a, out_of_range);
        FAIL("expected UnknownComponentState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownComponentState);
    }
}

TEST_CASE("single-vertex successors are the machine's own transitions") {
    const auto doc = testing::load_fixture("ecoli.afsm");
    const auto m = doc.fsms.front();
    const auto a = Arena::build("one", {{"v", m}}, {});
    for (StateIndex s = 0; s < m->state_count(); ++s) {
        const auto steps = composite_successors(a, CompositeState{{s}});
        std::set<std::pair<SymbolSet, StateIndex>> got, want;
        for (const auto& st : steps) {
            got.emplace(st.label, st.target.parts[0]);
        }
        for (const auto& t : m->outgoing(s)) {
            want.emplace(t.label, t.dst);
        }
        CHECK(got == want);
    }
}

TEST_CASE("accessible expansion of the norm arena") {
    const auto doc = testing::load_fixture("euclid.afsm");
    const auto& a = *doc.find_arena("A");
    const auto e = expand(a, {ExpandMode::Accessible});
    const auto& m = e.machine;
    REQUIRE(m.state_count() == 3);
    CHECK(m.transitions().size() == 3);
    const auto s135 = *m.find_state("1.3.5");
    const auto s246 = *m.find_state("2.4.6");
    const auto s137 = *m.find_state("1.3.7");
    CHECK(m.initial() == s135);
    CHECK(m.output(s135).empty());
    CHECK(m.output(s246) == set({"z1sq", "z2sq"}));
    CHECK(m.output(s137) == set({"norm_z"}));
    CHECK(m.outgoing(s135).size() == 1);
    CHECK(m.outgoing(s135)[0].label == set({"z1", "z2"}));
    CHECK(m.outgoing(s135)[0].dst == s246);
    CHECK(m.outgoing(s246)[0].label.empty());
    CHECK(m.outgoing(s246)[0].dst == s137);
    CHECK(m.outgoing(s137)[0].label == set({"z1", "z2"}));
    CHECK(m.outgoing(s137)[0].dst == s246);
    CHECK(e.vertex_order == std::vector<std::string>{"M1", "M2", "M3"});
}

TEST_CASE("second counterexample arena has one transition") {
    const auto doc = testing::load_fixture("counterexample.afsm");
    const auto& a2 = *doc.find_arena("A2");
    const auto e = expand(a2, {ExpandMode::Accessible});
    const auto& m = e.machine;
    REQUIRE(m.transitions().size() == 1);
    const auto& t = m.transitions()[0];
    CHECK(t.label == set({"a", "c"}));
    CHECK(m.state_name(t.src) == "x0.x0");
    CHECK(m.state_name(t.dst) == "x+.x+");
    CHECK(m.output(t.src) == set({"b", "d", "e"}));
    CHECK(m.output(t.dst) == set({"f"}));
}

TEST_CASE("state counts") {
    const auto doc = testing::load_fixture("ecoli.afsm");
    CHECK(state_count(*doc.find_arena("EcoliMin")) == 55296);
    CHECK(state_count(*doc.find_arena("Ecoli")) == boost::multiprecision::cpp_int("3623878656"));
    const auto euclid = testing::load_fixture("euclid.afsm");
    const auto m1 = euclid.fsms.front();
    CHECK(state_count(Arena::build("one", {{"v", m1}}, {})) == 2);
}

TEST_CASE("full expansion of the minimal E. coli arena") {
    const auto doc = testing::load_fixture("ecoli.afsm");
    const auto e = expand(*doc.find_arena("EcoliMin"));
    CHECK(e.machine.state_count() == 55296);
    CHECK(e.machine.initial());
}

TEST_CASE("guard and missing initial states") {
    const auto doc = testing::load_fixture("ecoli.afsm");
    try {
        expand(*doc.find_arena("Ecoli"));
        FAIL("expected GuardExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GuardExceeded);
        CHECK(std::string(e.what()).find("3623878656") != std::string::npos);
    }
    CHECK_THROWS_AS(expand(*doc.find_arena("EcoliMin"), {ExpandMode::Full, 1000}), Error);
    CHECK_THROWS_AS(expand(*doc.find_arena("EcoliMin"), {ExpandMode::Accessible, 10}), Error);

    Rng rng(1);
    testing::FsmShape s;
    s.initial = false;
    const auto m = std::make_shared<const Fsm>(testing::random_fsm(rng, s));
    const auto a = Arena::build("noinit", {{"v", m}}, {});
    try {
        expand(a, {ExpandMode::Accessible});
        FAIL("expected NoInitialState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoInitialState);
    }
    CHECK_FALSE(expand(a).machine.initial());
}

TEST_CASE("expansion agrees with the direct product construction") {
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto pool = machine_pool(rng, 3);
        const auto a = testing::random_arena(rng, pool, 4, 0.4, "R");
        const auto e = expand(a);
        CHECK(e.machine.state_count() == state_count(a));
        CHECK(steps_of(a, e) == testing::naive_expansion(a));

        // Outputs are unions of component outputs.
        for (StateIndex s = 0; s < e.machine.state_count(); ++s) {
            SymbolSet want;
            for (VertexIndex v = 0; v < a.size(); ++v) {
                want.unite(a.machine(v).output(e.parts[s].parts[v]));
            }
            CHECK(e.machine.output(s) == want);
        }
    }
}

TEST_CASE("accessible part is the reachable restriction of the full expansion") {
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        const auto pool = machine_pool(rng, 3);
        const auto a = testing::random_arena(rng, pool, 4, 0.4, "R");
        const auto full = expand(a);
        const auto acc = expand(a, {ExpandMode::Accessible});
        std::set<std::string> reach;
        std::vector<StateIndex> stack{*full.machine.initial()};
        while (!stack.empty()) {
            const auto s = stack.back();
            stack.pop_back();
            if (!reach.insert(full.machine.state_name(s)).second) {
                continue;
            }
            for (const auto& t : full.machine.outgoing(s)) {
                stack.push_back(t.dst);
            }
        }
        CHECK(acc.machine.state_count() == reach.size());
        auto full_steps = steps_of(a, full);
        for (const auto& st : steps_of(a, acc)) {
            CHECK(full_steps.contains(st));
        }
        CHECK(is_bisimilar(full.machine, acc.machine));
    }
}

TEST_CASE("expansion is deterministic and strips only") {
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
        const auto pool = machine_pool(rng, 3);
        const auto a = testing::random_arena(rng, pool, 4, 0.5, "R");
        const auto e1 = expand(a);
        const auto e2 = expand(a);
        CHECK(e1.machine == e2.machine);
        // Every composite label is within the union of the component labels.
        SymbolSet all_inputs;
        for (const auto& v : a.vertices()) {
            all_inputs.unite(v.machine->inputs());
        }
        for (const auto& t : e1.machine.transitions()) {
            CHECK(t.label.is_subset_of(all_inputs));
        }
    }
}

TEST_CASE("single-vertex expansion is isomorphic to the machine") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        testing::FsmShape s;
        s.max_states = 6;
        s.max_transitions = 10;
        const auto m = std::make_shared<const Fsm>(testing::random_fsm(rng, s));
        const auto e = expand(Arena::build("one", {{"v", m}}, {}));
        CHECK(is_isomorphic(e.machine, *m, 64));
    }
}

TEST_CASE("composite deadlock has no successors") {
    FsmParts p;
    p.id = "stuck";
    p.states = {"s"};
    p.output_map = {SymbolSet{}};
    p.initial = 0;
    const auto stuck = std::make_shared<const Fsm>(Fsm::build(std::move(p)));
    const auto doc = testing::load_fixture("euclid.afsm");
    const auto a = Arena::build("D", {{"m", doc.fsms.front()}, {"s", stuck}}, {});
    CHECK(composite_successors(a, CompositeState{{0, 0}}).empty());
    CHECK(expand(a).machine.transitions().empty());
}
