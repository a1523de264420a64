#include <doctest.h>

#include <algorithm>

#include "afsm/arena.hpp"
#include "afsm/format.hpp"
#include "fixtures.hpp"

using namespace afsm;

namespace {

RawFsm euclid_m1() {
    RawFsm r;
    r.id = "M1";
    r.inputs = {"z1"};
    r.outputs = {"z1sq"};
    r.states = {{"1", {}, {}}, {"2", {"z1sq"}, {}}};
    r.initial = "1";
    r.transitions = {{"1", {"z1"}, "2", {}}, {"2", {}, "1", {}}};
    return r;
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an afsm::Error");
    return ErrorCode::SyntaxError;
}

}  // namespace

TEST_CASE("symbols are interned tokens") {
    CHECK(Symbol::intern("CRP*") == Symbol::intern("CRP*"));
    CHECK_FALSE(Symbol::intern("a") == Symbol::intern("b"));
    CHECK(is_token("z1sq"));
    CHECK(is_token("x+"));
    CHECK_FALSE(is_token(""));
    CHECK_FALSE(is_token("a b"));
    CHECK_FALSE(is_token("{a}"));
    CHECK(code_of([] { Symbol::intern("a,b"); }) == ErrorCode::InvalidToken);
}

TEST_CASE("symbol sets use extensional equality") {
    auto ab = SymbolSet::from_names({"a", "b"});
    auto ba = SymbolSet::from_names({"b", "a", "b"});
    CHECK(ab == ba);
    CHECK(ab.size() == 2);
    CHECK(ab.to_string() == "{a,b}");
    CHECK(SymbolSet{}.to_string() == "{}");
    CHECK(ab.minus(SymbolSet::from_names({"a"})) == SymbolSet::from_names({"b"}));
    CHECK(SymbolSet::from_names({"a"}).is_subset_of(ab));
    CHECK(SymbolSet{}.is_subset_of(ab));
}

TEST_CASE("validate_fsm accepts the first squaring machine") {
    const auto m = validate_fsm(euclid_m1());
    CHECK(m.state_count() == 2);
    CHECK(m.transitions().size() == 2);
    CHECK(m.initial() == m.find_state("1"));
    CHECK(m.output(*m.find_state("2")) == SymbolSet::from_names({"z1sq"}));
}

TEST_CASE("validate_fsm accepts a one-state machine") {
    RawFsm r;
    r.id = "m";
    r.states = {{"s", {}, {}}};
    const auto m = validate_fsm(r);
    CHECK(m.state_count() == 1);
    CHECK(m.transitions().empty());
    CHECK_FALSE(m.initial());
}

TEST_CASE("validate_fsm rejects broken descriptions") {
    auto r = euclid_m1();
    r.transitions.push_back({"1", {"z1"}, "9", Position{7, 3}});
    try {
        validate_fsm(r);
        FAIL("expected MissingState");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingState);
        REQUIRE(e.where());
        CHECK(e.where()->line == 7);
    }

    r = euclid_m1();
    r.transitions.push_back({"1", {"zz"}, "2", {}});
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::AlphabetViolation);

    r = euclid_m1();
    r.states[0].outputs = {"nope"};
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::AlphabetViolation);

    r = euclid_m1();
    r.states.clear();
    r.transitions.clear();
    r.initial.reset();
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::EmptyStateSet);

    r = euclid_m1();
    r.initial = "3";
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::BadInitial);

    r = euclid_m1();
    r.transitions.push_back(r.transitions.front());
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::DuplicateTransition);

    r = euclid_m1();
    r.states.push_back(r.states.front());
    CHECK(code_of([&] { validate_fsm(r); }) == ErrorCode::DuplicateName);
}

TEST_CASE("validation is deterministic and canonical") {
    auto r = euclid_m1();
    auto shuffled = r;
    std::reverse(shuffled.states.begin(), shuffled.states.end());
    std::reverse(shuffled.transitions.begin(), shuffled.transitions.end());
    CHECK(validate_fsm(r) == validate_fsm(shuffled));
    const auto m = validate_fsm(r);
    CHECK(std::is_sorted(m.states().begin(), m.states().end()));
}

TEST_CASE("validate_arena") {
    MachineLibrary lib;
    lib.emplace("M1", std::make_shared<const Fsm>(validate_fsm(euclid_m1())));
    RawArena raw;
    raw.id = "A";
    raw.nodes = {{"x", "M1", {}}, {"y", "M1", {}}, {"z", "M1", {}}};
    raw.edges = {{"x", "z", {}}, {"y", "z", {}}};
    const auto a = validate_arena(raw, lib);
    CHECK(a.size() == 3);
    CHECK(a.edges().size() == 2);

    RawArena single;
    single.id = "S";
    single.nodes = {{"x", "M1", {}}};
    CHECK(validate_arena(single, lib).edges().empty());

    auto bad = raw;
    bad.edges.push_back({"x", "x", Position{4, 1}});
    CHECK(code_of([&] { validate_arena(bad, lib); }) == ErrorCode::SelfLoop);
    bad = raw;
    bad.edges.push_back({"x", "q", {}});
    CHECK(code_of([&] { validate_arena(bad, lib); }) == ErrorCode::DanglingEdge);
    bad = raw;
    bad.nodes.push_back({"q", "Nope", {}});
    CHECK(code_of([&] { validate_arena(bad, lib); }) == ErrorCode::UnknownMachine);
    bad = raw;
    bad.nodes.clear();
    bad.edges.clear();
    CHECK(code_of([&] { validate_arena(bad, lib); }) == ErrorCode::EmptyArena);
}

TEST_CASE("predecessors on the norm arena") {
    const auto doc = testing::load_fixture("euclid.afsm");
    const auto& a = *doc.find_arena("A");
    CHECK(predecessors(a, "M3") == std::vector<std::string>{"M1", "M2"});
    CHECK(predecessors(a, "M1").empty());
    CHECK(predecessors(a, "M2").empty());
    CHECK(code_of([&] { predecessors(a, "M9"); }) == ErrorCode::UnknownVertex);

    // Direct enumeration agrees on every vertex of the E. coli arena.
    const auto eco = testing::load_fixture("ecoli.afsm");
    const auto& e = *eco.find_arena("Ecoli");
    for (const auto& v : e.vertices()) {
        std::vector<std::string> expected;
        for (auto [x, y] : e.edges()) {
            if (e.vertex(y).id == v.id) {
                expected.push_back(e.vertex(x).id);
            }
        }
        auto got = predecessors(e, v.id);
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
    }
}
