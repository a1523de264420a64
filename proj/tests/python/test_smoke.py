import os
import pathlib

import pytest

import afsm

FIXTURES = pathlib.Path(os.environ.get("AFSM_FIXTURE_DIR", pathlib.Path(__file__).parents[2] / "fixtures"))

TOGGLE = """
fsm T
  inputs {a}
  outputs {p}
  state lo {}
  state hi {p}
  initial lo
  trans lo {a} hi
  trans hi {} lo
end

fsm U
  inputs {a}
  outputs {p}
  state u0 {}
  state u1 {p}
  state u2 {}
  initial u0
  trans u0 {a} u1
  trans u1 {} u2
  trans u2 {a} u1
end
"""


def test_parse_and_round_trip():
    doc = afsm.parse(TOGGLE)
    assert set(doc.fsms) == {"T", "U"}
    t = doc.fsms["T"]
    assert t.states == ["hi", "lo"]
    assert t.initial == "lo"
    assert t.output("hi") == ["p"]
    again = afsm.parse(doc.serialize())
    assert again.serialize() == doc.serialize()


def test_bisimulation():
    doc = afsm.parse(TOGGLE)
    t, u = doc.fsms["T"], doc.fsms["U"]
    assert afsm.is_bisimilar(t, u)
    assert sorted(afsm.max_bisimulation(t, u)) == sorted(afsm.naive_bisim_oracle(t, u))
    q = afsm.quotient(u)
    assert len(q) == 2
    assert afsm.is_isomorphic(q, t)


def test_errors_carry_codes():
    with pytest.raises(afsm.AfsmError) as info:
        afsm.parse("fsm X\n  inputs {}\n  outputs {}\nend\n")
    assert info.value.args[0] == "EmptyStateSet"


def test_euclid_fixture():
    doc = afsm.parse_file(str(FIXTURES / "euclid.afsm"))
    arena = doc.arenas["A"]
    flat = afsm.expand(arena)
    assert afsm.state_count(arena) == len(flat)
    classes = afsm.machine_classes(arena)
    assert sum(len(c) for c in classes) == len(arena)
    assert afsm.is_comp_bisimilar(arena, arena)


def test_ecoli_state_count_is_exact_int():
    doc = afsm.parse_file(str(FIXTURES / "ecoli.afsm"))
    arena = doc.arenas["Ecoli"]
    n = afsm.state_count(arena)
    assert isinstance(n, int)
    expected = 1
    for _, machine in arena.vertices:
        expected *= len(doc.fsms[machine])
    assert n == expected


def test_reduce_and_cli():
    path = str(FIXTURES / "ecoli.afsm")
    doc = afsm.parse_file(path)
    minimal, report = afsm.reduce(doc.arenas["EcoliMin"])
    assert report["classes"] == 9
    assert report["final_states"] == len(minimal)
    code, out, err = afsm.run_cli(["stats", path])
    assert code == 0, err
    assert out
    assert "digraph" in afsm.export_dot(doc.arenas["EcoliMin"])
