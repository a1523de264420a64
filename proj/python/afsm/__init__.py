"""Arenas of finite state machines: expansion, bisimulation and
compositional reduction."""

from ._afsm import (
    AfsmError,
    Arena,
    Document,
    Fsm,
    arena_quotient,
    check_comp_implies_flat,
    comp_bisimulation,
    expand,
    export_dot,
    induce_fsm,
    is_bisimilar,
    is_comp_bisimilar,
    is_isomorphic,
    is_minimal,
    machine_classes,
    max_bisimulation,
    naive_bisim_oracle,
    parse,
    parse_file,
    quotient,
    reduce,
    run_cli,
    serialize_arena,
    serialize_fsm,
    state_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
