"""Python interface to the memalg C++ library."""

from ._memalg import (
    Cardinal,
    Machine,
    MemalgError,
    check_reduction_laws,
    compile_mem,
    compile_tm,
    evaluate,
    find_isomorphism,
    format_machine,
    full_bijection_machine,
    full_machine,
    functional_reduce,
    is_complete,
    is_sub_machine,
    make_machine,
    parse_machine,
    simulate_tm,
    state_cardinality,
    state_reduce,
    tm_to_mem,
    transition_space_cardinality,
    universality_report,
    verify_certificate,
    verify_lockstep,
    verify_morphism,
)

__all__ = [name for name in dir() if not name.startswith("_")]
