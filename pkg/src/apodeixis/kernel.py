"""Sweep backend selection and compilation of statements to opcodes.

The compiled extension `_speedups` is optional: it is used when it imported
cleanly and the bounds fit its limits (<= 63 functions, <= 8 concepts,
family codes <= 2^20), otherwise the pure-Python `_packed` sweep runs.
Both backends share one opcode numbering, asserted equal at import time,
and must return identical results; tests sweep both over full enumerations.
"""

from __future__ import annotations

from array import array

from . import _packed
from .model_core import (
    ALL_SUBSETS,
    EnumerationBounds,
    family_bits,
    function_count,
)
from .semantics import Statement

try:
    from . import _speedups
except ImportError:  # extension not built; the pure backend is complete
    _speedups = None

if _speedups is not None and _speedups.OPCODES != _packed.OPCODES:
    raise ImportError("compiled kernel opcodes disagree with the pure backend")

#: which sweep implementation newly created searches will prefer
BACKEND = "compiled" if _speedups is not None else "pure"

_STATEMENT_OPS = {
    ("X", "a"): _packed.OP_XA,
    ("X", "e"): _packed.OP_XE,
    ("X", "i"): _packed.OP_XI,
    ("X", "o"): _packed.OP_XO,
    ("N", "a"): _packed.OP_NA,
    ("N", "e"): _packed.OP_NE,
    ("N", "i"): _packed.OP_NI,
    ("N", "o"): _packed.OP_NO,
    ("Ktwo", "a"): _packed.OP_KTWO,
    ("Ktwo", "e"): _packed.OP_KTWO,
    ("Kamp", "a"): _packed.OP_KAMP,
    ("Kamp", "e"): _packed.OP_KAMP,
    ("Ma2", "a"): _packed.OP_MA2,
    ("Mo2", "a"): _packed.OP_MO2,
    ("Mo3", "a"): _packed.OP_MO3,
}

#: a requirement is one of
#:   ("stmt", Statement)            statement truth
#:   ("nonempty", concept_name)     some individual realizes the concept at t0
#:   ("strong_i", Term, Term)       some individual is necessarily both
#: paired with the truth value the sweep demands.
Check = tuple


def tables_for(b: EnumerationBounds) -> _packed.Tables:
    return _packed.build_tables(b.world_sizes)


def concept_order(b: EnumerationBounds) -> tuple[str, ...]:
    return tuple(sorted(b.concept_names))


def compile_statement(s: Statement, names: tuple[str, ...]):
    index = {name: i for i, name in enumerate(names)}
    op = _STATEMENT_OPS[(s.modality, s.relation)]
    try:
        si = index[s.subject.base]
        pi = index[s.predicate.base]
    except KeyError as exc:
        raise KeyError(f"statement mentions concept {exc.args[0]!r} outside the bounds") from None
    return (op, si, s.subject.complemented, pi, s.predicate.complemented)


def compile_checks(checks, names: tuple[str, ...]):
    """Compile (requirement, want) pairs for the sweep backends."""
    out = []
    for item, want in checks:
        kind = item[0]
        if kind == "stmt":
            op, si, sc, pi, pc = compile_statement(item[1], names)
        elif kind == "nonempty":
            idx = names.index(item[1])
            op, si, sc, pi, pc = _packed.OP_NONEMPTY, idx, False, idx, False
        elif kind == "strong_i":
            s, p = item[1], item[2]
            op = _packed.OP_STRONGI
            si, sc = names.index(s.base), s.complemented
            pi, pc = names.index(p.base), p.complemented
        else:
            raise ValueError(f"unknown requirement kind {kind!r}")
        out.append((op, si, sc, pi, pc, bool(want)))
    return tuple(out)


def fits_compiled(b: EnumerationBounds, n_reqs: int) -> bool:
    return (
        _speedups is not None
        and function_count(b.world_sizes) <= 63
        and len(b.concept_names) <= 8
        and family_bits(b.world_sizes) <= 20
        and n_reqs <= _speedups.MAX_REQS
    )


def sweep(
    b: EnumerationBounds,
    compiled_checks,
    start: int,
    stop: int,
    backend: str | None = None,
):
    """Least rank in [start, stop) whose model meets all checks, else None.

    `backend` forces "pure" or "compiled" (for equivalence tests); by
    default the compiled kernel is used whenever the bounds fit it.
    """
    if backend is None:
        backend = "compiled" if fits_compiled(b, len(compiled_checks)) else "pure"
    tables = tables_for(b)
    subsets = b.individual_policy == ALL_SUBSETS
    if backend == "compiled":
        if not fits_compiled(b, len(compiled_checks)):
            raise ValueError("bounds exceed the compiled kernel limits")
        flat = array("q")
        for req in compiled_checks:
            flat.extend(int(v) for v in req)
        found = _speedups.sweep_range(
            tables.now_tab,
            tables.nec_tab,
            tables.poss_tab,
            tables.mequal,
            tables.n_f,
            len(b.concept_names),
            subsets,
            start,
            stop,
            flat,
        )
        return None if found < 0 else found
    if backend != "pure":
        raise ValueError(f"unknown backend {backend!r}")
    return _packed.sweep_range(tables, len(b.concept_names), subsets, compiled_checks, start, stop)
