import random

import pytest

from apodeixis import _packed, kernel, semantics
from apodeixis.catalog import MOODS, ModalPattern, instantiate
from apodeixis.model_core import ALL_SUBSETS, bounds, model_at_rank, model_count
from apodeixis.semantics import DiagramExpr, Statement, Term

# every statement-level form the kernels evaluate
_FORMS = [
    (modality, relation)
    for modality, relations in semantics.ALLOWED_RELATIONS.items()
    for relation in relations
]


def _statements(names):
    out = []
    for modality, relation in _FORMS:
        for s in names:
            for p in names:
                if s == p:
                    continue
                for sc in (False, True):
                    for pc in (False, True):
                        out.append(
                            Statement(relation, modality, Term(s, sc), Term(p, pc))
                        )
    return out


def _packed_truth(b, r, compiled_stmt):
    tables = kernel.tables_for(b)
    op, si, sc, pi, pc = compiled_stmt
    subsets = b.individual_policy == ALL_SUBSETS
    S, codes = _packed.decompose(
        r, len(b.concept_names), tables.n_codes, subsets, tables.full
    )
    return _packed.statement_true(tables, S, codes, op, si, sc, pi, pc)


def test_packed_agrees_with_reference_exhaustively():
    b = bounds((2, 1), ("A", "B"))
    names = kernel.concept_order(b)
    stmts = _statements(names)
    compiled = [kernel.compile_statement(s, names) for s in stmts]
    for r in range(model_count(b)):
        m = model_at_rank(b, r)
        for s, c in zip(stmts, compiled):
            assert semantics.holds(m, s) == _packed_truth(b, r, c), (r, s)


def test_packed_diagram_agrees_with_reference_exhaustively():
    b = bounds((2, 1), ("A", "B"))
    tables = kernel.tables_for(b)
    for r in range(model_count(b)):
        m = model_at_rank(b, r)
        S, codes = _packed.decompose(r, 2, tables.n_codes, True, tables.full)
        for idx in range(1, 7):
            for si, pi, s, p in ((0, 1, "A", "B"), (1, 0, "B", "A")):
                expect = semantics.diagram_expr(m, DiagramExpr(idx, Term(s), Term(p)))
                got = _packed.diagram_true(tables, S, codes, idx, si, False, pi, False)
                assert expect == got, (r, idx, s, p)


def test_packed_agrees_with_reference_sampled_at_default_bounds():
    b = bounds((2, 2), ("A", "B", "C"))
    names = kernel.concept_order(b)
    stmts = _statements(names)
    compiled = [kernel.compile_statement(s, names) for s in stmts]
    rng = random.Random(7)
    for r in rng.sample(range(model_count(b)), 120):
        m = model_at_rank(b, r)
        for s, c in zip(stmts, compiled):
            assert semantics.holds(m, s) == _packed_truth(b, r, c), (r, s)


def test_micro_candidate_masks_agree_with_reference():
    b = bounds((2, 1), ("A", "B"))
    tables = kernel.tables_for(b)
    for r in range(model_count(b)):
        m = model_at_rank(b, r)
        S, codes = _packed.decompose(r, 2, tables.n_codes, True, tables.full)
        for polarity in ("pos", "neg"):
            for index in (1, 2, 3):
                mask = _packed.candidate_mask(
                    tables, S, codes, polarity, index, 0, False
                )
                for f, ind in enumerate(tables.funcs):
                    if not S >> f & 1:
                        continue
                    expect = semantics.micro_candidate(m, polarity, index, ind, Term("A"))
                    assert expect == bool(mask >> f & 1), (r, polarity, index, ind)


def test_compile_statement_rejects_foreign_concepts():
    with pytest.raises(KeyError):
        kernel.compile_statement(
            Statement("a", "X", Term("D"), Term("A")), ("A", "B", "C")
        )


def _checks_for(mood: str, tags, conclusion):
    inf = instantiate(MOODS[mood], ModalPattern(tags, conclusion))
    reqs = [(("stmt", p), True) for p in inf.premises]
    reqs += [(("nonempty", c), True) for c in inf.side_conditions]
    reqs.append((("stmt", inf.conclusion), False))
    return reqs


_SWEEP_CASES = [
    ("Barbara", ("X", "N"), None),
    ("Celarent", ("X", "N"), None),
    ("Baroco", ("N", "X"), None),
    ("Darapti", ("N", "X"), "N"),
    ("Camestres", ("X", "K"), None),
    ("Barbara", ("N", "X"), "N"),
]


@pytest.mark.parametrize("mood,tags,conclusion", _SWEEP_CASES)
def test_pure_and_compiled_sweeps_agree(mood, tags, conclusion):
    if kernel.BACKEND != "compiled":
        pytest.skip("compiled kernel unavailable")
    b = bounds((2, 2), ("A", "B", "C"))
    names = kernel.concept_order(b)
    compiled = kernel.compile_checks(_checks_for(mood, tags, conclusion), names)
    total = model_count(b)
    assert kernel.sweep(b, compiled, 0, total, backend="pure") == kernel.sweep(
        b, compiled, 0, total, backend="compiled"
    )


def test_sweep_is_stable_under_range_partition():
    b = bounds((2, 2), ("A", "B", "C"))
    names = kernel.concept_order(b)
    compiled = kernel.compile_checks(_checks_for("Baroco", ("N", "X"), None), names)
    total = model_count(b)
    whole = kernel.sweep(b, compiled, 0, total)
    pieces = [
        kernel.sweep(b, compiled, lo, min(lo + 10000, total))
        for lo in range(0, total, 10000)
    ]
    assert whole == min(p for p in pieces if p is not None)


def test_fits_compiled_boundaries():
    many = bounds((2, 2), tuple("ABCDEFGHI"))
    assert not kernel.fits_compiled(many, 3)
    wide = bounds((9, 9), ("A",))
    assert not kernel.fits_compiled(wide, 3)
    ok = bounds((2, 2), ("A", "B", "C"))
    assert kernel.fits_compiled(ok, 3) == (kernel.BACKEND == "compiled")


def test_sweep_rejects_unknown_backend():
    b = bounds((2, 1), ("A", "B", "C"))
    names = kernel.concept_order(b)
    compiled = kernel.compile_checks(_checks_for("Barbara", ("X", "N"), None), names)
    with pytest.raises(ValueError):
        kernel.sweep(b, compiled, 0, 10, backend="vectorized")
