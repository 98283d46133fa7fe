"""Statement semantics by direct quantifier expansion.

This module is the readable reference evaluator: every operation follows
the defining formula literally, quantifying over the model's individuals.
The packed evaluator in `_packed` / `_speedups` must agree with it
everywhere (equivalence is property-tested); countermodels reported by the
search are re-verified through this module, never trusted from the sweep.

Statement forms (subject S, predicate P, relation letters a/e/i/o):

  assertoric (X)   SaP = ∀x(Sx ⟹ Px)           SiP = ∃x(Sx ∧ Px)
                   SeP = ∀x(Sx ⟹ ¬Px)          SoP = ∃x(Sx ∧ ¬Px)
  necessity (N)    N(SaP) = ∀x(Sx ⟹ NPx)
                   N(SeP) = ∀x∀y(Sx ∧ Py ⟹ N(x≠y))
                   N(SiP) = ∃x(Sx ∧ NPx) ∨ ∃x(NSx ∧ Px)
                   N(SoP) = diagram expression (2) ∨ (3)
  contingency      Ktwo(S a P) = Ktwo(S e P) = ∀x(Sx ⟹ KPx)
                   Kamp(S a P) = Kamp(S e P) = ∀x(KSx ⟹ KPx)
  possibility      Ma2(S a P) = ∀x(Sx ⟹ ∃y(Py ∧ M(x=y)))
                   Mo2(S a P) = ∀x(Sx ⟹ ∃y(¬Py ∧ M(x=y)))
                   Mo3(S a P) = ∀x(Sx ⟹ ∃y(M(¬Py) ∧ M(x=y)))

with the pointwise contingency KPx = ∃y(Py ∧ M(x=y)) ∧ ∃z(M(¬Pz) ∧ M(x=z)).
Contingent-to-be and contingent-not-to-be are interchanged freely (K(¬Px)
is KPx by definition), which is why the e-forms coincide with the a-forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model_core import Individual, Model

RELATIONS = ("a", "e", "i", "o")
MODALITIES = ("X", "N", "Ktwo", "Kamp", "Ma2", "Mo2", "Mo3")

#: relations each modality supports; anything else is rejected when the
#: statement is built (the contingency and possibility forms exist only as
#: universal statements)
ALLOWED_RELATIONS = {
    "X": ("a", "e", "i", "o"),
    "N": ("a", "e", "i", "o"),
    "Ktwo": ("a", "e"),
    "Kamp": ("a", "e"),
    "Ma2": ("a",),
    "Mo2": ("a",),
    "Mo3": ("a",),
}


@dataclass(frozen=True)
class Term:
    base: str
    complemented: bool = False

    def complement(self) -> "Term":
        return Term(self.base, not self.complemented)


@dataclass(frozen=True)
class Statement:
    relation: str
    modality: str
    subject: Term
    predicate: Term

    def __post_init__(self):
        if self.modality not in MODALITIES:
            raise ValueError(f"unknown modality {self.modality!r}")
        if self.relation not in ALLOWED_RELATIONS[self.modality]:
            raise ValueError(
                f"modality {self.modality} does not support relation {self.relation!r}"
            )


@dataclass(frozen=True)
class DiagramExpr:
    index: int
    subject: Term
    predicate: Term

    def __post_init__(self):
        if not 1 <= self.index <= 6:
            raise ValueError(f"diagram expression index must be 1..6, got {self.index}")


# --- atoms ---------------------------------------------------------------


def _extent(model: Model, term: Term, t: int) -> frozenset[int]:
    ext = model.extents(term.base)[t]
    if term.complemented:
        return frozenset(range(model.world_sizes[t])) - ext
    return ext


def now(model: Model, term: Term, x: Individual) -> bool:
    """Px: the individual falls under the term at the real parameter."""
    return x[0] in _extent(model, term, 0)


def nec(model: Model, term: Term, x: Individual) -> bool:
    """NPx: the individual falls under the term at every parameter."""
    return all(x[t] in _extent(model, term, t) for t in range(model.t_count))


def poss(model: Model, term: Term, x: Individual) -> bool:
    """MPx: the individual falls under the term at some parameter."""
    return any(x[t] in _extent(model, term, t) for t in range(model.t_count))


def n_distinct(x: Individual, y: Individual) -> bool:
    """N(x≠y): distinct at every parameter."""
    return all(a != b for a, b in zip(x, y))


def m_equal(x: Individual, y: Individual) -> bool:
    """M(x=y): equal at some parameter (the negation of N(x≠y))."""
    return any(a == b for a, b in zip(x, y))


def atom(model: Model, kind: str, *args) -> bool:
    """Evaluate one atomic formula; args are individuals plus a Term."""
    if kind == "Ax":
        return now(model, args[1], args[0])
    if kind == "NotAx":
        return not now(model, args[1], args[0])
    if kind == "NAx":
        return nec(model, args[1], args[0])
    if kind == "MAx":
        return poss(model, args[1], args[0])
    if kind == "MNotAx":
        return not nec(model, args[1], args[0])
    if kind == "NDistinct":
        return n_distinct(args[0], args[1])
    if kind == "MEqual":
        return m_equal(args[0], args[1])
    raise ValueError(f"unknown atom kind {kind!r}")


# --- contingency micro-structure ----------------------------------------


def micro_candidate(model: Model, polarity: str, index: int, x: Individual, p: Term) -> bool:
    """Candidate readings (1)-(3) for "possibly P" / "possibly not P".

    pos: (1) MPx  (2) ∃y(Py ∧ M(x=y))  (3) ∃y(MPy ∧ M(x=y))
    neg: (1) M(¬Px)  (2) ∃y(¬Py ∧ M(x=y))  (3) ∃y(M(¬Py) ∧ M(x=y))
    """
    inds = model.individuals
    if polarity == "pos":
        if index == 1:
            return poss(model, p, x)
        if index == 2:
            return any(now(model, p, y) and m_equal(x, y) for y in inds)
        if index == 3:
            return any(poss(model, p, y) and m_equal(x, y) for y in inds)
    elif polarity == "neg":
        if index == 1:
            return not nec(model, p, x)
        if index == 2:
            return any(not now(model, p, y) and m_equal(x, y) for y in inds)
        if index == 3:
            return any(not nec(model, p, y) and m_equal(x, y) for y in inds)
    else:
        raise ValueError(f"polarity must be 'pos' or 'neg', got {polarity!r}")
    raise ValueError(f"micro-candidate index must be 1..3, got {index}")


def contingent(model: Model, x: Individual, p: Term) -> bool:
    """KPx: possibly-P in sense (2) and possibly-not-P in sense (3)."""
    return micro_candidate(model, "pos", 2, x, p) and micro_candidate(model, "neg", 3, x, p)


# --- statements ----------------------------------------------------------


def holds(model: Model, s: Statement) -> bool:
    sub, pred = s.subject, s.predicate
    inds = model.individuals
    if s.modality == "X":
        if s.relation == "a":
            return all(now(model, pred, x) for x in inds if now(model, sub, x))
        if s.relation == "e":
            return all(not now(model, pred, x) for x in inds if now(model, sub, x))
        if s.relation == "i":
            return any(now(model, sub, x) and now(model, pred, x) for x in inds)
        return any(now(model, sub, x) and not now(model, pred, x) for x in inds)
    if s.modality == "N":
        if s.relation == "a":
            return all(nec(model, pred, x) for x in inds if now(model, sub, x))
        if s.relation == "e":
            return all(
                n_distinct(x, y)
                for x in inds
                if now(model, sub, x)
                for y in inds
                if now(model, pred, y)
            )
        if s.relation == "i":
            return any(
                (now(model, sub, x) and nec(model, pred, x))
                or (nec(model, sub, x) and now(model, pred, x))
                for x in inds
            )
        return diagram_expr(model, DiagramExpr(2, sub, pred)) or diagram_expr(
            model, DiagramExpr(3, sub, pred)
        )
    if s.modality == "Ktwo":
        return all(contingent(model, x, pred) for x in inds if now(model, sub, x))
    if s.modality == "Kamp":
        return all(contingent(model, x, pred) for x in inds if contingent(model, x, sub))
    if s.modality == "Ma2":
        return all(
            micro_candidate(model, "pos", 2, x, pred) for x in inds if now(model, sub, x)
        )
    if s.modality == "Mo2":
        return all(
            micro_candidate(model, "neg", 2, x, pred) for x in inds if now(model, sub, x)
        )
    return all(micro_candidate(model, "neg", 3, x, pred) for x in inds if now(model, sub, x))


def diagram_expr(model: Model, e: DiagramExpr) -> bool:
    """The six expressions around N(SoP), subject S, predicate P.

    (1) ∃x[NSx ∧ ∀y(Py ⟹ N(x≠y))]     (2) ∃x[Sx ∧ ∀y(Py ⟹ N(x≠y))]
    (3) ∃x[NSx ∧ ¬Px ∧ ∀y(NPy ⟹ N(x≠y))]
    (4) ∃x[Sx ∧ ¬Px ∧ ∀y(NPy ⟹ N(x≠y))]
    (5) ∃x[NSx ∧ ¬Px]                   (6) ∃x[Sx ∧ ¬Px] = SoP
    with N(SoP) = (2) ∨ (3).
    """
    sub, pred = e.subject, e.predicate
    inds = model.individuals

    def clear_of_actual(x):
        return all(n_distinct(x, y) for y in inds if now(model, pred, y))

    def clear_of_necessary(x):
        return all(n_distinct(x, y) for y in inds if nec(model, pred, y))

    if e.index == 1:
        return any(nec(model, sub, x) and clear_of_actual(x) for x in inds)
    if e.index == 2:
        return any(now(model, sub, x) and clear_of_actual(x) for x in inds)
    if e.index == 3:
        return any(
            nec(model, sub, x) and not now(model, pred, x) and clear_of_necessary(x)
            for x in inds
        )
    if e.index == 4:
        return any(
            now(model, sub, x) and not now(model, pred, x) and clear_of_necessary(x)
            for x in inds
        )
    if e.index == 5:
        return any(nec(model, sub, x) and not now(model, pred, x) for x in inds)
    return any(now(model, sub, x) and not now(model, pred, x) for x in inds)


# --- diagnostics and side conditions ------------------------------------


def analytic_a(model: Model, s: Term, p: Term) -> bool:
    """Extent inclusion at every parameter: ∀t(S_t ⊆ P_t).

    A diagnostic only; it neither implies nor follows from N(SaP), because
    it ignores how the individuals present at the real parameter may vary.
    """
    return all(
        _extent(model, s, t) <= _extent(model, p, t) for t in range(model.t_count)
    )


def realized_nonempty(model: Model, name: str) -> bool:
    """Some individual of the model falls under the concept at parameter 0.

    This is the non-emptiness used by side conditions and subalternation:
    an extent element matters only if an individual realizes it, since all
    quantifiers range over the individuals.
    """
    return any(x[0] in model.extents(name)[0] for x in model.individuals)


def exists_necessarily_both(model: Model, s: Term, p: Term) -> bool:
    """∃x(NSx ∧ NPx): the strong particular-affirmative premise."""
    return any(nec(model, s, x) and nec(model, p, x) for x in model.individuals)
