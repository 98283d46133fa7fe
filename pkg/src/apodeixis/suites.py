"""Exhaustive property suites over enumerated models.

Four suite families, each sweeping every model at the given bounds:

  req          necessity implies its assertoric form; the necessary e and
               i forms are symmetric; non-emptiness gives subalternation
  diagram      the six-expression implication web around N(SoP), its two
               defining equivalences, and the witness that expression (5)
               does not yield N(SoP)
  remarks      non-equivalences: N(BeA) vs N(Ba~A), N(BoA) vs N(Bi~A),
               N(BaA) vs its contraposition, and "AaA always holds but
               N(AaA) does not" - witnessed, with the universal half
               checked on every model
  contingency  the micro-candidate lattice (1)=>(3), (2)=>(3) in both
               polarities, assertoric implies every positive candidate,
               candidates (1)/(2) implicatively independent (witnessed),
               the a/e collapse of the two-sided K, and monotonicity of
               positive candidate (2) with the non-monotonicity witness
               for negative candidate (3)

Universal claims count one elementary check per model/statement (or per
individual where the claim is pointwise); violations report the canonical
rank.  Witness claims are existential: the suite records the least model
exhibiting each and fails if any witness is missing, since the sweep is
exhaustive at the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _packed, kernel
from .model_core import (
    ALL_SUBSETS,
    DEFAULT_MAX_MODELS,
    BoundsTooLarge,
    EnumerationBounds,
    Model,
    model_at_rank,
    model_count,
)

SUITE_NAMES = ("req", "diagram", "remarks", "contingency")


@dataclass(frozen=True)
class Witness:
    name: str
    rank: int
    model: Model
    detail: str = ""


@dataclass(frozen=True)
class SuiteResult:
    name: str
    bounds: EnumerationBounds
    models: int
    checks: int
    violations: tuple[str, ...]
    witnesses: tuple[Witness, ...]
    missing_witnesses: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.missing_witnesses


class _Sweep:
    """Shared iteration state: masks per concept, violation/witness books."""

    def __init__(self, b: EnumerationBounds, max_models: int):
        self.bounds = b
        self.names = kernel.concept_order(b)
        if len(self.names) < 2:
            raise ValueError("suites need at least two concepts")
        self.tables = kernel.tables_for(b)
        self.subsets = b.individual_policy == ALL_SUBSETS
        self.total = model_count(b)
        if self.total > max_models:
            raise BoundsTooLarge(
                f"{self.total} models at these bounds exceeds the limit {max_models}"
            )
        self.n = len(self.names)
        self.pairs = [(i, j) for i in range(self.n) for j in range(self.n) if i != j]
        # the canonical subject/predicate pair used for witness formulas:
        # second concept in sorted order as subject, first as predicate
        self.si, self.pi = 1, 0
        self.checks = 0
        self.violations: list[str] = []
        self.witnesses: dict[str, Witness] = {}

    def violate(self, rank: int, message: str):
        if len(self.violations) < 8:
            self.violations.append(f"rank {rank}: {message}")

    def witness(self, name: str, rank: int, detail: str = ""):
        if name not in self.witnesses:
            model = model_at_rank(self.bounds, rank)
            self.witnesses[name] = Witness(name, rank, model, detail)

    def iter_models(self):
        tables = self.tables
        n_codes = tables.n_codes
        full = tables.full
        now_tab, nec_tab, poss_tab = tables.now_tab, tables.nec_tab, tables.poss_tab
        n = self.n
        for r in range(self.total):
            rem = r
            codes = [0] * n
            for k in range(n - 1, -1, -1):
                rem, codes[k] = divmod(rem, n_codes)
            S = rem if self.subsets else full
            triples = [
                (now_tab[c], nec_tab[c], poss_tab[c]) for c in codes
            ]
            yield r, S, codes, triples

    def result(self, name: str, required: tuple[str, ...]) -> SuiteResult:
        missing = tuple(w for w in required if w not in self.witnesses)
        return SuiteResult(
            name,
            self.bounds,
            self.total,
            self.checks,
            tuple(self.violations),
            tuple(self.witnesses[k] for k in sorted(self.witnesses)),
            missing,
        )


def _nec_e(mequal, S, s_now, p_now) -> bool:
    rest = s_now & S
    others = p_now & S
    while rest:
        low = rest & -rest
        if mequal[low.bit_length() - 1] & others:
            return False
        rest ^= low
    return True


def _nec_o(mequal, S, s_now, s_nec, p_now, p_nec) -> bool:
    rest = S
    while rest:
        low = rest & -rest
        reach = mequal[low.bit_length() - 1]
        if s_now & low and not reach & p_now & S:
            return True
        if s_nec & low and not p_now & low and not reach & p_nec & S:
            return True
        rest ^= low
    return False


def req_suite(b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS) -> SuiteResult:
    sw = _Sweep(b, max_models)
    full = sw.tables.full
    mequal = sw.tables.mequal
    for r, S, _codes, triples in sw.iter_models():
        for si, pi in sw.pairs:
            s_now, s_nec, _ = triples[si]
            p_now, p_nec, _ = triples[pi]
            n_a = not (s_now & S & (full ^ p_nec))
            n_e = _nec_e(mequal, S, s_now, p_now)
            n_i = bool((s_now & p_nec | s_nec & p_now) & S)
            n_o = _nec_o(mequal, S, s_now, s_nec, p_now, p_nec)
            # necessity implies the assertoric form
            if n_a and s_now & S & (full ^ p_now):
                sw.violate(r, f"N-a without a for pair {si},{pi}")
            if n_e and s_now & p_now & S:
                sw.violate(r, f"N-e without e for pair {si},{pi}")
            if n_i and not (s_now & p_now & S):
                sw.violate(r, f"N-i without i for pair {si},{pi}")
            if n_o and not (s_now & S & (full ^ p_now)):
                sw.violate(r, f"N-o without o for pair {si},{pi}")
            # e and i symmetry
            if n_e != _nec_e(mequal, S, p_now, s_now):
                sw.violate(r, f"N-e asymmetric for pair {si},{pi}")
            if n_i != bool((p_now & s_nec | p_nec & s_now) & S):
                sw.violate(r, f"N-i asymmetric for pair {si},{pi}")
            # subalternation under realized non-emptiness
            if s_now & S:
                if n_a and not n_i:
                    sw.violate(r, f"N-a without N-i for nonempty subject {si}")
                if n_e and not n_o:
                    sw.violate(r, f"N-e without N-o for nonempty subject {si}")
            sw.checks += 8
    return sw.result("req", ())


_IMPLICATIONS = ((1, 2), (1, 3), (3, 4), (2, 4), (5, 6), (4, 6))


def diagram_suite(b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS) -> SuiteResult:
    sw = _Sweep(b, max_models)
    tables = sw.tables
    full = tables.full
    for r, S, codes, triples in sw.iter_models():
        for si, pi in sw.pairs:
            d = [
                _packed.diagram_true(tables, S, codes, idx, si, False, pi, False)
                for idx in range(1, 7)
            ]
            for lo, hi in _IMPLICATIONS:
                if d[lo - 1] and not d[hi - 1]:
                    sw.violate(r, f"diagram ({lo}) without ({hi}) for pair {si},{pi}")
            s_now, s_nec, _ = triples[si]
            p_now, p_nec, _ = triples[pi]
            n_o = _nec_o(tables.mequal, S, s_now, s_nec, p_now, p_nec)
            if n_o != (d[1] or d[2]):
                sw.violate(r, f"N-o differs from (2)or(3) for pair {si},{pi}")
            if bool(s_now & S & (full ^ p_now)) != d[5]:
                sw.violate(r, f"o differs from (6) for pair {si},{pi}")
            sw.checks += 8
            if si == sw.si and pi == sw.pi and d[4] and not n_o:
                sw.witness(
                    "expr5_without_necessary_o",
                    r,
                    "expression (5) holds while N(SoP) fails",
                )
    return sw.result("diagram", ("expr5_without_necessary_o",))


def remarks_suite(b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS) -> SuiteResult:
    sw = _Sweep(b, max_models)
    tables = sw.tables
    full = tables.full
    mequal = tables.mequal
    si, pi = sw.si, sw.pi
    for r, S, codes, triples in sw.iter_models():
        # tautologies: the assertoric AaA holds everywhere, its necessity
        # version must admit a failure somewhere
        for ci in range(sw.n):
            c_now, c_nec, _ = triples[ci]
            if not _packed.statement_true(
                tables, S, codes, _packed.OP_XA, ci, False, ci, False
            ):
                sw.violate(r, f"reflexive a fails for concept {ci}")
            sw.checks += 1
            if c_now & S & (full ^ c_nec):
                sw.witness(
                    "tautology_not_necessary",
                    r,
                    f"N({sw.names[ci]}a{sw.names[ci]}) fails",
                )
        s_now, s_nec, s_poss = triples[si]
        p_now, p_nec, p_poss = triples[pi]
        # complemented-term mask triples: now/nec/poss swap roles dually
        sc_now, sc_nec = full ^ s_now, full ^ s_poss
        pc_now, pc_nec = full ^ p_now, full ^ p_poss
        forms = (
            (
                "necessary_e_vs_complement_a",
                _nec_e(mequal, S, s_now, p_now),
                not (s_now & S & (full ^ pc_nec)),
            ),
            (
                "necessary_o_vs_complement_i",
                _nec_o(mequal, S, s_now, s_nec, p_now, p_nec),
                bool((s_now & pc_nec | s_nec & pc_now) & S),
            ),
            (
                "necessary_a_vs_contraposition",
                not (s_now & S & (full ^ p_nec)),
                not (pc_now & S & (full ^ sc_nec)),
            ),
        )
        for name, left, right in forms:
            sw.checks += 2
            if left and not right:
                sw.witness(name, r, "left form holds, right fails")
            elif right and not left:
                sw.witness(name, r, "right form holds, left fails")
    return sw.result(
        "remarks",
        (
            "necessary_e_vs_complement_a",
            "necessary_o_vs_complement_i",
            "necessary_a_vs_contraposition",
            "tautology_not_necessary",
        ),
    )


def contingency_suite(b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS) -> SuiteResult:
    sw = _Sweep(b, max_models)
    tables = sw.tables
    full = tables.full
    mequal = tables.mequal
    names = sw.names
    for r, S, codes, triples in sw.iter_models():
        cand = []
        for ci in range(sw.n):
            c_now, c_nec, c_poss = triples[ci]
            pos1 = c_poss & S
            neg1 = (full ^ c_nec) & S
            pos2 = pos3 = neg2 = neg3 = 0
            rest = S
            while rest:
                low = rest & -rest
                reach = mequal[low.bit_length() - 1]
                if reach & c_now & S:
                    pos2 |= low
                if reach & c_poss & S:
                    pos3 |= low
                if reach & (full ^ c_now) & S:
                    neg2 |= low
                if reach & (full ^ c_nec) & S:
                    neg3 |= low
                rest ^= low
            cand.append((pos1, pos2, pos3, neg1, neg2, neg3))
            pop = bin(S).count("1")
            sw.checks += 7 * pop
            if pos1 & ~pos3 or pos2 & ~pos3:
                sw.violate(r, f"positive candidate lattice broken for concept {ci}")
            if neg1 & ~neg3 or neg2 & ~neg3:
                sw.violate(r, f"negative candidate lattice broken for concept {ci}")
            c_actual = triples[ci][0] & S
            if c_actual & ~(pos1 & pos2 & pos3):
                sw.violate(r, f"assertoric without positive candidates, concept {ci}")
            if ci == sw.pi:
                if pos1 & ~pos2:
                    low = pos1 & ~pos2
                    sw.witness(
                        "pos1_without_pos2",
                        r,
                        f"individual #{(low & -low).bit_length() - 1}, concept {names[ci]}",
                    )
                if pos2 & ~pos1:
                    low = pos2 & ~pos1
                    sw.witness(
                        "pos2_without_pos1",
                        r,
                        f"individual #{(low & -low).bit_length() - 1}, concept {names[ci]}",
                    )
        for si, pi in sw.pairs:
            s_now = triples[si][0]
            p_now = triples[pi][0]
            # a/e collapse of the two-sided K: the a reading computed here
            # from the candidate masks must agree with the kernel's e reading
            k_mask = cand[pi][1] & cand[pi][5]
            a_true = not (s_now & S & ~k_mask)
            e_true = _packed.statement_true(
                tables, S, codes, _packed.OP_KTWO, si, False, pi, False
            )
            sw.checks += 1
            if a_true != e_true:
                sw.violate(r, f"two-sided K differs between a and e for pair {si},{pi}")
            if not (s_now & S & (full ^ p_now)):  # assertoric a premise holds
                pop = bin(S).count("1")
                sw.checks += pop
                if cand[si][1] & ~cand[pi][1]:
                    sw.violate(
                        r, f"positive candidate (2) not monotone for pair {si},{pi}"
                    )
                bad = cand[pi][5] & ~cand[si][5]
                if bad and si == sw.si and pi == sw.pi:
                    sw.witness(
                        "neg3_not_monotone",
                        r,
                        f"individual #{(bad & -bad).bit_length() - 1}: "
                        "possibly-not the predicate, not possibly-not the subject",
                    )
    return sw.result(
        "contingency",
        (
            "pos1_without_pos2",
            "pos2_without_pos1",
            "neg3_not_monotone",
        ),
    )


_SUITES = {
    "req": req_suite,
    "diagram": diagram_suite,
    "remarks": remarks_suite,
    "contingency": contingency_suite,
}


def run_suite(name: str, b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS) -> SuiteResult:
    try:
        fn = _SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(b, max_models)


def run_suites(names, b: EnumerationBounds, max_models: int = DEFAULT_MAX_MODELS):
    return [run_suite(name, b, max_models) for name in names]
