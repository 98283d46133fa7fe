"""Packed model evaluation over bitmasks (pure-Python sweep backend).

A model at fixed bounds is a handful of small integers:
the individuals subset S (bit f set <=> function #f is an individual) and
one family code per concept.  `Tables` precomputes, per family code, the
masks of functions that fall under the concept now (at parameter 0),
necessarily (at every parameter) and possibly (at some parameter), plus the
pairwise M(x=y) masks.  Every statement of the fixed repertoire then
evaluates with a handful of AND/OR/XOR operations and loops over at most
n_f bits, which is what makes exhaustive sweeps over millions of models
affordable even without the compiled kernel.

The compiled kernel in `_speedups` implements `sweep_range` with the same
opcode numbering; `kernel` checks the numbering matches at import time.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache

from .model_core import Individual, functions

OP_XA = 0
OP_XE = 1
OP_XI = 2
OP_XO = 3
OP_NA = 4
OP_NE = 5
OP_NI = 6
OP_NO = 7
OP_KTWO = 8
OP_KAMP = 9
OP_MA2 = 10
OP_MO2 = 11
OP_MO3 = 12
OP_NONEMPTY = 13
OP_STRONGI = 14

#: opcode name -> number; the compiled kernel exports the same table
OPCODES = {
    "XA": OP_XA, "XE": OP_XE, "XI": OP_XI, "XO": OP_XO,
    "NA": OP_NA, "NE": OP_NE, "NI": OP_NI, "NO": OP_NO,
    "KTWO": OP_KTWO, "KAMP": OP_KAMP,
    "MA2": OP_MA2, "MO2": OP_MO2, "MO3": OP_MO3,
    "NONEMPTY": OP_NONEMPTY, "STRONGI": OP_STRONGI,
}


@dataclass(frozen=True)
class Tables:
    world_sizes: tuple[int, ...]
    funcs: tuple[Individual, ...]
    n_f: int
    full: int
    n_codes: int
    now_tab: array
    nec_tab: array
    poss_tab: array
    mequal: array


@lru_cache(maxsize=None)
def build_tables(world_sizes: tuple[int, ...]) -> Tables:
    funcs = tuple(functions(world_sizes))
    n_f = len(funcs)
    t_count = len(world_sizes)
    fbits = sum(world_sizes)
    n_codes = 1 << fbits

    # extent bitmask per parameter, sliced out of the family code
    shifts = []
    offset = fbits
    for size in world_sizes:
        offset -= size
        shifts.append(offset)

    now_tab = array("Q", bytes(8 * n_codes))
    nec_tab = array("Q", bytes(8 * n_codes))
    poss_tab = array("Q", bytes(8 * n_codes))
    for code in range(n_codes):
        parts = [code >> shifts[t] & ((1 << world_sizes[t]) - 1) for t in range(t_count)]
        now = nec = poss = 0
        for f, func in enumerate(funcs):
            hits = [parts[t] >> func[t] & 1 for t in range(t_count)]
            if hits[0]:
                now |= 1 << f
            if all(hits):
                nec |= 1 << f
            if any(hits):
                poss |= 1 << f
        now_tab[code] = now
        nec_tab[code] = nec
        poss_tab[code] = poss

    mequal = array("Q", bytes(8 * n_f))
    for f, x in enumerate(funcs):
        m = 0
        for g, y in enumerate(funcs):
            if any(a == b for a, b in zip(x, y)):
                m |= 1 << g
        mequal[f] = m

    return Tables(world_sizes, funcs, n_f, (1 << n_f) - 1, n_codes, now_tab, nec_tab, poss_tab, mequal)


def term_masks(tables: Tables, codes, index: int, complemented: bool):
    """(now, nec, poss) masks of one term; complement swaps nec/poss duals."""
    code = codes[index]
    now = tables.now_tab[code]
    nec = tables.nec_tab[code]
    poss = tables.poss_tab[code]
    if complemented:
        full = tables.full
        return full ^ now, full ^ poss, full ^ nec
    return now, nec, poss


def decompose(rank: int, n_concepts: int, n_codes: int, subsets: bool, full: int):
    """Invert the canonical rank into (S, family codes in sorted-name order)."""
    codes = [0] * n_concepts
    for k in range(n_concepts - 1, -1, -1):
        rank, codes[k] = divmod(rank, n_codes)
    return (rank if subsets else full), codes


def statement_true(tables: Tables, S: int, codes, op: int, si: int, sc: bool, pi: int, pc: bool) -> bool:
    full = tables.full
    mequal = tables.mequal
    s_now, s_nec, _s_poss = term_masks(tables, codes, si, sc)
    p_now, p_nec, _p_poss = term_masks(tables, codes, pi, pc)
    if op == OP_XA:
        return not (s_now & S & (full ^ p_now))
    if op == OP_XE:
        return not (s_now & p_now & S)
    if op == OP_XI:
        return bool(s_now & p_now & S)
    if op == OP_XO:
        return bool(s_now & S & (full ^ p_now))
    if op == OP_NA:
        return not (s_now & S & (full ^ p_nec))
    if op == OP_NE:
        rest = s_now & S
        others = p_now & S
        while rest:
            low = rest & -rest
            if mequal[low.bit_length() - 1] & others:
                return False
            rest ^= low
        return True
    if op == OP_NI:
        return bool((s_now & p_nec | s_nec & p_now) & S)
    if op == OP_NO:
        rest = S
        actual = p_now & S
        necessary = p_nec & S
        while rest:
            low = rest & -rest
            f = low.bit_length() - 1
            clear = mequal[f]
            if s_now & low and not clear & actual:
                return True
            if s_nec & low and not p_now & low and not clear & necessary:
                return True
            rest ^= low
        return False
    if op == OP_KTWO or op == OP_MA2 or op == OP_MO2 or op == OP_MO3:
        rest = s_now & S
        pos_wit = p_now & S
        neg_wit = (full ^ p_nec) & S
        while rest:
            low = rest & -rest
            reach = mequal[low.bit_length() - 1]
            if op == OP_KTWO:
                if not (reach & pos_wit and reach & neg_wit):
                    return False
            elif op == OP_MA2:
                if not reach & pos_wit:
                    return False
            elif op == OP_MO2:
                if not reach & (full ^ p_now) & S:
                    return False
            elif not reach & neg_wit:
                return False
            rest ^= low
        return True
    if op == OP_KAMP:
        rest = S
        s_pos = s_now & S
        s_neg = (full ^ s_nec) & S
        p_pos = p_now & S
        p_neg = (full ^ p_nec) & S
        while rest:
            low = rest & -rest
            reach = mequal[low.bit_length() - 1]
            if reach & s_pos and reach & s_neg and not (reach & p_pos and reach & p_neg):
                return False
            rest ^= low
        return True
    if op == OP_NONEMPTY:
        return bool(s_now & S)
    if op == OP_STRONGI:
        return bool(s_nec & p_nec & S)
    raise ValueError(f"unknown opcode {op}")


def diagram_true(tables: Tables, S: int, codes, index: int, si: int, sc: bool, pi: int, pc: bool) -> bool:
    """The six expressions around N(SoP), on the packed representation."""
    full = tables.full
    mequal = tables.mequal
    s_now, s_nec, _ = term_masks(tables, codes, si, sc)
    p_now, p_nec, _ = term_masks(tables, codes, pi, pc)
    if index == 5:
        return bool(s_nec & S & (full ^ p_now))
    if index == 6:
        return bool(s_now & S & (full ^ p_now))
    if index in (1, 2):
        rest = (s_nec if index == 1 else s_now) & S
        blockers = p_now & S
    else:
        rest = (s_nec if index == 3 else s_now) & S & (full ^ p_now)
        blockers = p_nec & S
    while rest:
        low = rest & -rest
        if not mequal[low.bit_length() - 1] & blockers:
            return True
        rest ^= low
    return False


def candidate_mask(tables: Tables, S: int, codes, polarity: str, index: int, pi: int, pc: bool) -> int:
    """Mask over individuals x in S where the micro-candidate holds."""
    full = tables.full
    mequal = tables.mequal
    p_now, p_nec, p_poss = term_masks(tables, codes, pi, pc)
    if polarity == "pos":
        if index == 1:
            return p_poss & S
        witnesses = (p_now if index == 2 else p_poss) & S
    else:
        if index == 1:
            return (full ^ p_nec) & S
        witnesses = ((full ^ p_now) if index == 2 else (full ^ p_nec)) & S
    out = 0
    rest = S
    while rest:
        low = rest & -rest
        if mequal[low.bit_length() - 1] & witnesses:
            out |= low
        rest ^= low
    return out


def contingent_mask(tables: Tables, S: int, codes, pi: int, pc: bool) -> int:
    """Mask of individuals x in S with KPx (pos2 and neg3)."""
    return candidate_mask(tables, S, codes, "pos", 2, pi, pc) & candidate_mask(
        tables, S, codes, "neg", 3, pi, pc
    )


def sweep_range(tables: Tables, n_concepts: int, subsets: bool, reqs, start: int, stop: int):
    """Least rank in [start, stop) whose model meets every requirement.

    Each requirement is (op, s_index, s_complemented, p_index,
    p_complemented, want); the model counts iff statement_true == want for
    all of them.  Returns None if no rank in the range qualifies.
    """
    n_codes = tables.n_codes
    full = tables.full
    for r in range(start, stop):
        rem = r
        codes = [0] * n_concepts
        for k in range(n_concepts - 1, -1, -1):
            rem, codes[k] = divmod(rem, n_codes)
        S = rem if subsets else full
        for op, si, sc, pi, pc, want in reqs:
            if statement_true(tables, S, codes, op, si, sc, pi, pc) != want:
                break
        else:
            return r
    return None
