# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled sweep kernel.

Same packed representation and opcode numbering as `_packed` (the import
machinery in `kernel` asserts the tables agree); only `sweep_range` is
implemented here, because that is the only loop hot enough to matter.
Limits: at most 63 functions, 8 concepts and 16 requirements per sweep,
beyond which the caller must use the pure-Python backend.
"""

from libc.stdint cimport int64_t, uint64_t

MAX_CONCEPTS = 8
MAX_REQS = 16

OPCODES = {
    "XA": 0, "XE": 1, "XI": 2, "XO": 3,
    "NA": 4, "NE": 5, "NI": 6, "NO": 7,
    "KTWO": 8, "KAMP": 9,
    "MA2": 10, "MO2": 11, "MO3": 12,
    "NONEMPTY": 13, "STRONGI": 14,
}


cdef inline bint _statement_true(
    int op, uint64_t S, int64_t* codes,
    const unsigned long long[::1] now_tab,
    const unsigned long long[::1] nec_tab,
    const unsigned long long[::1] poss_tab,
    const unsigned long long[::1] mequal,
    uint64_t full, int n_f,
    int si, bint sc, int pi, bint pc,
) noexcept nogil:
    cdef uint64_t s_now, s_nec, s_poss, p_now, p_nec, p_poss, tmp
    cdef uint64_t rest, others, reach, bit
    cdef int f
    cdef int64_t code

    code = codes[si]
    s_now = now_tab[code]
    s_nec = nec_tab[code]
    s_poss = poss_tab[code]
    if sc:
        tmp = s_nec
        s_now = full ^ s_now
        s_nec = full ^ s_poss
        s_poss = full ^ tmp
    code = codes[pi]
    p_now = now_tab[code]
    p_nec = nec_tab[code]
    p_poss = poss_tab[code]
    if pc:
        tmp = p_nec
        p_now = full ^ p_now
        p_nec = full ^ p_poss
        p_poss = full ^ tmp

    if op == 0:    # XA
        return (s_now & S & (full ^ p_now)) == 0
    elif op == 1:  # XE
        return (s_now & p_now & S) == 0
    elif op == 2:  # XI
        return (s_now & p_now & S) != 0
    elif op == 3:  # XO
        return (s_now & S & (full ^ p_now)) != 0
    elif op == 4:  # NA
        return (s_now & S & (full ^ p_nec)) == 0
    elif op == 5:  # NE
        rest = s_now & S
        others = p_now & S
        for f in range(n_f):
            if rest >> f & 1 and mequal[f] & others:
                return False
        return True
    elif op == 6:  # NI
        return ((s_now & p_nec | s_nec & p_now) & S) != 0
    elif op == 7:  # NO: diagram (2) or (3)
        for f in range(n_f):
            bit = (<uint64_t>1) << f
            if not S & bit:
                continue
            reach = mequal[f]
            if s_now & bit and not (reach & p_now & S):
                return True
            if s_nec & bit and not (p_now & bit) and not (reach & p_nec & S):
                return True
        return False
    elif op == 8:  # KTWO
        rest = s_now & S
        for f in range(n_f):
            if rest >> f & 1:
                reach = mequal[f]
                if not (reach & p_now & S) or not (reach & (full ^ p_nec) & S):
                    return False
        return True
    elif op == 9:  # KAMP
        for f in range(n_f):
            if not (S >> f & 1):
                continue
            reach = mequal[f]
            if reach & s_now & S and reach & (full ^ s_nec) & S:
                if not (reach & p_now & S) or not (reach & (full ^ p_nec) & S):
                    return False
        return True
    elif op == 10:  # MA2
        rest = s_now & S
        for f in range(n_f):
            if rest >> f & 1 and not (mequal[f] & p_now & S):
                return False
        return True
    elif op == 11:  # MO2
        rest = s_now & S
        for f in range(n_f):
            if rest >> f & 1 and not (mequal[f] & (full ^ p_now) & S):
                return False
        return True
    elif op == 12:  # MO3
        rest = s_now & S
        for f in range(n_f):
            if rest >> f & 1 and not (mequal[f] & (full ^ p_nec) & S):
                return False
        return True
    elif op == 13:  # NONEMPTY
        return (s_now & S) != 0
    elif op == 14:  # STRONGI
        return (s_nec & p_nec & S) != 0
    return False


def sweep_range(
    const unsigned long long[::1] now_tab,
    const unsigned long long[::1] nec_tab,
    const unsigned long long[::1] poss_tab,
    const unsigned long long[::1] mequal,
    int n_f,
    int n_concepts,
    bint subsets,
    int64_t start,
    int64_t stop,
    const long long[::1] reqs,
):
    """Least rank in [start, stop) meeting all requirements, else -1.

    `reqs` is flattened: 6 entries per requirement
    (op, s_index, s_complemented, p_index, p_complemented, want).
    """
    cdef int n_reqs = <int>(reqs.shape[0] // 6)
    cdef int64_t n_codes = <int64_t>now_tab.shape[0]
    cdef uint64_t full = ((<uint64_t>1) << n_f) - 1
    cdef int64_t codes[8]
    cdef int64_t r, rem
    cdef uint64_t S
    cdef int k, q, base
    cdef bint ok, truth

    if n_concepts > 8 or n_f > 63 or n_reqs > MAX_REQS:
        raise ValueError("bounds exceed the compiled kernel limits")

    with nogil:
        for r in range(start, stop):
            rem = r
            for k in range(n_concepts - 1, -1, -1):
                codes[k] = rem % n_codes
                rem //= n_codes
            S = <uint64_t>rem if subsets else full
            ok = True
            for q in range(n_reqs):
                base = q * 6
                truth = _statement_true(
                    <int>reqs[base], S, codes,
                    now_tab, nec_tab, poss_tab, mequal,
                    full, n_f,
                    <int>reqs[base + 1], <bint>reqs[base + 2],
                    <int>reqs[base + 3], <bint>reqs[base + 4],
                )
                if truth != <bint>reqs[base + 5]:
                    ok = False
                    break
            if ok:
                with gil:
                    return r
    return -1
