"""Compiled iterative row/column decoding of product codes.

Pass ``2*it`` decodes rows, pass ``2*it + 1`` columns. In SABM mode passes
0, 1 and 2 use marked bits; later passes are plain BDD.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._bdd_kernel import decode_syndrome, toggle_position, word_syndrome
from ._window_kernel import (
    C_BF_FAILURE,
    C_BF_SUCCESS,
    C_CALLS,
    C_CORRECTIONS,
    C_EXTRA_CALLS,
    C_MD_FLAGS,
    C_RESTORES,
    C_SABM_ROWS,
    C_SWEEPS,
    C_VIOLATIONS,
    SABM,
)

SABM_PASSES = 3


@njit(cache=True)
def pc_syndromes(A, rsyn, csyn, tb):
    n = A.shape[0]
    buf = np.empty(n, np.uint8)
    for i in range(n):
        word_syndrome(A[i], tb, rsyn[i])
    for j in range(n):
        for i in range(n):
            buf[i] = A[i, j]
        word_syndrome(buf, tb, csyn[j])


@njit(cache=True)
def _flip(A, rsyn, csyn, tb, i, j):
    A[i, j] ^= 1
    toggle_position(rsyn[i], tb, j)
    toggle_position(csyn[j], tb, i)


@njit(cache=True)
def _cell(direction, line, p):
    if direction == 0:
        return line, p
    return p, line


@njit(cache=True)
def _md_clean(err, n, direction, line, hrb, zs, use_zs):
    for q in range(n):
        p = err[q]
        i, j = _cell(direction, line, p)
        if hrb[i, j]:
            return False
        if use_zs and zs[p]:
            return False
    return True


@njit(cache=True)
def pc_decode_kernel(A, rsyn, csyn, tb, mode, iterations, hrb, row_hubs, row_hub_n, col_hubs, col_hub_n, counters, check):
    n = A.shape[0]
    t = tb.t
    err = np.empty(t + 1, np.int64)
    err2 = np.empty(t + 1, np.int64)
    tmp = np.empty(t + 1, np.int64)
    zs = np.zeros(n, np.bool_)
    before = np.empty(n, np.uint8)
    for it in range(iterations):
        counters[C_SWEEPS] += 1
        for direction in range(2):
            pidx = 2 * it + direction
            active = mode == SABM and pidx < SABM_PASSES
            use_zs = active and pidx >= 1
            if use_zs:
                # zero-syndrome lines of the crossing direction, refreshed per pass
                for q in range(n):
                    v = rsyn[q] if direction == 1 else csyn[q]
                    z = True
                    for r in range(t + 1):
                        if v[r] != 0:
                            z = False
                    zs[q] = z
            for line in range(n):
                syn = rsyn[line] if direction == 0 else csyn[line]
                counters[C_CALLS] += 1
                nerr = decode_syndrome(syn, tb, err)
                if not active:
                    if nerr > 0:
                        for q in range(nerr):
                            i, j = _cell(direction, line, err[q])
                            _flip(A, rsyn, csyn, tb, i, j)
                        counters[C_CORRECTIONS] += 1
                    continue
                counters[C_SABM_ROWS] += 1
                if check:
                    for p in range(n):
                        i, j = _cell(direction, line, p)
                        before[p] = A[i, j]
                accepted = False
                calls = 1
                if nerr == 0:
                    accepted = True
                elif nerr > 0:
                    if _md_clean(err, nerr, direction, line, hrb, zs, use_zs):
                        for q in range(nerr):
                            i, j = _cell(direction, line, err[q])
                            _flip(A, rsyn, csyn, tb, i, j)
                        counters[C_CORRECTIONS] += 1
                        accepted = True
                    else:
                        counters[C_MD_FLAGS] += 1
                        counters[C_RESTORES] += 1
                else:
                    hn = row_hub_n[line] if direction == 0 else col_hub_n[line]
                    if hn >= 1:
                        hub = row_hubs[line, 0] if direction == 0 else col_hubs[line, 0]
                        counters[C_BF_FAILURE] += 1
                        tmp[:] = syn
                        toggle_position(tmp, tb, hub)
                        counters[C_CALLS] += 1
                        counters[C_EXTRA_CALLS] += 1
                        calls += 1
                        n2 = decode_syndrome(tmp, tb, err2)
                        # the flipped HUB itself must not break a zero-syndrome crossing line
                        hub_ok = not (use_zs and zs[hub])
                        if n2 >= 0 and hub_ok and _md_clean(err2, n2, direction, line, hrb, zs, use_zs):
                            i, j = _cell(direction, line, hub)
                            _flip(A, rsyn, csyn, tb, i, j)
                            for q in range(n2):
                                i, j = _cell(direction, line, err2[q])
                                _flip(A, rsyn, csyn, tb, i, j)
                            counters[C_BF_SUCCESS] += 1
                            counters[C_CORRECTIONS] += 1
                            accepted = True
                        else:
                            counters[C_RESTORES] += 1
                    else:
                        counters[C_RESTORES] += 1
                if check:
                    bad = calls > 2
                    for p in range(n):
                        i, j = _cell(direction, line, p)
                        if A[i, j] != before[p]:
                            if not accepted or hrb[i, j] or (use_zs and zs[p]):
                                bad = True
                    if bad:
                        counters[C_VIOLATIONS] += 1
