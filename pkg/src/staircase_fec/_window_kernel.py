"""Compiled sliding-window staircase decoding.

Window state (all arrays owned by ``DecodingWindow``):

``Y``      (L, w, w) hard-decision blocks, ``Y[L-1]`` newest.
``synd``   (L, w, t+1) syndrome vector of row j of pair s = [Y[s-1]^T Y[s]];
           slot 0 is unused.
``truth``  (L, w, w) transmitted blocks, genie modes only (else shape (0,0,0)).
``errcnt`` (L, w) Hamming distance of each pair row to the truth (genie only).
``hrb``    (w, w) HRB flags of the newest block.
``hubs``   (w, H) column indices of the ranked HUBs of each newest-block row.
``hub_n``  (w,) number of valid HUBs per row.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._bdd_kernel import decode_syndrome, toggle_position, word_syndrome

STANDARD, SABM, GENIE_MCFREE, GENIE_SABM_BOUND = 0, 1, 2, 3

# counter slots
C_CALLS = 0
C_CORRECTIONS = 1
C_MD_FLAGS = 2
C_BF_FAILURE = 3
C_BF_MISC = 4
C_BF_SUCCESS = 5
C_RESTORES = 6
C_EXTRA_CALLS = 7
C_VIOLATIONS = 8
C_SABM_ROWS = 9
C_SWEEPS = 10
N_COUNTERS = 11

COUNTER_NAMES = (
    "bdd_calls",
    "corrections",
    "md_flags",
    "bf_failure_attempts",
    "bf_misc_attempts",
    "bf_successes",
    "restores",
    "extra_bdd_calls",
    "violations",
    "sabm_rows",
    "sweeps",
)


@njit(cache=True)
def _flip(Y, synd, truth, errcnt, tb, s, j, k, track):
    L = Y.shape[0]
    w = Y.shape[1]
    if k < w:
        b = s - 1
        r = k
        c = j
    else:
        b = s
        r = j
        c = k - w
    Y[b, r, c] ^= 1
    if b >= 1:
        toggle_position(synd[b, r], tb, w + c)
    if b + 1 <= L - 1:
        toggle_position(synd[b + 1, c], tb, r)
    if track:
        d = 1 if Y[b, r, c] != truth[b, r, c] else -1
        if b >= 1:
            errcnt[b, r] += d
        if b + 1 <= L - 1:
            errcnt[b + 1, c] += d


@njit(cache=True)
def _gather(Y, s, j, out):
    w = Y.shape[1]
    for k in range(w):
        out[k] = Y[s - 1, k, j]
        out[w + k] = Y[s, j, k]


@njit(cache=True)
def _md_clean(err, n, j, zs, hrb, w):
    for i in range(n):
        k = err[i]
        if k < w:
            if zs[k]:
                return False
        elif hrb[j, k - w]:
            return False
    return True


@njit(cache=True)
def _syndrome_is_zero(v):
    for i in range(v.shape[0]):
        if v[i] != 0:
            return False
    return True


@njit(cache=True)
def push_block(Y, synd, truth, errcnt, new_y, new_truth, tb, track):
    """Slide by one block and initialise the syndromes of the new last pair."""
    L = Y.shape[0]
    w = Y.shape[1]
    for b in range(L - 1):
        Y[b] = Y[b + 1]
        synd[b] = synd[b + 1]
        if track:
            truth[b] = truth[b + 1]
            errcnt[b] = errcnt[b + 1]
    Y[L - 1] = new_y
    if track:
        truth[L - 1] = new_truth
    row = np.empty(2 * w, np.uint8)
    for j in range(w):
        _gather(Y, L - 1, j, row)
        word_syndrome(row, tb, synd[L - 1, j])
        if track:
            e = 0
            for k in range(w):
                e += Y[L - 2, k, j] != truth[L - 2, k, j]
                e += Y[L - 1, j, k] != truth[L - 1, j, k]
            errcnt[L - 1, j] = e


@njit(cache=True)
def _correct_to_truth(Y, synd, truth, errcnt, tb, s, j):
    w = Y.shape[1]
    for k in range(w):
        if Y[s - 1, k, j] != truth[s - 1, k, j]:
            _flip(Y, synd, truth, errcnt, tb, s, j, k, True)
        if Y[s, j, k] != truth[s, j, k]:
            _flip(Y, synd, truth, errcnt, tb, s, j, w + k, True)


@njit(cache=True)
def sabm_row(Y, synd, truth, errcnt, tb, j, zs, hrb, hubs, hub_n, d0, counters, check, err, err2, tmp, orig, post):
    """Soft-aided decode of row ``j`` of the last pair; returns True if accepted."""
    L = Y.shape[0]
    w = Y.shape[1]
    s = L - 1
    t = tb.t
    if check:
        _gather(Y, s, j, orig)
    counters[C_SABM_ROWS] += 1
    counters[C_CALLS] += 1
    row_calls = 1
    accepted = False
    n = decode_syndrome(synd[s, j], tb, err)
    if n == 0:
        accepted = True
    elif n > 0:
        if _md_clean(err, n, j, zs, hrb, w):
            for i in range(n):
                _flip(Y, synd, truth, errcnt, tb, s, j, err[i], False)
            counters[C_CORRECTIONS] += 1
            accepted = True
        else:
            counters[C_MD_FLAGS] += 1
            nflip = d0 - n - t
            if nflip >= 1 and nflip <= hub_n[j]:
                counters[C_BF_MISC] += 1
                tmp[:] = synd[s, j]
                for q in range(nflip):
                    toggle_position(tmp, tb, w + hubs[j, q])
                counters[C_CALLS] += 1
                counters[C_EXTRA_CALLS] += 1
                row_calls += 1
                n2 = decode_syndrome(tmp, tb, err2)
                if n2 >= 0 and _md_clean(err2, n2, j, zs, hrb, w):
                    for q in range(nflip):
                        _flip(Y, synd, truth, errcnt, tb, s, j, w + hubs[j, q], False)
                    for i in range(n2):
                        _flip(Y, synd, truth, errcnt, tb, s, j, err2[i], False)
                    counters[C_BF_SUCCESS] += 1
                    counters[C_CORRECTIONS] += 1
                    accepted = True
                else:
                    counters[C_RESTORES] += 1
            else:
                counters[C_RESTORES] += 1
    else:
        if hub_n[j] >= 1:
            counters[C_BF_FAILURE] += 1
            tmp[:] = synd[s, j]
            toggle_position(tmp, tb, w + hubs[j, 0])
            counters[C_CALLS] += 1
            counters[C_EXTRA_CALLS] += 1
            row_calls += 1
            n2 = decode_syndrome(tmp, tb, err2)
            if n2 >= 0 and _md_clean(err2, n2, j, zs, hrb, w):
                _flip(Y, synd, truth, errcnt, tb, s, j, w + hubs[j, 0], False)
                for i in range(n2):
                    _flip(Y, synd, truth, errcnt, tb, s, j, err2[i], False)
                counters[C_BF_SUCCESS] += 1
                counters[C_CORRECTIONS] += 1
                accepted = True
            else:
                counters[C_RESTORES] += 1
        else:
            counters[C_RESTORES] += 1
    if check:
        _gather(Y, s, j, post)
        bad = row_calls > 2
        for k in range(2 * w):
            if orig[k] != post[k]:
                if not accepted:
                    bad = True
                elif k < w:
                    if zs[k]:
                        bad = True
                elif hrb[j, k - w]:
                    bad = True
        if accepted:
            word_syndrome(post, tb, tmp)
            if not _syndrome_is_zero(tmp):
                bad = True
        word_syndrome(post, tb, tmp)
        for i in range(t + 1):
            if tmp[i] != synd[s, j, i]:
                bad = True
        if bad:
            counters[C_VIOLATIONS] += 1
    return accepted


@njit(cache=True)
def genie_sabm_row(Y, synd, truth, errcnt, tb, j, d0, counters, err):
    """Idealised SABM on the last pair: perfect MD, bit flips chosen from the truth."""
    L = Y.shape[0]
    w = Y.shape[1]
    s = L - 1
    t = tb.t
    counters[C_CALLS] += 1
    e = errcnt[s, j]
    if e == 0:
        return
    if e <= t:
        _correct_to_truth(Y, synd, truth, errcnt, tb, s, j)
        counters[C_CORRECTIONS] += 1
        return
    n = decode_syndrome(synd[s, j], tb, err)
    need = 1 if n < 0 else d0 - n - t
    e_last = 0
    for k in range(w):
        e_last += Y[s, j, k] != truth[s, j, k]
    if need >= 1 and e_last >= need and e - need <= t:
        counters[C_CALLS] += 1
        counters[C_EXTRA_CALLS] += 1
        _correct_to_truth(Y, synd, truth, errcnt, tb, s, j)
        counters[C_BF_SUCCESS] += 1
        counters[C_CORRECTIONS] += 1


@njit(cache=True)
def iterate_window(Y, synd, truth, errcnt, tb, mode, iterations, hrb, hubs, hub_n, d0, counters, check, early_exit):
    """Run ``iterations`` sweeps over pairs L-1 .. 1, rows in ascending order."""
    L = Y.shape[0]
    w = Y.shape[1]
    t = tb.t
    track = mode == GENIE_MCFREE or mode == GENIE_SABM_BOUND
    err = np.empty(t + 1, np.int64)
    err2 = np.empty(t + 1, np.int64)
    tmp = np.empty(t + 1, np.int64)
    orig = np.empty(2 * w, np.uint8)
    post = np.empty(2 * w, np.uint8)
    zs = np.zeros(w, np.bool_)
    for _ in range(iterations):
        counters[C_SWEEPS] += 1
        changed = 0
        for s in range(L - 1, 0, -1):
            if s == L - 1 and mode == SABM:
                # zero-syndrome cache of the previous pair, taken before this pair is decoded
                for k in range(w):
                    zs[k] = L >= 3 and _syndrome_is_zero(synd[L - 2, k])
                for j in range(w):
                    before = counters[C_CORRECTIONS]
                    sabm_row(Y, synd, truth, errcnt, tb, j, zs, hrb, hubs, hub_n, d0, counters, check, err, err2, tmp, orig, post)
                    changed += counters[C_CORRECTIONS] - before
            elif s == L - 1 and mode == GENIE_SABM_BOUND:
                for j in range(w):
                    before = counters[C_CORRECTIONS]
                    genie_sabm_row(Y, synd, truth, errcnt, tb, j, d0, counters, err)
                    changed += counters[C_CORRECTIONS] - before
            elif mode == GENIE_MCFREE:
                for j in range(w):
                    counters[C_CALLS] += 1
                    e = errcnt[s, j]
                    if e > 0 and e <= t:
                        _correct_to_truth(Y, synd, truth, errcnt, tb, s, j)
                        counters[C_CORRECTIONS] += 1
                        changed += 1
            else:
                for j in range(w):
                    counters[C_CALLS] += 1
                    n = decode_syndrome(synd[s, j], tb, err)
                    if n > 0:
                        for i in range(n):
                            _flip(Y, synd, truth, errcnt, tb, s, j, err[i], track)
                        counters[C_CORRECTIONS] += 1
                        changed += 1
        if early_exit and changed == 0:
            break
