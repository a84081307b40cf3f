"""Compiled bounded-distance decoding core shared by every decoder.

A component word is summarised by its syndrome vector
``[S_1, S_3, ..., S_{2t-1}, parity]``; even-index syndromes of a binary code
follow by squaring. Decoders keep these vectors up to date incrementally, so
one BDD call costs O(t^2) instead of O(n_c).
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from numba import njit

KernelTables = namedtuple(
    "KernelTables",
    [
        "t",  # correction capability
        "order",  # 2^m - 1
        "n_base",  # length of the shortened, unextended word
        "n_c",  # transmitted component length
        "extended",  # 1 when an overall parity bit sits at index n_base
        "synd",  # (n_c, t) odd-syndrome contribution of each position
        "exp",  # antilog table, length 2 * order
        "log",  # log table, log[0] = -1
        "quad",  # quad[c] = z with z^2 + z = c, or -1
        "pos_of_deg",  # word index of the monomial x^d, or -1 if shortened
    ],
)


@njit(cache=True)
def word_syndrome(word, tb, out):
    """Fill ``out`` (length t + 1) with the syndrome vector of ``word``."""
    for i in range(tb.t + 1):
        out[i] = 0
    for k in range(tb.n_c):
        if word[k]:
            for i in range(tb.t):
                out[i] ^= tb.synd[k, i]
            out[tb.t] ^= 1
    if not tb.extended:
        out[tb.t] = 0


@njit(cache=True)
def toggle_position(syn, tb, k):
    """Update a syndrome vector in place for a flip at word position ``k``."""
    for i in range(tb.t):
        syn[i] ^= tb.synd[k, i]
    if tb.extended:
        syn[tb.t] ^= 1


@njit(cache=True)
def _gf_mul(a, b, tb):
    if a == 0 or b == 0:
        return 0
    return tb.exp[tb.log[a] + tb.log[b]]


@njit(cache=True)
def _gf_div(a, b, tb):
    if a == 0:
        return 0
    e = tb.log[a] - tb.log[b]
    if e < 0:
        e += tb.order
    return tb.exp[e]


@njit(cache=True)
def _decode_base_general(syn, tb, err):
    # Berlekamp-Massey + Chien search for t > 2.
    t = tb.t
    n2 = 2 * t
    s = np.zeros(n2 + 1, np.int64)  # s[i] = S_i, 1-based
    for i in range(t):
        s[2 * i + 1] = syn[i]
    for i in range(1, n2 + 1):
        if i % 2 == 0:
            s[i] = _gf_mul(s[i // 2], s[i // 2], tb)
    lam = np.zeros(n2 + 2, np.int64)
    prev = np.zeros(n2 + 2, np.int64)
    tmp = np.zeros(n2 + 2, np.int64)
    lam[0] = 1
    prev[0] = 1
    ell = 0
    shift = 1
    b = 1
    for r in range(1, n2 + 1):
        d = s[r]
        for i in range(1, ell + 1):
            d ^= _gf_mul(lam[i], s[r - i], tb)
        if d == 0:
            shift += 1
            continue
        coef = _gf_div(d, b, tb)
        tmp[:] = lam
        for i in range(n2 + 2 - shift):
            if prev[i]:
                lam[i + shift] ^= _gf_mul(coef, prev[i], tb)
        if 2 * ell <= r - 1:
            ell = r - ell
            prev[:] = tmp
            b = d
            shift = 1
        else:
            shift += 1
    if ell > t:
        return -1
    for i in range(ell + 1, n2 + 2):
        if lam[i] != 0:
            return -1
    nroots = 0
    for d in range(tb.order):
        # evaluate lambda(alpha^-d)
        acc = 0
        for i in range(ell + 1):
            if lam[i]:
                e = (tb.log[lam[i]] - d * i) % tb.order
                acc ^= tb.exp[e]
        if acc == 0:
            pos = tb.pos_of_deg[d]
            if pos < 0:
                return -1
            if nroots >= t:
                return -1
            err[nroots] = pos
            nroots += 1
    if nroots != ell:
        return -1
    return nroots


@njit(cache=True)
def decode_syndrome(syn, tb, err):
    """Bounded-distance decode from a syndrome vector.

    Writes error positions into ``err`` and returns their count, or -1 on
    decoding failure.
    """
    t = tb.t
    nerr = 0
    allzero = True
    for i in range(t):
        if syn[i] != 0:
            allzero = False
            break
    if allzero:
        nerr = 0
    elif t == 1:
        pos = tb.pos_of_deg[tb.log[syn[0]]]
        if pos < 0:
            return -1
        err[0] = pos
        nerr = 1
    elif t == 2:
        s1 = syn[0]
        s3 = syn[1]
        if s1 == 0:
            return -1
        l1 = tb.log[s1]
        e3 = (3 * l1) % tb.order
        s1c = tb.exp[e3]
        if s3 == s1c:
            pos = tb.pos_of_deg[l1]
            if pos < 0:
                return -1
            err[0] = pos
            nerr = 1
        else:
            # locators X1, X2 = s1*z, s1*(z+1) with z^2 + z = (s3 + s1^3) / s1^3
            e = tb.log[s3 ^ s1c] - e3
            if e < 0:
                e += tb.order
            z = tb.quad[tb.exp[e]]
            if z < 0:
                return -1
            p1 = tb.pos_of_deg[(l1 + tb.log[z]) % tb.order]
            p2 = tb.pos_of_deg[(l1 + tb.log[z ^ 1]) % tb.order]
            if p1 < 0 or p2 < 0:
                return -1
            err[0] = p1
            err[1] = p2
            nerr = 2
    else:
        nerr = _decode_base_general(syn, tb, err)
        if nerr < 0:
            return -1
    if tb.extended:
        if (syn[t] ^ (nerr & 1)) == 1:
            if nerr + 1 > t:
                return -1
            err[nerr] = tb.n_base
            nerr += 1
    return nerr


@njit(cache=True)
def decode_word(word, tb, err):
    syn = np.zeros(tb.t + 1, np.int64)
    word_syndrome(word, tb, syn)
    return decode_syndrome(syn, tb, err)
