"""Slow reference implementations used to cross-check the fast decoders.

Nothing here touches the numba kernels: syndromes come from long division by
the generator polynomial and decoding from an explicit table of every error
pattern of weight at most t.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .bch import BddOutcome, BddStatus, ComponentCodeSpec
from .gf import poly_mod2


def word_polynomial(word, n_base: int) -> int:
    """Pack the non-parity part of a word into a GF(2)[x] bitmask."""
    poly = 0
    for i in range(n_base):
        if word[i]:
            poly |= 1 << (n_base - 1 - i)
    return poly


def division_syndrome(spec: ComponentCodeSpec, word) -> tuple[int, int]:
    """(remainder mod g(x), overall parity); (0, 0) iff codeword."""
    n_base = spec.base_n - spec.shorten
    rem = poly_mod2(word_polynomial(word, n_base), spec.generator)
    parity = int(np.sum(word)) & 1 if spec.extended else 0
    return rem, parity


class SphereDecoder:
    """Exhaustive bounded-distance decoder for small codes."""

    def __init__(self, spec: ComponentCodeSpec):
        self.spec = spec
        n = spec.n_c
        self.table: dict[tuple[int, int], tuple[int, ...]] = {}
        for wt in range(spec.t + 1):
            for pos in combinations(range(n), wt):
                e = np.zeros(n, dtype=np.uint8)
                e[list(pos)] = 1
                key = division_syndrome(spec, e)
                if key in self.table:
                    raise ValueError("error patterns of weight <= t share a syndrome")
                self.table[key] = pos

    def decode(self, word) -> BddOutcome:
        w = np.array(word, dtype=np.uint8)
        pos = self.table.get(division_syndrome(self.spec, w))
        if pos is None:
            return BddOutcome(BddStatus.FAILURE, frozenset(), w)
        w[list(pos)] ^= 1
        return BddOutcome(BddStatus.CORRECTED, frozenset(pos), w)


def gf_evaluate(spec: ComponentCodeSpec, word, power: int) -> int:
    """r(alpha^power) by Horner's rule over the field multiply."""
    gf = spec.field
    n_base = spec.base_n - spec.shorten
    a = gf.alpha_pow(power)
    acc = 0
    for i in range(n_base):
        acc = gf.mul(acc, a) ^ int(word[i])
    return acc
