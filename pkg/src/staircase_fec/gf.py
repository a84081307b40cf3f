"""Arithmetic in GF(2^m) backed by log/antilog tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Default primitive polynomials, bit d holds the coefficient of x^d.
PRIMITIVE_POLYS = {
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10001001,  # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,  # x^9 + x^4 + 1
    10: 0b10000001001,  # x^10 + x^3 + 1
    11: 0b100000000101,  # x^11 + x^2 + 1
    12: 0b1000001010011,  # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,  # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,  # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,  # x^15 + x + 1
    16: 0b10001000000001011,  # x^16 + x^12 + x^3 + x + 1
}


@dataclass(frozen=True, eq=False)
class GaloisField:
    """GF(2^m) with elements stored as ints in polynomial basis.

    ``exp`` has length ``2 * order`` so that ``exp[log a + log b]`` never needs
    a modulo; ``log[0]`` is -1.
    """

    m: int
    poly: int
    exp: np.ndarray
    log: np.ndarray

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^m - 1."""
        return (1 << self.m) - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return int(self.exp[(self.order - self.log[a]) % self.order])

    def alpha_pow(self, e: int) -> int:
        return int(self.exp[e % self.order])

    def cyclotomic_coset(self, i: int) -> list[int]:
        """Exponents conjugate to ``i`` under squaring."""
        coset = []
        e = i % self.order
        while e not in coset:
            coset.append(e)
            e = (2 * e) % self.order
        return coset

    def minimal_polynomial(self, i: int) -> int:
        """Minimal polynomial of alpha^i over GF(2), as a bitmask."""
        # product of (x + alpha^e) over the conjugacy class
        coeffs = [1]  # coefficients in GF(2^m), lowest degree first
        for e in self.cyclotomic_coset(i):
            root = self.alpha_pow(e)
            nxt = [0] * (len(coeffs) + 1)
            for d, c in enumerate(coeffs):
                nxt[d + 1] ^= c
                nxt[d] ^= self.mul(c, root)
            coeffs = nxt
        out = 0
        for d, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ArithmeticError("minimal polynomial has non-binary coefficient")
            out |= c << d
        return out


@lru_cache(maxsize=None)
def make_field(m: int, poly: int | None = None) -> GaloisField:
    """Build log/antilog tables for GF(2^m).

    Raises ValueError if ``poly`` is not primitive of degree ``m``.
    """
    if poly is None:
        if m not in PRIMITIVE_POLYS:
            raise ValueError(f"no default primitive polynomial for m={m}")
        poly = PRIMITIVE_POLYS[m]
    if poly.bit_length() - 1 != m:
        raise ValueError(f"polynomial {poly:#x} does not have degree {m}")
    order = (1 << m) - 1
    exp = np.zeros(2 * order, dtype=np.int64)
    log = np.full(order + 1, -1, dtype=np.int64)
    x = 1
    for i in range(order):
        if log[x] != -1:
            raise ValueError(f"polynomial {poly:#x} is not primitive")
        exp[i] = x
        log[x] = i
        x <<= 1
        if x >> m:
            x ^= poly
    if x != 1:
        raise ValueError(f"polynomial {poly:#x} is not primitive")
    exp[order:] = exp[:order]
    exp.setflags(write=False)
    log.setflags(write=False)
    return GaloisField(m=m, poly=poly, exp=exp, log=log)


def poly_mulmod2(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod2(a: int, g: int) -> int:
    """Remainder of ``a`` divided by ``g`` in GF(2)[x]."""
    dg = g.bit_length() - 1
    while a and a.bit_length() - 1 >= dg:
        a ^= g << (a.bit_length() - 1 - dg)
    return a
