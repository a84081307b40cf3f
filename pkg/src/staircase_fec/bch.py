"""Shortened, optionally extended, binary BCH component codes.

Bit ordering: index 0 is the first transmitted bit and carries the
highest-order message coefficient; the overall parity bit of an extended
code sits at index ``n_c - 1``. Position ``i < n_base`` holds the coefficient
of ``x^(n_base - 1 - i)``, so shortening simply drops the top degrees.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._bdd_kernel import KernelTables, decode_syndrome, word_syndrome
from .gf import GaloisField, make_field, poly_mod2, poly_mulmod2


class BchParameterError(ValueError):
    """Raised when no binary BCH code with the requested parameters exists."""


class BddStatus(enum.Enum):
    CORRECTED = "corrected"
    FAILURE = "failure"


@dataclass(frozen=True)
class BddOutcome:
    status: BddStatus
    error_positions: frozenset[int]
    corrected_word: np.ndarray = field(compare=False)

    @property
    def corrected(self) -> bool:
        return self.status is BddStatus.CORRECTED


@dataclass(frozen=True, eq=False)
class ComponentCodeSpec:
    """An immutable component code together with its decoding tables."""

    m: int
    base_k: int
    t: int
    shorten: int
    extended: bool
    field: GaloisField
    generator: int
    parity_matrix: np.ndarray  # (k_c, n_c - k_c), systematic parity part
    tables: KernelTables

    @property
    def base_n(self) -> int:
        return (1 << self.m) - 1

    @property
    def n_c(self) -> int:
        return self.base_n - self.shorten + int(self.extended)

    @property
    def k_c(self) -> int:
        return self.base_k - self.shorten

    @property
    def d_0(self) -> int:
        return 2 * self.t + 1 + int(self.extended)

    @property
    def redundancy(self) -> int:
        return self.n_c - self.k_c

    def __repr__(self) -> str:
        return f"BCH({self.n_c},{self.k_c},{self.t})"


def generator_polynomial(gf: GaloisField, t: int) -> int:
    """LCM of the minimal polynomials of alpha, alpha^2, ..., alpha^2t."""
    seen: set[int] = set()
    g = 1
    for i in range(1, 2 * t + 1):
        rep = min(gf.cyclotomic_coset(i))
        if rep in seen:
            continue
        seen.add(rep)
        g = poly_mulmod2(g, gf.minimal_polynomial(i))
    return g


def _parity_matrix(g: int, n_base: int, k_c: int, extended: bool) -> np.ndarray:
    r = n_base - k_c
    ncol = r + int(extended)
    P = np.zeros((k_c, ncol), dtype=np.uint8)
    rem = poly_mod2(1 << r, g)
    # message bit i is the coefficient of x^(n_base - 1 - i); walk degrees upward
    for i in range(k_c - 1, -1, -1):
        for j in range(r):
            # parity position k_c + j holds x^(r - 1 - j)
            P[i, j] = (rem >> (r - 1 - j)) & 1
        if extended:
            P[i, r] = (1 + bin(rem).count("1")) & 1
        rem <<= 1
        if rem >> r:
            rem ^= g
    return P


def _kernel_tables(gf: GaloisField, t: int, n_base: int, extended: bool) -> KernelTables:
    order = gf.order
    n_c = n_base + int(extended)
    synd = np.zeros((n_c, t), dtype=np.int64)
    for k in range(n_base):
        deg = n_base - 1 - k
        for i in range(t):
            synd[k, i] = gf.exp[((2 * i + 1) * deg) % order]
    pos_of_deg = np.full(order, -1, dtype=np.int64)
    pos_of_deg[:n_base] = n_base - 1 - np.arange(n_base)
    quad = np.full(order + 1, -1, dtype=np.int64)
    for z in range(order + 1):
        c = gf.mul(z, z) ^ z
        if quad[c] < 0:
            quad[c] = z
    return KernelTables(
        t=t,
        order=order,
        n_base=n_base,
        n_c=n_c,
        extended=int(extended),
        synd=synd,
        exp=np.ascontiguousarray(gf.exp),
        log=np.ascontiguousarray(gf.log),
        quad=quad,
        pos_of_deg=pos_of_deg,
    )


@lru_cache(maxsize=None)
def build_code(m: int, base_k: int, t: int, shorten: int = 0, extended: bool = True) -> ComponentCodeSpec:
    """Construct and validate a BCH component code.

    Example: ``build_code(8, 239, 2, 0, True)`` is the extended BCH(256,239,2).
    """
    if t < 1:
        raise BchParameterError("t must be at least 1")
    if not 0 <= shorten < base_k:
        raise BchParameterError(f"shorten={shorten} outside [0, {base_k})")
    gf = make_field(m)
    g = generator_polynomial(gf, t)
    n = gf.order
    if g.bit_length() - 1 != n - base_k:
        raise BchParameterError(
            f"no binary BCH code (n={n}, k={base_k}, t={t}): "
            f"generator has degree {g.bit_length() - 1}, expected {n - base_k}"
        )
    n_base = n - shorten
    k_c = base_k - shorten
    P = _parity_matrix(g, n_base, k_c, extended)
    P.setflags(write=False)
    tables = _kernel_tables(gf, t, n_base, extended)
    return ComponentCodeSpec(
        m=m,
        base_k=base_k,
        t=t,
        shorten=shorten,
        extended=extended,
        field=gf,
        generator=g,
        parity_matrix=P,
        tables=tables,
    )


# Component codes used in the staircase and product-code experiments.
# Component codes used in the staircase and product-code experiments.
NAMED_CODES = {
    "bch256": dict(m=8, base_k=239, t=2, shorten=0, extended=True),  # (256,239), R_scc=0.87
    "bch228": dict(m=9, base_k=493, t=2, shorten=284, extended=True),  # (228,209), R_scc=0.83
    "bch504": dict(m=9, base_k=493, t=2, shorten=8, extended=True),  # (504,485), R_scc=0.92
    "bch128": dict(m=7, base_k=113, t=2, shorten=0, extended=True),  # (128,113), product code
    "bch512": dict(m=9, base_k=493, t=2, shorten=0, extended=True),  # (512,493), product code
    "toy32": dict(m=5, base_k=21, t=2, shorten=0, extended=True),  # (32,21)
}


def code_by_name(name: str) -> ComponentCodeSpec:
    try:
        return build_code(**NAMED_CODES[name])
    except KeyError:
        raise BchParameterError(f"unknown code {name!r}; choose from {sorted(NAMED_CODES)}") from None


def _as_bits(x, length: int, what: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.uint8)
    if arr.ndim < 1 or arr.shape[-1] != length:
        raise ValueError(f"{what} must have length {length}, got shape {arr.shape}")
    return arr


def encode(spec: ComponentCodeSpec, message) -> np.ndarray:
    """Systematic encoding; accepts one message or a stack of messages."""
    msg = _as_bits(message, spec.k_c, "message")
    parity = (msg.astype(np.int32) @ spec.parity_matrix) & 1
    return np.concatenate([msg, parity.astype(np.uint8)], axis=-1)


def syndrome(spec: ComponentCodeSpec, word) -> np.ndarray:
    """Return ``[S_1, ..., S_2t]`` followed by the overall parity when extended.

    All-zero exactly when ``word`` is a codeword.
    """
    w = np.ascontiguousarray(_as_bits(word, spec.n_c, "word"))
    if w.ndim != 1:
        raise ValueError("syndrome expects a single word")
    odd = np.zeros(spec.t + 1, dtype=np.int64)
    word_syndrome(w, spec.tables, odd)
    gf = spec.field
    full = [0] * (2 * spec.t)
    for i in range(spec.t):
        full[2 * i] = int(odd[i])
    for j in range(2, 2 * spec.t + 1, 2):
        half = full[j // 2 - 1]
        full[j - 1] = gf.mul(half, half)
    if spec.extended:
        full.append(int(odd[spec.t]))
    return np.array(full, dtype=np.int64)


def bdd_decode(spec: ComponentCodeSpec, word) -> BddOutcome:
    """Bounded-distance decode one word.

    Returns ``CORRECTED`` whenever some codeword lies within distance ``t``,
    which includes miscorrections; otherwise ``FAILURE`` with the input
    unchanged.
    """
    w = np.array(_as_bits(word, spec.n_c, "word"), dtype=np.uint8)
    if w.ndim != 1:
        raise ValueError("bdd_decode expects a single word")
    syn = np.zeros(spec.t + 1, dtype=np.int64)
    word_syndrome(w, spec.tables, syn)
    err = np.zeros(spec.t + 1, dtype=np.int64)
    nerr = decode_syndrome(syn, spec.tables, err)
    if nerr < 0:
        return BddOutcome(BddStatus.FAILURE, frozenset(), w)
    positions = frozenset(int(p) for p in err[:nerr])
    w[list(positions)] ^= 1
    return BddOutcome(BddStatus.CORRECTED, positions, w)
