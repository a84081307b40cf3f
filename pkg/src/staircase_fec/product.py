"""Product codes: n_c x n_c arrays whose rows and columns are component codewords."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _product_kernel as PK
from ._window_kernel import N_COUNTERS
from .bch import ComponentCodeSpec, encode
from .sabm import MarkedBlock, SabmConfig, mark_bits
from .window import CounterSnapshot, Mode


@dataclass(eq=False)
class PcArray:
    bits: np.ndarray  # (n_c, n_c) uint8
    row_marks: MarkedBlock | None = None
    col_marks: MarkedBlock | None = None  # ranks over columns, indexed [col, :]
    counters: np.ndarray = field(default_factory=lambda: np.zeros(N_COUNTERS, dtype=np.int64))

    def counter_snapshot(self, frames: int = 1) -> CounterSnapshot:
        return CounterSnapshot.from_array(self.counters, frames)


def pc_rate(spec: ComponentCodeSpec) -> float:
    return (spec.k_c / spec.n_c) ** 2


def pc_encode(spec: ComponentCodeSpec, info) -> PcArray:
    """Rows first, then every column (including the row-parity columns)."""
    k = spec.k_c
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (k, k):
        raise ValueError(f"info must be {k}x{k}, got {info.shape}")
    rows = encode(spec, info)  # (k, n)
    full = encode(spec, rows.T).T  # (n, n)
    return PcArray(np.ascontiguousarray(full))


def pc_info(spec: ComponentCodeSpec, arr) -> np.ndarray:
    bits = arr.bits if isinstance(arr, PcArray) else arr
    return bits[: spec.k_c, : spec.k_c]


def mark_array(arr: PcArray, llrs, cfg: SabmConfig, spec: ComponentCodeSpec) -> PcArray:
    """Attach HRB marks and per-line HUB rankings from channel LLRs of the whole array."""
    llrs = np.asarray(llrs, dtype=np.float64).reshape(arr.bits.shape)
    arr.row_marks = mark_bits(llrs, cfg, spec.t)
    arr.col_marks = mark_bits(llrs.T, cfg, spec.t)
    return arr


def pc_decode(spec: ComponentCodeSpec, arr: PcArray, mode: Mode | str = Mode.STANDARD, iterations: int = 7, *, check_invariants: bool = False) -> PcArray:
    """Iterative row/column BDD in place; SABM needs marks from ``mark_array``."""
    mode = Mode.parse(mode)
    if mode not in (Mode.STANDARD, Mode.SABM):
        raise ValueError("product codes support STANDARD and SABM decoding only")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n, t = spec.n_c, spec.t
    A = arr.bits
    if A.shape != (n, n):
        raise ValueError(f"array must be {n}x{n}")
    if mode is Mode.SABM:
        if arr.row_marks is None:
            raise ValueError("SABM decoding needs marks; call mark_array first")
        rm, cm = arr.row_marks, arr.col_marks
    else:
        empty = MarkedBlock(np.zeros((n, n), bool), np.zeros((n, 1), np.int64), np.zeros(n, np.int64))
        rm = cm = empty
    rsyn = np.zeros((n, t + 1), dtype=np.int64)
    csyn = np.zeros((n, t + 1), dtype=np.int64)
    PK.pc_syndromes(A, rsyn, csyn, spec.tables)
    PK.pc_decode_kernel(
        A, rsyn, csyn, spec.tables, int(mode), iterations,
        rm.hrb, rm.hubs, rm.hub_n, cm.hubs, cm.hub_n,
        arr.counters, check_invariants,
    )
    return arr
