"""Soft-aided bit marking: HRB/HUB marks, miscorrection detection, bit flipping.

These are the row-level building blocks. The window decoder runs the same
logic inside a compiled kernel (``_window_kernel.sabm_row``); the pure-Python
``sabm_decode_pair`` here is the readable reference used to cross-check it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bch import BddOutcome, ComponentCodeSpec, bdd_decode, syndrome
from .staircase import pair_row


@dataclass(frozen=True)
class SabmConfig:
    """Marking parameters.

    A bit is an HRB when ``llr_scale * |llr| > delta``. With LLRs computed
    for unit-variance noise, ``llr_scale=2`` puts ``delta`` on the scale where
    the optimum for BCH(256,239,2) staircase decoding on 2-PAM sits near 10;
    with ``llr_scale=1`` the same optimum is near 5.
    """

    delta: float = 10.0
    hub_count: int | None = None  # None -> t + 2
    llr_scale: float = 2.0

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        if not self.llr_scale > 0:
            raise ValueError("llr_scale must be positive")
        if self.hub_count is not None and self.hub_count < 1:
            raise ValueError("hub_count must be >= 1")

    def hubs_for(self, spec: ComponentCodeSpec) -> int:
        return spec.t + 2 if self.hub_count is None else self.hub_count


class MarkLabel(enum.Enum):
    HRB = "hrb"
    HUB = "hub"
    UNMARKED = "unmarked"


@dataclass(frozen=True)
class BitMark:
    label: MarkLabel
    rank: int | None = None


@dataclass(eq=False)
class MarkedBlock:
    """Marks for one block, row by row.

    ``hubs[j, :hub_n[j]]`` lists the HUB columns of row ``j`` by ascending
    |LLR|; a bit is never both HRB and HUB.
    """

    hrb: np.ndarray  # (rows, cols) bool
    hubs: np.ndarray  # (rows, H) int64
    hub_n: np.ndarray  # (rows,) int64

    def mark(self, j: int, k: int) -> BitMark:
        if self.hrb[j, k]:
            return BitMark(MarkLabel.HRB)
        ranks = self.hubs[j, : self.hub_n[j]]
        hit = np.flatnonzero(ranks == k)
        if hit.size:
            return BitMark(MarkLabel.HUB, int(hit[0]))
        return BitMark(MarkLabel.UNMARKED)


def mark_bits(llrs, cfg: SabmConfig, t: int = 2) -> MarkedBlock:
    """Mark HRBs (scaled |llr| > delta) and, per row, the lowest-|llr| non-HRB
    bits as HUBs.

    Ties in |llr| go to the lower column index.
    """
    mag = cfg.llr_scale * np.abs(np.atleast_2d(np.asarray(llrs, dtype=np.float64)))
    H = cfg.hub_count if cfg.hub_count is not None else t + 2
    H = min(H, mag.shape[1])
    hrb = mag > cfg.delta
    key = np.where(hrb, np.inf, mag)
    order = np.argsort(key, axis=1, kind="stable")[:, :H]
    hub_n = np.minimum((~hrb).sum(axis=1), H)
    return MarkedBlock(hrb=hrb, hubs=np.ascontiguousarray(order, dtype=np.int64), hub_n=hub_n.astype(np.int64))


class MdResult(enum.Enum):
    CLEAN = "clean"
    MISCORRECTION = "miscorrection"


def detect_miscorrection(outcome: BddOutcome, j: int, w: int, zero_syndrome_rows, marks: MarkedBlock) -> MdResult:
    """Flag a corrected row of the last pair as a miscorrection.

    A flip in the first half (previous block) conflicts when it lands in a
    row of the previous pair whose syndrome was zero; a flip in the second
    half conflicts when it hits an HRB. Outcomes with no flips are CLEAN.
    """
    for k in outcome.error_positions:
        if k < w:
            if zero_syndrome_rows[k]:
                return MdResult.MISCORRECTION
        elif marks.hrb[j, k - w]:
            return MdResult.MISCORRECTION
    return MdResult.CLEAN


def bit_flip_failure(r, marks: MarkedBlock, j: int) -> tuple[np.ndarray, bool]:
    """Flip the rank-0 HUB of row ``j``; returns (word, flipped)."""
    r = np.array(r, dtype=np.uint8)
    if marks.hub_n[j] < 1:
        return r, False
    w = r.size // 2
    r[w + marks.hubs[j, 0]] ^= 1
    return r, True


def bit_flip_miscorrection(r, weight_e: int, d0: int, t: int, marks: MarkedBlock, j: int) -> tuple[np.ndarray, bool]:
    """Flip the ``d0 - weight_e - t`` least reliable HUBs of row ``j``."""
    r = np.array(r, dtype=np.uint8)
    k = d0 - weight_e - t
    if k < 1 or marks.hub_n[j] < k:
        return r, False
    w = r.size // 2
    r[w + marks.hubs[j, :k]] ^= 1
    return r, True


@dataclass
class SabmCounters:
    bdd_calls: int = 0
    corrections: int = 0
    md_flags: int = 0
    bf_failure_attempts: int = 0
    bf_misc_attempts: int = 0
    bf_successes: int = 0
    restores: int = 0
    extra_bdd_calls: int = 0
    calls_per_row: list = field(default_factory=list)


def zero_syndrome_rows(spec: ComponentCodeSpec, older, prev) -> np.ndarray:
    """Rows of ``[older^T prev]`` whose syndrome is currently zero."""
    w = prev.shape[0]
    return np.array([not syndrome(spec, np.asarray(pair_row(older, prev, k))).any() for k in range(w)])


def sabm_decode_pair(spec: ComponentCodeSpec, prev: np.ndarray, cur: np.ndarray, marks: MarkedBlock, zs_cache, counters: SabmCounters | None = None) -> SabmCounters:
    """Decode every row of ``[prev^T cur]`` in place with the SABM flow.

    ``cur`` is the newest block (marks refer to it); ``zs_cache[k]`` says
    whether row ``k`` of the pair ending in ``prev`` had zero syndrome.
    """
    c = counters if counters is not None else SabmCounters()
    w = cur.shape[0]
    d0, t = spec.d_0, spec.t
    for j in range(w):
        view = pair_row(prev, cur, j)
        r = np.asarray(view)
        out = bdd_decode(spec, r)
        calls = 1
        result = None
        if out.corrected:
            if detect_miscorrection(out, j, w, zs_cache, marks) is MdResult.CLEAN:
                result = out.corrected_word
                c.corrections += bool(out.error_positions)
            else:
                c.md_flags += 1
                r2, flipped = bit_flip_miscorrection(r, len(out.error_positions), d0, t, marks, j)
                if flipped:
                    c.bf_misc_attempts += 1
                    result = _retry(spec, r2, j, w, zs_cache, marks, c)
                    calls += 1
        else:
            r2, flipped = bit_flip_failure(r, marks, j)
            if flipped:
                c.bf_failure_attempts += 1
                result = _retry(spec, r2, j, w, zs_cache, marks, c)
                calls += 1
        if result is None:
            c.restores += 1
        else:
            view.assign(result)
        c.bdd_calls += calls
        c.extra_bdd_calls += calls - 1
        c.calls_per_row.append(calls)
    return c


def _retry(spec, r2, j, w, zs_cache, marks, c):
    out = bdd_decode(spec, r2)
    if out.corrected and detect_miscorrection(out, j, w, zs_cache, marks) is MdResult.CLEAN:
        c.bf_successes += 1
        c.corrections += 1
        return out.corrected_word
    return None
