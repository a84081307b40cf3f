"""Sliding-window iterative decoding of staircase codes.

One iteration sweeps block pairs from the newest (s = L-1) to the oldest
(s = 1); each pair decodes its w rows in ascending order. After ``iterations``
sweeps the oldest block leaves the window.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _window_kernel as K
from .sabm import MarkedBlock, SabmConfig, mark_bits
from .staircase import SccParams


class Mode(enum.IntEnum):
    STANDARD = K.STANDARD
    SABM = K.SABM
    GENIE_MCFREE = K.GENIE_MCFREE
    GENIE_SABM_BOUND = K.GENIE_SABM_BOUND

    @classmethod
    def parse(cls, name: str | "Mode") -> "Mode":
        if isinstance(name, Mode):
            return name
        return cls[name.strip().upper().replace("-", "_")]

    @property
    def needs_truth(self) -> bool:
        return self in (Mode.GENIE_MCFREE, Mode.GENIE_SABM_BOUND)


@dataclass(frozen=True)
class CounterSnapshot:
    bdd_calls: int
    corrections: int
    md_flags: int
    bf_failure_attempts: int
    bf_misc_attempts: int
    bf_successes: int
    restores: int
    extra_bdd_calls: int
    violations: int
    sabm_rows: int
    sweeps: int
    windows: int

    @classmethod
    def from_array(cls, arr: np.ndarray, windows: int) -> "CounterSnapshot":
        return cls(*(int(v) for v in arr), windows=windows)


class DecodingWindow:
    """L hard-decision blocks plus the marks of the newest one.

    The window starts holding the known all-zero block B_0. ``push`` slides in
    a received block and returns the block that fell out (``None`` until the
    window has been decoded at least once).
    """

    def __init__(
        self,
        params: SccParams,
        L: int = 9,
        mode: Mode | str = Mode.STANDARD,
        sabm: SabmConfig | None = None,
        *,
        check_invariants: bool = False,
        early_exit: bool = False,
    ):
        if L < 2:
            raise ValueError("window size L must be >= 2")
        self.params = params
        self.spec = params.spec
        self.L = L
        self.mode = Mode.parse(mode)
        self.sabm = sabm or SabmConfig()
        self.check_invariants = check_invariants
        self.early_exit = early_exit
        w, t = params.w, self.spec.t
        self.Y = np.zeros((L, w, w), dtype=np.uint8)
        self.synd = np.zeros((L, w, t + 1), dtype=np.int64)
        if self.mode.needs_truth:
            self.truth = np.zeros((L, w, w), dtype=np.uint8)
            self.errcnt = np.zeros((L, w), dtype=np.int64)
        else:
            self.truth = np.zeros((0, 0, 0), dtype=np.uint8)
            self.errcnt = np.zeros((0, 0), dtype=np.int64)
        H = self.sabm.hubs_for(self.spec)
        self.marks = MarkedBlock(
            hrb=np.zeros((w, w), dtype=bool),
            hubs=np.zeros((w, H), dtype=np.int64),
            hub_n=np.zeros(w, dtype=np.int64),
        )
        self._counters = np.zeros(K.N_COUNTERS, dtype=np.int64)
        self.filled = 1  # B_0
        self.windows = 0
        self._decoded_since_push = False

    @property
    def full(self) -> bool:
        return self.filled >= self.L

    @property
    def blocks(self) -> np.ndarray:
        return self.Y

    def push(self, hd_block, llrs=None, truth=None) -> np.ndarray | None:
        w = self.params.w
        hd = np.ascontiguousarray(np.asarray(hd_block, dtype=np.uint8).reshape(w, w))
        if self.mode.needs_truth:
            if truth is None:
                raise ValueError(f"{self.mode.name} needs the transmitted block")
            tr = np.ascontiguousarray(np.asarray(truth, dtype=np.uint8).reshape(w, w))
        else:
            tr = np.zeros((0, 0), dtype=np.uint8)
        if self.mode is Mode.SABM:
            if llrs is None:
                raise ValueError("SABM mode needs channel LLRs for the incoming block")
            self.marks = mark_bits(np.asarray(llrs).reshape(w, w), self.sabm, self.spec.t)
        out = self.Y[0].copy() if (self.full and self._decoded_since_push) else None
        K.push_block(self.Y, self.synd, self.truth, self.errcnt, hd, tr, self.spec.tables, self.mode.needs_truth)
        self.filled = min(self.filled + 1, self.L)
        self._decoded_since_push = False
        return out

    def iterate(self, iterations: int = 1) -> None:
        if not self.full:
            raise RuntimeError("window is not fully populated")
        if iterations < 1:
            raise ValueError("iterations must be >= 1")
        m = self.marks
        K.iterate_window(
            self.Y,
            self.synd,
            self.truth,
            self.errcnt,
            self.spec.tables,
            int(self.mode),
            iterations,
            m.hrb,
            m.hubs,
            m.hub_n,
            self.spec.d_0,
            self._counters,
            self.check_invariants,
            self.early_exit,
        )
        self.windows += 1
        self._decoded_since_push = True

    def counters(self) -> CounterSnapshot:
        return CounterSnapshot.from_array(self._counters, self.windows)

    def reset_counters(self) -> None:
        self._counters[:] = 0
        self.windows = 0


def window_iterate(win: DecodingWindow, iterations: int = 1) -> DecodingWindow:
    win.iterate(iterations)
    return win


def nominal_calls(w: int, L: int, iterations: int) -> int:
    """BDD calls of standard decoding per window position, w(L-1)l."""
    return w * (L - 1) * iterations


def decode_stream(
    params: SccParams,
    stream: Iterable,
    mode: Mode | str = Mode.STANDARD,
    L: int = 9,
    iterations: int = 7,
    sabm: SabmConfig | None = None,
    **window_kw,
) -> tuple[list[np.ndarray], CounterSnapshot]:
    """Decode received blocks B_1, B_2, ... and return the decoded blocks in order.

    Items of ``stream`` are hard-decision blocks or ``(hd, llrs, truth)``
    tuples. Blocks still inside the window when the stream ends are not
    returned.
    """
    win = DecodingWindow(params, L, mode, sabm, **window_kw)
    decoded = []
    for item in stream:
        hd, llrs, truth = item if isinstance(item, tuple) else (item, None, None)
        out = win.push(hd, llrs, truth)
        if out is not None and win.windows > 1:
            decoded.append(out)
        if win.full:
            win.iterate(iterations)
    return decoded, win.counters()
