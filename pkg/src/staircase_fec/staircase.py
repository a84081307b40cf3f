"""Staircase encoder and block-layout helpers.

Every row ``j`` of ``[B_{i-1}^T B_i]`` is a component codeword: its first
``w`` bits are column ``j`` of the previous block, then ``w - p`` info bits,
then ``p`` parity bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bch import ComponentCodeSpec, encode


@dataclass(frozen=True, eq=False)
class SccParams:
    spec: ComponentCodeSpec

    def __post_init__(self):
        n_c = self.spec.n_c
        if n_c % 2:
            raise ValueError(f"staircase needs an even component length, got {n_c}")
        if self.p >= self.w:
            raise ValueError(f"redundancy p={self.p} must be below w={self.w}")

    @property
    def w(self) -> int:
        return self.spec.n_c // 2

    @property
    def p(self) -> int:
        return self.spec.n_c - self.spec.k_c

    @property
    def info_per_block(self) -> int:
        return self.w * (self.w - self.p)

    @property
    def rate(self) -> float:
        return 1.0 - self.p / self.w


@dataclass
class SccBlock:
    bits: np.ndarray  # (w, w) uint8
    index: int = 0


def zero_block(params: SccParams, index: int = 0) -> SccBlock:
    return SccBlock(np.zeros((params.w, params.w), dtype=np.uint8), index)


def scc_encode_block(params: SccParams, prev: SccBlock | np.ndarray, info) -> SccBlock:
    w, p = params.w, params.p
    prev_bits = prev.bits if isinstance(prev, SccBlock) else np.asarray(prev, dtype=np.uint8)
    if prev_bits.shape != (w, w):
        raise ValueError(f"previous block must be {w}x{w}")
    info = np.asarray(info, dtype=np.uint8)
    if info.size != w * (w - p):
        raise ValueError(f"expected {w * (w - p)} info bits, got {info.size}")
    msgs = np.concatenate([prev_bits.T, info.reshape(w, w - p)], axis=1)
    cw = encode(params.spec, msgs)
    index = prev.index + 1 if isinstance(prev, SccBlock) else 0
    return SccBlock(np.ascontiguousarray(cw[:, w:]), index)


def info_bits(params: SccParams, block) -> np.ndarray:
    """Information part (leftmost w - p columns) of a block."""
    bits = block.bits if isinstance(block, SccBlock) else block
    return bits[:, : params.w - params.p]


class PairRow:
    """Writable view of row ``j`` of ``[prev^T cur]``.

    Index ``k < w`` addresses ``prev[k, j]``; ``k >= w`` addresses
    ``cur[j, k - w]``.
    """

    def __init__(self, prev: np.ndarray, cur: np.ndarray, j: int):
        w = cur.shape[0]
        if not 0 <= j < w:
            raise IndexError(f"row {j} out of range for w={w}")
        self.prev, self.cur, self.j, self.w = prev, cur, j, w

    def __len__(self) -> int:
        return 2 * self.w

    def _locate(self, k: int):
        if not 0 <= k < 2 * self.w:
            raise IndexError(k)
        if k < self.w:
            return self.prev, (k, self.j)
        return self.cur, (self.j, k - self.w)

    def __getitem__(self, k: int) -> int:
        arr, idx = self._locate(k)
        return int(arr[idx])

    def __setitem__(self, k: int, value: int) -> None:
        arr, idx = self._locate(k)
        arr[idx] = value

    def flip(self, k: int) -> None:
        arr, idx = self._locate(k)
        arr[idx] ^= 1

    def __array__(self, dtype=None, copy=None):
        out = np.concatenate([self.prev[:, self.j], self.cur[self.j, :]])
        return out if dtype is None else out.astype(dtype)

    def assign(self, bits) -> None:
        bits = np.asarray(bits, dtype=np.uint8)
        self.prev[:, self.j] = bits[: self.w]
        self.cur[self.j, :] = bits[self.w :]


def pair_row(prev, cur, j: int) -> PairRow:
    prev_bits = prev.bits if isinstance(prev, SccBlock) else prev
    cur_bits = cur.bits if isinstance(cur, SccBlock) else cur
    return PairRow(prev_bits, cur_bits, j)


class StaircaseEncoder:
    """Streaming encoder; starts from the all-zero block B_0."""

    def __init__(self, params: SccParams):
        self.params = params
        self.last = zero_block(params)

    def push(self, info) -> SccBlock:
        self.last = scc_encode_block(self.params, self.last, info)
        return self.last


def serialize_block(block) -> np.ndarray:
    """Row-major bit order used for transmission."""
    bits = block.bits if isinstance(block, SccBlock) else block
    return np.ascontiguousarray(bits).ravel()


def deserialize_block(bits, w: int, index: int = 0) -> SccBlock:
    return SccBlock(np.asarray(bits, dtype=np.uint8).reshape(w, w).copy(), index)


def pack_block(block) -> bytes:
    """Row-major, MSB-first byte packing for on-disk test vectors."""
    return np.packbits(serialize_block(block)).tobytes()


def unpack_block(data: bytes, w: int, index: int = 0) -> SccBlock:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), count=w * w)
    return deserialize_block(bits, w, index)
