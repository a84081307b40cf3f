"""Gray-labelled M-PAM, the real AWGN channel y = sqrt(rho) x + z, and exact LLRs.

LLR sign convention: lambda > 0 means bit 1 is more likely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp


@dataclass(frozen=True, eq=False)
class ModulationSpec:
    M: int
    m_bits: int
    points: np.ndarray  # ascending amplitudes, unit average energy
    labels: np.ndarray  # labels[i] = integer label (MSB first) of points[i]
    label_bits: np.ndarray  # (M, m_bits) bit matrix of the labels
    index_of_label: np.ndarray  # inverse of ``labels``


def make_pam(M: int) -> ModulationSpec:
    m_bits = int(M).bit_length() - 1
    if M < 2 or (1 << m_bits) != M:
        raise ValueError(f"M must be a power of two >= 2, got {M}")
    amps = np.arange(-(M - 1), M, 2, dtype=np.float64)
    points = amps / np.sqrt(np.mean(amps**2))
    idx = np.arange(M)
    labels = idx ^ (idx >> 1)  # binary reflected Gray code
    shifts = np.arange(m_bits - 1, -1, -1)
    label_bits = ((labels[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
    index_of_label = np.empty(M, dtype=np.int64)
    index_of_label[labels] = idx
    for a in (points, labels, label_bits, index_of_label):
        a.setflags(write=False)
    return ModulationSpec(M, m_bits, points, labels, label_bits, index_of_label)


def map_bits(spec: ModulationSpec, bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64).ravel()
    if bits.size % spec.m_bits:
        raise ValueError(f"bit count {bits.size} not a multiple of {spec.m_bits}")
    groups = bits.reshape(-1, spec.m_bits)
    weights = 1 << np.arange(spec.m_bits - 1, -1, -1)
    return spec.points[spec.index_of_label[groups @ weights]]


def awgn_transmit(symbols, rho: float, rng_seed=None, *, zero_noise: bool = False) -> np.ndarray:
    """Scale by sqrt(rho) and add unit-variance Gaussian noise.

    ``rng_seed`` may be an int or a ``numpy.random.Generator``; ``zero_noise``
    is a test hook that skips the noise draw.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    x = np.asarray(symbols, dtype=np.float64)
    y = np.sqrt(rho) * x
    if zero_noise:
        return y
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    return y + rng.standard_normal(x.shape)


def snr_db_to_rho(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def compute_llrs(spec: ModulationSpec, y, rho: float) -> np.ndarray:
    """Exact per-bit LLRs, returned flat in transmission order (m_bits per symbol)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    y = np.asarray(y, dtype=np.float64).ravel()
    if spec.M == 2:
        # log-ratio of two Gaussians collapses to a linear function
        return 2.0 * np.sqrt(rho) * spec.points[1] * y
    metric = -0.5 * (y[:, None] - np.sqrt(rho) * spec.points[None, :]) ** 2
    out = np.empty((y.size, spec.m_bits))
    for k in range(spec.m_bits):
        ones = spec.label_bits[:, k] == 1
        out[:, k] = logsumexp(metric[:, ones], axis=1) - logsumexp(metric[:, ~ones], axis=1)
    return out.ravel()


def hard_decision(llrs) -> np.ndarray:
    """Bit 1 iff lambda > 0; exact zeros decide 0."""
    return (np.asarray(llrs) > 0).astype(np.uint8)
