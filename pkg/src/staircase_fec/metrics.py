"""Error-floor estimates, relative complexity and BER bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from scipy.stats import norm


def min_stall_multiplicity_scc(w: int, t: int) -> int:
    """C(w, t+1) * sum_{m=1}^{t+1} C(w, m) C(w, t+1-m), exactly."""
    return math.comb(w, t + 1) * sum(math.comb(w, m) * math.comb(w, t + 1 - m) for m in range(1, t + 2))


def min_stall_multiplicity_pc(w: int, t: int) -> int:
    """C(w, t+1)^2, exactly."""
    return math.comb(w, t + 1) ** 2


def _floor(mmin: int, w: int, t: int, ber_pre: float) -> float:
    if not 0.0 < ber_pre < 1.0:
        raise ValueError("ber_pre must lie in (0, 1)")
    if w < t + 1 or t < 0:
        raise ValueError("need w >= t + 1 and t >= 0")
    s = (t + 1) ** 2
    # log domain: ber_pre^((t+1)^2) underflows quickly
    log_val = 2.0 * math.log(t + 1) - 2.0 * math.log(w) + math.log(mmin) + s * math.log(ber_pre)
    return math.exp(log_val)


def error_floor_scc(w: int, t: int, ber_pre: float) -> float:
    """Minimal-stall-pattern estimate of the staircase post-FEC BER floor."""
    return _floor(min_stall_multiplicity_scc(w, t), w, t, ber_pre)


def error_floor_pc(w: int, t: int, ber_pre: float) -> float:
    """Same estimate with the product-code multiplicity; ``w`` is n_c here."""
    return _floor(min_stall_multiplicity_pc(w, t), w, t, ber_pre)


def relative_complexity(mean_calls: float, w: int, L: int, iterations: int) -> float:
    """eta = (N - w(L-1)l) / (w(L-1)l) for the mean BDD calls N per window."""
    if mean_calls < 0:
        raise ValueError("mean_calls must be non-negative")
    nsd = w * (L - 1) * iterations
    return (mean_calls - nsd) / nsd


def pre_fec_ber_2pam(snr_db: float) -> float:
    """Hard-decision channel error probability of 2-PAM, Q(sqrt(rho))."""
    return float(norm.sf(math.sqrt(10 ** (snr_db / 10))))


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials <= 0:
        return (0.0, 1.0)
    z = float(norm.ppf(0.5 + confidence / 2))
    p = errors / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if errors == 0 else max(0.0, centre - half)
    hi = 1.0 if errors == trials else min(1.0, centre + half)
    return (lo, hi)


@dataclass
class BerCounter:
    bits_observed: int = 0
    bit_errors: int = 0
    blocks_observed: int = 0
    block_errors: int = 0
    windows: int = 0
    bdd_calls: int = 0

    def __post_init__(self):
        if self.bit_errors > self.bits_observed or self.block_errors > self.blocks_observed:
            raise ValueError("error count exceeds observations")

    def __add__(self, other: "BerCounter") -> "BerCounter":
        return BerCounter(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_observed if self.bits_observed else 0.0

    def interval(self, confidence: float = 0.95) -> tuple[float, float]:
        return wilson_interval(self.bit_errors, self.bits_observed, confidence)

    def mean_calls(self) -> float:
        return self.bdd_calls / self.windows if self.windows else 0.0
