import math
from fractions import Fraction

import pytest

from staircase_fec.metrics import (
    BerCounter,
    error_floor_pc,
    error_floor_scc,
    min_stall_multiplicity_pc,
    min_stall_multiplicity_scc,
    pre_fec_ber_2pam,
    relative_complexity,
    wilson_interval,
)


def binom(n, k):
    num = den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def exact_floor(w, t, p, pc=False):
    p = Fraction(p)
    if pc:
        mult = binom(w, t + 1) ** 2
    else:
        mult = binom(w, t + 1) * sum(binom(w, m) * binom(w, t + 1 - m) for m in range(1, t + 2))
    return float(Fraction((t + 1) ** 2, w * w) * mult * p ** ((t + 1) ** 2))


@pytest.mark.parametrize("w, t", [(128, 2), (256, 2), (512, 2), (114, 2), (64, 3)])
@pytest.mark.parametrize("p", [1e-2, 3.3e-3, 1e-4])
def test_floors_match_exact_rational(w, t, p):
    assert error_floor_scc(w, t, p) == pytest.approx(exact_floor(w, t, p), rel=1e-12)
    assert error_floor_pc(w, t, p) == pytest.approx(exact_floor(w, t, p, pc=True), rel=1e-12)


def test_multiplicity_small_case():
    # w = 3, t = 1: C(3,2) * (C(3,1)C(3,1) + C(3,2)C(3,0)) = 3 * (9 + 3)
    assert min_stall_multiplicity_scc(3, 1) == 36
    assert min_stall_multiplicity_pc(3, 1) == 9


def test_floor_input_checks():
    with pytest.raises(ValueError):
        error_floor_scc(128, 2, 0.0)
    with pytest.raises(ValueError):
        error_floor_scc(2, 2, 0.1)


def test_relative_complexity():
    assert relative_complexity(7168, 128, 9, 7) == 0.0
    assert relative_complexity(7168 * 1.04, 128, 9, 7) == pytest.approx(0.04)
    with pytest.raises(ValueError):
        relative_complexity(-1, 128, 9, 7)


def test_pre_fec_ber():
    assert pre_fec_ber_2pam(0.0) == pytest.approx(0.5 * math.erfc(1 / math.sqrt(2)))
    assert pre_fec_ber_2pam(7.0) == pytest.approx(0.5 * math.erfc(math.sqrt(10**0.7 / 2)))


def test_wilson_interval():
    lo, hi = wilson_interval(100, 10**6)
    assert lo < 1e-4 < hi
    assert wilson_interval(0, 1000)[0] == 0.0
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_ber_counter():
    a = BerCounter(1000, 3, 10, 1, 10, 500)
    b = BerCounter(1000, 1, 10, 1, 10, 700)
    s = a + b
    assert s.ber == pytest.approx(0.002)
    assert s.mean_calls() == 60
    with pytest.raises(ValueError):
        BerCounter(1, 2)
