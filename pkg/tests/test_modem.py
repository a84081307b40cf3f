import math

import numpy as np
import pytest

from staircase_fec.modem import awgn_transmit, compute_llrs, hard_decision, make_pam, map_bits, snr_db_to_rho


def naive_llr(spec, y, rho, k):
    num = den = 0.0
    for i, x in enumerate(spec.points):
        p = math.exp(-0.5 * (y - math.sqrt(rho) * x) ** 2)
        if spec.label_bits[i, k]:
            num += p
        else:
            den += p
    return math.log(num / den)


def test_llr_matches_naive_sum_4pam():
    spec = make_pam(4)
    got = compute_llrs(spec, [0.3], 10.0)
    want = [naive_llr(spec, 0.3, 10.0, k) for k in range(2)]
    assert np.allclose(got, want, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("M", [2, 4, 8])
def test_llr_matches_naive_sum_random(M, rng):
    spec = make_pam(M)
    rho = snr_db_to_rho(12.0)
    y = rng.normal(0, 2, 20)
    got = compute_llrs(spec, y, rho).reshape(-1, spec.m_bits)
    for i, yi in enumerate(y):
        for k in range(spec.m_bits):
            assert got[i, k] == pytest.approx(naive_llr(spec, yi, rho, k), rel=1e-9, abs=1e-9)


def test_unit_energy_and_gray_labels():
    for M in (2, 4, 8):
        spec = make_pam(M)
        assert np.mean(spec.points**2) == pytest.approx(1.0)
        # neighbours differ in exactly one label bit
        diffs = np.abs(np.diff(spec.label_bits.astype(int), axis=0)).sum(axis=1)
        assert np.all(diffs == 1)
    assert make_pam(8).points[-1] == pytest.approx(7 / math.sqrt(21))
    with pytest.raises(ValueError):
        make_pam(6)


def test_noise_variance():
    y = awgn_transmit(np.zeros(1_000_000), 1.0, 7)
    assert 0.997 <= np.var(y) <= 1.003


@pytest.mark.parametrize("M", [2, 4, 8])
def test_hard_decision_is_nearest_point(M, rng):
    spec = make_pam(M)
    rho = snr_db_to_rho(15.0)
    bits = rng.integers(0, 2, 3000 * spec.m_bits)
    y = awgn_transmit(map_bits(spec, bits), rho, rng)
    hd = hard_decision(compute_llrs(spec, y, rho)).reshape(-1, spec.m_bits)
    nearest = np.argmin(np.abs(y[:, None] - math.sqrt(rho) * spec.points[None, :]), axis=1)
    assert np.array_equal(hd, spec.label_bits[nearest])


def test_noiseless_round_trip(rng):
    for M in (2, 4, 8):
        spec = make_pam(M)
        bits = rng.integers(0, 2, 60 * spec.m_bits).astype(np.uint8)
        y = awgn_transmit(map_bits(spec, bits), 100.0, zero_noise=True)
        assert np.array_equal(hard_decision(compute_llrs(spec, y, 100.0)), bits)


def test_sign_convention():
    spec = make_pam(2)
    assert compute_llrs(spec, [1.0], 1.0)[0] > 0  # bit 1 maps to +1
    assert hard_decision([0.0])[0] == 0


def test_seeded_noise_is_reproducible():
    a = awgn_transmit(np.ones(10), 2.0, 5)
    b = awgn_transmit(np.ones(10), 2.0, np.random.default_rng(5))
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        awgn_transmit(np.ones(3), 0.0)
