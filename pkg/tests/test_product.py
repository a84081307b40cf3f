import numpy as np
import pytest

from staircase_fec.bch import bdd_decode, code_by_name, syndrome
from staircase_fec.modem import awgn_transmit, compute_llrs, hard_decision, make_pam, map_bits, snr_db_to_rho
from staircase_fec.product import PcArray, mark_array, pc_decode, pc_encode, pc_info, pc_rate
from staircase_fec.sabm import SabmConfig


@pytest.fixture(scope="module")
def bch128():
    return code_by_name("bch128")


def test_encoding_validity(bch128, rng):
    for _ in range(3):
        info = rng.integers(0, 2, (113, 113), dtype=np.uint8)
        arr = pc_encode(bch128, info)
        assert np.array_equal(pc_info(bch128, arr), info)
        for i in range(128):
            assert not syndrome(bch128, arr.bits[i]).any()
            assert not syndrome(bch128, arr.bits[:, i]).any()
    assert pc_rate(bch128) == pytest.approx((113 / 128) ** 2)


def test_sparse_errors_corrected(bch128, rng):
    info = rng.integers(0, 2, (113, 113), dtype=np.uint8)
    tx = pc_encode(bch128, info).bits
    for mode in ("standard", "sabm"):
        rx = tx.copy()
        idx = rng.choice(128 * 128, 60, replace=False)
        rx.flat[idx] ^= 1
        arr = PcArray(rx)
        mark_array(arr, np.where(rx == 1, 4.0, -4.0), SabmConfig(), bch128)
        pc_decode(bch128, arr, mode, check_invariants=True)
        assert np.array_equal(arr.bits, tx)
        assert arr.counter_snapshot().violations == 0


def test_standard_matches_python_row_column_loop(bch128, rng):
    tx = pc_encode(bch128, rng.integers(0, 2, (113, 113), dtype=np.uint8)).bits
    rx = tx ^ (rng.random(tx.shape) < 0.012).astype(np.uint8)
    ref = rx.copy()
    for _ in range(4):
        for i in range(128):
            ref[i] = bdd_decode(bch128, ref[i]).corrected_word
        for i in range(128):
            ref[:, i] = bdd_decode(bch128, ref[:, i]).corrected_word
    arr = pc_decode(bch128, PcArray(rx.copy()), "standard", iterations=4)
    assert np.array_equal(arr.bits, ref)
    assert arr.counters[0] == 2 * 128 * 4


def test_sabm_invariants_on_noisy_frames(bch128):
    pam = make_pam(2)
    rho = snr_db_to_rho(5.9)
    rng = np.random.default_rng(11)
    better = 0
    for _ in range(10):
        tx = pc_encode(bch128, rng.integers(0, 2, (113, 113), dtype=np.uint8)).bits
        llrs = compute_llrs(pam, awgn_transmit(map_bits(pam, tx.ravel()), rho, rng), rho).reshape(tx.shape)
        hd = hard_decision(llrs)
        std = pc_decode(bch128, PcArray(hd.copy()), "standard")
        arr = mark_array(PcArray(hd.copy()), llrs, SabmConfig(), bch128)
        pc_decode(bch128, arr, "sabm", check_invariants=True)
        assert arr.counter_snapshot().violations == 0
        better += np.count_nonzero(arr.bits != tx) <= np.count_nonzero(std.bits != tx)
    assert better >= 8


def test_bad_inputs(bch128):
    arr = PcArray(np.zeros((128, 128), dtype=np.uint8))
    with pytest.raises(ValueError):
        pc_decode(bch128, arr, "genie_mcfree")
    with pytest.raises(ValueError):
        pc_decode(bch128, arr, "sabm")
    with pytest.raises(ValueError):
        pc_encode(bch128, np.zeros((10, 10)))
