from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from staircase_fec.bch import (
    NAMED_CODES,
    BchParameterError,
    BddStatus,
    bdd_decode,
    build_code,
    code_by_name,
    encode,
    syndrome,
)
from staircase_fec.oracles import SphereDecoder, division_syndrome, gf_evaluate

from test_gf import clmul


def codeword_ints(spec):
    """Every codeword of a small code as an int (bit n_c-1-i holds position i)."""
    rows = encode(spec, np.eye(spec.k_c, dtype=np.uint8))
    weights = 1 << np.arange(spec.n_c - 1, -1, -1, dtype=np.uint64)
    gens = (rows.astype(np.uint64) * weights).sum(axis=1)
    cw = np.zeros(1, dtype=np.uint64)
    for g in gens:
        cw = np.concatenate([cw, cw ^ g])
    return cw


def test_toy_generator_is_m1_times_m3(toy):
    g = clmul(0b100101, 0b111101)
    assert toy.generator == g
    assert g.bit_length() - 1 == 10
    # g(x) divides x^31 + 1
    rem = (1 << 31) | 1
    while rem.bit_length() >= g.bit_length():
        rem ^= g << (rem.bit_length() - g.bit_length())
    assert rem == 0


def test_toy_minimum_distance_by_enumeration(toy):
    cw = codeword_ints(toy)
    assert cw.size == 1 << 21
    wts = np.bitwise_count(cw[1:])
    assert wts.min() == 6
    assert np.all(wts % 2 == 0)


@pytest.mark.parametrize("name, n, k", [
    ("bch256", 256, 239), ("bch228", 228, 209), ("bch504", 504, 485),
    ("bch128", 128, 113), ("bch512", 512, 493), ("toy32", 32, 21),
])
def test_named_codes(name, n, k):
    spec = code_by_name(name)
    assert (spec.n_c, spec.k_c, spec.t, spec.d_0) == (n, k, 2, 6)
    assert repr(spec) == f"BCH({n},{k},2)"


def test_bad_parameters():
    with pytest.raises(BchParameterError):
        build_code(5, 11, 3)
    with pytest.raises(BchParameterError):
        build_code(5, 21, 2, shorten=21)
    with pytest.raises(BchParameterError):
        code_by_name("bch999")
    with pytest.raises(ValueError):
        encode(code_by_name("toy32"), np.zeros(20, dtype=np.uint8))


@pytest.mark.parametrize("name", sorted(NAMED_CODES))
def test_encode_gives_zero_syndrome(name, rng):
    spec = code_by_name(name)
    msgs = rng.integers(0, 2, (5, spec.k_c), dtype=np.uint8)
    for c in encode(spec, msgs):
        assert not syndrome(spec, c).any()
        assert division_syndrome(spec, c) == (0, 0)


def test_syndrome_matches_horner_evaluation(toy, bch256, rng):
    for spec in (toy, bch256):
        for _ in range(20):
            r = rng.integers(0, 2, spec.n_c, dtype=np.uint8)
            s = syndrome(spec, r)
            for i in range(1, 2 * spec.t + 1):
                assert s[i - 1] == gf_evaluate(spec, r, i)
            assert s[-1] == r.sum() % 2


def test_sphere_oracle_agreement_exhaustive_low_weight(toy):
    ref = SphereDecoder(toy)
    c = encode(toy, np.zeros(toy.k_c, dtype=np.uint8))
    for wt in range(4):
        for pos in combinations(range(toy.n_c), wt):
            r = c.copy()
            r[list(pos)] ^= 1
            got, want = bdd_decode(toy, r), ref.decode(r)
            assert got.status == want.status
            assert got.error_positions == want.error_positions
            if wt <= 2:
                assert got.corrected and got.error_positions == frozenset(pos)
            else:
                # weight 3 is at distance >= 3 from every codeword
                assert not got.corrected


def test_miscorrection_from_weight6_codeword(toy):
    cw = codeword_ints(toy)
    w6 = int(cw[np.flatnonzero(np.bitwise_count(cw) == 6)[0]])
    ones = [i for i in range(32) if (w6 >> (31 - i)) & 1]
    # received word: 4 of the 6 ones; nearest codeword is the weight-6 one
    r = np.zeros(32, dtype=np.uint8)
    r[ones[:4]] = 1
    out = bdd_decode(toy, r)
    assert out.corrected
    assert out.error_positions == frozenset(ones[4:])
    assert out.corrected_word.sum() == 6


def test_failure_leaves_word_unchanged(toy):
    r = np.zeros(32, dtype=np.uint8)
    r[[0, 1, 2]] = 1
    out = bdd_decode(toy, r)
    assert out.status is BddStatus.FAILURE
    assert np.array_equal(out.corrected_word, r)


def test_extended_parity_error(toy):
    c = encode(toy, np.ones(toy.k_c, dtype=np.uint8))
    r = c.copy()
    r[31] ^= 1
    r[3] ^= 1
    out = bdd_decode(toy, r)
    assert out.error_positions == {3, 31}
    assert np.array_equal(out.corrected_word, c)


def test_t3_code_against_sphere_table(t3code, rng):
    ref = SphereDecoder(t3code)
    for _ in range(500):
        c = encode(t3code, rng.integers(0, 2, t3code.k_c, dtype=np.uint8))
        r = c.copy()
        r[rng.choice(32, rng.integers(0, 6), replace=False)] ^= 1
        got, want = bdd_decode(t3code, r), ref.decode(r)
        assert got.status == want.status and got.error_positions == want.error_positions


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_up_to_t_errors_always_corrected(data):
    spec = code_by_name("bch256")
    msg = np.array(data.draw(st.lists(st.integers(0, 1), min_size=239, max_size=239)), dtype=np.uint8)
    pos = data.draw(st.sets(st.integers(0, 255), max_size=2))
    c = encode(spec, msg)
    r = c.copy()
    r[list(pos)] ^= 1
    out = bdd_decode(spec, r)
    assert out.corrected and out.error_positions == frozenset(pos)
    assert np.array_equal(out.corrected_word, c)


def test_shortened_code_bdd(rng):
    spec = code_by_name("bch228")
    for _ in range(50):
        c = encode(spec, rng.integers(0, 2, spec.k_c, dtype=np.uint8))
        pos = rng.choice(spec.n_c, 2, replace=False)
        r = c.copy()
        r[pos] ^= 1
        out = bdd_decode(spec, r)
        assert np.array_equal(out.corrected_word, c)
