"""Quick oracle checks on small codes, runnable from the command line."""

from __future__ import annotations

import numpy as np

from . import bch
from .oracles import SphereDecoder, division_syndrome, gf_evaluate
from .staircase import SccParams, StaircaseEncoder, pair_row
from .window import DecodingWindow, Mode


def _check_bdd(spec, rng, trials: int) -> bool:
    ref = SphereDecoder(spec)
    n, k = spec.n_c, spec.k_c
    for _ in range(trials):
        c = bch.encode(spec, rng.integers(0, 2, k, dtype=np.uint8))
        if division_syndrome(spec, c) != (0, 0):
            return False
        r = c.copy()
        r[rng.choice(n, rng.integers(0, spec.d_0 + 2), replace=False)] ^= 1
        got, want = bch.bdd_decode(spec, r), ref.decode(r)
        if got.status != want.status or got.error_positions != want.error_positions:
            return False
        s = bch.syndrome(spec, r)
        if any(int(s[i - 1]) != gf_evaluate(spec, r, i) for i in range(1, 2 * spec.t + 1)):
            return False
    return True


def _check_staircase(spec, rng, blocks: int) -> bool:
    params = SccParams(spec)
    enc = StaircaseEncoder(params)
    prev = enc.last
    for _ in range(blocks):
        cur = enc.push(rng.integers(0, 2, params.info_per_block, dtype=np.uint8))
        for j in range(params.w):
            if any(bch.syndrome(spec, np.asarray(pair_row(prev.bits, cur.bits, j)))):
                return False
        prev = cur
    return True


def _check_window(spec, rng) -> bool:
    params = SccParams(spec)
    enc = StaircaseEncoder(params)
    win = DecodingWindow(params, 4, Mode.STANDARD)
    sent = []
    decoded = []
    for i in range(10):
        blk = enc.push(rng.integers(0, 2, params.info_per_block, dtype=np.uint8)).bits
        sent.append(blk)
        rx = blk.copy()
        rx[rng.integers(params.w), rng.integers(params.w)] ^= 1
        out = win.push(rx)
        if out is not None and win.windows > 1:
            decoded.append(out)
        if win.full:
            win.iterate(3)
    return all(np.array_equal(a, b) for a, b in zip(decoded, sent))


def run_selftest(seed: int = 0, trials: int = 2000) -> bool:
    rng = np.random.default_rng(seed)
    toy = bch.code_by_name("toy32")
    t3 = bch.build_code(5, 16, 3, 0, True)
    checks = [
        ("bdd toy (32,21,2) vs sphere table", lambda: _check_bdd(toy, rng, trials)),
        ("bdd (32,16,3) vs sphere table", lambda: _check_bdd(t3, rng, trials // 4)),
        ("staircase rows are codewords", lambda: _check_staircase(toy, rng, 20)),
        ("window corrects single errors", lambda: _check_window(toy, rng)),
    ]
    ok = True
    for name, fn in checks:
        res = fn()
        ok &= res
        print(f"{'PASS' if res else 'FAIL'}  {name}")
    return ok
