import numpy as np

from staircase_fec.modem import awgn_transmit, compute_llrs, hard_decision, make_pam, map_bits, snr_db_to_rho
from staircase_fec.staircase import SccParams, StaircaseEncoder


def scc_stream(spec, nblocks, snr_db, seed):
    """(hd, llrs, truth) for blocks B_1..B_nblocks over 2-PAM."""
    params = SccParams(spec)
    rng = np.random.default_rng(seed)
    enc = StaircaseEncoder(params)
    pam = make_pam(2)
    rho = snr_db_to_rho(snr_db)
    out = []
    for _ in range(nblocks):
        blk = enc.push(rng.integers(0, 2, params.info_per_block, dtype=np.uint8)).bits
        llrs = compute_llrs(pam, awgn_transmit(map_bits(pam, blk.ravel()), rho, rng), rho).reshape(blk.shape)
        out.append((hard_decision(llrs), llrs, blk))
    return out
