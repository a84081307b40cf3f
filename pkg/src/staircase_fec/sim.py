"""Monte-Carlo harness: encode -> M-PAM/AWGN -> LLR -> decode -> count.

Every stream is an independent chain whose RNG is seeded from
``numpy.random.SeedSequence([master_seed, stream_index])``. Data bits and
noise are drawn in the same order regardless of mode, SNR or delta, so runs
that differ only in those settings see identical noise realisations (paired
comparisons). Streams are processed in fixed-size rounds and merged in index
order, which makes results independent of the worker count.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bch import NAMED_CODES, BchParameterError, ComponentCodeSpec, build_code
from .metrics import BerCounter
from .modem import awgn_transmit, compute_llrs, hard_decision, make_pam, map_bits, snr_db_to_rho
from .product import PcArray, mark_array, pc_decode, pc_encode
from .sabm import SabmConfig
from .staircase import SccParams, StaircaseEncoder
from ._window_kernel import N_COUNTERS
from .window import CounterSnapshot, DecodingWindow, Mode

log = logging.getLogger(__name__)

CSV_COLUMNS = ("mode", "code", "modulation", "snr_db", "delta", "bits", "bit_errors", "ber", "windows", "bdd_calls", "eta", "seed")


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class SimConfig:
    code: str = "bch256"
    scheme: str = "scc"
    modulation: int = 2
    modes: tuple[str, ...] = ("standard",)
    snr_db: tuple[float, ...] = (7.0,)
    delta: tuple[float, ...] = (10.0,)
    L: int = 9
    iterations: int = 7
    min_errors: int = 100
    max_bits: int = 200_000_000
    blocks_per_stream: int = 200  # measured blocks (SCC) or frames (PC) per stream
    streams_per_round: int = 4
    max_streams: int | None = None
    seed: int = 1
    workers: int = 1
    llr_scale: float = 2.0
    hub_count: int | None = None
    check_invariants: bool = False
    early_exit: bool = False

    def __post_init__(self):
        if self.scheme not in ("scc", "pc"):
            raise ConfigError("scheme", "must be 'scc' or 'pc'")
        if self.modulation not in (2, 4, 8):
            raise ConfigError("modulation", "M must be 2, 4 or 8")
        if not self.modes:
            raise ConfigError("modes", "empty grid")
        for m in self.modes:
            try:
                mode = Mode.parse(m)
            except KeyError:
                raise ConfigError("modes", f"unknown mode {m!r}") from None
            if self.scheme == "pc" and mode not in (Mode.STANDARD, Mode.SABM):
                raise ConfigError("modes", "product codes support standard and sabm only")
        if not self.snr_db:
            raise ConfigError("snr_db", "empty grid")
        if not self.delta:
            raise ConfigError("delta", "empty grid")
        if any(d <= 0 for d in self.delta):
            raise ConfigError("delta", "thresholds must be positive")
        if self.L < 2:
            raise ConfigError("L", "must be >= 2")
        if self.iterations < 1:
            raise ConfigError("iterations", "must be >= 1")
        if self.min_errors < 1:
            raise ConfigError("min_errors", "must be positive")
        if self.max_bits < 1:
            raise ConfigError("max_bits", "must be positive")
        if self.blocks_per_stream < 1:
            raise ConfigError("blocks_per_stream", "must be positive")
        if self.streams_per_round < 1:
            raise ConfigError("streams_per_round", "must be positive")
        if self.workers < 1:
            raise ConfigError("workers", "must be positive")
        if self.llr_scale <= 0:
            raise ConfigError("llr_scale", "must be positive")
        try:
            spec = resolve_code(self.code)
        except (BchParameterError, ValueError) as exc:
            raise ConfigError("code", str(exc)) from None
        if self.scheme == "scc" and spec.n_c % 2:
            raise ConfigError("code", "staircase codes need an even component length")

    def replace(self, **kw) -> "SimConfig":
        return dataclasses.replace(self, **kw)


@lru_cache(maxsize=None)
def resolve_code(code: str) -> ComponentCodeSpec:
    """A named code, or ``"m,base_k,t,shorten[,extended]"``."""
    if code in NAMED_CODES:
        return build_code(**NAMED_CODES[code])
    parts = [p.strip() for p in code.split(",")]
    if len(parts) not in (4, 5):
        raise ValueError(f"unknown code {code!r}; use a name from {sorted(NAMED_CODES)} or m,base_k,t,shorten[,extended]")
    m, k, t, s = (int(p) for p in parts[:4])
    ext = bool(int(parts[4])) if len(parts) == 5 else True
    return build_code(m, k, t, s, ext)


@dataclass
class StreamResult:
    index: int
    counter: BerCounter
    extra: dict = field(default_factory=dict)


def stream_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, index]))


def _transmit(bits: np.ndarray, pam, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Map a bit array, pass it through the channel and return LLRs of the same shape."""
    flat = bits.ravel()
    pad = (-flat.size) % pam.m_bits
    if pad:
        flat = np.concatenate([flat, np.zeros(pad, dtype=np.uint8)])
    y = awgn_transmit(map_bits(pam, flat), rho, rng)
    llrs = compute_llrs(pam, y, rho)
    return llrs[: bits.size].reshape(bits.shape)


def simulate_scc_stream(cfg: SimConfig, snr_db: float, delta: float, mode, index: int) -> StreamResult:
    """One staircase chain; the first L window positions are warm-up."""
    spec = resolve_code(cfg.code)
    params = SccParams(spec)
    mode = Mode.parse(mode)
    pam = make_pam(cfg.modulation)
    rho = snr_db_to_rho(snr_db)
    rng = stream_rng(cfg.seed, index)
    w, L = params.w, cfg.L
    ninfo = w - params.p
    sabm = SabmConfig(delta=delta, hub_count=cfg.hub_count, llr_scale=cfg.llr_scale)
    win = DecodingWindow(params, L, mode, sabm, check_invariants=cfg.check_invariants, early_exit=cfg.early_exit)
    enc = StaircaseEncoder(params)
    sent: dict[int, np.ndarray] = {}
    counter = BerCounter()
    warm = L
    baseline = win.counters()
    channel_errors = 0
    i = 0
    while counter.blocks_observed < cfg.blocks_per_stream:
        i += 1
        info = rng.integers(0, 2, params.info_per_block, dtype=np.uint8)
        block = enc.push(info)
        sent[i] = block.bits
        llrs = _transmit(block.bits, pam, rho, rng)
        hd = hard_decision(llrs)
        channel_errors += int(np.count_nonzero(hd != block.bits))
        out = win.push(hd, llrs, block.bits)
        if out is not None:
            # window position k (1-based) has just emitted B_{k-1}
            k = win.windows
            if k > warm:
                ref = sent.pop(k - 1)
                nerr = int(np.count_nonzero(out[:, :ninfo] != ref[:, :ninfo]))
                counter.bits_observed += params.info_per_block
                counter.bit_errors += nerr
                counter.blocks_observed += 1
                counter.block_errors += nerr > 0
                if counter.blocks_observed == cfg.blocks_per_stream:
                    break
            else:
                sent.pop(k - 1, None)
        if win.full:
            win.iterate(cfg.iterations)
            if win.windows == warm:
                baseline = win.counters()
    snap = win.counters()
    extra = {k: v - getattr(baseline, k) for k, v in dataclasses.asdict(snap).items()}
    counter.windows = extra["windows"]
    counter.bdd_calls = extra["bdd_calls"]
    extra["channel_errors"] = channel_errors
    return StreamResult(index, counter, extra)


def simulate_pc_stream(cfg: SimConfig, snr_db: float, delta: float, mode, index: int) -> StreamResult:
    """Independent product-code frames."""
    spec = resolve_code(cfg.code)
    mode = Mode.parse(mode)
    pam = make_pam(cfg.modulation)
    rho = snr_db_to_rho(snr_db)
    rng = stream_rng(cfg.seed, index)
    k = spec.k_c
    sabm = SabmConfig(delta=delta, hub_count=cfg.hub_count, llr_scale=cfg.llr_scale)
    counter = BerCounter()
    totals = np.zeros(N_COUNTERS, dtype=np.int64)
    channel_errors = 0
    for _ in range(cfg.blocks_per_stream):
        info = rng.integers(0, 2, (k, k), dtype=np.uint8)
        tx = pc_encode(spec, info).bits
        llrs = _transmit(tx, pam, rho, rng)
        rx = PcArray(hard_decision(llrs))
        channel_errors += int(np.count_nonzero(rx.bits != tx))
        if mode is Mode.SABM:
            mark_array(rx, llrs, sabm, spec)
        pc_decode(spec, rx, mode, cfg.iterations, check_invariants=cfg.check_invariants)
        nerr = int(np.count_nonzero(rx.bits[:k, :k] != info))
        counter.bits_observed += k * k
        counter.bit_errors += nerr
        counter.blocks_observed += 1
        counter.block_errors += nerr > 0
        totals += rx.counters
    counter.windows = cfg.blocks_per_stream
    counter.bdd_calls = int(totals[0])
    extra = dataclasses.asdict(CounterSnapshot.from_array(totals, cfg.blocks_per_stream))
    extra["channel_errors"] = channel_errors
    return StreamResult(index, counter, extra)


def simulate_stream(cfg: SimConfig, snr_db: float, delta: float, mode, index: int) -> StreamResult:
    fn = simulate_scc_stream if cfg.scheme == "scc" else simulate_pc_stream
    return fn(cfg, snr_db, delta, mode, index)


def _stream_task(args):
    return simulate_stream(*args)


def run_streams(cfg: SimConfig, snr_db: float, delta: float, mode, indices, executor=None) -> list[StreamResult]:
    tasks = [(cfg, snr_db, delta, str(Mode.parse(mode).name), i) for i in indices]
    if executor is None:
        return [_stream_task(t) for t in tasks]
    return list(executor.map(_stream_task, tasks))


@dataclass
class PointResult:
    mode: str
    snr_db: float
    delta: float | None
    counter: BerCounter
    streams: list[StreamResult]

    def extra_total(self, key: str) -> int:
        return sum(s.extra.get(key, 0) for s in self.streams)


def run_point(cfg: SimConfig, snr_db: float, delta: float | None, mode, executor=None) -> PointResult:
    """Accumulate streams round by round until the stop rule fires."""
    total = BerCounter()
    streams: list[StreamResult] = []
    start = 0
    d = delta if delta is not None else cfg.delta[0]
    while True:
        n = cfg.streams_per_round
        if cfg.max_streams is not None:
            n = min(n, cfg.max_streams - start)
        if n <= 0:
            break
        for res in run_streams(cfg, snr_db, d, mode, range(start, start + n), executor):
            streams.append(res)
            total = total + res.counter
        start += n
        violations = sum(s.extra.get("violations", 0) for s in streams)
        if violations:
            raise InvariantViolation(f"{violations} decoder invariant violations at snr={snr_db} mode={mode}")
        if total.bit_errors >= cfg.min_errors or total.bits_observed >= cfg.max_bits:
            break
        log.debug("snr=%s mode=%s streams=%d errors=%d", snr_db, mode, start, total.bit_errors)
    return PointResult(str(Mode.parse(mode).name.lower()), snr_db, delta, total, streams)


def nominal_calls_per_window(cfg: SimConfig) -> int:
    spec = resolve_code(cfg.code)
    if cfg.scheme == "scc":
        return (spec.n_c // 2) * (cfg.L - 1) * cfg.iterations
    return 2 * spec.n_c * cfg.iterations


def point_row(cfg: SimConfig, pr: PointResult) -> dict:
    c = pr.counter
    nsd = nominal_calls_per_window(cfg)
    eta = (c.mean_calls() - nsd) / nsd if c.windows else 0.0
    return {
        "mode": pr.mode,
        "code": cfg.code,
        "modulation": cfg.modulation,
        "snr_db": f"{pr.snr_db:g}",
        "delta": "" if pr.delta is None else f"{pr.delta:g}",
        "bits": c.bits_observed,
        "bit_errors": c.bit_errors,
        "ber": f"{c.ber:.6e}",
        "windows": c.windows,
        "bdd_calls": c.bdd_calls,
        "eta": f"{eta:.6f}",
        "seed": cfg.seed,
    }


def run(cfg: SimConfig) -> list[dict]:
    """Evaluate every (snr, delta, mode) grid point; delta applies to SABM only."""
    executor = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    rows = []
    try:
        for snr in cfg.snr_db:
            for mode_name in cfg.modes:
                mode = Mode.parse(mode_name)
                deltas = cfg.delta if mode is Mode.SABM else (None,)
                for delta in deltas:
                    pr = run_point(cfg, snr, delta, mode, executor)
                    log.info("snr=%g mode=%s delta=%s ber=%.3e", snr, pr.mode, delta, pr.counter.ber)
                    rows.append(point_row(cfg, pr))
    finally:
        if executor is not None:
            executor.shutdown()
    return rows


def sweep_delta(cfg: SimConfig, deltas) -> list[dict]:
    deltas = tuple(float(d) for d in deltas)
    if not deltas:
        raise ConfigError("delta", "empty grid")
    return run(cfg.replace(delta=deltas, modes=("sabm",)))


def sweep_snr(cfg: SimConfig, snrs) -> list[dict]:
    snrs = tuple(float(s) for s in snrs)
    if not snrs:
        raise ConfigError("snr_db", "empty grid")
    return run(cfg.replace(snr_db=snrs))


def write_csv(rows: list[dict], fh=None) -> str:
    buf = io.StringIO() if fh is None else fh
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue() if fh is None else ""
