"""Monte Carlo BER/FER campaigns over the sectioned channel.

Every frame draws its randomness from ``SeedSequence(master_seed,
spawn_key=(snr_index, frame_index))``, so a campaign's outcome depends on the
configuration alone; worker count only changes wall time. Frames are
accumulated in index order and a point stops at the exact frame where the
frame-error target is reached (or at the frame cap).

A frame that fails to converge contributes ``max_iterations`` to the
iteration averages.
"""

from __future__ import annotations

import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .channel import CorrelationModel, default_correlation, gen_profile, transmit
from .codeconstruct import SCCodeSpec, assemble_sc
from .decoder import min_sum_decode
from .interleave import block_interleaver, identity_map, sc_interleaver
from .presets import get_preset

INTERLEAVERS = ("none", "block", "sc")


class ConfigError(ValueError):
    pass


@dataclass
class SimConfig:
    code: SCCodeSpec
    snr_db: list
    model: CorrelationModel = field(default_factory=default_correlation)
    interleaver: str = "none"
    frames: int = 1000
    min_frame_errors: int = 200
    master_seed: int = 0
    max_iterations: int = 50
    n_sections: int | None = None
    fixed_profile: bool = False

    def __post_init__(self):
        self.snr_db = [float(s) for s in np.atleast_1d(self.snr_db)]
        if not self.snr_db:
            raise ConfigError("SNR sweep list is empty")
        if self.frames < 1:
            raise ConfigError("frames must be >= 1")
        if self.interleaver not in INTERLEAVERS:
            raise ConfigError(f"interleaver must be one of {INTERLEAVERS}")
        if self.max_iterations < 0:
            raise ConfigError("max_iterations must be >= 0")

    @property
    def sections(self) -> int:
        if self.n_sections is not None:
            return self.n_sections
        return 30 if self.code.is_block else self.code.L


@dataclass
class SimRow:
    snr_abs_db: float
    bits_sent: int
    bit_errors: int
    frames_sent: int
    frame_errors: int
    ber: float
    fer: float
    avg_iters: float
    ci95_ber: float

    @property
    def ber_interval(self) -> tuple[float, float]:
        return (self.ber - self.ci95_ber, self.ber + self.ci95_ber)


CSV_COLUMNS = [f.name for f in fields(SimRow)]


@dataclass
class SimResult:
    rows: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]


def ci95_halfwidth(errors: int, trials: int) -> float:
    """Normal-approximation 95% half-width of a binomial proportion."""
    if trials == 0:
        return 0.0
    p = errors / trials
    return 1.96 * math.sqrt(p * (1.0 - p) / trials)


def block_avg_iterations(iterations) -> float:
    """Average iterations for grouped block codewords.

    ``iterations`` has shape ``(groups, N)``; a group needs as many iterations
    as its slowest codeword, so the result is ``(N / M) * sum_groups max``
    with ``M = groups * N`` total codewords.
    """
    it = np.asarray(iterations, dtype=float)
    if it.ndim != 2 or it.size == 0:
        raise ValueError("expected a non-empty (groups, N) array")
    M, N = it.size, it.shape[1]
    return float(N / M * it.max(axis=1).sum())


def sc_avg_iterations(iterations) -> float:
    it = np.asarray(iterations, dtype=float)
    if it.size == 0:
        raise ValueError("no SC codewords")
    return float(it.mean())


def _frame_rngs(master_seed: int, snr_idx: int, frame_idx: int):
    ss = np.random.SeedSequence(master_seed, spawn_key=(snr_idx, frame_idx))
    prof_ss, noise_ss = ss.spawn(2)
    return np.random.default_rng(prof_ss), np.random.default_rng(noise_ss)


def _fixed_profile_rng(master_seed: int, snr_idx: int):
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(snr_idx,)))


class _Campaign:
    """Shared per-campaign state; ``frame`` is pure given its indices."""

    def __init__(self, config: SimConfig):
        self.cfg = config
        spec = config.code
        if spec.is_block:
            self.N = config.sections
            self.n = spec.block_length
            self.H = assemble_sc(spec)
            if config.interleaver == "sc":
                raise ConfigError("the sc interleaver applies to coupled codes only")
            if config.interleaver == "block":
                self.imap = block_interleaver(self.N, self.n)
            else:
                self.imap = identity_map(self.N * self.n, self.N)
        else:
            if config.sections != spec.L:
                raise ConfigError(f"an SC codeword spans L = {spec.L} sections, got {config.sections}")
            self.N = spec.L
            self.n = spec.length
            self.H = assemble_sc(spec)
            if config.interleaver == "block":
                raise ConfigError("the block interleaver applies to uncoupled block codes only")
            if config.interleaver == "sc":
                self.imap = sc_interleaver(spec)
            else:
                self.imap = identity_map(spec.length, spec.L)
        self.total_bits = self.imap.total_bits
        self.zeros = np.zeros(self.total_bits, dtype=np.uint8)
        self.fixed = {}

    def profile(self, snr_idx, frame_rng):
        cfg = self.cfg
        snr = cfg.snr_db[snr_idx]
        if cfg.fixed_profile:
            if snr_idx not in self.fixed:
                self.fixed[snr_idx] = gen_profile(cfg.model, snr, self.N, _fixed_profile_rng(cfg.master_seed, snr_idx))
            return self.fixed[snr_idx]
        return gen_profile(cfg.model, snr, self.N, frame_rng)

    def channel_llr(self, snr_idx, frame_idx):
        """All-zero transmission; returns LLRs in codeword order."""
        prof_rng, noise_rng = _frame_rngs(self.cfg.master_seed, snr_idx, frame_idx)
        prof = self.profile(snr_idx, prof_rng)
        llr = transmit(self.zeros, prof, noise_rng)
        return self.imap.invert(llr)

    def frame(self, snr_idx, frame_idx):
        """Returns ``(bit_errors, frame_error, iterations)``.

        ``iterations`` is a list with one entry per block codeword of the group
        for block codes and a single count for SC codes.
        """
        llr = self.channel_llr(snr_idx, frame_idx)
        maxit = self.cfg.max_iterations
        if self.cfg.code.is_block:
            errs, ok, its = 0, True, []
            for j in range(self.N):
                res = min_sum_decode(self.H, llr[j * self.n:(j + 1) * self.n], maxit)
                e = int(res.hard_bits.sum())
                errs += e
                ok = ok and res.converged and e == 0
                its.append(res.iterations_used if res.converged else maxit)
            return errs, not ok, its
        res = min_sum_decode(self.H, llr, maxit)
        e = int(res.hard_bits.sum())
        return e, (not res.converged) or e > 0, res.iterations_used if res.converged else maxit


def _run(config: SimConfig, threads: int = 1, batch: int = 32, progress=None) -> SimResult:
    camp = _Campaign(config)
    result = SimResult()
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for si, snr in enumerate(config.snr_db):
            bit_err = frame_err = frames = 0
            its = []
            done = False
            start = 0
            while not done and start < config.frames:
                idx = range(start, min(start + batch * max(threads, 1), config.frames))
                if pool is None:
                    outs = [camp.frame(si, f) for f in idx]
                else:
                    outs = list(pool.map(lambda f: camp.frame(si, f), idx))
                for be, fe, it in outs:
                    bit_err += be
                    frame_err += int(fe)
                    frames += 1
                    its.append(it)
                    if frame_err >= config.min_frame_errors:
                        done = True
                        break
                start = idx.stop
                if progress is not None:
                    progress(f"snr={snr:g} frames={frames} frame_errors={frame_err} bit_errors={bit_err}")
            bits = frames * camp.total_bits
            if config.code.is_block:
                avg = block_avg_iterations(its) if its else 0.0
            else:
                avg = sc_avg_iterations(its) if its else 0.0
            result.rows.append(SimRow(
                snr_abs_db=snr,
                bits_sent=bits,
                bit_errors=bit_err,
                frames_sent=frames,
                frame_errors=frame_err,
                ber=bit_err / bits if bits else 0.0,
                fer=frame_err / frames if frames else 0.0,
                avg_iters=avg,
                ci95_ber=ci95_halfwidth(bit_err, bits),
            ))
    finally:
        if pool is not None:
            pool.shutdown()
    return result


def run_sc_campaign(config: SimConfig, threads: int = 1, progress=None) -> SimResult:
    if config.code.is_block:
        raise ConfigError("run_sc_campaign needs a coupled code (m >= 1 or L > 1)")
    return _run(config, threads=threads, progress=progress)


def run_block_campaign(config: SimConfig, threads: int = 1, progress=None) -> SimResult:
    """Groups of ``N`` block codewords share one pass over the ``N`` sections.

    A group is one frame: it is in error unless every codeword decodes, and
    its iteration count is that of its slowest codeword.
    """
    if not config.code.is_block:
        raise ConfigError("run_block_campaign needs an uncoupled block code")
    return _run(config, threads=threads, progress=progress)


def run_campaign(config: SimConfig, threads: int = 1, progress=None) -> SimResult:
    if config.code.is_block:
        return run_block_campaign(config, threads, progress)
    return run_sc_campaign(config, threads, progress)


def write_csv(result: SimResult, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in result:
        w.writerow([repr(v) if isinstance(v, float) else v for v in asdict(row).values()])


def export_csv(result: SimResult, path) -> None:
    with open(path, "w", newline="") as fh:
        write_csv(result, fh)


def read_csv(path) -> SimResult:
    casts = {f.name: (float if f.type in ("float", float) else int) for f in fields(SimRow)}
    with open(path, newline="") as fh:
        rows = [SimRow(**{k: casts[k](v) for k, v in rec.items()}) for rec in csv.DictReader(fh)]
    return SimResult(rows)


def config_from_dict(d: dict) -> SimConfig:
    d = dict(d)
    code = d.pop("code")
    if isinstance(code, str):
        code = get_preset(code)
    else:
        code = SCCodeSpec.from_dict(code)
    ch = dict(d.pop("channel", {}))
    snr = ch.pop("snr_abs_db", d.pop("snr_db", None))
    if snr is None:
        raise ConfigError("channel.snr_abs_db is required")
    a = ch.pop("a", None)
    sigma = ch.pop("sigma", None)
    base = default_correlation()
    model = CorrelationModel(base.a if a is None else a, base.sigma if sigma is None else sigma)
    n_sections = ch.pop("n_sections", None)
    seed = ch.pop("seed", None)
    if ch:
        raise ConfigError(f"unknown channel fields: {sorted(ch)}")
    if "master_seed" not in d and seed is not None:
        d["master_seed"] = seed
    allowed = {"interleaver", "frames", "min_frame_errors", "master_seed", "max_iterations", "fixed_profile"}
    extra = set(d) - allowed
    if extra:
        raise ConfigError(f"unknown config fields: {sorted(extra)}")
    return SimConfig(code=code, snr_db=snr, model=model, n_sections=n_sections, **d)


def load_config(path) -> SimConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return config_from_dict(data)


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
