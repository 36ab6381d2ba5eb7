"""Section-wise AWGN channel with correlated SNR variation.

SNR convention: unit-energy BPSK symbols (bit 0 -> +1, bit 1 -> -1) and
``SNR_dB = 10 log10(1 / sigma_n**2)``, i.e. the per-section noise standard
deviation is ``10 ** (-SNR_dB / 20)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# channel LLR magnitude used when a section is noiseless
NOISELESS_LLR = 1.0e6


@dataclass(frozen=True, eq=False)
class CorrelationModel:
    """``delta_s = sum_k a[k] * u[s - k]`` with ``u ~ N(0, sigma**2)`` i.i.d."""

    a: np.ndarray
    sigma: float

    def __post_init__(self):
        a = np.array(self.a, dtype=float).ravel()
        if a.size == 0:
            raise ValueError("correlation vector must be non-empty")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def alpha(self) -> int:
        return int(self.a.size)

    @property
    def variance(self) -> float:
        """Stationary variance of the per-section deviation (dB^2)."""
        return float(self.sigma**2 * np.sum(self.a**2))


def default_correlation() -> CorrelationModel:
    a = [0.78, 0.44, 0.31, 0.23, 0.15, 0.08, 0.09, 0.03, 0.04, 0.02, -0.04]
    return CorrelationModel(np.array(a), 0.15)


def uniform_model() -> CorrelationModel:
    return CorrelationModel(np.array([1.0]), 0.0)


@dataclass(frozen=True, eq=False)
class ChannelProfile:
    snr_abs_db: float
    delta_db: np.ndarray
    section_len_bits: int | None = None

    @property
    def n_sections(self) -> int:
        return int(self.delta_db.size)

    @property
    def snr_db(self) -> np.ndarray:
        return self.snr_abs_db + self.delta_db

    @property
    def noise_std(self) -> np.ndarray:
        return 10.0 ** (-self.snr_db / 20.0)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def gen_profile(model: CorrelationModel, snr_abs_db: float, N: int, seed=None,
                section_len_bits: int | None = None) -> ChannelProfile:
    """Draw one correlated SNR profile over ``N`` sections.

    ``alpha - 1`` warm-up innovations precede section 0 so every section uses
    a full window.
    """
    if N < 1:
        raise ValueError("need at least one section")
    rng = _rng(seed)
    if model.sigma == 0:
        delta = np.zeros(N)
    else:
        u = rng.normal(0.0, model.sigma, size=N + model.alpha - 1)
        delta = np.convolve(u, model.a, mode="valid")
    return ChannelProfile(float(snr_abs_db), delta, section_len_bits)


def uniform_profile(snr_abs_db: float, N: int, section_len_bits: int | None = None) -> ChannelProfile:
    return ChannelProfile(float(snr_abs_db), np.zeros(N), section_len_bits)


def section_noise_std(profile: ChannelProfile, total_bits: int) -> np.ndarray:
    """Per-position noise standard deviation for a stream of ``total_bits``."""
    N = profile.n_sections
    sec_len = profile.section_len_bits
    if sec_len is None:
        if total_bits % N:
            raise ValueError(f"{total_bits} bits do not split evenly into {N} sections")
        sec_len = total_bits // N
    if sec_len * N != total_bits:
        raise ValueError(f"expected {sec_len * N} bits for {N} sections of {sec_len}, got {total_bits}")
    return np.repeat(profile.noise_std, sec_len)


def transmit(bits, profile: ChannelProfile, seed=None) -> np.ndarray:
    """BPSK over the sectioned AWGN channel; returns channel LLRs ``2y/sigma^2``."""
    bits = np.asarray(bits)
    std = section_noise_std(profile, bits.size)
    x = 1.0 - 2.0 * bits.astype(float)
    rng = _rng(seed)
    y = x + std * rng.standard_normal(bits.size)
    with np.errstate(divide="ignore", invalid="ignore"):
        llr = 2.0 * y / std**2
    noiseless = std == 0
    if noiseless.any():
        llr[noiseless] = NOISELESS_LLR * x[noiseless]
    return llr
