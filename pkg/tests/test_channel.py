import numpy as np
import pytest

from scldpc.channel import (
    NOISELESS_LLR,
    ChannelProfile,
    CorrelationModel,
    default_correlation,
    gen_profile,
    section_noise_std,
    transmit,
    uniform_model,
    uniform_profile,
)


def test_default_vector():
    m = default_correlation()
    assert m.a[0] == 0.78 and m.a[10] == -0.04
    assert m.alpha == 11 and m.sigma == 0.15
    assert np.sum(m.a**2) == pytest.approx(0.9925, abs=1e-12)
    assert m.variance == pytest.approx(0.15**2 * 0.9925)


def test_model_validation():
    with pytest.raises(ValueError):
        CorrelationModel([], 0.1)
    with pytest.raises(ValueError):
        CorrelationModel([1.0], -0.1)


def test_profile_matches_direct_sum():
    m = default_correlation()
    prof = gen_profile(m, 4.0, 20, seed=3)
    u = np.random.default_rng(3).normal(0.0, m.sigma, size=20 + m.alpha - 1)
    # u[k + alpha - 1] is the innovation at section k
    for s in range(20):
        direct = sum(m.a[k] * u[s + m.alpha - 1 - k] for k in range(m.alpha))
        assert prof.delta_db[s] == pytest.approx(direct, abs=1e-12)
    np.testing.assert_allclose(prof.snr_db, 4.0 + prof.delta_db)
    assert prof.n_sections == 20


def test_zero_sigma_is_uniform():
    prof = gen_profile(CorrelationModel(default_correlation().a, 0.0), 6.0, 30, seed=1)
    assert not prof.delta_db.any()
    assert (prof.snr_db == 6.0).all()


def test_profile_variance():
    prof = gen_profile(default_correlation(), 0.0, 1_200_000, seed=11)
    assert prof.delta_db.var() == pytest.approx(0.15**2 * 0.9925, rel=0.02)


def test_white_window_uncorrelated():
    n = 200_000
    d = gen_profile(CorrelationModel([1.0], 0.3), 0.0, n, seed=5).delta_db
    d = d - d.mean()
    rho = np.dot(d[:-1], d[1:]) / np.dot(d, d)
    assert abs(rho) < 3 / np.sqrt(n)


def test_default_model_is_correlated():
    d = gen_profile(default_correlation(), 0.0, 100_000, seed=5).delta_db
    rho = np.corrcoef(d[:-1], d[1:])[0, 1]
    a = default_correlation().a
    assert rho == pytest.approx(np.dot(a[:-1], a[1:]) / np.dot(a, a), abs=0.02)


def test_profile_deterministic():
    a = gen_profile(default_correlation(), 5.0, 30, seed=9).delta_db
    b = gen_profile(default_correlation(), 5.0, 30, seed=9).delta_db
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, gen_profile(default_correlation(), 5.0, 30, seed=10).delta_db)


def test_profile_needs_sections():
    with pytest.raises(ValueError):
        gen_profile(default_correlation(), 5.0, 0)


def test_transmit_moments():
    n = 1_000_000
    llr = transmit(np.zeros(n, dtype=np.uint8), uniform_profile(5.0, 1), seed=2)
    std = 10 ** (-5 / 20)
    y = llr * std**2 / 2
    assert y.mean() == pytest.approx(1.0, rel=0.01)
    assert y.std() == pytest.approx(0.5623, rel=0.01)


def test_transmit_variance_ratio():
    prof = ChannelProfile(0.0, np.array([3.0, 9.0]))
    n = 400_000
    llr = transmit(np.zeros(2 * n, dtype=np.uint8), prof, seed=4)
    std = prof.noise_std
    y0 = llr[:n] * std[0] ** 2 / 2
    y1 = llr[n:] * std[1] ** 2 / 2
    assert y0.var() / y1.var() == pytest.approx(10**0.6, rel=0.02)


def test_transmit_bit_mapping_and_llr_scale():
    bits = np.array([0, 1, 0, 1], dtype=np.uint8)
    prof = uniform_profile(60.0, 2)
    llr = transmit(bits, prof, seed=0)
    np.testing.assert_array_equal(np.sign(llr), [1, -1, 1, -1])
    sigma2 = 10 ** (-6.0)
    np.testing.assert_allclose(np.abs(llr), 2 / sigma2, rtol=1e-2)


def test_transmit_noiseless_sections():
    bits = np.array([0, 1, 1, 0], dtype=np.uint8)
    llr = transmit(bits, uniform_profile(np.inf, 2), seed=0)
    np.testing.assert_array_equal(llr, [NOISELESS_LLR, -NOISELESS_LLR, -NOISELESS_LLR, NOISELESS_LLR])


def test_transmit_length_mismatch():
    with pytest.raises(ValueError):
        transmit(np.zeros(7, dtype=np.uint8), uniform_profile(5.0, 2))
    with pytest.raises(ValueError):
        transmit(np.zeros(7, dtype=np.uint8), uniform_profile(5.0, 2, section_len_bits=4))


def test_section_noise_std_layout():
    prof = ChannelProfile(0.0, np.array([0.0, 20.0]), section_len_bits=3)
    np.testing.assert_allclose(section_noise_std(prof, 6), [1, 1, 1, 0.1, 0.1, 0.1])


def test_transmit_deterministic():
    prof = gen_profile(default_correlation(), 5.0, 3, seed=1)
    bits = np.zeros(30, dtype=np.uint8)
    np.testing.assert_array_equal(transmit(bits, prof, seed=8), transmit(bits, prof, seed=8))


def test_uniform_model():
    m = uniform_model()
    assert m.alpha == 1 and m.sigma == 0 and m.variance == 0
