import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scldpc import decoder
from scldpc._kernels_py import check_node_update
from scldpc.codeconstruct import SparseParityMatrix, block_spec, assemble_sc
from scldpc.decoder import BACKEND, min_sum_decode, syndrome

BACKENDS = sorted(decoder._BACKENDS)


def cn_oracle(msgs):
    out = []
    for i in range(len(msgs)):
        rest = [m for k, m in enumerate(msgs) if k != i]
        sign = np.prod([-1.0 if m < 0 else 1.0 for m in rest])
        out.append(sign * min(abs(m) for m in rest))
    return np.array(out)


@pytest.fixture(scope="module")
def H_even():
    # row weight 4, column weight 3
    return assemble_sc(block_spec(3, 4, 5, np.array([[0, 1, 2, 3], [0, 2, 4, 1], [0, 3, 1, 4]])))


def test_backend_name():
    assert BACKEND in ("cython", "python")
    assert "python" in BACKENDS


@pytest.mark.parametrize("backend", BACKENDS)
def test_noiseless(H_bc1, backend):
    res = min_sum_decode(H_bc1, np.full(H_bc1.cols, 7.5), backend=backend)
    assert res.converged and res.iterations_used == 0 and not res.hard_bits.any()


@pytest.mark.parametrize("backend", BACKENDS)
def test_all_zero_llr(H_bc1, backend):
    res = min_sum_decode(H_bc1, np.zeros(H_bc1.cols), backend=backend)
    assert res.converged and res.iterations_used == 0 and not res.hard_bits.any()


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("pos", [0, 100, 288])
def test_single_flip(H_bc1, backend, pos):
    llr = np.full(H_bc1.cols, 2.0)
    llr[pos] = -2.0
    res = min_sum_decode(H_bc1, llr, backend=backend)
    assert res.converged and 1 <= res.iterations_used <= 5
    assert not res.hard_bits.any()
    assert not syndrome(H_bc1, res.hard_bits).any()


@pytest.mark.parametrize("backend", BACKENDS)
def test_zero_iterations(H_bc1, backend):
    llr = np.full(H_bc1.cols, 1.0)
    llr[3] = -1.0
    res = min_sum_decode(H_bc1, llr, max_iterations=0, backend=backend)
    assert not res.converged and res.iterations_used == 0 and res.hard_bits[3] == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_syndrome_oracle(rng, backend):
    dense = (rng.random((10, 20)) < 0.3).astype(np.int64)
    H = SparseParityMatrix.from_dense(dense)
    for _ in range(20):
        bits = rng.integers(0, 2, 20).astype(np.uint8)
        np.testing.assert_array_equal(syndrome(H, bits, backend=backend), dense @ bits % 2)
    assert not syndrome(H, np.zeros(20, dtype=np.uint8), backend=backend).any()
    e = np.zeros(20, dtype=np.uint8)
    e[4] = 1
    np.testing.assert_array_equal(syndrome(H, e, backend=backend), dense[:, 4])


def test_length_mismatch(H_bc1):
    with pytest.raises(ValueError):
        min_sum_decode(H_bc1, np.zeros(H_bc1.cols - 1))
    with pytest.raises(ValueError):
        syndrome(H_bc1, np.zeros(3, dtype=np.uint8))
    with pytest.raises(ValueError):
        min_sum_decode(H_bc1, np.zeros(H_bc1.cols), max_iterations=-1)


def test_unknown_backend(H_bc1):
    with pytest.raises(ValueError):
        min_sum_decode(H_bc1, np.zeros(H_bc1.cols), backend="fortran")


def noisy_llr(rng, n, snr_db=4.0):
    std = 10 ** (-snr_db / 20)
    return 2 * (1 + std * rng.standard_normal(n)) / std**2


def test_converged_implies_zero_syndrome(H_bc1, rng):
    for _ in range(30):
        res = min_sum_decode(H_bc1, noisy_llr(rng, H_bc1.cols, 3.5))
        assert 0 <= res.iterations_used <= 50
        assert res.converged == (not syndrome(H_bc1, res.hard_bits).any())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(2.0, 6.0), st.integers(0, 30))
def test_backends_agree(H_bc1, seed, snr, maxit):
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    llr = noisy_llr(np.random.default_rng(seed), H_bc1.cols, snr)
    a = min_sum_decode(H_bc1, llr, maxit, backend="cython")
    b = min_sum_decode(H_bc1, llr, maxit, backend="python")
    np.testing.assert_array_equal(a.hard_bits, b.hard_bits)
    assert (a.iterations_used, a.converged) == (b.iterations_used, b.converged)


@pytest.mark.parametrize("c", [0.5, 2.0, 8.0])
def test_scale_invariance(H_bc1, rng, c):
    for _ in range(10):
        llr = noisy_llr(rng, H_bc1.cols, 3.0)
        for maxit in (3, 50):
            a = min_sum_decode(H_bc1, llr, maxit)
            b = min_sum_decode(H_bc1, c * llr, maxit)
            np.testing.assert_array_equal(a.hard_bits, b.hard_bits)
            assert (a.iterations_used, a.converged) == (b.iterations_used, b.converged)


def test_negation_even_row_weight(H_even, rng):
    assert (H_even.row_weights() % 2 == 0).all()
    for _ in range(20):
        llr = noisy_llr(rng, H_even.cols, 2.0)
        for maxit in (1, 4, 50):
            a = min_sum_decode(H_even, llr, maxit)
            b = min_sum_decode(H_even, -llr, maxit)
            np.testing.assert_array_equal(a.hard_bits, 1 - b.hard_bits)
            assert (a.iterations_used, a.converged) == (b.iterations_used, b.converged)


@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_check_negation_parity(rng, d):
    x = rng.normal(size=d)
    np.testing.assert_array_equal(check_node_update(-x), (-1) ** (d - 1) * check_node_update(x))


def test_check_node_rule(rng):
    for d in (2, 3, 5, 8):
        x = rng.normal(size=d)
        np.testing.assert_array_equal(check_node_update(x), cn_oracle(x))


def test_extrinsic(rng):
    x = np.array([0.4, -1.3, 2.2])
    base = check_node_update(x)
    for v in (-9.0, -0.01, 0.01, 5.0):
        y = x.copy()
        y[0] = v
        assert check_node_update(y)[0] == base[0]
    assert base.tolist() == [-1.3, 0.4, -0.4]


def test_pure_python_switch():
    env = dict(os.environ, SCLDPC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from scldpc.decoder import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
