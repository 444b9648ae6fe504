import math
from fractions import Fraction as F

import numpy as np
import pytest

from selmat.exact import to_float
from selmat.jack import kadell_ratio
from selmat.moments import ensemble, ensemble_moments, full_matrix_moment_ratio, trace_moments
from selmat.oracle import (
    QuadratureSpec,
    UnsupportedDimensionError,
    ball_moment_estimate,
    eval_monomial,
    haar_sample,
    mcmc_eigenvalue_sample,
    quadrature,
    rejection_sample_ball,
)
from selmat.selberg import SelbergParams, aomoto_general_ratio, aomoto_ratio, selberg_I0
from selmat.weingarten import (
    conj_invariant_moment_orthogonal,
    conj_invariant_moment_unitary,
    haar_moment_orthogonal,
    haar_moment_unitary,
)


def test_eval_monomial():
    pts = np.array([[0.5, 2.0], [1.0, 3.0]])
    assert eval_monomial((2,), pts) == pytest.approx([0.25 + 4.0, 1.0 + 9.0])
    assert eval_monomial((1, 1), pts) == pytest.approx([1.0, 3.0])
    assert eval_monomial((2, 1), pts) == pytest.approx([0.5 + 2.0, 3.0 + 9.0])
    assert eval_monomial((1, 1, 1), pts) == pytest.approx([0.0, 0.0])


def test_quadrature_selberg_basics():
    val, err = quadrature(QuadratureSpec("selberg", 2, ("one",), (1, 1, F(1)), 32))
    assert val == pytest.approx(1 / 6, abs=1e-12)
    val, _ = quadrature(QuadratureSpec("selberg", 2, ("one",), (1, 1, F(1, 2)), 32))
    assert val == pytest.approx(1 / 3, abs=1e-10)


def test_quadrature_kadell_case():
    # lambda = (1,1), n = 2, kappa = 1: ratio 1/6
    base, _ = quadrature(QuadratureSpec("selberg", 2, ("one",), (1, 1, F(1)), 32))
    num, _ = quadrature(QuadratureSpec("selberg", 2, ("monomial", (1, 1)), (1, 1, F(1)), 32))
    assert num / base == pytest.approx(1 / 6, abs=1e-11)
    assert kadell_ratio((1, 1), 2, 1, 1, F(1)) == F(1, 6)


def test_quadrature_half_integer_weights():
    # sqrt weights via the trig substitution keep spectral accuracy
    p = SelbergParams(3, F(3, 2), F(3, 2), F(1, 2))
    exact = to_float(selberg_I0(p)).value
    val, err = quadrature(QuadratureSpec("selberg", 3, ("one",), (F(3, 2), F(3, 2), F(1, 2)), 32))
    assert val == pytest.approx(exact, rel=1e-10)


def test_quadrature_aomoto_payload():
    p = SelbergParams(3, F(2), F(3, 2), F(2))
    base, _ = quadrature(QuadratureSpec("selberg", 3, ("one",), (2, F(3, 2), F(2)), 32))
    val, _ = quadrature(QuadratureSpec("selberg", 3, ("aomoto", (1, 1, 1)), (2, F(3, 2), F(2)), 32))
    assert val / base == pytest.approx(float(aomoto_general_ratio(p, 1, 1, 1)), abs=1e-10)
    val, _ = quadrature(QuadratureSpec("selberg", 3, ("elementary", 2), (2, F(3, 2), F(2)), 32))
    assert val / base == pytest.approx(float(aomoto_ratio(p, 2)), abs=1e-10)


def test_quadrature_loggas_matches_engine():
    for name, beta in (("symmetric", 1), ("hermitian", 2)):
        r = ensemble_moments(ensemble(name), 3, "forced")
        base, _ = quadrature(QuadratureSpec("loggas", 3, ("one",), (1, beta, 0), 36))
        m2, _ = quadrature(QuadratureSpec("loggas", 3, ("monomial", (2,)), (1, beta, 0), 36))
        assert m2 / base / 3 == pytest.approx(float(r.M2), abs=1e-10)
    base, _ = quadrature(QuadratureSpec("loggas", 2, ("one",), (2, 1, 0), 36))
    m2, _ = quadrature(QuadratureSpec("loggas", 2, ("monomial", (2,)), (2, 1, 0), 36))
    assert m2 / base / 2 == pytest.approx(float(full_matrix_moment_ratio("x2", 2, 1)), abs=1e-10)


def test_quadrature_error_estimate_covers_truth():
    # at coarse resolution the two-level estimate should bound the true error
    cases = 0
    covered = 0
    for n in (2, 3):
        for kap in (F(1, 2), F(1), F(2)):
            for u in (F(1), F(3, 2)):
                p = SelbergParams(n, u, 1, kap)
                exact = to_float(selberg_I0(p)).value
                val, est = quadrature(QuadratureSpec("selberg", n, ("one",), (u, 1, kap), 12))
                cases += 1
                covered += abs(val - exact) <= est + 1e-14
    assert covered / cases >= 0.95


def test_quadrature_n4():
    p = SelbergParams(4, 1, 1, F(1))
    exact = to_float(selberg_I0(p)).value
    val, _ = quadrature(QuadratureSpec("selberg", 4, ("one",), (1, 1, F(1)), 20))
    assert val == pytest.approx(exact, rel=1e-9)
    # odd interaction exponent at n = 4 exercises the 4-dimensional sector map
    p = SelbergParams(4, 1, 1, F(1, 2))
    exact = to_float(selberg_I0(p)).value
    val, _ = quadrature(QuadratureSpec("selberg", 4, ("one",), (1, 1, F(1, 2)), 16))
    assert val == pytest.approx(exact, rel=1e-7)


def test_quadrature_loggas_beta4():
    r = ensemble_moments(ensemble("quaternion"), 2, "forced")
    base, _ = quadrature(QuadratureSpec("loggas", 2, ("one",), (1, 4, 0), 36))
    m4, _ = quadrature(QuadratureSpec("loggas", 2, ("monomial", (4,)), (1, 4, 0), 36))
    assert m4 / base / 2 == pytest.approx(float(r.M4), abs=1e-10)


def test_quadrature_dimension_cap():
    with pytest.raises(UnsupportedDimensionError):
        QuadratureSpec("selberg", 5, ("one",), (1, 1, 1), 16)


def test_quadrature_points_floor():
    with pytest.raises(ValueError):
        QuadratureSpec("selberg", 2, ("one",), (1, 1, 1), 4)


def test_rejection_n1_uniform():
    est = ball_moment_estimate(
        "hermitian", 1, {"T2": lambda T: (T[:, 0, 0] ** 2).real}, 60_000, seed=5
    )
    e = est["T2"]
    assert abs(e.mean - 1 / 3) <= 4 * e.stderr


def test_rejection_matches_exact_engine_n3():
    tm = trace_moments(ensemble("hermitian"), 3, "forced")
    want = float(conj_invariant_moment_unitary((1, 2), (1, 2), tm, 3))
    est = ball_moment_estimate(
        "hermitian", 3, {"T11T22": lambda T: (T[:, 0, 0] * T[:, 1, 1]).real}, 80_000, seed=9
    )
    e = est["T11T22"]
    assert abs(e.mean - want) <= 4 * e.stderr
    tm = trace_moments(ensemble("symmetric"), 3, "forced")
    want = float(conj_invariant_moment_orthogonal((1, 2, 1, 2), tm, 3))
    est = ball_moment_estimate(
        "symmetric", 3, {"T12sq": lambda T: T[:, 0, 1] ** 2}, 80_000, seed=10
    )
    e = est["T12sq"]
    assert abs(e.mean - want) <= 4 * e.stderr


def test_rejection_full_real_n2():
    est = ball_moment_estimate(
        "full-real", 2, {"T11sq": lambda T: T[:, 0, 0] ** 2}, 80_000, seed=3
    )
    e = est["T11sq"]
    assert abs(e.mean - 1 / 5) <= 4 * e.stderr  # 1/(2n+1) at n = 2


def test_rejection_determinism():
    a = ball_moment_estimate("symmetric", 2, {"x": lambda T: T[:, 0, 0] ** 2}, 30_000, seed=21)
    b = ball_moment_estimate("symmetric", 2, {"x": lambda T: T[:, 0, 0] ** 2}, 30_000, seed=21)
    assert a["x"].to_json_str() == b["x"].to_json_str()
    c = ball_moment_estimate("symmetric", 2, {"x": lambda T: T[:, 0, 0] ** 2}, 30_000, seed=22)
    assert c["x"].mean != a["x"].mean


def test_rejection_conjugation_invariance():
    # empirical moments of T and PTP^t agree within error for a permutation P
    batches_direct = []
    batches_conj = []
    P = np.zeros((3, 3))
    P[0, 1] = P[1, 2] = P[2, 0] = 1.0
    for T, _ in rejection_sample_ball("symmetric", 3, 60_000, seed=33):
        batches_direct.append(T[:, 0, 0] * T[:, 1, 1])
        TC = np.einsum("ij,bjk,lk->bil", P, T, P)
        batches_conj.append(TC[:, 0, 0] * TC[:, 1, 1])
    d = np.concatenate(batches_direct)
    c = np.concatenate(batches_conj)
    se = math.hypot(d.std() / len(d) ** 0.5, c.std() / len(c) ** 0.5)
    assert abs(d.mean() - c.mean()) <= 4 * se


def test_rejection_validates_ensemble_and_dim():
    with pytest.raises(ValueError):
        next(rejection_sample_ball("quaternion", 2, 10, seed=1))
    with pytest.raises(UnsupportedDimensionError):
        next(rejection_sample_ball("hermitian", 5, 10, seed=1))


def test_rejection_sampler_eigvalsh_path_n4():
    # n = 4 goes through the dense eigensolver; sanity: spectral norm <= 1
    got = 0
    for T, _ in rejection_sample_ball("symmetric", 4, 500, seed=2, batch=20_000):
        w = np.linalg.eigvalsh(T)
        assert np.abs(w).max() <= 1.0 + 1e-12
        got += len(T)
        if got >= 500:
            break
    assert got >= 500


def test_mcmc_matches_exact_engine():
    # (a=1, b=2, c=0) at n=10: E[sum x_i^2] = 10 * forced M2
    res = mcmc_eigenvalue_sample(1, 2, 0, 10, {"s2": "sum_sq"}, steps=5000, chains=2, seed=42)
    want = 10 * float(ensemble_moments(ensemble("hermitian"), 10, "forced").M2)
    e = res["s2"]
    assert abs(e.mean - want) <= 4 * e.stderr
    assert 0.1 <= e.diagnostics["acceptance_rate"] <= 0.7


def test_mcmc_full_matrix_density():
    # (a=2, b=1, c=0) at n=4: E[sum x_i^2] = n^2/(2n+1) aggregate
    res = mcmc_eigenvalue_sample(2, 1, 0, 4, {"s2": "sum_sq"}, steps=4000, chains=2, seed=7)
    want = 4 * float(full_matrix_moment_ratio("x2", 4, 1))
    e = res["s2"]
    assert abs(e.mean - want) <= 4 * e.stderr


def test_mcmc_quartic_payload_kappa2():
    res = mcmc_eigenvalue_sample(1, 4, 0, 4, {"s4": "sum_quartic"}, steps=4000, chains=2, seed=11)
    want = 4 * float(ensemble_moments(ensemble("quaternion"), 4, "forced").M4)
    e = res["s4"]
    assert abs(e.mean - want) <= 4 * e.stderr


def test_mcmc_determinism_and_burnin_floor():
    a = mcmc_eigenvalue_sample(1, 2, 0, 3, {"s2": "sum_sq"}, steps=2000, chains=2, seed=5)
    b = mcmc_eigenvalue_sample(1, 2, 0, 3, {"s2": "sum_sq"}, steps=2000, chains=2, seed=5)
    assert a["s2"].to_json_str() == b["s2"].to_json_str()
    with pytest.raises(ValueError):
        mcmc_eigenvalue_sample(1, 2, 0, 3, {"s2": "sum_sq"}, steps=100, chains=1, seed=5, burn_in=100)


def test_haar_unitary_moments():
    U = haar_sample("unitary", 3, seed=1, count=30_000)
    err = np.abs(U @ np.conj(np.transpose(U, (0, 2, 1))) - np.eye(3)).max()
    assert err < 1e-12
    m = np.abs(U[:, 0, 0]) ** 2
    se = m.std() / len(m) ** 0.5
    assert abs(m.mean() - 1 / 3) <= 4 * se
    v = np.abs(U[:, 0, 0]) ** 2 * np.abs(U[:, 1, 1]) ** 2
    want = float(haar_moment_unitary((1, 2), (1, 2), (1, 2), (1, 2), 3))
    se = v.std() / len(v) ** 0.5
    assert abs(v.mean() - want) <= 4 * se


def test_haar_orthogonal_moments():
    O = haar_sample("orthogonal", 3, seed=2, count=30_000)
    err = np.abs(O @ np.transpose(O, (0, 2, 1)) - np.eye(3)).max()
    assert err < 1e-12
    v = O[:, 0, 0] ** 2
    se = v.std() / len(v) ** 0.5
    assert abs(v.mean() - 1 / 3) <= 4 * se
    v4 = O[:, 0, 0] ** 2 * O[:, 1, 1] ** 2
    want = float(haar_moment_orthogonal((1, 1, 2, 2), (1, 1, 2, 2), 3))
    se = v4.std() / len(v4) ** 0.5
    assert abs(v4.mean() - want) <= 4 * se


def test_haar_determinism():
    a = haar_sample("unitary", 4, seed=9, count=3)
    b = haar_sample("unitary", 4, seed=9, count=3)
    assert np.array_equal(a, b)
