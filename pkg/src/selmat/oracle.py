"""Independent numeric verification: quadrature, samplers, Haar matrices.

Nothing here touches the exact engine's algebra; integrals are done with
tensor-product Gauss-Legendre rules and expectations with seeded Monte Carlo,
so agreement with the exact modules is evidence, not circularity.

Quadrature handles the two integrand families of the package:

* Selberg type on [0,1]^n: payload * prod t^(u-1)(1-t)^(w-1) * prod|t_i-t_j|^(2k).
* Log-gas type on [-1,1]^n: payload * prod|x_i^a - x_j^a|^b * prod|x_i|^c.

Odd interaction exponents make the integrand non-smooth across the diagonal
hyperplanes; those cases are integrated over the ordered sector t_1 < ... < t_n
(mapped from the unit box by the telescoping product transform) and multiplied
by n!, with the payload symmetrised.  Half-integer u or w gets the per-axis
t = sin^2(theta) substitution, which turns the weight into a smooth
trigonometric density.  Every acceptance-grid case is smooth after these two
moves, so the rules converge spectrally.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combinat import partition


class UnsupportedDimensionError(ValueError):
    pass


class LowAcceptanceWarning(UserWarning):
    pass


class NonErgodicWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SampleEstimate:
    """Monte Carlo estimate with batch-means error bar; reproducible by seed."""

    mean: float
    stderr: float
    n_samples: int
    seed: int
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "diagnostics": dict(sorted(self.diagnostics.items())),
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _batch_means(values: np.ndarray, n_batches: int = 25) -> tuple[float, float, float]:
    """(mean, stderr, ess) from >= 20 equal batches."""
    n_batches = max(20, n_batches)
    m = len(values) // n_batches
    if m < 1:
        raise ValueError("too few samples for batch means")
    trimmed = values[: m * n_batches].reshape(n_batches, m)
    bm = trimmed.mean(axis=1)
    mean = float(bm.mean())
    stderr = float(bm.std(ddof=1) / math.sqrt(n_batches))
    var_all = float(trimmed.var())
    var_bm = float(bm.var(ddof=1))
    ess = float(len(values)) if var_bm == 0 else float(len(values) * var_all / (m * var_bm))
    return mean, stderr, min(ess, float(len(values)))


# ---------------------------------------------------------------------------
# payloads
# ---------------------------------------------------------------------------


def eval_monomial(lam, pts: np.ndarray) -> np.ndarray:
    """m_lambda(t_1..t_n) at pts of shape (N, n)."""
    lam = partition(lam)
    n = pts.shape[1]
    if len(lam) > n:
        return np.zeros(pts.shape[0])
    padded = tuple(lam) + (0,) * (n - len(lam))
    out = np.zeros(pts.shape[0])
    for perm in set(itertools.permutations(padded)):
        term = np.ones(pts.shape[0])
        for axis, e in enumerate(perm):
            if e:
                term = term * pts[:, axis] ** e
        out += term
    return out


def payload_one(pts):
    return np.ones(pts.shape[0])


def payload_monomial(lam):
    lam = partition(lam)
    return lambda pts: eval_monomial(lam, pts)


def payload_elementary(m: int):
    return payload_monomial((1,) * m)


def payload_aomoto(m1: int, m2: int, m3: int):
    """prod_{i<=m1} t_i * prod_{j=m1+1-m3}^{m1+m2-m3} (1-t_j); not symmetric."""

    def f(pts):
        out = np.ones(pts.shape[0])
        for i in range(1, m1 + 1):
            out = out * pts[:, i - 1]
        for j in range(m1 + 1 - m3, m1 + m2 - m3 + 1):
            out = out * (1.0 - pts[:, j - 1])
        return out

    return f


def payload_shifted(name: str):
    """(t - 1/2)-power payloads matching moments.SHIFTED_PAYLOADS; not symmetric."""

    def f(pts):
        s = pts - 0.5
        if name == "x2":
            return s[:, 0] ** 2
        if name == "x1x1":
            return s[:, 0] * s[:, 1]
        if name == "x2x2":
            return s[:, 0] ** 2 * s[:, 1] ** 2
        if name == "x4":
            return s[:, 0] ** 4
        raise ValueError(f"unknown shifted payload {name!r}")

    return f


def payload_from_descriptor(desc) -> tuple:
    """(callable, symmetric?) from a serialisable descriptor tuple."""
    kind = desc[0]
    if kind == "one":
        return payload_one, True
    if kind == "monomial":
        return payload_monomial(desc[1]), True
    if kind == "elementary":
        return payload_elementary(int(desc[1])), True
    if kind == "aomoto":
        m1, m2, m3 = desc[1]
        return payload_aomoto(m1, m2, m3), False
    if kind == "shifted":
        return payload_shifted(desc[1]), False
    if kind == "sympoly":
        terms = [(partition(mu), float(Fraction(co))) for mu, co in desc[1]]

        def f(pts):
            acc = np.zeros(pts.shape[0])
            for mu, co in terms:
                acc += co * eval_monomial(mu, pts)
            return acc

        return f, True
    raise ValueError(f"unknown payload descriptor {desc!r}")


def _symmetrized(f, n):
    perms = list(itertools.permutations(range(n)))

    def g(pts):
        acc = np.zeros(pts.shape[0])
        for p in perms:
            acc += f(pts[:, p])
        return acc / len(perms)

    return g


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    """Deterministic tensor-product rule for one integrand.

    kind: "selberg" (params u, w, kappa on [0,1]^n) or "loggas"
    (params a, b, c on [-1,1]^n).  payload is a descriptor tuple, see
    payload_from_descriptor.
    """

    kind: str
    n: int
    payload: tuple
    params: tuple
    points_per_axis: int = 40

    def __post_init__(self):
        if self.n > 4:
            raise UnsupportedDimensionError("quadrature capped at n <= 4")
        if self.points_per_axis < 8:
            raise ValueError("need points_per_axis >= 8")


def quadrature(spec: QuadratureSpec) -> tuple[float, float]:
    """(value, error_estimate); the estimate compares two resolutions."""
    fine = _quadrature_once(spec, spec.points_per_axis)
    coarse_pts = max(8, spec.points_per_axis - max(4, spec.points_per_axis // 3))
    coarse = _quadrature_once(spec, coarse_pts)
    return fine, abs(fine - coarse)


def _quadrature_once(spec: QuadratureSpec, pts_per_axis: int) -> float:
    f, symmetric = payload_from_descriptor(spec.payload)
    if spec.kind == "selberg":
        u, w, kap = (Fraction(x) for x in spec.params)
        return _selberg_quad(spec.n, u, w, kap, f, symmetric, pts_per_axis)
    if spec.kind == "loggas":
        a, b, c = (int(x) for x in spec.params)
        return _loggas_quad(spec.n, a, b, c, f, symmetric, pts_per_axis)
    raise ValueError(f"unknown quadrature kind {spec.kind!r}")


def _gl01(p: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(p)
    return (x + 1.0) / 2.0, w / 2.0


def _mesh(axes: list[np.ndarray]) -> np.ndarray:
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _selberg_quad(n, u, w, kap, f, symmetric, p) -> float:
    two_kappa = 2 * kap
    sector = not (two_kappa.denominator == 1 and two_kappa.numerator % 2 == 0)
    trig = (
        (2 * u).denominator == 1
        and (2 * w).denominator == 1
        and not (u.denominator == 1 and w.denominator == 1)
    )
    uf, wf, bexp = float(u), float(w), float(two_kappa)
    x, wt = _gl01(p)
    if not sector:
        if trig:
            theta = (math.pi / 2) * x
            t_ax = np.sin(theta) ** 2
            w_ax = (
                wt
                * (math.pi / 2)
                * 2.0
                * np.sin(theta) ** (2 * uf - 1)
                * np.cos(theta) ** (2 * wf - 1)
            )
        else:
            t_ax = x
            w_ax = wt * t_ax ** (uf - 1) * (1 - t_ax) ** (wf - 1)
        pts = _mesh([t_ax] * n)
        wgt = _mesh([w_ax] * n).prod(axis=1)
        inter = np.ones(len(pts))
        for i in range(n):
            for j in range(i + 1, n):
                inter = inter * np.abs(pts[:, i] - pts[:, j]) ** bexp
        return float(np.sum(wgt * f(pts) * inter))
    # ordered sector: t_1 <= ... <= t_n via the telescoping product map
    g = f if symmetric else _symmetrized(f, n)
    ubox = _mesh([x] * n)
    wgt = _mesh([wt] * n).prod(axis=1)
    jac = np.ones(len(ubox))
    for j in range(n):
        jac = jac * ubox[:, j] ** j  # prod u_j^(j-1), 0-indexed
    # cumulative products from the right: coordinate i = prod_{j >= i} u_j
    cum = np.cumprod(ubox[:, ::-1], axis=1)[:, ::-1]
    if trig:
        theta = (math.pi / 2) * cum
        pts = np.sin(theta) ** 2
        dens = np.ones(len(ubox))
        for i in range(n):
            dens = dens * 2.0 * np.sin(theta[:, i]) ** (2 * uf - 1) * np.cos(
                theta[:, i]
            ) ** (2 * wf - 1)
        jac = jac * (math.pi / 2) ** n
    else:
        pts = cum
        with np.errstate(divide="ignore", invalid="ignore"):
            dens = pts ** (uf - 1) * (1 - pts) ** (wf - 1)
        dens = np.where(np.isfinite(dens), dens, 0.0).prod(axis=1)
    inter = np.ones(len(ubox))
    for i in range(n):
        for j in range(i + 1, n):
            inter = inter * np.abs(pts[:, j] - pts[:, i]) ** bexp
    total = np.sum(wgt * g(pts) * dens * inter * jac)
    return float(total * math.factorial(n))


def _loggas_quad(n, a, b, c, f, symmetric, p) -> float:
    if a == 1:
        if c != 0:
            raise ValueError("a=1 log-gas quadrature implemented for c=0 only")
        return _loggas_a1(n, b, f, symmetric, p)
    if a == 2:
        return _loggas_a2(n, b, c, f, symmetric, p)
    raise ValueError("a must be 1 or 2")


def _loggas_a1(n, b, f, symmetric, p) -> float:
    x, wt = _gl01(p)
    if b % 2 == 0:
        ax = 2.0 * x - 1.0
        pts = _mesh([ax] * n)
        wgt = _mesh([2.0 * wt] * n).prod(axis=1)
        inter = np.ones(len(pts))
        for i in range(n):
            for j in range(i + 1, n):
                inter = inter * np.abs(pts[:, i] - pts[:, j]) ** b
        return float(np.sum(wgt * f(pts) * inter))
    g = f if symmetric else _symmetrized(f, n)
    ubox = _mesh([x] * n)
    wgt = _mesh([wt] * n).prod(axis=1)
    jac = np.ones(len(ubox))
    for j in range(n):
        jac = jac * ubox[:, j] ** j
    cum = np.cumprod(ubox[:, ::-1], axis=1)[:, ::-1]
    pts = 2.0 * cum - 1.0  # ordered ascending in [-1, 1]
    inter = np.ones(len(ubox))
    for i in range(n):
        for j in range(i + 1, n):
            inter = inter * np.abs(pts[:, j] - pts[:, i]) ** b
    total = np.sum(wgt * g(pts) * inter * jac) * 2.0**n
    return float(total * math.factorial(n))


def _loggas_a2(n, b, c, f, symmetric, p) -> float:
    # density is even per variable; even payloads reduce to [0,1]^n times 2^n
    probe = f(np.full((1, n), 0.37))
    flip = np.full((1, n), 0.37)
    flip[0, 0] = -0.37
    if not math.isclose(float(f(flip)[0]), float(probe[0]), rel_tol=1e-12, abs_tol=1e-300):
        raise ValueError("a=2 log-gas quadrature needs a per-variable even payload")
    x, wt = _gl01(p)
    if b % 2 == 0:
        pts = _mesh([x] * n)
        wgt = _mesh([wt] * n).prod(axis=1)
    else:
        g = f if symmetric else _symmetrized(f, n)
        f = g
        ubox = _mesh([x] * n)
        wgt = _mesh([wt] * n).prod(axis=1)
        jac = np.ones(len(ubox))
        for j in range(n):
            jac = jac * ubox[:, j] ** j
        pts = np.cumprod(ubox[:, ::-1], axis=1)[:, ::-1]
        wgt = wgt * jac * math.factorial(n)
    dens = np.ones(len(pts))
    if c:
        dens = dens * np.prod(pts**c, axis=1)
    inter = np.ones(len(pts))
    for i in range(n):
        for j in range(i + 1, n):
            inter = inter * np.abs(pts[:, i] ** 2 - pts[:, j] ** 2) ** b
    return float(np.sum(wgt * f(pts) * dens * inter) * 2.0**n)


# ---------------------------------------------------------------------------
# rejection sampling from operator-norm balls
# ---------------------------------------------------------------------------

BALL_ENSEMBLES = ("hermitian", "symmetric", "full-real", "full-complex")


def _propose_self_adjoint(kind: str, n: int, rng, m: int):
    """m proposals as flat entry columns; returns (columns dict, accept mask)."""
    cols = {"diag": rng.uniform(-1, 1, (m, n))}
    npairs = n * (n - 1) // 2
    cols["re"] = rng.uniform(-1, 1, (m, npairs))
    if kind == "hermitian":
        cols["im"] = rng.uniform(-1, 1, (m, npairs))
    if n <= 3:
        mask = _self_adjoint_mask_minors(kind, n, cols)
    else:
        mask = _self_adjoint_mask_eig(kind, n, cols)
    return cols, mask


def _self_adjoint_mask_minors(kind, n, cols) -> np.ndarray:
    d = cols["diag"]
    if n == 1:
        return np.abs(d[:, 0]) <= 1.0
    re = cols["re"]
    im = cols.get("im")
    if n == 2:
        q12 = re[:, 0] ** 2 + (im[:, 0] ** 2 if im is not None else 0.0)
        ok = np.ones(len(d), dtype=bool)
        for s in (1.0, -1.0):
            e1, e2 = 1.0 + s * d[:, 0], 1.0 + s * d[:, 1]
            ok &= (e1 > 0) & (e1 * e2 - q12 > 0)
        return ok
    # n == 3; pair order (1,2), (1,3), (2,3)
    r12, r13, r23 = re[:, 0], re[:, 1], re[:, 2]
    if im is not None:
        i12, i13, i23 = im[:, 0], im[:, 1], im[:, 2]
    else:
        i12 = i13 = i23 = 0.0
    q12 = r12**2 + i12**2
    q13 = r13**2 + i13**2
    q23 = r23**2 + i23**2
    # Re(a12 a23 conj(a13))
    tri = r12 * (r23 * r13 + i23 * i13) - i12 * (i23 * r13 - r23 * i13)
    ok = np.ones(len(d), dtype=bool)
    for s in (1.0, -1.0):
        e1, e2, e3 = 1.0 + s * d[:, 0], 1.0 + s * d[:, 1], 1.0 + s * d[:, 2]
        m2 = e1 * e2 - q12
        m3 = e1 * e2 * e3 + 2.0 * s * tri - e1 * q23 - e2 * q13 - e3 * q12
        ok &= (e1 > 0) & (m2 > 0) & (m3 > 0)
    return ok


def _self_adjoint_mask_eig(kind, n, cols) -> np.ndarray:
    T = _assemble_self_adjoint(kind, n, cols, np.arange(len(cols["diag"])))
    vals = np.linalg.eigvalsh(T)
    return np.abs(vals).max(axis=1) <= 1.0


def _assemble_self_adjoint(kind, n, cols, idx) -> np.ndarray:
    m = len(idx)
    dtype = complex if kind == "hermitian" else float
    T = np.zeros((m, n, n), dtype=dtype)
    iu = np.triu_indices(n, 1)
    re = cols["re"][idx]
    if kind == "hermitian":
        off = re + 1j * cols["im"][idx]
        T[:, iu[0], iu[1]] = off
        T[:, iu[1], iu[0]] = off.conj()
    else:
        T[:, iu[0], iu[1]] = re
        T[:, iu[1], iu[0]] = re
    T[:, np.arange(n), np.arange(n)] = cols["diag"][idx]
    return T


def _propose_full(kind: str, n: int, rng, m: int):
    if kind == "full-real":
        T = rng.uniform(-1, 1, (m, n, n))
    else:
        T = rng.uniform(-1, 1, (m, n, n)) + 1j * rng.uniform(-1, 1, (m, n, n))
    if n == 2:
        # ||T|| <= 1 iff I - T*T is PSD; Sylvester on the 2x2 Gram matrix
        G = np.einsum("bij,bik->bjk", T.conj(), T)
        e1 = 1.0 - G[:, 0, 0].real
        det = (1.0 - G[:, 0, 0].real) * (1.0 - G[:, 1, 1].real) - np.abs(G[:, 0, 1]) ** 2
        mask = (e1 > 0) & (det > 0)
    else:
        s = np.linalg.svd(T, compute_uv=False)
        mask = s[:, 0] <= 1.0
    return T, mask


def rejection_sample_ball(ensemble_name: str, n: int, count: int, seed: int, batch: int = 250_000):
    """Yield batches of matrices uniform on the operator-norm unit ball.

    Entrywise-uniform proposals on the bounding box, accepted iff the spectral
    norm is at most 1.  Yields (batch_array, n_proposed) tuples until `count`
    accepted samples have been produced.
    """
    kind = ensemble_name.lower()
    if kind not in BALL_ENSEMBLES:
        raise ValueError(f"rejection sampler covers {BALL_ENSEMBLES}, got {ensemble_name!r}")
    if n > 4:
        raise UnsupportedDimensionError("rejection sampling capped at n <= 4")
    rng = np.random.default_rng(seed)
    produced = 0
    proposed_total = 0
    accepted_total = 0
    while produced < count:
        if kind in ("hermitian", "symmetric"):
            cols, mask = _propose_self_adjoint(kind, n, rng, batch)
            idx = np.flatnonzero(mask)[: count - produced]
            out = _assemble_self_adjoint(kind, n, cols, idx)
        else:
            T, mask = _propose_full(kind, n, rng, batch)
            out = T[mask][: count - produced]
        proposed_total += batch
        accepted_total += len(out)
        if proposed_total >= 4_000_000 and accepted_total / proposed_total < 1e-6:
            warnings.warn(
                f"acceptance rate {accepted_total / proposed_total:.2e} below 1e-6",
                LowAcceptanceWarning,
            )
        if len(out):
            produced += len(out)
            yield out, proposed_total


def ball_moment_estimate(
    ensemble_name: str,
    n: int,
    moment_fns: dict,
    count: int,
    seed: int,
    batch: int = 250_000,
) -> dict:
    """SampleEstimates of entry moments over `count` accepted ball samples.

    moment_fns maps names to vectorised callables f(T_batch) -> (B,) floats.
    """
    acc = {name: [] for name in moment_fns}
    total = 0
    proposed = 0
    for T, prop in rejection_sample_ball(ensemble_name, n, count, seed, batch):
        total += len(T)
        proposed = prop
        for name, fn in moment_fns.items():
            acc[name].append(np.asarray(fn(T), dtype=float))
    out = {}
    rate = total / proposed if proposed else 0.0
    for name, chunks in acc.items():
        vals = np.concatenate(chunks)
        mean, stderr, ess = _batch_means(vals)
        out[name] = SampleEstimate(
            mean,
            stderr,
            total,
            seed,
            {"acceptance_rate": round(rate, 8), "ess": round(ess, 2)},
        )
    return out


# ---------------------------------------------------------------------------
# Metropolis sampler for the eigenvalue log-gas
# ---------------------------------------------------------------------------


def _loggas_delta(x, i, new, a, b, c) -> float:
    old = x[i]
    if abs(new) >= 1.0:
        return float("-inf")
    delta = 0.0
    if c:
        if new == 0.0 or old == 0.0:
            return float("-inf")
        delta += c * (math.log(abs(new)) - math.log(abs(old)))
    na, oa = new**a, old**a
    for j, xj in enumerate(x):
        if j == i:
            continue
        xa = xj**a
        dn, do = na - xa, oa - xa
        if dn == 0.0 or do == 0.0:
            return float("-inf")
        delta += b * (math.log(abs(dn)) - math.log(abs(do)))
    return delta


_BUILTIN_PAYLOADS = {
    "sum_sq": lambda x: sum(v * v for v in x),
    "sum_quartic": lambda x: sum(v**4 for v in x),
    "cross_sq": lambda x: (sum(v * v for v in x) ** 2 - sum(v**4 for v in x)) / 2.0,
}


def mcmc_eigenvalue_sample(
    a: int,
    b: int,
    c: int,
    n: int,
    payloads,
    steps: int,
    chains: int,
    seed: int,
    burn_in: int = 10_000,
) -> dict:
    """Metropolis estimates of E[payload] under the (a, b, c) box log-gas.

    Single-coordinate uniform proposals; the proposal width adapts toward 0.3
    acceptance during burn-in and is frozen afterwards, so runs are
    reproducible bit-for-bit given (seed, chains, steps).  payloads maps names
    to callables on the coordinate list, or names one of the built-ins
    sum_sq / sum_quartic / cross_sq; steps counts post-burn-in sweeps per chain.
    """
    if n > 64:
        raise UnsupportedDimensionError("mcmc capped at n <= 64")
    if burn_in < 10_000:
        raise ValueError("burn_in must be at least 10^4 sweeps")
    fns = {}
    for name, f in payloads.items():
        fns[name] = _BUILTIN_PAYLOADS[f] if isinstance(f, str) else f
    series = {name: [] for name in fns}
    accept_rates = []
    for chain in range(chains):
        rng = np.random.default_rng([seed, chain])
        x = [float(v) for v in rng.uniform(-0.9, 0.9, n)]
        width = 0.5
        accepted = proposed = 0
        window_acc = 0
        for sweep in range(burn_in + steps):
            burning = sweep < burn_in
            for i in range(n):
                step = width * float(rng.uniform(-1.0, 1.0))
                new = x[i] + step
                delta = _loggas_delta(x, i, new, a, b, c)
                take = delta >= 0 or float(rng.uniform(0.0, 1.0)) < math.exp(delta)
                if take:
                    x[i] = new
                    window_acc += 1
                    if not burning:
                        accepted += 1
                if not burning:
                    proposed += 1
            if burning and (sweep + 1) % 100 == 0:
                rate = window_acc / (100 * n)
                width = min(2.0, max(1e-3, width * math.exp(0.5 * (rate - 0.3))))
                window_acc = 0
            if not burning:
                for name, f in fns.items():
                    series[name].append(f(x))
        accept_rates.append(accepted / proposed)
    rate = sum(accept_rates) / len(accept_rates)
    if not 0.1 <= rate <= 0.7:
        warnings.warn(f"acceptance rate {rate:.3f} outside [0.1, 0.7]", NonErgodicWarning)
    out = {}
    for name, vals in series.items():
        mean, stderr, ess = _batch_means(np.asarray(vals))
        out[name] = SampleEstimate(
            mean,
            stderr,
            steps * chains,
            seed,
            {"acceptance_rate": round(rate, 6), "ess": round(ess, 2), "chains": chains},
        )
    return out


# ---------------------------------------------------------------------------
# Haar sampling
# ---------------------------------------------------------------------------


def haar_sample(group: str, n: int, seed: int, count: int = 1) -> np.ndarray:
    """Haar-distributed matrices via QR of a Gaussian with phase correction."""
    if n > 64:
        raise UnsupportedDimensionError("haar sampling capped at n <= 64")
    rng = np.random.default_rng(seed)
    out = np.zeros((count, n, n), dtype=complex if group == "unitary" else float)
    for k in range(count):
        if group == "unitary":
            z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
        elif group == "orthogonal":
            z = rng.standard_normal((n, n))
        else:
            raise ValueError(f"group must be unitary|orthogonal, got {group!r}")
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        ph = d / np.abs(d)
        out[k] = q * ph
    return out
