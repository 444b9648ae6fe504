"""Jack polynomials in the monomial basis, principal specialization, Kadell ratios.

The monic Jack polynomial P_lambda (parameter xi = 1/kappa) is computed by
imposing the eigenfunction equation of the Calogero-Sutherland operator

    D* = sum_i (x_i d_i)^2 + (1/xi) sum_{i<j} (x_i+x_j)/(x_i-x_j) (x_i d_i - x_j d_j)

on a monomial expansion and back-substituting in reverse-lexicographic order.
The operator acts triangularly on monomial symmetric functions: it moves a
pair of exponents (r, s) to any intermediate pair (r-t, s+t), which strictly
lowers dominance, so each coefficient is determined by the already-known
dominance-larger ones.  All moves touch only nonzero parts, hence the matrix
(and every coefficient) is independent of the number of variables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import (
    Partition,
    dominance_leq,
    format_partition,
    monomial_principal,
    partition,
    partitions_of,
    zee,
)
from .exact import GammaProduct, Rational, gamma_product_ratio, pochhammer
from .selberg import SelbergParams

MAX_DEGREE = 12


@dataclass(frozen=True)
class SymPoly:
    """Graded symmetric polynomial in the monomial basis (zero coeffs dropped)."""

    degree: int
    coeffs: tuple  # tuple of (Partition, Fraction), sorted by partition

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict) -> "SymPoly":
        items = tuple(
            sorted((lam, Fraction(c)) for lam, c in coeffs.items() if c != 0)
        )
        for lam, _ in items:
            if sum(lam) != degree:
                raise ValueError(f"partition {lam} has weight != {degree}")
        return cls(degree, items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, lam: Partition) -> Fraction:
        return dict(self.coeffs).get(lam, Fraction(0))

    def to_json(self) -> str:
        return json.dumps(
            {format_partition(lam): str(c) for lam, c in self.coeffs},
            sort_keys=True,
        )


def _sum_sq(lam: Partition) -> int:
    return sum(p * p for p in lam)


def _nval(lam: Partition) -> int:
    # n(lambda) = sum (i-1) lambda_i, strictly decreasing along dominance
    return sum(i * p for i, p in enumerate(lam))


@lru_cache(maxsize=None)
def _move_matrix(d: int) -> dict:
    """Off-diagonal action of the interaction term on monomials of degree d.

    Returns {source: {target: integer coefficient}} over partitions of d: the
    coefficient of m_target in sum_{i<j} ((x_i+x_j)/(x_i-x_j))(x_i d_i - x_j d_j) m_source,
    excluding the diagonal.  For each coordinate pair of the target holding
    values (p, q), every source pair (r, s) with r+s = p+q, r > p >= q > s
    contributes 2(r-s).
    """
    mat: dict[Partition, dict[Partition, int]] = {}
    for target in partitions_of(d):
        l = len(target)
        for i in range(l):
            for j in range(i + 1, l):
                p, q = target[i], target[j]
                tot = p + q
                for r in range(p + 1, tot + 1):
                    s = tot - r
                    src = list(target)
                    src[i], src[j] = r, s
                    source = partition(src)
                    mat.setdefault(source, {}).setdefault(target, 0)
                    mat[source][target] += 2 * (r - s)
    return mat


@lru_cache(maxsize=None)
def jack_basis_matrix(kappa: Fraction, d: int) -> dict:
    """{lambda: {mu: coeff}} with P_lambda = sum_mu coeff * m_mu, unitriangular."""
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds cap {MAX_DEGREE}")
    parts = partitions_of(d)  # revlex refines dominance, largest first
    moves = _move_matrix(d)
    basis: dict[Partition, dict[Partition, Fraction]] = {}
    for li, lam in enumerate(parts):
        coeffs: dict[Partition, Fraction] = {lam: Fraction(1)}
        for mu in parts[li + 1 :]:
            acc = Fraction(0)
            for nu, c in coeffs.items():
                acc += c * moves.get(nu, {}).get(mu, 0)
            if acc == 0:
                continue
            gap = (_sum_sq(lam) - _sum_sq(mu)) + 2 * kappa * (_nval(mu) - _nval(lam))
            coeffs[mu] = kappa * acc / gap
        basis[lam] = coeffs
    return basis


@lru_cache(maxsize=None)
def monomial_to_jack_matrix(kappa: Fraction, d: int) -> dict:
    """Inverse table: {mu: {lambda: coeff}} with m_mu = sum_lambda coeff * P_lambda."""
    basis = jack_basis_matrix(Fraction(kappa), d)
    parts = partitions_of(d)
    inv: dict[Partition, dict[Partition, Fraction]] = {}
    for mu in reversed(parts):  # dominance-smallest first
        row = {mu: Fraction(1)}
        for nu, c in basis[mu].items():
            if nu == mu:
                continue
            for lam, dcoef in inv[nu].items():
                row[lam] = row.get(lam, Fraction(0)) - c * dcoef
        inv[mu] = {lam: c for lam, c in row.items() if c != 0}
    return inv


@dataclass(frozen=True)
class JackBasis:
    """Cached unitriangular change of basis at a fixed (kappa, degree)."""

    kappa: Fraction
    degree: int

    def matrix(self) -> dict:
        return jack_basis_matrix(self.kappa, self.degree)

    def inverse(self) -> dict:
        return monomial_to_jack_matrix(self.kappa, self.degree)


def jack_in_monomials(lam: Partition, kappa) -> SymPoly:
    """Monic Jack polynomial P_lambda^(1/kappa) expanded over monomials."""
    lam = partition(lam)
    d = sum(lam)
    row = jack_basis_matrix(Fraction(kappa), d)[lam]
    return SymPoly.from_dict(d, row)


def monomial_to_jack(mu: Partition, kappa) -> dict:
    """Coefficients of m_mu in the Jack basis: m_mu = sum coeff[lambda] P_lambda."""
    mu = partition(mu)
    return dict(monomial_to_jack_matrix(Fraction(kappa), sum(mu))[mu])


def principal_specialization(lam: Partition, kappa, n: int) -> Rational:
    """P_lambda^(1/kappa)(1^n), by summing monomial counts (exact; 0 if n < l)."""
    lam = partition(lam)
    poly = jack_in_monomials(lam, kappa)
    return sum(
        (c * monomial_principal(mu, n) for mu, c in poly.coeffs), Fraction(0)
    )


def _pochhammer_gamma(x, step) -> GammaProduct:
    """(x)_step = Gamma(x+step)/Gamma(x) for a rational (non-integer) step."""
    return GammaProduct(Fraction(1), [(Fraction(x) + Fraction(step), 1), (Fraction(x), -1)])


def principal_specialization_gamma(lam: Partition, kappa, n: int):
    """P_lambda(1^n) through the hook-ratio product of Gamma factors.

    Independent of the monomial path: evaluates
    prod_{i<j} (lambda_i - lambda_j + (j-i)kappa)_kappa over the unequal pairs
    times prod (j-i)/(j-i+1) (1+(j-i)kappa)_kappa over the equal ones, as a
    ratio against the empty partition.  Used as a cross-check only.
    """
    lam = partition(lam)
    kappa = Fraction(kappa)
    if n < len(lam):
        return Fraction(0)

    def f_of(padded) -> GammaProduct:
        out = GammaProduct.from_rational(1)
        for i in range(n):
            for j in range(i + 1, n):
                diff = padded[i] - padded[j]
                if diff > 0:
                    out = out * _pochhammer_gamma(diff + (j - i) * kappa, kappa)
                else:
                    out = out * _pochhammer_gamma(1 + (j - i) * kappa, kappa)
                    out = out * Fraction(j - i, j - i + 1)
        return out

    lam_padded = lam + (0,) * (n - len(lam))
    zero_padded = (0,) * n
    return gamma_product_ratio(f_of(lam_padded), f_of(zero_padded))


def kadell_ratio(lam: Partition, n: int, u, w, kappa) -> Rational:
    """I(lambda)/I(0): normalised Selberg integral of P_lambda^(1/kappa).

    Equals P_lambda(1^n) * prod_i (u+(n-i)kappa)_{lambda_i} / (u+w+(2n-i-1)kappa)_{lambda_i};
    returns 0 when n < l(lambda) (the polynomial vanishes in n variables).
    """
    lam = partition(lam)
    params = SelbergParams(n, u, w, kappa)  # validates the constraint set
    if n < len(lam):
        return Fraction(0)
    out = principal_specialization(lam, params.kappa, n)
    for i, part in enumerate(lam, start=1):
        out *= pochhammer(params.u + (n - i) * params.kappa, part)
        out /= pochhammer(params.u + params.w + (2 * n - i - 1) * params.kappa, part)
    return out


# ---------------------------------------------------------------------------
# power-sum helpers (desk-scale, for the orthogonality check)
# ---------------------------------------------------------------------------


def _exponent_collect(exp: dict) -> dict:
    """{exponent tuple: coeff} of a symmetric polynomial -> monomial-basis dict.

    Every permutation of an exponent vector carries the same coefficient, so
    reading one representative per orbit is enough.
    """
    out: dict[Partition, Fraction] = {}
    for e, c in exp.items():
        out[partition(e)] = c
    return out


def power_sum_in_monomials(lam: Partition) -> dict:
    """p_lambda = prod_j p_{lambda_j} expanded over monomials (brute force)."""
    lam = partition(lam)
    d = sum(lam)
    nvars = max(d, 1)
    acc = {(0,) * nvars: Fraction(1)}
    for part in lam:
        nxt: dict[tuple, Fraction] = {}
        for e, c in acc.items():
            for i in range(nvars):
                ne = list(e)
                ne[i] += part
                ne = tuple(ne)
                nxt[ne] = nxt.get(ne, Fraction(0)) + c
        acc = nxt
    return _exponent_collect(acc)


@lru_cache(maxsize=None)
def _monomial_to_power_matrix(d: int) -> dict:
    """{mu: {lambda: coeff}} with m_mu = sum coeff * p_lambda (exact solve)."""
    parts = partitions_of(d)
    p_rows = {lam: power_sum_in_monomials(lam) for lam in parts}
    # solve the linear system column by column over the partition index
    out: dict[Partition, dict[Partition, Fraction]] = {}
    idx = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    # matrix A[i][j]: coefficient of m_{parts[i]} in p_{parts[j]}
    A = [[p_rows[parts[j]].get(parts[i], Fraction(0)) for j in range(size)] for i in range(size)]
    for mu in parts:
        rhs = [Fraction(1) if parts[i] == mu else Fraction(0) for i in range(size)]
        sol = _solve_exact([row[:] for row in A], rhs)
        out[mu] = {parts[j]: sol[j] for j in range(size) if sol[j] != 0}
    return out


def _solve_exact(A, b):
    """Gaussian elimination over Fractions; raises on singular systems."""
    size = len(A)
    for col in range(size):
        piv = next((r for r in range(col, size) if A[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular transition matrix")
        A[col], A[piv] = A[piv], A[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        b[col] *= inv
        for r in range(size):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                b[r] -= f * b[col]
    return b


def jack_inner_product(lam: Partition, mu: Partition, xi) -> Fraction:
    """<P_lambda, P_mu> under <p_a, p_b> = z_a xi^l(a) delta_ab (degree <= 4)."""
    lam, mu = partition(lam), partition(mu)
    d = sum(lam)
    if sum(mu) != d:
        raise ValueError("weights differ")
    xi = Fraction(xi)
    kappa = 1 / xi
    m2p = _monomial_to_power_matrix(d)

    def in_powers(poly: SymPoly) -> dict:
        out: dict[Partition, Fraction] = {}
        for nu, c in poly.coeffs:
            for rho, t in m2p[nu].items():
                out[rho] = out.get(rho, Fraction(0)) + c * t
        return out

    pl = in_powers(jack_in_monomials(lam, kappa))
    pm = in_powers(jack_in_monomials(mu, kappa))
    total = Fraction(0)
    for rho, a in pl.items():
        b = pm.get(rho)
        if b is not None:
            total += a * b * zee(rho) * xi ** len(rho)
    return total
