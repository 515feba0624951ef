"""Standalone numerical and exact checks of the integral and combinatorial
identities underlying the operator theory, packaged as named reports.

Quadrature-based checks (Barnes, Gustafson, Baxter commutativity) compare an
integral against a gamma-product closed form; exact-sum checks (kernel and
hypergeometric identities) evaluate two finite expressions that must agree to
round-off at generic inputs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, DomainError
from .gammafn import (
    coupling_value,
    dual_kernel_khat,
    dual_measure_muhat,
    gamma,
    kernel_k,
    log_gamma,
    measure_mu,
    rgamma,
    weight_w,
)
from .operators import FDStencil, _second_derivative
from .quadrature import QuadSpec, _integrate_batch, integrate_nested, truncation_radius

__all__ = [
    "IdentityReport",
    "barnes_check",
    "gustafson_check",
    "kernel_identity_check",
    "rational_hypergeom_check",
    "baxter_commutativity_check",
    "kernel_function_identity_check",
]


@dataclass
class IdentityReport:
    """Result of one identity suite: self-describing cases plus a verdict."""

    name: str
    tolerance: float
    cases: list = field(default_factory=list)

    def add_case(self, inputs: dict, lhs: complex, rhs: complex) -> None:
        denom = max(abs(lhs), abs(rhs), 1e-300)
        self.cases.append(
            {
                "inputs": inputs,
                "lhs_re": float(np.real(lhs)),
                "lhs_im": float(np.imag(lhs)),
                "rhs_re": float(np.real(rhs)),
                "rhs_im": float(np.imag(rhs)),
                "abs_diff": abs(lhs - rhs),
                "rel_diff": abs(lhs - rhs) / denom,
            }
        )

    @property
    def passed(self) -> bool:
        return all(c["rel_diff"] <= self.tolerance for c in self.cases)

    @property
    def max_rel_diff(self) -> float:
        return max((c["rel_diff"] for c in self.cases), default=0.0)

    def to_json(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "tolerance": self.tolerance,
                "pass": self.passed,
                "cases": self.cases,
            },
            sort_keys=True,
        )


def _gamma_prod(args) -> complex:
    return complex(np.exp(sum(log_gamma(a) for a in args)))


def barnes_check(a1, a2, b1, b2, spec: QuadSpec | None = None,
                 tolerance: float = 1e-8) -> IdentityReport:
    """First Barnes lemma: the contour integral of Gamma(a_k - i t) Gamma(i t - b_k)
    over t in R (dt / 2 pi) equals prod Gamma(a_i - b_k) / Gamma(sum a - sum b).

    Needs Re a_k > 0 > Re b_k so the real axis separates the pole ladders.
    Also records the case with a_1 and a_2 swapped, identical by symmetry.
    """
    spec = spec or QuadSpec(abs_tol=1e-13, rel_tol=1e-10)
    alphas = [complex(a1), complex(a2)]
    betas = [complex(b1), complex(b2)]
    if min(a.real for a in alphas) <= 0.0 or max(b.real for b in betas) >= 0.0:
        raise DomainError("Barnes lemma requires Re alpha > 0 > Re beta")

    report = IdentityReport("barnes", tolerance)

    def one_case(al, be):
        center = float(np.mean([a.imag for a in al] + [b.imag for b in be]))
        r = truncation_radius(2.0 * math.pi * 0.9, 1.0, spec) + max(
            abs(a) for a in al + be
        ) + 1.0

        def f(t):
            return np.exp(
                log_gamma(al[0] - 1j * t) + log_gamma(al[1] - 1j * t)
                + log_gamma(1j * t - be[0]) + log_gamma(1j * t - be[1])
            )

        vals, _, _ = _integrate_batch(f, center - r, center + r, spec)
        lhs = complex(vals) / (2.0 * math.pi)
        rhs = _gamma_prod([al[i] - be[k] for i in range(2) for k in range(2)]) / complex(
            np.exp(log_gamma(sum(al) - sum(be)))
        )
        return lhs, rhs

    lhs, rhs = one_case(alphas, betas)
    report.add_case({"alphas": _fmt(alphas), "betas": _fmt(betas)}, lhs, rhs)
    lhs2, rhs2 = one_case(alphas[::-1], betas)
    report.add_case({"alphas": _fmt(alphas[::-1]), "betas": _fmt(betas), "swapped": True}, lhs2, rhs2)
    return report


def _fmt(zs) -> list:
    return [[float(np.real(z)), float(np.imag(z))] for z in np.atleast_1d(zs)]


def gustafson_check(n: int, alphas, betas, spec: QuadSpec | None = None,
                    tolerance: float = 1e-5) -> IdentityReport:
    """A-type Gustafson integral for n = 1 or 2 (n + 1 parameter pairs):

    int prod_{k<=n+1} prod_{j<=n} Gamma(a_k - i t_j) Gamma(i t_j - b_k)
        / prod_{j<k} [Gamma(i t_kj) Gamma(i t_jk)] prod dt_j/(2 pi)
      = n! prod_{k,j} Gamma(a_j - b_k) / Gamma(sum (a_j - b_j)).

    The measure denominator is evaluated through the entire reciprocal gamma.
    """
    spec = spec or QuadSpec(abs_tol=1e-12, rel_tol=1e-7)
    alphas = [complex(a) for a in alphas]
    betas = [complex(b) for b in betas]
    if n not in (1, 2):
        raise DomainError("gustafson_check supports n = 1 or 2")
    if len(alphas) != n + 1 or len(betas) != n + 1:
        raise DomainError(f"need {n + 1} alpha and beta parameters")
    if min(a.real for a in alphas) <= 0.0 or max(b.real for b in betas) >= 0.0:
        raise DomainError("contour separation requires Re alpha > 0 > Re beta")

    rhs = _gamma_prod(
        [alphas[j] - betas[k] for j in range(n + 1) for k in range(n + 1)]
    ) / complex(np.exp(log_gamma(sum(alphas) - sum(betas))))
    rhs *= math.factorial(n)

    span = max(abs(a) for a in alphas + betas)
    r = truncation_radius(2.0 * math.pi * 0.9, 1.0, spec) + span + 1.0

    if n == 1:

        def f(t):
            acc = 0.0
            for k in range(2):
                acc = acc + log_gamma(alphas[k] - 1j * t) + log_gamma(1j * t - betas[k])
            return np.exp(acc)

        vals, _, _ = _integrate_batch(f, -r, r, spec)
        lhs = complex(vals) / (2.0 * math.pi)
    else:

        def f(t1, t2):
            acc = 0.0
            for k in range(3):
                acc = (
                    acc
                    + log_gamma(alphas[k] - 1j * t1) + log_gamma(1j * t1 - betas[k])
                    + log_gamma(alphas[k] - 1j * t2) + log_gamma(1j * t2 - betas[k])
                )
            meas = rgamma(1j * (t2 - t1)) * rgamma(1j * (t1 - t2))
            return np.exp(acc) * meas

        res = integrate_nested(f, 2, spec, bounds=[(-r, r), (-r, r)])
        lhs = res.value / (2.0 * math.pi) ** 2

    report = IdentityReport("gustafson", tolerance)
    report.add_case({"n": n, "alphas": _fmt(alphas), "betas": _fmt(betas)}, lhs, rhs)
    return report


def _check_generic(values, min_sep: float = 1e-9) -> None:
    vals = np.asarray(values)
    if np.any(np.abs(vals) < min_sep):
        raise DegenerateInput("input within 1e-9 of a singular hyperplane")


def kernel_identity_check(n: int, r: int, z, y, alpha,
                          tolerance: float = 1e-12) -> IdentityReport:
    """Exact rational kernel identity between r-subset sums over z and y sides.

    sum_{|I|=r} prod_{i in I} [prod_{j not in I} (z_i-z_j-a)/(z_i-z_j)
                               prod_a (z_i-y_a+a)/(z_i-y_a)]
    equals the mirror sum with z <-> y and a -> -a; both sides equal C(n, r)
    at a = 0.
    """
    z = np.asarray(z, dtype=complex)
    y = np.asarray(y, dtype=complex)
    alpha = complex(alpha)
    if n < 1 or n > 4 or z.size != n or y.size != n:
        raise DomainError("kernel identity needs 1 <= n <= 4 and matching lengths")
    if not 0 <= r <= n:
        raise DomainError("subset size r must be in 0..n")
    _check_generic([z[i] - z[j] for i in range(n) for j in range(n) if i != j] or [1.0])
    _check_generic([y[i] - y[j] for i in range(n) for j in range(n) if i != j] or [1.0])
    _check_generic([z[i] - y[a] for i in range(n) for a in range(n)])

    def side(u, v, a):
        total = 0.0 + 0.0j
        for combo in itertools.combinations(range(n), r):
            term = 1.0 + 0.0j
            for i in combo:
                for j in range(n):
                    if j not in combo:
                        term *= (u[i] - u[j] - a) / (u[i] - u[j])
                for b in range(n):
                    term *= (u[i] - v[b] + a) / (u[i] - v[b])
            total += term
        return total

    lhs = side(z, y, alpha)
    rhs = side(y, z, -alpha)
    report = IdentityReport("kernel-identity", tolerance)
    report.add_case(
        {"n": n, "r": r, "z": _fmt(z), "y": _fmt(y), "alpha": _fmt(alpha)}, lhs, rhs
    )
    return report


def _pochhammer(a: complex, k: int) -> complex:
    out = 1.0 + 0.0j
    for l in range(k):
        out *= a + l
    return out


def _compositions(total: int, parts: int):
    """All nonnegative integer tuples of the given length and sum, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def rational_hypergeom_check(n: int, big_k: int, x, y, alpha,
                             tolerance: float = 1e-10) -> IdentityReport:
    """Hypergeometric summation identity over compositions |k| = K:

    sum_k prod_{i,j} (x_i-x_j-k_j-a)_{k_i} / (x_i-x_j-k_j)_{k_i}
          prod_{a,j} (x_j-y_a+a)_{k_j} / (x_j-y_a)_{k_j}
    equals the same sum with x and y roles mirrored.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    alpha = complex(alpha)
    if n < 1 or n > 3 or x.size != n or y.size != n:
        raise DomainError("hypergeometric identity needs 1 <= n <= 3")
    if big_k < 0 or big_k > 6:
        raise DomainError("total degree K must be in 0..6")

    def lhs_sum():
        total = 0.0 + 0.0j
        for ks in _compositions(big_k, n):
            term = 1.0 + 0.0j
            for i in range(n):
                for j in range(n):
                    den = _pochhammer(x[i] - x[j] - ks[j], ks[i])
                    if den == 0.0:
                        raise DegenerateInput("vanishing Pochhammer denominator")
                    term *= _pochhammer(x[i] - x[j] - ks[j] - alpha, ks[i]) / den
            for a in range(n):
                for j in range(n):
                    den = _pochhammer(x[j] - y[a], ks[j])
                    if den == 0.0:
                        raise DegenerateInput("vanishing Pochhammer denominator")
                    term *= _pochhammer(x[j] - y[a] + alpha, ks[j]) / den
            total += term
        return total

    def rhs_sum():
        total = 0.0 + 0.0j
        for ks in _compositions(big_k, n):
            term = 1.0 + 0.0j
            for a in range(n):
                for b in range(n):
                    den = _pochhammer(y[a] - y[b] - ks[a], ks[b])
                    if den == 0.0:
                        raise DegenerateInput("vanishing Pochhammer denominator")
                    term *= _pochhammer(y[a] - y[b] - ks[a] - alpha, ks[b]) / den
            for j in range(n):
                for a in range(n):
                    den = _pochhammer(x[j] - y[a], ks[a])
                    if den == 0.0:
                        raise DegenerateInput("vanishing Pochhammer denominator")
                    term *= _pochhammer(x[j] - y[a] + alpha, ks[a]) / den
            total += term
        return total

    report = IdentityReport("hypergeom-identity", tolerance)
    report.add_case(
        {"n": n, "K": big_k, "x": _fmt(x), "y": _fmt(y), "alpha": _fmt(alpha)},
        lhs_sum(),
        rhs_sum(),
    )
    return report


def _commutativity_q(z, lam, g, spec, rational: bool):
    """Q_n(z; lam) = int exp(2 pi i lam sum y) prod K(z_a - y_i) mu(y) dy."""
    z = np.asarray(z, dtype=float)
    n = z.size // 2
    span = float(np.max(np.abs(z)))
    if rational:
        kern, meas = dual_kernel_khat, dual_measure_muhat
        decay_per_kernel = math.pi
        extra = 0.5 * g + 1.0
    else:
        kern, meas = kernel_k, measure_mu
        decay_per_kernel = math.pi * g
        extra = 1.0

    if n == 1:
        decay = (2.0 * decay_per_kernel - 2.0 * math.pi * abs(lam.imag)) * 0.9
        if decay <= 0.0:
            raise DomainError("Im lam too large for convergence")
        r = truncation_radius(decay, 1.0, spec) + span + extra

        def f(t):
            return (
                np.exp(2j * np.pi * lam * t) * kern(z[0] - t, g) * kern(z[1] - t, g)
            )

        vals, _, _ = _integrate_batch(f, -r, r, spec, osc=abs(lam.real))
        return complex(vals)

    # n = 2: symmetric in (y_1, y_2); center-of-mass u, separation d > 0.
    # The slowest decay direction holds one y near the fixed parameters and
    # sends the other to infinity: per coordinate that leaves
    # 2n kernels - measure growth - phase growth.
    growth = 2.0 if rational else 2.0 * g
    per_y = (4.0 * decay_per_kernel - math.pi * growth - 2.0 * math.pi * abs(lam.imag)) * 0.9
    if per_y <= 0.0:
        raise DomainError("Im lam too large for convergence")
    r_y = truncation_radius(per_y, 1.0, spec) + span + extra
    d_max = 2.0 * r_y
    r_u = r_y

    def f(d, u):
        y1 = u + 0.5 * d
        y2 = u - 0.5 * d
        return (
            2.0
            * np.exp(2j * np.pi * lam * 2.0 * u)
            * kern(z[0] - y1, g) * kern(z[1] - y1, g)
            * kern(z[2] - y1, g) * kern(z[3] - y1, g)
            * kern(z[0] - y2, g) * kern(z[1] - y2, g)
            * kern(z[2] - y2, g) * kern(z[3] - y2, g)
            * meas(d, g)
        )

    zspan = float(np.max(z) - np.min(z))
    bulks = [(0.0, zspan + 3.0), (float(np.min(z)) - 2.0, float(np.max(z)) + 2.0)]
    res = integrate_nested(
        f, 2, spec, bounds=[(0.0, d_max), (-r_u, r_u)],
        oscs=[abs(lam.real), 2.0 * abs(lam.real)], bulks=bulks,
    )
    return res.value


def baxter_commutativity_check(n: int, z, lam_c, g, spec: QuadSpec | None = None,
                               tolerance: float = 1e-6) -> IdentityReport:
    """Integral identity behind Baxter commutativity, n = 1 or 2:

        Q_n(z; lam) = exp(2 pi i lam sum z) Q_n(z; -lam)

    checked both for the hyperbolic kernel/measure pair (K, mu) and for the
    rational pair (K^, mu^).  Requires |Im lam| < min(g, 1).
    """
    g = coupling_value(g)
    lam_c = complex(lam_c)
    z = np.asarray(z, dtype=float)
    spec = spec or QuadSpec(abs_tol=1e-13, rel_tol=1e-8)
    if n not in (1, 2):
        raise DomainError("commutativity check supports n = 1 or 2")
    if z.size != 2 * n:
        raise DomainError(f"need 2n = {2 * n} fixed parameters")
    if abs(lam_c.imag) >= min(g, 1.0):
        raise DomainError("requires |Im lam| < min(g, 1)")

    report = IdentityReport("commutativity", tolerance)
    phase = complex(np.exp(2j * np.pi * lam_c * float(np.sum(z))))
    for rational in (False, True):
        lhs = _commutativity_q(z, lam_c, g, spec, rational)
        rhs = phase * _commutativity_q(z, -lam_c, g, spec, rational)
        report.add_case(
            {
                "variant": "rational" if rational else "hyperbolic",
                "n": n,
                "z": _fmt(z),
                "lam": _fmt(lam_c),
                "g": g,
            },
            lhs,
            rhs,
        )
    return report


def _w2(pt: np.ndarray, g: float) -> float:
    return float(weight_w(pt[0] - pt[1], g))


def _cs_h_on(fn, pt: np.ndarray, g: float, stencil: FDStencil) -> complex:
    """Apply -sum d^2 + 2 pi^2 g(g-1)/sinh^2(pi(x_1-x_2)) to fn at pt (n = 2)."""
    h = stencil.h
    offsets = np.arange(stencil.order) - stencil.order // 2
    center = fn(pt)
    out = 0.0 + 0.0j
    for axis in range(2):
        vals = np.array(
            [center if o == 0 else fn(pt + h * o * np.eye(2)[axis]) for o in offsets]
        )
        out -= _second_derivative(vals, h)
    out += 2.0 * math.pi**2 * g * (g - 1.0) / math.sinh(math.pi * (pt[0] - pt[1])) ** 2 * center
    return out


def kernel_function_identity_check(k: int, x, y, g, stencil: FDStencil | None = None,
                                   tolerance: float = 1e-5) -> IdentityReport:
    """Kernel function identity H_k(x) K(x, y) = H_k(-y) K(x, y) at n = 2.

    k = 1 is total momentum: (d_x1 + d_x2 + d_y1 + d_y2) K = 0 by translation
    invariance; k = 2 is checked through the conjugated Hamiltonian
    w^{-1} H w applied in the x and in the y variables.
    """
    g = coupling_value(g)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    stencil = stencil or FDStencil(5, 1e-3)
    if x.size != 2 or y.size != 2:
        raise DomainError("kernel function identity is implemented for n = 2")
    if abs(x[0] - x[1]) < 1e-6 or abs(y[0] - y[1]) < 1e-6:
        raise DomainError("points must avoid the diagonals")

    def kk(xp, yp) -> float:
        return float(
            kernel_k(xp[0] - yp[0], g) * kernel_k(xp[0] - yp[1], g)
            * kernel_k(xp[1] - yp[0], g) * kernel_k(xp[1] - yp[1], g)
        )

    report = IdentityReport("kernel-function-identity", tolerance)
    if k == 1:
        h = stencil.h
        grad = 0.0
        for axis in range(2):
            e = np.eye(2)[axis] * h
            grad += (kk(x + e, y) - kk(x - e, y)) / (2.0 * h)
            grad += (kk(x, y + e) - kk(x, y - e)) / (2.0 * h)
        scale = sum(
            abs(kk(x + np.eye(2)[a] * stencil.h, y) - kk(x, y)) / stencil.h for a in range(2)
        )
        report.add_case({"k": 1, "x": _fmt(x), "y": _fmt(y), "g": g}, grad, 0.0)
        report.cases[-1]["rel_diff"] = abs(grad) / max(scale, 1e-30)
    elif k == 2:
        lhs = _cs_h_on(lambda p: _w2(p, g) * kk(p, y), x, g, stencil) / _w2(x, g)
        rhs = _cs_h_on(lambda p: _w2(p, g) * kk(x, p), y, g, stencil) / _w2(y, g)
        report.add_case({"k": 2, "x": _fmt(x), "y": _fmt(y), "g": g}, lhs, rhs)
    else:
        raise DomainError("k must be 1 or 2")
    return report
