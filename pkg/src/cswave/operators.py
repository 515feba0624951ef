"""Differential, difference and integral (Baxter) operators applied to the
numerically evaluated wave functions, reported as eigen-equation residuals.

Each ``apply_*`` returns an EigenResidual holding both sides of the relevant
eigen relation and their relative mismatch.  Residual magnitudes are governed
by the finite-difference step (differential case) and by the quadrature
tolerances (all integral cases); the callers choose those budgets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, PoleError, StepTooLarge
from .gammafn import (
    alpha_n,
    coupling_value,
    dual_kernel_khat,
    dual_measure_muhat,
    kernel_k,
    measure_mu,
    norm_const,
    rgamma,
    weight_w,
)
from .quadrature import QuadSpec, _integrate_batch, integrate_nested, truncation_radius
from .wavefunctions import (
    _as_position,
    _as_spectral,
    _euler2_batch,
    _mb2_batch,
    _require_distinct,
    euler_psi,
    mb_psi,
)

__all__ = [
    "FDStencil",
    "EigenResidual",
    "apply_cs_hamiltonian",
    "apply_macdonald_rational",
    "apply_dual_difference_hr",
    "apply_baxter",
    "apply_dual_baxter",
]


@dataclass(frozen=True)
class FDStencil:
    """Central finite-difference stencil: points per axis (3 or 5) and step."""

    order: int = 5
    h: float = 1e-3

    def __post_init__(self) -> None:
        if self.order not in (3, 5):
            raise DomainError("stencil order must be 3 or 5")
        if not self.h > 0.0:
            raise DomainError("stencil step must be positive")


@dataclass(frozen=True)
class EigenResidual:
    """Both sides of an eigen relation and their relative mismatch."""

    lhs: complex
    rhs: complex
    residual: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "residual",
            abs(self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs), 1e-30),
        )

    def to_record(self) -> dict:
        return {
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "residual": self.residual,
        }


_D2_3 = np.array([1.0, -2.0, 1.0])
_D2_5 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _second_derivative(values: np.ndarray, h: float) -> complex:
    w = _D2_3 if values.size == 3 else _D2_5
    return complex(np.dot(w, values)) / (h * h)


def _fd_quad_spec(spec: QuadSpec, h: float) -> QuadSpec:
    # residual-level tolerance tightened by h^2; the /h^2 amplification of
    # the stencil then keeps quadrature noise below the target
    rel = min(max(spec.rel_tol * h * h, 2e-13), spec.rel_tol)
    return replace(spec, rel_tol=rel, abs_tol=min(spec.abs_tol, 1e-13))


def apply_cs_hamiltonian(lam, x, g, stencil: FDStencil | None = None,
                         spec: QuadSpec | None = None, richardson: bool = False) -> EigenResidual:
    """Residual of the Calogero-Sutherland eigen equation for n <= 2.

    Applies H = -sum d^2/dx_j^2 + sum_{j != k} pi^2 g(g-1)/sinh^2(pi x_jk)
    by central differences to h(x) = w(x) Psi_lam(x) and compares with
    sum_j (2 pi lam_j)^2 h(x).  With ``richardson=True`` the step is halved
    once and StepTooLarge is raised unless the residual drops at least 4x
    (up to the quadrature noise floor).
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    stencil = stencil or FDStencil()
    spec = spec or QuadSpec(abs_tol=1e-14, rel_tol=1e-8)
    n = lam.size
    if n > 2 or x.size != n:
        raise DomainError("differential check supports n <= 2")
    if np.any(lam.imag != 0.0):
        raise DomainError("differential check needs real spectra")
    if n == 2 and abs(x[0] - x[1]) < 1e-6:
        raise DomainError("potential is singular on the diagonal x_1 = x_2")

    def residual_for(h: float) -> EigenResidual:
        qspec = _fd_quad_spec(spec, h)

        def h_fn(pt: np.ndarray) -> complex:
            w = float(weight_w(pt[0] - pt[1], g)) if n == 2 else 1.0
            return w * euler_psi(lam, pt, g, qspec).value

        offsets = np.arange(stencil.order) - stencil.order // 2
        center = h_fn(x)
        lhs = 0.0 + 0.0j
        for axis in range(n):
            vals = np.array(
                [center if o == 0 else h_fn(x + h * o * np.eye(n)[axis]) for o in offsets]
            )
            lhs -= _second_derivative(vals, h)
        if n == 2:
            lhs += 2.0 * math.pi**2 * g * (g - 1.0) / math.sinh(math.pi * (x[0] - x[1])) ** 2 * center
        rhs = float(np.sum((2.0 * math.pi * lam.real) ** 2)) * center
        return EigenResidual(lhs, rhs)

    res = residual_for(stencil.h)
    if richardson:
        res_half = residual_for(0.5 * stencil.h)
        floor = 100.0 * spec.rel_tol
        if res.residual > floor and res_half.residual > res.residual / 4.0:
            raise StepTooLarge(
                f"residual {res.residual:.3e} -> {res_half.residual:.3e} when halving h"
            )
    return res


def _elementary_symmetric(vals: np.ndarray, r: int) -> complex:
    total = 0.0 + 0.0j
    for combo in itertools.combinations(range(vals.size), r):
        term = 1.0 + 0.0j
        for i in combo:
            term *= vals[i]
        total += term
    return complex(total)


def _difference_lhs(lam, x, g, r, coupling_shift, psi_of):
    """sum_I prod_{i in I, j not in I} (lam_i - lam_j - i*c)/(lam_i - lam_j) psi(lam - i e_I)."""
    n = lam.size
    total = 0.0 + 0.0j
    for combo in itertools.combinations(range(n), r):
        coeff = 1.0 + 0.0j
        for i in combo:
            for j in range(n):
                if j not in combo:
                    coeff *= (lam[i] - lam[j] - 1j * coupling_shift) / (lam[i] - lam[j])
        shifted = lam.copy()
        for i in combo:
            shifted[i] = shifted[i] - 1j
        total += coeff * psi_of(shifted)
    return total


def apply_macdonald_rational(r: int, lam, x, g, spec: QuadSpec | None = None) -> EigenResidual:
    """Residual of the rational Macdonald difference equation, n <= 2.

    The operator shifts lam_i -> lam_i - i over r-subsets with rational
    coefficients (lam_i - lam_j - i(1-g))/(lam_i - lam_j) and the sign
    (-1)^(r(n-1)); the eigenvalue is e_r(e^{2 pi x_1}, ..., e^{2 pi x_n}).
    Shifted spectra are evaluated through the Euler representation, which
    needs g > 1 plus a convergence margin.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.1)
    n = lam.size
    if n > 2 or x.size != n:
        raise DomainError("difference checks support n <= 2")
    if not 1 <= r <= n:
        raise DomainError(f"order r must be in 1..{n}")
    if np.any(lam.imag != 0.0):
        raise DomainError("difference checks need real spectra")
    if n > 1:
        _require_distinct(lam)

    psi_of = lambda lm: euler_psi(lm, x, g, spec).value
    sign = -1.0 if (r * (n - 1)) % 2 else 1.0
    lhs = sign * _difference_lhs(lam, x, g, r, 1.0 - g, psi_of)
    rhs = _elementary_symmetric(np.exp(2.0 * math.pi * x), r) * psi_of(lam)
    return EigenResidual(complex(lhs), complex(rhs))


def _ho_norm(lam: np.ndarray, g: float) -> complex:
    n = lam.size
    norm = alpha_n(n, g) + 0.0j
    for i in range(n):
        for j in range(n):
            if i != j:
                norm *= complex(rgamma(1j * (lam[i] - lam[j]) + g))
    return norm


def apply_dual_difference_hr(r: int, lam, x, g, spec: QuadSpec | None = None) -> EigenResidual:
    """Residual of the difference equation for the normalized function F, n <= 2.

    Same structure as the Macdonald operator but with coefficient shift g
    instead of 1-g, no sign factor, and acting on
    F = alpha_n prod 1/Gamma(i lam_ij + g) Psi.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.1)
    n = lam.size
    if n > 2 or x.size != n:
        raise DomainError("difference checks support n <= 2")
    if not 1 <= r <= n:
        raise DomainError(f"order r must be in 1..{n}")
    if np.any(lam.imag != 0.0):
        raise DomainError("difference checks need real spectra")
    if n > 1:
        _require_distinct(lam)

    f_of = lambda lm: _ho_norm(lm, g) * euler_psi(lm, x, g, spec).value
    lhs = _difference_lhs(lam, x, g, r, g, f_of)
    rhs = _elementary_symmetric(np.exp(2.0 * math.pi * x), r) * f_of(lam)
    return EigenResidual(complex(lhs), complex(rhs))


def apply_baxter(lam_b, lam, x, g, spec: QuadSpec | None = None) -> EigenResidual:
    """Residual of the Baxter eigen relation Q(lam_b) Psi = prod K^(lam_b - lam_j) Psi.

    The operator integrates exp(2 pi i lam_b (sum x - sum y)) K(x, y) mu(y)
    Psi_lam(y) over y in R^n with the constant (2 pi Gamma(g))^n / n!;
    n <= 2 and |Im lam_b| < g/2.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    lam_b = complex(lam_b)
    spec = spec or QuadSpec(abs_tol=1e-14, rel_tol=1e-8)
    n = lam.size
    if n > 2 or x.size != n:
        raise DomainError("Baxter checks support n <= 2")
    if abs(lam_b.imag) >= 0.5 * g:
        raise DomainError("Baxter parameter needs |Im lam_b| < g/2")
    if np.any(np.abs(lam.imag) > 0.0):
        raise DomainError("Baxter checks need real spectra")

    psi_x = euler_psi(lam, x, g, spec).value
    rhs = psi_x
    for lj in lam:
        rhs *= complex(dual_kernel_khat(lam_b - lj, g))

    sx = float(np.sum(x))
    if n == 1:
        decay = math.pi * (g - 2.0 * abs(lam_b.imag)) * 0.9
        r = truncation_radius(decay, 1.0, spec) + abs(x[0]) + 1.0
        osc = abs(lam_b.real) + abs(lam[0].real)

        def f(y):
            return (
                np.exp(2j * np.pi * (lam_b * (sx - y) + lam[0] * y))
                * kernel_k(x[0] - y, g)
            )

        vals, errs, ne = _integrate_batch(f, -r, r, spec, osc=osc)
        lhs = norm_const(1, g) * complex(vals)
        return EigenResidual(lhs, complex(rhs))

    # slowest direction: one y near x, the other far out, leaving per
    # coordinate 2 kernels - measure growth - phase = pi(g - 2 |Im lam_b|)
    decay = math.pi * (g - 2.0 * abs(lam_b.imag)) * 0.9
    if decay <= 0.1:
        raise DomainError("no convergence margin for this Im lam_b")
    scale = abs(rhs) / norm_const(2, g)
    spec = replace(spec, abs_tol=max(spec.abs_tol, 0.05 * spec.rel_tol * scale))
    r = truncation_radius(decay, 1.0, spec) + float(np.max(np.abs(x))) + 1.0
    osc = abs(lam_b.real) + float(np.max(np.abs(lam.real)))
    inner_spec = replace(spec, abs_tol=max(spec.abs_tol / 100.0, 1e-300),
                         rel_tol=max(spec.rel_tol / 100.0, 5e-15))
    inner_ne = [0]

    # symmetric integrand: center-of-mass u and separation d > 0, doubled
    def f(d, u):
        y1 = u + 0.5 * d
        y2 = u - 0.5 * d
        pref = (
            np.exp(2j * np.pi * lam_b * (sx - 2.0 * u))
            * kernel_k(x[0] - y1, g) * kernel_k(x[1] - y1, g)
            * kernel_k(x[0] - y2, g) * kernel_k(x[1] - y2, g)
            * measure_mu(d, g)
        )
        inner, _, ine = _euler2_batch(lam, y1, y2, g, inner_spec)
        inner_ne[0] += ine
        return 2.0 * pref * inner

    span = float(np.max(x) - np.min(x))
    bulks = [(0.0, span + 3.0), (float(np.min(x)) - 2.0, float(np.max(x)) + 2.0)]
    res = integrate_nested(f, 2, spec, bounds=[(0.0, 2.0 * r), (-r, r)],
                           oscs=[0.5 * osc, osc], bulks=bulks)
    lhs = norm_const(2, g) * res.value
    return EigenResidual(complex(lhs), complex(rhs))


def apply_dual_baxter(x_b: float, lam, x, g, spec: QuadSpec | None = None) -> EigenResidual:
    """Residual of the dual Baxter relation Q^(x_b) Psi^ = prod K(x_b - x_j) Psi^.

    Integrates exp(2 pi i x_b (sum lam - sum gamma)) K^(lam, gamma)
    mu^(gamma) Psi^_gamma(x) over gamma in R^n with the dual constant
    (2 pi Gamma(g))^(-n) / n!; n <= 2 and g > 1.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.0)
    x_b = float(x_b)
    spec = spec or QuadSpec(abs_tol=1e-14, rel_tol=1e-8)
    n = lam.size
    if n > 2 or x.size != n:
        raise DomainError("Baxter checks support n <= 2")
    if np.any(lam.imag != 0.0):
        raise DomainError("dual Baxter checks need real spectra")

    psi_x = mb_psi(lam, x, g, spec).value
    rhs = psi_x
    for xj in x:
        rhs *= float(kernel_k(x_b - xj, g))

    sl = complex(np.sum(lam))
    if n == 1:
        r = truncation_radius(math.pi * 0.9, 1.0, spec) + abs(lam[0].real) + 0.5 * g + 1.0
        osc = abs(x_b) + abs(x[0])

        def f(c):
            return (
                np.exp(2j * np.pi * (x_b * (sl - c) + c * x[0]))
                * dual_kernel_khat(lam[0].real - c, g)
            )

        vals, errs, ne = _integrate_batch(f, -r, r, spec, osc=osc)
        lhs = norm_const(1, g, dual=True) * complex(vals)
        return EigenResidual(lhs, complex(rhs))

    scale = abs(psi_x) / norm_const(2, g, dual=True)
    spec = replace(spec, abs_tol=max(spec.abs_tol, 0.05 * spec.rel_tol * scale))
    lam_span = float(np.max(np.abs(lam.real)))
    # corner direction (one gamma pinned, the other far out) decays at pi
    r_g = truncation_radius(math.pi * 0.9, 1.0, spec) + lam_span + 0.5 * g + 1.0
    d_max = 2.0 * r_g
    r_u = r_g
    osc_u = 2.0 * abs(x_b) + abs(float(x[0] + x[1]))
    osc_d = abs(x_b) + 0.5 * abs(float(x[0] - x[1]))
    inner_spec = replace(spec, abs_tol=max(spec.abs_tol / 100.0, 1e-300),
                         rel_tol=max(spec.rel_tol / 100.0, 5e-15))
    inner_ne = [0]

    # symmetric integrand over (gamma_1, gamma_2): integrate the center of
    # mass u and the separation d > 0, doubled
    def f(d, u):
        c1 = u + 0.5 * d
        c2 = u - 0.5 * d
        pref = (
            np.exp(2j * np.pi * x_b * (sl - 2.0 * u))
            * dual_kernel_khat(lam[0].real - c1, g) * dual_kernel_khat(lam[1].real - c1, g)
            * dual_kernel_khat(lam[0].real - c2, g) * dual_kernel_khat(lam[1].real - c2, g)
            * dual_measure_muhat(d, g)
        )
        inner, _, ine = _mb2_batch(x, c1, c2, g, inner_spec)
        inner_ne[0] += ine
        return 2.0 * pref * inner

    lspan = float(np.max(lam.real) - np.min(lam.real))
    bulks = [(0.0, lspan + 3.0),
             (float(np.min(lam.real)) - 2.0, float(np.max(lam.real)) + 2.0)]
    res = integrate_nested(f, 2, spec, bounds=[(0.0, d_max), (-r_u, r_u)],
                           oscs=[osc_d, osc_u], bulks=bulks)
    lhs = norm_const(2, g, dual=True) * res.value
    return EigenResidual(complex(lhs), complex(rhs))
