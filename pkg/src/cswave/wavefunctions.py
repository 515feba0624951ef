"""Wave functions of the hyperbolic Calogero-Sutherland system.

Four routes to the same function of n spectral parameters lambda and n
positions x (n <= 3 for the integral representations):

* ``euler_psi``   -- iterated real-space integral with cosh kernels,
  Psi_n = d_{n-1} * int K(x, y) mu(y) Psi_{n-1}(y) exp(2 pi i lam_n (sum x - sum y)) dy,
  base case exp(2 pi i lam_1 x_1), d_m = (2 pi Gamma(g))^m / m!.
* ``mb_psi``      -- the bispectral dual iterated integral with gamma-function
  kernels K^ and measure mu^ over spectral variables, constants d^_m =
  (2 pi Gamma(g))^{-m} / m!.
* ``hc_psi`` / ``hc_psi_symmetrized`` -- exponential series in the ordered
  chamber x_1 > ... > x_n with coefficients c_M indexed by lower triangular
  nonnegative-integer matrices.
* ``psi_asymptotic`` -- the leading plane-wave asymptotics deep in a chamber.

``ho_f`` applies the gamma-product normalization that turns Psi into the
hypergeometric function F with F(lam, 0) = 1, and ``psi_zero`` is the exact
closed form of Psi at x = 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import replace

import numpy as np

from .errors import DomainError, PoleError
from .gammafn import (
    alpha_n,
    coupling_value,
    dual_kernel_khat,
    dual_measure_muhat,
    dual_weight_what,
    kernel_k,
    log_gamma,
    measure_mu,
    norm_const,
    rgamma,
)
from .quadrature import EvalResult, QuadSpec, _integrate_batch, integrate_nested, truncation_radius

__all__ = [
    "euler_psi",
    "mb_psi",
    "psi_zero",
    "hc_index_matrices",
    "hc_coeff",
    "hc_psi",
    "hc_psi_symmetrized",
    "ho_f",
    "psi_asymptotic",
    "phi_renormalized",
    "lattice_gap",
    "chamber_gap",
    "rho_vector",
    "total_bound_exponent",
]

_MIN_SEP = 1e-9

DEFAULT_SPEC = QuadSpec(abs_tol=1e-14, rel_tol=1e-10, max_depth=26)


def _as_spectral(lam) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(lam, dtype=complex))
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError("spectral point must be a 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise DomainError("spectral point must be finite")
    return arr


def _as_position(x) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError("position point must be a 1-d sequence of reals")
    if not np.all(np.isfinite(arr)):
        raise DomainError("position point must be finite")
    return arr


def _require_distinct(lam: np.ndarray) -> None:
    n = lam.size
    for i in range(n):
        for j in range(i + 1, n):
            if abs(lam[i] - lam[j]) <= _MIN_SEP:
                raise PoleError(f"spectral parameters {i} and {j} closer than {_MIN_SEP}")


def rho_vector(n: int) -> np.ndarray:
    """Half sum vector ((n-1)/2, (n-3)/2, ..., (1-n)/2)."""
    return 0.5 * (n - 1) - np.arange(n, dtype=float)


def chamber_gap(x) -> float:
    """Minimal consecutive gap min_i (x_i - x_{i+1}) of a descending point."""
    x = _as_position(x)
    if x.size == 1:
        return math.inf
    return float(np.min(x[:-1] - x[1:]))


def lattice_gap(lam) -> float:
    """Spectral spread prod_{i<j} (1 + |lam_i - lam_j|) >= 1."""
    lam = _as_spectral(lam)
    out = 1.0
    for i in range(lam.size):
        for j in range(i + 1, lam.size):
            out *= 1.0 + abs(lam[i] - lam[j])
    return out


def total_bound_exponent(n: int, g) -> float:
    """Power N(g) = 4^(n-2) g - (4^(n-2) - 1)(g - 2)/3 in the total bound."""
    gval = coupling_value(g)
    q = 4.0 ** (n - 2)
    return q * gval - (q - 1.0) * (gval - 2.0) / 3.0


def _imag_spread(lam: np.ndarray) -> float:
    im = lam.imag
    return float(np.max(im) - np.min(im)) if lam.size > 1 else 0.0


def psi_zero(lam, g):
    """Closed form Psi(lam, 0) = prod_k Gamma(g)/Gamma(k g) * prod_{i != j} Gamma(i lam_ij + g)."""
    lam = _as_spectral(lam)
    gval = coupling_value(g)
    n = lam.size
    lg = sum(
        log_gamma(1j * (lam[i] - lam[j]) + gval)
        for i in range(n)
        for j in range(n)
        if i != j
    )
    return complex(np.exp(lg) / alpha_n(n, gval)) if n > 1 else 1.0 + 0.0j


def _scale_estimate(lam: np.ndarray, x: np.ndarray, g: float) -> float:
    """Rough magnitude of Psi used to budget absolute tolerances and radii."""
    try:
        s = abs(psi_zero(lam, g))
    except PoleError:
        s = 1.0
    spread = sum(
        abs(x[i] - x[j]) for i in range(x.size) for j in range(i + 1, x.size)
    )
    return max(s * math.exp(-math.pi * g * spread), 1e-250)


def _effective_spec(spec: QuadSpec, scale: float) -> QuadSpec:
    """Raise abs_tol to a fraction of rel_tol * scale so that tiny batch
    elements and tails are not refined beyond the relative target."""
    if spec.rel_tol <= 0.0:
        return spec
    return replace(spec, abs_tol=max(spec.abs_tol, 0.05 * spec.rel_tol * scale))


def _euler_bounds(lam: np.ndarray, x: np.ndarray, g: float, spec: QuadSpec):
    decay = 2.0 * math.pi * (g - _imag_spread(lam)) * 0.9
    r = truncation_radius(decay, 1.0, spec) + float(np.max(np.abs(x))) + 1.0
    osc = 2.0 * float(np.max(np.abs(lam.real)))
    return (-r, r), osc


def _euler2_batch(lam, x1, x2, g, spec):
    """Vectorized two-particle Euler integral over batched positions."""
    l1, l2 = lam
    b1, b2 = np.broadcast_arrays(np.asarray(x1, dtype=float), np.asarray(x2, dtype=float))
    lo = float(np.min([b1.min(), b2.min()]))
    hi = float(np.max([b1.max(), b2.max()]))
    decay = 2.0 * math.pi * (g - abs(l1.imag - l2.imag)) * 0.9
    r = truncation_radius(decay, 1.0, spec)
    osc = abs(l1.real) + abs(l2.real)
    u1 = b1[..., None]
    u2 = b2[..., None]

    def f(s):
        return (
            np.exp(2j * np.pi * (l2 * (u1 + u2 - s[None, :]) + l1 * s[None, :]))
            * kernel_k(u1 - s[None, :], g)
            * kernel_k(u2 - s[None, :], g)
        )

    vals, errs, ne = _integrate_batch(
        f, lo - r, hi + r, spec, osc=osc, batch_hint=b1.size
    )
    d1 = norm_const(1, g)
    return d1 * vals, d1 * float(np.max(errs)), ne


def euler_psi(lam, x, g, spec: QuadSpec | None = None) -> EvalResult:
    """Euler (real space) integral representation of Psi_lam(x), n <= 3.

    Complex spectral parameters are allowed as long as every pairwise
    imaginary spread |Im(lam_i - lam_j)| stays below g (convergence of the
    shifted integrand); positions are real.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    spec = spec or DEFAULT_SPEC
    n = lam.size
    if x.size != n:
        raise DomainError("lam and x must have equal length")
    if n > 3:
        raise DomainError("integral representations support n <= 3")
    if _imag_spread(lam) >= g - 0.05 or float(np.max(np.abs(lam.imag))) >= g - 0.05:
        raise DomainError("need pairwise |Im lam_i - Im lam_j| and |Im lam_i| < g")

    if n == 1:
        return EvalResult(complex(np.exp(2j * np.pi * lam[0] * x[0])), 0.0, 1)

    spec = _effective_spec(spec, _scale_estimate(lam, x, g) / norm_const(n - 1, g))

    if n == 2:
        vals, err, ne = _euler2_batch(lam, x[0:1], x[1:2], g, spec)
        return EvalResult(complex(vals[0]), err, max(1, ne))

    (a, b), osc = _euler_bounds(lam, x, g, spec)
    inner_spec = replace(spec, abs_tol=max(spec.abs_tol / 100.0, 1e-300),
                         rel_tol=max(spec.rel_tol / 100.0, 5e-15))
    inner_err = [0.0]
    inner_ne = [0]
    l3 = lam[2]
    sx = float(np.sum(x))

    # the integrand is symmetric in (y1, y2); integrating the center of mass
    # u and the separation d > 0 (doubled) puts the |2 sinh(pi d)|^(2g)
    # factor, not smooth across d = 0, on a one-sided panel boundary
    def f(d, u):
        y1 = u + 0.5 * d
        y2 = u - 0.5 * d
        pref = (
            np.exp(2j * np.pi * l3 * (sx - 2.0 * u))
            * kernel_k(x[0] - y1, g) * kernel_k(x[1] - y1, g) * kernel_k(x[2] - y1, g)
            * kernel_k(x[0] - y2, g) * kernel_k(x[1] - y2, g) * kernel_k(x[2] - y2, g)
            * measure_mu(d, g)
        )
        inner, ierr, ine = _euler2_batch(lam[:2], y1, y2, g, inner_spec)
        inner_err[0] = max(inner_err[0], ierr)
        inner_ne[0] += ine
        return 2.0 * pref * inner

    dmax = b - a
    span = float(np.max(x) - np.min(x))
    bulks = [(0.0, span + 3.0), (float(np.min(x)) - 2.0, float(np.max(x)) + 2.0)]
    res = integrate_nested(
        f, 2, spec, bounds=[(0.0, dmax), (a, b)], oscs=[0.5 * osc, osc], bulks=bulks
    )
    d2 = norm_const(2, g)
    err = d2 * (res.abs_err + inner_err[0] * dmax * (b - a))
    return EvalResult(d2 * res.value, err, res.n_evals + inner_ne[0])


def _mb2_batch(x, g1, g2, g, spec):
    """Vectorized two-particle Mellin-Barnes integral over batched spectra."""
    x1, x2 = float(x[0]), float(x[1])
    b1, b2 = np.broadcast_arrays(np.asarray(g1, dtype=float), np.asarray(g2, dtype=float))
    lo = float(np.min([b1.min(), b2.min()]))
    hi = float(np.max([b1.max(), b2.max()]))
    r = truncation_radius(2.0 * math.pi * 0.9, 1.0, spec) + 0.5 * g + 1.0
    osc = abs(x1 - x2)
    u1 = b1[..., None]
    u2 = b2[..., None]

    def f(s):
        return (
            np.exp(2j * np.pi * (x2 * (u1 + u2 - s[None, :]) + x1 * s[None, :]))
            * dual_kernel_khat(u1 - s[None, :], g)
            * dual_kernel_khat(u2 - s[None, :], g)
        )

    vals, errs, ne = _integrate_batch(f, lo - r, hi + r, spec, osc=osc, batch_hint=b1.size)
    d1 = norm_const(1, g, dual=True)
    return d1 * vals, d1 * float(np.max(errs)), ne


def mb_psi(lam, x, g, spec: QuadSpec | None = None) -> EvalResult:
    """Mellin-Barnes (spectral space) representation of Psi_lam(x), n <= 3.

    Requires g > 1 and real contours separating the gamma pole ladders,
    i.e. |Im lam_i| < g/2.  Equals euler_psi for real lam and x.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.0)
    spec = spec or DEFAULT_SPEC
    n = lam.size
    if x.size != n:
        raise DomainError("lam and x must have equal length")
    if n > 3:
        raise DomainError("integral representations support n <= 3")
    if float(np.max(np.abs(lam.imag))) >= 0.5 * g:
        raise DomainError("Mellin-Barnes contour requires |Im lam_i| < g/2")

    if n == 1:
        return EvalResult(complex(np.exp(2j * np.pi * lam[0] * x[0])), 0.0, 1)

    spec = _effective_spec(spec, _scale_estimate(lam, x, g) / norm_const(n - 1, g, dual=True))

    if n == 2:
        vals, err, ne = _mb2_complex(x, lam, g, spec)
        return EvalResult(complex(vals), err, max(1, ne))

    # per spectral variable the integrand decays like exp(-2 pi |gamma_j|):
    # m kernels at exp(-pi m), measure growth exp(+2 pi (m-2)), inner wave
    # function decay exp(-pi (m-2)) with m = 3
    lam_re = float(np.max(np.abs(lam.real)))
    r = truncation_radius(2.0 * math.pi * 0.9, 1.0, spec) + lam_re + 0.5 * g + 1.0
    osc = 2.0 * float(np.max(np.abs(x)))
    inner_spec = replace(spec, abs_tol=max(spec.abs_tol / 100.0, 1e-300),
                         rel_tol=max(spec.rel_tol / 100.0, 5e-15))
    inner_err = [0.0]
    inner_ne = [0]
    x3 = x[2]
    sl = complex(np.sum(lam))

    def f(g1, g2):
        pref = (
            np.exp(2j * np.pi * x3 * (sl - g1 - g2))
            * dual_kernel_khat(lam[0] - g1, g) * dual_kernel_khat(lam[1] - g1, g)
            * dual_kernel_khat(lam[2] - g1, g)
            * dual_kernel_khat(lam[0] - g2, g) * dual_kernel_khat(lam[1] - g2, g)
            * dual_kernel_khat(lam[2] - g2, g)
            * dual_measure_muhat(g1 - g2, g)
        )
        inner, ierr, ine = _mb2_batch(x[:2], g1, g2, g, inner_spec)
        inner_err[0] = max(inner_err[0], ierr)
        inner_ne[0] += ine
        return pref * inner

    lam_bulk = (float(np.min(lam.real)) - 2.0, float(np.max(lam.real)) + 2.0)
    res = integrate_nested(f, 2, spec, bounds=[(-r, r), (-r, r)], oscs=[osc, osc],
                           bulks=[lam_bulk, lam_bulk])
    d2 = norm_const(2, g, dual=True)
    err = d2 * (res.abs_err + inner_err[0] * (2.0 * r) ** 2)
    return EvalResult(d2 * res.value, err, res.n_evals + inner_ne[0])


def _mb2_complex(x, lam, g, spec):
    """n = 2 Mellin-Barnes value at complex spectra (contour stays real)."""
    x1, x2 = float(x[0]), float(x[1])
    l1, l2 = lam
    r = truncation_radius(2.0 * math.pi * 0.9, 1.0, spec) + float(
        np.max(np.abs(lam.real))
    ) + 0.5 * g + 1.0

    def f(s):
        return (
            np.exp(2j * np.pi * (x2 * (l1 + l2 - s) + x1 * s))
            * dual_kernel_khat(l1 - s, g)
            * dual_kernel_khat(l2 - s, g)
        )

    vals, errs, ne = _integrate_batch(f, -r, r, spec, osc=abs(x1 - x2))
    d1 = norm_const(1, g, dual=True)
    return d1 * vals, d1 * float(errs), ne


def hc_index_matrices(n: int, degree: int):
    """All lower triangular index matrices of the given total degree.

    Entries are listed at positions (2,1), (3,1), (3,2), ... (row major) and
    the compositions are enumerated lexicographically for reproducibility.
    """
    slots = [(i, j) for i in range(1, n) for j in range(i)]
    out = []

    def fill(pos, left, current):
        if pos == len(slots) - 1:
            m = np.zeros((n, n), dtype=int)
            for (i, j), v in zip(slots, current + [left]):
                m[i, j] = v
            out.append(m)
            return
        for v in range(left + 1):
            fill(pos + 1, left - v, current + [v])

    if not slots:
        return [np.zeros((n, n), dtype=int)] if degree == 0 else []
    fill(0, degree, [])
    return out


def _p_matrix(m: np.ndarray) -> np.ndarray:
    """Partial column sums p[i, j] = m[i, j] + m[i+1, j] + ... (extra zero row)."""
    n = m.shape[0]
    p = np.zeros((n + 2, n + 1), dtype=int)
    for j in range(n):
        acc = 0
        for i in range(n - 1, -1, -1):
            acc += m[i, j]
            p[i + 1, j + 1] = acc
    return p


def _check_index_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=int)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError("index matrix must be square")
    if np.any(m < 0) or np.any(np.triu(m) != 0):
        raise DomainError("index matrix must be lower triangular with nonnegative entries")
    return m


def hc_coeff(M, lam, g, form: str = "gamma"):
    """Series coefficient c_M(lam).

    Two algebraically identical evaluations are provided: ``form='gamma'``
    multiplies the gamma functions directly (log-gamma sums), ``form='what'``
    uses ratios of the entire dual weight.  They agree to rounding and the
    tests cross-check them.
    """
    m = _check_index_matrix(M)
    lam = _as_spectral(lam)
    g = coupling_value(g)
    n = lam.size
    if m.shape[0] != n:
        raise DomainError("index matrix size must match the spectral point")
    _require_distinct(lam)
    p = _p_matrix(m)

    base = 1.0
    for i in range(1, n):
        for j in range(i):
            mij = int(m[i, j])
            # (-1)^mij * Gamma(g + mij) / (mij! * Gamma(g)) as a plain product
            fac = 1.0
            for l in range(mij):
                fac *= (g + l) / (l + 1)
            base *= fac if mij % 2 == 0 else -fac

    if form == "gamma":
        acc = 0.0 + 0.0j
        for k in range(2, n + 1):
            for s in range(1, k):
                for t in range(1, k + 1):
                    if t == s:
                        continue
                    dl = lam[s - 1] - lam[t - 1]
                    shift = p[k, s] - p[k + 1, t]
                    acc += log_gamma(1j * dl - shift) + log_gamma(-1j * dl + shift + g)
        for k in range(3, n + 1):
            for s in range(1, k):
                for t in range(1, k):
                    if t == s:
                        continue
                    dl = lam[s - 1] - lam[t - 1]
                    shift = p[k, s] - p[k, t]
                    acc -= log_gamma(1j * dl - shift) + log_gamma(-1j * dl + shift + g)
        return complex(base * np.exp(acc))

    if form == "what":
        num = 1.0 + 0.0j
        for k in range(3, n + 1):
            for s in range(1, k):
                for t in range(1, k):
                    if t != s:
                        num *= complex(
                            dual_weight_what(lam[s - 1] - lam[t - 1] + 1j * (p[k, s] - p[k, t]), g)
                        )
        den = 1.0 + 0.0j
        for k in range(2, n + 1):
            for s in range(1, k):
                for t in range(1, k + 1):
                    if t != s:
                        den *= complex(
                            dual_weight_what(
                                lam[s - 1] - lam[t - 1] + 1j * (p[k, s] - p[k + 1, t]), g
                            )
                        )
        return complex(base * num / den)

    raise DomainError(f"unknown coefficient form {form!r}")


def hc_psi(lam, x, g, k_max: int | None = None, rel_tol: float = 1e-10) -> EvalResult:
    """Harish-Chandra series in the chamber x_1 > ... > x_n, g > 1.

    Sums shells of constant total degree K up to ``k_max``; with k_max=None
    the shell rule stops after two consecutive shells fall below
    rel_tol * |partial sum|.  The error field is a geometric extrapolation of
    the last shell; a 'divergence' flag is set if shell magnitudes grow.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.0)
    n = lam.size
    if x.size != n:
        raise DomainError("lam and x must have equal length")
    if n > 1 and chamber_gap(x) <= 0.0:
        raise DomainError("series needs strictly descending positions")
    _require_distinct(lam)

    rho = rho_vector(n)
    pref = complex(
        np.exp(2.0 * np.pi * (1j * np.dot(x, lam) - g * np.dot(x, rho)))
    )

    auto = k_max is None
    limit = 80 if auto else int(k_max)
    partial = 0.0 + 0.0j
    mags = []
    flags: tuple[str, ...] = ()
    n_terms = 0
    small_run = 0
    for deg in range(limit + 1):
        mats = hc_index_matrices(n, deg)
        shell = 0.0 + 0.0j
        for m in mats:
            expo = sum(m[i, j] * (x[i] - x[j]) for i in range(1, n) for j in range(i))
            shell += complex(hc_coeff(m, lam, g)) * math.exp(2.0 * math.pi * expo)
        n_terms += len(mats)
        partial += shell
        mags.append(abs(shell))
        if auto:
            if abs(shell) < rel_tol * max(abs(partial), 1e-300):
                small_run += 1
                if small_run >= 2:
                    break
            else:
                small_run = 0
    if len(mags) >= 3 and mags[-1] > mags[-2] > mags[-3] > 0.0:
        flags = ("divergence",)

    if len(mags) >= 2 and mags[-2] > 0.0:
        ratio = min(mags[-1] / mags[-2], 0.9)
        err = mags[-1] * ratio / (1.0 - ratio)
    else:
        err = mags[-1] if mags else 0.0
    return EvalResult(pref * partial, abs(pref) * err, max(1, n_terms), flags)


def hc_psi_symmetrized(lam, x, g, k_max: int | None = None, rel_tol: float = 1e-10) -> EvalResult:
    """Symmetrization sum_sigma hc_psi(sigma(lam), x); equals Psi_lam(x) there."""
    lam = _as_spectral(lam)
    x = _as_position(x)
    value = 0.0 + 0.0j
    err = 0.0
    n_terms = 0
    flags: set[str] = set()
    for perm in itertools.permutations(range(lam.size)):
        part = hc_psi(lam[list(perm)], x, g, k_max, rel_tol)
        value += part.value
        err += part.abs_err
        n_terms += part.n_evals
        flags.update(part.flags)
    return EvalResult(value, err, max(1, n_terms), tuple(sorted(flags)))


def _what_inv(dl, g):
    """1/w^(dl) = Gamma(i dl) Gamma(-i dl + g); poles at coinciding spectra."""
    return np.exp(log_gamma(1j * dl) + log_gamma(-1j * dl + g))


def psi_asymptotic(lam, x, g, chamber: str = "descending"):
    """Plane-wave asymptotics of Psi deep inside a chamber (exact finite sum).

    Descending chamber (x_1 > ... > x_n):
        exp(-2 pi g (x, rho)) * sum_sigma exp(2 pi i sum x_i lam_sigma(i))
                              * prod_{i<j} 1/w^(lam_sigma(i) - lam_sigma(j));
    ascending chamber: mirror form with +2 pi g (x, rho) and swapped order
    inside the product.
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    n = lam.size
    if np.any(lam.imag != 0.0):
        raise DomainError("asymptotic form is stated for real spectra")
    _require_distinct(lam)
    if chamber not in ("descending", "ascending"):
        raise DomainError("chamber must be 'descending' or 'ascending'")
    sign = -1.0 if chamber == "descending" else 1.0
    rho = rho_vector(n)
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        term = complex(np.exp(2j * np.pi * np.dot(x, lam[list(perm)])))
        for i in range(n):
            for j in range(i + 1, n):
                dl = lam[perm[i]] - lam[perm[j]]
                term *= complex(_what_inv(dl if chamber == "descending" else -dl, g))
        total += term
    return complex(math.exp(sign * 2.0 * math.pi * g * float(np.dot(x, rho))) * total)


def ho_f(lam, x, g, rep: str = "mb", spec: QuadSpec | None = None,
         k_max: int | None = None) -> EvalResult:
    """Hypergeometric function F = alpha_n * prod_{i != j} 1/Gamma(i lam_ij + g) * Psi.

    Normalized so that F(lam, 0) = 1.  ``rep`` picks the route to Psi:
    'euler', 'mb', 'series' (symmetrized Harish-Chandra) or 'zero' (x = 0
    closed form).
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    n = lam.size
    if rep == "euler":
        psi = euler_psi(lam, x, g, spec)
    elif rep == "mb":
        psi = mb_psi(lam, x, g, spec)
    elif rep == "series":
        psi = hc_psi_symmetrized(lam, x, g, k_max)
    elif rep == "zero":
        if np.any(x != 0.0):
            raise DomainError("rep='zero' is only valid at x = 0")
        psi = EvalResult(psi_zero(lam, g), 0.0, 1)
    else:
        raise DomainError(f"unknown representation {rep!r}")
    norm = alpha_n(n, g)
    for i in range(n):
        for j in range(n):
            if i != j:
                norm = norm * complex(rgamma(1j * (lam[i] - lam[j]) + g))
    return EvalResult(norm * psi.value, abs(norm) * psi.abs_err, psi.n_evals, psi.flags)


def phi_renormalized(lam, x, g, spec: QuadSpec | None = None, checked: bool = False) -> EvalResult:
    """Renormalized wave function Phi = prod_{i<j} w^(lam_i - lam_j) * Psi (via mb_psi).

    With ``checked=True`` returns the variant multiplied by
    exp(pi g sum_{i<n} |x_i - x_n|).
    """
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g, minimum=1.0)
    psi = mb_psi(lam, x, g, spec)
    w = 1.0 + 0.0j
    for i in range(lam.size):
        for j in range(i + 1, lam.size):
            w *= complex(dual_weight_what(lam[i] - lam[j], g))
    scale = 1.0
    if checked:
        scale = math.exp(math.pi * g * float(np.sum(np.abs(x[:-1] - x[-1]))))
    return EvalResult(scale * w * psi.value, scale * abs(w) * psi.abs_err, psi.n_evals)


def phi_asymptotic(lam, x, g):
    """Asymptotics of Phi: exp(-2 pi g (x, rho)) * sum_sigma exp(...) * prod ratio of w^."""
    lam = _as_spectral(lam)
    x = _as_position(x)
    g = coupling_value(g)
    n = lam.size
    _require_distinct(lam)
    rho = rho_vector(n)
    total = 0.0 + 0.0j
    for perm in itertools.permutations(range(n)):
        term = complex(np.exp(2j * np.pi * np.dot(x, lam[list(perm)])))
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    a = lam[perm[j]] - lam[perm[i]]
                    term *= complex(dual_weight_what(a, g) / dual_weight_what(-a, g))
        total += term
    return complex(math.exp(-2.0 * math.pi * g * float(np.dot(x, rho))) * total)
