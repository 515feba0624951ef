"""Double sine function S2(z | w1, w2) and the relativistic kernel functions.

S2 is computed from the contour-integral representation of its logarithm,

    log S2(z) = (pi*i/2) * B22(z) + int_{R+i0} e^{zt} / ((e^{w1 t}-1)(e^{w2 t}-1) t) dt,

valid for 0 < Re z < w1 + w2.  Arguments are first reduced into the middle
half of that strip with the functional equations

    S2(z) = 2 sin(pi z / w2) * S2(z + w1),      S2(z) = 2 sin(pi z / w1) * S2(z + w2),

where the integral converges fastest.  The contour passes above the third
order pole at t = 0; we split it into |t| >= r plus the closed-form
contribution of the Laurent expansion on |t| < r with r = min(1/w1, 1/w2)/2,
which avoids principal-value cancellation:

    contribution(|t| < r) = sum_{k>=3} n_k * int_{-r}^{r} t^{k-3} dt / (w1 w2)
                            - i pi c_{-1} - 2 c_{-2} / r,

with n_k the Taylor coefficients of e^{zt} * G(w1 t) * G(w2 t),
G(u) = u/(e^u - 1), and c_{-2} = n_1/(w1 w2), c_{-1} = n_2/(w1 w2).  The
(pi*i/2) B22 term cancels the -i pi c_{-1} term identically, which fixes the
value S2((w1+w2)/2) = 1 exactly (positive sign of the square root allowed by
the inversion relation).

Only real positive periods are supported.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonConvergence, PoleError, ZeroError
from .gammafn import coupling_value, dual_kernel_khat, dual_weight_what, kernel_k, measure_mu, rgamma
from .quadrature import QuadSpec, _integrate_batch

__all__ = [
    "Periods",
    "bernoulli_b22",
    "s2",
    "kernel_kr",
    "weight_wr",
    "measure_mur",
    "limit_check_pointwise",
    "bound_check_uniform",
    "gamma_limit_check",
    "CheckReport",
]

_LATTICE_TOL = 1e-10
_MAX_SHIFTS = 2000


@dataclass(frozen=True)
class Periods:
    """Pair of positive real quasi-periods."""

    omega1: float
    omega2: float

    def __post_init__(self) -> None:
        for name in ("omega1", "omega2"):
            w = getattr(self, name)
            if isinstance(w, complex):
                raise DomainError("complex periods are not supported")
            if not (math.isfinite(float(w)) and float(w) > 0.0):
                raise DomainError(f"{name} must be a positive real, got {w!r}")
            object.__setattr__(self, name, float(w))

    @property
    def total(self) -> float:
        return self.omega1 + self.omega2


def bernoulli_b22(z, periods: Periods):
    """Second order multiple Bernoulli polynomial B22(z | w1, w2)."""
    w1, w2 = periods.omega1, periods.omega2
    z = np.asarray(z, dtype=complex)
    return ((z - 0.5 * (w1 + w2)) ** 2 - (w1 * w1 + w2 * w2) / 12.0) / (w1 * w2)


def _bernoulli_numbers(nmax: int) -> np.ndarray:
    # B_0 .. B_nmax by the defining recurrence, in exact arithmetic.
    b = [Fraction(1)]
    for m in range(1, nmax + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b.append(-acc / (m + 1))
    return np.array([float(x) for x in b])


_NSER = 48
_BERN = _bernoulli_numbers(_NSER)
_INV_FACT = np.array([1.0 / math.factorial(k) for k in range(_NSER + 1)])
_G_COEFF = _BERN * _INV_FACT  # Taylor coefficients of u/(e^u - 1)


def _numerator_coeffs(z: complex, w1: float, w2: float) -> np.ndarray:
    """Taylor coefficients n_k of e^{zt} G(w1 t) G(w2 t) up to order _NSER."""
    k = np.arange(_NSER + 1)
    ez = (z ** k) * _INV_FACT
    g1 = _G_COEFF * (w1 ** k)
    g2 = _G_COEFF * (w2 ** k)
    prod = np.convolve(np.convolve(g1, g2)[: _NSER + 1], ez)[: _NSER + 1]
    return prod


def _lattice_distance(z: complex, w1: float, w2: float, pole: bool) -> float:
    """Distance from z to the pole or zero lattice of S2."""
    if abs(z.imag) > 10 * _LATTICE_TOL:
        return math.inf
    t = (z.real - (w1 + w2)) if pole else (-z.real)
    # lattice points are m*w1 + k*w2 with m, k >= 0
    if t < -10 * _LATTICE_TOL:
        return math.inf
    best = math.inf
    m = 0
    while m * w1 <= t + 1.0:
        rem = t - m * w1
        k = max(0.0, round(rem / w2))
        for kk in (k - 1, k, k + 1):
            if kk >= 0:
                best = min(best, abs(rem - kk * w2))
        m += 1
        if m > 10**6:
            break
    return math.hypot(best, z.imag)


_DEFAULT_S2_SPEC = QuadSpec(abs_tol=1e-13, rel_tol=1e-12, max_depth=28)


def _log_s2_strip(z: complex, w1: float, w2: float, spec: QuadSpec) -> complex:
    """log S2 via the split contour integral; needs Re z inside the strip."""
    wsum = w1 + w2
    r = 0.5 * min(1.0 / w1, 1.0 / w2)
    n = _numerator_coeffs(z, w1, w2)

    # closed forms from the Laurent part on |t| < r
    c2 = n[1] / (w1 * w2)
    c1 = n[2] / (w1 * w2)
    ks = np.arange(3, _NSER + 1)
    even = (ks - 3) % 2 == 0
    series = np.sum(2.0 * n[ks[even]] * r ** (ks[even] - 2) / ((ks[even] - 2) * (w1 * w2)))

    def integrand(t):
        with np.errstate(over="ignore"):
            return np.exp(z * t) / (np.expm1(w1 * t) * np.expm1(w2 * t) * t)

    osc = abs(z.imag) / (2.0 * math.pi)
    tol = max(spec.abs_tol * spec.tail_safety, 1e-18)
    mag0 = 1.0 / (w1 * w2 * r**3) + 10.0

    rate_pos = wsum - z.real
    t_pos = r + max(1.0, math.log(mag0 / tol) / rate_pos)
    rate_neg = z.real
    t_neg = r + max(1.0, math.log(mag0 / tol) / rate_neg)

    def edges(lo, hi):
        # geometric panels out of the 1/t^3 region, then oscillation-sized ones
        e = [lo]
        while e[-1] < min(1.0, hi):
            e.append(min(hi, 2.0 * e[-1]))
        width = min(1.0, 1.0 / (1.0 + osc))
        while e[-1] < hi:
            e.append(min(hi, e[-1] + width))
        return np.array(e)

    val_p, err_p, _ = _integrate_batch(integrand, r, t_pos, spec, edges=edges(r, t_pos))
    val_m, err_m, _ = _integrate_batch(
        lambda s: integrand(-s), r, t_neg, spec, edges=edges(r, t_neg)
    )

    b22 = complex(bernoulli_b22(z, Periods(w1, w2)))
    return (
        0.5j * math.pi * b22
        - 1j * math.pi * c1
        - 2.0 * c2 / r
        + series
        + complex(val_p)
        + complex(val_m)
    )


def s2(z, periods: Periods, spec: QuadSpec | None = None) -> complex:
    """Double sine function S2(z | w1, w2).

    Raises PoleError / ZeroError when z is within 1e-10 of the pole lattice
    w1 + w2 + m*w1 + k*w2 or the zero lattice -m*w1 - k*w2 (m, k >= 0).
    """
    z = complex(z)
    w1, w2 = periods.omega1, periods.omega2
    spec = spec or _DEFAULT_S2_SPEC
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("s2 requires a finite argument")
    if _lattice_distance(z, w1, w2, pole=True) < _LATTICE_TOL:
        raise PoleError(f"S2 pole near z={z}")
    if _lattice_distance(z, w1, w2, pole=False) < _LATTICE_TOL:
        raise ZeroError(f"S2 zero near z={z}")

    wsum = w1 + w2
    step = min(w1, w2)
    per = max(w1, w2)  # sin period in the shift factor is the other period
    lo, hi = 0.25 * wsum, 0.75 * wsum

    log_factors = 0.0 + 0.0j
    x = z
    shifts = 0
    while x.real < lo:
        log_factors += np.log(2.0 * np.sin(np.pi * x / per))
        x += step
        shifts += 1
        if shifts > _MAX_SHIFTS:
            raise DomainError("strip reduction did not terminate")
    while x.real > hi:
        x -= step
        log_factors -= np.log(2.0 * np.sin(np.pi * x / per))
        shifts += 1
        if shifts > _MAX_SHIFTS:
            raise DomainError("strip reduction did not terminate")

    return complex(np.exp(_log_s2_strip(x, w1, w2, spec) + log_factors))


def _gstar(periods: Periods, g_r: float) -> float:
    if not 0.0 < g_r < periods.total:
        raise DomainError(f"relativistic coupling must satisfy 0 < g < w1 + w2, got {g_r}")
    return periods.total - g_r


def kernel_kr(x: float, periods: Periods, g_r: float) -> complex:
    """Relativistic kernel K_R(x) = 1 / (S2(i x + g*/2) S2(-i x + g*/2))."""
    gs = _gstar(periods, g_r)
    return 1.0 / (s2(1j * x + 0.5 * gs, periods) * s2(-1j * x + 0.5 * gs, periods))


def weight_wr(x: float, periods: Periods, g_r: float) -> complex:
    """Relativistic weight w_R(x) = S2(i x) S2(-i x + g*); exact 0 at x = 0."""
    gs = _gstar(periods, g_r)
    try:
        first = s2(1j * x, periods)
    except ZeroError:
        return 0.0 + 0.0j
    return first * s2(-1j * x + gs, periods)


def measure_mur(x: float, periods: Periods, g_r: float) -> complex:
    """Relativistic measure mu_R(x) = w_R(x) w_R(-x)."""
    return weight_wr(x, periods, g_r) * weight_wr(-x, periods, g_r)


@dataclass
class CheckReport:
    """Outcome of a limit or bound check: serializable records plus summary."""

    name: str
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    passed: bool = True

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "pass": self.passed, "summary": self.summary,
             "records": self.records},
            sort_keys=True,
        )


def _record(**kw) -> dict:
    out = {}
    for k, v in kw.items():
        if isinstance(v, complex):
            out[k + "_re"] = float(v.real)
            out[k + "_im"] = float(v.imag)
        else:
            out[k] = float(v)
    return out


_NOISE_FLOOR = 1e-12


def _convergence_orders(errs, omegas) -> list:
    orders = []
    for i in range(len(errs) - 1):
        if errs[i] > _NOISE_FLOOR and errs[i + 1] > _NOISE_FLOOR:
            orders.append(math.log(errs[i] / errs[i + 1]) / math.log(omegas[i] / omegas[i + 1]))
    return orders


def _check_decreasing(errs, context: str) -> None:
    # ignore the first pair and anything already at the numerical noise floor
    tail = [e for e in errs[1:] if e > _NOISE_FLOOR]
    if any(b >= a for a, b in zip(tail, tail[1:])):
        raise NonConvergence(f"relative error not decreasing {context}: {errs}")


def limit_check_pointwise(x_grid, omega2_sequence, g) -> CheckReport:
    """Check K_R(x | 1, w2, g*w2) -> K(x, g) and mu_R -> mu(x, g) as w2 -> 0.

    Records every comparison and the empirical convergence order (expected
    close to 1).  Raises NonConvergence when the relative error fails to
    decrease monotonically after the first two terms.
    """
    gval = coupling_value(g)
    omegas = [float(w) for w in omega2_sequence]
    if any(b >= a for a, b in zip(omegas, omegas[1:])):
        raise DomainError("omega2_sequence must decrease")
    report = CheckReport(name="limits-pointwise")
    orders_k, orders_mu = [], []
    for x in np.asarray(x_grid, dtype=float):
        errs_k, errs_mu = [], []
        k_lim = float(kernel_k(x, gval))
        mu_lim = float(measure_mu(x, gval))
        for w2 in omegas:
            pr = Periods(1.0, w2)
            kr = kernel_kr(float(x), pr, gval * w2).real
            mur = measure_mur(float(x), pr, gval * w2).real
            ek = abs(kr - k_lim) / abs(k_lim)
            emu = abs(mur - mu_lim) / abs(mu_lim) if mu_lim != 0.0 else abs(mur - mu_lim)
            errs_k.append(ek)
            errs_mu.append(emu)
            report.records.append(
                _record(x=x, omega2=w2, lhs=kr, rhs=k_lim, abs_err=abs(kr - k_lim), rel_err=ek)
            )
            report.records.append(
                _record(x=x, omega2=w2, lhs=mur, rhs=mu_lim, abs_err=abs(mur - mu_lim), rel_err=emu)
            )
        _check_decreasing(errs_k, f"for the kernel at x={x}")
        if mu_lim != 0.0:
            _check_decreasing(errs_mu, f"for the measure at x={x}")
        orders_k.extend(_convergence_orders(errs_k, omegas))
        if mu_lim != 0.0:
            orders_mu.extend(_convergence_orders(errs_mu, omegas))
    report.summary = {
        "order_kernel": float(np.median(orders_k)) if orders_k else math.nan,
        "order_measure": float(np.median(orders_mu)) if orders_mu else math.nan,
    }
    return report


def bound_check_uniform(x_grid, omega2_grid, g) -> CheckReport:
    """Report sup |K_R| e^{pi g |x|} and sup |mu_R| e^{-2 pi g |x|} over a grid.

    Both weighted suprema must stay finite; the summary also carries the
    corresponding suprema of the w2 -> 0 limit functions on the same grid.
    """
    gval = coupling_value(g)
    xs = np.asarray(x_grid, dtype=float)
    report = CheckReport(name="bounds-uniform")
    wk = np.exp(np.pi * gval * np.abs(xs))
    wmu = np.exp(-2.0 * np.pi * gval * np.abs(xs))
    lim_k = float(np.max(np.abs(kernel_k(xs, gval)) * wk))
    lim_mu = float(np.max(np.abs(measure_mu(xs, gval)) * wmu))
    for w2 in omega2_grid:
        pr = Periods(1.0, float(w2))
        kvals = np.array([abs(kernel_kr(float(x), pr, gval * w2)) for x in xs])
        muvals = np.array([abs(measure_mur(float(x), pr, gval * w2)) for x in xs])
        sk = kvals * wk
        smu = muvals * wmu
        ik, imu = int(np.argmax(sk)), int(np.argmax(smu))
        report.records.append(
            {
                "omega2": float(w2),
                "sup_kernel": float(sk[ik]),
                "argmax_kernel_x": float(xs[ik]),
                "sup_measure": float(smu[imu]),
                "argmax_measure_x": float(xs[imu]),
            }
        )
        if not (np.isfinite(sk[ik]) and np.isfinite(smu[imu])):
            report.passed = False
    report.summary = {"limit_sup_kernel": lim_k, "limit_sup_measure": lim_mu}
    return report


def gamma_limit_check(z_grid, omega1, omega2_sequence, *, g=None, lam_grid=None) -> CheckReport:
    """Check the gamma degeneration of S2 and of the dual kernel and weight.

    For each z the quantity S2(z | 1/w1, 1/w2) * (w1/(2 pi w2))^(1/2 - w1 z)
    / sqrt(2 pi) must approach 1/Gamma(w1 z) at first order in w2.  With a
    coupling g and a lam_grid also checks the scaled limits

        w^R(lam) -> 2 pi (2 pi w2)^(1-g) * w^(lam),
        K^R(lam) -> (2 pi w2)^(g-1) / (2 pi) * K^(lam),

    built from S2 with periods (1/w1, 1/w2) at w1 = 1.
    """
    w1 = float(omega1)
    omegas = [float(w) for w in omega2_sequence]
    report = CheckReport(name="gamma-limit")
    orders = []
    for z in np.asarray(z_grid, dtype=float):
        target = complex(rgamma(w1 * z + 0j))
        errs = []
        for w2 in omegas:
            hat = Periods(1.0 / w1, 1.0 / w2)
            val = s2(z, hat) * (w1 / (2.0 * math.pi * w2)) ** (0.5 - w1 * z) / math.sqrt(2.0 * math.pi)
            err = abs(val - target) / max(abs(target), 1e-300)
            errs.append(err)
            report.records.append(
                _record(z=z, omega2=w2, lhs=val, rhs=target, abs_err=abs(val - target), rel_err=err)
            )
        _check_decreasing(errs, f"for the gamma limit at z={z}")
        orders.extend(_convergence_orders(errs, omegas))
    report.summary = {"order": float(np.median(orders)) if orders else math.nan}

    if g is not None and lam_grid is not None:
        gval = coupling_value(g)
        for lam in np.asarray(lam_grid, dtype=float):
            kh = complex(dual_kernel_khat(lam + 0j, gval))
            wh = complex(dual_weight_what(lam + 0j, gval))
            errs_k, errs_w = [], []
            for w2 in omegas:
                hat = Periods(1.0, 1.0 / w2)
                khr = 1.0 / (s2(1j * lam + 0.5 * gval, hat) * s2(-1j * lam + 0.5 * gval, hat))
                whr = s2(1j * lam, hat) * s2(-1j * lam + gval, hat)
                k_target = (2.0 * math.pi * w2) ** (gval - 1.0) / (2.0 * math.pi) * kh
                w_target = 2.0 * math.pi * (2.0 * math.pi * w2) ** (1.0 - gval) * wh
                ek = abs(khr - k_target) / abs(k_target)
                ew = abs(whr - w_target) / abs(w_target)
                errs_k.append(ek)
                errs_w.append(ew)
                report.records.append(
                    _record(lam=lam, omega2=w2, lhs=khr, rhs=k_target,
                            abs_err=abs(khr - k_target), rel_err=ek)
                )
                report.records.append(
                    _record(lam=lam, omega2=w2, lhs=whr, rhs=w_target,
                            abs_err=abs(whr - w_target), rel_err=ew)
                )
            _check_decreasing(errs_k, f"for the dual kernel at lam={lam}")
            _check_decreasing(errs_w, f"for the dual weight at lam={lam}")
    return report
