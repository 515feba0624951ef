"""Named verification suites wrapping the library checks for the CLI.

Every suite returns a JSON-serializable dict {"suite", "tolerance", "pass",
"cases": [...]} and is deterministic for a fixed seed.  Preconditions are
enforced with DomainError so the CLI can map them to exit code 2.
"""

from __future__ import annotations

import math

import numpy as np

from . import doublesine as ds
from . import operators as ops
from . import verification as ver
from . import wavefunctions as wf
from .errors import DomainError
from .gammafn import coupling_value, dual_kernel_khat, dual_weight_what, kernel_k
from .quadrature import QuadSpec

__all__ = ["SUITES", "run_suite"]


def _case(inputs, value, bound) -> dict:
    return {"inputs": inputs, "value": float(value), "bound": float(bound),
            "pass": bool(value <= bound)}


def _wrap(name, tol, cases) -> dict:
    return {
        "suite": name,
        "tolerance": tol,
        "pass": all(c["pass"] for c in cases),
        "cases": cases,
    }


def _strip_points(rng, periods: ds.Periods, count: int) -> np.ndarray:
    total = periods.total
    re = rng.uniform(0.1 * total, 0.9 * total, count)
    im = rng.uniform(-1.0, 1.0, count)
    return re + 1j * im


def suite_double_sine(g=2.0, n=2, tol=1e-8, seed=0) -> dict:
    rng = np.random.default_rng(seed)
    pr = ds.Periods(1.0, 0.7)
    cases = []
    for z in _strip_points(rng, pr, 50):
        v = ds.s2(z, pr)
        r1 = abs(v / ds.s2(z + pr.omega1, pr) - 2.0 * np.sin(np.pi * z / pr.omega2))
        r2 = abs(v / ds.s2(z + pr.omega2, pr) - 2.0 * np.sin(np.pi * z / pr.omega1))
        refl = abs(v * ds.s2(pr.total - z, pr) - 1.0)
        prod = abs(
            v / ds.s2(pr.total + z, pr)
            + 4.0 * np.sin(np.pi * z / pr.omega1) * np.sin(np.pi * z / pr.omega2)
        )
        hom = abs(ds.s2(2.0 * z, ds.Periods(2.0, 1.4)) - v)
        scale = max(abs(v), 1.0)
        for label, err in (("shift-1", r1), ("shift-2", r2), ("reflection", refl),
                           ("product", prod), ("homogeneity", hom)):
            cases.append(_case({"z": [z.real, z.imag], "relation": label}, err / scale, tol))
    orders = ds.gamma_limit_check([0.3, 0.8, 1.3], 1.0, [0.2, 0.1, 0.05, 0.025])
    cases.append(
        {"inputs": {"relation": "gamma-limit-order"}, "value": orders.summary["order"],
         "bound": 1.0, "pass": bool(orders.summary["order"] >= 0.9)}
    )
    return _wrap("double-sine", tol, cases)


def suite_limits(g=2.0, n=2, tol=0.9, seed=0) -> dict:
    rep = ds.limit_check_pointwise([0.0, 0.3, 0.7, 1.5], [0.2, 0.1, 0.05], g)
    cases = [
        {"inputs": {"quantity": "kernel"}, "value": rep.summary["order_kernel"],
         "bound": tol, "pass": bool(rep.summary["order_kernel"] >= tol)},
        {"inputs": {"quantity": "measure"}, "value": rep.summary["order_measure"],
         "bound": tol, "pass": bool(rep.summary["order_measure"] >= tol)},
    ]
    return {"suite": "limits", "tolerance": tol, "pass": all(c["pass"] for c in cases),
            "cases": cases, "records": rep.records[:8]}


def _duality_spec(tol):
    return QuadSpec(abs_tol=1e-300, rel_tol=min(1e-9, tol * 1e-2), max_depth=26)


def suite_duality(g=2.0, n=2, tol=1e-6, seed=0) -> dict:
    coupling_value(g, minimum=1.0)
    cases = []
    if n == 2:
        spec = _duality_spec(tol)
        for l12 in (0.2, 0.6, 1.0, 1.5, 2.2):
            for x12 in (0.2, 0.5, 0.9, 1.4, 2.0):
                lam = [l12 / 2.0, -l12 / 2.0]
                x = [x12 / 2.0, -x12 / 2.0]
                a = wf.euler_psi(lam, x, g, spec)
                b = wf.mb_psi(lam, x, g, spec)
                rel = abs(a.value - b.value) / max(abs(a.value), abs(b.value))
                cases.append(_case({"lam12": l12, "x12": x12}, rel, tol))
    elif n == 3:
        spec = QuadSpec(abs_tol=1e-300, rel_tol=min(1e-6, tol * 1e-1), max_depth=24)
        pts = [([0.45, 0.05, -0.35], [0.5, 0.1, -0.2]),
               ([0.7, 0.0, -0.5], [0.3, 0.0, -0.4]),
               ([0.55, -0.1, -0.6], [0.6, 0.2, -0.1])]
        for lam, x in pts:
            a = wf.euler_psi(lam, x, g, spec)
            b = wf.mb_psi(lam, x, g, spec)
            rel = abs(a.value - b.value) / max(abs(a.value), abs(b.value))
            cases.append(_case({"lam": lam, "x": x}, rel, tol))
    else:
        raise DomainError("duality suite supports n = 2 or 3")
    return _wrap("duality", tol, cases)


def _random_spectra(rng, n, count, min_gap=0.2):
    out = []
    while len(out) < count:
        lam = np.sort(rng.uniform(-1.5, 1.5, n))[::-1]
        if n == 1 or np.min(lam[:-1] - lam[1:]) >= min_gap:
            out.append(lam.copy())
    return out


def suite_zero_point(g=2.0, n=2, tol=None, seed=0) -> dict:
    coupling_value(g, minimum=1.0)
    if n not in (2, 3):
        raise DomainError("zero-point suite supports n = 2 or 3")
    tol = tol or (1e-8 if n == 2 else 1e-4)
    rng = np.random.default_rng(seed)
    spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-10 if n == 2 else 1e-5,
                    max_depth=26 if n == 2 else 22)
    zeros = [0.0] * n
    cases = []
    for lam in _random_spectra(rng, n, 10):
        tgt = wf.psi_zero(lam, g)
        for rep, fn in (("euler", wf.euler_psi), ("mb", wf.mb_psi)):
            val = fn(lam, zeros, g, spec).value
            rel = abs(val - tgt) / abs(tgt)
            cases.append(_case({"rep": rep, "lam": list(map(float, lam))}, rel, tol))
    return _wrap("zero-point", tol, cases)


_GENERIC_POINTS_N2 = [
    ([0.5, -0.3], [0.8, 0.0]),
    ([0.9, 0.1], [0.5, -0.4]),
    ([0.35, -0.75], [1.1, 0.3]),
    ([1.2, 0.4], [0.2, -0.6]),
    ([0.6, -0.6], [0.9, -0.2]),
]


def suite_eigen_differential(g=2.0, n=2, tol=1e-4, seed=0) -> dict:
    cases = []
    for lam, x in _GENERIC_POINTS_N2:
        res = ops.apply_cs_hamiltonian(lam, x, g)
        cases.append(_case({"lam": lam, "x": x}, res.residual, tol))
    return _wrap("eigen-differential", tol, cases)


def suite_eigen_difference(g=2.0, n=2, tol=1e-4, seed=0) -> dict:
    coupling_value(g, minimum=1.1)
    spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-9, max_depth=26)
    cases = []
    for lam, x in _GENERIC_POINTS_N2:
        for r in (1, 2):
            res = ops.apply_macdonald_rational(r, lam, x, g, spec)
            cases.append(_case({"op": "macdonald", "r": r, "lam": lam, "x": x},
                               res.residual, tol))
            res = ops.apply_dual_difference_hr(r, lam, x, g, spec)
            cases.append(_case({"op": "dual-difference", "r": r, "lam": lam, "x": x},
                               res.residual, tol))
    return _wrap("eigen-difference", tol, cases)


def suite_baxter(g=2.0, n=2, tol=1e-4, seed=0) -> dict:
    cases = []
    for lam_b in np.linspace(-1.0, 1.0, 9):
        res = ops.apply_baxter(float(lam_b), [0.4], [0.6], g)
        cases.append(_case({"n": 1, "lam_b": float(lam_b)}, res.residual, 1e-8))
    # eigenvalue factorization across the 9-point sweep at n = 2: the
    # residual compares (Q Psi)(x) against K^(lam_b-lam_1) K^(lam_b-lam_2) Psi
    spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-5, max_depth=24)
    for lam_b in np.linspace(-1.0, 1.0, 9):
        res = ops.apply_baxter(float(lam_b), [0.3, -0.3], [0.5, 0.0], g, spec)
        cases.append(_case({"n": 2, "lam_b": float(lam_b)}, res.residual, tol))
    return _wrap("baxter", tol, cases)


def suite_dual_baxter(g=2.0, n=2, tol=1e-4, seed=0) -> dict:
    coupling_value(g, minimum=1.0)
    cases = []
    for x_b in np.linspace(-1.0, 1.0, 9):
        res = ops.apply_dual_baxter(float(x_b), [0.4], [0.6], g)
        cases.append(_case({"n": 1, "x_b": float(x_b)}, res.residual, 1e-8))
    spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-5, max_depth=24)
    for x_b in np.linspace(-1.0, 1.0, 9):
        res = ops.apply_dual_baxter(float(x_b), [0.5, -0.5], [0.4, 0.0], g, spec)
        cases.append(_case({"n": 2, "x_b": float(x_b)}, res.residual, tol))
    return _wrap("dual-baxter", tol, cases)


def suite_barnes(g=2.0, n=2, tol=1e-8, seed=0) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    rep = ver.barnes_check(1.0, 1.0, -1.0, -1.0, tolerance=tol)
    cases.extend({"inputs": c["inputs"], "value": c["rel_diff"], "bound": tol,
                  "pass": c["rel_diff"] <= tol} for c in rep.cases)
    for _ in range(3):
        al = rng.uniform(0.4, 1.6, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        be = -rng.uniform(0.4, 1.6, 2) + 1j * rng.uniform(-0.5, 0.5, 2)
        rep = ver.barnes_check(al[0], al[1], be[0], be[1], tolerance=tol)
        cases.extend({"inputs": c["inputs"], "value": c["rel_diff"], "bound": tol,
                      "pass": c["rel_diff"] <= tol} for c in rep.cases)
    return _wrap("barnes", tol, cases)


def suite_gustafson(g=2.0, n=2, tol=1e-5, seed=0) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    lam = np.array([0.3, 0.0, -0.3])
    al = [1j * l + g / 2.0 for l in lam]
    be = [1j * l - g / 2.0 for l in lam]
    rep = ver.gustafson_check(2, al, be, tolerance=tol)
    cases.extend({"inputs": c["inputs"], "value": c["rel_diff"], "bound": tol,
                  "pass": c["rel_diff"] <= tol} for c in rep.cases)
    al = rng.uniform(0.5, 1.2, 3) + 1j * rng.uniform(-0.3, 0.3, 3)
    be = -rng.uniform(0.5, 1.2, 3) + 1j * rng.uniform(-0.3, 0.3, 3)
    rep = ver.gustafson_check(2, al, be, tolerance=tol)
    cases.extend({"inputs": c["inputs"], "value": c["rel_diff"], "bound": tol,
                  "pass": c["rel_diff"] <= tol} for c in rep.cases)
    return _wrap("gustafson", tol, cases)


def suite_kernel_identity(g=2.0, n=2, tol=1e-10, seed=0) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    for nn in (1, 2, 3, 4):
        for _ in range(10):
            r = int(rng.integers(0, nn + 1))
            z = rng.uniform(-2.0, 2.0, nn)
            y = rng.uniform(2.5, 6.5, nn)
            rep = ver.kernel_identity_check(nn, r, z, y, complex(rng.uniform(0.3, 1.2)),
                                            tolerance=tol)
            c = rep.cases[0]
            cases.append({"inputs": {"n": nn, "r": r}, "value": c["rel_diff"],
                          "bound": tol, "pass": c["rel_diff"] <= tol})
    return _wrap("kernel-identity", tol, cases)


def suite_hypergeom_identity(g=2.0, n=2, tol=1e-10, seed=0) -> dict:
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(10):
        nn = int(rng.integers(1, 4))
        kk = int(rng.integers(0, 5))
        x = rng.uniform(-2.0, 2.0, nn)
        y = rng.uniform(2.7, 6.3, nn)
        rep = ver.rational_hypergeom_check(nn, kk, x, y, complex(rng.uniform(0.3, 1.1)),
                                           tolerance=tol)
        c = rep.cases[0]
        cases.append({"inputs": {"n": nn, "K": kk}, "value": c["rel_diff"],
                      "bound": tol, "pass": c["rel_diff"] <= tol})
    return _wrap("hypergeom-identity", tol, cases)


def suite_commutativity(g=2.0, n=2, tol=1e-4, seed=0) -> dict:
    cases = []
    im = 0.8 * min(g, 1.0)
    for lam_c in (0.0, 0.3 + 0.4j, complex(0.25, im)):
        rep = ver.baxter_commutativity_check(1, [0.5, -0.2], lam_c, g, tolerance=1e-7)
        for c in rep.cases:
            cases.append({"inputs": c["inputs"], "value": c["rel_diff"], "bound": 1e-7,
                          "pass": c["rel_diff"] <= 1e-7})
    spec = QuadSpec(abs_tol=1e-13, rel_tol=1e-7)
    for lam_c in (0.25, complex(0.2, im)):
        rep = ver.baxter_commutativity_check(2, [0.5, -0.2, 0.1, 0.8], lam_c, g, spec,
                                             tolerance=tol)
        for c in rep.cases:
            cases.append({"inputs": c["inputs"], "value": c["rel_diff"], "bound": tol,
                          "pass": c["rel_diff"] <= tol})
    return _wrap("commutativity", tol, cases)


def suite_asymptotics(g=2.0, n=2, tol=None, seed=0) -> dict:
    coupling_value(g, minimum=1.0)
    lam = np.array([0.5, -0.5])
    what12 = complex(dual_weight_what(lam[0] - lam[1], g))
    ms, ys = [], []
    # Phi through the chamber series: the direct Mellin-Barnes integral
    # cannot resolve |Phi - Phi_as| ~ e^{-4 pi m} beyond m ~ 2.5 in doubles
    # (oscillatory cancellation floor); the series and integral routes are
    # cross-checked at small separation elsewhere.
    for m in (1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0):
        x = [m / 2.0, -m / 2.0]
        phi = what12 * wf.hc_psi_symmetrized(lam, x, g, k_max=14).value
        diff = abs(phi - wf.phi_asymptotic(lam, x, g))
        ms.append(m)
        ys.append(math.log(diff) + 2.0 * math.pi * g * float(np.dot(x, wf.rho_vector(2))))
    a = np.vstack([ms, np.ones(len(ms))]).T
    slope = float(np.linalg.lstsq(a, ys, rcond=None)[0][0])
    bound = -(2.0 * math.pi - 0.3)
    cases = [{"inputs": {"lam": [0.5, -0.5], "m_range": [1.0, 4.0]}, "value": slope,
              "bound": bound, "pass": slope <= bound}]
    return _wrap("asymptotics", bound, cases)


def suite_bounds(g=2.0, n=2, tol=None, seed=0) -> dict:
    coupling_value(g, minimum=1.0)
    # uniform weighted suprema of the relativistic kernel and measure
    xs = np.linspace(-5.0, 5.0, 101)
    rep = ds.bound_check_uniform(xs, [0.2, 0.1, 0.05], g)
    cases = []
    for rec in rep.records:
        for key, lim_key in (("sup_kernel", "limit_sup_kernel"),
                             ("sup_measure", "limit_sup_measure")):
            lim = rep.summary[lim_key]
            cases.append({"inputs": {"omega2": rec["omega2"], "quantity": key},
                          "value": rec[key], "bound": 2.0 * lim,
                          "pass": bool(np.isfinite(rec[key]) and rec[key] <= 2.0 * lim)})
    # finite-C sweep of the total bound on the renormalized wave function
    nexp = wf.total_bound_exponent(2, g)
    spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-9, max_depth=26)
    sup = 0.0
    for l12 in (0.3, 0.8, 1.6, 3.0):
        for xgap in (0.3, 1.0, 2.0):
            lam = [l12 / 2.0, -l12 / 2.0]
            x = [xgap / 2.0, -xgap / 2.0]
            phi = wf.phi_renormalized(lam, x, g, spec)
            c = abs(phi.value) * wf.lattice_gap(lam) ** (-nexp) * math.exp(math.pi * g * xgap)
            sup = max(sup, c)
    cases.append({"inputs": {"quantity": "total-bound-sup"}, "value": sup,
                  "bound": 10.0, "pass": bool(np.isfinite(sup) and sup <= 10.0)})
    return _wrap("bounds", 2.0, cases)


SUITES = {
    "double-sine": suite_double_sine,
    "limits": suite_limits,
    "duality": suite_duality,
    "zero-point": suite_zero_point,
    "eigen-differential": suite_eigen_differential,
    "eigen-difference": suite_eigen_difference,
    "baxter": suite_baxter,
    "dual-baxter": suite_dual_baxter,
    "barnes": suite_barnes,
    "gustafson": suite_gustafson,
    "kernel-identity": suite_kernel_identity,
    "hypergeom-identity": suite_hypergeom_identity,
    "commutativity": suite_commutativity,
    "asymptotics": suite_asymptotics,
    "bounds": suite_bounds,
}


def run_suite(name: str, g=2.0, n=2, tol=None, seed=0) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    kwargs = {"g": g, "n": n, "seed": seed}
    if tol is not None:
        kwargs["tol"] = tol
    return SUITES[name](**kwargs)
