"""Adaptive complex quadrature over the line and iterated integrals up to 3D.

The base rule is an embedded Gauss(7)/Kronrod(15) pair applied per panel;
the panel error is |high - low| and the panel with the largest error is
bisected first (global adaptive strategy).  Infinite domains are truncated
at a radius derived from an exponential tail bound, and the initial panels
are sized so that each one sees at most about one oscillation period of a
factor exp(2*pi*i*osc*y).

Integrands must be vectorized: called with a 1-d array of abscissae ``xs``
they return an array whose *last* axis matches ``xs``.  Leading axes, if
any, are treated as a batch: all batch elements share the panel subdivision,
refinement is driven by the worst element, and each element is converged to
its own tolerance.  This batching is what makes the iterated (nested)
integrals affordable: an inner integral for many outer abscissae is a single
batched call.

Results are deterministic: identical inputs produce bit-identical output
(panels are accumulated in a fixed order and summed sorted by position).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DepthExceeded, DomainError, NonFinite

__all__ = ["QuadSpec", "EvalResult", "truncation_radius", "integrate_1d", "integrate_nested"]


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature policy.

    abs_tol / rel_tol: target |value - true| <= max(abs_tol, rel_tol*|value|);
    at least one must be positive.
    max_depth: maximum bisection generations per initial panel.
    tail_decay: coefficient c in the integrand bound C*exp(-c|y|); required
    for infinite domains.
    tail_safety: multiplier applied to abs_tol when choosing the truncation
    radius (smaller = more conservative).
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-9
    max_depth: int = 24
    tail_decay: float | None = None
    tail_safety: float = 1e-2

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 or self.rel_tol > 0.0):
            raise DomainError("QuadSpec needs abs_tol > 0 or rel_tol > 0")
        if self.max_depth < 1:
            raise DomainError("QuadSpec needs max_depth >= 1")
        if self.tail_decay is not None and not self.tail_decay > 0.0:
            raise DomainError("tail_decay must be positive when given")
        if not self.tail_safety > 0.0:
            raise DomainError("tail_safety must be positive")


@dataclass(frozen=True)
class EvalResult:
    """Complex value with an absolute error estimate and evaluation count."""

    value: complex
    abs_err: float
    n_evals: int
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.abs_err < 0.0 or self.n_evals < 1:
            raise DomainError("EvalResult needs abs_err >= 0 and n_evals >= 1")


def truncation_radius(tail_decay: float, tail_prefactor: float, spec: QuadSpec) -> float:
    """Radius R with tail_prefactor * exp(-tail_decay*R) / tail_decay <= abs_tol * tail_safety."""
    if not tail_decay > 0.0:
        raise DomainError("truncation_radius requires tail_decay > 0")
    tol = spec.abs_tol if spec.abs_tol > 0.0 else spec.rel_tol
    target = tol * spec.tail_safety
    r = math.log(tail_prefactor / (tail_decay * target)) / tail_decay
    return max(1.0, r)


# Gauss(7)/Kronrod(15) nodes and weights on [-1, 1] (QUADPACK dqk15 values).
_XK_HALF = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.0,
    ]
)
_WK_HALF = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG_HALF = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

_GK_X = np.concatenate([-_XK_HALF[:7], [0.0], _XK_HALF[6::-1]])
_GK_WK = np.concatenate([_WK_HALF[:7], [_WK_HALF[7]], _WK_HALF[6::-1]])
_wg15 = np.zeros(15)
_wg15[1:14:2] = np.concatenate([_WG_HALF[:3], [_WG_HALF[3]], _WG_HALF[2::-1]])
_GK_WG = _wg15

_MAX_CALL_ELEMS = 1 << 21
_MAX_PANELS = 20000


def _uniform_edges(a: float, b: float, width: float) -> np.ndarray:
    if a < 0.0 < b:
        nl = max(1, int(math.ceil(-a / width)))
        nr = max(1, int(math.ceil(b / width)))
        return np.concatenate([np.linspace(a, 0.0, nl + 1), np.linspace(0.0, b, nr + 1)[1:]])
    n = max(1, int(math.ceil((b - a) / width)))
    return np.linspace(a, b, n + 1)


def _initial_edges(a: float, b: float, osc: float, bulk=None) -> np.ndarray:
    """Panels of width <= min(1, 1/(1+osc)), one oscillation period each.

    With ``bulk = (lo, hi)`` the uniform width applies inside that window
    only; outside, panel widths grow geometrically (adaptive bisection
    recovers accuracy there if the tail turns out to matter).
    """
    width = min(1.0, 1.0 / (1.0 + abs(osc)))
    if bulk is None:
        return _uniform_edges(a, b, width)
    lo = min(max(a, bulk[0]), b)
    hi = max(min(b, bulk[1]), lo)
    if hi <= lo:
        lo, hi = a, min(b, a + width)
    mid = _uniform_edges(lo, hi, width)
    left = [lo]
    w = width
    while left[-1] > a:
        left.append(max(a, left[-1] - w))
        w = min(2.0 * w, 4.0)
    right = [hi]
    w = width
    while right[-1] < b:
        right.append(min(b, right[-1] + w))
        w = min(2.0 * w, 4.0)
    return np.concatenate([left[:0:-1], mid, right[1:]])


def _eval_panels(f, lo, hi, batch_hint):
    """Evaluate the G7/K15 pair on each panel; returns (vals, errs, n_elems)."""
    n_panels = lo.size
    per_call = max(1, _MAX_CALL_ELEMS // max(1, batch_hint * 15))
    vals = None
    errs = None
    n_elems = 0
    for s in range(0, n_panels, per_call):
        plo = lo[s : s + per_call]
        phi = hi[s : s + per_call]
        mid = 0.5 * (plo + phi)
        half = 0.5 * (phi - plo)
        xs = (mid[:, None] + half[:, None] * _GK_X).reshape(-1)
        ys = np.asarray(f(xs), dtype=complex)
        if ys.shape[-1] != xs.size:
            raise DomainError("integrand must return a last axis matching its input")
        if not np.all(np.isfinite(ys)):
            raise NonFinite("integrand returned NaN or Inf")
        n_elems += ys.size
        ys = ys.reshape(ys.shape[:-1] + (plo.size, 15))
        resk = ys @ _GK_WK
        resg = ys @ _GK_WG
        ik = resk * half
        raw = np.abs(resk - resg) * half
        # QUADPACK-style sharpening: deflate |K - G| against the variation
        # resasc, with a rounding floor proportional to int |f|
        asc = (np.abs(ys - 0.5 * resk[..., None]) @ _GK_WK) * half
        with np.errstate(divide="ignore", invalid="ignore"):
            scaled = asc * np.minimum(1.0, (200.0 * raw / np.where(asc > 0.0, asc, 1.0)) ** 1.5)
        pe = np.where(asc > 0.0, scaled, raw)
        rabs = (np.abs(ys) @ _GK_WK) * half
        fl = 50.0 * np.finfo(float).eps * rabs
        pe = np.maximum(pe, fl)
        if vals is None:
            vals, errs, floors = ik, pe, fl
        else:
            vals = np.concatenate([vals, ik], axis=-1)
            errs = np.concatenate([errs, pe], axis=-1)
            floors = np.concatenate([floors, fl], axis=-1)
    return vals, errs, floors, n_elems


def _integrate_batch(f, a, b, spec, *, osc=0.0, edges=None, batch_hint=1, bulk=None):
    """Core adaptive driver; returns (values, errors, n_elems) with batch shape."""
    if edges is None:
        edges = _initial_edges(float(a), float(b), osc, bulk)
    edges = np.asarray(edges, dtype=float)
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    vals, errs, floors, n_elems = _eval_panels(f, lo, hi, batch_hint)
    depth = np.zeros(lo.size, dtype=int)

    flat = lambda e: e.reshape(-1, e.shape[-1])
    while True:
        tot = np.sum(vals, axis=-1)
        etot = np.sum(errs, axis=-1)
        tol = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(tot))
        if np.all(etot <= tol):
            break
        # refine the panel with the worst error over the whole batch, counting
        # only batch elements above their own tolerance and panels whose error
        # is not dominated by the summation rounding floor (splitting those
        # cannot reduce the total any further)
        active = etot > tol
        refinable = errs > 4.0 * floors
        panel_err = np.where(active[..., None] & refinable, errs, 0.0)
        priority = flat(panel_err).max(axis=0)
        j = int(np.argmax(priority))
        if priority[j] <= 0.0:
            break  # remaining error is round-off limited
        if depth[j] >= spec.max_depth or lo.size >= _MAX_PANELS:
            raise DepthExceeded(
                f"tolerance not met: {lo.size} panels, worst panel error {priority[j]:.3e}"
            )
        m = 0.5 * (lo[j] + hi[j])
        nlo = np.array([lo[j], m])
        nhi = np.array([m, hi[j]])
        nvals, nerrs, nfloors, ne = _eval_panels(f, nlo, nhi, batch_hint)
        n_elems += ne
        lo[j], hi[j] = nlo[0], nhi[0]
        vals[..., j] = nvals[..., 0]
        errs[..., j] = nerrs[..., 0]
        floors[..., j] = nfloors[..., 0]
        lo = np.append(lo, nlo[1])
        hi = np.append(hi, nhi[1])
        depth[j] += 1
        depth = np.append(depth, depth[j])
        vals = np.concatenate([vals, nvals[..., 1:]], axis=-1)
        errs = np.concatenate([errs, nerrs[..., 1:]], axis=-1)
        floors = np.concatenate([floors, nfloors[..., 1:]], axis=-1)

    order = np.argsort(lo, kind="stable")
    value = np.sum(vals[..., order], axis=-1)
    abs_err = np.sum(errs[..., order], axis=-1)
    return value, abs_err, n_elems


def _resolve_domain(domain, spec, prefactor):
    a, b = float(domain[0]), float(domain[1])
    if math.isinf(a) or math.isinf(b):
        if spec.tail_decay is None:
            raise DomainError("infinite domain requires spec.tail_decay")
        r = truncation_radius(spec.tail_decay, prefactor, spec)
        if math.isinf(a):
            a = -r
        if math.isinf(b):
            b = r
    if not b > a:
        raise DomainError(f"empty integration domain ({a}, {b})")
    return a, b


def integrate_1d(f, domain, spec: QuadSpec | None = None, *, osc: float = 0.0,
                 tail_prefactor: float = 1.0, edges=None) -> EvalResult:
    """Integrate a scalar complex integrand over an interval or the real line.

    ``domain`` is a pair (a, b); either end may be infinite, in which case it
    is truncated at ``truncation_radius(spec.tail_decay, tail_prefactor, spec)``.
    ``osc`` is the dominant oscillation frequency of a factor exp(2*pi*i*osc*y)
    and controls the initial panel width.  Explicit panel ``edges`` override
    the default construction.
    """
    spec = spec or QuadSpec()
    if edges is None:
        a, b = _resolve_domain(domain, spec, tail_prefactor)
    else:
        a, b = float(edges[0]), float(edges[-1])
    value, abs_err, n_elems = _integrate_batch(f, a, b, spec, osc=osc, edges=edges)
    if np.ndim(value) != 0:
        raise DomainError("integrate_1d needs a scalar integrand; use integrate_nested")
    flags = ()
    if float(abs_err) > max(spec.abs_tol, spec.rel_tol * abs(complex(value))):
        flags = ("roundoff",)
    return EvalResult(complex(value), float(abs_err), max(1, n_elems), flags)


def _scaled_spec(spec: QuadSpec, factor: float) -> QuadSpec:
    return replace(
        spec,
        abs_tol=max(spec.abs_tol / factor, 1e-300),
        rel_tol=max(spec.rel_tol / factor, 5e-15),
    )


class _Memo:
    """Cache of inner integral values keyed by outer abscissae (exact floats)."""

    def __init__(self):
        self.data: dict = {}

    def split(self, keys):
        hits, misses = [], []
        for i, k in enumerate(keys):
            (hits if k in self.data else misses).append(i)
        return hits, misses


def integrate_nested(f, dims: int, spec: QuadSpec | None = None, *, bounds=None,
                     oscs=None, bulks=None) -> EvalResult:
    """Iterated integral of f over R^dims (dims = 2 or 3).

    The outer integral runs at the given tolerances, each nesting level below
    at tolerance/10 per level.  Inner integrals are batched across the outer
    abscissae of one panel evaluation and additionally memoized per abscissa.
    ``f`` must broadcast: it is called with ``dims`` arrays of mutually
    broadcastable shapes and the contract of integrate_1d applies to the last
    axis.  ``bounds`` gives per-dimension finite (a, b) pairs; by default the
    line is truncated via spec.tail_decay in every dimension.
    """
    spec = spec or QuadSpec()
    if dims not in (2, 3):
        raise DomainError("integrate_nested supports dims = 2 or 3")
    if bounds is None:
        bounds = [(-math.inf, math.inf)] * dims
    bounds = [_resolve_domain(bd, spec, 1.0) for bd in bounds]
    if oscs is None:
        oscs = [0.0] * dims
    if bulks is None:
        bulks = [None] * dims
    spec1 = _scaled_spec(spec, 10.0)
    spec2 = _scaled_spec(spec, 100.0)

    stats = {"n": 0, "err1": 0.0, "err2": 0.0}
    memo1 = _Memo()
    memo2 = _Memo()

    if dims == 2:

        def outer_f(u):
            out = np.empty(u.shape, dtype=complex)
            keys = u.tolist()
            hits, misses = memo1.split(keys)
            for i in hits:
                out[i] = memo1.data[keys[i]]
            if misses:
                um = u[misses]
                inner = lambda v: f(um[:, None], v[None, :])
                vals, errs, ne = _integrate_batch(
                    inner, *bounds[1], spec1, osc=oscs[1], batch_hint=um.size,
                    bulk=bulks[1],
                )
                stats["n"] += ne
                stats["err1"] = max(stats["err1"], float(np.max(errs)))
                for i, idx in enumerate(misses):
                    memo1.data[keys[idx]] = vals[i]
                    out[idx] = vals[i]
            return out

    else:

        def outer_f(u):
            out = np.empty(u.shape, dtype=complex)
            keys = u.tolist()
            hits, misses = memo1.split(keys)
            for i in hits:
                out[i] = memo1.data[keys[i]]
            if misses:
                um = u[misses]

                def mid_f(v):
                    pair_keys = [(uu, vv) for uu in um.tolist() for vv in v.tolist()]
                    shape = (um.size, v.size)
                    mid = np.empty(um.size * v.size, dtype=complex)
                    hits2, misses2 = memo2.split(pair_keys)
                    for i in hits2:
                        mid[i] = memo2.data[pair_keys[i]]
                    if misses2:
                        up = np.array([pair_keys[i][0] for i in misses2])
                        vp = np.array([pair_keys[i][1] for i in misses2])
                        inner = lambda w: f(up[:, None], vp[:, None], w[None, :])
                        vals, errs, ne = _integrate_batch(
                            inner, *bounds[2], spec2, osc=oscs[2], batch_hint=up.size,
                            bulk=bulks[2],
                        )
                        stats["n"] += ne
                        stats["err2"] = max(stats["err2"], float(np.max(errs)))
                        for i, idx in enumerate(misses2):
                            memo2.data[pair_keys[idx]] = vals[i]
                            mid[idx] = vals[i]
                    return mid.reshape(shape)

                vals, errs, ne = _integrate_batch(
                    mid_f, *bounds[1], spec1, osc=oscs[1], batch_hint=um.size,
                    bulk=bulks[1],
                )
                stats["n"] += ne
                stats["err1"] = max(stats["err1"], float(np.max(errs)))
                for i, idx in enumerate(misses):
                    memo1.data[keys[idx]] = vals[i]
                    out[idx] = vals[i]
            return out

    value, abs_err, ne = _integrate_batch(outer_f, *bounds[0], spec, osc=oscs[0],
                                          bulk=bulks[0])
    stats["n"] += ne
    len0 = bounds[0][1] - bounds[0][0]
    len1 = bounds[1][1] - bounds[1][0]
    err = float(abs_err) + len0 * stats["err1"]
    if dims == 3:
        err += len0 * len1 * stats["err2"]
    flags = ()
    if float(abs_err) > max(spec.abs_tol, spec.rel_tol * abs(complex(value))):
        flags = ("roundoff",)
    return EvalResult(complex(value), err, max(1, stats["n"]), flags)
