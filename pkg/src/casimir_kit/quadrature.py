"""Adaptive quadrature on finite and semi-infinite domains, plus series helpers.

The workhorse is a globally adaptive 21-point Gauss-Kronrod rule that
accepts *vector-valued* integrands: ``f(x)`` may return an array of shape
``(m, len(x))`` and every component must then meet its own tolerance.  The
nested wedge integral behind the Lifshitz formulas relies on this to
integrate the inner variable for a whole batch of outer nodes at once.

Integrands are always called with a 1-D numpy array of abscissae.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DivergenceError, LoopInstabilityError, QuadratureEvaluationError, ValidationError

# Gauss-Kronrod 10/21 (QUADPACK qk21)
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452010,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# nodes on [-1, 1] in increasing order, with matching weights
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


class Transform(enum.Enum):
    """Map from the half line onto a finite interval."""

    EXP_MAP = "exp"  # t = -s log(u), u in (0, 1]
    RATIONAL = "rational"  # t = s x / (1 - x); suited to algebraic decay
    TANH_SINH = "tanh-sinh"  # rational map followed by double-exponential rule


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    transform: Transform = Transform.RATIONAL

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise ValidationError("rel_tol", "must be > 0")
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValidationError("abs_tol", "must be > 0")
        if int(self.max_subdivisions) < 1:
            raise ValidationError("max_subdivisions", "must be >= 1")
        object.__setattr__(self, "transform", Transform(self.transform))

    def tightened(self, factor):
        return replace(self, rel_tol=self.rel_tol * factor, abs_tol=self.abs_tol * factor)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    """Outcome of an integration.  ``value`` may be an array for vector integrands."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    @classmethod
    def analytic(cls, value):
        return cls(value, 0.0, 0, True)

    def __float__(self):
        return float(self.value)


def _call(f, x):
    y = np.asarray(f(x), dtype=float)
    if y.shape[-1:] != x.shape:
        y = np.broadcast_to(y, y.shape[:-1] + x.shape) if y.ndim else np.full(x.shape, float(y))
    if np.isnan(y).any():
        bad = np.isnan(y).reshape(-1, x.size).any(axis=0)
        raise QuadratureEvaluationError(float(x[np.argmax(bad)]))
    return y


def _gk_panels(f, lo, hi):
    """Apply the 21-point rule on every panel ``[lo[i], hi[i]]``."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = (c[:, None] + h[:, None] * NODES[None, :]).ravel()
    y = _call(f, x)
    lead = y.shape[:-1]
    y = y.reshape(lead + (lo.size, 21))
    resk = h * (y @ KRONROD_WEIGHTS)
    resg = h * (y @ GAUSS_WEIGHTS)
    resabs = h * (np.abs(y) @ KRONROD_WEIGHTS)
    mean = (y @ KRONROD_WEIGHTS) / 2.0
    resasc = h * (np.abs(y - mean[..., None]) @ KRONROD_WEIGHTS)
    err = np.abs(resk - resg)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    err = np.where(resabs > _TINY / (50 * _EPS), np.maximum(50 * _EPS * resabs, err), err)
    return resk, err, x.size


def adaptive_gauss_kronrod(f, a, b, rel_tol=1e-9, abs_tol=1e-12, max_subdivisions=2000):
    """Globally adaptive Gauss-Kronrod integration of ``f`` over ``[a, b]``.

    ``rel_tol`` and ``abs_tol`` broadcast against the integrand's leading
    shape, so individual components can be given their own tolerance
    (``inf`` switches the check off for a component).

    Returns ``(value, error, evaluations, converged)``.
    """
    lo = np.array([float(a)])
    hi = np.array([float(b)])
    min_width = 1e-15 * (hi[0] - lo[0])
    val, err, nev = _gk_panels(f, lo, hi)
    lead = val.shape[:-1]
    rel = np.broadcast_to(np.asarray(rel_tol, dtype=float), lead) if lead else np.asarray(rel_tol, float)
    atol = np.broadcast_to(np.asarray(abs_tol, dtype=float), lead) if lead else np.asarray(abs_tol, float)
    converged = False
    while True:
        total = val.sum(axis=-1)
        total_err = err.sum(axis=-1)
        with np.errstate(invalid="ignore"):
            # inf * 0 for switched-off components; nan compares as "not bad"
            tol = np.maximum(rel * np.abs(total), atol)
        bad = total_err > tol
        if not np.any(bad):
            converged = True
            break
        if lo.size >= max_subdivisions:
            break
        # score panels by their share of the tolerance in the failing components
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = err / tol[..., None]
        ratio = np.where(bad[..., None], ratio, 0.0)
        score = ratio.reshape(-1, lo.size).max(axis=0) if lead else ratio
        width_ok = (hi - lo) > np.maximum(8 * _EPS * np.maximum(np.abs(lo), np.abs(hi)), min_width)
        score = np.where(width_ok, score, 0.0)
        top = score.max()
        if top <= 0:
            break
        pick = np.flatnonzero(score >= 0.25 * top)
        room = max_subdivisions - lo.size
        if pick.size > room:
            pick = pick[np.argsort(score[pick])[::-1][:room]]
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        nval, nerr, n = _gk_panels(f, new_lo, new_hi)
        nev += n
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[..., keep], nval], axis=-1)
        err = np.concatenate([err[..., keep], nerr], axis=-1)
    total = val.sum(axis=-1)
    total_err = err.sum(axis=-1)
    return total, total_err, nev, converged


# --------------------------------------------------------------------------
# tanh-sinh


def tanh_sinh(f, a, b, rel_tol=1e-9, abs_tol=1e-12, max_level=12):
    """Double-exponential rule on ``[a, b]``; tolerates endpoint singularities.

    Halves the step until two successive estimates agree; the error
    estimate is their difference.
    """
    a, b = float(a), float(b)
    half = 0.5 * (b - a)
    # far enough out that the complement underflows; 1/sqrt(x)-type endpoints need it
    tmax = 6.2
    h = 1.0
    nev = 0

    def nodes(t):
        u = 0.5 * math.pi * np.sinh(t)
        with np.errstate(over="ignore"):
            # distance of tanh(u) from +1, without cancellation
            comp = 1.0 / (np.exp(u) * np.cosh(u))
            w = 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
        return comp, w

    def block(t):
        comp, w = nodes(t)
        # nodes that round onto an endpoint are dropped, each side on its own
        lo = a + half * comp
        hi = b - half * comp
        keep_lo, keep_hi = lo > a, hi < b
        x = np.concatenate([lo[keep_lo], hi[keep_hi]])
        y = _call(f, x)
        n = int(keep_lo.sum())
        return half * (y[..., :n] @ w[keep_lo] + y[..., n:] @ w[keep_hi]), x.size

    t = np.arange(1, int(tmax / h) + 1) * h
    centre = _call(f, np.array([a + half]))[..., 0] * half * 0.5 * math.pi
    s, n = block(t)
    nev += n + 1
    total = centre + s
    estimate = h * total
    err = np.inf
    for level in range(1, max_level + 1):
        h /= 2.0
        t = np.arange(1, int(tmax / h) + 1, 2) * h
        s, n = block(t)
        nev += n
        total = total + s
        new = h * total
        err = np.abs(new - estimate)
        estimate = new
        if np.all(err <= np.maximum(rel_tol * np.abs(estimate), abs_tol)) and level >= 3:
            return estimate, err, nev, True
    return estimate, err, nev, False


# --------------------------------------------------------------------------
# public integration entry points


def _semi_infinite_map(f, transform, scale):
    if transform is Transform.EXP_MAP:
        def g(u):
            t = -scale * np.log(u)
            with np.errstate(over="ignore"):
                return _call(f, t) * (scale / u)
        return g
    def g(x):
        om = 1.0 - x
        return _call(f, scale * x / om) * (scale / om**2)
    return g


def _result(value, err, nev, converged, spec):
    value = value if np.ndim(value) else float(value)
    err_out = err if np.ndim(err) else float(err)
    tol = np.maximum(spec.rel_tol * np.abs(value), spec.abs_tol)
    return QuadResult(value, err_out, int(nev), bool(converged and np.all(err <= tol)))


def integrate(f, a, b, spec=DEFAULT_SPEC):
    """Integrate ``f`` over the finite interval ``[a, b]``."""
    if spec.transform is Transform.TANH_SINH:
        out = tanh_sinh(f, a, b, spec.rel_tol, spec.abs_tol)
    else:
        out = adaptive_gauss_kronrod(f, a, b, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    return _result(*out, spec)


def integrate_semi_infinite(f, spec=DEFAULT_SPEC, scale=1.0):
    """Integrate ``f`` over ``(0, inf)``.

    ``scale`` is the characteristic decay length of ``f``; the map onto
    the unit interval is stretched by it so that the default panel
    layout does not depend on the physical units.
    """
    g = _semi_infinite_map(f, spec.transform, float(scale))
    if spec.transform is Transform.TANH_SINH:
        out = tanh_sinh(g, 0.0, 1.0, spec.rel_tol, spec.abs_tol)
    else:
        out = adaptive_gauss_kronrod(g, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    return _result(*out, spec)


def integrate_2d_lifshitz(g, L, spec=DEFAULT_SPEC, xi_scale=None):
    """Wedge integral ``int_0^inf dxi int_{xi}^inf dkappa g(xi, kappa)`` (c = 1).

    ``g`` receives broadcastable arrays ``xi`` of shape ``(n, 1)`` and
    ``kappa`` of shape ``(n, p)`` and returns shape ``(..., n, p)``; the
    leading dimensions (e.g. polarizations) are integrated independently.
    The measure ``kappa dkappa / (2 pi)`` coming from ``d^2k / (4 pi^2)``
    is left to the caller.

    The inner variable is ``X - Y`` with ``X = 2 kappa L`` and
    ``Y = 2 xi L``, so the decay of ``exp(-2 kappa L)`` has unit scale
    regardless of ``L``.  The outer variable is scaled by ``xi_scale``
    (default ``1 / (2L)``).
    """
    L = float(L)
    if not L > 0:
        raise ValidationError("L", "must be > 0")
    inner_scale = 1.0 / (2.0 * L)
    outer_scale = inner_scale if xi_scale is None else float(xi_scale)
    inner_spec = spec.tightened(0.1)
    inner_ok = [True]
    nev_inner = [0]
    lead_shape = []

    def outer(xi):
        n = xi.size
        xi_col = xi[:, None]

        def inner(s):
            y = np.asarray(g(xi_col, xi_col + s[None, :]), dtype=float)
            y = np.broadcast_to(y, y.shape[:-2] + (n, s.size))
            if not lead_shape:
                lead_shape.append(y.shape[:-2])
            return y.reshape(-1, s.size)

        h = _semi_infinite_map(inner, spec.transform, inner_scale)
        if spec.transform is Transform.TANH_SINH:
            v, e, nev, ok = tanh_sinh(h, 0.0, 1.0, inner_spec.rel_tol, inner_spec.abs_tol * 1e-6)
        else:
            v, e, nev, ok = adaptive_gauss_kronrod(
                h, 0.0, 1.0, inner_spec.rel_tol, inner_spec.abs_tol * 1e-6, spec.max_subdivisions
            )
        nev_inner[0] += nev
        inner_ok[0] &= bool(ok)
        return np.concatenate([v.reshape(-1, n), e.reshape(-1, n)], axis=0)

    f = _semi_infinite_map(outer, spec.transform, outer_scale)
    # probe once to learn the number of components
    probe = outer(np.array([outer_scale]))
    m = probe.shape[0] // 2
    rel = np.concatenate([np.full(m, spec.rel_tol * 0.5), np.full(m, np.inf)])
    atol = np.concatenate([np.full(m, spec.abs_tol * 0.5), np.full(m, np.inf)])
    if spec.transform is Transform.TANH_SINH:
        v, e, nev, ok = tanh_sinh(f, 0.0, 1.0, rel, atol)
    else:
        v, e, nev, ok = adaptive_gauss_kronrod(f, 0.0, 1.0, rel, atol, spec.max_subdivisions)
    value = v[:m]
    err = e[:m] + np.abs(v[m:])
    lead = lead_shape[0] if lead_shape else ()
    value = value.reshape(lead) if lead else float(value[0])
    err = err.reshape(lead) if lead else float(err[0])
    return _result(value, err, nev + nev_inner[0], ok and inner_ok[0], spec)


# --------------------------------------------------------------------------
# series


def closed_loop(rho):
    """Closed-loop gain ``rho / (1 - rho) = rho + rho**2 + ...``.

    Raises :class:`LoopInstabilityError` for ``rho >= 1 - 1e-15``.
    """
    r = np.asarray(rho, dtype=float)
    if np.any(r >= 1.0 - 1e-15):
        raise LoopInstabilityError(f"open loop function reached {float(np.max(r))!r} >= 1")
    out = r / (1.0 - r)
    return float(out) if out.ndim == 0 else out


def sum_until(term: Callable[[int], float], tail_tol, start=1, max_terms=10**6):
    """Sum ``term(start) + term(start + 1) + ...`` until ``|term(n)| < tail_tol``.

    A power-law tail estimate fitted to the last two terms is added to the
    partial sum.  Returns ``(value, n_used)`` where ``n_used`` counts the
    terms actually evaluated.
    """
    if not tail_tol > 0:
        raise ValidationError("tail_tol", "must be > 0")
    total = 0.0
    prev = None
    for i in range(max_terms):
        n = start + i
        t = float(term(n))
        total += t
        if abs(t) < tail_tol:
            tail = 0.0
            if prev is not None and prev != 0 and t != 0 and abs(t) < abs(prev) and n > 1:
                p = math.log(abs(prev / t)) / math.log(n / (n - 1))
                if p > 1:
                    tail = t * n / (p - 1)
            return total + tail, i + 1
        prev = t
    raise DivergenceError(f"series did not converge within {max_terms} terms")
