"""Casimir force and energy between two plane mirrors (natural units).

The force per unit area is the imaginary-frequency integral

    F/A = sum_p int d^2k/(4 pi^2) int_0^inf dxi/(2 pi) 2 kappa rho/(1 - rho)

with the open loop function ``rho = r1 r2 exp(-2 kappa L)``; the energy
replaces ``2 kappa rho/(1-rho)`` by ``log(1 - rho)``.  Writing
``d^2k/(4 pi^2) = kappa dkappa/(2 pi)`` on the wedge ``kappa >= xi`` turns
both into :func:`~casimir_kit.quadrature.integrate_2d_lifshitz` calls.

Sign conventions: a positive force is an attraction and a negative energy
is a binding energy, so that ``dE/dL = F``.  Integrands are normalized by
the perfect-mirror result, which makes absolute tolerances act on the
reduction factors rather than on raw values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import LoopInstabilityError, ValidationError
from .model import CavityConfig, SphereConfig
from .plasma_optics import Polarization, log_abs_reflection_kappa
from .quadrature import (
    DEFAULT_SPEC,
    QuadResult,
    QuadratureSpec,
    adaptive_gauss_kronrod,
    integrate_2d_lifshitz,
)

POLARIZATIONS = (Polarization.TE, Polarization.TM)
PI2 = math.pi**2


@dataclass(frozen=True)
class ForceResult:
    """Force (positive = attraction).

    ``te`` and ``tm`` hold the per-area contributions of each
    polarization when the force came from the Lifshitz integral.
    """

    force: float
    per_unit_area: Optional[float]
    quad: QuadResult
    te: Optional[float] = None
    tm: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EnergyResult:
    """Interaction energy (negative = binding)."""

    energy: float
    per_unit_area: Optional[float]
    quad: QuadResult
    te: Optional[float] = None
    tm: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)


def log_open_loop(xi, kappa, cavity, polarization):
    """``log rho`` for the cavity; rho itself is ``exp`` of this."""
    return (
        log_abs_reflection_kappa(xi, kappa, polarization, cavity.mirror1)
        + log_abs_reflection_kappa(xi, kappa, polarization, cavity.mirror2)
        - 2.0 * kappa * cavity.separation_L
    )


def open_loop(xi, kappa, cavity, polarization):
    """Round-trip factor ``rho = r1 r2 exp(-2 kappa L)``, in ``[0, 1)``."""
    return np.exp(log_open_loop(xi, kappa, cavity, polarization))


def _check_stable(lr):
    if np.any(lr >= 0):
        raise LoopInstabilityError("open loop function reached rho >= 1 on the imaginary axis")


def _closed_loop_from_log(lr):
    # rho / (1 - rho) = 1 / (exp(-log rho) - 1)
    _check_stable(lr)
    with np.errstate(over="ignore"):
        return 1.0 / np.expm1(-lr)


def _log1m_from_log(lr):
    # log(1 - exp(lr)), accurate for rho near 1 and for tiny rho
    _check_stable(lr)
    small = lr < -math.log(2.0)
    near_one = np.where(small, -1.0, lr)
    with np.errstate(divide="ignore"):
        return np.where(small, np.log1p(-np.exp(lr)), np.log(-np.expm1(near_one)))


def _log1m_series(lr, cutoff=1e-14, block=64, max_terms=10**7):
    """``-sum_n rho^n / n`` truncated where ``rho^n < cutoff``, pointwise."""
    _check_stable(lr)
    shape = lr.shape
    lr = lr.ravel()
    with np.errstate(divide="ignore"):
        n_max = np.where(np.isfinite(lr), np.ceil(math.log(cutoff) / lr), 0.0)
    n_max = np.minimum(n_max, max_terms)
    total = np.zeros_like(lr)
    n0 = 0
    active = np.flatnonzero(n_max > 0)
    while active.size:
        n = np.arange(n0 + 1, n0 + block + 1, dtype=float)
        terms = np.exp(lr[active, None] * n[None, :]) / n[None, :]
        terms *= n[None, :] <= n_max[active, None]
        total[active] += terms.sum(axis=1)
        n0 += block
        active = active[n_max[active] > n0]
    return -total.reshape(shape)


def _xi_scale(cavity):
    scale = 1.0 / (2.0 * cavity.separation_L)
    for m in (cavity.mirror1, cavity.mirror2):
        if not m.perfect:
            scale = min(scale, m.omega_p)
    return scale


def _integrate(cavity, kernel, spec):
    def g(xi, kappa):
        return np.stack([kernel(xi, kappa, p) for p in POLARIZATIONS])

    return integrate_2d_lifshitz(g, cavity.separation_L, spec, xi_scale=_xi_scale(cavity))


# --------------------------------------------------------------------------
# ideal mirrors


def casimir_force_ideal(cavity: CavityConfig) -> ForceResult:
    """``pi^2 A / (240 L^4)`` in units hbar = c = 1."""
    p = PI2 / (240.0 * cavity.separation_L**4)
    return ForceResult(p * cavity.area_A, p, QuadResult.analytic(p), te=p / 2, tm=p / 2)


def casimir_energy_ideal(cavity: CavityConfig) -> EnergyResult:
    e = -PI2 / (720.0 * cavity.separation_L**3)
    return EnergyResult(e * cavity.area_A, e, QuadResult.analytic(e), te=e / 2, tm=e / 2)


# --------------------------------------------------------------------------
# real mirrors


def _scaled_quad(q, factor, per_area):
    return QuadResult(per_area, float(np.sum(q.error_estimate)) * factor, q.evaluations, q.converged)


def casimir_force(cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> ForceResult:
    """Force between two real mirrors from the imaginary-frequency integral."""
    L = cavity.separation_L
    norm = 240.0 * L**4 / PI2

    def kernel(xi, kappa, pol):
        lr = log_open_loop(xi, kappa, cavity, pol)
        return norm * kappa**2 / (2.0 * PI2) * _closed_loop_from_log(lr)

    q = _integrate(cavity, kernel, spec)
    te, tm = (float(v) / norm for v in q.value)
    p = te + tm
    return ForceResult(p * cavity.area_A, p, _scaled_quad(q, 1.0 / norm, p), te=te, tm=tm)


def casimir_energy(
    cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC, method="log"
) -> EnergyResult:
    """Energy ``A sum_p int int log(1 - rho)``.

    ``method="series"`` expands ``log(1 - rho) = -(rho + rho^2/2 + ...)``
    pointwise instead, stopping where ``rho^n < 1e-14``; it serves as an
    independent check on the closed form.
    """
    if method not in ("log", "series"):
        raise ValidationError("method", f"expected 'log' or 'series', got {method!r}")
    L = cavity.separation_L
    norm = 720.0 * L**3 / PI2
    log1m = _log1m_from_log if method == "log" else _log1m_series

    def kernel(xi, kappa, pol):
        lr = log_open_loop(xi, kappa, cavity, pol)
        return norm * kappa / (4.0 * PI2) * log1m(lr)

    q = _integrate(cavity, kernel, spec)
    te, tm = (float(v) / norm for v in q.value)
    e = te + tm
    return EnergyResult(e * cavity.area_A, e, _scaled_quad(q, 1.0 / norm, e), te=te, tm=tm)


def eta_F(cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Force reduction factor F / F_Cas."""
    return casimir_force(cavity, spec).per_unit_area / casimir_force_ideal(cavity).per_unit_area


def eta_E(cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Energy reduction factor E / E_Cas."""
    return casimir_energy(cavity, spec).per_unit_area / casimir_energy_ideal(cavity).per_unit_area


def energy_from_force(cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> EnergyResult:
    """``E(L) = -int_L^inf F(L') dL'`` by quadrature over the force itself.

    Uses ``L' = L / u`` so the integrand ``F(L/u) L / u^2`` is bounded on
    ``(0, 1]``.
    """
    L = cavity.separation_L
    inner = spec.tightened(0.1)
    norm = 720.0 * L**3 / PI2
    state = {"ok": True, "nev": 0, "err": 0.0}

    def f(u):
        out = np.empty_like(u)
        for i, ui in enumerate(u):
            r = casimir_force(cavity.with_separation(L / ui), inner)
            state["ok"] &= r.quad.converged
            state["nev"] += r.quad.evaluations
            out[i] = -norm * r.per_unit_area * L / ui**2
        return out

    v, err, nev, ok = adaptive_gauss_kronrod(f, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    e = float(v) / norm
    q = QuadResult(e, float(err) / norm, nev + state["nev"], bool(ok and state["ok"]))
    return EnergyResult(e * cavity.area_A, e, q)


def sphere_plane_force(
    sphere: SphereConfig, cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC, ideal=False
) -> ForceResult:
    """Proximity-force estimate ``2 pi R |E_pp(L)| / A``.

    Only the mirrors of ``cavity`` are used; the plane-plane distance is
    the sphere's closest approach.
    """
    pp = cavity.with_separation(sphere.closest_approach_L)
    energy = casimir_energy_ideal(pp) if ideal else casimir_energy(pp, spec)
    force = 2.0 * math.pi * sphere.radius_R * abs(energy.per_unit_area)
    q = QuadResult(
        force,
        2.0 * math.pi * sphere.radius_R * float(energy.quad.error_estimate),
        energy.quad.evaluations,
        energy.quad.converged,
    )
    return ForceResult(force, None, q, diagnostics={"pfa_questionable": sphere.pfa_questionable})
