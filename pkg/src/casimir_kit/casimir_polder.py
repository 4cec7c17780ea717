"""Dispersion interaction between two ground-state atoms (natural units).

All energies are negative (binding).  For distinct atoms the square of
the polarizability is replaced by the product of the two.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError
from .model import AtomModel
from .quadrature import DEFAULT_SPEC, QuadResult, QuadratureSpec, Transform, integrate_semi_infinite

UNIVERSAL_INTEGRAL = 23.0 / 4.0


def retardation_polynomial(u):
    """``u^4 + 2u^3 + 5u^2 + 6u + 3``; its integral against ``exp(-2u)`` is 23/4."""
    return (((u + 2.0) * u + 5.0) * u + 6.0) * u + 3.0


def _static_product(atom1, atom2):
    # normalization for integrands; guarded so all-zero weights give 0, not 0/0
    return max(atom1.static_polarizability * atom2.static_polarizability, np.finfo(float).tiny)


def _check_L(L):
    if not (L > 0 and math.isfinite(L)):
        raise ValidationError("L", f"must be finite and > 0, got {L!r}")


def cp_energy(atom1: AtomModel, atom2: AtomModel, L, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Casimir-Polder energy at any distance.

    ``E = -(1/(pi L^2)) int dkappa a1 a2 (k^4 + 2k^3/L + 5k^2/L^2 + 6k/L^3 + 3/L^4) e^{-2kL}``,
    computed with ``u = kappa L``.  The returned ``QuadResult.value`` is
    the energy.
    """
    _check_L(L)
    norm = 1.0 / _static_product(atom1, atom2)

    def f(u):
        kappa = u / L
        alpha2 = atom1.polarizability(kappa) * atom2.polarizability(kappa)
        return norm * alpha2 * retardation_polynomial(u) * np.exp(-2.0 * u)

    q = integrate_semi_infinite(f, spec, scale=0.5)
    pref = -1.0 / (math.pi * L**7 * norm)
    return QuadResult(pref * q.value, abs(pref) * q.error_estimate, q.evaluations, q.converged)


def cp_retarded(atom1: AtomModel, atom2: AtomModel, L) -> float:
    """Long-distance limit ``-(23/4) alpha1(0) alpha2(0) / (pi L^7)``."""
    _check_L(L)
    return -UNIVERSAL_INTEGRAL * atom1.static_polarizability * atom2.static_polarizability / (math.pi * L**7)


def london_energy(atom1: AtomModel, atom2: AtomModel, L, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Non-retarded limit ``-(3/(pi L^6)) int_0^inf a1(i kappa) a2(i kappa) dkappa``.

    The integrand decays like ``kappa^-4``; the rational map is used
    whatever transform ``spec`` asks for, scaled by the lowest transition.
    """
    _check_L(L)
    scale = float(min(atom1.energies.min(), atom2.energies.min()))
    if spec.transform is Transform.EXP_MAP:
        spec = QuadratureSpec(spec.rel_tol, spec.abs_tol, spec.max_subdivisions, Transform.RATIONAL)
    # integrate in units of the scale so abs_tol is not tied to the atom's units
    norm = scale / _static_product(atom1, atom2)
    q = integrate_semi_infinite(
        lambda k: norm * atom1.polarizability(k) * atom2.polarizability(k), spec, scale=scale
    )
    pref = -3.0 / (math.pi * L**6) / norm
    return QuadResult(pref * q.value, abs(pref) * q.error_estimate, q.evaluations, q.converged)


def london_sum(atom1: AtomModel, atom2: AtomModel, L) -> float:
    """Closed form ``-(3 / (2 L^6)) sum_{n,m} A_n A'_m / (E_n + E'_m)``."""
    _check_L(L)
    e1, a1 = atom1.energies, atom1.weights
    e2, a2 = atom2.energies, atom2.weights
    return -1.5 / L**6 * float(np.sum(np.outer(a1, a2) / (e1[:, None] + e2[None, :])))


def lorentzian_pair_integral(a, b):
    """``int_0^inf a/(a^2+x^2) b/(b^2+x^2) dx = (pi/2) / (a + b)``."""
    return 0.5 * math.pi / (a + b)


def eta_cp(atom: AtomModel, L, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Ratio of the full energy to its retarded limit for two identical atoms.

    ``(4/23) int_0^inf dK (alpha(iK/L)/alpha(0))^2 (K^4 + 2K^3 + 5K^2 + 6K + 3) e^{-2K}``;
    tends to 1 for ``L >> lambda_A`` and grows linearly in ``L`` below.
    """
    _check_L(L)
    a0 = atom.static_polarizability
    if not a0 > 0:
        raise ValidationError("atom", "static polarizability must be > 0")

    def f(u):
        ratio = atom.polarizability(u / L) / a0
        return ratio**2 * retardation_polynomial(u) * np.exp(-2.0 * u)

    q = integrate_semi_infinite(f, spec, scale=0.5)
    return q.value / UNIVERSAL_INTEGRAL
