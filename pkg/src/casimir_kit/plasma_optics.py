"""Fresnel reflection on a bulk plasma-model mirror (natural units, c = 1).

Sign convention for TM: ``r_TM = (kappa_m - eps kappa) / (kappa_m + eps kappa)``
so that ``r_TM -> -1`` at ``xi -> 0``.  Both polarizations are therefore
negative on the imaginary axis and only the product ``r1 * r2`` enters
forces and energies; conventions with ``r_TM -> +1`` give identical physics.

All functions broadcast over numpy arrays.  A mirror argument may be a
:class:`~casimir_kit.model.PlasmaMirror`, a
:class:`~casimir_kit.model.PerfectMirror` where it makes sense, or a bare
plasma frequency ``omega_p >= 0`` (``0`` meaning no metal at all).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModeError, PlasmonPoleError, StaticLimitError, ValidationError

POLE_THRESHOLD = 1e-8


class Polarization(enum.Enum):
    TE = "TE"
    TM = "TM"


def _as_pol(p):
    if isinstance(p, Polarization):
        return p
    return Polarization(str(p).upper())


def plasma_frequency(mirror):
    """omega_p of ``mirror``; accepts a bare number >= 0."""
    if getattr(mirror, "perfect", False):
        raise ValidationError("mirror", "a perfect mirror has no plasma frequency")
    wp = getattr(mirror, "omega_p", mirror)
    wp = float(wp)
    if not math.isfinite(wp) or wp < 0:
        raise ValidationError("omega_p", f"must be finite and >= 0, got {wp!r}")
    return wp


@dataclass(frozen=True)
class Mode:
    """Vacuum mode at imaginary frequency ``xi`` with transverse wavevector ``k``."""

    xi: float
    k: float
    polarization: Polarization = Polarization.TM

    def __post_init__(self):
        if self.xi < 0 or self.k < 0:
            raise ValidationError("mode", "xi and k must be >= 0")
        object.__setattr__(self, "polarization", _as_pol(self.polarization))

    @property
    def kappa(self):
        return float(kappa_vacuum(self.xi, self.k))


@dataclass(frozen=True)
class RealEvanescentMode:
    """Real-frequency mode in the evanescent sector ``omega < c k``."""

    omega: float
    k: float
    polarization: Polarization = Polarization.TM

    def __post_init__(self):
        if not (self.omega > 0 and self.k - self.omega > 0):
            raise ValidationError("mode", "requires 0 < omega < c k")
        object.__setattr__(self, "polarization", _as_pol(self.polarization))

    @property
    def kappa(self):
        return math.sqrt(self.k**2 - self.omega**2)


def epsilon_plasma(xi, mirror):
    """Plasma dielectric function on the imaginary axis, ``1 + omega_p**2 / xi**2``."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise StaticLimitError("epsilon diverges at xi = 0; use the limiting amplitudes")
    wp = plasma_frequency(mirror)
    return 1.0 + (wp / xi) ** 2


def kappa_vacuum(xi, k):
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any((xi == 0) & (k == 0)):
        raise DegenerateModeError("kappa vanishes for xi = k = 0")
    return np.hypot(k, xi)


def kappa_medium(xi, k, mirror):
    """``sqrt(k**2 + eps xi**2) = sqrt(k**2 + xi**2 + omega_p**2)``, finite at xi = 0."""
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(k, dtype=float)
    wp = plasma_frequency(mirror)
    return np.sqrt(k**2 + xi**2 + wp**2)


def log_abs_reflection(xi, k, polarization, mirror):
    """``log|r|`` on the imaginary axis, accurate when ``|r|`` is close to 1.

    The loop function is assembled from these logarithms so that
    ``1 - rho`` keeps full relative precision near the corner
    ``xi, kappa -> 0`` where the TM amplitude tends to -1.
    """
    return log_abs_reflection_kappa(xi, kappa_vacuum(xi, k), polarization, mirror)


def log_abs_reflection_kappa(xi, kappa, polarization, mirror):
    """Same as :func:`log_abs_reflection` but parametrized by ``kappa >= xi``.

    Avoids forming ``k**2 = kappa**2 - xi**2``, which cancels badly on
    the wedge edge ``kappa ~ xi``.
    """
    pol = _as_pol(polarization)
    xi = np.asarray(xi, dtype=float)
    kap = np.asarray(kappa, dtype=float)
    if getattr(mirror, "perfect", False):
        return np.zeros(np.broadcast(xi, kap).shape)
    wp2 = plasma_frequency(mirror) ** 2
    km = np.sqrt(kap**2 + wp2)
    with np.errstate(divide="ignore", invalid="ignore"):
        if pol is Polarization.TE:
            return np.log1p(-2.0 * kap / (kap + km))
        xi2 = xi**2
        return np.log1p(-2.0 * xi2 * km / (xi2 * km + (xi2 + wp2) * kap))


def reflection_imaginary(xi, k, polarization, mirror):
    """Fresnel amplitude at ``omega = i xi``; real and in ``[-1, 0]``.

    At ``xi = 0`` the analytic limits are used (TM -> -1,
    TE -> ``(k - sqrt(k**2 + omega_p**2)) / (k + sqrt(...))``).
    """
    pol = _as_pol(polarization)
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(k, dtype=float)
    if getattr(mirror, "perfect", False):
        return -np.ones(np.broadcast(xi, k).shape)
    kap = kappa_vacuum(xi, k)
    km = kappa_medium(xi, k, mirror)
    if pol is Polarization.TE:
        return (kap - km) / (kap + km)
    # multiplied through by xi**2 so that xi = 0 needs no special casing
    wp2 = plasma_frequency(mirror) ** 2
    xi2 = xi**2
    num = xi2 * km - (xi2 + wp2) * kap
    den = xi2 * km + (xi2 + wp2) * kap
    return num / den


def reflection_real_evanescent(omega, k, polarization, mirror, threshold=POLE_THRESHOLD):
    """Fresnel amplitude at real ``omega < k`` (evanescent sector).

    TE stays within ``[-1, 0]``; TM diverges at the surface plasmon.
    Raises :class:`PlasmonPoleError` when ``|kappa_m + eps kappa|`` drops
    below ``threshold * omega_p``.
    """
    pol = _as_pol(polarization)
    omega = np.asarray(omega, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any(omega <= 0) or np.any(k - omega <= 0):
        raise ValidationError("mode", "requires 0 < omega < c k")
    wp = plasma_frequency(mirror)
    kap = np.sqrt(k**2 - omega**2)
    km = np.sqrt(k**2 - omega**2 + wp**2)
    if pol is Polarization.TE:
        return (kap - km) / (kap + km)
    eps = 1.0 - (wp / omega) ** 2
    den = km + eps * kap
    near = np.abs(den) < threshold * wp
    if np.any(near):
        k_bad = float(np.broadcast_to(k, near.shape)[near].flat[0])
        wpl = float(plasmon_frequency(k_bad, wp))
        raise PlasmonPoleError(
            f"TM amplitude evaluated within the pole window of omega_plasmon = {wpl!r}",
            omega_plasmon=wpl,
        )
    return (km - eps * kap) / den


def plasmon_frequency(k, mirror):
    """Surface plasmon frequency solving ``kappa_m + eps kappa = 0``.

    Rises from 0 at ``k = 0`` to ``omega_p / sqrt(2)`` as ``k -> inf``.
    Evaluated in the cancellation-free form
    ``2 wp^2 k^2 / (wp^2 + 2 k^2 + sqrt(wp^4 + 4 k^4))``.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValidationError("k", "must be >= 0")
    wp2 = plasma_frequency(mirror) ** 2
    k2 = k**2
    root = np.sqrt(wp2**2 + 4.0 * k2**2)
    return np.sqrt(2.0 * wp2 * k2 / (wp2 + 2.0 * k2 + root))


def brewster_frequency(k, mirror):
    """Frequency where ``kappa_m**2 = eps**2 kappa**2`` (vanishing TM amplitude)."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValidationError("k", "must be >= 0")
    wp2 = plasma_frequency(mirror) ** 2
    k2 = k**2
    return np.sqrt((wp2 + 2.0 * k2 + np.sqrt(wp2**2 + 4.0 * k2**2)) / 2.0)


def tm_denominator_real(omega, k, mirror):
    """``kappa_m + eps kappa`` at real frequency, used to locate the plasmon pole."""
    omega = np.asarray(omega, dtype=float)
    k = np.asarray(k, dtype=float)
    wp = plasma_frequency(mirror)
    kap = np.sqrt(k**2 - omega**2)
    km = np.sqrt(k**2 - omega**2 + wp**2)
    eps = 1.0 - (wp / omega) ** 2
    return km + eps * kap
