"""Short-distance asymptotics: coupled surface plasmons and the alpha series.

For ``L << lambda_P`` only TM modes with ``kappa ~ k`` matter and the TM
amplitude reduces to the Lorentzian ``omega_s^2 / (omega^2 - omega_s^2)``
with ``omega_s = omega_p / sqrt(2)``.  Two such mirrors form coupled modes
``omega_s sqrt(1 +- exp(-k L))``, and the interaction energy is the shift
of their zero-point energies.  Expanding ``log(1 - rho)`` instead gives a
series in the moments ``I_n`` whose sum fixes the slope ``alpha`` of the
force reduction factor at short distance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import PlasmonPoleError, ValidationError
from .lifshitz import ForceResult, EnergyResult, casimir_force_ideal
from .model import CavityConfig, PlasmaMirror
from .plasma_optics import plasma_frequency
from .quadrature import DEFAULT_SPEC, QuadResult, QuadratureSpec, integrate_semi_infinite, sum_until

SERIES_TAIL_TOL = 5e-15


class Regime(enum.Enum):
    LONG = "long"
    SHORT = "short"


def surface_plasmon_frequency(mirror):
    return plasma_frequency(mirror) / math.sqrt(2.0)


def lorentzian_r_tm(omega, mirror):
    """Short-distance TM amplitude ``omega_s^2 / (omega^2 - omega_s^2)``.

    ``omega`` may be complex; pass ``1j * xi`` for the imaginary axis, where
    the result is real and lies in ``[-1, 0]``.
    """
    ws2 = surface_plasmon_frequency(mirror) ** 2
    omega = np.asarray(omega)
    den = omega**2 - ws2
    if np.any(den == 0):
        raise PlasmonPoleError("Lorentzian amplitude evaluated at omega = omega_s", math.sqrt(ws2))
    r = ws2 / den
    return np.real_if_close(r, tol=1)


def lorentzian_r_tm_imaginary(xi, mirror):
    ws2 = surface_plasmon_frequency(mirror) ** 2
    xi = np.asarray(xi, dtype=float)
    return -ws2 / (xi**2 + ws2)


def rho_tm_lorentzian(omega, k, L, mirror):
    """Open loop function of two identical Lorentzian mirrors."""
    return lorentzian_r_tm(omega, mirror) ** 2 * np.exp(-2.0 * np.asarray(k) * L)


def coupled_plasmon_frequencies(k, L, mirror):
    """``(omega_plus, omega_minus) = omega_s sqrt(1 +- exp(-k L))``."""
    k = np.asarray(k, dtype=float)
    L = np.asarray(L, dtype=float)
    if np.any(k < 0) or not np.all(L > 0):
        raise ValidationError("k, L", "require k >= 0 and L > 0")
    ws = surface_plasmon_frequency(mirror)
    return ws * np.sqrt(1.0 + np.exp(-k * L)), ws * np.sqrt(-np.expm1(-k * L))


@dataclass(frozen=True)
class PlasmonPair:
    """Surface plasmons of two identical mirrors facing each other at distance ``L``."""

    mirror: PlasmaMirror
    L: float

    @property
    def omega_s(self):
        return surface_plasmon_frequency(self.mirror)

    def omega_plus(self, k):
        return coupled_plasmon_frequencies(k, self.L, self.mirror)[0]

    def omega_minus(self, k):
        return coupled_plasmon_frequencies(k, self.L, self.mirror)[1]


def zero_point_shift(k, L, mirror):
    """``(omega_+ + omega_- - 2 omega_s) / 2`` per transverse mode (hbar = 1)."""
    ws = surface_plasmon_frequency(mirror)
    return 0.5 * ws * _shift_kernel(np.asarray(k, dtype=float) * L)


def _shift_kernel(x):
    # sqrt(1+y) + sqrt(1-y) - 2 with y = exp(-x), rewritten as
    # -2 y^2 / ((sp + 1)(sm + 1)(sp + sm)) so nothing cancels at large x
    y = np.exp(-x)
    sp = np.sqrt(1.0 + y)
    sm = np.sqrt(-np.expm1(-x))
    return -2.0 * y**2 / ((sp + 1.0) * (sm + 1.0) * (sp + sm))


def _require_identical_plasma(cavity):
    if not cavity.identical_mirrors or cavity.mirror1.perfect:
        raise ValidationError("cavity", "requires two identical plasma mirrors")
    return cavity.mirror1


def plasmon_shift_energy(cavity: CavityConfig, spec: QuadratureSpec = DEFAULT_SPEC) -> EnergyResult:
    """Energy as the zero-point shift of the coupled plasmons.

    ``E/A = int d^2k/(4 pi^2) (omega_+ + omega_- - 2 omega_s)/2``, evaluated
    as ``omega_s / (4 pi L^2) int_0^inf x (sqrt(1+e^-x) + sqrt(1-e^-x) - 2) dx``.
    """
    mirror = _require_identical_plasma(cavity)
    L = cavity.separation_L
    q = integrate_semi_infinite(lambda x: x * _shift_kernel(x), spec)
    pref = surface_plasmon_frequency(mirror) / (4.0 * math.pi * L**2)
    e = pref * q.value
    quad = QuadResult(e, pref * q.error_estimate, q.evaluations, q.converged)
    return EnergyResult(e * cavity.area_A, e, quad, te=0.0, tm=e)


def double_factorial_ratios(n_max):
    """``(4n-3)!! / (4n-2)!!`` for ``n = 1 .. n_max`` by ratio accumulation."""
    n = np.arange(2, n_max + 1, dtype=float)
    steps = (4 * n - 3) * (4 * n - 5) / ((4 * n - 2) * (4 * n - 4))
    return 0.5 * np.concatenate([[1.0], np.cumprod(steps)])


class _SeriesTerms:
    """``(1/n^3) (4n-3)!!/(4n-2)!!`` with the ratio carried between calls."""

    def __init__(self):
        self.n = 1
        self.ratio = 0.5

    def __call__(self, n):
        while self.n < n:
            self.n += 1
            m = self.n
            self.ratio *= (4 * m - 3) * (4 * m - 5) / ((4 * m - 2) * (4 * m - 4))
        if n != self.n:
            raise ValueError("terms must be requested in increasing order")
        return self.ratio / n**3


def plasmon_series_sum(n_terms=None, tail_tol=SERIES_TAIL_TOL):
    """``sum_n (1/n^3) (4n-3)!!/(4n-2)!!``; returns ``(value, n_used)``.

    With ``n_terms`` the plain partial sum is returned, otherwise terms are
    added until they drop below ``tail_tol`` and a tail estimate is added.
    """
    if n_terms is not None:
        n = np.arange(1, int(n_terms) + 1, dtype=float)
        return float(np.sum(double_factorial_ratios(int(n_terms)) / n**3)), int(n_terms)
    return sum_until(_SeriesTerms(), tail_tol)


def plasmon_moment_In(n, mirror):
    """``I_n = int_0^inf dxi/(2 pi) r_TM(i xi)^(2n) = (omega_s/4) (4n-3)!!/(4n-2)!!``."""
    n = int(n)
    if n < 1:
        raise ValidationError("n", "must be >= 1")
    return surface_plasmon_frequency(mirror) / 4.0 * double_factorial_ratios(n)[-1]


def short_distance_energy_series(cavity: CavityConfig, n_terms=None) -> EnergyResult:
    """``E/A = -(1 / (16 sqrt(2) L^2 lambda_P)) sum_n (1/n^3) (4n-3)!!/(4n-2)!!``."""
    mirror = _require_identical_plasma(cavity)
    L = cavity.separation_L
    s, used = plasmon_series_sum(n_terms)
    e = -s / (16.0 * math.sqrt(2.0) * L**2 * mirror.lambda_p)
    quad = QuadResult(e, abs(e) * SERIES_TAIL_TOL if n_terms is None else math.nan, used, n_terms is None)
    return EnergyResult(e * cavity.area_A, e, quad, te=0.0, tm=e, diagnostics={"n_terms": used})


def alpha_coefficient(tail_tol=SERIES_TAIL_TOL):
    """Short-distance slope of eta_F, ``(30 / (sqrt(2) pi^2)) sum_n ...``, about 1.193."""
    if not tail_tol > 0:
        raise ValidationError("tail_tol", "must be > 0")
    s, _ = plasmon_series_sum(tail_tol=tail_tol)
    return 30.0 / (math.sqrt(2.0) * math.pi**2) * s


def asymptotic_force(cavity: CavityConfig, regime) -> ForceResult:
    """Long-distance (ideal) or short-distance (``alpha L / lambda_P``) force law."""
    regime = Regime(regime.lower() if isinstance(regime, str) else regime)
    ideal = casimir_force_ideal(cavity)
    x = cavity.reduced_distance
    if regime is Regime.LONG:
        return ForceResult(ideal.force, ideal.per_unit_area, ideal.quad, diagnostics={"valid": x >= 10})
    _require_identical_plasma(cavity)
    p = alpha_coefficient() * x * ideal.per_unit_area
    return ForceResult(
        p * cavity.area_A, p, QuadResult.analytic(p), te=0.0, tm=p, diagnostics={"valid": x <= 0.1}
    )
