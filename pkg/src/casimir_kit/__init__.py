"""Casimir forces between plasma-model mirrors and between atoms.

Natural units (hbar = c = 1) throughout; see :mod:`casimir_kit.model`
for the conversion to and from SI.
"""

__version__ = "0.1.0"

from .casimir_polder import cp_energy, cp_retarded, eta_cp, london_energy, london_sum
from .errors import (
    CasimirError,
    DegenerateModeError,
    DivergenceError,
    LoopInstabilityError,
    PlasmonPoleError,
    QuadratureEvaluationError,
    StaticLimitError,
    ValidationError,
)
from .lifshitz import (
    EnergyResult,
    ForceResult,
    casimir_energy,
    casimir_energy_ideal,
    casimir_force,
    casimir_force_ideal,
    energy_from_force,
    eta_E,
    eta_F,
    sphere_plane_force,
)
from .model import (
    AtomModel,
    CavityConfig,
    PerfectMirror,
    PlasmaMirror,
    SphereConfig,
    UnitSystem,
    from_natural,
    to_natural,
)
from .plasma_optics import Mode, Polarization, RealEvanescentMode, reflection_imaginary
from .plasmon import (
    PlasmonPair,
    Regime,
    alpha_coefficient,
    asymptotic_force,
    plasmon_shift_energy,
    short_distance_energy_series,
)
from .quadrature import QuadratureSpec, QuadResult, Transform
