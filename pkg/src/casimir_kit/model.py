"""Physical constants, unit handling and the configuration records.

Every physics routine in the package works in natural units where
hbar = c = 1.  Lengths are then measured in an arbitrary unit ``ell``
(by default the plasma wavelength of the first mirror), frequencies
and wavevectors in ``1/ell``, energies in ``hbar c / ell`` and forces in
``hbar c / ell**2``.  SI values only appear at the I/O boundary through
:func:`to_natural` / :func:`from_natural` and the ``*_to_si`` helpers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import ValidationError

HBAR = 1.054571817e-34  # J s
C = 299792458.0  # m / s
EV = 1.602176634e-19  # J
ANGSTROM = 1e-10  # m
HBAR_C = HBAR * C  # J m


class UnitSystem(enum.Enum):
    NATURAL = "natural"
    SI = "si"


def _check_positive(field, value):
    if not (isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value)):
        raise ValidationError(field, f"must be a finite number, got {value!r}")
    if value <= 0:
        raise ValidationError(field, f"must be > 0, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class PlasmaMirror:
    """Bulk metallic mirror described by the lossless plasma model.

    ``omega_p`` is an angular frequency in rad/s (SI) or an inverse
    length (natural units, c = 1).
    """

    omega_p: float
    perfect = False

    def __post_init__(self):
        object.__setattr__(self, "omega_p", _check_positive("omega_p", self.omega_p))

    @property
    def lambda_p(self):
        """Plasma wavelength 2 pi c / omega_p, expressed in natural units."""
        return 2.0 * math.pi / self.omega_p

    @property
    def lambda_p_si(self):
        """Plasma wavelength in metres, assuming ``omega_p`` is in rad/s."""
        return 2.0 * math.pi * C / self.omega_p

    @property
    def omega_s(self):
        """Large-k surface plasmon frequency omega_p / sqrt(2)."""
        return self.omega_p / math.sqrt(2.0)

    @classmethod
    def from_lambda_p(cls, lambda_p, units=UnitSystem.NATURAL):
        lambda_p = _check_positive("lambda_p", lambda_p)
        c = C if units is UnitSystem.SI else 1.0
        return cls(2.0 * math.pi * c / lambda_p)


@dataclass(frozen=True)
class PerfectMirror:
    """Perfect reflector: r = -1 for both polarizations at every frequency.

    The sign matches the omega_p -> infinity limit of the plasma
    amplitudes, so mixed perfect/plasma cavities stay physical.
    """

    perfect = True


Mirror = Union[PlasmaMirror, PerfectMirror]


@dataclass(frozen=True)
class CavityConfig:
    """Two plane mirrors a distance ``separation_L`` apart, with area ``area_A``."""

    mirror1: Mirror
    mirror2: Mirror
    separation_L: float
    area_A: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "separation_L", _check_positive("separation_L", self.separation_L))
        object.__setattr__(self, "area_A", _check_positive("area_A", self.area_A))
        for name in ("mirror1", "mirror2"):
            if not isinstance(getattr(self, name), (PlasmaMirror, PerfectMirror)):
                raise ValidationError(name, "must be a PlasmaMirror or PerfectMirror")

    @classmethod
    def identical(cls, mirror, separation_L, area_A=1.0):
        return cls(mirror, mirror, separation_L, area_A)

    @property
    def identical_mirrors(self):
        return self.mirror1 == self.mirror2

    @property
    def small_area(self):
        """True when A < L**2, i.e. outside the large-plate regime."""
        return self.area_A < self.separation_L**2

    @property
    def reduced_distance(self):
        """L / lambda_P of the first mirror (natural units)."""
        if self.mirror1.perfect:
            return math.inf
        return self.separation_L / self.mirror1.lambda_p

    def with_separation(self, L):
        return replace(self, separation_L=L)


@dataclass(frozen=True)
class AtomModel:
    """Ground-state atom described by transitions ``(E_n, A_n)``.

    The dynamic polarizability on the imaginary axis reads
    ``alpha(i c kappa) = sum E_n A_n / (E_n**2 + kappa**2)`` in natural
    units; ``alpha(0) = sum A_n / E_n`` has the dimension of a volume.
    """

    transitions: tuple

    def __post_init__(self):
        rows = tuple((float(e), float(a)) for e, a in self.transitions)
        if not rows:
            raise ValidationError("transitions", "at least one transition is required")
        for i, (e, a) in enumerate(rows):
            _check_positive(f"transitions[{i}].E_n", e)
            if not math.isfinite(a) or a < 0:
                raise ValidationError(f"transitions[{i}].A_n", f"must be finite and >= 0, got {a!r}")
        object.__setattr__(self, "transitions", rows)

    @classmethod
    def single(cls, energy, weight):
        return cls(((energy, weight),))

    @property
    def energies(self):
        return np.array([e for e, _ in self.transitions])

    @property
    def weights(self):
        return np.array([a for _, a in self.transitions])

    @property
    def static_polarizability(self):
        return float(np.sum(self.weights / self.energies))

    @property
    def lambda_a(self):
        """Characteristic wavelength 2 pi / min(E_n) in natural units."""
        return 2.0 * math.pi / float(np.min(self.energies))

    def polarizability(self, kappa):
        """alpha(i c kappa), vectorized over ``kappa``."""
        kappa = np.asarray(kappa, dtype=float)
        e = self.energies.reshape((-1,) + (1,) * kappa.ndim)
        a = self.weights.reshape(e.shape)
        return np.sum(e * a / (e**2 + kappa**2), axis=0)


@dataclass(frozen=True)
class SphereConfig:
    radius_R: float
    closest_approach_L: float

    def __post_init__(self):
        object.__setattr__(self, "radius_R", _check_positive("radius_R", self.radius_R))
        object.__setattr__(
            self, "closest_approach_L", _check_positive("closest_approach_L", self.closest_approach_L)
        )

    @property
    def pfa_questionable(self):
        """True when L >= R, where the proximity approximation is doubtful."""
        return self.closest_approach_L >= self.radius_R


# --------------------------------------------------------------------------
# unit conversion


def natural_length_scale(config):
    """Default natural length unit, in metres, for an SI config."""
    if isinstance(config, CavityConfig):
        if config.mirror1.perfect:
            return config.separation_L
        return config.mirror1.lambda_p_si
    if isinstance(config, AtomModel):
        return 2.0 * math.pi * HBAR_C / float(np.min(config.energies))
    if isinstance(config, SphereConfig):
        return config.closest_approach_L
    if isinstance(config, (PlasmaMirror,)):
        return config.lambda_p_si
    raise TypeError(f"unsupported config type {type(config).__name__}")


def _scale_mirror(mirror, factor):
    if mirror.perfect:
        return mirror
    return PlasmaMirror(mirror.omega_p * factor)


def to_natural(config, units=UnitSystem.SI, length_scale=None):
    """Convert an SI config into natural units (hbar = c = 1).

    Lengths are divided by ``length_scale`` (metres; defaults to
    :func:`natural_length_scale`).  For a cavity this makes the first
    mirror's plasma wavelength equal to 1, hence ``omega_p = 2 pi``.
    Atom energies are given in joules and weights in J m^3.
    """
    if units is UnitSystem.NATURAL:
        return config
    ell = natural_length_scale(config) if length_scale is None else _check_positive(
        "length_scale", length_scale
    )
    if isinstance(config, CavityConfig):
        f = ell / C
        return CavityConfig(
            _scale_mirror(config.mirror1, f),
            _scale_mirror(config.mirror2, f),
            config.separation_L / ell,
            config.area_A / ell**2,
        )
    if isinstance(config, PlasmaMirror):
        return _scale_mirror(config, ell / C)
    if isinstance(config, AtomModel):
        return AtomModel(
            tuple((e * ell / HBAR_C, a / (HBAR_C * ell**2)) for e, a in config.transitions)
        )
    if isinstance(config, SphereConfig):
        return SphereConfig(config.radius_R / ell, config.closest_approach_L / ell)
    raise TypeError(f"unsupported config type {type(config).__name__}")


def from_natural(config, length_scale):
    """Inverse of :func:`to_natural` for the given length unit in metres."""
    ell = _check_positive("length_scale", length_scale)
    if isinstance(config, CavityConfig):
        f = C / ell
        return CavityConfig(
            _scale_mirror(config.mirror1, f),
            _scale_mirror(config.mirror2, f),
            config.separation_L * ell,
            config.area_A * ell**2,
        )
    if isinstance(config, PlasmaMirror):
        return _scale_mirror(config, C / ell)
    if isinstance(config, AtomModel):
        return AtomModel(
            tuple((e * HBAR_C / ell, a * HBAR_C * ell**2) for e, a in config.transitions)
        )
    if isinstance(config, SphereConfig):
        return SphereConfig(config.radius_R * ell, config.closest_approach_L * ell)
    raise TypeError(f"unsupported config type {type(config).__name__}")


def force_to_si(value, length_scale):
    return value * HBAR_C / length_scale**2


def energy_to_si(value, length_scale):
    return value * HBAR_C / length_scale


def pressure_to_si(value, length_scale):
    return value * HBAR_C / length_scale**4


# --------------------------------------------------------------------------
# file formats


def cavity_from_mapping(data):
    """Build an SI :class:`CavityConfig` from flat config keys.

    Exactly one of ``omega_p_rad_s`` / ``lambda_p_nm`` must be present,
    together with ``separation_nm`` and optionally ``area_um2``
    (default 1 um^2).
    """
    has_omega = "omega_p_rad_s" in data
    has_lambda = "lambda_p_nm" in data
    if has_omega == has_lambda:
        raise ValidationError("omega_p_rad_s|lambda_p_nm", "exactly one must be given")
    if has_omega:
        mirror = PlasmaMirror(float(data["omega_p_rad_s"]))
    else:
        mirror = PlasmaMirror.from_lambda_p(float(data["lambda_p_nm"]) * 1e-9, UnitSystem.SI)
    if "separation_nm" not in data:
        raise ValidationError("separation_nm", "missing")
    return CavityConfig.identical(
        mirror, float(data["separation_nm"]) * 1e-9, float(data.get("area_um2", 1.0)) * 1e-12
    )


def load_cavity_file(path):
    """Read a TOML cavity file (see :func:`cavity_from_mapping`)."""
    try:
        import tomllib as tomli
    except ModuleNotFoundError:  # Python < 3.11
        import tomli

    with open(path, "rb") as fh:
        return cavity_from_mapping(tomli.load(fh))


def atom_from_rows(rows: Sequence[Sequence[float]], units=UnitSystem.SI):
    """Atom from ``(E_n [eV], A_n [eV Angstrom^3])`` rows.

    With ``units=SI`` the result holds joules and J m^3, ready for
    :func:`to_natural`; with ``NATURAL`` the rows are taken verbatim.
    """
    if units is UnitSystem.NATURAL:
        return AtomModel(tuple(tuple(r) for r in rows))
    return AtomModel(tuple((e * EV, a * EV * ANGSTROM**3) for e, a in rows))


def load_atom_file(path, units=UnitSystem.SI):
    """Whitespace/comma separated two-column file, ``#`` starts a comment."""
    text = Path(path).read_text().replace(",", " ")
    rows = np.loadtxt(text.splitlines(), ndmin=2)
    if rows.shape[1] != 2:
        raise ValidationError(str(path), "atom file rows must have exactly two columns")
    return atom_from_rows(rows.tolist(), units)
