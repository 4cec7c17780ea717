import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir_kit.casimir_polder import (
    UNIVERSAL_INTEGRAL,
    cp_energy,
    cp_retarded,
    eta_cp,
    london_energy,
    london_sum,
    lorentzian_pair_integral,
    retardation_polynomial,
)
from casimir_kit.errors import ValidationError
from casimir_kit.model import AtomModel
from casimir_kit.quadrature import QuadratureSpec, Transform, integrate_semi_infinite


def random_atom(rng, max_transitions=5):
    n = rng.integers(1, max_transitions + 1)
    return AtomModel(tuple(zip(10 ** rng.uniform(-1, 1, n), 10 ** rng.uniform(-1, 1, n))))


def test_universal_integral():
    q = integrate_semi_infinite(lambda u: retardation_polynomial(u) * np.exp(-2 * u))
    assert abs(q.value - UNIVERSAL_INTEGRAL) < 1e-10
    assert UNIVERSAL_INTEGRAL == 5.75


def test_pair_integral_identity():
    rng = np.random.default_rng(7)
    for a, b in 10 ** rng.uniform(-2, 2, (100, 2)):
        q = integrate_semi_infinite(
            lambda x: a / (a**2 + x**2) * b / (b**2 + x**2),
            QuadratureSpec(rel_tol=1e-12, abs_tol=1e-300),
            scale=min(a, b),
        )
        assert q.value == pytest.approx(lorentzian_pair_integral(a, b), rel=1e-10)


def test_retarded_examples():
    atom = AtomModel.single(1.0, 1.0)  # alpha(0) = 1
    assert cp_retarded(atom, atom, 1.0) == pytest.approx(-23 / (4 * math.pi), rel=1e-15)
    assert cp_retarded(atom, atom, 1.0) == pytest.approx(-1.830282, abs=1e-6)
    assert cp_retarded(atom, atom, 2.0) == pytest.approx(cp_retarded(atom, atom, 1.0) / 128, rel=1e-15)


def test_london_examples():
    E, A, L = 2.0, 0.7, 1.3
    atom = AtomModel.single(E, A)
    expected = -3 * A**2 / (4 * E * L**6)
    assert london_sum(atom, atom, L) == pytest.approx(expected, rel=1e-15)
    assert london_energy(atom, atom, L).value == pytest.approx(expected, rel=1e-10)
    assert london_energy(atom, atom, 2 * L).value == pytest.approx(london_energy(atom, atom, L).value / 64, rel=1e-12)


def test_london_identity_random_pairs():
    rng = np.random.default_rng(8)
    for _ in range(20):
        a, b = random_atom(rng), random_atom(rng)
        L = 10 ** rng.uniform(-2, 1)
        q = london_energy(a, b, L)
        assert q.converged
        assert q.value == pytest.approx(london_sum(a, b, L), rel=1e-10)


def test_london_ignores_exp_map_request():
    atom = AtomModel(((0.5, 1.0), (3.0, 0.2)))
    q = london_energy(atom, atom, 1.0, QuadratureSpec(transform=Transform.EXP_MAP))
    assert q.value == pytest.approx(london_sum(atom, atom, 1.0), rel=1e-10)


def test_zero_polarizability():
    silent = AtomModel(((1.0, 0.0), (2.0, 0.0)))
    other = AtomModel.single(1.0, 1.0)
    assert cp_energy(silent, other, 1.0).value == 0.0
    assert london_sum(silent, other, 1.0) == 0.0
    assert london_energy(silent, silent, 1.0).value == 0.0
    with pytest.raises(ValidationError):
        eta_cp(silent, 1.0)


def test_limits_of_full_energy(hydrogen_like):
    lam = hydrogen_like.lambda_a
    far = cp_energy(hydrogen_like, hydrogen_like, 100 * lam).value
    assert far == pytest.approx(cp_retarded(hydrogen_like, hydrogen_like, 100 * lam), rel=0.01)
    near = cp_energy(hydrogen_like, hydrogen_like, lam / 100).value
    assert near == pytest.approx(london_sum(hydrogen_like, hydrogen_like, lam / 100), rel=0.01)


def test_symmetry_and_monotonicity():
    rng = np.random.default_rng(9)
    a, b = random_atom(rng), random_atom(rng)
    Ls = np.geomspace(0.01, 100, 30)
    e = np.array([cp_energy(a, b, L).value for L in Ls])
    assert np.all(e < 0)
    assert np.all(np.diff(e) > 0)
    for L in Ls[::7]:
        assert cp_energy(a, b, L).value == cp_energy(b, a, L).value
        ratio = cp_energy(a, b, L).value / cp_retarded(a, b, L)
        assert 0 < ratio <= 1 + 1e-12


@settings(max_examples=25, deadline=None)
@given(L=st.floats(1e-3, 1e3), s=st.floats(0.1, 10))
def test_power_laws(L, s):
    atom = AtomModel(((1.0, 1.0), (4.0, 0.5)))
    assert cp_retarded(atom, atom, s * L) == pytest.approx(cp_retarded(atom, atom, L) / s**7, rel=1e-13)
    assert london_sum(atom, atom, s * L) == pytest.approx(london_sum(atom, atom, L) / s**6, rel=1e-13)


def test_eta_cp(hydrogen_like):
    lam = hydrogen_like.lambda_a
    assert eta_cp(hydrogen_like, 100 * lam) == pytest.approx(1.0, abs=0.02)
    r = eta_cp(hydrogen_like, lam / 100) / eta_cp(hydrogen_like, lam / 200)
    assert r == pytest.approx(2.0, rel=0.02)
    L = 0.37
    assert eta_cp(hydrogen_like, L) == pytest.approx(
        cp_energy(hydrogen_like, hydrogen_like, L).value / cp_retarded(hydrogen_like, hydrogen_like, L), rel=1e-9
    )


def test_frequency_independent_polarizability():
    # E -> infinity at fixed A/E: alpha is flat and eta_CP = 1 at every distance
    big = AtomModel.single(1e12, 1e12)
    for L in (1e-3, 1.0, 1e3):
        assert eta_cp(big, L) == pytest.approx(1.0, rel=1e-10)


def test_invalid_distance(hydrogen_like):
    for bad in (0.0, -1.0, math.inf):
        with pytest.raises(ValidationError):
            cp_energy(hydrogen_like, hydrogen_like, bad)
