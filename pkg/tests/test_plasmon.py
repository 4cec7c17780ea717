import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import OMEGA_P, plasma_cavity
from casimir_kit.errors import PlasmonPoleError, ValidationError
from casimir_kit.lifshitz import casimir_force, casimir_force_ideal, eta_F
from casimir_kit.model import PlasmaMirror
from casimir_kit.plasma_optics import Polarization, reflection_imaginary
from casimir_kit.plasmon import (
    PlasmonPair,
    Regime,
    alpha_coefficient,
    asymptotic_force,
    coupled_plasmon_frequencies,
    double_factorial_ratios,
    lorentzian_r_tm,
    lorentzian_r_tm_imaginary,
    plasmon_moment_In,
    plasmon_series_sum,
    plasmon_shift_energy,
    rho_tm_lorentzian,
    short_distance_energy_series,
    zero_point_shift,
)
from casimir_kit.quadrature import QuadratureSpec, integrate_semi_infinite

UNIT = PlasmaMirror(1.0)
WS = 1 / math.sqrt(2)


def double_factorial(n):
    return math.prod(range(n, 0, -2))


def exact_term(n):
    return Fraction(double_factorial(4 * n - 3), double_factorial(4 * n - 2)) / n**3


def test_lorentzian_amplitude():
    assert lorentzian_r_tm_imaginary(0.0, UNIT) == -1.0
    assert lorentzian_r_tm_imaginary(WS, UNIT) == pytest.approx(-0.5, rel=1e-15)
    assert lorentzian_r_tm(1j * WS, UNIT) == pytest.approx(-0.5, rel=1e-15)
    assert lorentzian_r_tm(0.0, UNIT) == -1.0
    with pytest.raises(PlasmonPoleError):
        lorentzian_r_tm(WS, UNIT)


def test_lorentzian_close_to_full_amplitude_at_large_k():
    xi = np.linspace(0, 1.0, 101)[:, None]  # up to omega_p
    k = 100.0 * (2 * math.pi) * np.array([1.0, 3.0, 10.0])[None, :]  # k lambda_P >= 100
    full = reflection_imaginary(xi, k, Polarization.TM, UNIT)
    approx = lorentzian_r_tm_imaginary(xi, UNIT)
    assert np.max(np.abs(full - approx)) < 0.01


def test_coupled_frequencies():
    plus, minus = coupled_plasmon_frequencies(0.0, 1.0, UNIT)
    assert plus == pytest.approx(math.sqrt(2) * WS) and minus == 0.0
    plus, minus = coupled_plasmon_frequencies(80.0, 1.0, UNIT)
    assert plus == pytest.approx(WS, rel=1e-15) and minus == pytest.approx(WS, rel=1e-15)
    pair = PlasmonPair(UNIT, 0.2)
    k = np.linspace(0, 50, 500)
    assert np.all(pair.omega_minus(k) <= pair.omega_s)
    assert np.all(pair.omega_s <= pair.omega_plus(k))
    np.testing.assert_allclose((pair.omega_plus(k) ** 2 + pair.omega_minus(k) ** 2) / 2, WS**2, rtol=1e-15)
    with pytest.raises(ValidationError):
        coupled_plasmon_frequencies(-1.0, 1.0, UNIT)


def test_pole_identity_on_random_modes():
    # rho at a rounded omega carries a relative error ~ eps * exp(k L), so keep k L <= 4
    rng = np.random.default_rng(6)
    k = rng.uniform(0.01, 2, 1000)
    L = rng.uniform(0.01, 2, 1000)
    plus, minus = coupled_plasmon_frequencies(k, L, UNIT)
    np.testing.assert_allclose(rho_tm_lorentzian(plus, k, L, UNIT), 1.0, rtol=1e-12)
    np.testing.assert_allclose(rho_tm_lorentzian(minus, k, L, UNIT), 1.0, rtol=1e-12)


def test_zero_point_shift_at_k0():
    assert zero_point_shift(0.0, 1.0, UNIT) == pytest.approx(0.5 * WS * (math.sqrt(2) - 2), rel=1e-15)
    x = np.linspace(0, 40, 400)
    assert np.all(zero_point_shift(x, 1.0, UNIT) < 0)


def test_double_factorial_ratios_exact():
    r = double_factorial_ratios(30)
    for n in range(1, 31):
        expected = Fraction(double_factorial(4 * n - 3), double_factorial(4 * n - 2))
        assert r[n - 1] == pytest.approx(float(expected), rel=1e-14)
    # no overflow far past where raw factorials would
    assert np.all(np.isfinite(double_factorial_ratios(10**5)))


def test_series_partial_sum_ratios():
    # the factored form 1 + 5/64 + 7/384 + ...
    assert exact_term(2) / exact_term(1) == Fraction(5, 64)
    assert exact_term(3) / exact_term(1) == Fraction(7, 384)
    r = double_factorial_ratios(3) / np.arange(1, 4) ** 3
    assert Fraction(r[1] / r[0]).limit_denominator(10**6) == Fraction(5, 64)
    assert Fraction(r[2] / r[0]).limit_denominator(10**6) == Fraction(7, 384)


def test_terms_positive_and_decreasing():
    r = double_factorial_ratios(1000) / np.arange(1, 1001) ** 3
    assert np.all(r > 0)
    assert np.all(np.diff(r) < 0)


def test_alpha():
    a = alpha_coefficient()
    assert abs(a - 1.193) < 0.001
    first = 30 / (math.sqrt(2) * math.pi**2) * 0.5
    assert first == pytest.approx(15 / (math.sqrt(2) * math.pi**2))
    assert first == pytest.approx(1.0747, abs=1e-4)
    # the n = 1 term carries about 90% of the total
    assert 0.85 < first / a < 0.95
    with pytest.raises(ValidationError):
        alpha_coefficient(0.0)


def test_series_sum_converged():
    s, n = plasmon_series_sum()
    s_tight, _ = plasmon_series_sum(tail_tol=1e-16)
    assert s == pytest.approx(s_tight, rel=1e-12)
    assert plasmon_series_sum(3)[0] == pytest.approx(float(sum(exact_term(i) for i in range(1, 4))), rel=1e-15)


@pytest.mark.parametrize("n", range(1, 11))
def test_moments_against_quadrature(n):
    def f(xi):
        return lorentzian_r_tm_imaginary(xi, UNIT) ** (2 * n) / (2 * math.pi)

    q = integrate_semi_infinite(f, QuadratureSpec(rel_tol=1e-13, abs_tol=1e-300), scale=WS)
    assert plasmon_moment_In(n, UNIT) == pytest.approx(q.value, rel=1e-10)


def test_first_moments():
    assert plasmon_moment_In(1, UNIT) == pytest.approx(WS / 8, rel=1e-15)
    assert plasmon_moment_In(2, UNIT) == pytest.approx(WS / 4 * 5 / 16, rel=1e-15)
    with pytest.raises(ValidationError):
        plasmon_moment_In(0, UNIT)


@settings(max_examples=10, deadline=None)
@given(x=st.floats(1e-4, 10.0))
def test_route_equivalence(x):
    cav = plasma_cavity(x)
    a = plasmon_shift_energy(cav).energy
    b = short_distance_energy_series(cav).energy
    assert a < 0
    assert a == pytest.approx(b, rel=1e-8)


def test_shift_energy_scaling():
    assert plasmon_shift_energy(plasma_cavity(0.02)).energy == pytest.approx(
        plasmon_shift_energy(plasma_cavity(0.01)).energy / 4, rel=1e-12
    )


def test_short_distance_limit_of_full_energy():
    # the plasmon picture is the L << lambda_P limit of the full integral
    from casimir_kit.lifshitz import casimir_energy

    cav = plasma_cavity(1e-4)
    assert plasmon_shift_energy(cav).energy == pytest.approx(casimir_energy(cav).energy, rel=2e-3)


def test_slope_of_eta_matches_alpha():
    x = 1e-3
    assert eta_F(plasma_cavity(x)) / x == pytest.approx(alpha_coefficient(), rel=0.02)


def test_te_negligible_at_short_distance():
    f = casimir_force(plasma_cavity(0.01))
    assert f.te / f.per_unit_area < 0.01


def test_asymptotic_forces():
    cav = plasma_cavity(0.01)
    long = asymptotic_force(cav, Regime.LONG)
    short = asymptotic_force(cav, "short")
    assert long.force == casimir_force_ideal(cav).force
    assert not long.diagnostics["valid"] and short.diagnostics["valid"]
    assert short.force / long.force == pytest.approx(alpha_coefficient() * 0.01, rel=1e-14)
    assert short.force == pytest.approx(casimir_force(cav).force, rel=0.03)
    assert asymptotic_force(plasma_cavity(20.0), Regime.LONG).diagnostics["valid"]
