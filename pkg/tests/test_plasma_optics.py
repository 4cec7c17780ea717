import math

import numpy as np
import pytest

from casimir_kit.errors import DegenerateModeError, PlasmonPoleError, StaticLimitError, ValidationError
from casimir_kit.model import PerfectMirror, PlasmaMirror
from casimir_kit.plasma_optics import (
    Mode,
    Polarization,
    RealEvanescentMode,
    brewster_frequency,
    epsilon_plasma,
    kappa_medium,
    kappa_vacuum,
    log_abs_reflection,
    plasmon_frequency,
    reflection_imaginary,
    reflection_real_evanescent,
    tm_denominator_real,
)

TE, TM = Polarization.TE, Polarization.TM
UNIT = PlasmaMirror(1.0)  # omega_p = c = 1


def test_epsilon():
    assert epsilon_plasma(1.0, UNIT) == 2.0
    assert epsilon_plasma(0.5, UNIT) == 5.0
    assert epsilon_plasma(1e9, UNIT) == pytest.approx(1.0)
    xi = np.linspace(0.1, 10, 100)
    assert np.all(np.diff(epsilon_plasma(xi, UNIT)) < 0)
    with pytest.raises(StaticLimitError):
        epsilon_plasma(0.0, UNIT)


def test_kappas():
    assert kappa_vacuum(4.0, 3.0) == 5.0
    assert kappa_vacuum(0.0, 2.5) == 2.5
    assert kappa_vacuum(1.5, 0.0) == 1.5
    assert Mode(4.0, 3.0).kappa == 5.0
    with pytest.raises(DegenerateModeError):
        kappa_vacuum(0.0, 0.0)
    assert kappa_medium(0.0, 0.0, UNIT) == 1.0
    assert kappa_medium(1.0, 1.0, UNIT) == pytest.approx(math.sqrt(3.0), rel=1e-15)
    assert kappa_medium(0.3, 0.7, 0.0) == pytest.approx(kappa_vacuum(0.3, 0.7))


def test_reflection_examples():
    te = reflection_imaginary(0.0, 1.0, TE, UNIT)
    assert te == pytest.approx(-(3 - 2 * math.sqrt(2)), rel=1e-14)
    tm = reflection_imaginary(1.0, 1.0, TM, UNIT)
    s3, s8 = math.sqrt(3), math.sqrt(8)
    assert tm == pytest.approx((s3 - s8) / (s3 + s8), rel=1e-14)
    assert reflection_imaginary(0.0, 2.0, TM, UNIT) == -1.0
    assert reflection_imaginary(1e-8, 2.0, TM, UNIT) == pytest.approx(-1.0, abs=1e-14)
    for pol in (TE, TM):
        assert reflection_imaginary(0.7, 0.4, pol, 0.0) == 0.0
        assert reflection_imaginary(0.7, 0.4, pol, PerfectMirror()) == -1.0


def test_transparency_at_high_frequency():
    k = np.linspace(0.0, 1.0, 11)
    for pol in (TE, TM):
        r = reflection_imaginary(100.0, k, pol, UNIT)
        assert np.all(np.abs(r) < 1e-3)
        xi = np.geomspace(10, 1e4, 50)
        assert np.all(np.diff(np.abs(reflection_imaginary(xi, 0.5, pol, UNIT))) < 0)


def test_passivity_on_imaginary_axis():
    rng = np.random.default_rng(1)
    xi = 10 ** rng.uniform(-4, 3, 10**4)
    k = 10 ** rng.uniform(-4, 3, 10**4)
    for pol in (TE, TM):
        r = reflection_imaginary(xi, k, pol, UNIT)
        assert np.all(np.abs(r) <= 1.0)
        assert np.all(r <= 0.0)


def test_log_reflection_matches_direct_amplitude():
    rng = np.random.default_rng(2)
    xi = 10 ** rng.uniform(-3, 2, 1000)
    k = 10 ** rng.uniform(-3, 2, 1000)
    for pol in (TE, TM):
        direct = np.log(np.abs(reflection_imaginary(xi, k, pol, UNIT)))
        np.testing.assert_allclose(log_abs_reflection(xi, k, pol, UNIT), direct, rtol=1e-10, atol=1e-13)


def test_evanescent_te_passive():
    rng = np.random.default_rng(3)
    k = 10 ** rng.uniform(-3, 2, 10**4)
    omega = k * rng.uniform(1e-6, 1 - 1e-9, k.size)
    r = reflection_real_evanescent(omega, k, TE, UNIT)
    assert np.all(np.abs(r) <= 1.0)


def test_evanescent_tm_exceeds_unity_near_plasmon():
    k = 3.0
    wpl = float(plasmon_frequency(k, UNIT))
    omega = wpl * (1 + np.array([-1e-3, -1e-4, 1e-4, 1e-3]))
    r = reflection_real_evanescent(omega, k, TM, UNIT)
    assert np.max(np.abs(r)) > 1.0
    with pytest.raises(PlasmonPoleError) as info:
        reflection_real_evanescent(wpl, k, TM, UNIT)
    assert info.value.omega_plasmon == pytest.approx(wpl)
    assert reflection_real_evanescent(0.5, 1.0, TM, 0.0) == 0.0


def test_evanescent_mode_validation():
    with pytest.raises(ValidationError):
        RealEvanescentMode(2.0, 1.0)
    assert RealEvanescentMode(0.6, 1.0).kappa == pytest.approx(0.8)


def test_plasmon_frequency_examples():
    assert plasmon_frequency(0.0, UNIT) == 0.0
    assert plasmon_frequency(1.0, UNIT) == pytest.approx(math.sqrt((3 - math.sqrt(5)) / 2), rel=1e-14)
    assert plasmon_frequency(1.0, UNIT) == pytest.approx(0.6180340, abs=1e-7)
    assert plasmon_frequency(1e8, UNIT) == pytest.approx(1 / math.sqrt(2), rel=1e-12)


def test_plasmon_frequency_shape():
    k = np.linspace(1e-3, 20, 1000)
    w = plasmon_frequency(k, UNIT)
    assert np.all(np.diff(w) > 0)
    assert np.all(w < k)
    assert np.all(w < brewster_frequency(k, UNIT))


def test_plasmon_denominator_vanishes():
    k = np.linspace(0.1, 10, 200)
    w = plasmon_frequency(k, UNIT)
    # scale of each term in kappa_m + eps kappa
    kap = np.sqrt(k**2 - w**2)
    km = np.sqrt(k**2 - w**2 + 1.0)
    residual = np.abs(tm_denominator_real(w, k, UNIT)) / km
    assert np.max(residual) < 1e-9
    assert np.all(kap > 0)


def test_brewster():
    assert brewster_frequency(0.0, UNIT) == 1.0
    assert brewster_frequency(1.0, UNIT) == pytest.approx(math.sqrt((3 + math.sqrt(5)) / 2), rel=1e-14)
    rng = np.random.default_rng(4)
    k = rng.uniform(0, 10, 500)
    w = brewster_frequency(k, UNIT)
    # eps w^2 = w^2 - omega_p^2, written out to keep the check itself cancellation-free
    eps = 1 - 1 / w**2
    km2 = k**2 - w**2 + 1.0
    kap2 = k**2 - w**2
    rel = np.abs(km2 - eps**2 * kap2) / (k**2 + w**2 + 1.0)
    assert np.max(rel) < 1e-10
