import math

import numpy as np
import pytest

from conekit.asymptotics import (
    SymbolSamples,
    diffraction_coefficient_mode,
    diffraction_kernel,
    mode_symbol,
    phg_fit,
    verify_theorem_1_1,
    verify_theorem_1_2,
)
from conekit.errors import (
    GeometricPairRejected,
    NonPositiveParameter,
    RegimeViolation,
    WindowTooWide,
)
from conekit.scattering import scattering_eigenvalue, scattering_kernel
from conftest import mode_with_nu


def _synthetic(coeffs, step, lam=None):
    if lam is None:
        lam = np.geomspace(10.0, 1.0e4, 240)
    vals = sum(c * lam ** (-k * step) for k, c in enumerate(coeffs))
    return SymbolSamples(base=(0, 1.0, 1.0), lambda_grid=lam, values=vals.astype(complex))


def test_phg_fit_synthetic_roundtrip():
    coeffs = [1.2 - 0.7j, -0.4 + 0.1j, 2.0j, 0.9, -1.5 + 0.5j]
    fit = phg_fit(_synthetic(coeffs, 1.0), step=1.0, depth=3)
    for got, want in zip(fit.coeffs, coeffs[:4]):
        assert abs(got - want) < 1e-6
    # held-out remainder after depth 3 is the lambda^-4 term: slope -4
    assert fit.decay_slope == pytest.approx(-4.0, abs=0.05)
    assert fit.remainder_norms[0] > fit.remainder_norms[3]


def test_phg_fit_detects_half_power_contamination():
    # negative control: a genuine lambda^{-1/2} term must show up in the
    # half-step ladder (one-step polyhomogeneity would force it to ~0)
    lam = np.geomspace(10.0, 1.0e4, 240)
    clean = _synthetic([1.0, 0.3, -0.2], 1.0, lam)
    dirty = SymbolSamples(
        base=(0, 1.0, 1.0),
        lambda_grid=lam,
        values=clean.values + 0.05 * lam**-0.5,
    )
    fit_clean = phg_fit(clean, step=0.5, depth=4)
    fit_dirty = phg_fit(dirty, step=0.5, depth=4)
    assert abs(fit_clean.coeffs[1]) < 1e-6
    assert abs(fit_dirty.coeffs[1] - 0.05) < 1e-6


def test_phg_fit_validation():
    good = _synthetic([1.0, 0.5], 1.0)
    with pytest.raises(NonPositiveParameter):
        phg_fit(good, step=0.25, depth=2)
    with pytest.raises(NonPositiveParameter):
        phg_fit(good, step=1.0, depth=9)
    short = _synthetic([1.0], 1.0, lam=np.geomspace(10.0, 100.0, 40))
    with pytest.raises(NonPositiveParameter):
        phg_fit(short, step=1.0, depth=2)  # only 1 decade


def test_mode_symbol_guards(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.5)
    with pytest.raises(RegimeViolation):
        mode_symbol(circle_4pi, mode, 1.0, 1.0, np.geomspace(2.0, 100.0, 40))
    with pytest.raises(WindowTooWide):
        mode_symbol(circle_4pi, mode, 1.0, 1.0, np.geomspace(10.0, 1000.0, 40),
                    window_periods=20.0)
    with pytest.raises(NonPositiveParameter):
        mode_symbol(circle_4pi, mode, 1.0, 1.0, np.array([100.0, 50.0]))


def test_mode_symbol_stable_under_lambda_max_doubling(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    fits = []
    for lam_max in (500.0, 1000.0):
        grid = np.geomspace(10.0, lam_max, 120)
        samples = mode_symbol(circle_4pi, mode, 1.0, 1.9, grid)
        fits.append(phg_fit(samples, step=1.0, depth=3, min_decades=1.5))
    k0a, k0b = fits[0].coeffs[0], fits[1].coeffs[0]
    assert abs(k0a - k0b) < 1e-6 * abs(k0b)


def test_diffraction_coefficient_mode_closed_form(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 0.5)
    # nu = 1/2, n = 2: K0 = (i/2pi)(rr')^{-1/2} e^{-i pi/2} (-i) = -(1/2pi)(rr')^{-1/2} ... direct:
    r, rp = 0.7, 1.9
    k0 = diffraction_coefficient_mode(circle_4pi, mode, r, rp)
    expected = (-1j / (2.0 * math.pi)) * (r * rp) ** -0.5 * np.exp(-0.5j * math.pi)
    assert k0 == pytest.approx(expected, abs=1e-15)
    # radial scaling (rr')^{-(n-1)/2}
    k0_scaled = diffraction_coefficient_mode(circle_4pi, mode, 2.0 * r, 2.0 * rp)
    assert k0_scaled == pytest.approx(k0 / 2.0, abs=1e-15)
    with pytest.raises(NonPositiveParameter):
        diffraction_coefficient_mode(circle_4pi, mode, -1.0, 1.0)


@pytest.mark.parametrize("nu", [0.5, 1.0, 2.5])
def test_theorem_1_1_modes(circle_4pi, circle_4pi_modes, nu):
    mode = mode_with_nu(circle_4pi_modes, nu)
    r, rp = 1.0, 1.9
    lo = max(1.05 * 3.0 * (nu + 1.0) / min(r, rp), 10.0)
    grid = np.geomspace(lo, 1.0e3, 160)
    rep = verify_theorem_1_1(circle_4pi, mode, r, rp, grid)
    assert rep.passes
    assert rep.rel_err < 1e-4
    assert rep.predicted == pytest.approx(
        (r * rp) ** -0.5 / (2.0 * math.pi) * scattering_eigenvalue(circle_4pi, mode),
        abs=1e-15,
    )


@pytest.mark.parametrize("nu", [0.5, 1.0])
def test_theorem_1_2_modes(circle_4pi, circle_4pi_modes, nu):
    mode = mode_with_nu(circle_4pi_modes, nu)
    grid = np.geomspace(100.0, 1.0e4, 160)
    half_fit, int_fit, half_ok, slope_ok = verify_theorem_1_2(
        circle_4pi, mode, 1.0, 1.0, grid
    )
    assert half_ok and slope_ok
    k0 = abs(half_fit.coeffs[0])
    assert abs(half_fit.coeffs[1]) <= 1e-3 * k0
    assert abs(half_fit.coeffs[3]) <= 1e-3 * k0


def test_diffraction_kernel_identity(circle_4pi):
    # the kernel equals (2 pi)^{-1} (rr')^{-(n-1)/2} x the scattering kernel
    # exactly, because the two sums share their summands
    th, thp, r, rp = 0.3, 1.4, 0.8, 2.1
    dk = diffraction_kernel(circle_4pi, th, thp, r, rp, 0.1, 8000)
    sk = scattering_kernel(circle_4pi, "+", th, thp, 0.1, 8000)
    factor = (r * rp) ** -0.5 / (2.0 * math.pi)
    assert dk.value == pytest.approx(factor * sk.value, abs=1e-15)
    assert dk.est_err == pytest.approx(factor * sk.est_err, abs=1e-15)


def test_diffraction_kernel_guards(circle_2pi):
    with pytest.raises(GeometricPairRejected):
        diffraction_kernel(circle_2pi, 0.0, math.pi, 1.0, 1.0, 0.1, 20000)
    with pytest.raises(NonPositiveParameter):
        diffraction_kernel(circle_2pi, 0.0, 1.0, 0.0, 1.0, 0.1, 20000)
