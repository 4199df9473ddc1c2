import math

import numpy as np
import pytest

from conekit.errors import BadSpec, NonConvergence
from conekit.kernel import (
    QuadratureSpec,
    default_halfwave_spec,
    halfwave_mode_kernel,
    high_taper,
    oscillatory_quadrature,
    sine_mode_kernel,
    sine_mode_kernel_batch,
    smooth_cutoff,
)
from conftest import mode_with_nu


def test_quadrature_spec_validation():
    with pytest.raises(BadSpec):
        QuadratureSpec(cutoff_low=2.0, cutoff_high=1.0)
    with pytest.raises(BadSpec):
        QuadratureSpec(damping_eps=-0.1)
    with pytest.raises(BadSpec):
        QuadratureSpec(panels=4)
    with pytest.raises(BadSpec):
        QuadratureSpec(scheme="trapezoid")
    # low cutoff disabled is allowed (regular integrands)
    QuadratureSpec(cutoff_low=0.0)


def test_cutoff_and_taper_shapes():
    lam = np.linspace(0.0, 10.0, 201)
    rho = smooth_cutoff(lam, 2.0)
    assert np.all(rho[lam <= 1.0] == 0.0)
    assert np.all(rho[lam >= 2.0] == 1.0)
    assert np.all(np.diff(rho) >= -1e-15)
    tap = high_taper(lam, 10.0)
    assert tap[0] == 1.0 and tap[-1] == 0.0
    assert np.all(np.diff(tap) <= 1e-15)


@pytest.mark.parametrize("scheme", ["damped-gauss", "filon"])
@pytest.mark.parametrize("rate", [0.7, -3.0, 11.0])
def test_oscillatory_quadrature_exponential_closed_form(scheme, rate):
    # int_0^inf e^{-lam} e^{i rate lam} dlam = 1 / (1 - i rate)
    spec = QuadratureSpec(cutoff_low=0.0, cutoff_high=80.0, damping_eps=0.05, scheme=scheme)
    res = oscillatory_quadrature(lambda lam: np.exp(-lam), rate, spec)
    exact = 1.0 / (1.0 - 1j * rate)
    # filon interpolates the amplitude quadratically, so it is less accurate
    # than damped-gauss here, but its error estimate must stay honest
    tol = 5e-10 if scheme == "damped-gauss" else 1e-5
    assert abs(res.value - exact) < tol
    assert abs(res.value - exact) < 10.0 * res.est_err + 1e-12


def test_scheme_agreement_halfwave(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    spec = default_halfwave_spec(2.3, 1.0, 1.4)
    a = halfwave_mode_kernel(circle_4pi, mode, 2.3, 1.0, 1.4, spec)
    b = halfwave_mode_kernel(
        circle_4pi, mode, 2.3, 1.0, 1.4, QuadratureSpec(
            cutoff_low=spec.cutoff_low,
            cutoff_high=spec.cutoff_high,
            damping_eps=spec.damping_eps,
            scheme="filon",
        )
    )
    assert abs(a.value - b.value) < 1e-4 * max(abs(a.value), 1.0)


def test_halfwave_eps_ladder_settles(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 0.5)
    kv = halfwave_mode_kernel(circle_4pi, mode, 3.0, 1.0, 1.0)
    deltas = [
        abs(kv.eps_sequence[i + 1][1] - kv.eps_sequence[i][1])
        for i in range(len(kv.eps_sequence) - 1)
    ]
    assert deltas[-1] <= deltas[0]
    assert kv.est_err < 1e-3 * max(abs(kv.value), 1.0)


def test_halfwave_radial_symmetry(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.5)
    a = halfwave_mode_kernel(circle_4pi, mode, 2.0, 0.8, 1.7)
    b = halfwave_mode_kernel(circle_4pi, mode, 2.0, 1.7, 0.8)
    assert abs(a.value - b.value) < 1e-10 * abs(a.value) + 1e-14


def test_halfwave_rejects_bad_arguments(circle_4pi, circle_4pi_modes):
    mode = circle_4pi_modes[0]
    with pytest.raises(BadSpec):
        halfwave_mode_kernel(circle_4pi, mode, -1.0, 1.0, 1.0)
    with pytest.raises(BadSpec):
        sine_mode_kernel(circle_4pi, mode, 1.0, 0.0, 1.0)


def test_sine_kernel_odd_in_t(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    ts = np.array([-4.5, -2.5, 2.5, 4.5])
    vals, errs = sine_mode_kernel_batch(circle_4pi, mode, ts, 1.0, 1.3)
    assert vals[0] == pytest.approx(-vals[3], abs=1e-13)
    assert vals[1] == pytest.approx(-vals[2], abs=1e-13)


def test_sine_kernel_closed_form_half_integer(circle_4pi, circle_4pi_modes):
    # nu = 1/2, n = 2: J_{1/2}(z) = sqrt(2/(pi z)) sin z collapses the kernel to
    # (2/pi) int taper(lam) sin(t lam) sin(lam r) sin(lam r') / (lam sqrt(rr')) dlam
    mode = mode_with_nu(circle_4pi_modes, 0.5)
    r, rp = 1.0, 1.3
    ts = np.array([0.8, 2.5, 4.0])
    spec = QuadratureSpec(cutoff_low=0.0, cutoff_high=12.0, damping_eps=0.05)
    vals, errs = sine_mode_kernel_batch(circle_4pi, mode, ts, r, rp, spec)
    # reference on the effective (wide) band 1.6 * cutoff_high
    top = 1.6 * spec.cutoff_high
    lam = np.linspace(1e-9, top, 160001)
    w = np.full_like(lam, lam[1] - lam[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    amp = high_taper(lam, top) * np.sin(lam * r) * np.sin(lam * rp) / lam
    ref = (2.0 / (math.pi * math.sqrt(r * rp))) * (np.sin(np.outer(ts, lam)) @ (amp * w))
    assert np.max(np.abs(vals - ref)) < 1e-6


def test_sine_kernel_finite_propagation(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.5)
    r, rp = 0.9, 3.1
    # a wider band sharpens the front, so the truncation tail inside the gap
    # stays under the tracked error estimate even close to t = |r - r'|
    spec = QuadratureSpec(cutoff_low=0.0, cutoff_high=80.0, damping_eps=0.05)
    inside = np.array([0.44, 1.1, 1.76])  # 0 < t < |r - r'| = 2.2
    vals, errs = sine_mode_kernel_batch(circle_4pi, mode, inside, r, rp, spec)
    assert np.all(np.abs(vals) <= errs)
    # sanity: the kernel is NOT tiny between the fronts
    mid = np.array([3.0])
    v_mid, _ = sine_mode_kernel_batch(circle_4pi, mode, mid, r, rp, spec)
    assert abs(v_mid[0]) > 10.0 * np.max(errs)


def test_sine_batch_matches_scalar(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    kv = sine_mode_kernel(circle_4pi, mode, 2.2, 1.0, 1.5)
    vals, errs = sine_mode_kernel_batch(circle_4pi, mode, np.array([2.2]), 1.0, 1.5)
    assert kv.value == pytest.approx(complex(vals[0]), abs=1e-15)
    assert kv.est_err == pytest.approx(float(errs[0]), abs=1e-15)
    assert len(kv.eps_sequence) == 5


def test_nonconvergence_guard_trips_on_divergent_ladder():
    # an eps-ladder whose values explode as eps shrinks must be rejected;
    # amplitude e^{+lam} under the taper grows faster than any damping decays
    spec = QuadratureSpec(cutoff_low=0.0, cutoff_high=400.0, damping_eps=0.4, panels=64)
    with pytest.raises(NonConvergence):
        oscillatory_quadrature(lambda lam: np.exp(lam), 1.0, spec)
