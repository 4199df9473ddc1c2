import math

import numpy as np
import pytest

from conekit.errors import (
    GeometricPairRejected,
    IllConditionedFit,
    NonPositiveParameter,
    RegimeUnreachable,
    SumNotSettled,
)
from conekit.scattering import (
    RadialSolution,
    abel_mode_sum,
    extract_in_out,
    radial_solution,
    scattering_eigenvalue,
    scattering_kernel,
    scattering_matrix,
)
from conftest import mode_with_nu


def _ratio(geom, mode, lam, **kw):
    sol = radial_solution(geom, mode, lam, r_max=60.0 * (mode.nu + 1.0) / lam, **kw)
    io = extract_in_out(sol, geom)
    return io


def test_eigenvalue_closed_form_values(circle_4pi, circle_4pi_modes):
    # nu = 1/2 gives S = -i e^{-i pi/2} = -1; nu = 1 gives S = -i e^{-i pi} = +i
    s_half = scattering_eigenvalue(circle_4pi, mode_with_nu(circle_4pi_modes, 0.5))
    s_one = scattering_eigenvalue(circle_4pi, mode_with_nu(circle_4pi_modes, 1.0))
    assert s_half == pytest.approx(-1.0)
    assert s_one == pytest.approx(1.0j)


def test_eigenvalue_unitary_and_conjugate(circle_4pi, circle_4pi_modes):
    for m in circle_4pi_modes:
        s_plus = scattering_eigenvalue(circle_4pi, m, "+")
        s_minus = scattering_eigenvalue(circle_4pi, m, "-")
        assert abs(abs(s_plus) - 1.0) < 1e-15
        assert s_minus == pytest.approx(np.conj(s_plus), abs=1e-15)
    with pytest.raises(NonPositiveParameter):
        scattering_eigenvalue(circle_4pi, circle_4pi_modes[0], "*")


@pytest.mark.parametrize("nu,lam", [(0.5, 1.0), (1.0, 3.0), (2.0, 2.0)])
def test_ode_route_matches_eigenvalue(circle_4pi, circle_4pi_modes, nu, lam):
    # fully independent route: integrate the radial ODE outward, fit in/out
    # exponentials, and compare a+/a- with the closed-form phase
    mode = mode_with_nu(circle_4pi_modes, nu)
    io = _ratio(circle_4pi, mode, lam)
    target = scattering_eigenvalue(circle_4pi, mode)
    assert abs(io.a_plus / io.a_minus - target) < 1e-6
    assert io.fit_residual < 1e-6


def test_ode_matches_closed_form_pointwise(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.5)
    lam = 2.0
    ode = radial_solution(circle_4pi, mode, lam, r_max=80.0)
    cf = radial_solution(circle_4pi, mode, lam, r_max=80.0, source="bessel-closed-form")
    assert np.max(np.abs(ode.values - cf.values)) < 1e-9
    assert ode.source == "ode-integrated" and cf.source == "bessel-closed-form"


def test_extract_synthetic_roundtrip(circle_4pi):
    # manufactured signal with known in/out coefficients and a 1/r tail
    lam, n = 1.7, circle_4pi.n
    r = np.linspace(150.0, 200.0, 3000)
    a_plus, a_minus = 0.3 - 0.4j, 1.1 + 0.25j
    sig = (
        a_plus * np.exp(1j * lam * r) * (1.0 + 0.8 / r - 2.0 / r**2)
        + a_minus * np.exp(-1j * lam * r) * (1.0 - 1.3 / r + 0.5 / r**3)
    )
    sol = RadialSolution(lam, None, r, sig * r ** (-(n - 1.0) / 2.0), "synthetic")
    io = extract_in_out(sol, circle_4pi)
    assert abs(io.a_plus - a_plus) < 1e-9
    assert abs(io.a_minus - a_minus) < 1e-9


def test_extract_stable_under_window_doubling(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    sol = radial_solution(circle_4pi, mode, 2.0, r_max=70.0)
    io8 = extract_in_out(sol, circle_4pi, window_periods=8.0)
    io16 = extract_in_out(sol, circle_4pi, window_periods=16.0)
    assert abs(io8.a_plus / io8.a_minus - io16.a_plus / io16.a_minus) < 1e-7


def test_complex_y_contamination_breaks_unitarity(circle_4pi, circle_4pi_modes):
    # a complex Y_nu admixture in the initial data must show up as
    # |a+| != |a-|; a real admixture would keep the solution real and
    # therefore stay invisible to this balance check
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    lam = 2.0
    clean = _ratio(circle_4pi, mode, lam)
    dirty = _ratio(circle_4pi, mode, lam, y_contamination=1e-3j)
    balance_clean = abs(abs(clean.a_plus) - abs(clean.a_minus)) / abs(clean.a_minus)
    balance_dirty = abs(abs(dirty.a_plus) - abs(dirty.a_minus)) / abs(dirty.a_minus)
    assert balance_clean < 1e-7
    assert balance_dirty > 1e-4


def test_radial_solution_guards(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 1.0)
    with pytest.raises(RegimeUnreachable):
        radial_solution(circle_4pi, mode, 1.0, r_max=20.0)
    with pytest.raises(NonPositiveParameter):
        radial_solution(circle_4pi, mode, -1.0, r_max=200.0)
    with pytest.raises(NonPositiveParameter):
        radial_solution(circle_4pi, mode, 1.0, r_max=200.0, source="magic")


def test_extract_window_guard(circle_4pi, circle_4pi_modes):
    mode = mode_with_nu(circle_4pi_modes, 0.5)
    sol = radial_solution(circle_4pi, mode, 1.0, r_max=80.0)
    with pytest.raises(IllConditionedFit):
        extract_in_out(sol, circle_4pi, window_periods=2.0)


def test_scattering_matrix_diag(circle_4pi, circle_4pi_modes):
    sm = scattering_matrix(circle_4pi, 2.0, circle_4pi_modes)
    assert set(sm.diag) == {m.index for m in circle_4pi_modes}
    for m in circle_4pi_modes:
        assert sm.diag[m.index] == scattering_eigenvalue(circle_4pi, m, "+")
    sm_neg = scattering_matrix(circle_4pi, -2.0, circle_4pi_modes)
    for m in circle_4pi_modes:
        assert sm_neg.diag[m.index] == pytest.approx(np.conj(sm.diag[m.index]))
    with pytest.raises(NonPositiveParameter):
        scattering_matrix(circle_4pi, 0.0, circle_4pi_modes)


def test_abel_sum_geometric_series_oracle(circle_2pi):
    # on the unit circle with c(nu) = q^nu, nu_k = |k|, the Abel sum is the
    # classical Poisson-type series with closed form known independently
    q = 0.5
    th, thp = 0.0, 1.0
    res = abel_mode_sum(circle_2pi, th, thp, 0.1, 4000, lambda nus: q**nus)
    d = thp - th
    exact = (1.0 / (2.0 * math.pi)) * (1.0 - q * q) / (1.0 - 2.0 * q * math.cos(d) + q * q)
    assert abs(res.value - exact) < 1e-9
    assert res.est_err < 1e-8
    assert len(res.eps_sequence) == 5


def test_abel_sum_tail_guard(circle_4pi):
    with pytest.raises(SumNotSettled):
        abel_mode_sum(circle_4pi, 0.0, 1.0, 0.1, 200, lambda nus: np.ones_like(nus))
    with pytest.raises(NonPositiveParameter):
        abel_mode_sum(circle_4pi, 0.0, 1.0, -0.1, 8000, lambda nus: np.ones_like(nus))


def test_scattering_kernel_rejects_geometric_pairs(circle_2pi):
    with pytest.raises(GeometricPairRejected):
        scattering_kernel(circle_2pi, "+", 0.0, math.pi, 0.1, 20000)
    with pytest.raises(GeometricPairRejected):
        scattering_kernel(circle_2pi, "+", 0.0, math.pi - 0.05, 0.1, 20000)
    with pytest.raises(NonPositiveParameter):
        scattering_kernel(circle_2pi, "*", 0.0, 1.0, 0.1, 20000)


def test_scattering_kernel_euclidean_vanishing(circle_2pi):
    # rho = 2 pi is flat R^2: the smooth kernel away from the antipode is 0
    res = scattering_kernel(circle_2pi, "+", 0.0, math.pi / 2.0, 0.1, 20000)
    assert abs(res.value) < 1e-3
    res_m = scattering_kernel(circle_2pi, "-", 0.0, math.pi / 2.0, 0.1, 20000)
    assert res_m.value == pytest.approx(np.conj(res.value), abs=1e-10)
