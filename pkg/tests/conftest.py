import math

import pytest

from conekit.cross_section import ConeGeometry, CrossSectionSpec, build_cross_section, modes


@pytest.fixture(scope="session")
def circle_4pi():
    cs = build_cross_section(CrossSectionSpec(kind="circle", circumference=4.0 * math.pi))
    return ConeGeometry(n=2, cross_section=cs)


@pytest.fixture(scope="session")
def circle_4pi_modes(circle_4pi):
    return modes(circle_4pi, 12)


@pytest.fixture(scope="session")
def circle_2pi():
    cs = build_cross_section(CrossSectionSpec(kind="circle", circumference=2.0 * math.pi))
    return ConeGeometry(n=2, cross_section=cs)


@pytest.fixture(scope="session")
def sphere():
    cs = build_cross_section(CrossSectionSpec(kind="sphere2"))
    return ConeGeometry(n=3, cross_section=cs)


def mode_with_nu(mode_list, nu, tol=1e-12):
    for m in mode_list:
        if abs(m.nu - nu) <= tol:
            return m
    raise AssertionError(f"no mode with nu = {nu}")
