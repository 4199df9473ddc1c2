"""Spectral models of the cross-section manifold N.

Each model exposes the Laplace eigenvalues mu_j^2 with their eigenfunctions,
a geodesic distance on N, and a quadrature rule accurate enough to check
L^2-orthonormality of the first few dozen eigenfunctions.  Everything is
immutable after construction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import eval_legendre, sph_harm_y

from .errors import (
    MalformedTabulatedData,
    NonPositiveParameter,
    OutOfChart,
    TabulatedExhausted,
)

__all__ = [
    "BoundaryCondition",
    "CrossSectionSpec",
    "CrossSection",
    "CircleSection",
    "IntervalSection",
    "Sphere2Section",
    "TabulatedSection",
    "ConeGeometry",
    "Mode",
    "PairClass",
    "build_cross_section",
    "modes",
    "geodesic_distance",
    "classify_pair",
    "parse_ntable",
]

# Tolerance for deciding a pair sits exactly on the geometric front d_h = pi.
_GEOMETRIC_TOL = 1e-12


class BoundaryCondition(enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class PairClass(enum.Enum):
    GEOMETRIC = "geometric"
    STRICTLY_DIFFRACTIVE = "strictly_diffractive"
    GUARD_BAND = "guard_band"


@dataclass(frozen=True)
class CrossSectionSpec:
    """Declarative description consumed by :func:`build_cross_section`."""

    kind: str  # circle | interval | sphere2 | tabulated
    circumference: float | None = None
    length: float | None = None
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET
    table_text: str | None = None


class CrossSection:
    """Base class: eigen-levels, eigenfunctions, distance, quadrature.

    A *level* groups the eigenfunctions sharing one eigenvalue (stable order).
    """

    kind: str
    dim: int

    def level_mus(self, n_levels: int) -> np.ndarray:
        """mu (not squared) for the first ``n_levels`` eigenvalue levels."""
        raise NotImplementedError

    def level_multiplicity(self, level: int) -> int:
        raise NotImplementedError

    def eigenfunction(self, level: int, which: int) -> Callable:
        raise NotImplementedError

    def pair_level_sums(self, theta, theta_p, n_levels: int) -> np.ndarray:
        """sum_{phi in level} phi(theta) phi(theta') for each level.

        Equals the mode-by-mode product sum exactly (verified in tests); it is
        just evaluated in closed form where one exists.
        """
        raise NotImplementedError

    def geodesic_distance(self, theta, theta_p) -> float:
        raise NotImplementedError

    def quadrature(self, n_levels: int):
        """(points, weights) integrating products of the first levels' modes."""
        raise NotImplementedError


def _check_positive(name: str, value) -> float:
    if value is None or not (value > 0):
        raise NonPositiveParameter(f"{name} must be positive, got {value!r}")
    return float(value)


class CircleSection(CrossSection):
    """Circle of circumference rho; real cos/sin basis, chart theta in R (periodic)."""

    kind = "circle"
    dim = 1

    def __init__(self, circumference: float):
        self.circumference = _check_positive("circumference", circumference)

    def level_mus(self, n_levels):
        k = np.arange(n_levels)
        return 2.0 * np.pi * k / self.circumference

    def level_multiplicity(self, level):
        return 1 if level == 0 else 2

    def eigenfunction(self, level, which):
        rho = self.circumference
        if level == 0:
            c = 1.0 / math.sqrt(rho)
            return lambda theta: c * np.ones_like(np.asarray(theta, dtype=float))
        w = 2.0 * np.pi * level / rho
        amp = math.sqrt(2.0 / rho)
        if which == 0:
            return lambda theta: amp * np.cos(w * np.asarray(theta, dtype=float))
        if which == 1:
            return lambda theta: amp * np.sin(w * np.asarray(theta, dtype=float))
        raise IndexError(which)

    def pair_level_sums(self, theta, theta_p, n_levels):
        rho = self.circumference
        k = np.arange(n_levels)
        out = (2.0 / rho) * np.cos(2.0 * np.pi * k * (theta - theta_p) / rho)
        out[0] = 1.0 / rho
        return out

    def geodesic_distance(self, theta, theta_p):
        rho = self.circumference
        d = abs(float(theta) - float(theta_p)) % rho
        return min(d, rho - d)

    def quadrature(self, n_levels):
        # trapezoid rule on a periodic grid is spectrally exact for trig modes
        npts = max(8, 4 * n_levels + 2)
        pts = np.linspace(0.0, self.circumference, npts, endpoint=False)
        wts = np.full(npts, self.circumference / npts)
        return pts, wts


class IntervalSection(CrossSection):
    """Interval (0, L) with Dirichlet or Neumann ends."""

    kind = "interval"
    dim = 1

    def __init__(self, length: float, bc: BoundaryCondition = BoundaryCondition.DIRICHLET):
        self.length = _check_positive("length", length)
        self.bc = bc

    def level_mus(self, n_levels):
        if self.bc is BoundaryCondition.DIRICHLET:
            k = np.arange(1, n_levels + 1)
        else:
            k = np.arange(n_levels)
        return np.pi * k / self.length

    def level_multiplicity(self, level):
        return 1

    def eigenfunction(self, level, which):
        if which != 0:
            raise IndexError(which)
        L = self.length
        if self.bc is BoundaryCondition.DIRICHLET:
            k = level + 1
            amp = math.sqrt(2.0 / L)
            return lambda theta: amp * np.sin(k * np.pi * np.asarray(theta, dtype=float) / L)
        if level == 0:
            c = 1.0 / math.sqrt(L)
            return lambda theta: c * np.ones_like(np.asarray(theta, dtype=float))
        amp = math.sqrt(2.0 / L)
        return lambda theta: amp * np.cos(level * np.pi * np.asarray(theta, dtype=float) / L)

    def pair_level_sums(self, theta, theta_p, n_levels):
        t, tp = float(theta), float(theta_p)
        self._check_chart(t)
        self._check_chart(tp)
        L = self.length
        if self.bc is BoundaryCondition.DIRICHLET:
            k = np.arange(1, n_levels + 1)
            return (2.0 / L) * np.sin(k * np.pi * t / L) * np.sin(k * np.pi * tp / L)
        k = np.arange(n_levels)
        out = (2.0 / L) * np.cos(k * np.pi * t / L) * np.cos(k * np.pi * tp / L)
        out[0] = 1.0 / L
        return out

    def _check_chart(self, t: float):
        if not (0.0 <= t <= self.length):
            raise OutOfChart(f"theta={t} outside [0, {self.length}]")

    def geodesic_distance(self, theta, theta_p):
        t, tp = float(theta), float(theta_p)
        self._check_chart(t)
        self._check_chart(tp)
        return abs(t - tp)

    def quadrature(self, n_levels):
        npts = max(16, 2 * n_levels + 8)
        x, w = np.polynomial.legendre.leggauss(npts)
        half = self.length / 2.0
        return half * (x + 1.0), half * w


class Sphere2Section(CrossSection):
    """Round unit 2-sphere; coordinates theta = (polar, azimuth)."""

    kind = "sphere2"
    dim = 2

    def level_mus(self, n_levels):
        l = np.arange(n_levels)
        return np.sqrt(l * (l + 1.0))

    def level_multiplicity(self, level):
        return 2 * level + 1

    def eigenfunction(self, level, which):
        # real spherical harmonics, ordered m = 0, (1,cos), (1,sin), (2,cos), ...
        l = level
        if not (0 <= which < 2 * l + 1):
            raise IndexError(which)

        def f(theta):
            polar, azim = theta
            if which == 0:
                return float(np.real(sph_harm_y(l, 0, polar, azim)))
            m = (which + 1) // 2
            y = sph_harm_y(l, m, polar, azim)
            if which % 2 == 1:
                return math.sqrt(2.0) * float(np.real(y))
            return math.sqrt(2.0) * float(np.imag(y))

        return f

    def pair_level_sums(self, theta, theta_p, n_levels):
        # addition theorem: sum_m Y_lm(x) Y_lm(y) = (2l+1)/(4 pi) P_l(cos gamma)
        c = self._cos_angle(theta, theta_p)
        l = np.arange(n_levels)
        return (2.0 * l + 1.0) / (4.0 * np.pi) * eval_legendre(l, c)

    @staticmethod
    def _cos_angle(theta, theta_p) -> float:
        p1, a1 = theta
        p2, a2 = theta_p
        for p in (p1, p2):
            if not (0.0 <= p <= np.pi):
                raise OutOfChart(f"polar angle {p} outside [0, pi]")
        c = math.cos(p1) * math.cos(p2) + math.sin(p1) * math.sin(p2) * math.cos(a1 - a2)
        return min(1.0, max(-1.0, c))

    def geodesic_distance(self, theta, theta_p):
        return math.acos(self._cos_angle(theta, theta_p))

    def quadrature(self, n_levels):
        # Gauss-Legendre in cos(polar) x trapezoid in azimuth
        nl = max(n_levels + 2, 8)
        x, w = np.polynomial.legendre.leggauss(nl)
        na = 2 * nl + 1
        azim = np.linspace(0.0, 2.0 * np.pi, na, endpoint=False)
        pts = [(math.acos(xi), a) for xi in x for a in azim]
        wts = np.repeat(w, na) * (2.0 * np.pi / na)
        return pts, wts


class TabulatedSection(CrossSection):
    """Eigen-data ingested from an N-TABLE v1 text block.

    The sample grid is taken as a uniform periodic chart on [0, 2 pi); the
    file format presumes a connected N (connectivity is not checkable from
    samples alone).
    """

    kind = "tabulated"

    def __init__(self, dim: int, mu_sqs: Sequence[float], samples: np.ndarray):
        if dim < 1:
            raise MalformedTabulatedData(f"dim must be >= 1, got {dim}")
        mu_sqs = np.asarray(mu_sqs, dtype=float)
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 2 or samples.shape[0] != mu_sqs.shape[0]:
            raise MalformedTabulatedData("sample block count does not match eigenvalue count")
        if np.any(mu_sqs < 0) or np.any(np.diff(mu_sqs) < 0):
            raise MalformedTabulatedData("eigenvalues must be nonnegative and nondecreasing")
        self.dim = dim
        self.mu_sqs = mu_sqs
        self.samples = samples
        self.grid = np.linspace(0.0, 2.0 * np.pi, samples.shape[1], endpoint=False)

    @property
    def count(self) -> int:
        return len(self.mu_sqs)

    def level_mus(self, n_levels):
        if n_levels > self.count:
            raise TabulatedExhausted(
                f"table holds {self.count} modes, {n_levels} requested"
            )
        return np.sqrt(self.mu_sqs[:n_levels])

    def level_multiplicity(self, level):
        return 1

    def eigenfunction(self, level, which):
        if which != 0:
            raise IndexError(which)
        if level >= self.count:
            raise TabulatedExhausted(f"mode {level} not tabulated")
        vals = self.samples[level]
        grid = self.grid

        def f(theta):
            t = np.asarray(theta, dtype=float) % (2.0 * np.pi)
            return np.interp(t, np.append(grid, 2.0 * np.pi), np.append(vals, vals[0]))

        return f

    def pair_level_sums(self, theta, theta_p, n_levels):
        out = np.empty(n_levels)
        for j in range(n_levels):
            f = self.eigenfunction(j, 0)
            out[j] = float(f(theta)) * float(f(theta_p))
        return out

    def geodesic_distance(self, theta, theta_p):
        d = abs(float(theta) - float(theta_p)) % (2.0 * np.pi)
        return min(d, 2.0 * np.pi - d)

    def quadrature(self, n_levels):
        wts = np.full(len(self.grid), 2.0 * np.pi / len(self.grid))
        return self.grid.copy(), wts


def parse_ntable(text: str) -> TabulatedSection:
    """Parse the line-oriented ``N-TABLE v1`` eigen-data format."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise MalformedTabulatedData("empty table")
    header = lines[0].split()
    if header[:2] != ["N-TABLE", "v1"]:
        raise MalformedTabulatedData(f"bad header: {lines[0]!r}")
    fields = dict(part.split("=", 1) for part in header[2:] if "=" in part)
    try:
        dim = int(fields["dim"])
        count = int(fields["count"])
        grid = int(fields["grid"])
    except (KeyError, ValueError) as exc:
        raise MalformedTabulatedData(f"bad header fields: {lines[0]!r}") from exc
    mu_sqs = []
    samples = []
    i = 1
    for _ in range(count):
        if i >= len(lines) or not lines[i].startswith("mu2="):
            raise MalformedTabulatedData(f"expected 'mu2=' line at line {i + 1}")
        try:
            mu_sqs.append(float(lines[i].split("=", 1)[1]))
        except ValueError as exc:
            raise MalformedTabulatedData(f"bad mu2 value: {lines[i]!r}") from exc
        i += 1
        vals: list[float] = []
        while len(vals) < grid and i < len(lines):
            try:
                vals.extend(float(tok) for tok in lines[i].split())
            except ValueError as exc:
                raise MalformedTabulatedData(f"bad sample line: {lines[i]!r}") from exc
            i += 1
        if len(vals) != grid:
            raise MalformedTabulatedData(
                f"mode has {len(vals)} samples, expected {grid}"
            )
        samples.append(vals)
    if i != len(lines):
        raise MalformedTabulatedData("trailing data after last mode block")
    return TabulatedSection(dim, mu_sqs, np.array(samples))


def build_cross_section(spec: CrossSectionSpec) -> CrossSection:
    if spec.kind == "circle":
        return CircleSection(_check_positive("circumference", spec.circumference))
    if spec.kind == "interval":
        return IntervalSection(_check_positive("length", spec.length), spec.bc)
    if spec.kind == "sphere2":
        return Sphere2Section()
    if spec.kind == "tabulated":
        if spec.table_text is None:
            raise MalformedTabulatedData("tabulated spec needs table_text")
        return parse_ntable(spec.table_text)
    raise NonPositiveParameter(f"unknown cross-section kind {spec.kind!r}")


@dataclass(frozen=True)
class ConeGeometry:
    """Product cone R_+ x N of total dimension n; alpha = -(n-2)/2."""

    n: int
    cross_section: CrossSection
    alpha: float = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise NonPositiveParameter(f"total dimension n must be >= 2, got {self.n}")
        if self.n != self.cross_section.dim + 1:
            raise NonPositiveParameter(
                f"n = {self.n} inconsistent with dim N = {self.cross_section.dim}"
            )
        object.__setattr__(self, "alpha", -(self.n - 2) / 2.0)

    def nu_of_mu(self, mu: float | np.ndarray):
        return np.sqrt(np.asarray(mu, dtype=float) ** 2 + self.alpha**2)


@dataclass(frozen=True)
class Mode:
    """One eigenpair of the cross-section with its shifted Bessel order."""

    index: int
    mu_sq: float
    nu: float
    eigenfunction: Callable

    def __post_init__(self):
        if self.mu_sq < 0 or self.nu < 0:
            raise NonPositiveParameter("mode eigenvalue data must be nonnegative")


def modes(geom: ConeGeometry, count: int) -> list[Mode]:
    """First ``count`` modes ordered by eigenvalue, ties in stable basis order."""
    if count < 1:
        raise NonPositiveParameter(f"count must be >= 1, got {count}")
    cs = geom.cross_section
    out: list[Mode] = []
    level = 0
    # enough levels to cover count modes even with multiplicity 1
    mus = cs.level_mus(count)
    while len(out) < count:
        mu = float(mus[level])
        for which in range(cs.level_multiplicity(level)):
            if len(out) == count:
                break
            out.append(
                Mode(
                    index=len(out),
                    mu_sq=mu * mu,
                    nu=float(geom.nu_of_mu(mu)),
                    eigenfunction=cs.eigenfunction(level, which),
                )
            )
        level += 1
    return out


def geodesic_distance(cs: CrossSection, theta, theta_p) -> float:
    return cs.geodesic_distance(theta, theta_p)


def classify_pair(cs: CrossSection, theta, theta_p, guard: float) -> PairClass:
    if not (guard > 0):
        raise NonPositiveParameter(f"guard band delta must be positive, got {guard}")
    gap = abs(cs.geodesic_distance(theta, theta_p) - math.pi)
    if gap <= _GEOMETRIC_TOL:
        return PairClass.GEOMETRIC
    if gap < guard:
        return PairClass.GUARD_BAND
    return PairClass.STRICTLY_DIFFRACTIVE
