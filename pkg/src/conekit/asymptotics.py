"""Symbol extraction and polyhomogeneous fitting for the diffractive channel.

The demodulated mode kernel (rr')^alpha lam J(lam r) J(lam r') e^{-i lam (r+r')}
splits into four oscillatory channels (DC plus frequencies -2r, -2r', -2(r+r')
coming from the Hankel decomposition of the Bessel product).  The DC amplitude
is the diffractive symbol; it is isolated by a local least-squares regression
against all channels simultaneously, then fitted against powers of 1/lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j
from .cross_section import ConeGeometry, Mode, PairClass, classify_pair
from .errors import (
    GeometricPairRejected,
    IllConditioned,
    NonPositiveParameter,
    RegimeViolation,
    WindowTooWide,
)
from .scattering import AbelKernelSum, abel_mode_sum, scattering_eigenvalue

__all__ = [
    "SymbolSamples",
    "PolyhomogeneousFit",
    "TheoremReport",
    "mode_symbol",
    "phg_fit",
    "diffraction_coefficient_mode",
    "diffraction_kernel",
    "verify_theorem_1_1",
    "verify_theorem_1_2",
]

# samples per period of the fastest channel inside a demodulation window
_FILTER_SAMPLES_PER_PERIOD = 8
_FILTER_MIN_SAMPLES = 240
# degree > 6 lets a channel pair mimic another through a rational (Pade-like)
# approximation of e^{i dc lam} across the window -> near-singular basis
_FILTER_POLY_DEGREE = 5
_FILTER_WINDOW_PERIODS = 4.0


@dataclass(frozen=True)
class SymbolSamples:
    base: tuple  # (mode index, r, r_prime)
    lambda_grid: np.ndarray
    values: np.ndarray
    channel: str = "diffractive"
    est_err: np.ndarray | None = None  # per-sample filter-error estimate


@dataclass(frozen=True)
class PolyhomogeneousFit:
    step: float
    order: int
    coeffs: np.ndarray  # K_0, K_{-step}, K_{-2 step}, ...
    remainder_norms: np.ndarray  # held-out weighted RMS per truncation depth
    decay_slope: float
    cond: float
    noise_floor: float


@dataclass(frozen=True)
class TheoremReport:
    extracted_K0: complex
    predicted: complex
    rel_err: float
    passes: bool


def _raw_demodulated(geom: ConeGeometry, nu: float, r: float, r_prime: float, lam):
    lam = np.asarray(lam, dtype=float)
    pref = (r * r_prime) ** geom.alpha
    return (
        pref
        * lam
        * bessel_j(nu, lam * r)
        * bessel_j(nu, lam * r_prime)
        * np.exp(-1j * lam * (r + r_prime))
    )


def _channel_rates(r: float, r_prime: float) -> list[float]:
    """Demodulated channel frequencies; duplicates merge when r = r'."""
    rates = [0.0, -2.0 * r, -2.0 * r_prime, -2.0 * (r + r_prime)]
    out: list[float] = []
    for c in rates:
        if not any(abs(c - d) < 1e-12 for d in out):
            out.append(c)
    return out


def _filter_at(geom, nu, r, r_prime, center: float, window: float, degree: int | None = None) -> complex:
    """DC amplitude at ``center`` from one local multi-channel regression.

    Basis: per channel e^{i c lam} times Chebyshev polynomials on the window.
    Quadratic boxcar averaging leaks O(1/lambda) from the oscillatory
    channels; the regression suppresses them to the poly-degree order.
    """
    if degree is None:
        degree = _FILTER_POLY_DEGREE
    rates = _channel_rates(r, r_prime)
    fastest = max(abs(c) for c in rates)
    n_samp = max(
        _FILTER_MIN_SAMPLES,
        int(_FILTER_SAMPLES_PER_PERIOD * fastest * window / (2.0 * math.pi)) + 1,
    )
    lam = np.linspace(center - window / 2.0, center + window / 2.0, n_samp)
    vals = _raw_demodulated(geom, nu, r, r_prime, lam)
    x = (lam - center) / (window / 2.0)  # [-1, 1]
    cheb = np.polynomial.chebyshev.chebvander(x, degree)
    cols = []
    for c in rates:
        osc = np.exp(1j * c * lam)
        for k in range(degree + 1):
            cols.append(osc * cheb[:, k])
    basis = np.column_stack(cols)
    scale = np.linalg.norm(basis, axis=0)
    coef, _, rank, sv = np.linalg.lstsq(basis / scale, vals, rcond=None)
    coef /= scale
    if rank < basis.shape[1]:
        raise IllConditioned("demodulation filter basis is rank deficient")
    # DC channel is rates[0] = 0; its amplitude at the window center is the
    # Chebyshev series at x = 0: T_k(0) = 0 (k odd), (-1)^{k/2} (k even)
    dc = coef[: degree + 1]
    t0 = np.array([math.cos(k * math.pi / 2.0) for k in range(degree + 1)])
    return complex(np.dot(dc, t0))


def mode_symbol(
    geom: ConeGeometry,
    mode: Mode,
    r: float,
    r_prime: float,
    lambda_grid,
    window_periods: float = _FILTER_WINDOW_PERIODS,
) -> SymbolSamples:
    """Diffractive-channel symbol of the mode kernel on a log lambda grid."""
    lam_grid = np.asarray(lambda_grid, dtype=float)
    if lam_grid.ndim != 1 or len(lam_grid) < 2 or np.any(np.diff(lam_grid) <= 0):
        raise NonPositiveParameter("lambda_grid must be strictly increasing")
    nu = mode.nu
    rmin = min(r, r_prime)
    bound = 3.0 * (nu + 1.0) / rmin
    if lam_grid[0] <= bound:
        raise RegimeViolation(
            f"lambda_min = {lam_grid[0]} inside preasymptotic regime (need > {bound:.3g})"
        )
    slowest = 2.0 * rmin  # slowest removed channel
    window = window_periods * 2.0 * math.pi / slowest
    if lam_grid[0] - window / 2.0 <= 0.0:
        raise WindowTooWide(
            f"window {window:.3g} reaches lambda <= 0 at grid start {lam_grid[0]}"
        )
    values = np.array(
        [_filter_at(geom, nu, r, r_prime, float(c), window) for c in lam_grid]
    )
    # per-sample error estimate: rerun the regression one poly degree up;
    # the difference tracks the interpolation error of the channel amplitudes
    probe = np.array(
        [
            _filter_at(geom, nu, r, r_prime, float(c), window, degree=_FILTER_POLY_DEGREE + 1)
            for c in lam_grid
        ]
    )
    est = np.abs(values - probe) + 32.0 * np.finfo(float).eps * float(np.max(np.abs(values)))
    return SymbolSamples(
        base=(mode.index, r, r_prime), lambda_grid=lam_grid, values=values, est_err=est
    )


def phg_fit(
    samples: SymbolSamples,
    step: float,
    depth: int,
    min_decades: float = 2.0,
    guard_terms: int | None = None,
) -> PolyhomogeneousFit:
    """Weighted least squares of symbol samples against powers lambda^{-k step}.

    The ladder is extended by ``guard_terms`` extra powers during coefficient
    estimation (only the first depth+1 are reported).  Without the guard, the
    first unmodeled order aliases into the reported coefficients and the
    remainder loses its clean lambda^{-(depth+1) step} decay.

    Fits on even-index samples; remainder norms are evaluated on the held-out
    odd-index sub-grid.  The decay slope is a log-log fit of the remainder
    after the reported truncation, restricted to samples whose remainder
    exceeds 10x the symbol's own error estimate (NaN if none are left:
    the remainder is unresolvable, i.e. the expansion is exact to noise).
    """
    if step not in (1.0, 0.5):
        raise NonPositiveParameter(f"step must be 1 or 1/2, got {step}")
    if not (1 <= depth <= 5 / step):
        raise NonPositiveParameter(f"depth {depth} out of range for step {step}")
    if guard_terms is None:
        guard_terms = 3 if step == 1.0 else 4
    lam = samples.lambda_grid
    vals = samples.values
    span = math.log10(lam[-1] / lam[0])
    if span < min_decades:
        raise NonPositiveParameter(
            f"grid spans {span:.2f} decades, need >= {min_decades}"
        )
    fit_idx = np.arange(0, len(lam), 2)
    held_idx = np.arange(1, len(lam), 2)
    weights = lam / lam[-1]  # downweight low-lambda preasymptotics
    full_depth = depth + guard_terms

    def design(idx, m):
        return np.column_stack([lam[idx] ** (-k * step) for k in range(m + 1)])

    a = design(fit_idx, full_depth) * weights[fit_idx, None]
    b = vals[fit_idx] * weights[fit_idx]
    scale = np.linalg.norm(a, axis=0)
    cond = float(np.linalg.cond(a / scale))
    if cond > 1e10:
        raise IllConditioned(f"fit conditioning {cond:.2e}; shrink depth or guard")
    coef_full, *_ = np.linalg.lstsq(a / scale, b, rcond=None)
    coef_full /= scale

    remainder_norms = []
    for m in range(depth + 1):
        resid_m = vals[held_idx] - design(held_idx, m) @ coef_full[: m + 1]
        remainder_norms.append(
            float(np.sqrt(np.mean(np.abs(weights[held_idx] * resid_m) ** 2)))
        )

    resid = vals - design(np.arange(len(lam)), depth) @ coef_full[: depth + 1]
    if samples.est_err is not None:
        noise = 10.0 * samples.est_err
    else:
        noise = np.full(len(lam), 64.0 * np.finfo(float).eps * float(np.max(np.abs(vals))))
    mask = np.abs(resid) > noise
    if np.count_nonzero(mask) >= 6:
        slope = float(np.polyfit(np.log(lam[mask]), np.log(np.abs(resid[mask])), 1)[0])
    else:
        slope = float("nan")
    return PolyhomogeneousFit(
        step=step,
        order=0,
        coeffs=coef_full[: depth + 1],
        remainder_norms=np.array(remainder_norms),
        decay_slope=slope,
        cond=cond,
        noise_floor=float(np.median(noise)),
    )


def diffraction_coefficient_mode(geom: ConeGeometry, mode: Mode, r: float, r_prime: float) -> complex:
    """Closed form K_0 = -(i/2pi) (rr')^{-(n-1)/2} e^{-i nu pi} per mode."""
    if r <= 0 or r_prime <= 0:
        raise NonPositiveParameter("r, r' must be > 0")
    return (
        (-1j / (2.0 * math.pi))
        * (r * r_prime) ** (-(geom.n - 1.0) / 2.0)
        * complex(np.exp(-1j * math.pi * mode.nu))
    )


def diffraction_kernel(
    geom: ConeGeometry,
    theta,
    theta_p,
    r: float,
    r_prime: float,
    abel_eps: float,
    J_max: int,
    guard: float = 0.2,
) -> AbelKernelSum:
    """Abel-regularized sum of per-mode diffraction coefficients.

    Shares its summands with scattering_kernel: the mode sum is accumulated
    with the bare S_j = -i e^{-i pi nu_j} and the radial factor
    (2 pi)^{-1} (rr')^{-(n-1)/2} is applied to the result, so the kernel-level
    Theorem 1.1 identity holds at rounding accuracy by construction.
    """
    cls = classify_pair(geom.cross_section, theta, theta_p, guard)
    if cls is not PairClass.STRICTLY_DIFFRACTIVE:
        raise GeometricPairRejected(
            f"pair classified {cls.value}; kernel defined only for strictly diffractive pairs"
        )
    if r <= 0 or r_prime <= 0:
        raise NonPositiveParameter("r, r' must be > 0")
    base = abel_mode_sum(
        geom, theta, theta_p, abel_eps, J_max, lambda nus: -1j * np.exp(-1j * math.pi * nus)
    )
    factor = (r * r_prime) ** (-(geom.n - 1.0) / 2.0) / (2.0 * math.pi)
    return AbelKernelSum(
        value=factor * base.value,
        est_err=factor * base.est_err,
        eps_sequence=tuple((eps, factor * v) for eps, v in base.eps_sequence),
    )


def verify_theorem_1_1(
    geom: ConeGeometry,
    mode: Mode,
    r: float,
    r_prime: float,
    lambda_grid,
    depth: int = 3,
    min_decades: float = 1.5,
    tol: float = 1e-4,
) -> TheoremReport:
    """Extracted leading symbol vs (2 pi)^{-1} (rr')^{-(n-1)/2} S_j.

    Both sides live in the scalar-kernel convention (the half-density factor
    |r^{n-1} dr dtheta ...|^{1/2} of the wave-kernel normal form is divided
    out), so no conversion factor appears: (rr')^{alpha - 1/2} equals
    (rr')^{-(n-1)/2} identically.
    """
    samples = mode_symbol(geom, mode, r, r_prime, lambda_grid)
    fit = phg_fit(samples, step=1.0, depth=depth, min_decades=min_decades)
    extracted = complex(fit.coeffs[0])
    predicted = (
        (r * r_prime) ** (-(geom.n - 1.0) / 2.0)
        / (2.0 * math.pi)
        * scattering_eigenvalue(geom, mode, "+")
    )
    rel = abs(extracted - predicted) / abs(predicted)
    return TheoremReport(
        extracted_K0=extracted, predicted=predicted, rel_err=rel, passes=rel <= tol
    )


def verify_theorem_1_2(
    geom: ConeGeometry,
    mode: Mode,
    r: float,
    r_prime: float,
    lambda_grid,
    half_tol: float = 1e-3,
    slope_band: float = 0.15,
    min_decades: float = 1.5,
):
    """One-step polyhomogeneity: half-integer coefficients vanish and the
    integer remainder after 3 terms decays one order faster.

    Returns (half_fit, int_fit, half_ok, slope_ok).  For half-integer nu the
    Hankel expansion truncates and the depth-3 remainder can sit entirely at
    the noise floor; that counts as decayed (slope is NaN then).
    """
    samples = mode_symbol(geom, mode, r, r_prime, lambda_grid)
    half_fit = phg_fit(samples, step=0.5, depth=4, min_decades=min_decades)
    int_fit = phg_fit(samples, step=1.0, depth=3, min_decades=min_decades)
    k0 = abs(half_fit.coeffs[0])
    half_ok = bool(
        abs(half_fit.coeffs[1]) <= half_tol * k0 and abs(half_fit.coeffs[3]) <= half_tol * k0
    )
    lam = samples.lambda_grid
    resid = samples.values - np.column_stack(
        [lam ** float(-k) for k in range(4)]
    ) @ int_fit.coeffs
    resid_rel = float(np.max(np.abs(resid))) / k0
    if math.isnan(int_fit.decay_slope) or resid_rel <= 1e-8:
        # the Hankel expansion truncates for half-integer nu (and the nu = 1
        # tail is ~1e-9 relative at lambda >= 100): the depth-3 remainder is
        # then pure fit noise and carries no measurable decay rate
        slope_ok = True
    else:
        slope_ok = bool(abs(int_fit.decay_slope - (-4.0)) <= slope_band)
    return half_fit, int_fit, half_ok, slope_ok
