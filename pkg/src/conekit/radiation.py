"""Radiation fields of the forward fundamental solution.

The sine kernel evaluated at t = s + r and rescaled by r^{(n-1)/2} settles,
as r grows, to the per-mode radiation field w(s); the correction terms form
a power series in 1/r, so a geometric radius ladder supports polynomial
extrapolation.  Advancing both radii together and differentiating in t gives
the scattering-operator kernel in the lag variable, and a windowed Fourier
transform of that kernel recovers the scattering eigenvalue -- a route to
S(lambda) that never touches the spectral representation directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cross_section import ConeGeometry, Mode
from .errors import BadSpec, BandViolation, NotConverging
from .kernel import QuadratureSpec, high_taper, sine_mode_kernel_batch

__all__ = [
    "RadiationFieldTrace",
    "ScatteringKernelTrace",
    "radiation_field_mode",
    "scattering_operator_kernel_mode",
    "scattering_matrix_from_radiation",
]

# widest batch at the top ladder rung allocates n_s x n_nodes sine tables;
# chunking the time grid keeps that bounded without changing any value
_BATCH_CHUNK = 256


def _default_spec() -> QuadratureSpec:
    # band limit 12 keeps the taper-free band up to 9.6 while the sine
    # tables at r ~ 10^3 stay affordable
    return QuadratureSpec(cutoff_low=0.0, cutoff_high=12.0, damping_eps=0.05)


@dataclass(frozen=True)
class RadiationFieldTrace:
    mode: Mode
    r_prime: float
    s_grid: np.ndarray
    values: np.ndarray  # real
    r_ladder: tuple
    extrapolation_residuals: tuple
    est_err: np.ndarray


@dataclass(frozen=True)
class ScatteringKernelTrace:
    mode: Mode
    lag_grid: np.ndarray
    values: np.ndarray  # real
    r_ladder: tuple
    extrapolation_residuals: tuple
    fd_step: float
    band_limit: float  # upper edge of the taper-free frequency band


def _batch_chunked(geom, mode, ts, r, r_prime, spec):
    vals = np.empty_like(ts)
    errs = np.empty_like(ts)
    for lo in range(0, len(ts), _BATCH_CHUNK):
        sl = slice(lo, lo + _BATCH_CHUNK)
        v, e = sine_mode_kernel_batch(geom, mode, ts[sl], r, r_prime, spec)
        vals[sl], errs[sl] = v, e
    return vals, errs


def _check_ladder(r_ladder) -> tuple:
    ladder = tuple(float(r) for r in r_ladder)
    if len(ladder) < 2:
        raise BadSpec("r_ladder needs at least two rungs to extrapolate")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise BadSpec(f"r_ladder must be strictly increasing, got {ladder}")
    return ladder


def _extrapolate(traces, ladder):
    """Neville extrapolation in h = 1/r to h = 0, columnwise over the grid.

    Residuals are the sup-norm gaps between successive raw rungs; they must
    decrease (the 1/r series is the whole justification for the ladder).
    """
    resid = tuple(
        float(np.max(np.abs(traces[i + 1] - traces[i]))) for i in range(len(traces) - 1)
    )
    scale = max(float(np.max(np.abs(t))) for t in traces) + 1e-300
    if len(resid) >= 2 and resid[-1] > resid[-2] and resid[-1] > 1e-10 * scale:
        raise NotConverging(f"ladder residuals not decreasing: {resid}")
    hs = [1.0 / r for r in ladder]
    table = list(traces)
    n = len(table)
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            num = hs[i] * table[i + 1] - hs[i + level] * table[i]
            nxt.append(num / (hs[i] - hs[i + level]))
        table = nxt
    return table[0], resid


def radiation_field_mode(
    geom: ConeGeometry,
    mode: Mode,
    r_prime: float,
    s_grid,
    r_ladder,
    spec: QuadratureSpec | None = None,
) -> RadiationFieldTrace:
    """w(s) = lim_r r^{(n-1)/2} E_sin(s + r, r, r'), extrapolated over the ladder."""
    s_grid = np.asarray(s_grid, dtype=float)
    if r_prime <= 0:
        raise BadSpec(f"r_prime must be > 0, got {r_prime}")
    ladder = _check_ladder(r_ladder)
    smax = float(np.max(np.abs(s_grid)))
    if ladder[0] < 10.0 * (r_prime + smax):
        raise BadSpec(
            f"smallest ladder radius {ladder[0]} below asymptotic floor "
            f"{10.0 * (r_prime + smax)}"
        )
    if spec is None:
        spec = _default_spec()
    power = (geom.n - 1.0) / 2.0
    traces, errs = [], []
    for r in ladder:
        vals, e = _batch_chunked(geom, mode, s_grid + r, r, r_prime, spec)
        traces.append(r**power * vals)
        errs.append(r**power * e)
    values, resid = _extrapolate(traces, ladder)
    return RadiationFieldTrace(
        mode=mode,
        r_prime=r_prime,
        s_grid=s_grid,
        values=values,
        r_ladder=ladder,
        extrapolation_residuals=resid,
        est_err=np.max(np.stack(errs), axis=0),
    )


def scattering_operator_kernel_mode(
    geom: ConeGeometry,
    mode: Mode,
    lag_grid,
    r_ladder=(200.0, 400.0, 800.0),
    spec: QuadratureSpec | None = None,
) -> ScatteringKernelTrace:
    """kappa_j(lag) = lim 2 (r r')^{(n-1)/2} d_t E_sin at t = r + r' - lag.

    Both radii ride the same ladder (r = r' = R), the time derivative is a
    4th-order centered difference on the lag grid, and the limit is the same
    1/R extrapolation as the radiation field.  The lag orientation is pinned
    so that the forward transform with e^{-i lambda lag} reproduces the
    spectral scattering eigenvalue; the opposite choice returns its
    conjugate, and only the closed-form cross-check distinguishes the two.
    """
    lag_grid = np.asarray(lag_grid, dtype=float)
    if len(lag_grid) < 8:
        raise BadSpec("lag_grid too short for the finite-difference stencil")
    h = float(lag_grid[1] - lag_grid[0])
    if h <= 0 or np.max(np.abs(np.diff(lag_grid) - h)) > 1e-9 * h:
        raise BadSpec("lag_grid must be uniformly spaced and increasing")
    ladder = _check_ladder(r_ladder)
    lagmax = float(np.max(np.abs(lag_grid)))
    if ladder[0] < 5.0 * lagmax:
        raise BadSpec(
            f"smallest ladder radius {ladder[0]} below asymptotic floor {5.0 * lagmax}"
        )
    if spec is None:
        spec = _default_spec()
    # u = -lag is increasing time offset: t = u + 2R; two extra samples on
    # each side feed the derivative stencil
    u = -lag_grid[-1] - 2.0 * h + h * np.arange(len(lag_grid) + 4)
    traces = []
    for R in ladder:
        vals, _ = _batch_chunked(geom, mode, u + 2.0 * R, R, R, spec)
        d_t = (-vals[4:] + 8.0 * vals[3:-1] - 8.0 * vals[1:-3] + vals[:-4]) / (12.0 * h)
        kappa_u = 2.0 * R ** (geom.n - 1.0) * d_t
        traces.append(kappa_u[::-1])  # back to lag order
    values, resid = _extrapolate(traces, ladder)
    return ScatteringKernelTrace(
        mode=mode,
        lag_grid=lag_grid,
        values=values,
        r_ladder=ladder,
        extrapolation_residuals=resid,
        fd_step=h,
        band_limit=0.8 * spec.cutoff_high,
    )


def _bandlimited_delta(u, cutoff_high: float):
    """(1/pi) int_0^{1.6 L} taper(mu) cos(mu u) dmu on the lag samples.

    The batch kernel reports its wide-cutoff evaluation, so the effective
    band limit of every trace is 1.6x the nominal cutoff; the leakage
    normalization must use the same taper.
    """
    top = 1.6 * cutoff_high
    umax = float(np.max(np.abs(u))) + 1.0
    n_mu = max(8001, int(40.0 * top * umax / (2.0 * math.pi)))
    mu = np.linspace(0.0, top, n_mu)
    wts = np.full(n_mu, mu[1] - mu[0])
    wts[0] *= 0.5
    wts[-1] *= 0.5
    coeff = high_taper(mu, top) * wts
    out = np.empty(len(u))
    for lo in range(0, len(u), _BATCH_CHUNK):
        sl = slice(lo, lo + _BATCH_CHUNK)
        out[sl] = np.cos(np.outer(u[sl], mu)) @ coeff
    return out / math.pi


def scattering_matrix_from_radiation(
    geom: ConeGeometry,
    mode: Mode,
    lam: float,
    lag_grid=None,
    r_ladder=(200.0, 400.0, 800.0),
    spec: QuadratureSpec | None = None,
    kernel_trace: ScatteringKernelTrace | None = None,
) -> complex:
    """S_j(lambda) from the Hann-windowed transform of the lag kernel.

    Normalization: forward transform int kappa(lag) e^{-i lambda lag} dlag
    with no 2pi factor.  The raw sum is divided by (a) the windowed
    transform of the band-limited delta -- the Hann window's spectral
    leakage at lambda -- and (b) the transfer factor of the centered
    4th-order derivative stencil, sin-polynomial over lambda h.
    Pass kernel_trace to amortize one kernel over many lambda values.
    """
    if lam == 0:
        raise BandViolation("lambda = 0 is outside any resolvable band")
    if kernel_trace is None:
        if spec is None:
            spec = _default_spec()
        if lag_grid is None:
            lag_grid = np.arange(-32.0, 32.0 + 1e-12, 0.1)
        kernel_trace = scattering_operator_kernel_mode(geom, mode, lag_grid, r_ladder, spec)
    trace = kernel_trace
    h = trace.fd_step
    u = trace.lag_grid
    span = float(u[-1] - u[0])
    period = 2.0 * math.pi / abs(lam)
    if period / h < 8.0:
        raise BandViolation(
            f"{period / h:.2f} samples per period at lambda = {lam}; need >= 8"
        )
    if span < 10.0 * period:
        raise BandViolation(f"window of {span / period:.2f} periods at lambda = {lam}; need >= 10")
    if abs(lam) > trace.band_limit:
        raise BandViolation(
            f"|lambda| = {abs(lam)} beyond taper-free band {trace.band_limit}"
        )
    center = 0.5 * (u[0] + u[-1])
    hann = 0.5 * (1.0 + np.cos(2.0 * math.pi * (u - center) / span))
    phase = np.exp(-1j * lam * u)
    raw = h * np.sum(trace.values * hann * phase)
    # leakage factor: what the same windowed sum does to the band-limited
    # delta, which carries unit spectrum across the band
    leak = h * np.sum(_bandlimited_delta(u - center, trace.band_limit / 0.8) * hann * phase)
    fd_gain = (8.0 * math.sin(lam * h) - math.sin(2.0 * lam * h)) / (6.0 * h * lam)
    return complex(raw / leak / fd_gain)
