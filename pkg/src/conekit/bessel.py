"""Real-order Bessel/Hankel functions and their large-argument expansions.

J_nu and Y_nu are delegated to scipy's AMOS/cephes backends (machine
precision across the supported envelope); the truncated Hankel expansion
with the coefficients a_k(nu) is implemented here because the symbol
machinery consumes the coefficients themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as _sp

from .errors import NonConvergence, OutOfEnvelope, RegimeViolation

__all__ = [
    "BesselEval",
    "bessel_j",
    "bessel_y",
    "hankel1",
    "hankel2",
    "bessel_j_deriv",
    "bessel_y_deriv",
    "asymptotic_coefficients",
    "hankel_asymptotic",
    "evaluate",
]

NU_MAX = 200.0
Z_MAX = 1.0e6
K_MAX = 12


@dataclass(frozen=True)
class BesselEval:
    nu: float
    z: float
    value: float
    method: str  # series | asymptotic | recurrence
    est_abs_err: float


def _check_envelope(nu, z) -> None:
    nu_arr = np.asarray(nu, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    if np.any(nu_arr < 0) or np.any(nu_arr > NU_MAX):
        raise OutOfEnvelope(f"order nu={nu} outside [0, {NU_MAX}]")
    if np.any(z_arr <= 0) or np.any(z_arr > Z_MAX):
        raise OutOfEnvelope(f"argument z={z} outside (0, {Z_MAX}]")


def _checked(raw, nu, z):
    if np.any(~np.isfinite(raw)):
        raise NonConvergence(f"Bessel evaluation failed at nu={nu}, z={z}")
    return raw


def bessel_j(nu, z):
    """J_nu(z) for nu >= 0, z > 0; accepts array arguments."""
    _check_envelope(nu, z)
    return _checked(_sp.jv(nu, z), nu, z)


def bessel_y(nu, z):
    """Y_nu(z) for nu >= 0, z > 0; accepts array arguments."""
    _check_envelope(nu, z)
    return _checked(_sp.yv(nu, z), nu, z)


def hankel1(nu, z):
    return bessel_j(nu, z) + 1j * bessel_y(nu, z)


def hankel2(nu, z):
    return bessel_j(nu, z) - 1j * bessel_y(nu, z)


def bessel_j_deriv(nu, z):
    """J_nu'(z) via the recurrence J' = J_{nu-1} - (nu/z) J_nu."""
    _check_envelope(nu, z)
    z_arr = np.asarray(z, dtype=float)
    return _checked(_sp.jv(np.asarray(nu, dtype=float) - 1.0, z_arr), nu, z) - (
        np.asarray(nu, dtype=float) / z_arr
    ) * bessel_j(nu, z)


def bessel_y_deriv(nu, z):
    _check_envelope(nu, z)
    z_arr = np.asarray(z, dtype=float)
    return _checked(_sp.yv(np.asarray(nu, dtype=float) - 1.0, z_arr), nu, z) - (
        np.asarray(nu, dtype=float) / z_arr
    ) * bessel_y(nu, z)


def asymptotic_coefficients(nu: float, count: int) -> np.ndarray:
    """a_0..a_{count-1} with a_k = prod_{m<k}(4 nu^2 - (2m+1)^2) / (k! 8^k)."""
    if count > K_MAX + 1:
        raise RegimeViolation(f"at most {K_MAX} expansion terms supported")
    four_nu_sq = 4.0 * nu * nu
    out = np.empty(count)
    out[0] = 1.0
    for k in range(1, count):
        out[k] = out[k - 1] * (four_nu_sq - (2 * k - 1) ** 2) / (8.0 * k)
    return out


def hankel_asymptotic(nu: float, z, terms: int):
    """Truncated large-argument expansion of H^(1)_nu(z).

    sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} sum_{k<terms} i^k a_k(nu) / z^k
    """
    if not (1 <= terms <= K_MAX):
        raise RegimeViolation(f"terms must be in [1, {K_MAX}], got {terms}")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= nu):
        raise RegimeViolation(f"asymptotic regime requires z > nu (nu={nu})")
    a = asymptotic_coefficients(nu, terms)
    series = np.zeros_like(z_arr, dtype=complex)
    for k in range(terms - 1, -1, -1):
        series = series / z_arr + (1j**k) * a[k]
    phase = z_arr - nu * np.pi / 2.0 - np.pi / 4.0
    out = np.sqrt(2.0 / (np.pi * z_arr)) * np.exp(1j * phase) * series
    return complex(out) if np.isscalar(z) else out


def evaluate(nu: float, z: float) -> BesselEval:
    """J_nu(z) with regime diagnostics and a best-effort error estimate."""
    val = float(bessel_j(nu, z))
    if z <= max(12.0, nu):
        method = "series"
    elif z >= max(30.0, 2.0 * nu):
        method = "asymptotic"
    else:
        method = "recurrence"
    # backend is near machine precision; amplitude-scale ulp estimate
    est = 8.0 * np.finfo(float).eps * max(abs(val), math.sqrt(2.0 / (math.pi * z)))
    return BesselEval(nu=nu, z=z, value=val, method=method, est_abs_err=est)
