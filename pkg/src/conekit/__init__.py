"""conekit: waves on product cones, mode by mode.

Numerical verification harness for the diffraction theory of exact cones
C(N) = R_+ x N: cross-section spectra, Bessel machinery, regularized mode
kernels, the scattering matrix by three independent routes (spectral closed
form, radial ODE, radiation field), and polyhomogeneous symbol extraction.
"""

from .bessel import (
    asymptotic_coefficients,
    bessel_j,
    bessel_j_deriv,
    bessel_y,
    bessel_y_deriv,
    evaluate,
    hankel1,
    hankel2,
    hankel_asymptotic,
)
from .cross_section import (
    BoundaryCondition,
    ConeGeometry,
    CrossSectionSpec,
    Mode,
    PairClass,
    build_cross_section,
    classify_pair,
    geodesic_distance,
    modes,
    parse_ntable,
)
from .asymptotics import (
    diffraction_coefficient_mode,
    diffraction_kernel,
    mode_symbol,
    phg_fit,
    verify_theorem_1_1,
    verify_theorem_1_2,
)
from .kernel import (
    QuadratureSpec,
    halfwave_mode_kernel,
    oscillatory_quadrature,
    sine_mode_kernel,
    sine_mode_kernel_batch,
)
from .radiation import (
    radiation_field_mode,
    scattering_matrix_from_radiation,
    scattering_operator_kernel_mode,
)
from .scattering import (
    abel_mode_sum,
    extract_in_out,
    radial_solution,
    scattering_eigenvalue,
    scattering_kernel,
    scattering_matrix,
)
from . import errors

__version__ = "0.1.0"
