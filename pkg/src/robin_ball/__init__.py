"""Robin Laplacian eigenvalues on the unit N-ball and the unit interval."""
from .ball_spectrum import (
    BallProblem,
    EigenvalueRecord,
    SignClass,
    Spectrum,
    assemble_spectrum,
    branch_eigenvalue,
    first_two,
    multiplicity,
    negative_count,
    radial_eigenfunction,
    spectrum_by_count,
    zonal_harmonic,
)
from .bessel_zeros import bessel_zero, bessel_zeros
from .exceptions import (
    BesselOverflowError,
    BranchError,
    ConvergenceError,
    DomainError,
    PoleError,
    RatioUndefinedError,
    RobinError,
)
from .interval_spectrum import IntervalEigenpair, IntervalProblem, interval_eigenfunction, solve_interval
from .oracle import verify_interval, verify_spectrum
from .special_functions import Order, bessel_i, bessel_i_scaled, bessel_j

__version__ = "0.1.0"
