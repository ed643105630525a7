"""Interior transmission eigenvalues of the unit ball with constant index."""

__version__ = "0.1.0"

from .errors import DomainError, ITEError, NumericalError, PreconditionError
from .records import Contrast, CountReport, Kind, Mode, RealIte
from .special_functions import (
    ZeroTable,
    bessel_j,
    bessel_j_prime,
    bessel_zeros,
    hankel1,
    hankel1_prime,
    reduced_j,
    reduced_j_prime,
)
from .ite_1d import (
    Eigenpair1D,
    classify_multiplicity_1d,
    count_1d,
    eigenpair_1d,
    enumerate_real_ites_1d,
    f_1d,
    f_1d_derivatives,
)
from .ite_1d_complex import (
    ComplexIte,
    Rectangle,
    enumerate_complex_ites,
    strip_bound,
    titchmarsh_residual,
    winding_count,
)
from .ite_nd import (
    DimensionConfig,
    NuSpectrum,
    count_nd,
    dirichlet_count,
    enumerate_ites_for_nu,
    f_nu,
    multiplicity_mu,
    weyl_coefficient,
    weyl_report,
)
from .scattering import (
    CoincidenceReport,
    ScatterEntry,
    amplitude_entry,
    s_matrix_entry,
    verify_ite_te_coincidence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
