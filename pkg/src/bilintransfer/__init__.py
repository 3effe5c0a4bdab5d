"""Numerical toolkit for bilinear Fourier multipliers on the line and the integers.

Lorentz sequence norms, band-limited functions built from explicit
prototypes, symbol periodization, the discrete and continuous bilinear
operators, and seeded verification campaigns.
"""

__version__ = "0.1.0"

from .sequences import FiniteSequence
from .lorentz import Exponents, lp_norm, norm_grid, norm_pq, norm_weak, rearrangement, step_distribution
from .quadrature import QuadratureError, QuadratureSpec
from .bandlimited import (
    BOX_SPECTRUM,
    RAISED_COSINE,
    SINC,
    BandLimitedFunction,
    Kind,
    Prototype,
    extend_sequence,
    make_cutoff,
    periodize,
    restrict_lattice,
    shannon_reconstruct,
)
from .symbols import (
    Constant,
    GridSymbol,
    Phase,
    PeriodizedSymbol,
    SignLine,
    kernel_coeff,
    kernel_table,
    load_grid_csv,
    periodize_symbol,
    write_grid_csv,
)
from .operators import (
    apply_Cm,
    apply_Dm_kernel,
    apply_Dm_quadrature,
    bht_decomposition_rhs,
    bht_discrete,
    fourier_of_Cm,
    hilbert_discrete,
    kernel_c_alpha,
)

__all__ = [name for name in dir() if not name.startswith("_")]
