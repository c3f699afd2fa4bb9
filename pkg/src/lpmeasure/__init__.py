"""Numerical toolkit for L^p-type norms of measures through their Fourier-Stieltjes transforms."""
from .errors import (
    DivergenceError,
    DomainError,
    LpMeasureError,
    NumericalIntegrityError,
    PreconditionError,
    SpecParseError,
)
from .grid import ExponentPair, GridFunction, GridSpec, SetOfIntervals, conjugate_exponent
from .measures import (
    Atomic,
    Density,
    Measure,
    SelfSimilar,
    Sum,
    atoms,
    cantor,
    cantor_function,
    delta,
    density,
    dilate,
    gaussian_density,
    lebesgue,
    restrict,
    total_variation,
    zero,
)
from .transforms import fourier_function, fourier_stieltjes, fourier_stieltjes_at
from .norms import (
    Dictionary,
    LogGrid,
    NormConfig,
    NormResult,
    hat_norm,
    op_norm,
    restricted_star_norm,
    star_norm,
    star_norm_lower,
    vp_star_norm,
)
from .inequalities import InequalityReport
from .parsing import parse_interval, parse_measure
from .config import RunConfig, load_config, parse_config

__version__ = "0.1.0"
