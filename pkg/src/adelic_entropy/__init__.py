"""Entropy invariants of algebraic Z^d-actions.

Mahler measures, p-adic local factors and the adelic decomposition of the
entropy of principal actions, plus finite-window experiments with exact
integer and finite-field linear algebra.  All logarithms are natural.
"""

from .approx import (
    ApproxSeries,
    elek_rank_series,
    padic_det_series,
    peters_series,
    posent_check,
)
from .entropy import (
    EntropyReport,
    ModulePresentation,
    decompose,
    lind_ward,
    principal_entropy,
    rho_p_principal,
    solenoid_entropy,
    von_neumann_rank,
)
from .errors import (
    DimensionError,
    EntropyError,
    GuardError,
    InconsistencyError,
    ParseError,
    ZeroPolynomialError,
)
from .kernels import BACKEND
from .laurent import (
    LaurentPoly,
    RationalMatrix,
    char_poly,
    evaluate_on_torus,
    format_poly,
    involution,
    mul,
    parse,
)
from .mahler import MahlerResult, mahler, mahler_grid, mahler_univariate
from .padic import PlaceValue, Prime, local_factor, p_content, relevant_primes, vp
from .window import (
    Window,
    build_restriction,
    det_bareiss,
    det_exact,
    peters_bruteforce,
    rank_mod_p,
    translate_rank,
    vp_det,
)

__version__ = "0.1.0"
