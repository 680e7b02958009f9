"""Certified effective bounds for pluricanonical systems on 3- and 4-folds.

The package keeps every number exact: expression trees over the rationals
with radicals (:mod:`pluribound.expr`), certified interval enclosures and
comparisons with an explicit precision cap (:mod:`pluribound.enclose`),
inequality systems optimized over an integer branch parameter
(:mod:`pluribound.bounds`), the threshold families themselves
(:mod:`pluribound.threefold`, :mod:`pluribound.higherdim`), and shipped
reference tables with an engine-vs-table verifier
(:mod:`pluribound.refdata`).
"""

from .bounds import (Bound, Branch, ThresholdReport, combine_max, implies,
                     min_lattice, minimize_over_m)
from .enclose import (DEFAULT_PRECISION_CAP, Interval, Order, compare,
                      decimal_enclosure, enclosure, floor_of, is_rational,
                      sign_of)
from .errors import (DataIntegrityError, DegenerateFraction, DivisionByZero,
                     DomainError, NoAdmissibleBranch, ParseError,
                     PluriboundError, PrecisionExhausted, TailNotMonotone,
                     UnsupportedDimension)
from .expr import (ONE, ZERO, RealExpr, as_expr, cbrt, floor_expr, frac_expr,
                   parse_expr, rational, render, root, sqrt)
from .higherdim import (DichotomyReport, HdBirReport, HdNvReport,
                        bir_alpha_threshold, bir_l_min, bir_s_t,
                        default_profile, dichotomy_bir, dichotomy_nv, mu,
                        nv_alpha_threshold, nv_multiplier, r_factor)
from .refdata import DiffReport, load_table, verify_all
from .threefold import (AllLReport, all_l_threshold, bir_heuristic_m,
                        bir_threshold, f_value, map2_threshold,
                        map3_threshold, map4_threshold, nv_heuristic_m,
                        nv_threshold, trican_threshold)

__version__ = "0.1.0"

__all__ = [
    "AllLReport", "Bound", "Branch", "DEFAULT_PRECISION_CAP",
    "DataIntegrityError", "DegenerateFraction", "DichotomyReport",
    "DiffReport", "DivisionByZero", "DomainError", "HdBirReport",
    "HdNvReport", "Interval", "NoAdmissibleBranch", "ONE", "Order",
    "ParseError", "PluriboundError", "PrecisionExhausted", "RealExpr",
    "TailNotMonotone", "ThresholdReport", "UnsupportedDimension", "ZERO",
    "all_l_threshold", "as_expr", "bir_alpha_threshold", "bir_heuristic_m",
    "bir_l_min", "bir_s_t", "bir_threshold", "cbrt", "combine_max",
    "compare", "decimal_enclosure", "default_profile", "dichotomy_bir",
    "dichotomy_nv", "enclosure", "f_value", "floor_expr", "floor_of",
    "frac_expr", "implies", "is_rational", "load_table", "map2_threshold",
    "map3_threshold", "map4_threshold", "min_lattice", "minimize_over_m",
    "mu", "nv_alpha_threshold", "nv_heuristic_m", "nv_multiplier",
    "nv_threshold", "parse_expr", "r_factor", "rational", "render", "root",
    "sign_of", "sqrt", "trican_threshold", "verify_all", "__version__",
]
