"""Thurston equivalence classes of twisted cubic rabbit polynomials.

Three mutually cross-validating routes to the class of ``g R3`` (and of
``D_x^m R_n`` for many-eared rabbits):

* :mod:`cubicrabbit.nineadic` - closed forms on the 9-adic digits of a
  twist power, with the reduction recursion as an independent oracle;
* :mod:`cubicrabbit.wreath` - the wreath recursion, lifting set map, and
  whole-word classifier, plus nucleus computation for the self-similar
  action;
* :mod:`cubicrabbit.prefix` - the length-decreasing rewriting system on the
  right end of a word.

:mod:`cubicrabbit.census` tallies the classes across free-group balls with
any of the word algorithms, and :mod:`cubicrabbit.cli` exposes everything
as the ``cubicrabbit`` command.
"""

from .census import CensusReport, export_csv, format_table, ratio_trend, run_census
from .errors import ContractionBudgetError, InternalInconsistencyError
from .nineadic import (
    Base,
    DigitExpansion,
    PolyClass3,
    PolyClassN,
    Power,
    classify_power_3,
    classify_power_n,
    expand,
    oracle_classify_3,
    oracle_classify_n,
    reconstruct,
    reduce_once_3,
    reduce_once_n,
)
from .prefix import (
    RULES,
    AuditReport,
    RewriteRule,
    TERMINAL_CLASS,
    classify_prefix,
    iter_prefix_orbit,
    prefix_step,
    rule_audit,
)
from .words import (
    IDENTITY,
    Word,
    WordSyntaxError,
    ball,
    ball_from,
    ball_size,
    concat,
    exponent_sum,
    format_word,
    generator_power,
    identity,
    invert,
    parse,
)
from .wreath import (
    Perm3,
    RHO,
    TERMINAL_CLASS_3,
    WreathElement,
    classify_whole_word,
    contraction_depth,
    iter_psi_bar_orbit,
    liftable,
    nucleus,
    phi,
    psi_bar,
    restriction,
    restriction_path,
    verify_nucleus,
    wreath_mul,
    y_power,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "Base",
    "CensusReport",
    "ContractionBudgetError",
    "DigitExpansion",
    "IDENTITY",
    "InternalInconsistencyError",
    "Perm3",
    "PolyClass3",
    "PolyClassN",
    "Power",
    "RHO",
    "RULES",
    "RewriteRule",
    "TERMINAL_CLASS",
    "TERMINAL_CLASS_3",
    "Word",
    "WordSyntaxError",
    "WreathElement",
    "ball",
    "ball_from",
    "ball_size",
    "classify_power_3",
    "classify_power_n",
    "classify_prefix",
    "classify_whole_word",
    "concat",
    "contraction_depth",
    "expand",
    "exponent_sum",
    "export_csv",
    "format_table",
    "format_word",
    "generator_power",
    "identity",
    "invert",
    "iter_prefix_orbit",
    "iter_psi_bar_orbit",
    "liftable",
    "nucleus",
    "oracle_classify_3",
    "oracle_classify_n",
    "parse",
    "phi",
    "psi_bar",
    "ratio_trend",
    "reconstruct",
    "reduce_once_3",
    "reduce_once_n",
    "restriction",
    "restriction_path",
    "rule_audit",
    "run_census",
    "verify_nucleus",
    "wreath_mul",
    "y_power",
]
