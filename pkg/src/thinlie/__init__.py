"""Graded Lie algebras over odd prime fields from homogeneous presentations.

Build the maximal N-graded Lie algebra on two degree-1 generators subject
to homogeneous relators, reduce it to its centerless core, and analyze
the resulting thin structure (diamond locations and types, chains,
two-step centralizers, collapse degrees).
"""

from .fields import MAX_MODULUS, PrimeField, Scalar, lucas_binomial
from .presentations import (
    Presentation,
    Relator,
    RelatorSyntaxError,
    Word,
    build_minus1,
    build_theorem41,
    make_relator,
    parse_relators,
    v_word,
)
from .engine import (
    GradedAlgebra,
    HomElement,
    compute,
    load_algebra,
    save_algebra,
    thin_core,
)
from .analysis import (
    DiamondRecord,
    ThinReport,
    check_chain_theorem,
    check_covering,
    classify_component,
    full_report,
    normalize_generators,
    two_step_centralizer,
)
from .harness import (
    EXPERIMENTS,
    ExperimentResult,
    load_grid,
    run_all,
    run_experiment,
)

__version__ = "1.0.0"

__all__ = [
    "MAX_MODULUS",
    "PrimeField",
    "Scalar",
    "lucas_binomial",
    "Presentation",
    "Relator",
    "RelatorSyntaxError",
    "Word",
    "build_minus1",
    "build_theorem41",
    "make_relator",
    "parse_relators",
    "v_word",
    "GradedAlgebra",
    "HomElement",
    "compute",
    "load_algebra",
    "save_algebra",
    "thin_core",
    "DiamondRecord",
    "ThinReport",
    "check_chain_theorem",
    "check_covering",
    "classify_component",
    "full_report",
    "normalize_generators",
    "two_step_centralizer",
    "EXPERIMENTS",
    "ExperimentResult",
    "load_grid",
    "run_all",
    "run_experiment",
    "__version__",
]
