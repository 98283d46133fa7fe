"""Finite model checking for the Aristotelian necessity and contingency
syllogistic, read through two-parameter Leibniz models.

Individuals are functions picking one world element per parameter, concepts
are per-parameter extents, and the modalities quantify over parameters:
N(Ax) means x falls under A at every parameter, M(Ax) at some parameter.
On top of that sit the categorical statement forms, the apodeictic
e/o diagram, the contingency micro-candidates, the mood catalog with its
verdict table and countermodel fixtures, a deterministic bounded search,
and exhaustive property suites.
"""

from .catalog import (
    INVALID,
    MOODS,
    UNASSERTED,
    VALID,
    CatalogEntry,
    Fixture,
    Inference,
    ModalPattern,
    Mood,
    entries_in_scope,
    fixture,
    fixtures,
    instantiate,
    verdict_table,
)
from .dsl import (
    ModelFormatError,
    ParseError,
    SourceSpan,
    decode_model,
    encode_model,
    parse_mood,
    parse_statement,
    print_statement,
)
from .kernel import BACKEND
from .model_core import (
    ALL_FUNCTIONS,
    ALL_SUBSETS,
    BoundsTooLarge,
    EnumerationBounds,
    Model,
    bounds,
    canonical_key,
    enumerate_models,
    make_model,
    model_at_rank,
    model_count,
    rank,
)
from .search import (
    COUNTERMODEL_FOUND,
    FIXTURE_CONFIRMED,
    NO_COUNTERMODEL,
    CatalogRun,
    CheckReport,
    SearchInvariantError,
    confirm_fixture,
    find_countermodel,
    run_catalog,
    verify_up_to,
)
from .semantics import Statement, Term, contingent, diagram_expr, holds
from .suites import SUITE_NAMES, SuiteResult, run_suite, run_suites

__version__ = "0.1.0"

__all__ = [
    "ALL_FUNCTIONS",
    "ALL_SUBSETS",
    "BACKEND",
    "BoundsTooLarge",
    "COUNTERMODEL_FOUND",
    "CatalogEntry",
    "CatalogRun",
    "CheckReport",
    "EnumerationBounds",
    "FIXTURE_CONFIRMED",
    "Fixture",
    "INVALID",
    "Inference",
    "MOODS",
    "ModalPattern",
    "Model",
    "ModelFormatError",
    "Mood",
    "NO_COUNTERMODEL",
    "ParseError",
    "SUITE_NAMES",
    "SearchInvariantError",
    "SourceSpan",
    "Statement",
    "SuiteResult",
    "Term",
    "UNASSERTED",
    "VALID",
    "bounds",
    "canonical_key",
    "confirm_fixture",
    "contingent",
    "decode_model",
    "diagram_expr",
    "encode_model",
    "entries_in_scope",
    "enumerate_models",
    "find_countermodel",
    "fixture",
    "fixtures",
    "holds",
    "instantiate",
    "make_model",
    "model_at_rank",
    "model_count",
    "parse_mood",
    "parse_statement",
    "print_statement",
    "rank",
    "run_catalog",
    "run_suite",
    "run_suites",
    "verdict_table",
    "verify_up_to",
]
