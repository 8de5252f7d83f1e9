"""Embeddability of o_K into orders of central simple algebras over Q and imaginary quadratic fields."""

__version__ = "0.1.0"

from .basefield import BaseField, Ideal, KElement, PrimeIdeal, prime_ideals_above, resolve_prime
from .classfield import (
    Custom,
    LocalType,
    MaximalDivision,
    MaximalSplit,
    OrderGenusSpec,
    SelectivityReport,
    decide_class,
    genus_class_count,
    selectivity_degree,
    selectivity_report,
    stabilizer_subgroup,
)
from .classgroup import class_group
from .csa import AlgebraSpec, global_embeddable, local_embeddable, local_index, validate
from .driver import ReportDocument, ScenarioConfig, explain, run
from .errors import (
    NotEmbeddableError,
    OracleMismatchError,
    OracleNotApplicable,
    SelectivityError,
    UndeterminedPrimeError,
    ValidationError,
)
from .extension import RelativeExtension, maximality_check, norm_class_subgroup, splitting_type

__all__ = [
    "AlgebraSpec",
    "BaseField",
    "Custom",
    "Ideal",
    "KElement",
    "LocalType",
    "MaximalDivision",
    "MaximalSplit",
    "NotEmbeddableError",
    "OracleMismatchError",
    "OracleNotApplicable",
    "OrderGenusSpec",
    "PrimeIdeal",
    "RelativeExtension",
    "ReportDocument",
    "ScenarioConfig",
    "SelectivityError",
    "SelectivityReport",
    "UndeterminedPrimeError",
    "ValidationError",
    "class_group",
    "decide_class",
    "explain",
    "genus_class_count",
    "global_embeddable",
    "local_embeddable",
    "local_index",
    "maximality_check",
    "norm_class_subgroup",
    "prime_ideals_above",
    "resolve_prime",
    "run",
    "selectivity_degree",
    "selectivity_report",
    "splitting_type",
    "stabilizer_subgroup",
    "validate",
]
