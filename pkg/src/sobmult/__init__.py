"""Exact decision procedures for Sobolev multiplication and embedding
statements, with discrete norms to probe them numerically."""

from .exponents import (
    AtomicCondition,
    DomainKind,
    DomainSpec,
    ExponentDomainError,
    Family,
    ParseError,
    Relation,
    SpaceSpec,
    ValidationError,
    as_rational,
    bounded_domain,
    conjugate_exponent,
    rational_parse,
    validate_space,
    whole_space,
)
from .rules import (
    Certificate,
    EmbedQuery,
    MultQuery,
    QueryError,
    RuleId,
    Status,
    Verdict,
    check,
    check_embedding,
    check_multiplication,
    necessity_disproof,
    replay_certificate,
)
from .interpolation import InterpMethod, InterpParams, interpolate_bilinear, interpolate_specs
from .grid import GridFunction, load_csv, load_sobg, save_csv, save_sobg
from .norms import (
    LPFilterBank,
    besov_norm,
    bessel_norm,
    lp_block,
    lp_norm_grid,
    slobodeckij_seminorm,
    sobolev_norm,
    triebel_norm,
)
from .experiments import (
    ConfigError,
    CounterexampleConfig,
    ExperimentReport,
    UsageError,
    build_gN,
    counterexample_growth,
    empirical_boundedness,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicCondition",
    "Certificate",
    "ConfigError",
    "CounterexampleConfig",
    "DomainKind",
    "DomainSpec",
    "EmbedQuery",
    "ExperimentReport",
    "ExponentDomainError",
    "Family",
    "GridFunction",
    "InterpMethod",
    "InterpParams",
    "LPFilterBank",
    "MultQuery",
    "ParseError",
    "QueryError",
    "Relation",
    "RuleId",
    "SpaceSpec",
    "Status",
    "UsageError",
    "ValidationError",
    "Verdict",
    "as_rational",
    "besov_norm",
    "bessel_norm",
    "bounded_domain",
    "build_gN",
    "check",
    "check_embedding",
    "check_multiplication",
    "conjugate_exponent",
    "counterexample_growth",
    "empirical_boundedness",
    "interpolate_bilinear",
    "interpolate_specs",
    "load_csv",
    "load_sobg",
    "lp_block",
    "lp_norm_grid",
    "necessity_disproof",
    "rational_parse",
    "replay_certificate",
    "save_csv",
    "save_sobg",
    "slobodeckij_seminorm",
    "sobolev_norm",
    "triebel_norm",
    "validate_space",
    "whole_space",
]
