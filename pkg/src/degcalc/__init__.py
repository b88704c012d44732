"""Exact classes and degrees of rank-2 Brill-Noether loci."""

from .exact import ExactRational, bernoulli, binomial, factorial, format_rational, parse_rational
from .ring import GeneratorSpec, GradedPoly, GradedRing, chern_ring, hecke_ring, moduli_ring, theta_ring
from .symfun import (
    ChernSeries,
    ChSeries,
    Partition,
    ch_to_chern,
    chern_to_ch,
    determinant,
    dualize,
    half_twist_ch,
    pfaffian,
    schur,
    series_inverse,
)
from .classes import (
    Context,
    LocusSpec,
    OutOfRange,
    brill_noether_rho,
    castelnuovo_count,
    expected_codim,
    expected_dim,
    lambda_coeff,
    type2_class,
    type3_class,
    w_class,
)
from .intersect import (
    PairingConvention,
    Target,
    TwosFactor,
    ZPairing,
    calibrate_even_convention,
    evaluate_degree,
    evaluate_degree_Z,
    pair_M,
    pair_Z,
    pairing_table,
)

__version__ = "0.1.0"

__all__ = [
    "ExactRational", "bernoulli", "binomial", "factorial", "format_rational", "parse_rational",
    "GeneratorSpec", "GradedPoly", "GradedRing", "chern_ring", "hecke_ring", "moduli_ring", "theta_ring",
    "ChernSeries", "ChSeries", "Partition", "ch_to_chern", "chern_to_ch", "determinant", "dualize",
    "half_twist_ch", "pfaffian", "schur", "series_inverse",
    "Context", "LocusSpec", "OutOfRange", "brill_noether_rho", "castelnuovo_count", "expected_codim",
    "expected_dim", "lambda_coeff", "type2_class", "type3_class", "w_class",
    "PairingConvention", "Target", "TwosFactor", "ZPairing", "calibrate_even_convention",
    "evaluate_degree", "evaluate_degree_Z", "pair_M", "pair_Z", "pairing_table",
]
