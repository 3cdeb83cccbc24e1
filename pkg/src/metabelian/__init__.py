"""Exact computations with the metabelian groups Gamma(S) and their geometric models."""

from .classify import commensurable_bs, gamma_n_spec, qi_gamma, qi_gamma_S, rational_power_equivalent
from .group import GroupElement, GroupSpec, evaluate_word, generator, identity, normal_form, to_matrix
from .ring import NRational, factorize, n_adic_norm, n_adic_valuation, primitive_root

__all__ = [
    "GroupElement",
    "GroupSpec",
    "NRational",
    "commensurable_bs",
    "evaluate_word",
    "factorize",
    "gamma_n_spec",
    "generator",
    "identity",
    "n_adic_norm",
    "n_adic_valuation",
    "normal_form",
    "primitive_root",
    "qi_gamma",
    "qi_gamma_S",
    "rational_power_equivalent",
    "to_matrix",
]
