"""Equations and invariants of Rees algebras of almost linearly presented
height-two ideals in k[x, y].

Typical use::

    from scrollrees import monomial_example, rees_ideal, invariant_report
    pd = monomial_example(2, 1, 1)
    rg = rees_ideal(pd)
"""

from .algebra import Field, Poly, PolyRing, parse_poly
from .presentation import (CanonicalForm, PresentationData, build_from_pair,
                           canonicalize, from_matrix, monomial_example,
                           random_presentation, validate)
from .scroll import ScrollStructure, build_scroll, eligible_tuples
from .rees import PiMap, ReesGenerators, fiber_equations, rees_ideal
from .invariants import (betti_table, hilbert_power, invariant_report,
                         reduction_number, regularity_power)
from .oracle import PowerOracle, span_dim, verify

__all__ = [
    "Field", "Poly", "PolyRing", "parse_poly",
    "CanonicalForm", "PresentationData", "build_from_pair", "canonicalize",
    "from_matrix", "monomial_example", "random_presentation", "validate",
    "ScrollStructure", "build_scroll", "eligible_tuples",
    "PiMap", "ReesGenerators", "fiber_equations", "rees_ideal",
    "betti_table", "hilbert_power", "invariant_report", "reduction_number",
    "regularity_power", "PowerOracle", "span_dim", "verify",
]
