"""Commutator semi-lattices, nilpotence of groups and non-associative rings,
and an executable check of Hall's nilpotence criterion."""

from .catalog import builtin_catalog, get_group
from .csl import FiniteCsl, check_csl_axioms, check_jacobi
from .groups import FiniteGroup, nsub_context
from .nilpotence import gamma_series, hall_bound, hall_check, nilpotency_class
from .rings import NARing, build_paper_example, ideal_context

__all__ = [
    "FiniteCsl",
    "FiniteGroup",
    "NARing",
    "build_paper_example",
    "builtin_catalog",
    "check_csl_axioms",
    "check_jacobi",
    "gamma_series",
    "get_group",
    "hall_bound",
    "hall_check",
    "ideal_context",
    "nilpotency_class",
    "nsub_context",
]
