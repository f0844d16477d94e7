"""Structural invariants of the comaximal-graph core G2 of Z_n for squarefree n."""

from .arithmetic import Modulus, distinct_primes, euler_phi, factor_squarefree, from_primes
from .errors import ComaximalError
from .explicit_graph import ExplicitGraph, build_graph, zero_set
from .support_model import (
    SupportSet,
    algorithm_kappa,
    build_quotient,
    degree,
    diameter,
    kappa,
    kappa_append_prime,
    kappa_of_integer,
    layer_distance,
)

__all__ = [
    "ComaximalError",
    "ExplicitGraph",
    "Modulus",
    "SupportSet",
    "algorithm_kappa",
    "build_graph",
    "build_quotient",
    "degree",
    "diameter",
    "distinct_primes",
    "euler_phi",
    "factor_squarefree",
    "from_primes",
    "kappa",
    "kappa_append_prime",
    "kappa_of_integer",
    "layer_distance",
    "zero_set",
]
__version__ = "0.1.0"
