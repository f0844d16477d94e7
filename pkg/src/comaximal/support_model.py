"""Closed forms for G2 through the support-set (zero-set) model.

A vertex x of G2 is encoded by its zero-set ``Z(x) = {i : x mod p_i == 0}``,
a nonempty proper subset of ``[m] = {1, ..., m}``.  All vertices with the same
zero-set form a layer ``X_S``.  Two vertices are adjacent exactly when their
zero-sets are disjoint, so G2 is a weighted blow-up of the disjointness graph
on nonempty proper subsets of ``[m]``.  Everything here is computed from the
prime list alone; nothing touches residues.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from itertools import combinations

from .arithmetic import Modulus, distinct_primes, euler_phi, from_primes, is_prime, totient
from .errors import ComaximalError, FormulaMismatch, NotLargerPrime, RequiresThreePrimes


@functools.total_ordering
@dataclass(frozen=True)
class SupportSet:
    """Nonempty proper subset of ``{1, ..., m}``; members are 1-based prime indices."""

    members: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not 0 < len(members) < self.m:
            raise ComaximalError(f"support must be nonempty and proper in [{self.m}], got {set(members) or '{}'}")
        if members[0] < 1 or members[-1] > self.m:
            raise ComaximalError(f"support members must lie in 1..{self.m}, got {members}")

    @classmethod
    def of(cls, m: int, *members: int) -> SupportSet:
        return cls(members, m)

    @classmethod
    def from_mask(cls, mask: int, m: int) -> SupportSet:
        return cls(tuple(i + 1 for i in range(m) if mask >> i & 1), m)

    @classmethod
    def parse(cls, text: str, m: int) -> SupportSet:
        """Accepts ``"1+2"``, ``"{1,2}"`` or ``"S_1_2"``."""
        body = text.strip().removeprefix("S_").strip("{}")
        parts = [p for p in body.replace("+", ",").replace("_", ",").split(",") if p.strip()]
        return cls(tuple(int(p) for p in parts), m)

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.members)

    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.m + 1) if i not in self.members)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.members), self.members)

    def __lt__(self, other: SupportSet) -> bool:
        return self.sort_key() < other.sort_key()

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    @property
    def label(self) -> str:
        return "+".join(map(str, self.members))

    @property
    def dot_id(self) -> str:
        return "S_" + "_".join(map(str, self.members))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def all_supports(m: int) -> list[SupportSet]:
    """Every nonempty proper subset of ``[m]``, by size then lexicographically."""
    return [SupportSet(c, m) for k in range(1, m) for c in combinations(range(1, m + 1), k)]


def _check_same_m(a: SupportSet, b: SupportSet) -> None:
    if a.m != b.m:
        raise ComaximalError(f"supports live in different ambient sets: m={a.m} vs m={b.m}")


def _check_mod(mod: Modulus, s: SupportSet) -> None:
    if s.m != mod.m:
        raise ComaximalError(f"support {s} is over [{s.m}] but {mod.n} has {mod.m} primes")


def layers_adjacent(a: SupportSet, b: SupportSet) -> bool:
    _check_same_m(a, b)
    return not (a.mask & b.mask)


def divisor(mod: Modulus, s: SupportSet) -> int:
    _check_mod(mod, s)
    return math.prod(mod.prime(i) for i in s.members)


def class_size(mod: Modulus, s: SupportSet) -> int:
    """``|X_S|``: coordinates outside S range over the nonzero residues."""
    _check_mod(mod, s)
    return math.prod(mod.prime(j) - 1 for j in s.complement())


def neighbor_layers(s: SupportSet) -> list[SupportSet]:
    """Layers joined to ``X_S``: the nonempty subsets of the complement."""
    rest = s.complement()
    return [SupportSet(c, s.m) for k in range(1, len(rest) + 1) for c in combinations(rest, k)]


def degree_by_layers(mod: Modulus, s: SupportSet) -> int:
    return sum(class_size(mod, t) for t in neighbor_layers(s))


def degree(mod: Modulus, s: SupportSet) -> int:
    """Common degree of every vertex in ``X_S``.

    Product form: nonzero on S, anything but all-nonzero on the complement.
    Raises FormulaMismatch if it disagrees with the sum over neighbour layers.
    """
    _check_mod(mod, s)
    rest = s.complement()
    on_s = math.prod(mod.prime(i) - 1 for i in s.members)
    value = on_s * (math.prod(mod.prime(j) for j in rest) - math.prod(mod.prime(j) - 1 for j in rest))
    summed = degree_by_layers(mod, s)
    if value != summed:
        raise FormulaMismatch(f"degree of X_{s} for n={mod.n}: product form {value} != layer sum {summed}")
    return value


@dataclass(frozen=True)
class LayerSummary:
    support: SupportSet
    divisor: int
    size: int
    degree: int


@dataclass(frozen=True)
class QuotientModel:
    mod: Modulus
    layers: tuple[LayerSummary, ...]

    def __post_init__(self) -> None:
        if len(self.layers) != 2**self.mod.m - 2:
            raise FormulaMismatch(f"expected {2**self.mod.m - 2} layers, got {len(self.layers)}")
        total = sum(layer.size for layer in self.layers)
        if total != self.mod.n - 1 - euler_phi(self.mod):
            raise FormulaMismatch(f"layer sizes sum to {total}, not n - 1 - phi(n)")

    @property
    def vertex_count(self) -> int:
        return sum(layer.size for layer in self.layers)

    def layer(self, s: SupportSet) -> LayerSummary:
        for layer in self.layers:
            if layer.support == s:
                return layer
        raise KeyError(str(s))

    def edges(self) -> list[tuple[SupportSet, SupportSet]]:
        """Disjoint layer pairs in canonical order."""
        sups = [layer.support for layer in self.layers]
        return [(a, b) for a, b in combinations(sups, 2) if layers_adjacent(a, b)]


def build_quotient(mod: Modulus) -> QuotientModel:
    return QuotientModel(
        mod,
        tuple(
            LayerSummary(s, divisor(mod, s), class_size(mod, s), degree(mod, s))
            for s in all_supports(mod.m)
        ),
    )


def min_degree_support(m: int) -> SupportSet:
    """``[m] minus {m}``, the layer whose only neighbours sit in ``X_{m}``."""
    return SupportSet(tuple(range(1, m)), m)


def cut_support(m: int) -> SupportSet:
    return SupportSet((m,), m)


def min_degree(mod: Modulus) -> tuple[int, SupportSet]:
    value = math.prod(p - 1 for p in mod.primes[:-1])
    argmin = min_degree_support(mod.m)
    # the minimum must be attained on exactly one layer
    attained = []
    for s in all_supports(mod.m):
        d = degree(mod, s)
        if d < value:
            raise FormulaMismatch(f"layer X_{s} has degree {d} below {value}")
        if d == value:
            attained.append(s)
    if attained != [argmin]:
        raise FormulaMismatch(f"minimum degree {value} attained on {list(map(str, attained))}, expected only {argmin}")
    return value, argmin


def algorithm_kappa(primes) -> int:
    """Connectivity of G2 straight from the ordered distinct primes.

    ``m = 1`` means n is prime and G2 is empty, so the answer is 0.
    """
    m = len(primes)
    if m == 1:
        return 0
    if m == 2:
        return primes[0] - 1
    k = 1
    for i in range(m - 1):
        k *= primes[i] - 1
    return k


def kappa(mod: Modulus) -> int:
    k = algorithm_kappa(mod.primes)
    q, r = divmod(euler_phi(mod), mod.primes[-1] - 1)
    if r or q != k:
        raise FormulaMismatch(f"n={mod.n}: loop gives {k}, phi(n)/(p_m - 1) gives {q} remainder {r}")
    return k


def kappa_of_integer(n: int) -> int:
    """Connectivity for any squarefree ``n >= 2``, including prime ``n`` (returns 0)."""
    return algorithm_kappa(distinct_primes(n))


def lambda_edge(mod: Modulus) -> int:
    k = kappa(mod)
    delta, _ = min_degree(mod)
    if k != delta:
        raise FormulaMismatch(f"n={mod.n}: kappa {k} != delta {delta}")
    return k


def prior_upper_bound(mod: Modulus) -> int:
    """The earlier bound ``phi(p_1 ... p_{m-1})``, via a generic totient of ``n / p_m``."""
    return totient(mod.n // mod.primes[-1])


def layer_distance(a: SupportSet, b: SupportSet) -> int:
    """Distance between a vertex of ``X_a`` and a different vertex of ``X_b``.

    ``a == b`` is allowed: distinct vertices of one layer are false twins at
    distance 2.
    """
    _check_same_m(a, b)
    if not a.mask & b.mask:
        return 1
    if a.mask | b.mask == (1 << a.m) - 1:
        return 3
    return 2


def distance_case(a: SupportSet, b: SupportSet) -> str:
    d = layer_distance(a, b)
    if d == 1:
        return "disjoint"
    if d == 2:
        return f"intersecting, union != [{a.m}]"
    return f"intersecting, union = [{a.m}]"


def diameter(mod: Modulus) -> int:
    return 2 if mod.m == 2 else 3


def radius_and_center(mod: Modulus) -> tuple[int, list[SupportSet]]:
    if mod.m < 3:
        raise RequiresThreePrimes(f"radius/center are only established for m >= 3; {mod.n} has m = {mod.m}")
    return 2, [SupportSet((i,), mod.m) for i in range(1, mod.m + 1)]


def kappa_append_prime(mod: Modulus, q: int) -> int:
    """Connectivity after appending a new largest prime ``q``, from the old value."""
    if not is_prime(q) or q <= mod.primes[-1]:
        raise NotLargerPrime(f"q must be a prime larger than {mod.primes[-1]}, got {q}")
    value = (mod.primes[-1] - 1) * kappa(mod)
    direct = kappa(from_primes(mod.primes + (q,)))
    if value != direct:
        raise FormulaMismatch(f"append {q} to {mod.n}: recurrence {value} != direct {direct}")
    return value
