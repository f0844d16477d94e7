"""G2 materialized on actual residues of Z_n.

Adjacency here comes from the gcd criterion on residues, never from zero-sets,
so the graph can serve as ground truth for the support model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import Modulus
from .errors import ComaximalError, CoordinateOutOfRange, ExceedsCap, NotAVertex, OutOfRange
from .support_model import QuotientModel, SupportSet, layers_adjacent

DEFAULT_GRAPH_CAP = 10_000


def crt_encode(mod: Modulus, residue: int) -> tuple[int, ...]:
    if not 0 <= residue < mod.n:
        raise OutOfRange(f"residue {residue} outside [0, {mod.n - 1}]")
    return tuple(residue % p for p in mod.primes)


def crt_decode(mod: Modulus, coords) -> int:
    coords = tuple(coords)
    if len(coords) != mod.m:
        raise CoordinateOutOfRange(f"expected {mod.m} coordinates, got {len(coords)}")
    total = 0
    for c, p in zip(coords, mod.primes):
        if not 0 <= c < p:
            raise CoordinateOutOfRange(f"coordinate {c} outside [0, {p - 1}]")
        cofactor = mod.n // p
        total += c * cofactor * pow(cofactor, -1, p)
    return total % mod.n


def zero_set(mod: Modulus, residue: int) -> SupportSet:
    """Zero-set of a vertex; raises NotAVertex for zero and for units."""
    coords = crt_encode(mod, residue)
    zeros = tuple(i + 1 for i, c in enumerate(coords) if c == 0)
    if not 0 < len(zeros) < mod.m:
        kind = "zero" if zeros else "a unit"
        raise NotAVertex(f"{residue} is {kind} mod {mod.n}, not a vertex of G2")
    return SupportSet(zeros, mod.m)


def _check_pair(mod: Modulus, x: int, y: int) -> None:
    for r in (x, y):
        if not 0 <= r < mod.n:
            raise OutOfRange(f"residue {r} outside [0, {mod.n - 1}]")
    if x == y:
        raise ComaximalError("adjacency is only defined for distinct residues")


def adjacent(mod: Modulus, x: int, y: int) -> bool:
    """Comaximality in Z_n: ``gcd(gcd(x, n), gcd(y, n)) == 1``."""
    _check_pair(mod, x, y)
    return math.gcd(math.gcd(x, mod.n), math.gcd(y, mod.n)) == 1


def adjacent_alt(mod: Modulus, x: int, y: int) -> bool:
    """The other form of the criterion, ``gcd(x, y, n) == 1``."""
    _check_pair(mod, x, y)
    return math.gcd(x, y, mod.n) == 1


@dataclass(frozen=True)
class Vertex:
    residue: int
    coords: tuple[int, ...]
    zero_set: SupportSet


@dataclass(frozen=True, eq=False)
class ExplicitGraph:
    """Vertices in ascending residue order; ``adjacency[i]`` holds sorted vertex indices."""

    mod: Modulus
    vertices: tuple[Vertex, ...]
    adjacency: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {v.residue: i for i, v in enumerate(self.vertices)})

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def residues(self) -> list[int]:
        return [v.residue for v in self.vertices]

    def index_of(self, residue: int) -> int:
        try:
            return self._index[residue]
        except KeyError:
            raise NotAVertex(f"{residue} is not a vertex of G2({self.mod.n})") from None

    def vertex(self, residue: int) -> Vertex:
        return self.vertices[self.index_of(residue)]

    def neighbors(self, residue: int) -> list[int]:
        return [self.vertices[j].residue for j in self.adjacency[self.index_of(residue)]]

    def degree(self, residue: int) -> int:
        return len(self.adjacency[self.index_of(residue)])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @property
    def edge_count(self) -> int:
        return sum(map(len, self.adjacency)) // 2

    def edges(self):
        """Edges as residue pairs ``(x, y)`` with ``x < y``, in lexicographic order."""
        for i, nbrs in enumerate(self.adjacency):
            x = self.vertices[i].residue
            for j in nbrs:
                if j > i:
                    yield x, self.vertices[j].residue

    def layer_residues(self, s: SupportSet) -> list[int]:
        return [v.residue for v in self.vertices if v.zero_set == s]


def build_graph(mod: Modulus, cap: int = DEFAULT_GRAPH_CAP) -> ExplicitGraph:
    if mod.n > cap:
        raise ExceedsCap(f"n = {mod.n} exceeds the graph cap {cap}")
    residues = [x for x in range(1, mod.n) if math.gcd(x, mod.n) != 1]
    vertices = tuple(Vertex(x, crt_encode(mod, x), zero_set(mod, x)) for x in residues)
    g = np.array([math.gcd(x, mod.n) for x in residues], dtype=np.int64)
    adjacency = tuple(tuple(np.flatnonzero(np.gcd(gi, g) == 1).tolist()) for gi in g)
    return ExplicitGraph(mod, vertices, adjacency)


def gcd_forms_agree(graph: ExplicitGraph) -> bool:
    """Both forms of the adjacency criterion agree on every pair of vertices."""
    x = np.array(graph.residues, dtype=np.int64)
    g = np.gcd(x, graph.mod.n)
    for i in range(len(x)):
        first = np.gcd(g[i], g) == 1
        second = np.gcd(np.gcd(x[i], x), graph.mod.n) == 1
        if not np.array_equal(first, second):
            return False
    return True


@dataclass
class BlowupReport:
    ok: bool
    discrepancies: list[str]

    def __bool__(self) -> bool:
        return self.ok


def check_blowup(graph: ExplicitGraph, model: QuotientModel, max_report: int = 20) -> BlowupReport:
    """Does the residue graph have exactly the layered structure the quotient declares?

    Checks that layer populations match the declared sizes, that layers are
    independent sets, and that each pair of layers is joined completely or not
    at all, as ``layers_adjacent`` says.
    """
    if graph.mod != model.mod:
        raise ComaximalError(f"graph is for n={graph.mod.n}, model for n={model.mod.n}")
    problems: list[str] = []
    supports = [layer.support for layer in model.layers]
    position = {s: k for k, s in enumerate(supports)}

    layer_of = np.empty(len(graph), dtype=np.int64)
    counts = [0] * len(supports)
    for i, v in enumerate(graph.vertices):
        k = position.get(v.zero_set)
        if k is None:
            problems.append(f"vertex {v.residue} has zero-set {v.zero_set} with no layer")
            k = -1
        else:
            counts[k] += 1
        layer_of[i] = k
    for layer, c in zip(model.layers, counts):
        if c != layer.size:
            problems.append(f"layer X_{layer.support}: {c} residues, declared size {layer.size}")
    if problems:
        return BlowupReport(False, problems[:max_report])

    joined = np.array([[layers_adjacent(a, b) for b in supports] for a in supports], dtype=bool)
    for i, nbrs in enumerate(graph.adjacency):
        actual = np.zeros(len(graph), dtype=bool)
        actual[list(nbrs)] = True
        expected = joined[layer_of[i]][layer_of]
        if not np.array_equal(actual, expected):
            x = graph.vertices[i].residue
            for j in np.flatnonzero(actual != expected)[:3]:
                y = graph.vertices[j].residue
                same = layer_of[i] == layer_of[j]
                what = "inside layer" if same else "between layers"
                state = "edge" if actual[j] else "missing edge"
                problems.append(
                    f"{state} {x}-{y} {what} X_{supports[layer_of[i]]} / X_{supports[layer_of[j]]}"
                )
            if len(problems) >= max_report:
                break
    return BlowupReport(not problems, problems[:max_report])
