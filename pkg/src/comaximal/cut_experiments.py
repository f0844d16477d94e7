"""Separator and deletion-robustness experiments on the residue graph."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .arithmetic import Modulus
from .errors import ComaximalError, FormulaMismatch
from .explicit_graph import ExplicitGraph, build_graph
from .oracles import UNREACHABLE, CutCertificate, all_pairs_distances, bfs_from, certificate_holds, components
from .support_model import cut_support, kappa, min_degree_support

TRIAL_COLUMNS = ("trial_index", "deleted_size", "connected_after", "max_pair_distance_after", "anchor_found")


@dataclass(frozen=True)
class RobustnessTrial:
    """Outcome of deleting ``deleted`` from G2.

    ``max_pair_distance_after`` and ``anchor_reach`` are UNREACHABLE (-1) when
    the remaining graph is disconnected.  ``anchor_reach`` is the largest
    distance from the surviving anchor in ``X_{m}`` to any survivor.
    """

    trial_index: int
    deleted: frozenset[int]
    connected_after: bool
    max_pair_distance_after: int
    anchor_found: bool
    anchor_reach: int
    control: bool = False

    @property
    def deleted_size(self) -> int:
        return len(self.deleted)


def demonstrate_separator(mod: Modulus, graph: ExplicitGraph | None = None) -> CutCertificate:
    """Delete the whole layer ``X_{m}`` and certify that ``X_{[m] minus {m}}`` is cut off."""
    graph = graph if graph is not None else build_graph(mod)
    cut = graph.layer_residues(cut_support(mod.m))
    isolated = graph.layer_residues(min_degree_support(mod.m))
    removed = {graph.index_of(x) for x in cut}
    isolated_idx = {graph.index_of(x) for x in isolated}
    others = [c for c in components(graph.adjacency, removed) if not isolated_idx & set(c)]
    if not others:
        raise FormulaMismatch(f"deleting X_{{{mod.m}}} left nothing outside the isolated layer")
    side_b = max(others, key=len)
    res = graph.residues
    cert = CutCertificate(frozenset(cut), frozenset(isolated), frozenset(res[i] for i in side_b))
    if not certificate_holds(graph, cert):
        raise FormulaMismatch(f"X_{{{mod.m}}} does not separate G2({mod.n})")
    if cert.size != kappa(mod):
        raise FormulaMismatch(f"|X_{{{mod.m}}}| = {cert.size} but kappa = {kappa(mod)}")
    return cert


def evaluate_deletion(graph: ExplicitGraph, deleted, trial_index: int = 0, control: bool = False) -> RobustnessTrial:
    """Connectivity, post-deletion diameter and anchor reach of ``G2 - deleted``."""
    deleted = frozenset(deleted)
    removed = {graph.index_of(x) for x in deleted}
    keep = [i for i in range(len(graph)) if i not in removed]
    position = {i: k for k, i in enumerate(keep)}
    sub = [[position[j] for j in graph.adjacency[i] if j in position] for i in keep]

    connected = len(components(sub)) <= 1
    if connected and sub:
        max_dist = int(all_pairs_distances(sub).max())
    else:
        max_dist = UNREACHABLE

    anchor_layer = cut_support(graph.mod.m)
    anchors = [position[i] for i in keep if graph.vertices[i].zero_set == anchor_layer]
    if anchors:
        dist = bfs_from(sub, anchors[0])
        reach = UNREACHABLE if UNREACHABLE in dist else max(dist)
    else:
        reach = UNREACHABLE
    return RobustnessTrial(trial_index, deleted, connected, max_dist, bool(anchors), reach, control)


def _sample(rng: np.random.Generator, population: list[int], k: int) -> frozenset[int]:
    if k <= 0:
        return frozenset()
    picks = rng.choice(len(population), size=k, replace=False)
    return frozenset(population[i] for i in picks)


def robustness_trials(
    mod: Modulus,
    trials: int,
    seed: int,
    graph: ExplicitGraph | None = None,
    controls: bool = True,
) -> list[RobustnessTrial]:
    """Random deletions of ``kappa - 1`` vertices, plus one control deleting ``X_{m}``.

    Trial ``i`` draws from ``numpy.random.default_rng([seed, i])`` so any trial
    can be reproduced on its own.
    """
    if trials < 1:
        raise ComaximalError("need at least one trial")
    graph = graph if graph is not None else build_graph(mod)
    k = kappa(mod)
    residues = graph.residues
    out = [
        evaluate_deletion(graph, _sample(np.random.default_rng([seed, i]), residues, k - 1), i)
        for i in range(trials)
    ]
    if controls:
        cut = graph.layer_residues(cut_support(mod.m))
        out.append(evaluate_deletion(graph, cut, trials, control=True))
    return out


def separator_subset_trials(mod: Modulus, samples: int, seed: int, graph: ExplicitGraph | None = None):
    """Delete random proper subsets of ``X_{m}`` (sizes uniform in ``0..|X_{m}| - 1``)."""
    graph = graph if graph is not None else build_graph(mod)
    layer = graph.layer_residues(cut_support(mod.m))
    out = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        size = int(rng.integers(0, len(layer)))
        out.append(evaluate_deletion(graph, _sample(rng, layer, size), i))
    return out


def trials_to_csv(trials) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRIAL_COLUMNS)
    for t in trials:
        writer.writerow(
            [t.trial_index, t.deleted_size, int(t.connected_after), t.max_pair_distance_after, int(t.anchor_found)]
        )
    return buf.getvalue()
