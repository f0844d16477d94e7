"""Reports behind the CLI: analysis, oracle verification, sweeps and exports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import oracles
from .arithmetic import Modulus, distinct_primes, euler_phi, factor_squarefree, squarefree_composites
from .cut_experiments import robustness_trials
from .explicit_graph import ExplicitGraph, build_graph, check_blowup, gcd_forms_agree
from .support_model import (
    algorithm_kappa,
    all_supports,
    build_quotient,
    cut_support,
    degree,
    diameter,
    kappa,
    lambda_edge,
    layer_distance,
    min_degree,
    prior_upper_bound,
    radius_and_center,
)

DEFAULT_FLOW_CAP = 2_500


# -- analysis ----------------------------------------------------------------


@dataclass
class LayerRow:
    support: str
    divisor: int
    size: int
    degree: int


@dataclass
class AnalysisReport:
    n: int
    primes: list[int]
    phi: int
    vertex_count: int
    kappa: int
    prior_upper_bound: int | None = None
    lambda_: int | None = None
    delta: int | None = None
    diameter: int | None = None
    radius: int | None = None
    min_degree_layer: str | None = None
    min_cut_layer: str | None = None
    layers: list[LayerRow] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.vertex_count == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        order = [
            "n", "primes", "phi", "vertex_count", "kappa", "lambda", "delta", "prior_upper_bound",
            "diameter", "radius", "min_degree_layer", "min_cut_layer", "layers",
        ]
        return {k: d[k] for k in order}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        d = json.loads(text)
        d["lambda_"] = d.pop("lambda")
        d["layers"] = [LayerRow(**row) for row in d["layers"]]
        return cls(**d)

    def render(self) -> str:
        if self.empty:
            return f"n = {self.n} is prime: G2 is empty, kappa = 0\n"
        lines = [
            f"n = {self.n} = {'*'.join(map(str, self.primes))}   (m = {len(self.primes)})",
            f"phi(n) = {self.phi}   |V(G2)| = {self.vertex_count}",
            f"kappa = {self.kappa}   lambda = {self.lambda_}   delta = {self.delta}"
            f"   prior upper bound = {self.prior_upper_bound}",
            f"diameter = {self.diameter}   radius = {'-' if self.radius is None else self.radius}",
            f"minimum-degree layer X_{self.min_degree_layer}   minimum cut X_{self.min_cut_layer}",
            "",
        ]
        header = ("support", "divisor", "size", "degree")
        rows = [(r.support, str(r.divisor), str(r.size), str(r.degree)) for r in self.layers]
        widths = [max(len(h), *(len(row[k]) for row in rows)) for k, h in enumerate(header)]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        lines.extend("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows)
        return "\n".join(lines) + "\n"


def analyze(n: int) -> AnalysisReport:
    """Every closed-form invariant of G2(n); prime ``n`` gives an empty report with kappa 0."""
    primes = distinct_primes(n)
    if len(primes) == 1:
        return AnalysisReport(n, list(primes), n - 1, 0, algorithm_kappa(primes))
    mod = Modulus(n, primes)
    model = build_quotient(mod)
    delta, argmin = min_degree(mod)
    radius = radius_and_center(mod)[0] if mod.m >= 3 else None
    return AnalysisReport(
        n=n,
        primes=list(primes),
        phi=euler_phi(mod),
        vertex_count=model.vertex_count,
        kappa=kappa(mod),
        prior_upper_bound=prior_upper_bound(mod),
        lambda_=lambda_edge(mod),
        delta=delta,
        diameter=diameter(mod),
        radius=radius,
        min_degree_layer=str(argmin),
        min_cut_layer=str(cut_support(mod.m)),
        layers=[LayerRow(str(r.support), r.divisor, r.size, r.degree) for r in model.layers],
    )


# -- verification ------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"


@dataclass
class VerificationReport:
    n: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def render(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"{c.status}  {c.name.ljust(width)}  {c.detail}" for c in self.checks]
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  n = {self.n}")
        return "\n".join(lines) + "\n"


def _check(name: str, ok: bool, detail: str) -> Check:
    return Check(name, "PASS" if ok else "FAIL", detail)


def expected_distances(graph: ExplicitGraph) -> np.ndarray:
    """Distance matrix predicted from zero-sets alone (0 on the diagonal)."""
    supports = all_supports(graph.mod.m)
    pos = {s: k for k, s in enumerate(supports)}
    table = np.array([[layer_distance(a, b) for b in supports] for a in supports], dtype=np.int32)
    layer_of = np.array([pos[v.zero_set] for v in graph.vertices])
    expected = table[np.ix_(layer_of, layer_of)]
    np.fill_diagonal(expected, 0)
    return expected


def verify(
    n: int,
    graph_cap: int,
    flow_cap: int = DEFAULT_FLOW_CAP,
    deep: bool = False,
    trials: int = 200,
    seed: int = 0,
) -> VerificationReport:
    """Compare every closed form for G2(n) with a brute-force value from the residue graph."""
    mod = factor_squarefree(n)
    graph = build_graph(mod, cap=graph_cap)
    model = build_quotient(mod)
    checks = []

    expected_v = mod.n - 1 - euler_phi(mod)
    checks.append(_check(
        "vertex_count", len(graph) == expected_v == model.vertex_count,
        f"residues {len(graph)}, n-1-phi(n) {expected_v}, layer sum {model.vertex_count}",
    ))

    blowup = check_blowup(graph, model)
    adjsets = [set(a) for a in graph.adjacency]
    symmetric = all(i in adjsets[j] and i != j for i, a in enumerate(graph.adjacency) for j in a)
    forms = gcd_forms_agree(graph)
    detail = "layers independent, joins complete or empty" if blowup else "; ".join(blowup.discrepancies)
    checks.append(_check(
        "blowup", bool(blowup) and symmetric and forms,
        f"{detail}; symmetric {symmetric}; gcd forms agree {forms}",
    ))

    degs = graph.degrees()
    wrong = [(v.residue, d, degree(mod, v.zero_set)) for v, d in zip(graph.vertices, degs)
             if d != degree(mod, v.zero_set)]
    checks.append(_check(
        "degrees", not wrong,
        f"{len(graph)} vertices match" if not wrong else f"{len(wrong)} mismatches, e.g. residue {wrong[0][0]}: "
        f"counted {wrong[0][1]}, formula {wrong[0][2]}",
    ))

    k = kappa(mod)
    if mod.n <= flow_cap:
        k_obs, cert = oracles.vertex_connectivity_oracle(graph)
        checks.append(_check("kappa", k_obs == k, f"flow oracle {k_obs}, formula {k}, separator size {cert.size}"))
        l_obs = oracles.edge_connectivity_oracle(graph)
        checks.append(_check("lambda", l_obs == lambda_edge(mod), f"flow oracle {l_obs}, formula {lambda_edge(mod)}"))
    else:
        checks.append(Check("kappa", "SKIP", f"n > flow cap {flow_cap}"))
        checks.append(Check("lambda", "SKIP", f"n > flow cap {flow_cap}"))

    delta, argmin = min_degree(mod)
    observed_delta = min(degs)
    at_min = {v.residue for v, d in zip(graph.vertices, degs) if d == observed_delta}
    checks.append(_check(
        "delta", observed_delta == delta and at_min == set(graph.layer_residues(argmin)),
        f"observed {observed_delta} on {len(at_min)} vertices, formula {delta} on X_{argmin}",
    ))

    dist = oracles.all_pairs_distances(graph.adjacency)
    expected = expected_distances(graph)
    bad = np.argwhere(dist != expected)
    if len(bad):
        i, j = bad[0]
        detail = (f"{len(bad)} mismatched pairs, e.g. {graph.vertices[i].residue}-{graph.vertices[j].residue}: "
                  f"BFS {dist[i, j]}, formula {expected[i, j]}")
    else:
        detail = f"all {len(graph) * (len(graph) - 1) // 2} pairs match"
    checks.append(_check("distances", not len(bad), detail))

    if (dist == oracles.UNREACHABLE).any():
        checks.append(_check("metric", False, "graph is disconnected"))
    else:
        ecc = dist.max(axis=1)
        diam, rad = int(ecc.max()), int(ecc.min())
        ok = diam == diameter(mod)
        detail = f"diameter {diam} (formula {diameter(mod)}), radius {rad}"
        if mod.m >= 3:
            r, center_layers = radius_and_center(mod)
            center = {graph.vertices[i].residue for i in np.flatnonzero(ecc == rad)}
            predicted = {x for s in center_layers for x in graph.layer_residues(s)}
            ok = ok and rad == r and center == predicted
            detail += f" (formula {r}), center {len(center)} vertices, predicted {len(predicted)}"
        checks.append(_check("metric", ok, detail))

    if deep:
        results = robustness_trials(mod, trials, seed, graph=graph)
        sub = [t for t in results if not t.control]
        ctrl = [t for t in results if t.control]
        ok = all(t.connected_after and 0 <= t.max_pair_distance_after <= 4 and t.anchor_found
                 and 0 <= t.anchor_reach <= 2 for t in sub) and all(not t.connected_after for t in ctrl)
        checks.append(_check(
            "robustness", ok,
            f"{len(sub)} deletions of size {k - 1} (seed {seed}), control deletion of X_{cut_support(mod.m)}",
        ))
    return VerificationReport(n, checks)


# -- sweep -------------------------------------------------------------------

SWEEP_COLUMNS = (
    "n", "primes", "phi", "prior_bound", "kappa_formula", "kappa_oracle",
    "delta", "lambda_oracle", "diameter", "match",
)


def sweep_rows(limit: int, oracle_cap: int, start: int = 6):
    """One row per squarefree composite ``n`` in ``[start, limit]``; oracle columns blank above the cap."""
    for n in squarefree_composites(limit, start):
        mod = factor_squarefree(n)
        k = kappa(mod)
        bound = prior_upper_bound(mod)
        delta, _ = min_degree(mod)
        k_obs = l_obs = None
        if n <= oracle_cap:
            graph = build_graph(mod, cap=oracle_cap)
            k_obs, _ = oracles.vertex_connectivity_oracle(graph)
            l_obs = oracles.edge_connectivity_oracle(graph)
        values = {bound, k, delta} | {v for v in (k_obs, l_obs) if v is not None}
        yield {
            "n": n,
            "primes": "*".join(map(str, mod.primes)),
            "phi": euler_phi(mod),
            "prior_bound": bound,
            "kappa_formula": k,
            "kappa_oracle": "" if k_obs is None else k_obs,
            "delta": delta,
            "lambda_oracle": "" if l_obs is None else l_obs,
            "diameter": diameter(mod),
            "match": int(len(values) == 1),
        }


def write_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- export ------------------------------------------------------------------


def export_quotient(mod: Modulus, fmt: str) -> str:
    model = build_quotient(mod)
    edges = model.edges()
    if fmt == "dot":
        lines = [f'graph "G2_quotient_{mod.n}" {{']
        lines += [f'  {r.support.dot_id} [label="X_{r.support} ({r.size})"];' for r in model.layers]
        lines += [f"  {a.dot_id} -- {b.dot_id};" for a, b in edges]
        return "\n".join(lines) + "\n}\n"
    if fmt == "csv":
        nbrs = {r.support: [] for r in model.layers}
        for a, b in edges:
            nbrs[a].append(b.label)
            nbrs[b].append(a.label)
        rows = [
            {"support": r.support.label, "divisor": r.divisor, "size": r.size, "degree": r.degree,
             "neighbors": " ".join(nbrs[r.support])}
            for r in model.layers
        ]
        return write_csv(rows, ("support", "divisor", "size", "degree", "neighbors"))
    if fmt == "json":
        doc = {
            "level": "quotient",
            "n": mod.n,
            "primes": list(mod.primes),
            "nodes": [
                {"support": list(r.support.members), "divisor": r.divisor, "size": r.size, "degree": r.degree}
                for r in model.layers
            ],
            "edges": [[list(a.members), list(b.members)] for a, b in edges],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def export_explicit(graph: ExplicitGraph, fmt: str) -> str:
    n = graph.mod.n
    if fmt == "dot":
        lines = [f'graph "G2_{n}" {{']
        lines += [f'  v{v.residue} [label="{v.residue}"];' for v in graph.vertices]
        lines += [f"  v{x} -- v{y};" for x, y in graph.edges()]
        return "\n".join(lines) + "\n}\n"
    if fmt == "csv":
        rows = [
            {"residue": v.residue, "zero_set": v.zero_set.label, "degree": len(a),
             "neighbors": " ".join(str(graph.vertices[j].residue) for j in a)}
            for v, a in zip(graph.vertices, graph.adjacency)
        ]
        return write_csv(rows, ("residue", "zero_set", "degree", "neighbors"))
    if fmt == "json":
        doc = {
            "level": "explicit",
            "n": n,
            "primes": list(graph.mod.primes),
            "nodes": [{"residue": v.residue, "zero_set": list(v.zero_set.members)} for v in graph.vertices],
            "edges": [list(e) for e in graph.edges()],
        }
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
