"""Baselines, metrics and instance generation for evaluating summaries.

Provides the exhaustive and random baselines the greedy summarizer is
measured against, the RB-implication quality metric, a reproducible
random-DAG generator, a structural perturbation helper, and a small CSV
report writer. All randomness flows through numpy Generators seeded per
call, so every artifact is reproducible from its parameters.
"""

import csv
import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cagres import StuckError, is_valid_pair
from .graph_core import Dag, SizeLimitError, ValidationError, topological_order
from .separation import SeparationQuery, d_separated
from .summary import (
    SummaryDag,
    additional_edges,
    canonical,
    contract,
    ground_ci,
    summary_recursive_basis,
    trivial_summary,
)


@dataclass(frozen=True)
class GenSpec:
    """Parameters of a synthetic instance: node count, edge density, seed."""

    n: int
    density: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.density <= 1.0:
            raise ValidationError(f"density must lie in [0, 1], got {self.density}")


@dataclass(frozen=True)
class ComparisonReport:
    """Pairwise RB-implication percentages and edge counts for two summaries."""

    implied_a_by_b: float
    implied_b_by_a: float
    additional_edges_a: int
    additional_edges_b: int


def gen_random_dag(spec):
    """A random DAG: uniform topological order, each forward edge i.i.d.

    Labels are X01..Xn (zero-padded so lexicographic and numeric order
    agree). Deterministic in ``spec.seed``.
    """
    rng = np.random.default_rng(spec.seed)
    width = len(str(spec.n))
    labels = [f"X{i + 1:0{width}d}" for i in range(spec.n)]
    order = [labels[i] for i in rng.permutation(spec.n)]
    edges = []
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if rng.random() < spec.density:
                edges.append((order[i], order[j]))
    return Dag(labels, edges)


def _is_acyclic(nodes, edges):
    indegree = {v: 0 for v in nodes}
    children = {v: [] for v in nodes}
    for u, v in edges:
        indegree[v] += 1
        children[u].append(v)
    ready = [v for v in nodes if indegree[v] == 0]
    seen = 0
    while ready:
        u = ready.pop()
        seen += 1
        for v in children[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                ready.append(v)
    return seen == len(indegree)


def _summary_from_partition(g, order, blocks):
    position = {v: i for i, v in enumerate(order)}
    labels = {}
    mapping = {}
    for block in blocks:
        label = "".join(sorted(block, key=position.get))
        labels[label] = frozenset(block)
        for v in block:
            mapping[v] = label
    edges = set()
    for u, v in g.edges:
        cu, cv = mapping[u], mapping[v]
        if cu != cv:
            edges.add((cu, cv))
    ordered = sorted(labels, key=lambda lbl: min(position[v] for v in labels[lbl]))
    quotient = Dag(ordered, sorted(edges))
    return SummaryDag(g, quotient, mapping, order)


def brute_force_summarize(g, k):
    """The exact baseline: best summary over all partitions into <= k blocks.

    Enumerates set partitions as restricted-growth strings over the nodes
    in topological order, pruning prefixes whose induced quotient is
    already cyclic, and keeps a partition minimizing the canonical DAG's
    additional edges. Ties go to the lexicographically smallest partition
    signature, so the result is deterministic. Exponential: guarded to 10
    nodes.
    """
    if g.num_nodes > 10:
        raise SizeLimitError(
            f"exhaustive search is exponential; refusing {g.num_nodes} nodes (limit 10)"
        )
    if not 1 <= k <= g.num_nodes:
        raise ValidationError(f"infeasible k={k} for {g.num_nodes} nodes")

    order = topological_order(g)
    n = len(order)
    best = None  # (additional_edges, signature, blocks)

    def quotient_is_acyclic(assignment):
        prefix = order[: len(assignment)]
        block_of = dict(zip(prefix, assignment))
        nodes = set(assignment)
        edges = set()
        for u, v in g.edges:
            if u in block_of and v in block_of and block_of[u] != block_of[v]:
                edges.add((block_of[u], block_of[v]))
        return _is_acyclic(nodes, edges)

    def extend(assignment, nblocks):
        nonlocal best
        if not quotient_is_acyclic(assignment):
            return
        i = len(assignment)
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for v, b in zip(order, assignment):
                blocks[b].append(v)
            h = _summary_from_partition(g, order, blocks)
            score = additional_edges(h)
            signature = tuple(tuple(block) for block in blocks)
            if best is None or (score, signature) < (best[0], best[1]):
                best = (score, signature, h)
            return
        # restricted growth: reuse any existing block, or open block
        # nblocks (only while the block budget allows)
        for b in range(nblocks):
            extend(assignment + [b], nblocks)
        if nblocks < k:
            extend(assignment + [nblocks], nblocks + 1)

    extend([], 0)
    return best[2]


def random_summarize(g, k, seed=0):
    """The random baseline: contract uniformly chosen valid pairs down to k."""
    if not 1 <= k <= g.num_nodes:
        raise ValidationError(f"infeasible k={k} for {g.num_nodes} nodes")
    rng = np.random.default_rng(seed)
    h = trivial_summary(g)
    while h.quotient.num_nodes > k:
        pairs = [
            (a, b)
            for a, b in combinations(sorted(h.quotient.nodes), 2)
            if is_valid_pair(h, a, b)
        ]
        if not pairs:
            raise StuckError(
                f"no valid pair left at {h.quotient.num_nodes} clusters (target k={k})"
            )
        h = contract(h, *pairs[int(rng.integers(len(pairs)))])
    return h


def implication_percentage(a, b):
    """How much of b's recursive basis the summary ``a`` implies, in percent.

    Each statement of b's RB is grounded to base variables and tested by
    d-separation on canonical(a) — sound and complete for the CIs entailed
    by a. Both summaries must share the same base graph. An empty RB is
    fully implied (100).
    """
    if a.base != b.base:
        raise ValidationError("summaries must share the same base graph")
    statements = [ground_ci(b, s) for s in summary_recursive_basis(b)]
    if not statements:
        return 100.0
    canon = canonical(a)
    implied = sum(
        d_separated(canon, SeparationQuery(x=s.x, y=s.y, z=s.z)) for s in statements
    )
    return 100.0 * implied / len(statements)


def compare(a, b):
    """Pairwise RB implication and edge overhead for two summaries."""
    return ComparisonReport(
        implied_a_by_b=implication_percentage(b, a),
        implied_b_by_a=implication_percentage(a, b),
        additional_edges_a=additional_edges(a),
        additional_edges_b=additional_edges(b),
    )


def perturb(g, add, remove, seed=0):
    """Remove then add random edges, keeping the node set and acyclicity.

    Removes ``remove`` uniformly chosen edges, then adds ``add`` uniformly
    chosen non-edges that point forward along a topological order of the
    reduced graph. Deterministic in ``seed``.
    """
    if add < 0 or remove < 0:
        raise ValidationError("add and remove must be non-negative")
    rng = np.random.default_rng(seed)

    edges = sorted(g.edges)
    if remove > len(edges):
        raise ValidationError(
            f"cannot remove {remove} edges from a graph with {len(edges)}"
        )
    if remove:
        dropped = set(rng.choice(len(edges), size=remove, replace=False).tolist())
        edges = [e for i, e in enumerate(edges) if i not in dropped]
    reduced = Dag(g.nodes, edges)

    if add:
        order = topological_order(reduced)
        candidates = [
            (u, v)
            for i, u in enumerate(order)
            for v in order[i + 1 :]
            if not reduced.has_edge(u, v)
        ]
        if add > len(candidates):
            raise ValidationError(
                f"cannot add {add} forward edges; only {len(candidates)} slots"
            )
        chosen = rng.choice(len(candidates), size=add, replace=False).tolist()
        edges = edges + [candidates[i] for i in sorted(chosen)]
    return Dag(g.nodes, sorted(edges))


#: column order of the sweep report CSV
REPORT_COLUMNS = (
    "instance_id",
    "method",
    "n",
    "density",
    "k",
    "seed",
    "clusters",
    "additional_edges",
    "runtime_ms",
)


def report_row(instance_id, method, spec, k, summarizer):
    """Run one (instance, method) cell and record it as a report row."""
    g = gen_random_dag(spec)
    start = time.perf_counter()
    h = summarizer(g)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return {
        "instance_id": instance_id,
        "method": method,
        "n": spec.n,
        "density": spec.density,
        "k": k,
        "seed": spec.seed,
        "clusters": h.quotient.num_nodes,
        "additional_edges": additional_edges(h),
        "runtime_ms": round(elapsed_ms, 3),
    }


def write_report(rows, stream):
    """Write report rows as CSV, ordered by (instance_id, method)."""
    writer = csv.DictWriter(stream, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in sorted(rows, key=lambda r: (r["instance_id"], r["method"])):
        writer.writerow(row)
