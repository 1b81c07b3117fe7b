"""Summary DAGs as first-class values.

A summary DAG groups the nodes of a causal DAG ("the base") into clusters
and keeps a quotient DAG over cluster labels. This module provides the
operations the rest of the package builds on: node contraction (with the
directed-path-of-length-≥-2 cycle guard), compatibility checking, the
canonical causal DAG a summary stands for, recursive-basis extraction,
and the edge-mutilation operators used by interventional queries.

Everything here is a pure function over immutable values; summaries are
never modified in place.
"""

from dataclasses import dataclass, field

from .graph_core import (
    CycleError,
    Dag,
    UnknownNodeError,
    ValidationError,
    has_directed_path_len_ge2,
    topological_order,
)

#: Universe tags for CI statements: over base variables or cluster labels.
BASE = "base"
CLUSTER = "cluster"


@dataclass(frozen=True)
class CiStatement:
    """A conditional-independence statement (x ⊥ y | z).

    ``universe`` records whether the member names are base variables or
    cluster labels, so callers never mix the two by accident.
    """

    x: frozenset
    y: frozenset
    z: frozenset
    universe: str = BASE

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "y", frozenset(self.y))
        object.__setattr__(self, "z", frozenset(self.z))
        if not self.x or not self.y:
            raise ValidationError("CI statement needs non-empty x and y")
        if self.x & self.y or self.x & self.z or self.y & self.z:
            raise ValidationError("CI statement sets must be pairwise disjoint")
        if self.universe not in (BASE, CLUSTER):
            raise ValidationError(f"unknown universe: {self.universe!r}")


@dataclass(frozen=True)
class RecursiveBasis:
    """An ordered list of CI statements, one per node, trivial ones omitted."""

    statements: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "statements", tuple(self.statements))

    def __iter__(self):
        return iter(self.statements)

    def __len__(self):
        return len(self.statements)


class SummaryDag:
    """A cluster DAG over the nodes of a base causal DAG.

    Fields
    ------
    base : Dag
        The original causal DAG. Never changed by summary operations.
    quotient : Dag
        DAG over cluster labels.
    mapping : dict
        Total function from base nodes to cluster labels, surjective onto
        the quotient's nodes. Its fibers partition the base nodes.
    base_order : tuple
        The recorded topological order of ``base`` that fixes label
        construction and the within-cluster edge orientation used by
        ``canonical``.
    mutilated : bool
        True when this summary was produced by ``mutilate_summary``; the
        quotient then no longer edge-preserves the base, and ``canonical``
        re-derives grounded edges from the quotient alone.

    >>> g = Dag("ABC", [("A", "B"), ("B", "C")])
    >>> h = contract(trivial_summary(g), "B", "C")
    >>> sorted(h.quotient.nodes)
    ['A', 'BC']
    >>> sorted(h.members("BC"))
    ['B', 'C']
    """

    __slots__ = ("base", "quotient", "mapping", "base_order", "mutilated", "_fibers")

    def __init__(self, base, quotient, mapping, base_order, mutilated=False):
        self.base = base
        self.quotient = quotient
        self.mapping = dict(mapping)
        self.base_order = tuple(base_order)
        self.mutilated = bool(mutilated)
        self._fibers = None
        self._validate()

    def _validate(self):
        if set(self.base_order) != self.base.node_set or len(self.base_order) != self.base.num_nodes:
            raise ValidationError("base_order must be a permutation of the base nodes")
        position = {v: i for i, v in enumerate(self.base_order)}
        for u, v in self.base.edges:
            if position[u] >= position[v]:
                raise ValidationError(
                    f"base_order is not topological: edge {u} -> {v} goes backwards"
                )
        if set(self.mapping) != self.base.node_set:
            raise ValidationError("mapping must be total on the base nodes")
        images = set(self.mapping.values())
        if images != self.quotient.node_set:
            raise ValidationError("mapping must be surjective onto the quotient nodes")
        if not self.mutilated:
            for u, v in self.base.edges:
                cu, cv = self.mapping[u], self.mapping[v]
                if cu != cv and not self.quotient.has_edge(cu, cv):
                    raise ValidationError(
                        f"edge preservation violated: {u} -> {v} has no image "
                        f"{cu} -> {cv} in the quotient"
                    )

    @property
    def clusters(self):
        """Mapping from cluster label to frozenset of member base nodes."""
        if self._fibers is None:
            fibers = {label: set() for label in self.quotient.nodes}
            for v, label in self.mapping.items():
                fibers[label].add(v)
            self._fibers = {label: frozenset(vs) for label, vs in fibers.items()}
        return self._fibers

    def members(self, label):
        """The base nodes grouped under ``label`` (f⁻¹)."""
        try:
            return self.clusters[label]
        except KeyError:
            raise UnknownNodeError(label) from None

    def cluster_of(self, v):
        """The cluster label of base node ``v`` (f)."""
        try:
            return self.mapping[v]
        except KeyError:
            raise UnknownNodeError(v) from None

    def cluster_size(self, label):
        return len(self.members(label))

    def __eq__(self, other):
        if not isinstance(other, SummaryDag):
            return NotImplemented
        return (
            self.base == other.base
            and self.quotient == other.quotient
            and self.mapping == other.mapping
            and self.base_order == other.base_order
            and self.mutilated == other.mutilated
        )

    def __hash__(self):
        return hash(
            (
                self.base,
                self.quotient,
                frozenset(self.mapping.items()),
                self.base_order,
                self.mutilated,
            )
        )

    def __repr__(self):
        parts = ",".join(sorted(self.quotient.nodes))
        flag = ", mutilated" if self.mutilated else ""
        return f"SummaryDag(clusters=[{parts}]{flag})"


def _ordered_labels(clusters, position):
    """Cluster labels sorted by the earliest member in base order."""
    return sorted(clusters, key=lambda lbl: min(position[v] for v in clusters[lbl]))


def trivial_summary(g):
    """The identity summary: every node its own singleton cluster.

    >>> h = trivial_summary(Dag("AB", [("A", "B")]))
    >>> h.quotient == h.base
    True
    """
    order = topological_order(g)
    quotient = Dag(order, sorted(g.edges))
    return SummaryDag(g, quotient, {v: v for v in g.nodes}, order)


def contract(h, a, b):
    """Merge clusters ``a`` and ``b`` of a summary into one.

    The merged cluster's label is the concatenation of its member labels in
    base order. Raises ``CycleError`` exactly when the quotient has a
    directed path of at least two edges between ``a`` and ``b`` (in either
    direction) — the contracted graph would then contain a directed cycle.

    >>> g = Dag("ABCDE", [("A","B"), ("A","C"), ("B","D"), ("C","D"), ("D","E")])
    >>> h1 = contract(trivial_summary(g), "B", "C")
    >>> sorted(h1.quotient.edges)
    [('A', 'BC'), ('BC', 'D'), ('D', 'E')]
    >>> contract(trivial_summary(g), "A", "D")
    Traceback (most recent call last):
        ...
    causalsumm.graph_core.CycleError: contracting A and D creates a directed cycle: they are joined by a directed path of length >= 2
    """
    if a == b:
        raise ValidationError(f"cannot contract a cluster with itself: {a}")
    for label in (a, b):
        if label not in h.quotient.node_set:
            raise UnknownNodeError(label)
    if has_directed_path_len_ge2(h.quotient, a, b):
        raise CycleError(
            message=f"contracting {a} and {b} creates a directed cycle: "
            "they are joined by a directed path of length >= 2"
        )

    position = {v: i for i, v in enumerate(h.base_order)}
    merged_members = h.members(a) | h.members(b)
    merged = "".join(sorted(merged_members, key=position.get))

    relabel = {a: merged, b: merged}
    mapping = {
        v: relabel.get(label, label) for v, label in h.mapping.items()
    }
    clusters = {label: vs for label, vs in h.clusters.items() if label not in (a, b)}
    if merged in clusters:
        raise ValidationError(
            f"merged label {merged!r} collides with an existing cluster"
        )
    clusters[merged] = merged_members

    edges = set()
    for u, v in h.quotient.edges:
        cu, cv = relabel.get(u, u), relabel.get(v, v)
        if cu != cv:
            edges.add((cu, cv))
    quotient = Dag(_ordered_labels(clusters, position), sorted(edges))
    return SummaryDag(h.base, quotient, mapping, h.base_order, mutilated=h.mutilated)


def is_compatible(g, h):
    """Is ``g`` compatible with summary ``h``?

    True iff every edge of ``g`` stays inside a cluster or maps onto an
    edge of the quotient. ``g`` must range over the same variables as the
    summary's base.
    """
    if g.node_set != h.base.node_set:
        raise ValidationError("graph and summary range over different variables")
    for u, v in g.edges:
        cu, cv = h.mapping[u], h.mapping[v]
        if cu != cv and not h.quotient.has_edge(cu, cv):
            return False
    return True


def canonical(h):
    """The canonical causal DAG the summary stands for.

    Over the base variables, with an edge (u, v) present iff
      (i)   (u, v) is a base edge (skipped for mutilated summaries, whose
            quotient overrides the base),
      (ii)  the clusters of u and v are joined by a quotient edge, or
      (iii) u and v share a cluster and u precedes v in base order.

    Always acyclic, always compatible with ``h``, and (for unmutilated
    summaries) always a supergraph of the base.

    >>> g = Dag("ABCDE", [("A","B"), ("A","C"), ("B","D"), ("C","D"), ("D","E")])
    >>> h1 = contract(trivial_summary(g), "B", "C")
    >>> sorted(canonical(h1).edges)
    [('A', 'B'), ('A', 'C'), ('B', 'C'), ('B', 'D'), ('C', 'D'), ('D', 'E')]
    """
    position = {v: i for i, v in enumerate(h.base_order)}
    edges = set() if h.mutilated else set(h.base.edges)
    for cu, cv in h.quotient.edges:
        for u in h.members(cu):
            for v in h.members(cv):
                edges.add((u, v))
    for members in h.clusters.values():
        ordered = sorted(members, key=position.get)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1 :]:
                edges.add((u, v))
    return Dag(h.base_order, sorted(edges))


def additional_edges(h):
    """How many edges ``canonical(h)`` has beyond the base DAG."""
    return canonical(h).num_edges - h.base.num_edges


def recursive_basis(g, order):
    """The recursive basis of ``g`` along a topological order.

    For the i-th node emits (X_i ⊥ {X_1..X_{i-1}} \\ parents | parents);
    statements with nothing on the left of the bar are omitted.

    >>> g = Dag("ABC", [("A", "B"), ("B", "C")])
    >>> [s.y for s in recursive_basis(g, ("A", "B", "C"))]
    [frozenset({'A'})]
    """
    order = tuple(order)
    if set(order) != g.node_set or len(order) != g.num_nodes:
        raise ValidationError("order must be a permutation of the graph's nodes")
    position = {v: i for i, v in enumerate(order)}
    for u, v in g.edges:
        if position[u] >= position[v]:
            raise ValidationError(f"order is not topological: edge {u} -> {v}")

    statements = []
    seen = set()
    for v in order:
        z = g.parents(v)
        y = seen - z
        if y:
            statements.append(
                CiStatement(x=frozenset({v}), y=frozenset(y), z=z, universe=BASE)
            )
        seen.add(v)
    return RecursiveBasis(tuple(statements))


def summary_recursive_basis(h):
    """The recursive basis of the quotient, stated over cluster labels.

    Statements can be grounded to base variables with ``ground_ci``.
    """
    order = topological_order(h.quotient)
    base = recursive_basis(h.quotient, order)
    return RecursiveBasis(
        tuple(
            CiStatement(x=s.x, y=s.y, z=s.z, universe=CLUSTER) for s in base.statements
        )
    )


def ground_ci(h, statement):
    """Replace cluster labels by their member sets (f⁻¹), set-wise.

    Statements already over base variables pass through unchanged.
    """
    if statement.universe == BASE:
        return statement

    def expand(labels):
        grounded = set()
        for label in labels:
            grounded |= h.members(label)
        return frozenset(grounded)

    return CiStatement(
        x=expand(statement.x),
        y=expand(statement.y),
        z=expand(statement.z),
        universe=BASE,
    )


def mutilate(g, bar_x, under_z):
    """Drop every edge into ``bar_x`` and every edge out of ``under_z``.

    >>> g = Dag("ABC", [("A", "B"), ("B", "C")])
    >>> sorted(mutilate(g, {"B"}, set()).edges)
    [('B', 'C')]
    """
    bar_x, under_z = frozenset(bar_x), frozenset(under_z)
    for v in bar_x | under_z:
        if v not in g.node_set:
            raise UnknownNodeError(v)
    edges = [(u, v) for u, v in sorted(g.edges) if v not in bar_x and u not in under_z]
    return Dag(g.nodes, edges)


def mutilate_summary(h, bar_x, under_z):
    """Mutilate a summary's quotient cluster-wise.

    The base is left intact; the result is flagged so that ``canonical``
    grounds edges from the mutilated quotient (plus within-cluster order
    edges) instead of resurrecting severed base edges. Mutilating with two
    empty sets is the identity.
    """
    bar_x, under_z = frozenset(bar_x), frozenset(under_z)
    if not bar_x and not under_z:
        return h
    quotient = mutilate(h.quotient, bar_x, under_z)
    return SummaryDag(h.base, quotient, h.mapping, h.base_order, mutilated=True)
