"""d-separation over DAGs and s-separation over summary DAGs.

``d_separated`` is the workhorse (linear-time reachability over edge
orientations). ``d_separated_oracle`` re-decides the same queries by
brute-force trail enumeration and exists so tests can cross-check the
fast path against the textbook definition. ``s_separated`` lifts the
query to a summary DAG by grounding it on the canonical causal DAG.
"""

from collections import deque
from dataclasses import dataclass, field

from .graph_core import (
    Dag,
    SizeLimitError,
    UnknownNodeError,
    ValidationError,
)
from .summary import canonical


@dataclass(frozen=True)
class SeparationQuery:
    """A separation triple: is x independent of y given z?

    x and y must be non-empty and x, y, z pairwise disjoint. Empty x or y
    is rejected rather than treated as vacuously separated, to surface
    caller bugs.
    """

    x: frozenset
    y: frozenset
    z: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "y", frozenset(self.y))
        object.__setattr__(self, "z", frozenset(self.z))
        if not self.x or not self.y:
            raise ValidationError("separation query needs non-empty x and y")
        if self.x & self.y or self.x & self.z or self.y & self.z:
            overlap = (self.x & self.y) | (self.x & self.z) | (self.y & self.z)
            raise ValidationError(
                f"separation query sets must be disjoint; shared: {sorted(overlap)}"
            )

    def members(self):
        return self.x | self.y | self.z


def _check_members(g, query):
    for v in query.members():
        if v not in g.node_set:
            raise UnknownNodeError(v)


# Directions a trail can arrive at a node from. Arriving "down" means the
# last edge pointed into the node (came from a parent); arriving "up" means
# the last edge was traversed against its direction (came from a child).
_DOWN = "down"
_UP = "up"


def d_separated(g, query):
    """Decide whether x and y are d-separated by z in ``g``.

    True iff every trail between a node of x and a node of y is blocked
    given z: some non-head-to-head node on the trail is in z, or some
    head-to-head node is outside z with no descendant in z.

    Decided by ball-passing reachability over (node, arrival-direction)
    states rather than trail enumeration; ``d_separated_oracle`` is the
    slow reference implementation.

    >>> g = Dag("ABCDE", [("A","B"), ("A","C"), ("B","D"), ("C","D"), ("D","E")])
    >>> d_separated(g, SeparationQuery({"B"}, {"C"}, {"A"}))
    True
    >>> d_separated(g, SeparationQuery({"B"}, {"C"}, {"A", "D"}))
    False
    """
    _check_members(g, query)
    x, y, z = query.x, query.y, query.z

    # colliders may be passed when they (or a descendant) are conditioned on:
    # exactly the set z together with its ancestors
    opened = z | g.ancestors(z)

    visited = set()
    frontier = deque((s, _UP) for s in x)
    while frontier:
        v, direction = frontier.popleft()
        if (v, direction) in visited:
            continue
        visited.add((v, direction))
        # the trail into v already satisfied every interior blocking rule,
        # and endpoints are exempt from them — so touching y means connected
        if v in y:
            return False
        if direction == _UP:
            # came from a child: v is a chain or fork node here
            if v not in z:
                for parent in g.parents(v):
                    frontier.append((parent, _UP))
                for child in g.children(v):
                    frontier.append((child, _DOWN))
        else:
            # came from a parent: continuing downward keeps v a chain node,
            # turning back up makes v a head-to-head node
            if v not in z:
                for child in g.children(v):
                    frontier.append((child, _DOWN))
            if v in opened:
                for parent in g.parents(v):
                    frontier.append((parent, _UP))
    return True


def d_separated_oracle(g, query):
    """Trail-enumeration reference for ``d_separated`` (small graphs only).

    Enumerates every simple trail between x and y and applies the blocking
    rules to each interior node verbatim. Exponential; guarded to 12 nodes.
    """
    if g.num_nodes > 12:
        raise SizeLimitError(
            f"oracle is exponential; refusing {g.num_nodes} nodes (limit 12)"
        )
    _check_members(g, query)
    x, y, z = query.x, query.y, query.z

    adjacency = {v: sorted(g.parents(v) | g.children(v)) for v in g.nodes}

    def trails_from(start):
        # all simple trails start..(first y hit); stopping at the first hit
        # is complete, since a blocked prefix blocks every extension of it
        stack = [(start, [start], {start})]
        while stack:
            v, trail, on_trail = stack.pop()
            if v in y:
                yield trail
                continue
            for nb in adjacency[v]:
                if nb not in on_trail:
                    stack.append((nb, trail + [nb], on_trail | {nb}))

    def is_active(trail):
        for i in range(1, len(trail) - 1):
            prev, v, nxt = trail[i - 1], trail[i], trail[i + 1]
            if g.has_edge(prev, v) and g.has_edge(nxt, v):
                # head-to-head: needs v or a descendant of v inside z
                if not (g.descendants({v}) & z):
                    return False
            elif v in z:
                return False
        return True

    for start in sorted(x):
        for trail in trails_from(start):
            if is_active(trail):
                return False
    return True


def s_separated(h, query):
    """Decide the query over a summary DAG (all members are cluster labels).

    Per the summary-graph separation criterion this holds exactly when the
    grounded query is d-separated in the canonical causal DAG of ``h`` —
    sound and complete for the CIs guaranteed by every DAG the summary
    could have come from.
    """
    for label in query.members():
        if label not in h.quotient.node_set:
            raise UnknownNodeError(label)
    grounded = SeparationQuery(
        x=frozenset().union(*(h.members(c) for c in query.x)),
        y=frozenset().union(*(h.members(c) for c in query.y)),
        z=frozenset().union(*(h.members(c) for c in query.z))
        if query.z
        else frozenset(),
    )
    return d_separated(canonical(h), grounded)
