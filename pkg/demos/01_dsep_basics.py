"""
d-separation on a five-variable causal DAG
==========================================

The running example: A causes B and C, both cause D, and D causes E.
"""

from causalsumm import Dag, SeparationQuery, d_separated, recursive_basis

g = Dag("ABCDE", [("A", "B"), ("A", "C"), ("B", "D"), ("C", "D"), ("D", "E")])

print("graph:", g)
print("parents(D):", sorted(g.parents("D")))

# Conditioning on the mediator D cuts A off from E...
queries = [
    SeparationQuery({"E"}, {"A"}, {"D"}),
    SeparationQuery({"E"}, {"A"}, set()),
    # ...while conditioning on the collider D connects B and C:
    SeparationQuery({"B"}, {"C"}, {"A"}),
    SeparationQuery({"B"}, {"C"}, {"A", "D"}),
]
for q in queries:
    verdict = "separated" if d_separated(g, q) else "connected"
    print(f"{sorted(q.x)} vs {sorted(q.y)} given {sorted(q.z)}: {verdict}")

# The recursive basis: one CI per node, given its parents, against all
# earlier non-parents. Every CI of the DAG follows from these.
print("\nrecursive basis along A<B<C<D<E:")
for s in recursive_basis(g, "ABCDE"):
    print(f"  {sorted(s.x)} _||_ {sorted(s.y)} | {sorted(s.z)}")
