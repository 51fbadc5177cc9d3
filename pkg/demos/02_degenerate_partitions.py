"""
Partitions with degenerate parts
================================

Parts may have degree r_i, but every r_i-regular component must be
harmless.  The exception is a join of a clique with an independent set.
"""

from partcolor import borodin_partition, degeneracy, find_partition_t2
from partcolor.graph import Graph, build_cycle, build_petersen

c6 = build_cycle(6)
cert = find_partition_t2(c6, (1, 2), 2)
print("C6:", cert.kind, [sorted(part) for part in cert.partition.parts])

# K_5 plus a pendant vertex: the clique part is joined to the rest.
g = Graph.from_edges(6, [(u, v) for u in range(5) for v in range(u + 1, 5)] + [(4, 5)])
cert = find_partition_t2(g, (2, 2), 4)
print("K5 + pendant:", cert.kind, sorted(cert.clique_part), "joined to", sorted(cert.independent_part))

# Two parts, each with bounded degree and bounded coloring number (col).
p = borodin_partition(build_petersen(), 2, 1)
for part, budget in zip(p.parts, (2, 1)):
    sub = build_petersen().induced(part)
    print(f"budget {budget}: size {len(part)}, max degree {sub.max_degree()}, col {degeneracy(sub) + 1}")
