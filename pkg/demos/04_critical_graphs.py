"""
Critical graphs and the classifier
==================================

Extract a vertex-critical subgraph from a random graph, then ask the
classifier whether it must be a complete graph or O_5.
"""

import random

from partcolor import Graph, build_o_n, classify_critical, extract_critical_subgraph, is_vertex_critical

rng = random.Random(3)
n = 10
g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6])
sub, kept = extract_critical_subgraph(g)
print("kept vertices", kept, "critical:", is_vertex_critical(sub).is_critical)
for p in range(sub.max_degree() + 1):
    print(f"p={p}:", classify_critical(sub, p))

o5 = build_o_n(5)
print("O_5, p=1:", classify_critical(o5, 1))
