"""
Degree-bounded vertex partitions
================================

Split a graph into parts whose induced maximum degree stays within a
budget, and see what comes back when the budget is exactly tight.
"""

from partcolor import build_complete, find_partition_t1, local_search_f, verify_certificate
from partcolor.graph import build_cycle, build_petersen

# Petersen graph, cubic.  Two parts with budgets (1, 1) sum to Delta - 1,
# which is enough for the plain descent on the cost function.
g = build_petersen()
p = local_search_f(g, (1, 1))
for i, part in enumerate(p.parts):
    print(f"part {i}: {sorted(part)} max degree {g.induced(part).max_degree()}")

# With a degree threshold d the engine also keeps every obstruction
# (a K_{r+1}, or an odd cycle when r = 1) away from degree-d vertices.
c5 = build_cycle(5)
cert = find_partition_t1(c5, (2, 2), 4)
print("C5:", cert.kind, [sorted(part) for part in cert.partition.parts])

# On K_5 with wt(r) = d the partition cannot exist; a clique structure
# is returned instead, and the checker accepts it.
k5 = build_complete(5)
cert = find_partition_t1(k5, (2, 2), 4)
print("K5:", cert.kind, "Q =", sorted(cert.q), "cliques", [sorted(c) for c in cert.cliques])
print("checker:", verify_certificate(k5, cert)[0])
