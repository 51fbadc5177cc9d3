"""
Colorings from partitions
=========================

Brooks-type coloring of each part, then the combined coloring, and the
exact chromatic number as a cross-check.
"""

from partcolor import brooks_color, build_o_n, color_via_partition, exact_chi, omega_d
from partcolor.graph import build_petersen

g = build_petersen()
col = brooks_color(g, 3)
print("Petersen with 3 colors:", col.as_dict(), "proper:", col.is_proper(g))

col = color_via_partition(g, (2, 2), 3)
print("via partition:", col.num_colors, "colors; exact chi =", exact_chi(g).chi)

# O_5 has chi = 5 = Delta, so a 4-coloring is impossible and the clique
# structure is returned.
o5 = build_o_n(5)
print("omega_4(O_5) =", omega_d(o5, 4))
out = color_via_partition(o5, (2, 2), 4)
print("O_5:", type(out).__name__, "Q =", sorted(out.q))
