"""Print the first few admissible cells with their vertices and weights.

A vertex weight is the share of a small probe around the vertex that lies in
the cell; the weights of a quadrilateral add up to 4/p and those of a
triangle to 2/p.
"""
from evenfarey.geometry import format_rational
from evenfarey.tessellation import admissible_cells, checksum, vertex_alphas


def show(c):
    print(f"{c.tuple}  p={c.p}  area={c.polygon.area()}")
    for w in vertex_alphas(c):
        x, y = w.vertex
        print(f"    ({format_rational(x)}, {format_rational(y)})  alpha {w.alpha}")
    print(f"    sum {checksum(c)}")


for r in (2, 3, 4, 5):
    print(f"--- level {r}")
    for c in admissible_cells(r, max_entry=7):
        show(c)
