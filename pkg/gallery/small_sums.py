"""The neighbour inequality q' + q'' > Q fails for even neighbours, about 1/6 of the time.

Watch the empirical share settle while Q grows, and compare with the
integral of the density over the triangle u + v <= 1.
"""
from evenfarey.density import integrate_g
from evenfarey.geometry import ConvexPolygon
from evenfarey.pairs import even_pairs, small_sum_probability

for Q in (50, 200, 1000, 5000, 20000):
    share = small_sum_probability(even_pairs(Q))
    print(f"Q={Q:6d}  share {float(share):.5f}")

lower = ConvexPolygon.from_vertices([(0, 0), (1, 0), (0, 1)])
print(f"integral of g below u+v=1: {integrate_g(lower, 1000):.5f}  (1/6 = {1/6:.5f})")
