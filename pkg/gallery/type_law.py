"""How often are two neighbouring even fractions separated by r odd ones?

Counts the gaps in F_Q and sets them against twice the area of the matching
cells of the Farey triangle.

    python3 gallery/type_law.py 4000
"""
import sys

from evenfarey.pairs import even_pairs, type_histogram
from evenfarey.tessellation import admissible_cells, level_areas


def main(Q=4000):
    hist = type_histogram(even_pairs(Q))
    print(f"Q = {Q}")
    print(" r   empirical   2*area   cells (entries <= 20)")
    for r in range(1, 8):
        predicted = 2 * level_areas(r, 400)
        cells = len(admissible_cells(r, max_entry=20)) if r > 1 else "-"
        print(f"{r:2d}   {float(hist.get(r, 0)):.5f}    {float(predicted):.5f}  {cells}")
    rest = 1 - sum(float(v) for k, v in hist.items() if k <= 7)
    print(f"r > 7: {rest:.5f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4000)
