"""Eulerian projectors: splitting a word into primitive, quadratic, ... parts.

Run: python3 demos/eulerian_projectors.py
"""

from phishuffle.laws import q_stuffle
from phishuffle.ncpoly import NCPoly
from phishuffle.products import delta_plus
from phishuffle.projectors import antipode, hausdorff, pi1, pi_n
from phishuffle.textio import parse_poly as P


def main():
    law = q_stuffle()
    w = P("y1.y2")
    print("w =", w)
    total = NCPoly()
    for n in range(4):
        part = pi_n(law, w, n)
        total = total + part
        print(f"  pi_{n}(w) = {part}")
    print("  sum of the parts:", total)

    p = pi1(law, P("y2.y1.y1"))
    print("\npi_1(y2.y1.y1) =", p)
    print("reduced coproduct of it vanishes:", not delta_plus(law, p))

    print("\nantipode(y1.y1) =", antipode(law, P("y1.y1")))
    print("sum of w (x) pi_1(w) up to weight 2:", hausdorff(law, 2))


if __name__ == "__main__":
    main()
