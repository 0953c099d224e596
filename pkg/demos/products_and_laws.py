"""Deformed shuffle products and what the law analysis says about them.

Run: python3 demos/products_and_laws.py
"""

from phishuffle.laws import analyze_law, builtin_law, q_infiltration
from phishuffle.products import classify_element, delta_phi, phi_shuffle
from phishuffle.ncpoly import TruncSeries, series_exp
from phishuffle.textio import parse_poly as P


def main():
    print("The same product under four laws:")
    for name in ("shuffle", "quasishuffle", "minshuffle", "qstuffle"):
        law = builtin_law(name)
        print(f"  {name:13s} y1 * y2.y1 = {phi_shuffle(law, P('y1'), P('y2.y1'))}")

    qst = builtin_law("qstuffle")
    print("\nThe coproduct is dual to the product; on a letter it splits the index:")
    print("  Delta(y3) =", delta_phi(qst, P("y3")))

    print("\nLaw analysis (exact up to weight 6):")
    for law in (qst, q_infiltration([1])):
        rep = analyze_law(law, 6)
        flags = ", ".join(f"{k}={v}" for k, v in zip(
            ("associative", "commutative", "dualizable", "moderate"), rep.flags()))
        print(f"  {law.name}: {flags}")
        for note in rep.notes:
            print(f"    note: {note}")

    print("\nExponentials truncated at weight 3:")
    for text in ("y1 + y2 - (q/2)*y1.y1", "y1 + y2"):
        S = series_exp(TruncSeries(P(text), 3))
        print(f"  exp({text}) is {classify_element(qst, S).kind}")
    print("  (only the first exponent is primitive for the deformed coproduct)")


if __name__ == "__main__":
    main()
