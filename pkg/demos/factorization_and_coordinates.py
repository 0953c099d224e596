"""Factorizing the diagonal series, and coordinates on group-like series.

Run: python3 demos/factorization_and_coordinates.py
"""

from fractions import Fraction

from phishuffle.factorization import (diagonal, lie_exponential, local_coordinates, reconstruct,
                                      schutzenberger)
from phishuffle.laws import q_stuffle
from phishuffle.words import STANDARD


def main():
    law = q_stuffle()
    for N in range(1, 5):
        ok = schutzenberger(law, N) == diagonal(STANDARD, N)
        print(f"product over Lyndon words equals the diagonal up to weight {N}: {ok}")

    S = lie_exponential(law, {(1,): 2, (2,): Fraction(-1, 3), (2, 1): Fraction(1, 2)}, 4)
    chart = local_coordinates(law, S)
    print("\ncoordinates of a group-like series:")
    for line in chart.dump():
        print(" ", line)
    print("reconstruction gives it back:", reconstruct(chart) == S)


if __name__ == "__main__":
    main()
