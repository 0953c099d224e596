"""The deformed PBW basis PI and its dual SIGMA.

Run: python3 demos/dual_bases.py
"""

from phishuffle.bases import build_basis_table, gram_check, phi_pi1_map, pi_element
from phishuffle.laws import q_stuffle, shuffle


def main():
    law = q_stuffle()
    table = build_basis_table(law, 3)
    for line in table.dump():
        print(line)

    # the deformation is a change of variables on letters
    for l in table.lyndon_list:
        classical = pi_element(shuffle(), l)
        assert phi_pi1_map(law, classical) == pi_element(law, l)
    print("\nforward map sends every classical Lyndon element to its deformed one")

    for bound in (3, 5):
        print(gram_check(law, bound))


if __name__ == "__main__":
    main()
