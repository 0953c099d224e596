import random

import pytest

from phishuffle.bases import pi_element, sigma_element
from phishuffle.factorization import (CoordinateChart, NotGroupLike, decreasing_lyndon, diagonal,
                                      lie_exponential, local_coordinates, reconstruct,
                                      schutzenberger, sigma_pi_sum)
from phishuffle.laws import min_shuffle, q_stuffle, quasi_shuffle, shuffle
from phishuffle.ncpoly import TensorPoly, TruncSeries, pairing, series_exp
from phishuffle.projectors import double_exp, double_product
from phishuffle.scalars import ONE, Scalar
from phishuffle.textio import parse_poly as P
from phishuffle.words import STANDARD, Alphabet

QST = q_stuffle()
LAWS = [shuffle(), QST, quasi_shuffle(), min_shuffle()]


def series(text, bound):
    return TruncSeries(P(text), bound)


class TestDiagonal:
    def test_small(self):
        two = Alphabet.standard(2)
        assert diagonal(two, 0) == TensorPoly.unit(2)
        assert diagonal(two, 1) == TensorPoly.unit(2) + TensorPoly({((1,), (1,)): 1})
        assert diagonal(two, 2) == diagonal(two, 1) + TensorPoly({((2,), (2,)): 1, ((1, 1), (1, 1)): 1})

    def test_size(self):
        assert len(diagonal(STANDARD, 5)) == 32


@pytest.mark.parametrize("law", LAWS, ids=lambda L: L.name)
@pytest.mark.parametrize("bound", [1, 2, 3, 4])
def test_factorization_is_diagonal(law, bound):
    got = schutzenberger(law, bound)
    assert got == diagonal(law.alphabet, bound)
    assert got == sigma_pi_sum(law, bound)


def test_bound_one_and_two():
    assert schutzenberger(QST, 1) == TensorPoly.unit(2) + TensorPoly({((1,), (1,)): 1})
    first = double_exp(QST, TensorPoly.pure(P("y1"), P("y1")), 2)
    assert first.coeff((1, 1), (1, 1)) == ONE
    assert first.coeff((2,), (1, 1)) == Scalar("q/2")
    second = double_exp(QST, TensorPoly.pure(sigma_element(QST, (2,)), pi_element(QST, (2,))), 2)
    # the q/2 cross terms of the two factors cancel
    assert double_product(QST, second, first, 2) == diagonal(STANDARD, 2)


def test_classical_bracket_reading_fails_for_deformed_law():
    # with the undeformed Lie elements in place of the deformed ones the identity breaks
    out = TensorPoly.unit(2)
    for l in decreasing_lyndon(QST, 2):
        out = double_product(QST, out, double_exp(
            QST, TensorPoly.pure(sigma_element(QST, l), pi_element(shuffle(), l)), 2), 2)
    assert out != diagonal(STANDARD, 2)


class TestCoordinates:
    def test_trivial(self):
        chart = local_coordinates(QST, series("1", 3))
        assert all(not c for c in chart.coords.values())
        assert list(chart.coords) == decreasing_lyndon(QST, 3)
        assert reconstruct(chart) == series("1", 3)

    def test_single_letter(self):
        c = Scalar("3/7")
        S = series_exp(TruncSeries(P("y1").scale(c), 3))
        chart = local_coordinates(QST, S)
        assert chart.coords[(1,)] == c
        assert all(not v for l, v in chart.coords.items() if l != (1,))

    def test_reconstruct_examples(self):
        empty = CoordinateChart.from_values(QST, 2, {})
        assert reconstruct(empty) == series("1", 2)
        chart = CoordinateChart.from_values(QST, 2, {(1,): 2})
        assert reconstruct(chart) == series("1 + 2*y1 + 2*y1.y1", 2)
        with pytest.raises(ValueError, match="not a Lyndon word"):
            CoordinateChart.from_values(QST, 2, {(1, 1): 1})

    def test_lie_exponential_round_trip(self):
        S = lie_exponential(QST, {(1,): 2, (2, 1): Scalar(1) / 3}, 4)
        assert reconstruct(local_coordinates(QST, S)) == S

    def test_chart_from_single_factors(self):
        for l in decreasing_lyndon(QST, 4):
            S = series_exp(TruncSeries(pi_element(QST, l).scale(Scalar(5) / 2), 4))
            chart = local_coordinates(QST, S)
            assert chart.coords[l] == Scalar(5) / 2
            assert all(not v for k, v in chart.coords.items() if k != l)

    def test_not_grouplike(self):
        with pytest.raises(NotGroupLike, match="not group-like up to weight 3"):
            local_coordinates(QST, series("1 + y1", 3))
        with pytest.raises(TypeError):
            local_coordinates(QST, P("1"))

    def test_character_of_left_leg(self):
        # a character chi of the deformed product, read off a group-like series
        chart = CoordinateChart.from_values(QST, 3, {(1,): 2, (2,): -1, (2, 1): Scalar(1) / 2})
        S = reconstruct(chart)
        chi = lambda Q: pairing(S, Q)  # noqa: E731
        got = local_coordinates(QST, S)
        for l, c in got.coords.items():
            assert c == chi(sigma_element(QST, l)) == chart.coords[l]

    def test_dump(self):
        chart = CoordinateChart.from_values(QST, 2, {(1,): 2})
        assert chart.dump() == ["COORD y1 = 2", "COORD y2 = 0"]


def random_lie_series(rng, law, bound):
    coeffs = {}
    for l in decreasing_lyndon(law, bound):
        if rng.random() < 0.7:
            coeffs[l] = Scalar(rng.randint(-6, 6)) / rng.randint(1, 5)
    return lie_exponential(law, coeffs, bound)


def test_round_trip_random():
    rng = random.Random(4)
    for _ in range(20):
        S = random_lie_series(rng, QST, 4)
        assert local_coordinates(QST, S).weight_bound == 4
        assert reconstruct(local_coordinates(QST, S)) == S


def test_factor_order_matters():
    chart = CoordinateChart.from_values(QST, 3, {(1,): 1, (2,): 1})
    order = list(chart.coords)
    i, j = order.index((2,)), order.index((1,))
    swapped = list(order)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert reconstruct(chart, swapped) != reconstruct(chart)
