"""Diagonal series, Schützenberger's factorization and local coordinates.

In the double algebra (⧢φ on the left leg, concatenation on the right),

    Σ_w w ⊗ w  =  ∏_{l Lyndon, decreasing} exp(Σ_l ⊗ Π_l)  =  Σ_w Σ_w ⊗ Π_w.

Pairing the left leg with a group-like series ``S`` turns this into
``S = ∏ exp(<S, Σ_l> Π_l)``, so the numbers ``<S, Σ_l>`` are coordinates
on the group of group-like series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bases import BASIS_PROPS, pi_element, sigma_element
from .laws import PhiLaw
from .ncpoly import NCPoly, TensorPoly, TruncSeries, conc_mul, pairing, series_exp
from .products import classify_element
from .projectors import double_exp, double_product
from .scalars import ONE, ZERO, Scalar, ScalarLike, as_scalar
from .words import STANDARD, Alphabet, Word, format_word, lyndon_up_to


class NotGroupLike(ValueError):
    pass


def diagonal(alphabet: Alphabet = STANDARD, weight_bound: int = 0) -> TensorPoly:
    """``Σ_{weight(w) <= bound} w ⊗ w``."""
    return TensorPoly._wrap({(w, w): ONE for w in alphabet.words_up_to(weight_bound)}, 2)


def _check_graded(law: PhiLaw, op: str) -> None:
    law.require(*BASIS_PROPS, op=op)
    if not law.is_weight_graded:
        raise ValueError(f"{op} needs a weight-graded law (truncation by weight)")


def decreasing_lyndon(law: PhiLaw, weight_bound: int) -> list[Word]:
    return list(reversed(lyndon_up_to(law.alphabet, weight_bound))) if weight_bound >= 1 else []


def schutzenberger(law: PhiLaw, weight_bound: int) -> TensorPoly:
    """``∏↘ exp(Σ_l ⊗ Π_l)`` over Lyndon words of weight <= ``weight_bound``, truncated."""
    _check_graded(law, "schutzenberger")
    out = TensorPoly.unit(2)
    for l in decreasing_lyndon(law, weight_bound):
        factor = double_exp(law, TensorPoly.pure(sigma_element(law, l), pi_element(law, l)),
                            weight_bound)
        out = double_product(law, out, factor, weight_bound)
    return out


def sigma_pi_sum(law: PhiLaw, weight_bound: int) -> TensorPoly:
    """``Σ_{weight(w) <= bound} Σ_w ⊗ Π_w``."""
    _check_graded(law, "sigma_pi_sum")
    out = TensorPoly.unit(2)
    for w in law.alphabet.words_up_to(weight_bound, include_empty=False):
        out = out + TensorPoly.pure(sigma_element(law, w), pi_element(law, w))
    return out


@dataclass
class CoordinateChart:
    """Coordinates ``<S, Σ_l>`` indexed by the Lyndon words of weight <= ``weight_bound``."""

    law: PhiLaw
    weight_bound: int
    coords: dict[Word, Scalar]

    def __post_init__(self):
        keys = set(lyndon_up_to(self.law.alphabet, self.weight_bound)) if self.weight_bound >= 1 else set()
        extra = set(self.coords) - keys
        if extra:
            raise ValueError("not a Lyndon word within the bound: "
                             + ", ".join(format_word(w) for w in sorted(extra)))
        self.coords = {l: as_scalar(self.coords.get(l, ZERO)) for l in decreasing_lyndon(self.law, self.weight_bound)}

    @classmethod
    def from_values(cls, law: PhiLaw, weight_bound: int,
                    values: Mapping[Word, ScalarLike]) -> "CoordinateChart":
        return cls(law, weight_bound, {tuple(k): as_scalar(v) for k, v in values.items()})

    def dump(self) -> list[str]:
        """Lines ``COORD <lyndon word> = <scalar>``, decreasing order."""
        return [f"COORD {format_word(l)} = {c}" for l, c in self.coords.items()]


def local_coordinates(law: PhiLaw, S: TruncSeries) -> CoordinateChart:
    """Chart of a group-like truncated series; raises :class:`NotGroupLike` otherwise."""
    _check_graded(law, "local_coordinates")
    if not isinstance(S, TruncSeries):
        raise TypeError("local_coordinates needs a truncated series")
    verdict = classify_element(law, S)
    if verdict.kind != "grouplike":
        where = ""
        if verdict.witness:
            u, v = verdict.witness
            where = f" (fails on {format_word(u)}, {format_word(v)})"
        raise NotGroupLike(f"not group-like up to weight {S.bound}{where}")
    coords = {l: pairing(S, sigma_element(law, l)) for l in decreasing_lyndon(law, S.bound)}
    return CoordinateChart(law, S.bound, coords)


def reconstruct(chart: CoordinateChart, order: Sequence[Word] | None = None) -> TruncSeries:
    """``∏↘ exp(c_l Π_l)`` truncated at the chart's bound.

    ``order`` overrides the factor order (used to show that the order matters).
    """
    law, bound = chart.law, chart.weight_bound
    out = TruncSeries({(): ONE}, bound, law.alphabet)
    for l in (order if order is not None else chart.coords):
        c = chart.coords[tuple(l)]
        if not c:
            continue
        h = TruncSeries(pi_element(law, l).scale(c), bound, law.alphabet)
        out = conc_mul(out, series_exp(h))
    return out


def lie_exponential(law: PhiLaw, coeffs: Mapping[Word, ScalarLike], weight_bound: int) -> TruncSeries:
    """``exp(Σ c_l Π_l)`` truncated: a group-like series built from a Lie element."""
    h = NCPoly()
    for l, c in coeffs.items():
        h = h + pi_element(law, tuple(l)).scale(c)
    return series_exp(TruncSeries(h, weight_bound, law.alphabet))
