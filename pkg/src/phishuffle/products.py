"""The phi-shuffle product, its dual coproduct, and primitive/group-like tests.

Word-level results are memoized on the law (``law.cache``); the caches only
ever store exact values, so they are invisible to callers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laws import PhiLaw
from .ncpoly import (NCPoly, TensorPoly, TruncSeries, _accumulate, delta_conc, pairing)
from .scalars import ONE, ZERO, Scalar
from .words import EMPTY, Word

__all__ = ["phi_shuffle", "phi_shuffle_words", "phi_shuffle_power", "delta_phi", "delta_plus",
           "delta_conc", "classify_element", "Classification"]


def phi_shuffle_words(law: PhiLaw, u: Word, v: Word) -> dict[Word, Scalar]:
    """``u ⧢φ v`` for two words, as a ``{word: coeff}`` dict (do not mutate)."""
    if not u:
        return {v: ONE}
    if not v:
        return {u: ONE}
    key = ("sh", u, v)
    out = law.cache.get(key)
    if out is not None:
        return out
    a, u1 = u[0], u[1:]
    b, v1 = v[0], v[1:]
    acc: dict = {}
    for w, c in phi_shuffle_words(law, u1, v).items():
        _accumulate(acc, {(a,) + w: c})
    for w, c in phi_shuffle_words(law, u, v1).items():
        _accumulate(acc, {(b,) + w: c})
    contraction = law.apply(a, b)
    if contraction:
        tail = phi_shuffle_words(law, u1, v1)
        for k, g in contraction.items():
            for w, c in tail.items():
                _accumulate(acc, {(k,) + w: g * c})
    law.cache[key] = acc
    return acc


def phi_shuffle(law: PhiLaw, P: NCPoly, Q: NCPoly) -> NCPoly:
    """Bilinear extension of the word recursion

    ``au ⧢φ bv = a(u ⧢φ bv) + b(au ⧢φ v) + phi(a, b)(u ⧢φ v)``, with the
    empty word as unit.  If either side is a :class:`TruncSeries` the result
    is truncated at the smaller bound.
    """
    bound, alphabet = _bound_of(P, Q)
    acc: dict = {}
    for u, a in P.raw_items():
        for v, b in Q.raw_items():
            if bound is not None and alphabet.weight(u) + alphabet.weight(v) > bound \
                    and law.is_weight_graded:
                continue
            _accumulate(acc, phi_shuffle_words(law, u, v), a * b)
    if bound is None:
        return NCPoly._wrap(acc)
    return TruncSeries._make(acc, bound, alphabet)


def _bound_of(*items):
    bound, alphabet = None, None
    for X in items:
        if isinstance(X, TruncSeries):
            bound = X.bound if bound is None else min(bound, X.bound)
            alphabet = X.alphabet
    return bound, alphabet


def phi_shuffle_power(law: PhiLaw, P: NCPoly, n: int) -> NCPoly:
    """``P ⧢φ ... ⧢φ P`` (``n`` factors); ``n = 0`` gives 1."""
    if n < 0:
        raise ValueError("negative shuffle power")
    if n >= 3:
        law.require("associative", op="phi_shuffle_power")
    out = NCPoly.constant(ONE)
    for _ in range(n):
        out = phi_shuffle(law, out, P)
    return out


# -- coproducts -----------------------------------------------------------------------

def _delta_letter(law: PhiLaw, y: int) -> dict:
    key = ("dl", y)
    out = law.cache.get(key)
    if out is None:
        out = {((y,), EMPTY): ONE, (EMPTY, (y,)): ONE}
        for x, z, g in law.preimage_pairs(y):
            _accumulate(out, {((x,), (z,)): g})
        law.cache[key] = out
    return out


def _delta_word(law: PhiLaw, w: Word) -> dict:
    """Binary coproduct of a word as a ``{(u, v): coeff}`` dict."""
    if not w:
        return {(EMPTY, EMPTY): ONE}
    key = ("dw", w)
    out = law.cache.get(key)
    if out is not None:
        return out
    head = _delta_word(law, w[:-1])
    last = _delta_letter(law, w[-1])
    acc: dict = {}
    for (u1, v1), c1 in head.items():
        for (u2, v2), c2 in last.items():
            _accumulate(acc, {(u1 + u2, v1 + v2): c1 * c2})
    law.cache[key] = acc
    return acc


def delta_phi(law: PhiLaw, P: NCPoly, n: int = 2) -> TensorPoly:
    """Coproduct dual to ⧢φ, ``n``-fold (order-``n`` tensor).

    On letters ``Δ(y) = y⊗1 + 1⊗y + Σ γ[x, z]^y x⊗z``, extended as a
    morphism for concatenation.  Higher orders apply Δ to the last leg
    repeatedly, which is legitimate by coassociativity.
    """
    if n < 2:
        raise ValueError("coproduct order must be >= 2")
    law.require("associative", "dualizable", op="delta_phi")
    bound, alphabet = _bound_of(P)
    acc: dict = {}
    for w, c in P.raw_items():
        _accumulate(acc, _delta_word(law, w), c)
    for _ in range(n - 2):
        nxt: dict = {}
        for key, c in acc.items():
            for (u, v), d in _delta_word(law, key[-1]).items():
                _accumulate(nxt, {key[:-1] + (u, v): c * d})
        acc = nxt
    T = TensorPoly._wrap(acc, n)
    if bound is not None:
        T = T.truncate(bound, alphabet)
    return T


def delta_plus(law: PhiLaw, P: NCPoly) -> TensorPoly:
    """Reduced coproduct ``Δ(P) - P⊗1 - 1⊗P + ε(P) 1⊗1``; zero iff ``P`` is primitive."""
    T = delta_phi(law, P)
    one = NCPoly.constant(ONE)
    T = T - TensorPoly.pure(P, one) - TensorPoly.pure(one, P)
    eps = P.constant_term
    if eps:
        T = T + TensorPoly.unit(2).scale(eps)
    return T


# -- Friedrichs criterion --------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify_element`, valid for pairs of total weight <= ``bound``."""

    kind: str  # "primitive" | "grouplike" | "neither"
    bound: int
    witness: tuple | None = None  # (u, v) breaking the failed criterion

    def __str__(self) -> str:
        return f"{self.kind} (checked up to weight {self.bound})"

    def __eq__(self, other):
        if isinstance(other, str):
            return self.kind == other
        if isinstance(other, Classification):
            return (self.kind, self.bound, self.witness) == (other.kind, other.bound, other.witness)
        return NotImplemented

    __hash__ = object.__hash__


def classify_element(law: PhiLaw, S: NCPoly, bound: int | None = None) -> Classification:
    """Decide primitive / group-like by pairing ``S`` against products ``u ⧢φ v``.

    ``S`` is primitive iff its constant term is 0 and ``<S, u⧢φv> = 0``; it is
    group-like iff its constant term is 1 and ``<S, u⧢φv> = <S, u><S, v>``,
    for all nonempty ``u, v`` with ``weight(u) + weight(v) <= bound``.
    """
    law.require("associative", "commutative", "dualizable", op="classify_element")
    if bound is None:
        if not isinstance(S, TruncSeries):
            raise ValueError("classify_element needs a bound for a polynomial argument")
        bound = S.bound
    alphabet = law.alphabet
    const = S.constant_term
    if const == ZERO:
        kind = "primitive"
    elif const == ONE:
        kind = "grouplike"
    else:
        return Classification("neither", bound, None)
    words = _words_up_to(law, bound)
    for u in words:
        wu = alphabet.weight(u)
        for v in words:
            if wu + alphabet.weight(v) > bound:
                continue
            prod = phi_shuffle_words(law, u, v)
            if any(alphabet.weight(w) > bound for w in prod):
                continue
            lhs = pairing(S, NCPoly._wrap(prod))
            rhs = ZERO if kind == "primitive" else S.coeff(u) * S.coeff(v)
            if lhs != rhs:
                return Classification("neither", bound, (u, v))
    return Classification(kind, bound, None)


def _words_up_to(law: PhiLaw, bound: int) -> list[Word]:
    return law.alphabet.words_up_to(bound, include_empty=False)
