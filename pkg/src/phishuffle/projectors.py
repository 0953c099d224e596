"""Eulerian projectors, the antipode and the Hausdorff series.

Everything is built from one memoized table: the sum, over the splittings
of a word ``w`` into ``k`` nonempty factors, of ``u1 ⧢φ ... ⧢φ uk``.
The adjoint projectors (``side="adjoint"``) are combinations of those sums;
the standard projectors are their transposes, computed over the finite set
of words whose products can reach ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .laws import PhiLaw, expanding_candidates
from .ncpoly import NCPoly, TensorPoly, _accumulate, conc_mul
from .products import phi_shuffle, phi_shuffle_words
from .scalars import ONE, ZERO, Scalar, ScalarLike, as_scalar
from .words import EMPTY, Word, splittings

STANDARD_SIDE = "standard"
ADJOINT_SIDE = "adjoint"


@dataclass(frozen=True)
class CoeffSeq:
    """Coefficients ``a_1, a_2, ...`` of a power series without constant term."""

    fn: Callable[[int], ScalarLike]
    name: str = "S"

    def __call__(self, n: int) -> Scalar:
        return ZERO if n < 1 else as_scalar(self.fn(n))

    @classmethod
    def from_list(cls, coeffs: Sequence[ScalarLike], name: str = "S") -> "CoeffSeq":
        """``coeffs[0]`` is ``a_1``; missing coefficients are 0."""
        vals = [as_scalar(c) for c in coeffs]
        return cls(lambda n: vals[n - 1] if n <= len(vals) else ZERO, name)

    @classmethod
    def identity(cls) -> "CoeffSeq":
        return cls(lambda n: 1 if n == 1 else 0, "X")

    @classmethod
    def log1p(cls) -> "CoeffSeq":
        return cls(lambda n: Fraction((-1) ** (n - 1), n), "log(1+X)")

    @classmethod
    def neg_geometric(cls) -> "CoeffSeq":
        """``-X/(1+X)``, i.e. ``a_k = (-1)^k``; gives the antipode on nonempty words."""
        return cls(lambda n: (-1) ** n, "-X/(1+X)")


def _check_side(side: str) -> None:
    if side not in (STANDARD_SIDE, ADJOINT_SIDE):
        raise ValueError(f"side must be 'standard' or 'adjoint', not {side!r}")


def split_products(law: PhiLaw, w: Word, k: int) -> dict[Word, Scalar]:
    """``Σ_{u1...uk = w, ui nonempty} u1 ⧢φ ... ⧢φ uk`` as a dict (do not mutate)."""
    if k == 0:
        return {EMPTY: ONE} if not w else {}
    if k > len(w):
        return {}
    if k == 1:
        return {w: ONE}
    key = ("sp", w, k)
    out = law.cache.get(key)
    if out is not None:
        return out
    acc: dict = {}
    for i in range(1, len(w) - k + 2):
        head = w[:i]
        for v, c in split_products(law, w[i:], k - 1).items():
            _accumulate(acc, phi_shuffle_words(law, head, v), c)
    law.cache[key] = acc
    return acc


def _series_on_word(law: PhiLaw, coeffs: CoeffSeq, w: Word) -> dict:
    acc: dict = {}
    for k in range(1, len(w) + 1):
        a = coeffs(k)
        if a:
            _accumulate(acc, split_products(law, w, k), a)
    return acc


def phi_of_series(law: PhiLaw, coeffs: CoeffSeq, P: NCPoly) -> NCPoly:
    """``Φ(S)[w] = Σ_k a_k Σ_{u1...uk = w} u1 ⧢φ ... ⧢φ uk`` (so ``Φ(S)[1] = 0``)."""
    law.require("associative", op="phi_of_series")
    acc: dict = {}
    for w, c in P.raw_items():
        if w:
            _accumulate(acc, _series_on_word(law, coeffs, w), c)
    return NCPoly._wrap(acc)


def antipode(law: PhiLaw, P: NCPoly) -> NCPoly:
    """Antipode of (⧢φ, deconcatenation): ``a(w) = Σ_k (-1)^k Σ u1 ⧢φ ... ⧢φ uk``, ``a(1) = 1``."""
    law.require("associative", op="antipode")
    neg = CoeffSeq.neg_geometric()
    acc: dict = {}
    for w, c in P.raw_items():
        if not w:
            _accumulate(acc, {EMPTY: c})
        else:
            _accumulate(acc, _word_memo(law, "ant", w, lambda: _series_on_word(law, neg, w)), c)
    return NCPoly._wrap(acc)


def _word_memo(law: PhiLaw, tag: str, w, compute) -> dict:
    key = (tag, w)
    out = law.cache.get(key)
    if out is None:
        out = compute()
        law.cache[key] = out
    return out


# -- first projector ---------------------------------------------------------------------

def pi1_check_word(law: PhiLaw, w: Word) -> dict:
    """``π̌1(w)`` as a dict."""
    if not w:
        return {}
    return _word_memo(law, "pi1c", w, lambda: _series_on_word(law, CoeffSeq.log1p(), w))


def pi1_word(law: PhiLaw, w: Word) -> dict:
    """``π1(w) = Σ_v <π̌1(v), w> v`` summed over the finitely many candidate ``v``."""
    if not w:
        return {}

    def compute():
        acc = {}
        for v in expanding_candidates(law, w, op="pi1"):
            c = pi1_check_word(law, v).get(w)
            if c:
                acc[v] = c
        return acc

    return _word_memo(law, "pi1", w, compute)


def pi1(law: PhiLaw, P: NCPoly, side: str = STANDARD_SIDE) -> NCPoly:
    """First Eulerian projector.

    ``side="adjoint"`` gives ``π̌1(w) = Σ_k (-1)^(k-1)/k Σ u1 ⧢φ ... ⧢φ uk``;
    ``side="standard"`` gives its transpose ``π1``, which projects onto the
    primitive elements.
    """
    _check_side(side)
    if side == ADJOINT_SIDE:
        law.require("associative", op="pi1 (adjoint side)")
        fn = pi1_check_word
    else:
        law.require("associative", "dualizable", "moderate", op="pi1")
        fn = pi1_word
    acc: dict = {}
    for w, c in P.raw_items():
        _accumulate(acc, fn(law, w), c)
    return NCPoly._wrap(acc)


# -- higher projectors ---------------------------------------------------------------------

def pin_check_word(law: PhiLaw, w: Word, n: int) -> dict:
    """``π̌n(w) = (1/n!) Σ_{u1...un = w} π̌1(u1) ⧢φ ... ⧢φ π̌1(un)``."""
    if n == 0:
        return {EMPTY: ONE} if not w else {}
    if n > len(w):
        return {}
    if n == 1:
        return pi1_check_word(law, w)
    key = ("pinc", w, n)
    out = law.cache.get(key)
    if out is not None:
        return out
    # unnormalized n-fold sums, built one factor at a time
    acc: dict = {}
    for i in range(1, len(w) - n + 2):
        head = NCPoly._wrap(dict(pi1_check_word(law, w[:i])))
        rest = pin_check_word(law, w[i:], n - 1)
        if not head or not rest:
            continue
        # rest is normalized by 1/(n-1)!; rescale by 1/n overall
        prod = phi_shuffle(law, head, NCPoly._wrap(dict(rest)))
        _accumulate(acc, prod.raw_items(), Scalar(Fraction(1, n)))
    law.cache[key] = acc
    return acc


def pin_word(law: PhiLaw, w: Word, n: int) -> dict:
    """``πn(w)``, the transpose of ``π̌n``."""
    if n == 0:
        return {EMPTY: ONE} if not w else {}
    if not w or n > law.alphabet.weight(w) and law.is_weight_graded:
        return {}

    def compute():
        acc = {}
        for v in expanding_candidates(law, w, op="pi_n"):
            if len(v) < n:
                continue
            c = pin_check_word(law, v, n).get(w)
            if c:
                acc[v] = c
        return acc

    return _word_memo(law, f"pin{n}", w, compute)


def pi_n(law: PhiLaw, P: NCPoly, n: int, side: str = STANDARD_SIDE) -> NCPoly:
    """``n``-th Eulerian projector (``n = 0`` is the projection on the constant term)."""
    _check_side(side)
    if n < 0:
        raise ValueError("n must be >= 0")
    law.require("associative", "commutative", "dualizable", "moderate", op="pi_n")
    fn = pin_check_word if side == ADJOINT_SIDE else pin_word
    acc: dict = {}
    for w, c in P.raw_items():
        _accumulate(acc, fn(law, w, n), c)
    return NCPoly._wrap(acc)


def pi_n_expansion(law: PhiLaw, w: Word, n: int) -> NCPoly:
    """``πn(w)`` from the product formula

    ``(1/n!) Σ_{u1, ..., un} <w, π̌1(u1) ⧢φ ... ⧢φ π̌1(un)> π1(u1) ... π1(un)``.

    Independent of :func:`pi_n`; graded laws only (the ``ui`` run over
    compositions of the weight of ``w``).
    """
    law.require("associative", "commutative", "dualizable", "moderate", op="pi_n_expansion")
    if not law.is_weight_graded:
        raise ValueError("pi_n_expansion needs a weight-graded law")
    if n == 0 or not w:
        return NCPoly.constant(ONE) if (n == 0 and not w) else NCPoly()
    acc: dict = {}
    alphabet = law.alphabet
    for v in alphabet.words_of_weight(alphabet.weight(w)):
        for parts in splittings(v, n):
            prod = NCPoly.constant(ONE)
            for u in parts:
                prod = phi_shuffle(law, prod, NCPoly._wrap(dict(pi1_check_word(law, u))))
            c = prod.coeff(w)
            if not c:
                continue
            image = NCPoly.constant(ONE)
            for u in parts:
                image = conc_mul(image, NCPoly._wrap(dict(pi1_word(law, u))))
            _accumulate(acc, image.raw_items(), c)
    return NCPoly._wrap(acc).scale(Scalar(Fraction(1, factorial(n))))


# -- oracles and series ----------------------------------------------------------------------

def word_expansion_identity(law: PhiLaw, w: Word) -> tuple[NCPoly, NCPoly]:
    """Both reconstructions of the word ``w``:

    ``Σ_k 1/k! Σ_u <w, u1 ⧢φ ... ⧢φ uk> π1(u1)...π1(uk)`` and
    ``Σ_k 1/k! Σ_{u1...uk = w} π̌1(u1) ⧢φ ... ⧢φ π̌1(uk)``.
    Each must equal ``w``.
    """
    law.require("associative", "commutative", "dualizable", "moderate", op="word_expansion_identity")
    w = tuple(w)
    if not w:
        one = NCPoly.constant(ONE)
        return one, one
    first: dict = {}
    for v in expanding_candidates(law, w, op="word_expansion_identity"):
        for k in range(1, len(v) + 1):
            for parts in splittings(v, k):
                prod: dict = {EMPTY: ONE}
                for u in parts:
                    nxt: dict = {}
                    for x, c in prod.items():
                        _accumulate(nxt, phi_shuffle_words(law, x, u), c)
                    prod = nxt
                c = prod.get(w)
                if not c:
                    continue
                image = NCPoly.constant(ONE)
                for u in parts:
                    image = conc_mul(image, NCPoly._wrap(dict(pi1_word(law, u))))
                _accumulate(first, image.raw_items(), c * Scalar(Fraction(1, factorial(k))))
    second: dict = {}
    for k in range(1, len(w) + 1):
        for parts in splittings(w, k):
            prod = NCPoly.constant(ONE)
            for u in parts:
                prod = phi_shuffle(law, prod, NCPoly._wrap(dict(pi1_check_word(law, u))))
            _accumulate(second, prod.raw_items(), Scalar(Fraction(1, factorial(k))))
    return NCPoly._wrap(first), NCPoly._wrap(second)


def hausdorff(law: PhiLaw, weight_bound: int, t: ScalarLike | None = None) -> TensorPoly:
    """``Haus_Y = Σ w ⊗ π1(w)`` (``t`` omitted) or ``σ_Y(t) = exp(t Haus_Y)``.

    The exponential is taken in the double algebra with ⧢φ on the left leg
    and concatenation on the right; both legs are truncated at ``weight_bound``.
    """
    law.require("associative", "commutative", "dualizable", "moderate", op="hausdorff")
    if not law.is_weight_graded:
        raise ValueError("hausdorff needs a weight-graded law")
    if weight_bound < 0:
        raise ValueError("weight_bound must be >= 0")
    alphabet = law.alphabet
    acc: dict = {}
    for w in alphabet.words_up_to(weight_bound, include_empty=False):
        for v, c in pi1_word(law, w).items():
            acc[(w, v)] = c
    haus = TensorPoly._wrap(acc, 2)
    if t is None:
        return haus
    return double_exp(law, haus.scale(as_scalar(t)), weight_bound)


def double_product(law: PhiLaw, A: TensorPoly, B: TensorPoly, bound: int) -> TensorPoly:
    """Product in the double algebra (⧢φ on the left leg, concatenation on the right)."""
    return A.product(B, legs=[lambda u, v: phi_shuffle_words(law, u, v), None],
                     bound=bound, alphabet=law.alphabet)


def double_exp(law: PhiLaw, H: TensorPoly, bound: int) -> TensorPoly:
    """``exp(H)`` in the double algebra; ``H`` must have no ``1⊗1`` term."""
    if H.coeff(EMPTY, EMPTY):
        raise ValueError("exp requires a tensor without constant term")
    result = TensorPoly.unit(2)
    power = TensorPoly.unit(2)
    n = 0
    while True:
        n += 1
        power = double_product(law, power, H, bound)
        if not power:
            return result
        result = result + power.scale(Scalar(Fraction(1, factorial(n))))
