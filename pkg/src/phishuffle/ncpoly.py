"""Sparse noncommutative polynomials, truncated series and tensors over Q(q).

:class:`NCPoly` is a finite map ``Word -> Scalar`` with no zero values
stored.  ``*`` between two polynomials is concatenation; ``*`` with a number
or :class:`~phishuffle.scalars.Scalar` scales.  :class:`TruncSeries` adds a
weight bound and truncates every result to it.  :class:`TensorPoly` holds
finite maps ``(Word, ..., Word) -> Scalar``.

Iteration order is canonical everywhere: weight, then length, then the
lexicographic order of the letters (``y1 > y2 > ...``).
"""

from __future__ import annotations

from math import factorial
from typing import Callable, Iterable, Iterator, Mapping

from .scalars import ONE, ZERO, Scalar, ScalarLike, as_scalar
from .words import EMPTY, STANDARD, Alphabet, Word, all_splittings


def word_sort_key(w: Word) -> tuple:
    """Canonical term order: standard weight, then length, then lex (``y1 > y2``)."""
    return (sum(w), len(w), tuple(-k for k in w))


def _clean(terms: Mapping[Word, ScalarLike]) -> dict:
    out = {}
    for w, c in terms.items():
        c = as_scalar(c)
        if c:
            out[tuple(w)] = c
    return out


class NCPoly:
    """Element of K<Y>: a finite linear combination of words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, ScalarLike] | None = None):
        self._terms = _clean(terms) if terms else {}

    @classmethod
    def _wrap(cls, terms: dict) -> "NCPoly":
        p = object.__new__(NCPoly)
        p._terms = terms
        return p

    @classmethod
    def monomial(cls, w: Word, coeff: ScalarLike = 1) -> "NCPoly":
        return cls({tuple(w): coeff})

    @classmethod
    def constant(cls, c: ScalarLike) -> "NCPoly":
        return cls({EMPTY: c})

    @classmethod
    def letter(cls, k: int) -> "NCPoly":
        return cls({(k,): ONE})

    @classmethod
    def parse(cls, text: str) -> "NCPoly":
        from .textio import parse_poly

        return parse_poly(text)

    # -- access -------------------------------------------------------------

    def coeff(self, w: Word) -> Scalar:
        return self._terms.get(tuple(w), ZERO)

    def __getitem__(self, w: Word) -> Scalar:
        return self.coeff(w)

    def items(self) -> list[tuple[Word, Scalar]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda t: word_sort_key(t[0]))

    def raw_items(self):
        """Terms in storage order (cheaper; use when order is irrelevant)."""
        return self._terms.items()

    def support(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def __iter__(self) -> Iterator[Word]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def constant_term(self) -> Scalar:
        return self._terms.get(EMPTY, ZERO)

    def weights(self, alphabet: Alphabet = STANDARD) -> set[int]:
        return {alphabet.weight(w) for w in self._terms}

    def is_homogeneous(self, alphabet: Alphabet = STANDARD) -> bool:
        return len(self.weights(alphabet)) <= 1

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def min_length(self) -> int:
        return min((len(w) for w in self._terms), default=-1)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other) -> "NCPoly":
        o = _as_poly(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(o, TruncSeries) and not isinstance(self, TruncSeries):
            return o + self
        out = dict(self._terms)
        for w, c in o._terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return self._rewrap(out, o)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return self._rewrap({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NCPoly":
        o = _as_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "NCPoly":
        o = _as_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def scale(self, c: ScalarLike) -> "NCPoly":
        c = as_scalar(c)
        if not c:
            return self._rewrap({})
        if c == ONE:
            return self
        return self._rewrap({w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return conc_mul(self, other)
        if isinstance(other, (Scalar, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, NCPoly):
            return conc_mul(other, self)
        if isinstance(other, (Scalar, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "NCPoly":
        return self.scale(ONE / as_scalar(other))

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("negative concatenation power")
        out = self._rewrap({EMPTY: ONE})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = _as_poly(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _rewrap(self, terms: dict, other: "NCPoly | None" = None) -> "NCPoly":
        return NCPoly._wrap(terms)

    # -- transformations ------------------------------------------------------

    def map_coeffs(self, f: Callable[[Scalar], ScalarLike]) -> "NCPoly":
        return self._rewrap(_clean({w: f(c) for w, c in self._terms.items()}))

    def specialize(self, q0) -> "NCPoly":
        """Evaluate every coefficient at ``q = q0``."""
        return self.map_coeffs(lambda c: c.specialize(q0))

    def truncate(self, bound: int, alphabet: Alphabet = STANDARD) -> "NCPoly":
        return NCPoly._wrap({w: c for w, c in self._terms.items() if alphabet.weight(w) <= bound})

    def homogeneous_part(self, n: int, alphabet: Alphabet = STANDARD) -> "NCPoly":
        return NCPoly._wrap({w: c for w, c in self._terms.items() if alphabet.weight(w) == n})

    def linear_map(self, f: Callable[[Word], "NCPoly"]) -> "NCPoly":
        """Extend a word map ``f`` linearly to this polynomial."""
        acc: dict = {}
        for w, c in self._terms.items():
            _accumulate(acc, f(w)._terms, c)
        return NCPoly._wrap(acc)

    def __str__(self) -> str:
        from .textio import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


class TruncSeries(NCPoly):
    """Series in K<<Y>> known exactly up to ``bound`` (weights measured in ``alphabet``)."""

    __slots__ = ("bound", "alphabet")

    def __init__(self, terms: Mapping[Word, ScalarLike] | NCPoly | None = None,
                 bound: int = 0, alphabet: Alphabet = STANDARD):
        if isinstance(terms, NCPoly):
            terms = terms._terms
        super().__init__(terms)
        self.bound = bound
        self.alphabet = alphabet
        self._terms = {w: c for w, c in self._terms.items() if alphabet.weight(w) <= bound}

    @classmethod
    def _make(cls, terms: dict, bound: int, alphabet: Alphabet) -> "TruncSeries":
        s = object.__new__(cls)
        s._terms = {w: c for w, c in terms.items() if alphabet.weight(w) <= bound}
        s.bound = bound
        s.alphabet = alphabet
        return s

    def _rewrap(self, terms: dict, other: NCPoly | None = None) -> "TruncSeries":
        bound = self.bound
        if isinstance(other, TruncSeries):
            bound = min(bound, other.bound)
        return TruncSeries._make(terms, bound, self.alphabet)

    def __eq__(self, other) -> bool:
        o = _as_poly(other)
        if o is NotImplemented:
            return NotImplemented
        bound = self.bound
        if isinstance(o, TruncSeries):
            bound = min(bound, o.bound)
        a = self.truncate(bound, self.alphabet)
        b = o.truncate(bound, self.alphabet)
        return a._terms == b._terms

    __hash__ = NCPoly.__hash__

    def as_poly(self) -> NCPoly:
        return NCPoly._wrap(dict(self._terms))

    def __repr__(self) -> str:
        return f"TruncSeries({str(self)!r}, bound={self.bound})"


def _as_poly(x):
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (Scalar, int)) or hasattr(x, "denominator"):
        c = as_scalar(x)
        return NCPoly._wrap({EMPTY: c} if c else {})
    return NotImplemented


def _accumulate(acc: dict, terms, c: Scalar = ONE) -> None:
    one = c == ONE
    for w, v in (terms.items() if isinstance(terms, dict) else terms):
        v = v if one else v * c
        s = acc.get(w)
        if s is None:
            acc[w] = v
        else:
            s = s + v
            if s:
                acc[w] = s
            else:
                del acc[w]


def conc_mul(P: NCPoly, Q: NCPoly) -> NCPoly:
    """Concatenation product, extended bilinearly; truncated if either side is a series."""
    bound = None
    alphabet = STANDARD
    for X in (P, Q):
        if isinstance(X, TruncSeries):
            bound = X.bound if bound is None else min(bound, X.bound)
            alphabet = X.alphabet
    acc: dict = {}
    for u, a in P._terms.items():
        if bound is not None:
            wu = alphabet.weight(u)
            if wu > bound:
                continue
        for v, b in Q._terms.items():
            if bound is not None and wu + alphabet.weight(v) > bound:
                continue
            w = u + v
            c = a * b
            s = acc.get(w)
            if s is None:
                acc[w] = c
            else:
                s = s + c
                if s:
                    acc[w] = s
                else:
                    del acc[w]
    if bound is None:
        return NCPoly._wrap(acc)
    return TruncSeries._make(acc, bound, alphabet)


def bracket(P: NCPoly, Q: NCPoly) -> NCPoly:
    """Lie bracket ``PQ - QP`` for concatenation."""
    return conc_mul(P, Q) - conc_mul(Q, P)


def pairing(P: NCPoly, Q: NCPoly) -> Scalar:
    """The duality pairing ``<P, Q> = sum_w P[w] Q[w]``."""
    if len(Q._terms) < len(P._terms):
        P, Q = Q, P
    acc = ZERO
    qt = Q._terms
    for w, c in P._terms.items():
        d = qt.get(w)
        if d is not None:
            acc = acc + c * d
    return acc


def series_exp(h: TruncSeries) -> TruncSeries:
    """Concatenation exponential of a series with zero constant term."""
    if h.constant_term:
        raise ValueError("exp requires a series with constant term 0")
    result = TruncSeries._make({EMPTY: ONE}, h.bound, h.alphabet)
    power = result
    n = 0
    while True:
        n += 1
        power = conc_mul(power, h)
        if not power:
            break
        result = result + power.scale(Scalar(1) / factorial(n))
    return result


def series_log(S: TruncSeries) -> TruncSeries:
    """Concatenation logarithm of a series with constant term 1."""
    if S.constant_term != ONE:
        raise ValueError("log requires a series with constant term 1")
    h = S - TruncSeries._make({EMPTY: ONE}, S.bound, S.alphabet)
    result = TruncSeries._make({}, S.bound, S.alphabet)
    power = TruncSeries._make({EMPTY: ONE}, S.bound, S.alphabet)
    n = 0
    while True:
        n += 1
        power = conc_mul(power, h)
        if not power:
            break
        sign = 1 if n % 2 else -1
        result = result + power.scale(Scalar(sign) / n)
    return result


def series_log_exp(S: TruncSeries, direction: str) -> TruncSeries:
    """``direction`` is ``'log'`` or ``'exp'``."""
    if direction == "log":
        return series_log(S)
    if direction == "exp":
        return series_exp(S)
    raise ValueError(f"unknown direction {direction!r}")


# -- tensors ------------------------------------------------------------------------

class TensorPoly:
    """Finite map ``(Word, ..., Word) -> Scalar`` of a fixed order (number of legs)."""

    __slots__ = ("_terms", "order")

    def __init__(self, terms: Mapping[tuple, ScalarLike] | None = None, order: int = 2):
        self.order = order
        self._terms = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(w) for w in key)
            if len(key) != order:
                raise ValueError(f"tensor key {key} does not have {order} legs")
            c = as_scalar(c)
            if c:
                self._terms[key] = c

    @classmethod
    def _wrap(cls, terms: dict, order: int) -> "TensorPoly":
        t = object.__new__(cls)
        t._terms = terms
        t.order = order
        return t

    @classmethod
    def unit(cls, order: int = 2) -> "TensorPoly":
        return cls._wrap({(EMPTY,) * order: ONE}, order)

    @classmethod
    def pure(cls, *legs: NCPoly) -> "TensorPoly":
        """``legs[0] (x) legs[1] (x) ...``."""
        acc = {(): ONE}
        for P in legs:
            nxt = {}
            for key, c in acc.items():
                for w, d in P.raw_items():
                    nxt[key + (w,)] = c * d
            acc = nxt
        return cls._wrap({k: v for k, v in acc.items() if v}, len(legs))

    def coeff(self, *key: Word) -> Scalar:
        return self._terms.get(tuple(tuple(w) for w in key), ZERO)

    def items(self) -> list:
        return sorted(self._terms.items(),
                      key=lambda t: tuple(word_sort_key(w) for w in t[0]))

    def raw_items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        if not isinstance(other, TensorPoly):
            return NotImplemented
        if other.order != self.order:
            raise ValueError("tensor order mismatch")
        acc = dict(self._terms)
        _accumulate(acc, other._terms)
        return TensorPoly._wrap(acc, self.order)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly._wrap({k: -c for k, c in self._terms.items()}, self.order)

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "TensorPoly":
        c = as_scalar(c)
        if not c:
            return TensorPoly._wrap({}, self.order)
        return TensorPoly._wrap({k: v * c for k, v in self._terms.items()}, self.order)

    def __mul__(self, c):
        if isinstance(c, TensorPoly):
            return self.product(c)
        return self.scale(c)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    __hash__ = None

    def product(self, other: "TensorPoly",
                legs: Iterable[Callable[[Word, Word], Mapping[Word, Scalar]]] | None = None,
                bound: int | None = None, alphabet: Alphabet = STANDARD) -> "TensorPoly":
        """Leg-wise product; ``legs[i](u, v)`` multiplies words on leg ``i`` (default: concatenation).

        With ``bound``, every leg is truncated at that weight.
        """
        if other.order != self.order:
            raise ValueError("tensor order mismatch")
        legs = list(legs) if legs is not None else [None] * self.order
        acc: dict = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                partial = {(): ca * cb}
                ok = True
                for i in range(self.order):
                    u, v = ka[i], kb[i]
                    if bound is not None and alphabet.weight(u) + alphabet.weight(v) > bound:
                        ok = False
                        break
                    mul = legs[i]
                    leg_terms = {u + v: ONE} if mul is None else mul(u, v)
                    nxt = {}
                    for key, c in partial.items():
                        for w, d in leg_terms.items():
                            nxt[key + (w,)] = c * d
                    partial = nxt
                if ok:
                    _accumulate(acc, partial)
        return TensorPoly._wrap(acc, self.order)

    def truncate(self, bound: int, alphabet: Alphabet = STANDARD) -> "TensorPoly":
        return TensorPoly._wrap(
            {k: c for k, c in self._terms.items() if all(alphabet.weight(w) <= bound for w in k)},
            self.order)

    def map_leg(self, i: int, f: Callable[[Word], NCPoly]) -> "TensorPoly":
        """Apply a linear word map to leg ``i``."""
        acc: dict = {}
        for key, c in self._terms.items():
            img = f(key[i])
            for w, d in img.raw_items():
                nk = key[:i] + (w,) + key[i + 1:]
                _accumulate(acc, {nk: c * d})
        return TensorPoly._wrap(acc, self.order)

    def contract(self, combine: Callable[[tuple], NCPoly]) -> NCPoly:
        """Sum ``c * combine(key)`` over the terms (e.g. multiply the legs together)."""
        acc: dict = {}
        for key, c in self._terms.items():
            _accumulate(acc, combine(key)._terms, c)
        return NCPoly._wrap(acc)

    def pair(self, *legs: NCPoly) -> Scalar:
        """``<self, legs[0] (x) legs[1] (x) ...>``."""
        acc = ZERO
        for key, c in self._terms.items():
            term = c
            for w, P in zip(key, legs):
                term = term * P.coeff(w)
                if not term:
                    break
            acc = acc + term
        return acc

    def specialize(self, q0) -> "TensorPoly":
        return TensorPoly({k: c.specialize(q0) for k, c in self._terms.items()}, self.order)

    def __str__(self) -> str:
        from .textio import format_tensor

        return format_tensor(self)

    def __repr__(self) -> str:
        return f"TensorPoly({str(self)!r})"


def delta_conc(P: NCPoly, n: int = 2) -> TensorPoly:
    """Deconcatenation coproduct (``n``-fold): sum over ordered splittings into ``n`` parts."""
    if n < 2:
        raise ValueError("coproduct order must be >= 2")
    acc: dict = {}
    for w, c in P.raw_items():
        for parts in all_splittings(w, n):
            _accumulate(acc, {parts: c})
    return TensorPoly._wrap(acc, n)
