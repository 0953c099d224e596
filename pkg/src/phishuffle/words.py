"""Weighted alphabets, words, Lyndon words and their factorizations.

A word is a tuple of positive letter indices: ``(2, 1)`` is ``y2.y1`` and
``()`` is the empty word.  Letter weights and the letter order live on an
:class:`Alphabet`; by default ``y_k`` has weight ``k`` and the order is
``y1 > y2 > y3 > ...`` (a smaller index is a *greater* letter).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[int, ...]
EMPTY: Word = ()

DEFAULT_ORDER = "default"
REVERSED_ORDER = "reversed"
_ORDERS = (DEFAULT_ORDER, REVERSED_ORDER)

_LETTER_RE = re.compile(r"^y(\d+)$")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Letter:
    """A letter ``y_index`` with its weight."""

    index: int
    weight: int

    def __post_init__(self):
        if self.index < 1:
            raise WordError("letter index must be positive")
        if self.weight < 1:
            raise WordError("letter weight must be >= 1")

    def __str__(self) -> str:
        return f"y{self.index}"


@dataclass(frozen=True)
class Alphabet:
    """A graded, totally ordered alphabet.

    ``weights`` maps letter index to weight.  When it is ``None`` the alphabet
    is the standard graded one, ``y_k`` of weight ``k`` for every ``k >= 1``;
    only the finitely many letters below a requested weight are ever
    materialized.
    """

    weights: tuple[tuple[int, int], ...] | None = None
    order: str = DEFAULT_ORDER
    _wmap: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.order not in _ORDERS:
            raise WordError(f"unknown letter order {self.order!r}")
        if self.weights is not None:
            wmap = dict(self.weights)
            if not wmap:
                raise WordError("empty alphabet")
            for k, w in wmap.items():
                Letter(k, w)
            object.__setattr__(self, "weights", tuple(sorted(wmap.items())))
            object.__setattr__(self, "_wmap", wmap)

    @classmethod
    def standard(cls, size: int | None = None, order: str = DEFAULT_ORDER) -> "Alphabet":
        """``{y1, ..., y_size}`` with ``weight(y_k) = k`` (unbounded if ``size`` is None)."""
        if size is None:
            return cls(None, order)
        if size < 1:
            raise WordError("empty alphabet")
        return cls(tuple((k, k) for k in range(1, size + 1)), order)

    @classmethod
    def from_letters(cls, letters: Iterable[int | Letter | tuple[int, int]],
                     order: str = DEFAULT_ORDER) -> "Alphabet":
        items = []
        for x in letters:
            if isinstance(x, Letter):
                items.append((x.index, x.weight))
            elif isinstance(x, tuple):
                items.append((int(x[0]), int(x[1])))
            else:
                items.append((int(x), int(x)))
        if not items:
            raise WordError("empty alphabet")
        return cls(tuple(items), order)

    @property
    def is_finite(self) -> bool:
        return self.weights is not None

    def with_order(self, order: str) -> "Alphabet":
        return Alphabet(self.weights, order)

    def __contains__(self, k: int) -> bool:
        if self._wmap is None:
            return isinstance(k, int) and k >= 1
        return k in self._wmap

    def letter_weight(self, k: int) -> int:
        if self._wmap is None:
            if k < 1:
                raise WordError(f"letter y{k} not in alphabet")
            return k
        try:
            return self._wmap[k]
        except KeyError:
            raise WordError(f"letter y{k} not in alphabet") from None

    def weight(self, w: Word) -> int:
        if self._wmap is None:
            return sum(w)
        m = self._wmap
        return sum(m[k] for k in w)

    def letters(self, max_weight: int | None = None) -> list[int]:
        """Letter indices of weight <= ``max_weight``, sorted by index."""
        if self._wmap is None:
            if max_weight is None:
                raise WordError("the standard alphabet is unbounded; give max_weight")
            return list(range(1, max_weight + 1))
        return [k for k, w in self.weights if max_weight is None or w <= max_weight]

    def letter_key(self, k: int) -> int:
        """Sort key realizing the letter order (ascending key = ascending letter)."""
        return -k if self.order == DEFAULT_ORDER else k

    def word_key(self, w: Word) -> tuple:
        """Lexicographic key: a proper prefix sorts before its extensions."""
        if self.order == DEFAULT_ORDER:
            return tuple(-k for k in w)
        return tuple(w)

    def words_of_weight(self, n: int) -> list[Word]:
        return list(_words_of_weight(self, n))

    def words_up_to(self, n: int, include_empty: bool = True) -> list[Word]:
        out = [EMPTY] if include_empty else []
        for m in range(1, n + 1):
            out.extend(_words_of_weight(self, m))
        return out

    def words_of_length(self, n: int, letters: Sequence[int] | None = None) -> list[Word]:
        letters = self.letters() if letters is None else letters
        out: list[Word] = [EMPTY]
        for _ in range(n):
            out = [w + (k,) for w in out for k in letters]
        return out


STANDARD = Alphabet()


@lru_cache(maxsize=None)
def _words_of_weight(alphabet: Alphabet, n: int) -> tuple:
    if n < 0:
        return ()
    if n == 0:
        return (EMPTY,)
    out = []
    for k in alphabet.letters(n):
        wk = alphabet.letter_weight(k)
        for tail in _words_of_weight(alphabet, n - wk):
            out.append((k,) + tail)
    return tuple(sorted(out, key=lambda w: (len(w), alphabet.word_key(w))))


# -- Lyndon words ----------------------------------------------------------------

def is_lyndon(w: Word, alphabet: Alphabet = STANDARD) -> bool:
    """True iff ``w`` is nonempty and strictly smaller than each proper right factor."""
    if not w:
        return False
    key = alphabet.word_key(w)
    return all(key < key[i:] for i in range(1, len(key)))


def lyndon_up_to(alphabet: Alphabet, weight_bound: int, order: str | None = None) -> list[Word]:
    """All Lyndon words of weight <= ``weight_bound``, in ascending lexicographic order."""
    if order is not None:
        alphabet = alphabet.with_order(order)
    if weight_bound < 1:
        raise WordError("weight_bound must be >= 1")
    return list(_lyndon_up_to(alphabet, weight_bound))


@lru_cache(maxsize=None)
def _lyndon_up_to(alphabet: Alphabet, weight_bound: int) -> tuple:
    found = []
    for n in range(1, weight_bound + 1):
        for w in _words_of_weight(alphabet, n):
            if _is_lyndon_fast(alphabet.word_key(w)):
                found.append(w)
    return tuple(sorted(found, key=alphabet.word_key))


def _is_lyndon_fast(key: tuple) -> bool:
    # Duval scan: key is Lyndon iff the scan ends with one period covering it.
    n = len(key)
    i, j = 0, 1
    while j < n:
        if key[i] == key[j]:
            i += 1
        elif key[i] < key[j]:
            i = 0
        else:
            return False
        j += 1
    return i == 0


def standard_factorization(l: Word, alphabet: Alphabet = STANDARD) -> tuple[Word, Word]:
    """Split a Lyndon word ``l = s.r`` with ``r`` its longest proper Lyndon suffix."""
    if len(l) < 2 or not is_lyndon(l, alphabet):
        raise WordError(f"no standard factorization for {format_word(l)}")
    for i in range(1, len(l)):
        if is_lyndon(l[i:], alphabet):
            return l[:i], l[i:]
    raise AssertionError("unreachable: a letter suffix is always Lyndon")


def cfl_factorization(w: Word, alphabet: Alphabet = STANDARD) -> list[tuple[Word, int]]:
    """Chen-Fox-Lyndon factorization ``w = l1^i1 ... lk^ik`` with ``l1 > ... > lk``.

    Computed with Duval's algorithm on the order keys; equal consecutive
    factors are grouped into powers.
    """
    key = alphabet.word_key(w)
    n = len(key)
    factors: list[Word] = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and key[k] <= key[j]:
            k = i if key[k] < key[j] else k + 1
            j += 1
        while i <= k:
            factors.append(tuple(w[i:i + j - k]))
            i += j - k
    grouped: list[tuple[Word, int]] = []
    for f in factors:
        if grouped and grouped[-1][0] == f:
            grouped[-1] = (f, grouped[-1][1] + 1)
        else:
            grouped.append((f, 1))
    return grouped


# -- text form --------------------------------------------------------------------

def format_word(w: Word) -> str:
    """``(2, 1)`` -> ``'y2.y1'``; the empty word is ``'1'``."""
    if not w:
        return "1"
    return ".".join(f"y{k}" for k in w)


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word`."""
    text = text.strip()
    if text == "1":
        return EMPTY
    out = []
    for part in text.split("."):
        m = _LETTER_RE.match(part.strip())
        if not m or int(m.group(1)) < 1:
            raise WordError(f"malformed word {text!r}")
        out.append(int(m.group(1)))
    return tuple(out)


def parse_alphabet(text: str, order: str = DEFAULT_ORDER) -> Alphabet:
    """Parse ``'y1,y2'`` (or ``'y1:1,y2:3'`` for explicit weights)."""
    letters = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, wt = part.partition(":")
        (k,) = parse_word(name)
        letters.append((k, int(wt) if wt else k))
    if not letters:
        raise WordError("empty alphabet")
    return Alphabet.from_letters(letters, order)


def splittings(w: Word, parts: int) -> Iterator[tuple[Word, ...]]:
    """All ways to write ``w = u1 ... u_parts`` with every ``u_i`` nonempty."""
    n = len(w)
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts > n:
        return
    if parts == 1:
        yield (w,)
        return
    for i in range(1, n - parts + 2):
        head = w[:i]
        for rest in splittings(w[i:], parts - 1):
            yield (head,) + rest


def all_splittings(w: Word, parts: int) -> Iterator[tuple[Word, ...]]:
    """All ways to write ``w = u1 ... u_parts`` allowing empty factors."""
    if parts == 1:
        yield (w,)
        return
    for i in range(len(w) + 1):
        for rest in all_splittings(w[i:], parts - 1):
            yield (w[:i],) + rest

