"""Deformation laws ``phi: Y x Y -> KY`` and their analysis.

A law is given by structure constants ``gamma[x, y]^z``, the coefficient of
the letter ``z`` in ``phi(x, y)``.  Two kinds are supported:

* :class:`WeightAdditiveLaw` -- a rule on letter indices whose output
  letters always have weight ``weight(x) + weight(y)`` (shuffle, stuffle,
  q-stuffle, ...).  These are dualizable and moderate by grading.
* :class:`FiniteTableLaw` -- an explicit table on a finite alphabet
  (q-infiltration, semigroup shuffles, ...).

:func:`analyze_law` checks associativity and commutativity exhaustively on a
finite range and decides dualizability and moderation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping

from .linalg import echelon
from .ncpoly import NCPoly
from .scalars import ONE, Q, ZERO, Scalar, ScalarLike, as_scalar
from .words import STANDARD, Alphabet, Word, WordError

DEFAULT_CHECK_WEIGHT = 6


class LawError(ValueError):
    pass


class LawPropertyError(LawError):
    """An operation was called with a law lacking a property it needs."""


class PhiLaw:
    """Base class: a bilinear map on letters with cached derived data."""

    name: str
    alphabet: Alphabet

    def __init__(self, name: str, alphabet: Alphabet):
        self.name = name
        self.alphabet = alphabet
        self._phi_cache: dict = {}
        self.cache: dict = {}  # memo tables for products/projectors; semantically invisible

    # subclasses fill this in
    def _compute(self, a: int, b: int) -> dict[int, Scalar]:
        raise NotImplementedError

    @property
    def is_weight_graded(self) -> bool:
        raise NotImplementedError

    def apply(self, a: int, b: int) -> dict[int, Scalar]:
        """``phi(y_a, y_b)`` as ``{letter: coefficient}``."""
        key = (a, b)
        out = self._phi_cache.get(key)
        if out is None:
            for k in (a, b):
                if k not in self.alphabet:
                    raise LawError(f"letter y{k} outside the alphabet of law {self.name}")
            out = {k: c for k, c in self._compute(a, b).items() if c}
            self._phi_cache[key] = out
        return out

    def letters(self, max_weight: int | None = None) -> list[int]:
        return self.alphabet.letters(max_weight)

    def preimage_pairs(self, z: int) -> list[tuple[int, int, Scalar]]:
        """All ``(x, y, gamma[x, y]^z)`` with a nonzero constant."""
        key = ("pairs", z)
        if key not in self.cache:
            if self.is_weight_graded:
                wz = self.alphabet.letter_weight(z)
                cands = self.letters(wz - 1) if wz > 1 else []
                pairs = [(x, y) for x in cands for y in cands
                         if self.alphabet.letter_weight(x) + self.alphabet.letter_weight(y) == wz]
            else:
                ls = self.letters()
                pairs = [(x, y) for x in ls for y in ls]
            out = []
            for x, y in pairs:
                c = self.apply(x, y).get(z)
                if c:
                    out.append((x, y, c))
            self.cache[key] = out
        return self.cache[key]

    def report(self) -> "LawReport":
        key = ("report",)
        if key not in self.cache:
            self.cache[key] = analyze_law(self, DEFAULT_CHECK_WEIGHT)
        return self.cache[key]

    def require(self, *props: str, op: str = "operation") -> None:
        """Raise :class:`LawPropertyError` unless every property in ``props`` is verified."""
        rep = self.report()
        for p in props:
            if getattr(rep, p) is not True:
                raise LawPropertyError(f"{op} requires {p} law (law {self.name!r})")

    def moderation_index(self) -> int | None:
        """Longest word length with a nonzero extended structure constant (tables only)."""
        return self.report().moderation_index

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class WeightAdditiveLaw(PhiLaw):
    """Law defined by ``rule(i, j) -> [(k, coeff), ...]`` on letter indices."""

    def __init__(self, name: str, rule: Callable[[int, int], Iterable[tuple[int, ScalarLike]]],
                 alphabet: Alphabet = STANDARD, params: Mapping | None = None):
        super().__init__(name, alphabet)
        self.rule = rule
        self.params = dict(params or {})

    @property
    def is_weight_graded(self) -> bool:
        return True

    def _compute(self, a: int, b: int) -> dict[int, Scalar]:
        target = self.alphabet.letter_weight(a) + self.alphabet.letter_weight(b)
        out: dict[int, Scalar] = {}
        for k, c in self.rule(a, b):
            c = as_scalar(c)
            if not c:
                continue
            try:
                wk = self.alphabet.letter_weight(k)
            except WordError:
                raise LawError(f"phi(y{a}, y{b}) leaves the alphabet (letter y{k})") from None
            if wk != target:
                raise LawError(f"phi(y{a}, y{b}) produced y{k} of weight {wk}, expected {target}")
            out[k] = out.get(k, ZERO) + c
        return out


class FiniteTableLaw(PhiLaw):
    """Law given by an explicit table on a finite alphabet; missing pairs map to 0."""

    def __init__(self, name: str, alphabet: Alphabet,
                 entries: Mapping[tuple[int, int], NCPoly | Mapping[int, ScalarLike]],
                 infinite_parent: str | None = None):
        if not alphabet.is_finite:
            raise LawError("a finite-table law needs a finite alphabet")
        super().__init__(name, alphabet)
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (a, b), val in entries.items():
            if a not in alphabet or b not in alphabet:
                raise LawError(f"table entry ({a}, {b}) outside the alphabet")
            if isinstance(val, NCPoly):
                terms = {}
                for w, c in val.raw_items():
                    if len(w) != 1:
                        raise LawError(f"phi(y{a}, y{b}) must be supported on letters")
                    terms[w[0]] = c
            else:
                terms = {int(k): as_scalar(c) for k, c in val.items()}
            for k in terms:
                if k not in alphabet:
                    raise LawError(f"phi(y{a}, y{b}) uses letter y{k} outside the alphabet")
            table[(a, b)] = {k: c for k, c in terms.items() if c}
        self.table = table
        self.infinite_parent = infinite_parent

    def _compute(self, a: int, b: int) -> dict[int, Scalar]:
        return dict(self.table.get((a, b), {}))

    @property
    def is_weight_graded(self) -> bool:
        wt = self.alphabet.letter_weight
        return all(wt(k) == wt(a) + wt(b) for (a, b), terms in self.table.items() for k in terms)


# -- bilinear extension and words ----------------------------------------------------

def phi_apply(law: PhiLaw, a: int, b: int) -> NCPoly:
    """``phi(y_a, y_b)`` as a polynomial supported on letters."""
    return NCPoly({(k,): c for k, c in law.apply(a, b).items()})


def phi_bilinear(law: PhiLaw, P: Mapping[int, Scalar], R: Mapping[int, Scalar]) -> dict[int, Scalar]:
    """Bilinear extension of ``phi`` to letter combinations ``{letter: coeff}``."""
    out: dict[int, Scalar] = {}
    for a, ca in P.items():
        for b, cb in R.items():
            for k, c in law.apply(a, b).items():
                s = out.get(k, ZERO) + ca * cb * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def gamma_word(law: PhiLaw, w: Word) -> NCPoly:
    """``phi(x1 ... xl)`` by ``phi(x) = x`` and ``phi(x w) = phi(x, phi(w))``."""
    if not w:
        raise LawError("gamma_word needs a nonempty word")
    key = ("gamma", tuple(w))
    if key not in law.cache:
        if len(w) == 1:
            val = {w[0]: ONE}
        else:
            inner = gamma_word(law, w[1:])
            val = phi_bilinear(law, {w[0]: ONE}, {k[0]: c for k, c in inner.raw_items()})
        law.cache[key] = NCPoly({(k,): c for k, c in val.items()})
    return law.cache[key]


# -- analysis ------------------------------------------------------------------------------

@dataclass
class LawReport:
    associative: bool
    commutative: bool
    dualizable: bool | str
    moderate: bool | str
    verified_up_to_weight: int | None
    moderation_index: int | None = None
    notes: list[str] = field(default_factory=list)

    def flags(self) -> tuple:
        return (self.associative, self.commutative, self.dualizable, self.moderate)


def _check_associative(law: PhiLaw, letters: list[int], max_weight: int | None) -> tuple | None:
    wt = law.alphabet.letter_weight
    for a, b, c in product(letters, repeat=3):
        if max_weight is not None and wt(a) + wt(b) + wt(c) > max_weight:
            continue
        left = phi_bilinear(law, law.apply(a, b), {c: ONE})
        right = phi_bilinear(law, {a: ONE}, law.apply(b, c))
        if left != right:
            return (a, b, c)
    return None


def _check_commutative(law: PhiLaw, letters: list[int], max_weight: int | None) -> tuple | None:
    wt = law.alphabet.letter_weight
    for a, b in product(letters, repeat=2):
        if max_weight is not None and wt(a) + wt(b) > max_weight:
            continue
        if law.apply(a, b) != law.apply(b, a):
            return (a, b)
    return None


def _support_nilpotency(law: FiniteTableLaw) -> int | None:
    """Smallest ``k`` with ``A^k = 0`` for the boolean support matrix, or None."""
    letters = law.letters()
    idx = {k: i for i, k in enumerate(letters)}
    n = len(letters)
    A = [[False] * n for _ in range(n)]
    for (x, t), terms in law.table.items():
        for y in terms:
            A[idx[y]][idx[t]] = True
    P = [row[:] for row in A]
    for k in range(1, n + 1):
        if not any(any(r) for r in P):
            return k
        P = [[any(P[i][m] and A[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
    return None if any(any(r) for r in P) else n + 1


def _exact_moderation(law: FiniteTableLaw) -> tuple[bool, int, int]:
    """Decide moderation exactly.

    Row space ``V_k`` spanned by ``t -> gamma[x1 ... xk t]^y`` shrinks as
    ``k`` grows; it either reaches 0 (moderate, longest nonzero word length
    ``k``) or stabilizes at a nonzero space (infinitely many nonzero words).
    Returns ``(moderate, index, stable_dim)``.
    """
    letters = law.letters()
    rows = []
    for y in letters:
        for x in letters:
            rows.append({t: law.apply(x, t).get(y, ZERO) for t in letters})
    basis = echelon(rows)
    k = 1
    while basis:
        nxt = []
        for _, v in basis:
            for x in letters:
                # (v M_x)_t = sum_y v_y gamma[x, t]^y
                nxt.append({t: sum((c * law.apply(x, t).get(y, ZERO) for y, c in v.items()), ZERO)
                            for t in letters})
        new_basis = echelon(nxt)
        if len(new_basis) == len(basis):
            return False, k, len(basis)
        basis = new_basis
        k += 1
    return True, k, 0


def analyze_law(law: PhiLaw, weight_bound: int) -> LawReport:
    """Check associativity, commutativity, dualizability and moderation of ``law``.

    Weight-additive laws are checked on letter triples (pairs) of total weight
    <= ``weight_bound``; finite tables are checked on every triple.
    """
    if weight_bound < 2:
        raise LawError("weight_bound must be >= 2")
    notes: list[str] = []
    if isinstance(law, WeightAdditiveLaw):
        letters = law.letters(weight_bound)
        bad_a = _check_associative(law, letters, weight_bound)
        bad_c = _check_commutative(law, letters, weight_bound)
        verified = weight_bound
        dualizable: bool | str = True
        moderate: bool | str = True
        index = None
        notes.append("graded law: gamma_w^y = 0 whenever |w| > weight(y)")
    else:
        letters = law.letters()
        bad_a = _check_associative(law, letters, None)
        bad_c = _check_commutative(law, letters, None)
        verified = None
        dualizable = True
        nil = _support_nilpotency(law)
        if nil is not None:
            moderate, index = True, nil
            notes.append(f"support matrix nilpotent (A^{nil} = 0)")
        else:
            notes.append("support matrix not nilpotent")
            ok, index, dim = _exact_moderation(law)
            moderate = ok
            if ok:
                notes.append(f"cancellations make gamma_w vanish for |w| > {index}")
            else:
                notes.append(f"extended structure constants never vanish: stable span of dim {dim}")
                index = None
        if getattr(law, "infinite_parent", None):
            dualizable = False
            notes.append(_dualizability_note(law))
    if bad_a is not None:
        notes.append("associativity fails at " + ", ".join(f"y{k}" for k in bad_a))
    if bad_c is not None:
        notes.append("commutativity fails at " + ", ".join(f"y{k}" for k in bad_c))
    return LawReport(bad_a is None, bad_c is None, dualizable, moderate, verified, index, notes)


def _dualizability_note(law: FiniteTableLaw) -> str:
    counts: dict[int, int] = {}
    for z in law.letters():
        counts[z] = len(law.preimage_pairs(z))
    worst = max(counts, key=counts.get)
    return (f"finite sample of the {law.infinite_parent}: target y{worst} already has "
            f"{counts[worst]} preimage pairs and the count grows with the sample, "
            "so the full law is not dualizable")


# -- catalog -----------------------------------------------------------------------------

def shuffle(alphabet: Alphabet = STANDARD) -> WeightAdditiveLaw:
    return WeightAdditiveLaw("shuffle", lambda i, j: (), alphabet)


def quasi_shuffle(alphabet: Alphabet = STANDARD) -> WeightAdditiveLaw:
    return WeightAdditiveLaw("quasishuffle", lambda i, j: ((i + j, 1),), alphabet)


def min_shuffle(alphabet: Alphabet = STANDARD) -> WeightAdditiveLaw:
    return WeightAdditiveLaw("minshuffle", lambda i, j: ((i + j, -1),), alphabet)


def q_stuffle(q: ScalarLike = Q, alphabet: Alphabet = STANDARD) -> WeightAdditiveLaw:
    q = as_scalar(q)
    return WeightAdditiveLaw("qstuffle", lambda i, j: ((i + j, q),), alphabet, {"q": q})


def q_shuffle(q: ScalarLike = Q, alphabet: Alphabet = STANDARD) -> WeightAdditiveLaw:
    q = as_scalar(q)
    return WeightAdditiveLaw("qshuffle", lambda i, j: ((i + j, q ** (i * j)),), alphabet, {"q": q})


def q_infiltration(letters: Iterable[int] = (1,), q: ScalarLike = Q) -> FiniteTableLaw:
    """``phi(a, b) = q * delta(a, b) * a`` on a finite alphabet."""
    q = as_scalar(q)
    alphabet = Alphabet.from_letters(list(letters))
    entries = {(a, a): {a: q} for a in alphabet.letters()}
    return FiniteTableLaw("qinfiltration", alphabet, entries)


def semigroup_shuffle(op: Callable[[int, int], int], letters: Iterable[int],
                      name: str = "semigroup") -> FiniteTableLaw:
    """``phi(x_s, x_t) = x_{s op t}`` for a semigroup ``op`` on a finite index set."""
    alphabet = Alphabet.from_letters(list(letters))
    entries = {}
    for s in alphabet.letters():
        for t in alphabet.letters():
            k = op(s, t)
            if k not in alphabet:
                raise LawError(f"index set not closed: {s} op {t} = {k}")
            entries[(s, t)] = {k: ONE}
    return FiniteTableLaw(name, alphabet, entries)


def muffle_sample(labels: Iterable[Fraction | int]) -> FiniteTableLaw:
    """Finite sample of the muffle ``phi(x_i, x_j) = x_{i*j}`` on labels in Q+*.

    Letter ``y_k`` stands for the ``k``-th label; products leaving the sample
    are dropped.  Reported as non-dualizable: the unit label collects one
    pair ``(n, 1/n)`` per ``n`` in the full index set.
    """
    labs = [Fraction(x) for x in labels]
    if any(x <= 0 for x in labs) or len(set(labs)) != len(labs):
        raise LawError("muffle labels must be distinct positive rationals")
    pos = {x: i + 1 for i, x in enumerate(labs)}
    alphabet = Alphabet.from_letters([(i + 1, 1) for i in range(len(labs))])
    entries = {}
    for a, b in product(labs, repeat=2):
        if a * b in pos:
            entries[(pos[a], pos[b])] = {pos[a * b]: ONE}
    law = FiniteTableLaw("muffle-sample", alphabet, entries, infinite_parent="muffle law on Q+*")
    law.labels = labs
    return law


CATALOG: dict[str, Callable[..., PhiLaw]] = {
    "shuffle": shuffle,
    "quasishuffle": quasi_shuffle,
    "stuffle": quasi_shuffle,
    "minshuffle": min_shuffle,
    "minstuffle": min_shuffle,
    "qstuffle": q_stuffle,
    "qshuffle": q_shuffle,
    "qinfiltration": q_infiltration,
}


def builtin_law(name: str, **params) -> PhiLaw:
    """Look up a catalog law by name, passing parameters such as ``q``."""
    try:
        factory = CATALOG[name.lower().replace("-", "").replace("_", "")]
    except KeyError:
        raise LawError(f"unknown law {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    return factory(**params)


def law_from_doc(doc: Mapping) -> PhiLaw:
    """Build a law from a definition document (as read from JSON).

    ``{"name", "variant": "weight_additive", "builtin": <catalog name>, "q": "1/2"}`` or
    ``{"name", "variant": "finite_table", "alphabet": [{"letter": "y1", "weight": 1}],
    "entries": [{"a": "y1", "b": "y1", "value": "q*y1"}]}``.
    """
    from .textio import parse_poly, parse_scalar
    from .words import parse_word

    def letter(text) -> int:
        w = parse_word(str(text))
        if len(w) != 1:
            raise LawError(f"expected a single letter, got {text!r}")
        return w[0]

    variant = doc.get("variant", "weight_additive")
    if variant == "weight_additive":
        if "builtin" not in doc:
            raise LawError("weight_additive law documents need a 'builtin' name")
        params = {}
        if "q" in doc:
            params["q"] = parse_scalar(str(doc["q"]))
        law = builtin_law(doc["builtin"], **params)
    elif variant == "finite_table":
        alphabet = Alphabet.from_letters(
            [(letter(x["letter"]), int(x.get("weight", 1))) for x in doc.get("alphabet", [])])
        entries = {}
        for e in doc.get("entries", []):
            entries[(letter(e["a"]), letter(e["b"]))] = parse_poly(str(e["value"]))
        law = FiniteTableLaw(doc.get("name", "table"), alphabet, entries)
    else:
        raise LawError(f"unknown law variant {variant!r}")
    if "name" in doc:
        law.name = doc["name"]
    return law


# -- finite supports ----------------------------------------------------------------------

def _length_factor(law: PhiLaw, op: str) -> int:
    law.require("moderate", op=op)
    return law.report().moderation_index or 1


def expanding_candidates(law: PhiLaw, w: Word, op: str = "operation") -> list[Word]:
    """Words ``v`` such that ``w`` can occur in a ⧢φ product of factors of ``v``.

    Graded laws: words of the same weight and length >= ``|w|``.  Finite
    tables: lengths ``|w| .. N|w|`` with ``N`` the moderation index.
    """
    if not w:
        return [()]
    if law.is_weight_graded:
        n = law.alphabet.weight(w)
        return [v for v in law.alphabet.words_of_weight(n) if len(v) >= len(w)]
    N = _length_factor(law, op)
    out = []
    for m in range(len(w), N * len(w) + 1):
        out.extend(law.alphabet.words_of_length(m))
    return out


def contracting_candidates(law: PhiLaw, w: Word, op: str = "operation") -> list[Word]:
    """Words ``v`` such that ``w`` can occur in a product of letter images ``pi1(v_i)``."""
    if not w:
        return [()]
    if law.is_weight_graded:
        n = law.alphabet.weight(w)
        return [v for v in law.alphabet.words_of_weight(n) if len(v) <= len(w)]
    N = _length_factor(law, op)
    out = []
    for m in range(-(-len(w) // N), len(w) + 1):
        out.extend(law.alphabet.words_of_length(m))
    return out
