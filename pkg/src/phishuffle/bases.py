"""PBW basis {Π_w}, its dual basis {Σ_w}, and the automorphism φ_π1.

``Π_y = π1(y)`` on letters, ``Π_l = [Π_s, Π_r]`` on Lyndon words with
standard factorization ``(s, r)``, and ``Π_w`` is the concatenation product
of the ``Π_l`` along the decreasing Lyndon factorization of ``w``.

``Σ_w`` is obtained without any recursion of its own: with ``S_w`` the
classical dual basis (zero law, computed by an exact dual solve) and
``φ_π1`` the concatenation morphism ``y -> π1(y)``, one has
``Σ_w = (φ_π1^∨)^{-1}(S_w)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .laws import PhiLaw, contracting_candidates, shuffle
from .linalg import inverse
from .ncpoly import NCPoly, _accumulate, bracket, conc_mul, pairing
from .projectors import pi1_word
from .scalars import ONE, ZERO, Scalar
from .words import (Alphabet, Word, cfl_factorization, format_word, is_lyndon, lyndon_up_to,
                    standard_factorization)

BASIS_PROPS = ("associative", "commutative", "dualizable", "moderate")
MODES = ("forward", "adjoint", "inverse", "adjoint_inverse")


def _poly(d: dict) -> NCPoly:
    return NCPoly._wrap(dict(d))


def pi_element(law: PhiLaw, w: Word) -> NCPoly:
    """``Π_w``."""
    law.require(*BASIS_PROPS, op="pi_element")
    return _pi(law, tuple(w))


def _pi(law: PhiLaw, w: Word) -> NCPoly:
    key = ("Pi", w)
    out = law.cache.get(key)
    if out is not None:
        return out
    alphabet = law.alphabet
    if not w:
        out = NCPoly.constant(ONE)
    elif len(w) == 1:
        out = _poly(pi1_word(law, w))
    elif is_lyndon(w, alphabet):
        s, r = standard_factorization(w, alphabet)
        out = bracket(_pi(law, s), _pi(law, r))
    else:
        out = NCPoly.constant(ONE)
        for l, i in cfl_factorization(w, alphabet):
            out = conc_mul(out, _pi(law, l) ** i)
    law.cache[key] = out
    return out


# -- the automorphism φ_π1 ----------------------------------------------------------------

def _forward_word(law: PhiLaw, w: Word) -> NCPoly:
    key = ("phif", w)
    out = law.cache.get(key)
    if out is None:
        out = NCPoly.constant(ONE)
        for k in w:
            out = conc_mul(out, _poly(pi1_word(law, (k,))))
        law.cache[key] = out
    return out


def _adjoint_word(law: PhiLaw, w: Word) -> dict:
    key = ("phia", w)
    out = law.cache.get(key)
    if out is None:
        out = {}
        for v in contracting_candidates(law, w, op="phi_pi1_map"):
            c = _forward_word(law, v).coeff(w)
            if c:
                out[v] = c
        law.cache[key] = out
    return out


def _back_substitute(P: NCPoly, image, longest_first: bool) -> NCPoly:
    """Solve ``f(X) = P`` for a map ``f(v) = v + (words strictly longer/shorter than v)``."""
    rest = dict(P.raw_items())
    out: dict = {}
    while rest:
        pick = max if longest_first else min
        n = pick(len(w) for w in rest)
        for w in [w for w in rest if len(w) == n]:
            c = rest.get(w)
            if not c:
                continue
            out[w] = c
            _accumulate(rest, image(w), -c)
            if rest.get(w):
                raise ArithmeticError("map is not unitriangular")
    return NCPoly._wrap(out)


def phi_pi1_map(law: PhiLaw, P: NCPoly, mode: str = "forward") -> NCPoly:
    """The conc-morphism ``y -> π1(y)`` and its relatives.

    ``forward``: the morphism itself.  ``adjoint``: its transpose,
    ``w -> Σ_v <w, forward(v)> v``.  ``inverse`` / ``adjoint_inverse`` undo
    them by unitriangular back-substitution (forward adds only longer words,
    the adjoint only shorter ones).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {', '.join(MODES)}")
    law.require(*BASIS_PROPS, op="phi_pi1_map")
    if mode == "forward":
        return P.linear_map(lambda w: _forward_word(law, w))
    if mode == "adjoint":
        return P.linear_map(lambda w: _poly(_adjoint_word(law, w)))
    if mode == "inverse":
        if not law.is_weight_graded:
            raise ValueError("inverse of phi_pi1 needs a weight-graded law")
        return _back_substitute(P, lambda w: _forward_word(law, w).raw_items(), longest_first=False)
    return _back_substitute(P, lambda w: _adjoint_word(law, w), longest_first=True)


# -- dual basis ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def classical_law(alphabet: Alphabet) -> PhiLaw:
    """The zero law (plain shuffle) on ``alphabet``."""
    return shuffle(alphabet)


def _component(law: PhiLaw, n: int) -> list[Word]:
    return law.alphabet.words_of_weight(n)


def classical_dual(alphabet: Alphabet, w: Word) -> NCPoly:
    """``S_w``: the dual of the classical PBW basis ``{P_w}``, by an exact solve per weight."""
    law0 = classical_law(alphabet)
    key = ("S", w)
    out = law0.cache.get(key)
    if out is not None:
        return out
    words = _component(law0, alphabet.weight(w))
    # M[i][j] = <P_{words[i]}, words[j]>;  S = (M^T)^{-1} row by row
    M = [[_pi(law0, u).coeff(v) for v in words] for u in words]
    Minv_t = inverse([list(col) for col in zip(*M)])
    for i, u in enumerate(words):
        law0.cache[("S", u)] = NCPoly({v: Minv_t[i][j] for j, v in enumerate(words)})
    return law0.cache[key]


def sigma_element(law: PhiLaw, w: Word) -> NCPoly:
    """``Σ_w = (φ_π1^∨)^{-1}(S_w)``, dual to ``{Π_w}``."""
    law.require(*BASIS_PROPS, op="sigma_element")
    w = tuple(w)
    key = ("Sigma", w)
    out = law.cache.get(key)
    if out is None:
        if not w:
            out = NCPoly.constant(ONE)
        else:
            S = classical_dual(law.alphabet, w)
            out = _back_substitute(S, lambda v: _adjoint_word(law, v), longest_first=True)
        law.cache[key] = out
    return out


# -- tables and checks -------------------------------------------------------------------

@dataclass
class BasisTable:
    law: PhiLaw
    weight_bound: int
    pi_elements: dict[Word, NCPoly]
    sigma_elements: dict[Word, NCPoly]
    lyndon_list: list[Word]

    def words(self) -> list[Word]:
        return list(self.pi_elements)

    def dump(self, which: str = "both") -> list[str]:
        """Lines ``PI <w> = <poly>`` / ``SIGMA <w> = <poly>``."""
        lines = []
        for w in self.pi_elements:
            if which in ("both", "pi"):
                lines.append(f"PI {format_word(w)} = {self.pi_elements[w]}")
            if which in ("both", "sigma"):
                lines.append(f"SIGMA {format_word(w)} = {self.sigma_elements[w]}")
        return lines


def build_basis_table(law: PhiLaw, weight_bound: int) -> BasisTable:
    law.require(*BASIS_PROPS, op="basis table")
    words = law.alphabet.words_up_to(weight_bound, include_empty=False)
    return BasisTable(
        law, weight_bound,
        {w: pi_element(law, w) for w in words},
        {w: sigma_element(law, w) for w in words},
        lyndon_up_to(law.alphabet, weight_bound),
    )


@dataclass
class GramReport:
    ok: bool
    weight_bound: int
    components: dict[int, int] = field(default_factory=dict)  # weight -> dimension
    failure: tuple | None = None  # (u, v, value) with <Σ_u, Π_v> wrong

    def __str__(self) -> str:
        if self.ok:
            dims = ", ".join(f"{n}:{d}" for n, d in sorted(self.components.items()))
            return f"OK: Gram matrix is the identity (weight<={self.weight_bound}; dims {dims})"
        u, v, val = self.failure
        return f"FAIL: <SIGMA {format_word(u)}, PI {format_word(v)}> = {val}"


def gram_check(law: PhiLaw, weight_bound: int, table: BasisTable | None = None) -> GramReport:
    """Check ``<Σ_u, Π_v> = δ(u, v)`` on every weight component up to ``weight_bound``."""
    if table is None:
        table = build_basis_table(law, weight_bound)
    alphabet = law.alphabet
    groups: dict[int, list[Word]] = {}
    for w in table.pi_elements:
        if alphabet.weight(w) <= weight_bound:
            groups.setdefault(alphabet.weight(w) if law.is_weight_graded else 0, []).append(w)
    report = GramReport(True, weight_bound)
    for n in sorted(groups):
        ws = groups[n]
        report.components[n] = len(ws)
        for u in ws:
            S = table.sigma_elements[u]
            for v in ws:
                val = pairing(S, table.pi_elements[v])
                if val != (ONE if u == v else ZERO):
                    report.ok = False
                    report.failure = (u, v, val)
                    return report
    return report


# -- evaluation of ψ_π ------------------------------------------------------------------

class PsiExpr:
    """Linear combination of products ``y_{P1} • y_{P2} • ...`` of indexed letters.

    Each index ``P`` is a polynomial without constant term; ``y_P`` stands
    for ``Σ P[w] y_w``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Scalar, tuple[NCPoly, ...]]] = ()):
        self.terms = [(Scalar(c) if not isinstance(c, Scalar) else c, tuple(f)) for c, f in terms]

    @classmethod
    def gen(cls, index) -> "PsiExpr":
        P = index if isinstance(index, NCPoly) else NCPoly.monomial(tuple(index))
        if P.constant_term or any(not w for w in P.support()):
            raise ValueError("index word empty")
        return cls([(ONE, (P,))])

    def __add__(self, other: "PsiExpr") -> "PsiExpr":
        return PsiExpr(self.terms + other.terms)

    def __neg__(self) -> "PsiExpr":
        return PsiExpr([(-c, f) for c, f in self.terms])

    def __sub__(self, other: "PsiExpr") -> "PsiExpr":
        return self + (-other)

    def __mul__(self, other: "PsiExpr") -> "PsiExpr":
        return PsiExpr([(a * b, f + g) for a, f in self.terms for b, g in other.terms])


def psi_pi_eval(law: PhiLaw, expr: PsiExpr) -> NCPoly:
    """``ψ_π(y_{u1} • ... • y_{uk}) = π1(u1) ... π1(uk)``, extended linearly."""
    law.require(*BASIS_PROPS, op="psi_pi_eval")
    acc = NCPoly()
    for c, factors in expr.terms:
        prod = NCPoly.constant(ONE)
        for P in factors:
            img = NCPoly()
            for w, d in P.raw_items():
                if not w:
                    raise ValueError("index word empty")
                img = img + _poly(pi1_word(law, w)).scale(d)
            prod = conc_mul(prod, img)
        acc = acc + prod.scale(c)
    return acc


def s1_generators(law: PhiLaw, weight_bound: int) -> list[tuple[Word, PsiExpr]]:
    """``y_u - y_{π1(u)}`` for nonempty ``u`` of weight <= ``weight_bound``."""
    out = []
    for u in law.alphabet.words_up_to(weight_bound, include_empty=False):
        img = _poly(pi1_word(law, u))
        gen = PsiExpr.gen(u)
        if img:
            gen = gen - PsiExpr.gen(img)
        out.append((u, gen))
    return out


def s2_generators(law: PhiLaw, weight_bound: int,
                  pairs: Sequence[tuple[Word, Word]] | None = None) -> list[tuple[tuple, PsiExpr]]:
    """``y_u • y_v - y_v • y_u - y_{[π1(u), π1(v)]}`` for nonempty ``u, v`` of weight <= bound."""
    if pairs is None:
        words = law.alphabet.words_up_to(weight_bound, include_empty=False)
        pairs = [(u, v) for u in words for v in words]
    out = []
    for u, v in pairs:
        gu, gv = PsiExpr.gen(u), PsiExpr.gen(v)
        gen = gu * gv - gv * gu
        br = bracket(_poly(pi1_word(law, u)), _poly(pi1_word(law, v)))
        if br:
            gen = gen - PsiExpr.gen(br)
        out.append(((u, v), gen))
    return out
