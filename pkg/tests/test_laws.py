from itertools import product

import pytest

from phishuffle.laws import (FiniteTableLaw, LawError, LawPropertyError, WeightAdditiveLaw,
                             analyze_law, builtin_law, gamma_word, law_from_doc, min_shuffle,
                             muffle_sample, phi_apply, q_infiltration, q_shuffle, q_stuffle,
                             quasi_shuffle, semigroup_shuffle, shuffle)
from phishuffle.ncpoly import NCPoly
from phishuffle.scalars import ONE, Q, ZERO
from phishuffle.textio import parse_poly
from phishuffle.words import Alphabet

BUILTINS = [shuffle(), quasi_shuffle(), min_shuffle(), q_stuffle(), q_shuffle()]


def test_phi_apply_examples():
    assert phi_apply(quasi_shuffle(), 1, 2) == parse_poly("y3")
    assert phi_apply(shuffle(), 1, 1) == NCPoly()
    assert phi_apply(q_stuffle(), 1, 1) == parse_poly("q*y2")
    assert phi_apply(min_shuffle(), 2, 1) == parse_poly("-y3")
    assert phi_apply(q_shuffle(), 2, 3) == parse_poly("q^6*y5")


def test_letter_outside_alphabet():
    law = q_infiltration([1])
    with pytest.raises(LawError, match="outside the alphabet"):
        law.apply(1, 2)


def test_weight_additivity_is_enforced():
    bad = WeightAdditiveLaw("bad", lambda i, j: ((i + j + 1, 1),))
    with pytest.raises(LawError, match="weight"):
        bad.apply(1, 1)


def test_gamma_word_examples():
    L = q_stuffle()
    assert gamma_word(L, (1,)) == parse_poly("y1")
    assert gamma_word(L, (1, 1)) == parse_poly("q*y2")
    assert gamma_word(L, (1, 1, 1)) == parse_poly("q^2*y3")
    with pytest.raises(LawError):
        gamma_word(L, ())


def _gamma_paths(law, w, y):
    """γ_w^y by the chain formula Σ_t γ_{x1, t}^y γ_{x2 ... xl}^t."""
    if len(w) == 1:
        return ONE if w[0] == y else ZERO
    total = ZERO
    for t in law.letters(sum(law.alphabet.letter_weight(k) for k in w)):
        inner = _gamma_paths(law, w[1:], t)
        if inner:
            total = total + law.apply(w[0], t).get(y, ZERO) * inner
    return total


@pytest.mark.parametrize("law", BUILTINS, ids=lambda L: L.name)
def test_gamma_word_recursion_matches_paths(law):
    for n in range(1, 5):
        for w in product([1, 2, 3], repeat=n):
            g = gamma_word(law, w)
            wt = sum(w)
            assert all(len(v) == 1 and v[0] == wt for v in g.support())
            assert g.coeff((wt,)) == _gamma_paths(law, w, wt)


@pytest.mark.parametrize("law", [shuffle(), quasi_shuffle(), q_stuffle(), q_shuffle(), min_shuffle()],
                         ids=lambda L: L.name)
def test_graded_laws_all_true(law):
    rep = analyze_law(law, 6)
    assert rep.flags() == (True, True, True, True)
    assert rep.verified_up_to_weight == 6


def test_qstuffle_report_stable_in_bound():
    flags = {analyze_law(q_stuffle(), n).flags() for n in range(4, 9)}
    assert flags == {(True, True, True, True)}


def test_q_infiltration_not_moderate():
    rep = analyze_law(q_infiltration([1]), 4)
    assert rep.associative and rep.commutative and rep.dualizable is True
    assert rep.moderate is False
    assert any("not nilpotent" in n for n in rep.notes)
    with pytest.raises(LawPropertyError, match="pi1 requires moderate law"):
        q_infiltration([1]).require("moderate", op="pi1")


def test_q_infiltration_specialized_nilpotent():
    # with q = 0 the law is the plain shuffle and is moderate
    rep = analyze_law(q_infiltration([1], q=0), 4)
    assert rep.moderate is True


def test_cancellation_makes_moderate():
    # support matrix is full but M_x squares to zero
    law = FiniteTableLaw("cancel", Alphabet.from_letters([1, 2]),
                         {(1, 1): {1: 1, 2: -1}, (1, 2): {1: 1, 2: -1}})
    rep = analyze_law(law, 4)
    assert rep.moderate is True and rep.moderation_index == 2
    assert "support matrix not nilpotent" in rep.notes
    assert gamma_word(law, (1, 1, 1)) == NCPoly()


def test_nilpotent_semigroup_table():
    law = FiniteTableLaw("nil", Alphabet.from_letters([1, 2]), {(1, 1): {2: 1}})
    rep = analyze_law(law, 4)
    assert rep.flags() == (True, True, True, True)
    assert law.is_weight_graded


def test_semigroup_shuffle():
    capped = semigroup_shuffle(lambda a, b: min(a + b, 3), [1, 2, 3])
    rep = analyze_law(capped, 4)
    assert rep.associative and rep.commutative and rep.moderate is False
    with pytest.raises(LawError, match="not closed"):
        semigroup_shuffle(lambda a, b: a + b, [1, 2])


def test_muffle_sample_not_dualizable():
    law = muffle_sample([1, 2, "1/2", 3, "1/3"])
    rep = analyze_law(law, 4)
    assert rep.dualizable is False
    assert any("not dualizable" in n for n in rep.notes)
    with pytest.raises(LawPropertyError, match="dualizable"):
        law.require("dualizable", op="delta_phi")


def test_noncommutative_detection():
    law = FiniteTableLaw("left", Alphabet.from_letters([1, 2]), {(1, 2): {1: 1}})
    rep = analyze_law(law, 4)
    assert not rep.commutative
    with pytest.raises(LawError):
        analyze_law(law, 1)


def test_builtin_lookup_and_documents():
    assert builtin_law("q-stuffle").name == "qstuffle"
    assert builtin_law("qstuffle", q=2).apply(1, 1) == {2: 2 * ONE}
    with pytest.raises(LawError, match="unknown law"):
        builtin_law("nope")
    law = law_from_doc({"name": "qi", "variant": "finite_table",
                        "alphabet": [{"letter": "y1", "weight": 1}],
                        "entries": [{"a": "y1", "b": "y1", "value": "q*y1"}]})
    assert law.apply(1, 1) == {1: Q}
    law = law_from_doc({"variant": "weight_additive", "builtin": "qstuffle", "q": "1/2"})
    assert law.apply(1, 2) == {3: ONE / 2}
    with pytest.raises(LawError):
        law_from_doc({"variant": "finite_table", "alphabet": [{"letter": "y1"}],
                      "entries": [{"a": "y1", "b": "y1", "value": "y1.y1"}]})
