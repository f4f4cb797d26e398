from __future__ import annotations

from math import prod

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cyclicover.exactalg import (
    LaurentPoly,
    laurent_normalize,
    minors_gcd,
    poly_exact_div,
    smith_normal_form,
)
from cyclicover.fox import (
    HNNVerdict,
    NoStableGeneratorError,
    alexander_matrix,
    alexander_polynomial,
    fox_derivative,
    fox_jacobian,
    hnn_end_test,
)
from cyclicover.presentations import (
    CyclicClass,
    FreeWord,
    HNNData,
    Presentation,
    class_of_word,
    ensure_stable_generator,
    hnn_presentation,
    word,
)

from conftest import PROPERTY_CASES, classed_presentations, free_words

T = LaurentPoly.monomial(1)
GENS = ("a", "b", "t")
classes = st.builds(
    lambda a, b, t: CyclicClass({"a": a, "b": b, "t": t}),
    st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
)


def _tpow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


def bs(m: int, n: int):
    base = Presentation(("a",), ())
    return hnn_presentation(HNNData(base, "t", (word(f"a^{m}"),), (word(f"a^{n}"),)))


@settings(max_examples=PROPERTY_CASES)
@given(free_words(GENS, max_syllables=8), classes)
def test_fundamental_identity(w, phi):
    lhs = LaurentPoly.zero()
    for g in GENS:
        lhs = lhs + fox_derivative(w, g, phi) * (_tpow(phi[g]) - 1)
    assert lhs == _tpow(class_of_word(phi, w)) - 1


@given(free_words(GENS), free_words(GENS), classes, st.sampled_from(GENS))
def test_product_rule(u, v, phi, g):
    expected = fox_derivative(u, g, phi) + _tpow(class_of_word(phi, u)) * fox_derivative(v, g, phi)
    assert fox_derivative(u * v, g, phi) == expected


@given(free_words(GENS), classes, st.sampled_from(GENS))
def test_inverse_rule(u, phi, g):
    expected = -(_tpow(-class_of_word(phi, u)) * fox_derivative(u, g, phi))
    assert fox_derivative(~u, g, phi) == expected


def test_generator_derivatives():
    phi = CyclicClass({"a": 2, "b": 0, "t": 1})
    assert fox_derivative(word("a"), "a", phi) == LaurentPoly.one()
    assert fox_derivative(word("a"), "b", phi).is_zero()
    assert fox_derivative(word("a^3"), "a", phi) == 1 + _tpow(2) + _tpow(4)
    assert fox_derivative(word("a^-1"), "a", phi) == -_tpow(-2)


PI = Presentation(("t", "a", "b"), (word("t^-1 a t a^-2"), word("t^-1 b^2 t b^-1")))
PI_PHI = CyclicClass({"t": 1, "a": 0, "b": 0})


@pytest.mark.parametrize(
    "p, phi, expected",
    [
        (PI, PI_PHI, "2 - 5t + 2t^2"),
        (*bs(1, 2), "-1 + 2t"),
        (*bs(2, 1), "-2 + t"),
        (*bs(2, 3), "-2 + 3t"),
        (Presentation(("t",), ()), CyclicClass({"t": 1}), "1"),
        (Presentation(("t", "a"), (word("t a t^-1 a^-1"),)), CyclicClass({"t": 1, "a": 0}), "-1 + t"),
        # trefoil and the (2,5) torus knot from their x^p = y^q presentations; no generator
        # has class 1, so both go through the added stable generator
        (Presentation(("x", "y"), (word("x^2 y^-3"),)), CyclicClass({"x": 3, "y": 2}), "1 - t + t^2"),
        (Presentation(("x", "y"), (word("x^2 y^-5"),)), CyclicClass({"x": 5, "y": 2}), "1 - t + t^2 - t^3 + t^4"),
        # Wirtinger presentation of the figure-eight knot
        (Presentation(("x", "y"), (word("y x^-1 y^-1 x y x^-1 y x y^-1 x^-1"),)),
         CyclicClass({"x": 1, "y": 1}), "1 - 3t + t^2"),
    ],
)
def test_known_alexander_polynomials(p, phi, expected):
    p, phi, _ = ensure_stable_generator(p, phi)
    assert str(alexander_polynomial(p, phi)) == expected


def test_missing_stable_generator_is_reported():
    p = Presentation(("x", "y"), (word("x^2 y^-3"),))
    with pytest.raises(NoStableGeneratorError):
        alexander_matrix(p, CyclicClass({"x": 3, "y": 2}))


def test_alexander_matrix_columns():
    am = alexander_matrix(PI, PI_PHI)
    assert am.stable == "t" and am.column_order == ("a", "b")
    assert am.matrix.rows == 2 and am.matrix.cols == 2
    assert am.matrix[0, 1].is_zero() and am.matrix[1, 0].is_zero()
    product = am.matrix[0, 0] * am.matrix[1, 1]
    assert laurent_normalize(product) == (T - 2) * (2 * T - 1)


@settings(max_examples=PROPERTY_CASES)
@given(classed_presentations(), free_words(GENS, max_syllables=3), st.data())
def test_delta_invariant_under_relator_conjugation_and_inversion(pp, u, data):
    p, phi = pp
    k = data.draw(st.integers(0, len(p.relators) - 1))
    r = p.relators[k]
    moved = ~(u * r * ~u) if data.draw(st.booleans()) else u * r * ~u
    q = Presentation(p.generators, p.relators[:k] + (moved,) + p.relators[k + 1:])
    assert alexander_polynomial(q, phi) == alexander_polynomial(p, phi)


@settings(max_examples=PROPERTY_CASES)
@given(classed_presentations(), free_words(("a", "b"), max_syllables=3))
def test_delta_invariant_under_stable_tietze_move(pp, c):
    """Adding u = t*c with c of class 0 and making u the stable letter."""
    p, phi = pp
    c = c * FreeWord.gen("t", -class_of_word(phi, c)) if class_of_word(phi, c) else c
    w = FreeWord.gen("t") * c
    q = Presentation(("u",) + p.generators, p.relators + (FreeWord.gen("u") * ~w,))
    psi = CyclicClass({**phi.values, "u": 1})
    assert alexander_matrix(q, psi).stable == "u"
    assert alexander_polynomial(q, psi) == alexander_polynomial(p, phi)


@settings(max_examples=PROPERTY_CASES)
@given(classed_presentations())
def test_delta_matches_other_column_deletions(pp):
    """Deleting column g instead of t scales the gcd by (t^phi(g) - 1)/(t - 1)."""
    p, phi = pp
    delta = alexander_polynomial(p, phi)
    jac = fox_jacobian(p, phi)
    if jac.rows == 0:
        assert delta == LaurentPoly.zero() or len(p.generators) == 1
        return
    for j, g in enumerate(p.generators):
        v = phi[g]
        if v == 0 or g == "t":
            continue
        other = minors_gcd(jac.delete_column(j), len(p.generators) - 1)
        rescaled = laurent_normalize(poly_exact_div(other * (T - 1), _tpow(v) - 1)) if other else other
        assert rescaled == delta


@given(classed_presentations())
def test_delta_at_one_divides_abelian_minors(pp):
    p, phi = pp
    am = alexander_matrix(p, phi).matrix
    snf = smith_normal_form(am.evaluate(1), cols=am.cols)
    if snf.rank == am.cols:
        d1 = alexander_polynomial(p, phi)(1)
        assert d1 != 0 and prod(snf.diagonal[: am.cols]) % int(d1) == 0


@pytest.mark.parametrize(
    "m, n, verdict",
    [
        (1, 2, HNNVerdict.ASCENDING_ONLY),
        (1, 5, HNNVerdict.ASCENDING_ONLY),
        (2, 1, HNNVerdict.DESCENDING_ONLY),
        (-3, 1, HNNVerdict.DESCENDING_ONLY),
        (1, 1, HNNVerdict.BOTH),
        (1, -1, HNNVerdict.BOTH),
        (2, 3, HNNVerdict.NEITHER),
    ],
)
def test_baumslag_solitar_end_test(m, n, verdict):
    report = hnn_end_test(alexander_polynomial(*bs(m, n)))
    assert report.verdict is verdict
    assert (abs(report.bottom_coefficient), abs(report.top_coefficient)) == (abs(m), abs(n))


def test_end_test_for_pi_and_zero():
    report = hnn_end_test(alexander_polynomial(PI, PI_PHI))
    assert (report.bottom_coefficient, report.top_coefficient) == (2, 2)
    assert report.verdict is HNNVerdict.NEITHER
    assert not report.ascending_possible and not report.descending_possible
    assert report.to_json()["verdict"] == "neither"
    assert hnn_end_test(LaurentPoly.zero()).verdict is HNNVerdict.INCONCLUSIVE
