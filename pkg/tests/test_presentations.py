from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicover.presentations import (
    CyclicClass,
    FreeWord,
    HNNData,
    NonPrimitiveClassWarning,
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    abelianization,
    canonical_relator,
    class_of_word,
    cyclically_reduce,
    ensure_stable_generator,
    format_presentation,
    hnn_presentation,
    invert,
    parse_presentation,
    parse_word,
    word,
)

from conftest import PROPERTY_CASES, free_words

PI_TEXT = """\
# the HNN group with two associated pairs
gens: t a b
rels: t^-1 a t a^-2, t^-1 b^2 t b^-1
phi:  t=1 a=0 b=0
"""


def test_words_reduce_freely():
    assert word("a a^-1 b") == FreeWord.gen("b")
    assert word("a^2 a^3").letters == (("a", 5),)
    assert len(word("a^-2 b^3")) == 5
    assert word("1").letters == ()


@given(free_words(), free_words(), free_words())
def test_group_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * ~u == FreeWord.identity()
    assert ~(u * v) == ~v * ~u
    assert u ** 3 == u * u * u
    assert u ** -2 == ~u * ~u


@given(free_words())
def test_cyclic_reduction_is_conjugate_and_stable(w):
    r = cyclically_reduce(w)
    assert cyclically_reduce(r) == r
    if len(r.letters) >= 2:
        assert r.letters[0][0] != r.letters[-1][0]
    for g in ("a", "b", "t"):
        assert r.exponent_sum(g) == w.exponent_sum(g)


@settings(max_examples=PROPERTY_CASES)
@given(free_words(), free_words())
def test_canonical_relator_ignores_conjugation_and_inversion(w, u):
    base = canonical_relator(w)
    assert canonical_relator(u * w * ~u) == base
    assert canonical_relator(invert(w)) == base


@given(free_words())
def test_word_print_parse_round_trip(w):
    assert parse_word(str(w)) == w


@given(st.lists(free_words(max_syllables=5), max_size=4))
def test_presentation_round_trip(rels):
    p = Presentation(("a", "b", "t"), tuple(rels))
    phi = CyclicClass({"a": 0, "b": 0, "t": 0})
    text = format_presentation(p)
    q, psi = parse_presentation(text)
    assert q == p and psi is None


def test_parse_presentation_with_class():
    p, phi = parse_presentation(PI_TEXT)
    assert p.generators == ("t", "a", "b")
    assert len(p.relators) == 2
    assert phi.values == {"t": 1, "a": 0, "b": 0}
    assert phi.is_primitive


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("gens: a\nrels: a ^", 2, 9),
        ("gens: a\nrels: a b", 2, 9),
        ("rels: a\ngens: a", 1, 1),
        ("gens: a\nrels: a\nphi: a=x", 3, 6),
        ("gens: a b\nrels: a$b", 2, 8),
    ],
)
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(PresentationSyntaxError) as err:
        parse_presentation(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_phi_must_cover_generators_and_kill_relators():
    with pytest.raises(PresentationError):
        parse_presentation("gens: a b\nrels: a b\nphi: a=1")
    with pytest.raises(PresentationError, match="homomorphism"):
        parse_presentation("gens: a b\nrels: a b\nphi: a=1 b=0")


def test_non_primitive_class_warns():
    with pytest.warns(NonPrimitiveClassWarning):
        _, phi = parse_presentation("gens: a b\nrels:\nphi: a=2 b=4")
    assert phi.divisibility() == 2
    assert phi.primitive_part().values == {"a": 1, "b": 2}


def test_undeclared_generator_rejected():
    with pytest.raises(PresentationError):
        Presentation(("a",), (word("a b"),))


def test_hnn_presentation_layout():
    base = Presentation(("a",), ())
    p, phi = hnn_presentation(HNNData(base, "t", (word("a"),), (word("a^2"),)))
    assert p.generators == ("t", "a")
    assert p.relators == (cyclically_reduce(word("t^-1 a t a^-2")),)
    assert phi.values == {"t": 1, "a": 0}
    with pytest.raises(PresentationError):
        HNNData(base, "a", (word("a"),), (word("a"),))


def test_stable_generator_kept_when_present():
    p, phi = parse_presentation(PI_TEXT)
    q, psi, stable = ensure_stable_generator(p, phi)
    assert q is p and stable == "t"


@pytest.mark.parametrize(
    "values, defining",
    [
        ((2, 3), "tau y^-1 x"),
        ((4, 9), "tau y^-1 x^2"),
        ((0, 5, 2), "tau z^2 y^-1"),
        ((9, 4, 3), "tau z y^-1"),  # the pair (4, 3) beats (9, 4)
        ((6, 10, 15), "tau z y^-1 x^-1"),  # no coprime pair exists
    ],
)
def test_stable_generator_uses_short_combination(values, defining):
    gens = tuple("xyz"[: len(values)])
    p = Presentation(gens, ())
    q, psi, tau = ensure_stable_generator(p, CyclicClass(dict(zip(gens, values))))
    assert tau == "tau" and psi[tau] == 1
    assert q.generators == gens + ("tau",)
    assert q.relators[-1] == cyclically_reduce(word(defining))
    assert class_of_word(psi, q.relators[-1]) == 0


def test_stable_generator_name_avoids_collisions():
    p = Presentation(("tau", "x"), ())
    _, _, name = ensure_stable_generator(p, CyclicClass({"tau": 2, "x": 3}))
    assert name == "tau1"


def _class_zero_relators(gens, values, draws):
    rels = []
    for j, k, w in draws:
        j, k = j % len(gens), k % len(gens)
        balanced = FreeWord(((gens[j], values[k]), (gens[k], -values[j])))
        rels.append(w * balanced * ~w)
    return rels


@settings(max_examples=PROPERTY_CASES)
@given(
    st.lists(st.integers(-12, 12), min_size=1, max_size=4).filter(lambda v: gcd(*v) == 1),
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), free_words(("g0",), max_syllables=1)), max_size=3),
)
def test_stable_move_preserves_abelianization(values, draws):
    gens = tuple(f"g{k}" for k in range(len(values)))
    phi = CyclicClass(dict(zip(gens, values)))
    p = Presentation(gens, tuple(_class_zero_relators(gens, values, draws)))
    phi.check_homomorphism(p)
    q, psi, stable = ensure_stable_generator(p, phi)
    assert psi[stable] == 1
    psi.check_homomorphism(q)
    assert abelianization(q).cokernel() == abelianization(p).cokernel()
