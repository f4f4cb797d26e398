from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclicover.exactalg import (
    LaurentMatrix,
    LaurentPoly,
    SizeLimitError,
    as_rational,
    divides,
    format_rational,
    in_localized_ring,
    int_det,
    laurent_det,
    laurent_gcd,
    laurent_normalize,
    minors_gcd,
    poly_exact_div,
    prime_factors,
    smith_normal_form,
)

from conftest import PROPERTY_CASES, laurent_polys, units

T = LaurentPoly.monomial(1)


# --- Laurent polynomials ----------------------------------------------------

def test_display_matches_ascending_style():
    delta = (T - 2) * (2 * T - 1)
    assert str(delta) == "2 - 5t + 2t^2"
    assert delta.format(star=True) == "2 - 5*t + 2*t^2"
    assert str(LaurentPoly.monomial(-2, -3) + 1) == "-3t^-2 + 1"
    assert str(LaurentPoly.zero()) == "0"


def test_parse_round_trip():
    for text in ["2 - 5t + 2t^2", "-t^-3 + 7", "1", "0", "t"]:
        assert str(LaurentPoly.parse(text)) == text


def test_json_round_trip_keeps_big_coefficients():
    p = LaurentPoly(-4, [10**40, 0, -3])
    doc = p.to_json()
    assert doc == {"minDeg": -4, "coeffs": [str(10**40), "0", "-3"]}
    assert LaurentPoly.from_json(doc) == p


def test_normalize():
    p = LaurentPoly(-3, [-2, 5, -2])
    n = laurent_normalize(p)
    assert n.low == 0 and n.coeffs == (2, -5, 2)
    assert laurent_normalize(LaurentPoly.zero()).is_zero()


def test_negative_power_only_for_units():
    assert (T ** -2) == LaurentPoly.monomial(-2)
    with pytest.raises(ValueError):
        (T + 1) ** -1


def test_exact_division_rejects_remainder():
    with pytest.raises(ArithmeticError):
        poly_exact_div(T + 1, T + 2)


@settings(max_examples=PROPERTY_CASES)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == LaurentPoly.zero()
    assert p * LaurentPoly.one() == p


@given(laurent_polys(), laurent_polys(), st.fractions(min_value=-3, max_value=3).filter(bool))
def test_evaluation_is_a_ring_map(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@given(laurent_polys())
def test_substitute_inverse_is_involution(p):
    assert p.substitute_inverse().substitute_inverse() == p


@settings(max_examples=PROPERTY_CASES)
@given(laurent_polys(), laurent_polys(), laurent_polys(max_width=3))
def test_gcd_divides_and_absorbs_common_factor(a, b, g):
    p, q = a * g, b * g
    d = laurent_gcd(p, q)
    if p.is_zero() and q.is_zero():
        assert d.is_zero()
        return
    assert divides(d, p) and divides(d, q)
    if not g.is_zero():
        assert divides(g, d)


@given(laurent_polys(), laurent_polys(max_width=3).filter(bool))
def test_exact_division_inverts_multiplication(a, b):
    assert poly_exact_div(a * b, b) == a


# --- matrices ---------------------------------------------------------------

def _brute_minors_gcd(rows, k):
    n, m = len(rows), len(rows[0])
    out = LaurentPoly.zero()
    for rs in combinations(range(n), k):
        for cs in combinations(range(m), k):
            total = LaurentPoly.zero()
            for perm in permutations(range(k)):
                sign = 1
                for i in range(k):
                    for j in range(i + 1, k):
                        if perm[i] > perm[j]:
                            sign = -sign
                term = LaurentPoly.constant(sign)
                for i in range(k):
                    term = term * rows[rs[i]][cs[perm[i]]]
                total = total + term
            out = laurent_gcd(out, total)
    return laurent_normalize(out)


matrices = st.integers(1, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda m: st.lists(
            st.lists(laurent_polys(max_width=3, coeff=4, spread=2), min_size=m, max_size=m),
            min_size=n, max_size=n,
        )
    )
)


@given(st.lists(st.lists(laurent_polys(max_width=3, coeff=4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_leibniz(rows):
    assert laurent_normalize(laurent_det(LaurentMatrix.from_rows(rows))) == _brute_minors_gcd(rows, 4)


@given(matrices, st.data())
def test_minors_gcd_matches_definition(rows, data):
    k = data.draw(st.integers(1, min(len(rows), len(rows[0]))))
    assert laurent_normalize(minors_gcd(LaurentMatrix.from_rows(rows), k)) == _brute_minors_gcd(rows, k)


@settings(max_examples=PROPERTY_CASES)
@given(matrices, st.data())
def test_minors_gcd_invariant_under_unit_operations(rows, data):
    n, m = len(rows), len(rows[0])
    k = data.draw(st.integers(1, min(n, m)))
    before = laurent_normalize(minors_gcd(LaurentMatrix.from_rows(rows), k))
    rows = [list(r) for r in rows]
    op = data.draw(st.sampled_from(["swap_rows", "swap_cols", "unit_row", "unit_col", "add_row", "add_col"]))
    if op == "swap_rows":
        i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
        rows[i], rows[j] = rows[j], rows[i]
    elif op == "swap_cols":
        i, j = data.draw(st.integers(0, m - 1)), data.draw(st.integers(0, m - 1))
        for r in rows:
            r[i], r[j] = r[j], r[i]
    elif op == "unit_row":
        i, u = data.draw(st.integers(0, n - 1)), data.draw(units())
        rows[i] = [u * x for x in rows[i]]
    elif op == "unit_col":
        j, u = data.draw(st.integers(0, m - 1)), data.draw(units())
        for r in rows:
            r[j] = u * r[j]
    elif op == "add_row" and n > 1:
        i = data.draw(st.integers(0, n - 1))
        j = data.draw(st.integers(0, n - 1).filter(lambda x: x != i))
        c = data.draw(laurent_polys(max_width=2, coeff=3))
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
    elif op == "add_col" and m > 1:
        i = data.draw(st.integers(0, m - 1))
        j = data.draw(st.integers(0, m - 1).filter(lambda x: x != i))
        c = data.draw(laurent_polys(max_width=2, coeff=3))
        for r in rows:
            r[i] = r[i] + c * r[j]
    after = laurent_normalize(minors_gcd(LaurentMatrix.from_rows(rows), k))
    assert after == before


def test_minors_gcd_edge_orders():
    M = LaurentMatrix.from_rows([[T, T + 1]])
    assert minors_gcd(M, 0) == LaurentPoly.one()
    assert minors_gcd(M, 2).is_zero()


def test_size_limit(monkeypatch):
    M = LaurentMatrix.diagonal([T + 1] * 4)
    monkeypatch.setenv("CYCLICOVER_SIZE_LIMIT", "3")
    with pytest.raises(SizeLimitError):
        minors_gcd(M, 4)
    monkeypatch.setenv("CYCLICOVER_SIZE_LIMIT", "4")
    assert minors_gcd(M, 4) == (T + 1) ** 4


def _int_minor_gcds(M, k):
    n, m = len(M), len(M[0]) if M else 0
    g = 0
    for rs in combinations(range(n), k):
        for cs in combinations(range(m), k):
            g = gcd(g, int_det([[M[i][j] for j in cs] for i in rs]))
    return g


int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-9, 9), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@settings(max_examples=PROPERTY_CASES)
@given(int_matrices)
def test_smith_form_matches_minor_gcds(M):
    snf = smith_normal_form(M)
    d = list(snf.diagonal)
    assert all(x > 0 for x in d[: snf.rank]) and all(x == 0 for x in d[snf.rank:])
    for a, b in zip(d[: snf.rank], d[1: snf.rank]):
        assert b % a == 0
    for k in range(1, min(len(M), len(M[0])) + 1):
        assert prod(d[:k]) == _int_minor_gcds(M, k)


def test_cokernel_counts():
    # Z^3 / <(2,0,0), (0,4,0)> = Z/2 + Z/4 + Z
    snf = smith_normal_form([[2, 0, 0], [0, 4, 0]])
    assert snf.cokernel() == (1, (2, 4))
    assert snf.cokernel_generators() == 3
    assert smith_normal_form([], cols=2).cokernel() == (2, ())
    assert smith_normal_form([[1, 0], [0, 1]]).cokernel_generators() == 0


def test_int_det():
    assert int_det([[2, 1], [7, 4]]) == 1
    assert int_det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert int_det([]) == 1


# --- rationals --------------------------------------------------------------

def test_rational_parsing_and_format():
    assert as_rational("5/72") == Fraction(5, 72)
    assert as_rational(3) == Fraction(3)
    assert format_rational(Fraction(6, 2)) == "3"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_prime_factors_and_localization():
    assert prime_factors(72) == {2: 3, 3: 2}
    assert prime_factors(1) == {}
    assert in_localized_ring(Fraction(5, 72), [2, 3])
    assert not in_localized_ring(Fraction(1, 10), [2, 3])
