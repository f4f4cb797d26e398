"""Exact rationals.

``fractions.Fraction`` already keeps the canonical form (positive
denominator, coprime parts), so it is used directly; this module adds the
text format used by the JSON interfaces and ring-membership helpers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "rational_add",
    "rational_mul",
    "rational_invert",
    "rational_compare",
    "prime_factors",
    "in_localized_ring",
]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"rationals must be written as p/q, got {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """``p/q``, or just ``p`` when the denominator is 1."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_add(a: Fraction, b: Fraction) -> Fraction:
    return as_rational(a) + as_rational(b)


def rational_mul(a: Fraction, b: Fraction) -> Fraction:
    return as_rational(a) * as_rational(b)


def rational_invert(a: Fraction) -> Fraction:
    a = as_rational(a)
    if a == 0:
        raise ZeroDivisionError("cannot invert zero")
    return 1 / a


def rational_compare(a: Fraction, b: Fraction) -> int:
    """-1, 0 or 1 as a <, =, > b."""
    a, b = as_rational(a), as_rational(b)
    return (a > b) - (a < b)


def prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (n != 0)."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no prime factorization")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def in_localized_ring(q: Fraction, primes: Iterable[int]) -> bool:
    """Membership of q in Z[1/N] where ``primes`` are the primes of N."""
    den = as_rational(q).denominator
    for p in primes:
        while den % p == 0:
            den //= p
    return den == 1
