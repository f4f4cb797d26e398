"""Laurent polynomials over the integers.

A :class:`LaurentPoly` is stored as a minimum degree plus a dense tuple of
Python integers with no zero at either end.  The zero polynomial is
``LaurentPoly(0, ())``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "laurent_add",
    "laurent_mul",
    "laurent_normalize",
    "laurent_gcd",
    "poly_exact_div",
]


def _trim(low: int, coeffs: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return low + lo, tuple(coeffs[lo:hi])


class LaurentPoly:
    """Element of Z[t, t^-1]; immutable and hashable."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int = 0, coeffs: Sequence[int] = ()):
        low, coeffs = _trim(int(low), [int(c) for c in coeffs])
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls(0, ())

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(0, (1,))

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls(0, (c,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> LaurentPoly:
        return cls(degree, (coeff,))

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> LaurentPoly:
        terms = {d: c for d, c in terms.items() if c}
        if not terms:
            return cls.zero()
        low, high = min(terms), max(terms)
        return cls(low, [terms.get(d, 0) for d in range(low, high + 1)])

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        """Largest degree with nonzero coefficient (undefined for zero)."""
        return self.low + len(self.coeffs) - 1

    @property
    def width(self) -> int:
        """Degree span, the Laurent analogue of degree."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    def terms(self) -> dict[int, int]:
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def coefficient(self, degree: int) -> int:
        k = degree - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        low = min(self.low, other.low)
        high = max(self.high, other.high)
        out = [0] * (high - low + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - low + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.low - low + k] += c
        return LaurentPoly(low, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.low, [-c for c in self.coeffs])

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(self.low + other.low, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly.monomial(self.low * n, self.coeffs[0] ** -n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.low + k, self.coeffs)

    def scale(self, c: int) -> LaurentPoly:
        return LaurentPoly(self.low, [c * x for x in self.coeffs])

    def substitute_inverse(self) -> LaurentPoly:
        """The involution t -> t^-1."""
        if not self.coeffs:
            return self
        return LaurentPoly(-self.high, self.coeffs[::-1])

    def __call__(self, value):
        """Evaluate at a nonzero int, Fraction or complex ``value``."""
        if isinstance(value, int):
            value = Fraction(value)
        total = 0
        for k, c in enumerate(self.coeffs):
            total += c * value ** (self.low + k)
        return total

    # -- normal form -------------------------------------------------------
    def normalize(self) -> LaurentPoly:
        return laurent_normalize(self)

    def associate(self, other: LaurentPoly) -> bool:
        """True when ``self`` and ``other`` differ by a unit +-t^k."""
        return laurent_normalize(self) == laurent_normalize(other)

    # -- text / json -------------------------------------------------------
    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()!r})"

    def format(self, var: str = "t", star: bool = False) -> str:
        """Render in ascending degree, e.g. ``2 - 5t + 2t^2``."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            d = self.low + k
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                mono = var if d == 1 else f"{var}^{d}"
                if mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}" if star else f"{mag}{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"minDeg": self.low, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: Mapping) -> LaurentPoly:
        return cls(int(doc["minDeg"]), [int(c) for c in doc["coeffs"]])

    @classmethod
    def parse(cls, text: str, var: str = "t") -> LaurentPoly:
        """Parse strings such as ``2 - 5t + 2t^2`` or ``c_0 + c_1*t``."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial")
        term_re = re.compile(
            rf"([+-]?)(\d*)\*?({re.escape(var)}(?:\^\(?(-?\d+)\)?)?)?"
        )
        pos = 0
        terms: dict[int, int] = {}
        while pos < len(src):
            m = term_re.match(src, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                deg = int(m.group(4)) if m.group(4) is not None else 1
            else:
                deg = 0
            terms[deg] = terms.get(deg, 0) + sign * coeff
            pos = m.end()
        return cls.from_dict(terms)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


def laurent_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def laurent_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def laurent_normalize(p: LaurentPoly) -> LaurentPoly:
    """Multiply by the unit +-t^k making min degree 0 and the top coefficient positive."""
    if not p.coeffs:
        return p
    coeffs = p.coeffs if p.coeffs[-1] > 0 else tuple(-c for c in p.coeffs)
    return LaurentPoly(0, coeffs)


# ---------------------------------------------------------------------------
# Helpers on ordinary polynomials: coefficient lists, index = degree.

def _poly_divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for k, c in enumerate(b):
            a[shift + k] -= f * c
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _primitive(coeffs: Sequence[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    out = [c // g for c in coeffs]
    if out and out[-1] < 0:
        out = [-c for c in out]
    return out


def _poly_gcd_z(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """gcd in Z[t] of two nonzero polynomials with nonzero constant term."""
    ca, cb = _primitive(a), _primitive(b)
    content = gcd(gcd(*a), gcd(*b))
    x = [Fraction(c) for c in ca]
    y = [Fraction(c) for c in cb]
    while y:
        _, r = _poly_divmod_q(x, y)
        x, y = y, r
    # clear denominators then take primitive part (Gauss's lemma)
    den = 1
    for c in x:
        den = den * c.denominator // gcd(den, c.denominator)
    prim = _primitive([int(c * den) for c in x])
    return [content * c for c in prim]


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in Z[t^{+-1}], returned normalized."""
    if not p.coeffs:
        return laurent_normalize(q)
    if not q.coeffs:
        return laurent_normalize(p)
    g = _poly_gcd_z(p.coeffs, q.coeffs)
    return laurent_normalize(LaurentPoly(0, g))


def poly_exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient p / q in Z[t^{+-1}]; raises ArithmeticError if q does not divide p."""
    if not q.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.coeffs:
        return p
    a = list(p.coeffs)
    b = q.coeffs
    lead = b[-1]
    if len(a) < len(b):
        raise ArithmeticError(f"{q} does not divide {p}")
    quot = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError(f"{q} does not divide {p}")
        f = c // lead
        quot[shift] = f
        for k, bc in enumerate(b):
            a[shift + k] -= f * bc
    if any(a):
        raise ArithmeticError(f"{q} does not divide {p}")
    return LaurentPoly(p.low - q.low, quot)


def divides(q: LaurentPoly, p: LaurentPoly) -> bool:
    try:
        poly_exact_div(p, q)
    except (ArithmeticError, ZeroDivisionError):
        return not p.coeffs and not q.coeffs
    return True


def gcd_all(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    g = LaurentPoly.zero()
    for p in polys:
        g = laurent_gcd(g, p)
        if g.is_unit():
            break
    return g
