"""Free-group words, finite presentations and integer cohomology classes.

Words are tuples of ``(generator, exponent)`` syllables in freely reduced
form: adjacent syllables carry distinct generators and no exponent is 0.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from .exactalg import smith_normal_form

__all__ = [
    "FreeWord",
    "Presentation",
    "CyclicClass",
    "HNNData",
    "PresentationSyntaxError",
    "PresentationError",
    "NonPrimitiveClassWarning",
    "word",
    "multiply",
    "invert",
    "power",
    "class_of_word",
    "cyclically_reduce",
    "canonical_relator",
    "ensure_stable_generator",
    "hnn_presentation",
    "parse_presentation",
    "parse_word",
    "format_presentation",
    "format_word",
    "abelianization_matrix",
]

Syllable = tuple[str, int]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PresentationError(ValueError):
    """Semantically invalid presentation or class."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NonPrimitiveClassWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# words

def _reduce(letters: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[list] = []
    for g, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls) -> FreeWord:
        return cls(())

    @classmethod
    def gen(cls, name: str, exponent: int = 1) -> FreeWord:
        return cls(((name, exponent),))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return multiply(self, other)

    def __invert__(self) -> FreeWord:
        return invert(self)

    def __pow__(self, k: int) -> FreeWord:
        return power(self, k)

    def __len__(self) -> int:
        """Number of letters, i.e. sum of |exponent|."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def occurrences(self, g: str) -> int:
        return sum(abs(e) for h, e in self.letters if h == g)

    def exponent_sum(self, g: str) -> int:
        return sum(e for h, e in self.letters if h == g)

    def expand(self) -> list[Syllable]:
        """Letter-by-letter form with exponents +-1."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"


def word(text: str) -> FreeWord:
    """Shorthand: ``word("t^-1 a t a^-2")``."""
    return parse_word(text)


def multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    if not u.letters:
        return v
    if not v.letters:
        return u
    return FreeWord(u.letters + v.letters)


def invert(w: FreeWord) -> FreeWord:
    return FreeWord(tuple((g, -e) for g, e in reversed(w.letters)))


def power(w: FreeWord, k: int) -> FreeWord:
    if k < 0:
        w, k = invert(w), -k
    if len(w.letters) == 1:
        g, e = w.letters[0]
        return FreeWord(((g, e * k),))
    result = FreeWord()
    base = w
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def cyclically_reduce(w: FreeWord) -> FreeWord:
    """Cyclically reduced conjugate of ``w``.

    Inverse end syllables are stripped; equal end generators are merged by
    rotating the last syllable to the front.
    """
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        g = letters[0][0]
        e = letters[0][1] + letters[-1][1]
        middle = letters[1:-1]
        letters = ([(g, e)] if e else []) + middle
        letters = list(_reduce(letters))
    return FreeWord(tuple(letters))


def canonical_relator(w: FreeWord) -> tuple[Syllable, ...]:
    """Representative of the cyclic word of w up to rotation and inversion.

    Two relators define the same normal closure element class up to
    conjugation and inversion iff their canonical forms agree.
    """
    w = cyclically_reduce(w)
    if not w.letters:
        return ()
    candidates = []
    for base in (w, cyclically_reduce(invert(w))):
        seq = base.expand()
        for k in range(len(seq)):
            rot = cyclically_reduce(FreeWord(tuple(seq[k:] + seq[:k])))
            candidates.append(rot.letters)
    return min(candidates)


# ---------------------------------------------------------------------------
# presentations and classes

@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        for g in gens:
            if not _IDENT.match(g):
                raise PresentationError(f"invalid generator name {g!r}")
        declared = set(gens)
        rels = []
        for r in self.relators:
            r = r if isinstance(r, FreeWord) else FreeWord(tuple(r))
            missing = r.generators() - declared
            if missing:
                raise PresentationError(f"undeclared generator(s) {sorted(missing)} in relator {r}")
            rels.append(cyclically_reduce(r))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        return format_presentation(self)


@dataclass(frozen=True)
class CyclicClass:
    """Homomorphism to Z given by its values on generators."""

    values: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.values.items())))

    def __getitem__(self, g: str) -> int:
        return self.values[g]

    def divisibility(self) -> int:
        g = 0
        for v in self.values.values():
            g = gcd(g, v)
        return g

    @property
    def is_primitive(self) -> bool:
        return self.divisibility() == 1

    def check_homomorphism(self, p: Presentation) -> None:
        missing = [g for g in p.generators if g not in self.values]
        if missing:
            raise PresentationError(f"class has no value for generator(s) {missing}")
        extra = set(self.values) - set(p.generators)
        if extra:
            raise PresentationError(f"class assigns undeclared generator(s) {sorted(extra)}")
        for r in p.relators:
            if class_of_word(self, r) != 0:
                raise PresentationError(f"class does not vanish on relator {r}; not a homomorphism")

    def primitive_part(self) -> CyclicClass:
        d = self.divisibility()
        if d == 0:
            raise PresentationError("the zero class has no primitive part")
        return CyclicClass({g: v // d for g, v in self.values.items()})

    def stable_generators(self, p: Presentation) -> list[str]:
        return [g for g in p.generators if self.values.get(g) == 1]


def class_of_word(phi: CyclicClass, w: FreeWord) -> int:
    total = 0
    for g, e in w.letters:
        try:
            total += e * phi.values[g]
        except KeyError:
            raise PresentationError(f"class is not defined on generator {g!r}") from None
    return total


@dataclass(frozen=True)
class HNNData:
    base: Presentation
    stable: str
    assoc_plus: tuple[FreeWord, ...]
    assoc_minus: tuple[FreeWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "assoc_plus", tuple(self.assoc_plus))
        object.__setattr__(self, "assoc_minus", tuple(self.assoc_minus))
        if self.stable in self.base.generators:
            raise PresentationError(f"stable letter {self.stable!r} is a base generator")
        if not self.assoc_plus or len(self.assoc_plus) != len(self.assoc_minus):
            raise PresentationError("associated generator lists must be nonempty and of equal length")
        declared = set(self.base.generators)
        for w in self.assoc_plus + self.assoc_minus:
            if not w.generators() <= declared:
                raise PresentationError(f"associated word {w} uses non-base generators")


def hnn_presentation(h: HNNData) -> tuple[Presentation, CyclicClass]:
    """Presentation <B, t | t^-1 A+ t = A-> with the class t -> 1, B -> 0."""
    t = FreeWord.gen(h.stable)
    rels = list(h.base.relators)
    for plus, minus in zip(h.assoc_plus, h.assoc_minus):
        rels.append(invert(t) * plus * t * invert(minus))
    gens = (h.stable,) + h.base.generators
    phi = CyclicClass({g: (1 if g == h.stable else 0) for g in gens})
    return Presentation(gens, tuple(rels)), phi


# ---------------------------------------------------------------------------
# stable generator (Tietze move)

def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _pair_coefficients(a: int, b: int) -> tuple[int, int]:
    """Solution of a x + b y = 1 with least |x| + |y|, ties by (x, y)."""
    g, x, y = _ext_gcd(a, b)
    if g < 0:
        g, x, y = -g, -x, -y
    assert g == 1
    # the general solution (x + k b, y - k a) has convex L1 norm in k
    centers = [-x // b, y // a]
    ks = range(min(centers) - 2, max(centers) + 3)
    _, xx, yy = min((abs(x + k * b) + abs(y - k * a), x + k * b, y - k * a) for k in ks)
    return xx, yy


def _chained_coefficients(vals: Sequence[int]) -> list[int]:
    coeffs = [1] + [0] * (len(vals) - 1)
    acc = vals[0]
    for j in range(1, len(vals)):
        g, x, y = _ext_gcd(acc, vals[j])
        if g < 0:
            g, x, y = -g, -x, -y
        coeffs = [c * x for c in coeffs]
        coeffs[j] = y
        acc = g
    return coeffs


def _nonzero_vectors(size: int, norm: int):
    """All integer vectors with no zero entry and L1 norm exactly ``norm``."""
    if size == 1:
        yield (norm,)
        yield (-norm,)
        return
    for head in range(1, norm - size + 2):
        for rest in _nonzero_vectors(size - 1, norm - head):
            yield (head,) + rest
            yield (-head,) + rest


def _short_coefficients(vals: Sequence[int]) -> list[int]:
    """Least-L1 solution of sum c*v = 1 with every c nonzero, by bounded search."""
    fallback = _chained_coefficients(vals)
    bound = min(sum(map(abs, fallback)), SEARCH_NORM)
    for norm in range(len(vals), bound + 1):
        hits = [c for c in _nonzero_vectors(len(vals), norm)
                if sum(x * v for x, v in zip(c, vals)) == 1]
        if hits:
            return list(min(hits))
    return fallback


SEARCH_NORM = 24


def _euclid_combination(values: Sequence[int]) -> dict[int, int]:
    """Index -> coefficient with sum coeff*value = 1.

    The support is as small as possible; among supports of that size the
    combination of least L1 norm wins, then the earliest indices.
    """
    n = len(values)
    for size in range(1, n + 1):
        best = None
        for idx in combinations(range(n), size):
            vals = [values[i] for i in idx]
            if any(v == 0 for v in vals) or gcd(*vals) != 1:
                continue
            if size == 1:
                coeffs = [vals[0]]  # value is +-1
            elif size == 2:
                coeffs = list(_pair_coefficients(vals[0], vals[1]))
            else:
                coeffs = _short_coefficients(vals)
            key = (sum(map(abs, coeffs)), idx)
            if best is None or key < best[0]:
                best = (key, dict(zip(idx, coeffs)))
        if best is not None:
            return best[1]
    raise PresentationError("class is not primitive")


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    k = 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def ensure_stable_generator(
    p: Presentation, phi: CyclicClass
) -> tuple[Presentation, CyclicClass, str]:
    """Return an equivalent presentation with a generator of class 1.

    If none exists a new generator ``tau`` is added together with the
    defining relator ``tau * w^-1`` where ``phi(w) = 1``.
    """
    if not phi.is_primitive:
        raise PresentationError("class is not primitive")
    for g in p.generators:
        if phi.values.get(g) == 1:
            return p, phi, g
    values = [phi.values[g] for g in p.generators]
    combo = _euclid_combination(values)
    w = FreeWord(tuple((p.generators[i], c) for i, c in sorted(combo.items())))
    assert class_of_word(phi, w) == 1
    tau = _fresh_name("tau", p.generators)
    new_p = Presentation(
        p.generators + (tau,),
        p.relators + (FreeWord.gen(tau) * invert(w),),
    )
    new_phi = CyclicClass({**phi.values, tau: 1})
    return new_p, new_phi, tau


# ---------------------------------------------------------------------------
# abelianization

def abelianization_matrix(p: Presentation) -> list[list[int]]:
    """Relator-by-generator matrix of exponent sums."""
    index = {g: k for k, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r.letters:
            row[index[g]] += e
        rows.append(row)
    return rows


def abelianization(p: Presentation):
    return smith_normal_form(abelianization_matrix(p), cols=len(p.generators))


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?")


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)


def format_presentation(p: Presentation, phi: CyclicClass | None = None) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    rels = ", ".join(format_word(r) for r in p.relators)
    lines.append(("rels: " + rels) if rels else "rels:")
    if phi is not None:
        lines.append("phi: " + " ".join(f"{g}={phi.values[g]}" for g in p.generators))
    return "\n".join(lines) + "\n"


def _parse_word_at(text: str, line: int, col0: int, declared: set[str] | None) -> FreeWord:
    letters: list[Syllable] = []
    pos = 0
    n = len(text)
    saw_token = False
    while pos < n:
        ch = text[pos]
        if ch in " \t*":
            pos += 1
            continue
        if ch == "1" and (pos + 1 == n or text[pos + 1] in " \t*"):
            pos += 1
            saw_token = True
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(f"unexpected character {ch!r}", line, col0 + pos + 1)
        end = m.end()
        if end < n and text[end] not in " \t*":
            raise PresentationSyntaxError(
                f"malformed token {text[pos:end + 1]!r}", line, col0 + end + 1
            )
        g = m.group(1)
        if declared is not None and g not in declared:
            raise PresentationSyntaxError(f"undeclared generator {g!r}", line, col0 + pos + 1)
        letters.append((g, int(m.group(2)) if m.group(2) is not None else 1))
        saw_token = True
        pos = end
    if not saw_token:
        raise PresentationSyntaxError("empty word", line, col0 + 1)
    return FreeWord(tuple(letters))


def parse_word(text: str, generators: Iterable[str] | None = None) -> FreeWord:
    declared = set(generators) if generators is not None else None
    return _parse_word_at(text, 1, 0, declared)


def parse_presentation(text: str) -> tuple[Presentation, CyclicClass | None]:
    """Parse the ``gens:/rels:/phi:`` text format.

    A non-primitive class is returned with a :class:`NonPrimitiveClassWarning`.
    """
    entries: list[tuple[int, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = re.match(r"\s*([A-Za-z]+)\s*:", body)
        if m is None:
            col = len(body) - len(body.lstrip()) + 1
            raise PresentationSyntaxError("expected 'gens:', 'rels:' or 'phi:'", lineno, col)
        key = m.group(1)
        entries.append((lineno, key, body[m.end():], m.end()))

    order = ["gens", "rels", "phi"]
    for pos, (lineno, key, _, _) in enumerate(entries):
        if pos >= 3 or key != order[pos]:
            raise PresentationSyntaxError(
                f"unexpected '{key}:' line; expected gens, rels and optional phi in that order",
                lineno, 1,
            )
    if len(entries) < 2:
        lineno = entries[-1][0] + 1 if entries else 1
        raise PresentationSyntaxError("missing 'gens:' or 'rels:' line", lineno, 1)

    lineno, _, gens_text, off = entries[0]
    gens: list[str] = []
    for m in re.finditer(r"\S+", gens_text):
        tok = m.group(0)
        if not _IDENT.match(tok):
            raise PresentationSyntaxError(f"invalid generator name {tok!r}", lineno, off + m.start() + 1)
        if tok in gens:
            raise PresentationSyntaxError(f"duplicate generator {tok!r}", lineno, off + m.start() + 1)
        gens.append(tok)
    if not gens:
        raise PresentationSyntaxError("no generators declared", lineno, off + 1)
    declared = set(gens)

    lineno, _, rels_text, off = entries[1]
    relators: list[FreeWord] = []
    if rels_text.strip():
        start = 0
        for piece in rels_text.split(","):
            relators.append(_parse_word_at(piece, lineno, off + start, declared))
            start += len(piece) + 1
    p = Presentation(tuple(gens), tuple(relators))

    phi = None
    if len(entries) == 3:
        lineno, _, phi_text, off = entries[2]
        values: dict[str, int] = {}
        for m in re.finditer(r"\S+", phi_text):
            tok = m.group(0)
            mm = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)=(-?\d+)", tok)
            if mm is None:
                raise PresentationSyntaxError(f"expected <id>=<int>, got {tok!r}", lineno, off + m.start() + 1)
            g = mm.group(1)
            if g not in declared:
                raise PresentationSyntaxError(f"undeclared generator {g!r}", lineno, off + m.start() + 1)
            if g in values:
                raise PresentationSyntaxError(f"generator {g!r} assigned twice", lineno, off + m.start() + 1)
            values[g] = int(mm.group(2))
        missing = [g for g in gens if g not in values]
        if missing:
            raise PresentationSyntaxError(
                f"phi must list every generator; missing {missing}", lineno, off + len(phi_text) + 1
            )
        phi = CyclicClass(values)
        phi.check_homomorphism(p)
        if not phi.is_primitive:
            warnings.warn(
                f"class has divisibility {phi.divisibility()} and is not primitive",
                NonPrimitiveClassWarning,
                stacklevel=2,
            )
    return p, phi
