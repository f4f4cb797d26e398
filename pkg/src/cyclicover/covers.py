"""Finite cyclic covers along a class and rank-gradient brackets.

For G with primitive class phi and i >= 1, G_i is the kernel of
G -> Z -> Z/i.  Its Reidemeister-Schreier presentation uses the transversal
{1, t^-1, ..., t^-(i-1)} with t a generator of class 1.  A prefix u lies in
coset c = -phi(u) mod i, and the Schreier generator for (x, c) is
x_c = t^-c x t^c' with c' = c - phi(x) mod i; for phi(x) = 0 this is the
conjugate t^-c x t^c.  The only nontrivial generator coming from t is s = t^i.

Ranks are not computable.  Upper bounds are generator counts of greedily
Tietze-simplified presentations, lower bounds come from the abelianization.
The liminf defining the rank gradient can only be approached: the sequence
is reported as computed, with the running minimum of the upper ratios.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from .exactalg import format_rational
from .presentations import (
    CyclicClass,
    FreeWord,
    Presentation,
    PresentationError,
    abelianization,
    cyclically_reduce,
    ensure_stable_generator,
    invert,
    power,
)

__all__ = [
    "CoverPresentation",
    "RankBound",
    "RankBoundSequence",
    "cyclic_cover_presentation",
    "kernel_cover",
    "tietze_simplify",
    "rank_lower_bound",
    "rank_gradient_sequence",
    "free_kernel_rank",
    "relabel_generators",
    "index_one_relabeling",
    "LENGTH_LIMIT",
]

LENGTH_LIMIT = 10**6
DEFAULT_MAX_PASSES = 100_000


@dataclass(frozen=True)
class CoverPresentation:
    index: int
    presentation: Presentation
    naming: Mapping[tuple[str, int], str]
    power_generator: str
    stable: str

    @property
    def generator_count(self) -> int:
        return len(self.presentation.generators)

    @property
    def relator_count(self) -> int:
        return len(self.presentation.relators)


def _cover_names(p: Presentation, stable: str, i: int) -> tuple[dict[tuple[str, int], str], str]:
    naming: dict[tuple[str, int], str] = {}
    taken: set[str] = set()
    for g in p.generators:
        if g == stable:
            continue
        for j in range(i):
            name = f"{g}_{j}"
            while name in taken:
                name += "_"
            naming[(g, j)] = name
            taken.add(name)
    s = "s"
    while s in taken:
        s += "_"
    return naming, s


def _rewrite(
    w: FreeWord,
    start: int,
    i: int,
    phi: CyclicClass,
    stable: str,
    naming: Mapping[tuple[str, int], str],
    s: str,
) -> FreeWord:
    """Rewrite t^-start w t^start over the Schreier generators."""
    out: list[tuple[str, int]] = []
    c = start
    for g, e in w.letters:
        if g == stable:
            # t read at coset 0 (t^-1 read at coset i-1) wraps and emits s^(+-1)
            if e > 0:
                wraps = c // i - (c - e) // i
            else:
                wraps = -((c - e) // i - c // i)
            if wraps:
                out.append((s, wraps))
            c = (c - e) % i
            continue
        v = phi.values[g] % i
        if v == 0:
            out.append((naming[(g, c)], e))
            continue
        for _ in range(abs(e)):
            if e > 0:
                out.append((naming[(g, c)], 1))
                c = (c - v) % i
            else:
                c = (c + v) % i
                out.append((naming[(g, c)], -1))
    return FreeWord(tuple(out))


def cyclic_cover_presentation(p: Presentation, phi: CyclicClass, i: int) -> CoverPresentation:
    """Reidemeister-Schreier presentation of Ker(G -> Z -> Z/i).

    A generator of class 1 is added first when none exists.
    """
    if i < 1:
        raise ValueError(f"cover index must be positive, got {i}")
    phi.check_homomorphism(p)
    p, phi, stable = ensure_stable_generator(p, phi)
    naming, s = _cover_names(p, stable, i)
    gens = (s,) + tuple(naming[(g, j)] for g in p.generators if g != stable for j in range(i))
    rels = []
    for r in p.relators:
        for j in range(i):
            rels.append(_rewrite(r, j, i, phi, stable, naming, s))
    return CoverPresentation(i, Presentation(gens, tuple(rels)), naming, s, stable)


def kernel_cover(p: Presentation, psi: CyclicClass, i: int) -> CoverPresentation:
    """Cover for the kernel of G -> Z -> Z/i along a possibly non-primitive class.

    If psi has divisibility m then psi = m phi and the kernel is the index
    lcm(m, i)/m cyclic cover along phi.
    """
    if i < 1:
        raise ValueError(f"cover index must be positive, got {i}")
    m = psi.divisibility()
    if m == 0:
        raise PresentationError("the zero class has no cyclic covers")
    return cyclic_cover_presentation(p, psi.primitive_part(), i // gcd(m, i))


# ---------------------------------------------------------------------------
# Tietze simplification

def _substitute(w: FreeWord, g: str, sol: FreeWord) -> FreeWord:
    parts: list[tuple[str, int]] = []
    for h, e in w.letters:
        if h == g:
            parts.extend(power(sol, e).letters)
        else:
            parts.append((h, e))
    return cyclically_reduce(FreeWord(tuple(parts)))


def _solve_for(r: FreeWord, g: str) -> FreeWord:
    """Given relator r with a single occurrence of g, return w with g = w."""
    letters = list(r.letters)
    k = next(idx for idx, (h, _) in enumerate(letters) if h == g)
    e = letters[k][1]
    rest = FreeWord(tuple(letters[k + 1:] + letters[:k]))
    return invert(rest) if e == 1 else rest


def tietze_simplify(
    p: Presentation,
    max_passes: int = DEFAULT_MAX_PASSES,
    length_limit: int = LENGTH_LIMIT,
) -> Presentation:
    """Greedy generator elimination.

    Each pass drops empty and duplicate relators, then takes the shortest
    relator (ties broken by generator order) that contains some generator
    exactly once, solves for the earliest such generator and substitutes it
    everywhere.  An elimination that would push the total relator length
    past ``length_limit`` is skipped.
    """
    gens = list(p.generators)
    rels = list(p.relators)
    skipped: set[str] = set()
    for _ in range(max_passes):
        seen = set()
        kept = []
        for r in rels:
            if r.letters and r.letters not in seen:
                seen.add(r.letters)
                kept.append(r)
        rels = kept
        pos = {g: k for k, g in enumerate(gens)}
        order = sorted(
            range(len(rels)),
            key=lambda k: (len(rels[k]), [pos[h] for h, _ in rels[k].letters]),
        )
        eliminated = False
        for k in order:
            r = rels[k]
            candidates = sorted(
                (g for g in r.generators() if g not in skipped and r.occurrences(g) == 1),
                key=pos.__getitem__,
            )
            for g in candidates:
                sol = _solve_for(r, g)
                estimate = sum(
                    len(q) + q.occurrences(g) * (len(sol) - 1)
                    for j, q in enumerate(rels) if j != k
                )
                if estimate > length_limit:
                    skipped.add(g)
                    continue
                rels = [_substitute(q, g, sol) for j, q in enumerate(rels) if j != k]
                gens.remove(g)
                eliminated = True
                break
            if eliminated:
                break
        if not eliminated:
            break
    return Presentation(tuple(gens), tuple(r for r in rels if r.letters))


# ---------------------------------------------------------------------------
# rank bounds

def rank_lower_bound(p: Presentation) -> int:
    """Minimal generator count of the abelianization."""
    return abelianization(p).cokernel_generators()


@dataclass(frozen=True)
class RankBound:
    index: int
    lower: int
    upper: int

    @property
    def lower_ratio(self) -> Fraction:
        return Fraction(self.lower, self.index)

    @property
    def upper_ratio(self) -> Fraction:
        return Fraction(self.upper, self.index)

    def to_json(self) -> dict:
        return {
            "i": self.index,
            "lb": self.lower,
            "ub": self.upper,
            "lbRatio": format_rational(self.lower_ratio),
            "ubRatio": format_rational(self.upper_ratio),
        }


@dataclass(frozen=True)
class RankBoundSequence:
    entries: tuple[RankBound, ...]

    @property
    def running_min_upper_ratio(self) -> Fraction:
        return min(e.upper_ratio for e in self.entries)

    def running_minima(self) -> list[Fraction]:
        out, best = [], None
        for e in self.entries:
            best = e.upper_ratio if best is None else min(best, e.upper_ratio)
            out.append(best)
        return out

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "minUbRatio": format_rational(self.running_min_upper_ratio),
        }


def _bound_at(args) -> RankBound:
    p, phi, i, max_passes = args
    cover = cyclic_cover_presentation(p, phi, i)
    simple = tietze_simplify(cover.presentation, max_passes=max_passes)
    return RankBound(i, rank_lower_bound(simple), len(simple.generators))


def rank_gradient_sequence(
    p: Presentation,
    phi: CyclicClass,
    N: int,
    jobs: int = 1,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> RankBoundSequence:
    """Rank brackets for G_1, ..., G_N.

    ``jobs > 1`` evaluates indices in worker processes; the output order is
    by index either way.
    """
    if N < 1:
        raise ValueError(f"maximum index must be at least 1, got {N}")
    if not phi.is_primitive:
        raise PresentationError("class is not primitive")
    work = [(p, phi, i, max_passes) for i in range(1, N + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_bound_at, work))
    else:
        entries = [_bound_at(w) for w in work]
    return RankBoundSequence(tuple(entries))


def free_kernel_rank(n: int, m: int, i: int) -> tuple[int, int]:
    """(index, rank) of Ker(F_n -> Z -> Z/i) for a class of divisibility m.

    The index is lcm(m, i)/m and Schreier's formula gives the rank
    index * (n - 1) + 1.
    """
    if n < 1 or m < 1 or i < 1:
        raise ValueError("n, m and i must all be positive")
    index = i // gcd(m, i)
    return index, index * (n - 1) + 1


def relabel_generators(p: Presentation, mapping: Mapping[str, str]) -> Presentation:
    gens = tuple(mapping.get(g, g) for g in p.generators)
    rels = tuple(FreeWord(tuple((mapping.get(g, g), e) for g, e in r.letters)) for r in p.relators)
    return Presentation(gens, rels)


def index_one_relabeling(cover: CoverPresentation) -> dict[str, str]:
    """Names mapping the index-1 cover back onto the original generators."""
    out = {name: g for (g, _), name in cover.naming.items()}
    out[cover.power_generator] = cover.stable
    return out

