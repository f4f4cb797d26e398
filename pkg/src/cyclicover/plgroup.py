"""Generalized Thompson groups F(l, Z[1/(n1...nk)], <n1,...,nk>).

Elements are piecewise-linear homeomorphisms of [0, l] with rational
breakpoints, modeled exactly with ``Fraction``.  Slopes are tracked as
integer exponent vectors over the basis n1, ..., nk.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import (
    as_rational,
    format_rational,
    in_localized_ring,
    prime_factors,
    smith_normal_form,
)

__all__ = [
    "SlopeBasis",
    "SlopeExponent",
    "PLMap",
    "GroupSpec",
    "Violation",
    "ValidationReport",
    "IndependenceCertificate",
    "CharacterDescriptor",
    "CertificateError",
    "slope_membership",
    "validate",
    "compose",
    "invert",
    "identity",
    "lambda_char",
    "rho_char",
    "fixed_points",
    "mirror",
    "irreducibility_witness",
    "independence_witness",
    "independence_certificate",
    "exceptional_characters",
]

Point = tuple[Fraction, Fraction]


class CertificateError(RuntimeError):
    """A witness construction failed its postconditions."""


# ---------------------------------------------------------------------------
# slope lattice

def _rational_solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of A x = b (A has full column rank) or None."""
    rows, cols = len(A), len(A[0]) if A else 0
    M = [list(A[r]) + [b[r]] for r in range(rows)]
    piv_cols = []
    r = 0
    for c in range(cols):
        pivot = next((k for k in range(r, rows) if M[k][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for k in range(rows):
            if k != r and M[k][c] != 0:
                f = M[k][c]
                M[k] = [x - f * y for x, y in zip(M[k], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[k][cols] != 0 for k in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for k, c in enumerate(piv_cols):
        x[c] = M[k][cols]
    return x


def _integer_relation(vectors: Sequence[Sequence[int]]) -> list[int] | None:
    """Nonzero integer c with sum c_i v_i = 0, or None if independent."""
    k = len(vectors)
    dim = len(vectors[0]) if vectors else 0
    # columns = vectors; find kernel of the dim x k matrix
    M = [[Fraction(vectors[i][d]) for i in range(k)] for d in range(dim)]
    piv = []
    r = 0
    for c in range(k):
        p = next((j for j in range(r, dim) if M[j][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for j in range(dim):
            if j != r and M[j][c] != 0:
                f = M[j][c]
                M[j] = [x - f * y for x, y in zip(M[j], M[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(k) if c not in piv]
    if not free:
        return None
    f = free[0]
    sol = [Fraction(0)] * k
    sol[f] = Fraction(1)
    for row, c in enumerate(piv):
        sol[c] = -M[row][f]
    den = math.lcm(*(x.denominator for x in sol))
    ints = [int(x * den) for x in sol]
    g = math.gcd(*ints)
    return [x // g for x in ints]


@dataclass(frozen=True)
class SlopeBasis:
    """Multiplicatively independent integers n1, ..., nk >= 2."""

    basis: tuple[int, ...]
    primes: tuple[int, ...] = field(init=False)
    exponent_matrix: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        basis = tuple(int(n) for n in self.basis)
        if not basis:
            raise ValueError("slope basis must be nonempty")
        if any(n < 2 for n in basis):
            raise ValueError(f"basis elements must be integers >= 2, got {basis}")
        factors = [prime_factors(n) for n in basis]
        primes = tuple(sorted(set().union(*factors)))
        matrix = tuple(tuple(f.get(p, 0) for p in primes) for f in factors)
        if smith_normal_form(matrix).rank < len(basis):
            rel = _integer_relation(matrix)
            lhs = " * ".join(f"{n}^{c}" for n, c in zip(basis, rel) if c)
            raise ValueError(f"basis {basis} is multiplicatively dependent: {lhs} = 1")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "exponent_matrix", matrix)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def product(self) -> int:
        return math.prod(self.basis)

    def value(self, j: SlopeExponent | Sequence[int]) -> Fraction:
        exps = j.j if isinstance(j, SlopeExponent) else tuple(j)
        out = Fraction(1)
        for n, e in zip(self.basis, exps):
            out *= Fraction(n) ** e
        return out


@dataclass(frozen=True)
class SlopeExponent:
    j: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "j", tuple(int(x) for x in self.j))

    @classmethod
    def zero(cls, k: int) -> SlopeExponent:
        return cls((0,) * k)

    def __add__(self, other: SlopeExponent) -> SlopeExponent:
        return SlopeExponent(tuple(a + b for a, b in zip(self.j, other.j)))

    def __neg__(self) -> SlopeExponent:
        return SlopeExponent(tuple(-a for a in self.j))

    def __sub__(self, other: SlopeExponent) -> SlopeExponent:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.j)

    def __iter__(self):
        return iter(self.j)


def slope_membership(s, basis: SlopeBasis) -> SlopeExponent | None:
    """Exponent vector j with prod n_i^j_i = s, or None when s is not in the group."""
    s = as_rational(s)
    if s <= 0:
        raise ValueError(f"slopes must be positive, got {s}")
    vec: dict[int, int] = {}
    for part, sign in ((s.numerator, 1), (s.denominator, -1)):
        if part == 1:
            continue
        for p, e in prime_factors(part).items():
            vec[p] = vec.get(p, 0) + sign * e
    if any(p not in basis.primes for p in vec):
        return None
    # solve E^T j = v over the rationals, then insist on integrality
    E = basis.exponent_matrix
    A = [[Fraction(E[i][c]) for i in range(basis.rank)] for c in range(len(basis.primes))]
    b = [Fraction(vec.get(p, 0)) for p in basis.primes]
    sol = _rational_solve(A, b)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return SlopeExponent(tuple(int(x) for x in sol))


@dataclass(frozen=True)
class GroupSpec:
    """Parameters (l, basis) of F(l, Z[1/(n1...nk)], <n1,...,nk>)."""

    ell: Fraction
    basis: SlopeBasis

    def __post_init__(self):
        ell = as_rational(self.ell)
        basis = self.basis if isinstance(self.basis, SlopeBasis) else SlopeBasis(tuple(self.basis))
        if ell <= 0:
            raise ValueError(f"interval length must be positive, got {ell}")
        if not in_localized_ring(ell, basis.primes):
            raise ValueError(
                f"interval length {format_rational(ell)} is not in Z[1/{basis.product}]"
            )
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "basis", basis)

    @classmethod
    def of(cls, ell, basis: Iterable[int]) -> GroupSpec:
        return cls(as_rational(ell), SlopeBasis(tuple(basis)))

    @property
    def n(self) -> int:
        return self.basis.product

    def exponent(self, nu) -> SlopeExponent:
        """Accept a SlopeExponent, an exponent sequence or a rational slope."""
        if isinstance(nu, SlopeExponent):
            if len(nu.j) != self.basis.rank:
                raise ValueError("exponent vector has the wrong length")
            return nu
        if isinstance(nu, (tuple, list)):
            return self.exponent(SlopeExponent(tuple(nu)))
        j = slope_membership(as_rational(nu), self.basis)
        if j is None:
            raise ValueError(f"{format_rational(as_rational(nu))} is not in <{self.basis.basis}>")
        return j

    def label(self) -> str:
        b = ",".join(map(str, self.basis.basis))
        return f"F({format_rational(self.ell)}, Z[1/{self.n}], <{b}>)"


# ---------------------------------------------------------------------------
# PL maps

@dataclass(frozen=True)
class PLMap:
    """Orientation-preserving PL homeomorphism of [0, ell] in canonical form.

    Breakpoints are strictly increasing in both coordinates, start at (0, 0)
    and end at (ell, ell); collinear interior points are removed.
    """

    ell: Fraction
    breakpoints: tuple[Point, ...]

    def __post_init__(self):
        ell = as_rational(self.ell)
        pts = [(as_rational(x), as_rational(y)) for x, y in self.breakpoints]
        if ell <= 0:
            raise ValueError("interval length must be positive")
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (ell, ell):
            raise ValueError("breakpoints must start at (0,0) and end at (ell,ell)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise ValueError(
                    f"breakpoints must increase strictly: ({x0}, {y0}) -> ({x1}, {y1})"
                )
        canon = [pts[0]]
        for k in range(1, len(pts) - 1):
            (xa, ya), (xb, yb), (xc, yc) = canon[-1], pts[k], pts[k + 1]
            if (yb - ya) * (xc - xb) != (yc - yb) * (xb - xa):
                canon.append(pts[k])
        canon.append(pts[-1])
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "breakpoints", tuple(canon))

    @classmethod
    def from_slopes(cls, ell, xs: Sequence, slopes: Sequence) -> PLMap:
        """Build from interior breakpoint x-coordinates and segment slopes."""
        ell = as_rational(ell)
        xs = [Fraction(0)] + [as_rational(x) for x in xs] + [ell]
        pts = [(Fraction(0), Fraction(0))]
        for (xa, xb), m in zip(zip(xs, xs[1:]), slopes):
            pts.append((xb, pts[-1][1] + as_rational(m) * (xb - xa)))
        return cls(ell, tuple(pts))

    @property
    def segment_slopes(self) -> tuple[Fraction, ...]:
        b = self.breakpoints
        return tuple((y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(b, b[1:]))

    @property
    def interior(self) -> tuple[Point, ...]:
        return self.breakpoints[1:-1]

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        if not 0 <= x <= self.ell:
            raise ValueError(f"{x} outside [0, {self.ell}]")
        b = self.breakpoints
        for (x0, y0), (x1, y1) in zip(b, b[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError("unreachable")

    def preimage(self, y) -> Fraction:
        return invert(self)(y)

    def is_identity(self) -> bool:
        return len(self.breakpoints) == 2

    def to_json(self) -> dict:
        return {
            "ell": format_rational(self.ell),
            "breakpoints": [[format_rational(x), format_rational(y)] for x, y in self.breakpoints],
        }

    @classmethod
    def from_json(cls, doc) -> PLMap:
        return cls(as_rational(doc["ell"]),
                   tuple((as_rational(x), as_rational(y)) for x, y in doc["breakpoints"]))

    def __str__(self) -> str:
        pts = ", ".join(f"({format_rational(x)}, {format_rational(y)})" for x, y in self.breakpoints)
        return f"PLMap[0,{format_rational(self.ell)}]: {pts}"


def identity(ell) -> PLMap:
    ell = as_rational(ell)
    return PLMap(ell, ((Fraction(0), Fraction(0)), (ell, ell)))


def invert(f: PLMap) -> PLMap:
    return PLMap(f.ell, tuple((y, x) for x, y in f.breakpoints))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """f o g (apply g first)."""
    if f.ell != g.ell:
        raise ValueError(f"cannot compose maps of [0,{f.ell}] and [0,{g.ell}]")
    ginv = invert(g)
    xs = {x for x, _ in g.breakpoints}
    xs.update(ginv(x) for x, _ in f.breakpoints)
    pts = tuple((x, f(g(x))) for x in sorted(xs))
    return PLMap(f.ell, pts)


def mirror(f: PLMap) -> PLMap:
    """Conjugate by the reflection x -> ell - x; swaps the two endpoint slopes."""
    ell = f.ell
    return PLMap(ell, tuple((ell - x, ell - y) for x, y in reversed(f.breakpoints)))


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def validate(f: PLMap, spec: GroupSpec) -> ValidationReport:
    out: list[Violation] = []
    primes = spec.basis.primes
    if f.ell != spec.ell:
        out.append(Violation("interval", f"map acts on [0,{format_rational(f.ell)}], "
                                         f"group on [0,{format_rational(spec.ell)}]"))
    for x, y in f.interior:
        for name, c in (("x", x), ("y", y)):
            if not in_localized_ring(c, primes):
                bad = sorted(p for p in prime_factors(c.denominator) if p not in primes)
                out.append(Violation(
                    "breakpoint",
                    f"breakpoint ({format_rational(x)}, {format_rational(y)}): {name}-coordinate "
                    f"denominator has prime(s) {bad} not dividing {spec.n}",
                ))
    for k, m in enumerate(f.segment_slopes):
        if slope_membership(m, spec.basis) is None:
            out.append(Violation(
                "slope", f"segment {k} has slope {format_rational(m)} not in <{','.join(map(str, spec.basis.basis))}>"
            ))
    return ValidationReport(tuple(out))


# ---------------------------------------------------------------------------
# characters and fixed points

def _char(slope: Fraction, basis: SlopeBasis) -> SlopeExponent:
    j = slope_membership(slope, basis)
    if j is None:
        raise ValueError(f"slope {format_rational(slope)} is not in the slope group")
    return j


def lambda_char(f: PLMap, basis: SlopeBasis) -> SlopeExponent:
    """Exponent vector of the slope at 0."""
    return _char(f.segment_slopes[0], basis)


def rho_char(f: PLMap, basis: SlopeBasis) -> SlopeExponent:
    """Exponent vector of the slope at ell."""
    return _char(f.segment_slopes[-1], basis)


def fixed_points(f: PLMap) -> list[tuple[Fraction, Fraction]]:
    """Solution set of f(x) = x as sorted disjoint closed intervals (a, b).

    Isolated fixed points appear as degenerate intervals (a, a).
    """
    pieces: list[tuple[Fraction, Fraction]] = []
    b = f.breakpoints
    for (x0, y0), (x1, y1) in zip(b, b[1:]):
        d0, d1 = y0 - x0, y1 - x1
        if d0 == 0 and d1 == 0:
            pieces.append((x0, x1))
        elif d0 == 0:
            pieces.append((x0, x0))
        elif d1 == 0:
            pieces.append((x1, x1))
        elif (d0 < 0) != (d1 < 0):
            r = x0 + (x1 - x0) * d0 / (d0 - d1)
            pieces.append((r, r))
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in sorted(pieces):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def has_interior_fixed_point(f: PLMap) -> bool:
    return any(not (hi == lo and lo in (0, f.ell)) for lo, hi in fixed_points(f))


# ---------------------------------------------------------------------------
# witness constructions

def _check_member(f: PLMap, spec: GroupSpec, what: str) -> None:
    report = validate(f, spec)
    if not report.valid:
        raise CertificateError(f"{what} is not in {spec.label()}: "
                               + "; ".join(v.detail for v in report.violations))


def _bump(L: Fraction, nu: Fraction, n: int) -> list[Point]:
    """Breakpoints of the three-segment map of [0, L] with slopes nu, 1, 1/nu."""
    if nu > 1:
        p1 = (L / (nu * n), L / n)
        p2 = (L - L / n, L - L / (nu * n))
    else:
        p1 = (L / n, nu * L / n)
        p2 = (L - nu * L / n, L - L / n)
    return [(Fraction(0), Fraction(0)), p1, p2, (L, L)]


def irreducibility_witness(spec: GroupSpec, nu) -> PLMap:
    """Element with slopes nu, 1, 1/nu whose only fixed points are 0 and ell."""
    j = spec.exponent(nu)
    value = spec.basis.value(j)
    if value <= 1:
        raise ValueError(f"irreducibility witness needs nu > 1, got {format_rational(value)}")
    g = PLMap(spec.ell, tuple(_bump(spec.ell, value, spec.n)))
    _check_member(g, spec, "irreducibility witness")
    if fixed_points(g) != [(0, 0), (spec.ell, spec.ell)]:
        raise CertificateError("irreducibility witness has an interior fixed point")
    return g


def independence_witness(spec: GroupSpec, nu, end: str = "left") -> PLMap:
    """Element with slope nu at one end and slope 1 at the other.

    The bump is built on [0, L] with L = ell - ell/n and extended by the
    identity on [L, ell]; ``end="right"`` reflects it.
    """
    if end not in ("left", "right"):
        raise ValueError(f"end must be 'left' or 'right', got {end!r}")
    j = spec.exponent(nu)
    value = spec.basis.value(j)
    if value == 1:
        raise ValueError("independence witness needs nu != 1")
    ell, n = spec.ell, spec.n
    L = ell - ell / n
    h = PLMap(ell, tuple(_bump(L, value, n) + [(ell, ell)]))
    if end == "right":
        h = mirror(h)
    _check_member(h, spec, "independence witness")
    k = spec.basis.rank
    lam, rho = lambda_char(h, spec.basis), rho_char(h, spec.basis)
    want_l, want_r = (j, SlopeExponent.zero(k)) if end == "left" else (SlopeExponent.zero(k), j)
    if lam != want_l or rho != want_r:
        raise CertificateError(
            f"independence witness has characters lambda={lam.j}, rho={rho.j}; "
            f"expected {want_l.j}, {want_r.j}"
        )
    return h


@dataclass(frozen=True)
class WitnessRecord:
    nu: int
    end: str
    element: PLMap
    lambda_exponent: SlopeExponent
    rho_exponent: SlopeExponent
    valid: bool

    def to_json(self) -> dict:
        return {
            "nu": self.nu,
            "end": self.end,
            "lambda": list(self.lambda_exponent.j),
            "rho": list(self.rho_exponent.j),
            "valid": self.valid,
            "map": self.element.to_json(),
        }


@dataclass(frozen=True)
class IndependenceCertificate:
    spec: GroupSpec
    witnesses: tuple[WitnessRecord, ...]
    irreducible: PLMap
    irreducible_fixed_points: tuple[tuple[Fraction, Fraction], ...]
    lambda_surjects_from_ker_rho: bool
    rho_surjects_from_ker_lambda: bool
    irreducibility_ok: bool

    @property
    def passed(self) -> bool:
        return (self.lambda_surjects_from_ker_rho and self.rho_surjects_from_ker_lambda
                and self.irreducibility_ok and all(w.valid for w in self.witnesses))

    def to_json(self) -> dict:
        return {
            "group": self.spec.label(),
            "ell": format_rational(self.spec.ell),
            "basis": list(self.spec.basis.basis),
            "passed": self.passed,
            "lambdaSurjectsFromKerRho": self.lambda_surjects_from_ker_rho,
            "rhoSurjectsFromKerLambda": self.rho_surjects_from_ker_lambda,
            "irreducible": {
                "ok": self.irreducibility_ok,
                "map": self.irreducible.to_json(),
                "fixedPoints": [[format_rational(a), format_rational(b)]
                                for a, b in self.irreducible_fixed_points],
            },
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def independence_certificate(spec: GroupSpec) -> IndependenceCertificate:
    """Concrete check that lambda and rho are independent and G is irreducible.

    For every basis element n_i a left witness (lambda = n_i, rho = 1) and a
    right witness (lambda = 1, rho = n_i) are built.  Their character values
    are the unit vectors of Z^k, so lambda restricted to Ker rho hits every
    generator of lambda(G) and symmetrically.
    """
    k = spec.basis.rank
    records = []
    left_images, right_images = [], []
    for idx, n_i in enumerate(spec.basis.basis):
        unit = SlopeExponent(tuple(int(a == idx) for a in range(k)))
        for end in ("left", "right"):
            h = independence_witness(spec, unit, end)
            lam, rho = lambda_char(h, spec.basis), rho_char(h, spec.basis)
            ok = validate(h, spec).valid
            records.append(WitnessRecord(n_i, end, h, lam, rho, ok))
            if end == "left" and rho.is_zero():
                left_images.append(lam.j)
            if end == "right" and lam.is_zero():
                right_images.append(rho.j)

    def spans_lattice(vectors) -> bool:
        if len(vectors) < k:
            return False
        snf = smith_normal_form(vectors)
        return snf.rank == k and all(d == 1 for d in snf.diagonal[:k])

    g = irreducibility_witness(spec, SlopeExponent(tuple(int(a == 0) for a in range(k))))
    fps = tuple(fixed_points(g))
    return IndependenceCertificate(
        spec=spec,
        witnesses=tuple(records),
        irreducible=g,
        irreducible_fixed_points=fps,
        lambda_surjects_from_ker_rho=spans_lattice(left_images),
        rho_surjects_from_ker_lambda=spans_lattice(right_images),
        irreducibility_ok=fps == ((0, 0), (spec.ell, spec.ell)),
    )


@dataclass(frozen=True)
class CharacterDescriptor:
    """The character log(chi) for chi the slope at one endpoint.

    On an element f it evaluates to <exponent(f), (log n_1, ..., log n_k)>.
    """

    name: str
    end: str
    basis: tuple[int, ...]

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(math.log(n) for n in self.basis)

    @property
    def lattice_rank(self) -> int:
        return len(self.basis)

    def exponent(self, f: PLMap) -> SlopeExponent:
        b = SlopeBasis(self.basis)
        return lambda_char(f, b) if self.end == "left" else rho_char(f, b)

    def __call__(self, f: PLMap) -> float:
        return sum(j * w for j, w in zip(self.exponent(f).j, self.weights))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "end": self.end,
            "exponentLattice": f"Z^{self.lattice_rank}",
            "weights": [f"log({n})" for n in self.basis],
        }


def exceptional_characters(
    spec: GroupSpec,
) -> tuple[CharacterDescriptor, CharacterDescriptor, IndependenceCertificate]:
    """Descriptors of [log lambda] and [log rho] with the certificate they rest on.

    Nothing about the BNS invariant is computed here: once the certificate
    passes, these two classes are the exceptional characters by the
    Bieri-Neumann-Strebel theorem for irreducible PL groups with independent
    endpoint characters.
    """
    cert = independence_certificate(spec)
    if not cert.passed:
        raise CertificateError(f"independence certificate failed for {spec.label()}")
    b = spec.basis.basis
    return (
        CharacterDescriptor("log lambda", "left", b),
        CharacterDescriptor("log rho", "right", b),
        cert,
    )
