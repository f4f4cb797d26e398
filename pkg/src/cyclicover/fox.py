"""Fox calculus pushed forward along a class to Z[t^{+-1}].

Includes Alexander matrices, the Alexander polynomial and the end
coefficient test for ascending/descending HNN extensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .exactalg import LaurentMatrix, LaurentPoly, laurent_normalize, minors_gcd
from .presentations import (
    CyclicClass,
    FreeWord,
    Presentation,
    PresentationError,
)

__all__ = [
    "AlexanderMatrix",
    "HNNVerdict",
    "HNNEndReport",
    "NoStableGeneratorError",
    "fox_derivative",
    "fox_jacobian",
    "alexander_matrix",
    "alexander_polynomial",
    "hnn_end_test",
]


class NoStableGeneratorError(PresentationError):
    """No generator is sent to 1 by the class."""


def _geometric(start: int, step: int, count: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for k in range(count):
        d = start + k * step
        out[d] = out.get(d, 0) + 1
    return out


def fox_derivative(w: FreeWord, g: str, phi: CyclicClass) -> LaurentPoly:
    """phi(dw/dg) computed left to right with a running prefix degree."""
    if g not in phi.values:
        raise PresentationError(f"class is not defined on generator {g!r}")
    terms: dict[int, int] = {}
    prefix = 0
    for h, e in w.letters:
        try:
            v = phi.values[h]
        except KeyError:
            raise PresentationError(f"class is not defined on generator {h!r}") from None
        if h == g:
            if e > 0:
                # g^e contributes t^p + t^(p+v) + ... + t^(p+(e-1)v)
                for d, c in _geometric(prefix, v, e).items():
                    terms[d] = terms.get(d, 0) + c
            else:
                # g^-|e| contributes -(t^(p-v) + ... + t^(p-|e|v))
                for d, c in _geometric(prefix - v, -v, -e).items():
                    terms[d] = terms.get(d, 0) - c
        prefix += e * v
    return LaurentPoly.from_dict(terms)


def fox_jacobian(p: Presentation, phi: CyclicClass, drop_empty: bool = True) -> LaurentMatrix:
    """Matrix of phi(dr_i/dg_j) over all relators and generators."""
    rels = [r for r in p.relators if r.letters or not drop_empty]
    rows = [[fox_derivative(r, g, phi) for g in p.generators] for r in rels]
    return LaurentMatrix.from_rows(rows, len(p.generators))


@dataclass(frozen=True)
class AlexanderMatrix:
    matrix: LaurentMatrix
    stable: str
    column_order: tuple[str, ...]


def alexander_matrix(p: Presentation, phi: CyclicClass, stable: str | None = None) -> AlexanderMatrix:
    """Fox Jacobian with the stable generator's column removed.

    ``stable`` defaults to the first generator with class value 1.
    """
    phi.check_homomorphism(p)
    if not phi.is_primitive:
        raise PresentationError("class is not primitive")
    if stable is None:
        candidates = phi.stable_generators(p)
        if not candidates:
            raise NoStableGeneratorError(
                "no generator has class value 1; apply ensure_stable_generator first"
            )
        stable = candidates[0]
    elif phi.values.get(stable) != 1:
        raise NoStableGeneratorError(f"generator {stable!r} does not have class value 1")
    jac = fox_jacobian(p, phi)
    j = p.generators.index(stable)
    cols = tuple(g for g in p.generators if g != stable)
    return AlexanderMatrix(jac.delete_column(j), stable, cols)


def alexander_polynomial(p: Presentation, phi: CyclicClass) -> LaurentPoly:
    """Order of the Alexander module, normalized (min degree 0, positive top)."""
    am = alexander_matrix(p, phi)
    return laurent_normalize(minors_gcd(am.matrix, am.matrix.cols))


class HNNVerdict(str, Enum):
    ASCENDING_ONLY = "consistent-with-ascending-only"
    DESCENDING_ONLY = "consistent-with-descending-only"
    BOTH = "consistent-with-both"
    NEITHER = "neither"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HNNEndReport:
    polynomial: LaurentPoly
    bottom_coefficient: int
    top_coefficient: int
    bottom_is_unit: bool
    top_is_unit: bool
    verdict: HNNVerdict

    @property
    def ascending_possible(self) -> bool:
        return self.verdict in (HNNVerdict.ASCENDING_ONLY, HNNVerdict.BOTH)

    @property
    def descending_possible(self) -> bool:
        return self.verdict in (HNNVerdict.DESCENDING_ONLY, HNNVerdict.BOTH)

    def to_json(self) -> dict:
        return {
            "bottomCoefficient": str(self.bottom_coefficient),
            "topCoefficient": str(self.top_coefficient),
            "bottomIsUnit": self.bottom_is_unit,
            "topIsUnit": self.top_is_unit,
            "verdict": self.verdict.value,
        }


def hnn_end_test(delta: LaurentPoly) -> HNNEndReport:
    """End coefficient obstruction to ascending/descending splittings.

    With the stable letter sent to +1 and relators t^-1 A+ t A-^-1, an
    ascending extension has a unit constant coefficient in normalized form
    (BS(1,2) gives 2t - 1) and a descending one a unit top coefficient
    (BS(2,1) gives t - 2).  A non-unit end rules the corresponding splitting
    out; a unit end proves nothing.
    """
    delta = laurent_normalize(delta)
    if delta.is_zero():
        return HNNEndReport(delta, 0, 0, False, False, HNNVerdict.INCONCLUSIVE)
    bottom = delta.coeffs[0]
    top = delta.coeffs[-1]
    bottom_unit = abs(bottom) == 1
    top_unit = abs(top) == 1
    if bottom_unit and top_unit:
        verdict = HNNVerdict.BOTH
    elif bottom_unit:
        verdict = HNNVerdict.ASCENDING_ONLY
    elif top_unit:
        verdict = HNNVerdict.DESCENDING_ONLY
    else:
        verdict = HNNVerdict.NEITHER
    return HNNEndReport(delta, bottom, top, bottom_unit, top_unit, verdict)

