"""Classification of numerically exceptional pairs and restriction data.

A pair (E, F) of positive-rank classes with chi(E,E) = chi(F,F) = 1 and
chi(F,E) = 0 falls into exactly one of four types, decided by the
anticanonical slope and, at equal slopes, by whether the difference
C = c1(F) - c1(E) is a connected effective -2-class:

    mu(E) < mu(F)   hom   (dim chi(E,F) > 0)
    mu(E) > mu(F)   ext   (dim -chi(E,F) > 0)
    mu(E) = mu(F)   singular if C is a connected effective root, else zero

The classification trusts the chi-level preconditions as certifying
genuine exceptionality; outputs are "numerically" hom/ext/..., nothing
more is claimed.

The module also computes restriction splitting types on an exceptional
curve.  A rigid restriction of rank r and degree deg splits as
alpha*O(s-1) + beta*O(s) for the unique (alpha, s) with beta >= 1, and
the rotate-and-twist index of a slope-ordered list is the first rotation
placing every member's splitting degrees inside two adjacent integers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .chern import KClass, euler_form, slope_mu, twist
from .errors import DomainError, InvalidInputError, InvariantViolationError
from .picard import (
    Surface,
    canonical_divisor,
    dot,
    exceptional_divisor,
    intersect,
    is_connected_effective_root,
)


class PairKind(enum.Enum):
    HOM = "hom"
    EXT = "ext"
    ZERO = "zero"
    SINGULAR = "singular"


@dataclass(frozen=True)
class PairType:
    """Pair type with pinned dimensions: hom/ext carry chi-sized dims,
    singular always carries (h^0, h^1) = (1, 1), zero carries none."""

    kind: PairKind
    dims: tuple[int, ...]

    def __post_init__(self):
        if self.kind in (PairKind.HOM, PairKind.EXT):
            if len(self.dims) != 1 or self.dims[0] <= 0:
                raise InvalidInputError(f"{self.kind.value} pair needs a positive dim")
        elif self.kind is PairKind.ZERO:
            if self.dims != ():
                raise InvalidInputError("zero pair carries no dims")
        elif self.dims != (1, 1):
            raise InvalidInputError("singular pair dims are pinned to (1, 1)")

    @staticmethod
    def hom(dim: int) -> "PairType":
        return PairType(PairKind.HOM, (dim,))

    @staticmethod
    def ext(dim: int) -> "PairType":
        return PairType(PairKind.EXT, (dim,))

    @staticmethod
    def zero() -> "PairType":
        return PairType(PairKind.ZERO, ())

    @staticmethod
    def singular() -> "PairType":
        return PairType(PairKind.SINGULAR, (1, 1))


def require_exceptional_pair(S: Surface, E: KClass, F: KClass) -> None:
    """chi(E,E) = chi(F,F) = 1 and chi(F,E) = 0, the numerical shadow of an
    exceptional pair."""
    if euler_form(S, E, E) != 1 or euler_form(S, F, F) != 1:
        raise InvalidInputError("not a numerically exceptional pair: chi(X,X) != 1")
    if euler_form(S, F, E) != 0:
        raise InvalidInputError("not a numerically exceptional pair: chi(F,E) != 0")


def classify_pair(S: Surface, E: KClass, F: KClass) -> PairType:
    """Type of the numerically exceptional pair (E, F) of positive ranks."""
    if E.r <= 0 or F.r <= 0:
        raise InvalidInputError("not a numerically exceptional pair: rank <= 0")
    require_exceptional_pair(S, E, F)
    H = S.anticanonical_class()
    mu_e = slope_mu(S, E, H)
    mu_f = slope_mu(S, F, H)
    chi_ef = euler_form(S, E, F)
    if mu_e < mu_f:
        if chi_ef <= 0:
            raise InvariantViolationError("hom pair with chi(E,F) <= 0")
        return PairType.hom(chi_ef)
    if mu_e > mu_f:
        if chi_ef >= 0:
            raise InvariantViolationError("ext pair with chi(E,F) >= 0")
        return PairType.ext(-chi_ef)
    C = F.c1 - E.c1
    if C.is_zero():
        raise InvalidInputError(
            "equal-slope pair with identical numerics is not classifiable"
        )
    K = canonical_divisor(S.d)
    if E.r != F.r or dot(C, C) != -2 or dot(C, K) != 0:
        raise InvariantViolationError(
            "equal-slope pair fails the forced -2-class equations "
            f"(r {E.r} vs {F.r}, C^2 = {dot(C, C)}, C.K = {dot(C, K)})"
        )
    if is_connected_effective_root(S, C):
        return PairType.singular()
    return PairType.zero()


def splitting_type(r: int, deg: int) -> tuple[int, int]:
    """The unique (alpha, s) with alpha*(s-1) + (r-alpha)*s = deg and
    0 <= alpha < r, encoding a restriction alpha*O(s-1) + beta*O(s)."""
    if not isinstance(r, int) or r < 1:
        raise InvalidInputError("splitting type needs rank >= 1")
    s = -((-deg) // r)  # ceil(deg / r)
    alpha = r * s - deg
    return alpha, s


def splitting_degrees(r: int, deg: int) -> set[int]:
    """Degrees occurring in the splitting, a subset of {s-1, s}."""
    alpha, s = splitting_type(r, deg)
    degrees = {s}
    if alpha > 0:
        degrees.add(s - 1)
    return degrees


def restriction_degree(S: Surface, E: KClass, e_index: int) -> int:
    """deg of E restricted to e_i, i.e. c1(E).e_i."""
    e = exceptional_divisor(S.d, e_index)
    return intersect(S, E.c1, e)


class DecompositionType(enum.Enum):
    ZERO_TYPE = "zero_type"
    FIRST_TYPE = "first_type"
    OTHER = "other"


def decomposition_type(
    S: Surface, E: KClass, F: KClass, e_index: int
) -> DecompositionType:
    """Joint splitting shape of an ordered pair on e_i.

    zero type: all degrees of E and F fit in two adjacent integers.
    first type: E splits in {t, t+1}, F in {t+1, t+2}, with both extreme
    multiplicities nonzero.
    """
    if E.r <= 0 or F.r <= 0:
        raise DomainError("decomposition type needs positive ranks")
    deg_e = splitting_degrees(E.r, restriction_degree(S, E, e_index))
    deg_f = splitting_degrees(F.r, restriction_degree(S, F, e_index))
    lo = min(deg_e | deg_f)
    hi = max(deg_e | deg_f)
    if hi - lo <= 1:
        return DecompositionType.ZERO_TYPE
    if (
        hi - lo == 2
        and max(deg_e) <= lo + 1
        and min(deg_f) >= lo + 1
        and lo in deg_e
        and hi in deg_f
    ):
        return DecompositionType.FIRST_TYPE
    return DecompositionType.OTHER


def rotation_index(
    S: Surface, classes: list[KClass], e_index: int
) -> tuple[int, tuple[int, int]]:
    """Smallest i such that (E_i, ..., E_m, E_1(-K), ..., E_{i-1}(-K)) has
    all splitting degrees inside two adjacent integers.

    Returns (i, (lo, hi)), the 1-based index and the observed degree
    window.  Requires the anticanonical slopes to be strictly increasing.
    """
    if not classes:
        raise InvalidInputError("rotation index needs a nonempty list")
    H = S.anticanonical_class()
    slopes = [slope_mu(S, c, H) for c in classes]
    if any(a >= b for a, b in zip(slopes, slopes[1:])):
        raise DomainError("rotation index needs strictly increasing slopes")
    minus_k = -canonical_divisor(S.d)
    for i in range(1, len(classes) + 1):
        rotated = classes[i - 1 :] + [twist(S, c, minus_k) for c in classes[: i - 1]]
        degrees: set[int] = set()
        for c in rotated:
            degrees |= splitting_degrees(c.r, restriction_degree(S, c, e_index))
        if max(degrees) - min(degrees) <= 1:
            return i, (min(degrees), max(degrees))
    raise DomainError("no rotation gives a zero-type degree window")
