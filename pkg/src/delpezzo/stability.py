"""Exact slope comparison and Harder-Narasimhan coarsening.

Slopes are stored unreduced as (numerators, rank) so that comparison is
cross-multiplication (no division and no floats ever decide a tie) and
so that merging two slopes is just adding both parts -- the mediant,
which is the arithmetic engine behind the see-saw axiom: the slope of an
extension sits weakly between the slopes of its pieces.

The HN machinery acts on formal graded objects: ordered lists of
(K-class, multiplicity) quotients, top quotient first, each quotient
assumed semistable.  Coarsening merges adjacent blocks until block
slopes strictly increase from the top-quotient end to the sub end, the
unique such coarsening (the upper convex hull of the partial-sum
polygon, generalized to lexicographic slopes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .chern import KClass, vector_slope
from .errors import DomainError, InvalidInputError
from .picard import DivisorClass, Surface


@dataclass(frozen=True)
class SlopeVector:
    """Lexicographic slope (d_H/r, d_A/r, d_Delta/r) kept as exact numerators."""

    rank: int
    numerators: tuple[Fraction, ...]

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank <= 0:
            raise InvalidInputError("slope rank must be a positive integer")
        object.__setattr__(
            self, "numerators", tuple(Fraction(x) for x in self.numerators)
        )

    def __add__(self, other: "SlopeVector") -> "SlopeVector":
        if len(self.numerators) != len(other.numerators):
            raise InvalidInputError("slope vectors have different lengths")
        return SlopeVector(
            self.rank + other.rank,
            tuple(x + y for x, y in zip(self.numerators, other.numerators)),
        )

    def scaled(self, m: int) -> "SlopeVector":
        """The slope of m copies: same value, m-fold mediant weight."""
        if m <= 0:
            raise InvalidInputError("multiplicity must be positive")
        return SlopeVector(m * self.rank, tuple(m * x for x in self.numerators))

    def components(self) -> tuple[Fraction, ...]:
        return tuple(x / self.rank for x in self.numerators)

    def __lt__(self, other):
        return compare_slope(self, other) < 0

    def __le__(self, other):
        return compare_slope(self, other) <= 0

    def __gt__(self, other):
        return compare_slope(self, other) > 0

    def __ge__(self, other):
        return compare_slope(self, other) >= 0


def compare_slope(a: SlopeVector, b: SlopeVector) -> int:
    """-1, 0, +1 for a < b, a = b, a > b in the lexicographic order,
    decided component by component via cross-multiplication."""
    if len(a.numerators) != len(b.numerators):
        raise InvalidInputError("slope vectors have different lengths")
    for x, y in zip(a.numerators, b.numerators):
        t = x * b.rank - y * a.rank
        if t != 0:
            return 1 if t > 0 else -1
    return 0


@dataclass(frozen=True)
class GradedObject:
    """Formal graded object: quotients (class, multiplicity), top first.

    Read right-to-left this is the record (G_n, ..., G_1) of a filtration
    with G_1 the top quotient.  Every quotient must have positive rank.
    """

    quotients: tuple[tuple[KClass, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "quotients", tuple(self.quotients))
        if not self.quotients:
            raise InvalidInputError("graded object needs at least one quotient")
        for q, m in self.quotients:
            if q.r <= 0:
                raise DomainError("graded quotients must have positive rank")
            if not isinstance(m, int) or m < 1:
                raise InvalidInputError("multiplicities must be positive integers")

    def to_json(self) -> dict:
        return {
            "quotients": [
                {"class": q.to_json(), "mult": m} for q, m in self.quotients
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "GradedObject":
        if not isinstance(data, dict) or "quotients" not in data:
            raise InvalidInputError("graded-object JSON needs a 'quotients' key")
        quotients = []
        for item in data["quotients"]:
            quotients.append((KClass.from_json(item["class"]), int(item["mult"])))
        return GradedObject(tuple(quotients))


def _quotient_slope(S: Surface, q: KClass, m: int, A: DivisorClass) -> SlopeVector:
    return vector_slope(S, q, A).scaled(m)


def hn_coarsen(g: GradedObject, A: DivisorClass) -> GradedObject:
    """The unique coarsening by adjacent merges whose block slopes strictly
    increase from the top-quotient end (list start) to the sub end.

    Scans from the sub end with a merge stack; equal-slope neighbours are
    merged into one block.  A merged block becomes a single quotient: the
    multiplicity-weighted sum of its classes.  Idempotent.
    """
    d = A.d
    surface = Surface(d)
    for q, _ in g.quotients:
        if q.d != d:
            raise InvalidInputError("graded object and polarization disagree on d")
    slopes = [_quotient_slope(surface, q, m, A) for q, m in g.quotients]

    # blocks[i] = (list of original indices, summed slope); built right to left.
    blocks: list[tuple[list[int], SlopeVector]] = []
    for i in range(len(slopes) - 1, -1, -1):
        idxs, s = [i], slopes[i]
        # Monotonicity requires this block to sit strictly below its right
        # neighbour; merge while it does not.
        while blocks and compare_slope(s, blocks[-1][1]) >= 0:
            right_idxs, right_s = blocks.pop()
            idxs = idxs + right_idxs
            s = s + right_s
        blocks.append((idxs, s))
    blocks.reverse()

    out: list[tuple[KClass, int]] = []
    for idxs, _ in blocks:
        if len(idxs) == 1:
            out.append(g.quotients[idxs[0]])
        else:
            total: KClass | None = None
            for i in idxs:
                q, m = g.quotients[i]
                piece = m * q
                total = piece if total is None else total + piece
            assert total is not None
            out.append((total, 1))
    return GradedObject(tuple(out))
