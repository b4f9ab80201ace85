"""The Markov equation and its correspondence with pair orbits.

Positive solutions of  x^2 + y^2 + z^2 = 3xyz  are generated from
(1, 1, 1) by Vieta jumps: replacing one coordinate c by
3*(product of the others) - c.  The ranks of helix foundations on the
plane realize exactly these triples.

The orbit of a numerically exceptional ext-pair (E_0, E_1) with pairing
chi(E_0, E_1) = -h <= -2 under one-sided mutation obeys the two-sided
linear recurrence with coefficient sequence

    x_0 = 0, x_1 = 1, x_{n+1} = h x_n - x_{n-1},

and the integer quadratic form  p^2 - h p q + q^2  decides membership of
p/q in the closed interval between the recurrence's limit slopes without
any irrational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chern import KClass, euler_form
from .errors import DomainError, InvalidInputError
from .mutation import _chi
from .picard import Surface


@dataclass(frozen=True)
class MarkovTriple:
    x: int
    y: int
    z: int

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            if not isinstance(v, int) or v < 1:
                raise DomainError("Markov coordinates must be positive integers")
        if self.x**2 + self.y**2 + self.z**2 != 3 * self.x * self.y * self.z:
            raise DomainError(f"({self.x}, {self.y}, {self.z}) is not a Markov triple")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def sorted(self) -> "MarkovTriple":
        a, b, c = sorted((self.x, self.y, self.z))
        return MarkovTriple(a, b, c)

    @property
    def max_coordinate(self) -> int:
        return max(self.x, self.y, self.z)


def markov_step(t: MarkovTriple, position: int) -> MarkovTriple:
    """Vieta jump at the given coordinate (1, 2 or 3).  An involution."""
    if position not in (1, 2, 3):
        raise InvalidInputError("position must be 1, 2 or 3")
    x, y, z = t.as_tuple()
    if position == 1:
        return MarkovTriple(3 * y * z - x, y, z)
    if position == 2:
        return MarkovTriple(x, 3 * x * z - y, z)
    return MarkovTriple(x, y, 3 * x * y - z)


def markov_tree(limit: int) -> set[MarkovTriple]:
    """All solutions with max coordinate <= limit, grown from (1,1,1) by
    Vieta jumps and deduplicated up to coordinate order."""
    if not isinstance(limit, int) or limit < 1:
        raise InvalidInputError("limit must be a positive integer")
    root = MarkovTriple(1, 1, 1)
    seen: set[MarkovTriple] = set()
    frontier = [root]
    while frontier:
        t = frontier.pop()
        canon = t.sorted()
        if canon.max_coordinate > limit or canon in seen:
            continue
        seen.add(canon)
        for pos in (1, 2, 3):
            child = markov_step(canon, pos)
            if child.max_coordinate <= limit:
                frontier.append(child.sorted())
    return seen


def markov_max_uniqueness(limit: int) -> bool:
    """Whether every solution with max coordinate <= limit is determined by
    its maximal element.  This verifies the uniqueness hypothesis up to the
    enumeration bound only; it never asserts the general conjecture."""
    by_max: dict[int, MarkovTriple] = {}
    for t in markov_tree(limit):
        other = by_max.setdefault(t.max_coordinate, t)
        if other != t:
            return False
    return True


def markov_form(p: int, q: int, h: int) -> int:
    """p^2 - h p q + q^2.  Its sign tells whether p/q lies inside the closed
    interval bounded by the roots of l^2 - h l + 1 (negative inside,
    positive outside, zero on the boundary)."""
    return p * p - h * p * q + q * q


@dataclass(frozen=True)
class PairOrbit:
    """Two-sided mutation orbit of an ext-pair, indices -n .. n+1."""

    classes: dict[int, KClass]
    x: tuple[int, ...]
    h: int

    def __getitem__(self, n: int) -> KClass:
        return self.classes[n]


def pair_orbit(S: Surface, E0: KClass, E1: KClass, n: int) -> PairOrbit:
    """Generate e_m for m in [-n, n+1] from the recurrences

        e_{-1} = e_1 + h e_0,     e_2 = h e_1 + e_0,
        e_m = h e_{m-1} - e_{m-2}        (m > 2),
        e_{-m} = h e_{1-m} - e_{2-m}     (m > 1),

    together with the coefficient sequence x_0..x_{n+1}.
    Requires chi(E0,E0) = chi(E1,E1) = 1, chi(E1,E0) = 0 and
    h = -chi(E0,E1) >= 2.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError("orbit length must be a positive integer")
    if _chi(S, E0, E0) != 1 or _chi(S, E1, E1) != 1 or _chi(S, E1, E0) != 0:
        raise InvalidInputError("invalid ext-pair: not numerically exceptional")
    h = -euler_form(S, E0, E1)
    if h < 2:
        raise InvalidInputError(f"invalid ext-pair: need chi(E0,E1) <= -2, got {-h}")
    classes: dict[int, KClass] = {0: E0, 1: E1}
    classes[-1] = E1 + h * E0
    classes[2] = h * E1 + E0
    for m in range(3, n + 2):
        classes[m] = h * classes[m - 1] - classes[m - 2]
    for m in range(2, n + 1):
        classes[-m] = h * classes[1 - m] - classes[2 - m]
    x = [0, 1]
    while len(x) < n + 2:
        x.append(h * x[-1] - x[-2])
    return PairOrbit(classes, tuple(x), h)
