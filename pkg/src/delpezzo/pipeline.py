"""Blow-down constructibility pipeline.

One verified level of the descent that recognizes a collection's
associated class as a pullback from the surface with one fewer blow-up:

    hom-order -> shrink the slope window below K^2 -> rotate so all
    restriction degrees on e_d share a two-integer window -> twist that
    window onto {-1, 0} -> peel the O_e(-1) layer off the accumulated
    class -> delete the e_d coordinate.

Every move is recorded in a replayable log.  Multiplicities of the
accumulated class are caller-supplied (they are not determined by
K-theory data) and are carried positionally through the pipeline.

Rank-0 members are accepted when they are multiples of the peel-curve
class [O_{e_d}(-1)]: the basic collections contain them and the peel
identity strips them along with the bundle layer.  Slope stages hold
them fixed; moves that would twist them are refused rather than guessed.
"""

from __future__ import annotations

from fractions import Fraction

from .chern import (
    KClass,
    curve_class,
    descend_class,
    euler_form,
    slope_mu,
    twist,
)
from .errors import (
    DomainError,
    ExcludedPairError,
    InvalidInputError,
    InvariantViolationError,
    PipelineError,
)
from .logs import LogStep, MutationLog
from .mutation import (
    Collection,
    Direction,
    is_numerically_exceptional,
    mutate_collection,
    require_numerically_exceptional,
)
from .pairs import restriction_degree, rotation_index, splitting_degrees
from .picard import (
    DivisorClass,
    Surface,
    canonical_divisor,
    exceptional_divisor,
    intersect,
)


def _torsion_multiplicity(S: Surface, E: KClass) -> tuple[int, int] | None:
    """(e_index, k) if E = k * [O_{e_i}(-1)] for some blow-up curve e_i,
    else None.  Raises for rank-0 classes of any other shape."""
    if E.r != 0:
        return None
    for i in range(1, S.d + 1):
        unit = curve_class(S, i, -1)
        coeff = -E.c1.coeffs[i]
        if coeff >= 1 and E == coeff * unit:
            return i, coeff
    raise DomainError(
        f"rank-0 member ({E.r}, {E.c1.coeffs}, {E.ch2}) is not a multiple of a "
        "curve class O_e(-1); the pipeline cannot place it"
    )


def _validate_members(c: Collection) -> list[int]:
    """Positions (0-based) of the positive-rank members; torsion members
    must be peel-curve multiples."""
    positive = []
    for pos, m in enumerate(c.members):
        if m.r < 0:
            raise InvalidInputError("pipeline members need non-negative rank")
        if m.r > 0:
            positive.append(pos)
        else:
            _torsion_multiplicity(c.surface, m)
    return positive


def _mu(c: Collection, pos: int) -> Fraction:
    return slope_mu(c.surface, c.members[pos], c.surface.anticanonical_class())


def _slope_window(c: Collection, positive: list[int]) -> tuple[Fraction, Fraction]:
    mus = [_mu(c, p) for p in positive]
    return min(mus), max(mus)


def order_hom(c: Collection) -> tuple[Collection, MutationLog]:
    """Left-mutate adjacent descending pairs until the anticanonical slopes
    are non-decreasing.  The slope window never widens.  Rank-0 torsion
    members are held fixed; a descent split by a torsion member cannot be
    repaired by adjacent mutations and is refused."""
    require_numerically_exceptional(c)
    positive = _validate_members(c)
    steps: list[LogStep] = []
    current = c
    if positive:
        lo0, hi0 = _slope_window(current, positive)
        guard = len(c.members) ** 2 + len(c.members) + 1
        while True:
            descent = None
            for pos in range(len(current.members) - 1):
                a, b = current.members[pos], current.members[pos + 1]
                if a.r > 0 and b.r > 0 and _mu(current, pos) > _mu(current, pos + 1):
                    descent = pos
                    break
            if descent is None:
                break
            if guard == 0:
                raise InvariantViolationError("hom-ordering failed to terminate")
            guard -= 1
            new = mutate_collection(current, descent + 1, Direction.LEFT)
            steps.append(
                LogStep(
                    kind="mutate",
                    params={"position": descent + 1, "direction": "left"},
                    before=current,
                    after=new,
                )
            )
            current = new
        positive = [p for p, m in enumerate(current.members) if m.r > 0]
        mus = [_mu(current, p) for p in positive]
        if any(x > y for x, y in zip(mus, mus[1:])):
            raise DomainError(
                "descending slopes around a fixed torsion member cannot be "
                "hom-ordered by adjacent mutations"
            )
        lo1, hi1 = _slope_window(current, positive)
        if lo1 < lo0 or hi1 > hi0:
            raise InvariantViolationError("hom-ordering widened the slope window")
    return current, MutationLog(tuple(steps))


def rotate_twist(c: Collection, j: int) -> Collection:
    """(E_j, ..., E_k, E_1(-K), ..., E_{j-1}(-K)); the exceptionality
    certificate is re-verified."""
    if not 1 <= j <= len(c.members):
        raise InvalidInputError(f"rotation index {j} out of range")
    S = c.surface
    minus_k = -canonical_divisor(S.d)
    members = c.members[j - 1 :] + tuple(
        twist(S, m, minus_k) for m in c.members[: j - 1]
    )
    out = Collection(S, members)
    ok, violation = is_numerically_exceptional(out)
    if not ok:
        assert violation is not None
        raise InvariantViolationError(
            "rotation broke the exceptionality certificate at "
            f"chi(E_{violation.i}, E_{violation.j}) = {violation.value}"
        )
    return out


def global_twist(c: Collection, D: DivisorClass) -> Collection:
    """Twist every member by O(D); chi values are unchanged."""
    S = c.surface
    out = Collection(S, tuple(twist(S, m, D) for m in c.members))
    ok, violation = is_numerically_exceptional(out)
    if not ok:
        assert violation is not None
        raise InvariantViolationError("global twist broke the certificate")
    return out


def reduce_spread(c: Collection) -> tuple[Collection, MutationLog]:
    """Rotate-and-twist, re-ordering in between, until the slope window is
    narrower than K^2.  Output is hom-ordered."""
    require_numerically_exceptional(c)
    positive = _validate_members(c)
    if not positive:
        return c, MutationLog(())
    mus = [_mu(c, p) for p in positive]
    if any(x > y for x, y in zip(mus, mus[1:])):
        raise InvalidInputError("reduce_spread needs a hom-ordered collection")
    k2 = c.surface.k_squared
    steps: list[LogStep] = []
    current = c
    lo, hi = _slope_window(current, positive)
    cap = int((hi - lo) / k2) + len(c.members) + 8
    for _ in range(cap):
        positive = [p for p, m in enumerate(current.members) if m.r > 0]
        lo, hi = _slope_window(current, positive)
        if hi - lo < k2:
            return current, MutationLog(tuple(steps))
        if len(positive) != len(current.members):
            raise DomainError(
                "slope-window reduction would twist torsion members"
            )
        base = _mu(current, positive[0])
        if hi - lo > k2:
            j = next(
                p + 1 for p in positive if _mu(current, p) > base + k2
            )
        else:
            # Window exactly K^2: rotate just past the lowest slope level.
            j = next(
                p + 2
                for p, q in zip(positive, positive[1:])
                if _mu(current, p) < _mu(current, q)
            )
        rotated = rotate_twist(current, j)
        steps.append(
            LogStep(kind="rotate", params={"j": j}, before=current, after=rotated)
        )
        current = rotated
        ordered, sub = order_hom(current)
        if len(sub) > 0:
            steps.append(LogStep(kind="order", params={}, before=current, after=ordered))
        current = ordered
    raise PipelineError(
        "spread",
        f"window reduction did not terminate within {cap} rounds "
        f"({len(steps)} moves logged)",
    )


def _forbidden_pair_guard(c: Collection, e_index: int) -> None:
    """On K^2 = 1 surfaces, refuse collections containing a rank-1 pair
    related by a twist by e + K; restriction control fails for these."""
    S = c.surface
    if S.k_squared != 1:
        return
    shift = exceptional_divisor(S.d, e_index) + canonical_divisor(S.d)
    for i, E in enumerate(c.members):
        if E.r != 1:
            continue
        for j, F in enumerate(c.members):
            if i == j or F.r != 1:
                continue
            if F == twist(S, E, shift):
                raise ExcludedPairError(
                    f"members {i} and {j} form a rank-1 pair twisted by e + K "
                    "on a K^2 = 1 surface"
                )


def _member_degrees(c: Collection, e_index: int) -> set[int]:
    """Union of splitting degrees of all members on e_{e_index}.  Torsion
    members on the peel curve contribute their own degree -1; torsion on a
    different blow-up curve restricts trivially and contributes nothing."""
    degrees: set[int] = set()
    for m in c.members:
        if m.r > 0:
            degrees |= splitting_degrees(m.r, restriction_degree(c.surface, m, e_index))
        else:
            info = _torsion_multiplicity(c.surface, m)
            assert info is not None
            if info[0] == e_index:
                degrees.add(-1)
    return degrees


def peel_curve(
    c: Collection, mults: list[int], e_index: int
) -> tuple[KClass, int, MutationLog]:
    """Subtract the O_e(-1) layer from the accumulated class.

    F = sum mults[i] * [E_i], alpha = chi(F, [O_e(-1)]) >= 0, and
    G = F - alpha * [O_e(-1)] satisfies c1(G).e = 0 and
    chi(G, [O_e(-1)]) = 0: G is descent-ready.
    """
    require_numerically_exceptional(c)
    _validate_members(c)
    if len(mults) != len(c.members):
        raise InvalidInputError("one multiplicity per member is required")
    if any(not isinstance(m, int) or m < 1 for m in mults):
        raise InvalidInputError("multiplicities must be positive integers")
    S = c.surface
    _forbidden_pair_guard(c, e_index)
    degrees = _member_degrees(c, e_index)
    if not degrees <= {-1, 0}:
        raise DomainError(
            f"restriction degrees {sorted(degrees)} outside {{-1, 0}}: rotate first"
        )
    L = curve_class(S, e_index, -1)
    F: KClass | None = None
    for m, member in zip(mults, c.members):
        piece = m * member
        F = piece if F is None else F + piece
    assert F is not None
    alpha = euler_form(S, F, L)
    if alpha < 0:
        raise InvariantViolationError(f"peel multiplicity alpha = {alpha} < 0")
    G = F - alpha * L
    e = exceptional_divisor(S.d, e_index)
    beta = F.r - alpha
    if (
        intersect(S, G.c1, e) != 0
        or euler_form(S, G, L) != 0
        or euler_form(S, L, G) != -G.r
        or euler_form(S, L, F) != -beta
    ):
        raise InvariantViolationError("peel output failed its exact identities")
    step = LogStep(
        kind="peel",
        params={"mults": list(mults), "e_index": e_index, "alpha": alpha},
        before=c,
        after=G,
    )
    return G, alpha, MutationLog((step,))


def _slope_groups(c: Collection, positive: list[int]) -> list[list[int]]:
    """Contiguous runs of equal slope among the positive-rank members."""
    groups: list[list[int]] = []
    for p in positive:
        if groups and _mu(c, groups[-1][-1]) == _mu(c, p):
            groups[-1].append(p)
        else:
            groups.append([p])
    return groups


def normalize_and_descend(
    c: Collection, mults: list[int] | None = None
) -> tuple[KClass, MutationLog]:
    """One level of the descent: order, shrink the slope window, rotate and
    twist the restriction degrees onto {-1, 0}, peel, and delete the e_d
    coordinate.  Emits the full replayable log.  No recursion: the caller
    supplies the next level's collection if one is wanted."""
    S = c.surface
    if S.d == 0:
        raise PipelineError("descend", "the surface is already the plane")
    if mults is None:
        mults = [1] * len(c.members)
    if len(mults) != len(c.members):
        raise PipelineError("peel", "one multiplicity per member is required")
    e_index = S.d
    # The K^2 = 1 exclusion is a hypothesis on the input collection; check
    # it before any stage can reshape the pair out of recognizable form.
    _forbidden_pair_guard(c, e_index)
    log = MutationLog(())
    current = c

    def run(stage: str, fn):
        try:
            return fn()
        except PipelineError:
            raise
        except (InvalidInputError, DomainError) as exc:
            raise PipelineError(stage, str(exc)) from exc

    def order_stage():
        ordered, sub = order_hom(current)
        return ordered, sub

    ordered, sub = run("order", order_stage)
    if len(sub) > 0:
        log = log.extend(
            MutationLog((LogStep("order", {}, current, ordered),))
        )
    current = ordered

    def spread_stage():
        return reduce_spread(current)

    current, sub = run("spread", spread_stage)
    log = log.extend(sub)

    def rotate_stage():
        positive = _validate_members(current)
        if not positive:
            raise DomainError("the pipeline needs at least one positive-rank member")
        groups = _slope_groups(current, positive)
        group_classes = []
        for group in groups:
            total: KClass | None = None
            for p in group:
                piece = mults[p] * current.members[p]
                total = piece if total is None else total + piece
            assert total is not None
            group_classes.append(total)
        i, window = rotation_index(S, group_classes, e_index)
        j = 1 if i == 1 else groups[i - 1][0] + 1
        if j > 1 and any(m.r == 0 for m in current.members[: j - 1]):
            raise DomainError("rotation would twist torsion members")
        rotated = rotate_twist(current, j)
        return rotated, i, j, window

    rotated, i, j, window = run("rotate", rotate_stage)
    log = log.extend(
        MutationLog(
            (
                LogStep(
                    kind="rotate",
                    params={
                        "j": j,
                        "group_index": i,
                        "window": [window[0], window[1]],
                    },
                    before=current,
                    after=rotated,
                ),
            )
        )
    )
    mults = mults[j - 1 :] + mults[: j - 1]
    current = rotated

    def twist_stage():
        degrees = _member_degrees(current, e_index)
        if max(degrees) - min(degrees) > 1:
            raise DomainError(
                f"restriction degrees {sorted(degrees)} span more than a "
                "two-integer window after rotation"
            )
        t = 0 if degrees <= {-1, 0} else max(degrees)
        if t != 0 and any(m.r == 0 for m in current.members):
            raise DomainError("degree normalization would twist torsion members")
        if t == 0:
            return current, 0
        K = canonical_divisor(S.d)
        return global_twist(current, t * K), t

    twisted, t = run("twist", twist_stage)
    if t != 0:
        log = log.extend(
            MutationLog(
                (
                    LogStep(
                        kind="twist",
                        params={"k_multiple": t},
                        before=current,
                        after=twisted,
                    ),
                )
            )
        )
    current = twisted

    def peel_stage():
        return peel_curve(current, mults, e_index)

    G, alpha, sub = run("peel", peel_stage)
    log = log.extend(sub)

    def descend_stage():
        return descend_class(S, G)

    descended = run("descend", descend_stage)
    log = log.extend(
        MutationLog(
            (
                LogStep(
                    kind="descend",
                    params={"e_index": e_index, "surface": S.to_json()},
                    before=G,
                    after=descended,
                ),
            )
        )
    )
    return descended, log
