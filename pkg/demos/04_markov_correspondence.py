"""The Markov equation and the rank orbit of an ext-pair.

Ranks of plane helix foundations solve x^2 + y^2 + z^2 = 3xyz; the tree
of solutions grows from (1,1,1) by Vieta jumps, and the one-sided
mutation orbit of an ext-pair obeys the recurrence x_{n+1} = h x_n - x_{n-1}
whose consecutive pairs sit on the level set p^2 - hpq + q^2 = 1.
"""

from delpezzo import (
    Direction,
    MarkovTriple,
    Surface,
    basic_collection,
    euler_form,
    line_class,
    markov_form,
    markov_step,
    markov_tree,
    mutate_collection,
    pair_orbit,
    structure_class,
)
from delpezzo.picard import DivisorClass

# --- the tree --------------------------------------------------------------

t = MarkovTriple(1, 1, 1)
print("growing the solution tree from", t.as_tuple())
for pos in (3, 2, 3):
    t = markov_step(t, pos)
    print("  jump at", pos, "->", t.as_tuple())

print("all solutions up to 500:")
for triple in sorted(x.as_tuple() for x in markov_tree(500)):
    print("  ", triple)

# --- ranks of mutated foundations ------------------------------------------

c = basic_collection(Surface(0))
print("ranks along a braid walk:", [m.r for m in c.members])
for pos, direction in [(1, Direction.RIGHT), (2, Direction.RIGHT), (1, Direction.LEFT)]:
    c = mutate_collection(c, pos, direction)
    ranks = [m.r for m in c.members]
    x, y, z = ranks
    assert x * x + y * y + z * z == 3 * x * y * z
    print("  ->", ranks)

# --- the pair orbit --------------------------------------------------------

# An ext seed with pairing -3 on the 8-fold blow-up: ([O], [O(D)]) with
# D = -h - 2e1 + e2.  (sum b = 0 and sum b^2 = 6 solve the constraints.)
S = Surface(8)
E0 = structure_class(S)
E1 = line_class(S, DivisorClass((-1, 2, -1, -1, 0, 0, 0, 0, 0)))
print("seed pairings:", euler_form(S, E1, E0), euler_form(S, E0, E1))

orbit = pair_orbit(S, E0, E1, 6)
print("coefficients x_n:", orbit.x)
print("ranks of the orbit:", [orbit[n].r for n in range(-4, 6)])
for n in range(6):
    assert markov_form(orbit.x[n + 1], orbit.x[n], orbit.h) == 1
print("consecutive coefficients stay on the form's level set 1")
