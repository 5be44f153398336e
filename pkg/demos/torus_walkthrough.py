"""Walk through the once-punctured torus.

Build the two-triangle fixture, rotate marks, flip the diagonal, and watch
the Kashaev coordinates, shear coordinates and lambda lengths move together.
Run with ``python demos/torus_walkthrough.py``.
"""

from fractions import Fraction

from qteich import classical as cl
from qteich.triangulation import (
    DiagonalExchange,
    align_for_flip,
    apply_moves,
    build_standard,
    classify_exchange,
    sigma_matrix,
)

tau = build_standard(1, 1)
print("triangles (sides 0,1,2):", tau.triangles)
print("sigma:\n", sigma_matrix(tau))

K = cl.KashaevCoords.from_pairs([(Fraction(2), Fraction(3)), (Fraction(5), Fraction(7))])
print("Kashaev (y, z):", K.pairs())
print("shear x:", cl.shear_from_kashaev(K, tau).x)

# put edge 1 opposite both marks, then flip it
rot, mu, nu = align_for_flip(tau, 1)
base = apply_moves(tau, rot)
K_base, _ = cl.kashaev_along(K, rot, tau)
print(f"after {len(rot)} mark rotations the flip is phi_{mu}{nu}, case",
      classify_exchange(base, mu, nu))

flip = DiagonalExchange(mu, nu)
K_new = cl.kashaev_change(K_base, flip, base)
new = apply_moves(base, [flip])
x_old = cl.shear_from_kashaev(K_base, base)
print("shear before:", x_old.x)
print("shear after (via Kashaev):", cl.shear_from_kashaev(K_new, new).x)
print("shear after (direct):     ", cl.shear_change(x_old, base, 1).x)

ell = cl.LambdaLengths((Fraction(2), Fraction(3), Fraction(5)))
print("lambda lengths", ell.ell, "-> after Ptolemy", cl.ptolemy_exchange(ell, base, mu, nu).ell)
print("Penner square commutes:", cl.penner_compat_check(base, flip, ell))
