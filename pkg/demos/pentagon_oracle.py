"""The pentagon relation for the quantum maps, checked at roots of unity.

Finds a decoration of the four-punctured sphere carrying a pentagon, composes
the generalized Kashaev maps along both sides, and asks the clock-and-shift
oracle whether they agree.  A map with one image nudged by a factor of q is
then refuted, which is the certain direction of the oracle.
"""

import time

from qteich import expr as ex
from qteich import skewfield as sk
from qteich.triangulation import DiagonalExchange, build_standard, find_pentagon, pentagon_paths

tau, (i, j, k) = find_pentagon(build_standard(0, 4))
lhs, rhs = pentagon_paths(i, j, k)
print("pentagon triangles", (i, j, k))
print("left path: ", lhs)
print("right path:", rhs)

trials = sk.TrialConfig(sizes=(3, 5), samples=3, min_successes=6)
t0 = time.perf_counter()
v = sk.compare_pairs(sk.path_pair_pairs(tau, lhs, rhs), trials, claim="pentagon")
print(f"verdict {v.verdict} after {len(v.trials)} trials ({time.perf_counter() - t0:.1f}s)")


def nudged(mv):
    m = sk.move_hat(mv)
    if isinstance(mv, DiagonalExchange):
        imgs = dict(m.images)
        imgs[("Z", mv.i)] = ex.prod(ex.QPow(1), imgs[("Z", mv.i)])
        m = ex.SubstitutionMap(imgs)
    return m


def along(path):
    acc = ex.SubstitutionMap()
    for mv in reversed(path):
        acc = nudged(mv).compose(acc)
    return acc


bad = sk.maps_equal(along(lhs), along(rhs), trials)
print("nudged maps:", bad.verdict, bad.witness)
