"""Which (a, b) make the Chekhov-Fock squares commute?

Sweeps a few q-power choices of the parameters on the once-punctured torus
and prints the oracle verdict for a mark rotation and a diagonal exchange.
Only a = q^-2 should pass the rotation square and only b = q^3 the flip.
"""

from qteich import skewfield as sk
from qteich.triangulation import DiagonalExchange, MarkRotation, build_standard

tau = build_standard(1, 1)
base, i, j = sk.flip_bases(tau)[0]
trials = sk.TrialConfig(sizes=(3, 5), samples=2, min_successes=4)

for a in ("q-2", "q-1", "1", "q"):
    v = sk.check_ab_iff(tau, MarkRotation(1), a=a, trials=trials)
    print(f"rho   a={a:>4}: {v.verdict}")
for b in ("q3", "q", "1", "q2"):
    v = sk.check_ab_iff(base, DiagonalExchange(i, j), b=b, trials=trials)
    print(f"phi   b={b:>4}: {v.verdict}")
