"""Quantum tori: skew Laurent polynomials with q-power commutation.

Generators ``G_1..G_n`` satisfy ``G_i G_j = q^(2 eps[i][j]) G_j G_i``.  A
monomial ``x^u`` means ``G_1^u_1 ... G_n^u_n`` in increasing index order, and

    x^u x^v = q^c(u, v) x^(u+v),   c(u, v) = sum_{i > j} 2 eps[i][j] u_i v_j.

Elements are finite sums ``sum coeff * q^k * x^u`` with rational ``coeff``;
the q-power is part of the term key, so a coefficient is a Laurent polynomial
in ``q``.

For the Kashaev algebra of ``n`` triangles, ``Y_mu`` is generator ``2 mu - 1``
and ``Z_mu`` is ``2 mu`` (1-based), with ``Z Y = q^2 Y Z``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import AlgebraMismatch
from .triangulation import DecoratedTriangulation, sigma_matrix


class CommutationMatrix:
    def __init__(self, eps):
        eps = np.asarray(eps, dtype=np.int64)
        if eps.ndim != 2 or eps.shape[0] != eps.shape[1] or not (eps == -eps.T).all():
            raise ValueError("commutation matrix must be square and antisymmetric")
        self.eps = eps
        self.eps.setflags(write=False)
        self.n = eps.shape[0]
        # strictly lower part, doubled: c(u, v) = u @ low @ v
        self._low = 2 * np.tril(eps, -1)
        self._key = eps.tobytes()

    def __eq__(self, other):
        return isinstance(other, CommutationMatrix) and self._key == other._key and self.n == other.n

    def __hash__(self):
        return hash((self.n, self._key))

    def reorder(self, u, v) -> int:
        return int(np.asarray(u) @ self._low @ np.asarray(v))

    def one(self) -> "SkewLaurent":
        return SkewLaurent.monomial(self, (0,) * self.n)

    def gen(self, i: int) -> "SkewLaurent":
        """Generator ``G_i`` (1-based)."""
        u = [0] * self.n
        u[i - 1] = 1
        return SkewLaurent.monomial(self, tuple(u))

    def q(self, k: int = 1) -> "SkewLaurent":
        return SkewLaurent.monomial(self, (0,) * self.n, qexp=k)


def kashaev_algebra(n_triangles: int) -> CommutationMatrix:
    eps = np.zeros((2 * n_triangles, 2 * n_triangles), dtype=np.int64)
    for mu in range(n_triangles):
        eps[2 * mu + 1, 2 * mu] = 1
        eps[2 * mu, 2 * mu + 1] = -1
    return CommutationMatrix(eps)


def chekhov_fock_algebra(tau: DecoratedTriangulation) -> CommutationMatrix:
    return CommutationMatrix(sigma_matrix(tau))


class SkewLaurent:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CommutationMatrix, terms=None):
        self.algebra = algebra
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c != 0}

    @classmethod
    def monomial(cls, algebra, exps, qexp: int = 0, coeff=1):
        exps = tuple(int(e) for e in exps)
        if len(exps) != algebra.n:
            raise AlgebraMismatch(f"exponent vector of length {len(exps)} in rank-{algebra.n} algebra")
        return cls(algebra, {(exps, int(qexp)): Fraction(coeff)})

    def _check(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def _lift(self, other):
        if isinstance(other, SkewLaurent):
            self._check(other)
            return other
        return SkewLaurent(self.algebra, {((0,) * self.algebra.n, 0): Fraction(other)})

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return SkewLaurent(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return SkewLaurent(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        alg = self.algebra
        terms = {}
        for (u, a), c in self.terms.items():
            for (v, b), d in other.terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                key = (w, a + b + alg.reorder(u, v))
                terms[key] = terms.get(key, 0) + c * d
        return SkewLaurent(alg, terms)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __truediv__(self, other):
        raise TypeError("division is not defined in the quantum torus; use the skewfield layer")

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewLaurent):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, k), c in sorted(self.terms.items()):
            parts.append(f"{c}*q^{k}*x^{list(u)}")
        return " + ".join(parts)

    # monomial helpers

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def as_monomial(self):
        """``(exps, qexp, coeff)`` for a single-term element."""
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        ((u, k), c), = self.terms.items()
        return u, k, c

    def is_scalar(self) -> bool:
        return all(not any(u) for u, _ in self.terms)

    def q_power(self):
        """``k`` if the element equals ``q^k``, else ``None``."""
        if len(self.terms) != 1:
            return None
        u, k, c = self.as_monomial()
        return k if c == 1 and not any(u) else None

    def inverse(self) -> "SkewLaurent":
        if not self.is_monomial():
            raise TypeError("only monomials are invertible in the quantum torus")
        u, k, c = self.as_monomial()
        # (x^u)^-1 = q^c(u, u) x^-u
        return SkewLaurent(
            self.algebra, {(tuple(-e for e in u), -k + self.algebra.reorder(u, u)): 1 / c}
        )

    def specialize(self, values, q=1):
        """Evaluate at commuting numbers ``values[i]`` for ``G_{i+1}`` and a value for ``q``."""
        total = Fraction(0)
        for (u, k), c in self.terms.items():
            term = Fraction(c) * Fraction(q) ** k
            for val, e in zip(values, u):
                term *= Fraction(val) ** e
            total += term
        return total

    def to_list(self) -> list:
        return [
            {"qexp": k, "coeff": str(c), "exps": list(u)}
            for (u, k), c in sorted(self.terms.items())
        ]

    @classmethod
    def from_list(cls, algebra, data):
        terms = {}
        for t in data:
            key = (tuple(int(e) for e in t["exps"]), int(t["qexp"]))
            terms[key] = terms.get(key, 0) + Fraction(t["coeff"])
        return cls(algebra, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_list())


# --------------------------------------------------------------------------
# Kashaev side generators


def Y(alg: CommutationMatrix, mu: int) -> SkewLaurent:
    return alg.gen(2 * mu - 1)


def Z(alg: CommutationMatrix, mu: int) -> SkewLaurent:
    return alg.gen(2 * mu)


def h_gen(alg: CommutationMatrix, mu: int, s: int) -> SkewLaurent:
    """``H^0 = Y Z^-1``, ``H^1 = Z``, ``H^2 = Y^-1`` for triangle ``mu``."""
    if s == 0:
        return Y(alg, mu) * Z(alg, mu).inverse()
    if s == 1:
        return Z(alg, mu)
    if s == 2:
        return Y(alg, mu).inverse()
    raise ValueError(f"side index must be 0, 1 or 2, got {s}")


# corner pairing within a single triangle: sigma_10 = sigma_02 = sigma_21 = 1
TRIANGLE_SIGMA = ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def h_commutation_check(mu: int = 1, alg: CommutationMatrix | None = None) -> bool:
    alg = alg or kashaev_algebra(mu)
    q = alg.q
    for s in range(3):
        for t in range(3):
            lhs = h_gen(alg, mu, s) * h_gen(alg, mu, t)
            rhs = q(2 * TRIANGLE_SIGMA[s][t]) * h_gen(alg, mu, t) * h_gen(alg, mu, s)
            if lhs != rhs:
                return False
    return True


def h_triple_product(alg: CommutationMatrix, mu: int) -> SkewLaurent:
    return h_gen(alg, mu, 0) * h_gen(alg, mu, 1) * h_gen(alg, mu, 2)


def f_tau(tau: DecoratedTriangulation) -> dict:
    """Images ``F_tau(X_i)`` of the Chekhov-Fock generators, keyed by 1-based edge id."""
    alg = kashaev_algebra(tau.n_triangles)
    out = {}
    for e in range(1, tau.n_edges + 1):
        (mu, s), (nu, t) = tau.slots(e)
        img = h_gen(alg, mu, s) * h_gen(alg, nu, t)
        if mu == nu:
            img = alg.q(TRIANGLE_SIGMA[t][s]) * img
        out[e] = img
    return out


def f_tau_monomial(tau: DecoratedTriangulation, exps, images=None) -> SkewLaurent:
    """``F_tau`` of the ordered monomial ``X_1^u_1 ... X_n^u_n``."""
    images = images or f_tau(tau)
    alg = next(iter(images.values())).algebra
    out = alg.one()
    for e, k in enumerate(exps, start=1):
        if k:
            out = out * images[e] ** k
    return out


def self_edge_symmetric(tau: DecoratedTriangulation) -> bool:
    """For self-edges, ``q^sigma_ts H^s H^t`` equals ``q^sigma_st H^t H^s``."""
    alg = kashaev_algebra(tau.n_triangles)
    for e in range(1, tau.n_edges + 1):
        (mu, s), (nu, t) = tau.slots(e)
        if mu != nu:
            continue
        a = alg.q(TRIANGLE_SIGMA[t][s]) * h_gen(alg, mu, s) * h_gen(alg, mu, t)
        b = alg.q(TRIANGLE_SIGMA[s][t]) * h_gen(alg, mu, t) * h_gen(alg, mu, s)
        if a != b:
            return False
    return True


def check_f_tau_homomorphism(tau: DecoratedTriangulation) -> bool:
    images = f_tau(tau)
    sigma = sigma_matrix(tau)
    alg = next(iter(images.values())).algebra
    for i, j in combinations(range(1, tau.n_edges + 1), 2):
        lhs = images[i] * images[j]
        rhs = alg.q(2 * int(sigma[i - 1, j - 1])) * images[j] * images[i]
        if lhs != rhs:
            return False
    return True


def h_image_exponent(tau: DecoratedTriangulation):
    """``k`` with ``F_tau(X_1 ... X_3m) = q^k``, or ``None`` if the image is not a q-power."""
    return f_tau_monomial(tau, [1] * tau.n_edges).q_power()


def expected_h_exponent(tau: DecoratedTriangulation) -> int:
    sigma = sigma_matrix(tau)
    n = tau.n_edges
    return 2 * tau.m + int(sum(sigma[i, j] for i in range(n) for j in range(i + 1, n)))


def check_H_image(tau: DecoratedTriangulation) -> bool:
    return h_image_exponent(tau) == expected_h_exponent(tau)
