"""Scalar fields containing a primitive 2N-th root of unity, and matrices over them.

Two interchangeable backends:

``CyclotomicField``
    The number field Q(zeta_2N) as rational polynomials modulo the 2N-th
    cyclotomic polynomial.  Fully exact, but slow beyond a few dozen rows.

``ResidueField``
    The prime field F_p with ``p = 1 (mod 2N)``, so F_p contains a primitive
    2N-th root of unity.  Matrices are numpy int64 arrays.  Reduction from the
    ring of integers of Q(zeta_2N) to F_p is a ring homomorphism, so a nonzero
    result here is a genuine refutation; a zero result is evidence of equality.

Both expose the same small interface used by the evaluator in ``skewfield``.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .errors import SingularMatrix


# --------------------------------------------------------------------------
# integer helpers


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> set:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def cyclotomic_poly(n: int) -> list:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    # Phi_n = prod_{d | n} (x^d - 1)^mu(n/d); done by exact division
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return num


def _poly_divexact(a: list, b: list) -> list:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return out


# --------------------------------------------------------------------------
# residue field backend


class ResidueField:
    """F_p with a fixed primitive 2N-th root of unity ``zeta``; matrices are int64 arrays."""

    exact = False
    _SPLIT = 1 << 13
    _BASE = 48

    def __init__(self, N: int, p: int | None = None, bound: int = 1 << 26):
        self.N = N
        order = 2 * N
        if p is None:
            p = bound - ((bound - 1) % order)  # largest candidate = 1 mod 2N below bound
            while not _is_prime(p):
                p -= order
        if (p - 1) % order:
            raise ValueError(f"p = {p} is not 1 mod {order}")
        self.p = p
        facs = _prime_factors(order)
        for h in range(2, p):
            z = pow(h, (p - 1) // order, p)
            if all(pow(z, order // r, p) != 1 for r in facs):
                self.zeta = z
                break
        self.name = f"F_{p}"

    # scalars
    def q(self, k: int) -> int:
        return pow(self.zeta, k % (2 * self.N), self.p)

    def const(self, c: Fraction) -> int:
        c = Fraction(c)
        den = c.denominator % self.p
        if den == 0:
            raise SingularMatrix()
        return c.numerator * pow(den, -1, self.p) % self.p

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def s_add(self, x, y):
        return (x + y) % self.p

    def s_neg(self, x):
        return -x % self.p

    def s_mul(self, x, y):
        return x * y % self.p

    def s_inv(self, x):
        if x % self.p == 0:
            raise SingularMatrix()
        return pow(x, -1, self.p)

    def s_is_zero(self, x) -> bool:
        return x % self.p == 0

    def s_repr(self, x) -> str:
        return str(int(x))

    # matrices
    def eye(self, d: int):
        return np.eye(d, dtype=np.int64)

    def diag(self, entries):
        return np.diag(np.array([int(x) for x in entries], dtype=np.int64))

    def shift(self, d: int, scale) -> np.ndarray:
        """``scale * S`` with ``S e_k = e_{k-1}`` (indices mod d)."""
        m = np.zeros((d, d), dtype=np.int64)
        for k in range(d):
            m[(k - 1) % d, k] = scale
        return m

    def kron(self, a, b):
        return np.kron(a, b) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def scale(self, s, a):
        return (int(s) * a) % self.p

    def add_scalar(self, a, s):
        out = a.copy()
        idx = np.arange(a.shape[0])
        out[idx, idx] = (out[idx, idx] + int(s)) % self.p
        return out

    def matmul(self, a, b):
        # entries < 2^26; split b so each float64 product sum stays below 2^53
        hi, lo = divmod(b, self._SPLIT)
        af = a.astype(np.float64)
        r_hi = (af @ hi.astype(np.float64)).astype(np.int64) % self.p
        r_lo = (af @ lo.astype(np.float64)).astype(np.int64) % self.p
        return (r_hi * self._SPLIT + r_lo) % self.p

    def _gauss_inv(self, a):
        p = self.p
        d = a.shape[0]
        m = np.concatenate([a % p, np.eye(d, dtype=np.int64)], axis=1)
        for c in range(d):
            nz = np.nonzero(m[c:, c])[0]
            if nz.size == 0:
                raise SingularMatrix()
            r = c + int(nz[0])
            if r != c:
                m[[c, r]] = m[[r, c]]
            m[c] = m[c] * pow(int(m[c, c]), -1, p) % p
            col = m[:, c].copy()
            col[c] = 0
            m = (m - np.outer(col, m[c]) % p) % p
        return m[:, d:]

    def _block_inv(self, a):
        d = a.shape[0]
        if d <= self._BASE:
            return self._gauss_inv(a)
        h = d // 2
        A, B, C, D = a[:h, :h], a[:h, h:], a[h:, :h], a[h:, h:]
        Ai = self._block_inv(A)
        CAi = self.matmul(C, Ai)
        S = (D - self.matmul(CAi, B)) % self.p
        Si = self._block_inv(S)
        AiB = self.matmul(Ai, B)
        top_right = -self.matmul(AiB, Si) % self.p
        bottom_left = -self.matmul(Si, CAi) % self.p
        top_left = (Ai - self.matmul(top_right, CAi)) % self.p
        return np.block([[top_left, top_right], [bottom_left, Si]])

    def inv(self, a, rng=None):
        """Inverse mod p.

        Large matrices go through recursive Schur complements of ``R a`` for a
        random ``R`` (so leading blocks are invertible with high probability);
        only if that fails twice is plain Gauss-Jordan asked to decide.
        """
        a = a % self.p
        d = a.shape[0]
        if d <= self._BASE:
            return self._gauss_inv(a)
        gen = np.random.default_rng(int(a[0, 0]) * 7919 + d)
        for _ in range(2):
            r = gen.integers(0, self.p, size=(d, d), dtype=np.int64)
            try:
                return self.matmul(self._block_inv(self.matmul(r, a)), r)
            except SingularMatrix:
                continue
        return self._gauss_inv(a)

    def is_zero(self, a) -> bool:
        return not np.any(a % self.p)

    def equal(self, a, b) -> bool:
        return self.is_zero(a - b)


# --------------------------------------------------------------------------
# exact cyclotomic backend


class CyclotomicField:
    """Q(zeta_2N); elements are tuples of ``Fraction`` coefficients in the power basis."""

    exact = True

    def __init__(self, N: int):
        self.N = N
        self.phi = cyclotomic_poly(2 * N)
        self.deg = len(self.phi) - 1
        self.name = f"Q(zeta_{2 * N})"
        # x^k reduced mod phi for k < 2 deg
        self._pow = []
        for k in range(2 * self.deg):
            self._pow.append(self._reduce([0] * k + [1]))

    def _reduce(self, coeffs) -> tuple:
        c = [Fraction(x) for x in coeffs]
        d = self.deg
        for i in range(len(c) - 1, d - 1, -1):
            lead = c[i]
            if lead:
                for j, pj in enumerate(self.phi):
                    c[i - d + j] -= lead * pj
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return tuple(c)

    # scalars
    def zero(self):
        return (Fraction(0),) * self.deg

    def one(self):
        return self.const(1)

    def const(self, c):
        return (Fraction(c),) + (Fraction(0),) * (self.deg - 1)

    def q(self, k: int):
        k %= 2 * self.N
        return self._reduce([0] * k + [1])

    def random_nonzero(self, rng: random.Random):
        while True:
            x = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(self.deg))
            if any(x):
                return x

    def s_add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def s_neg(self, x):
        return tuple(-a for a in x)

    def s_mul(self, x, y):
        if not any(x) or not any(y):
            return self.zero()
        prod = [Fraction(0)] * (2 * self.deg - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        out = [Fraction(0)] * self.deg
        for k, c in enumerate(prod):
            if c:
                for t, v in enumerate(self._pow[k]):
                    out[t] += c * v
        return tuple(out)

    def s_inv(self, x):
        if not any(x):
            raise SingularMatrix()
        # extended Euclid in Q[t]: find s with s*x = 1 mod phi
        r0, r1 = [Fraction(c) for c in self.phi], _trim(list(x))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        c = r1[0]
        return self._reduce([v / c for v in s1])

    def s_is_zero(self, x) -> bool:
        return not any(x)

    def s_repr(self, x) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(x) if c]
        return " + ".join(terms) or "0"

    # matrices (lists of rows of field elements)
    def eye(self, d: int):
        return [[self.one() if i == j else self.zero() for j in range(d)] for i in range(d)]

    def diag(self, entries):
        d = len(entries)
        return [[entries[i] if i == j else self.zero() for j in range(d)] for i in range(d)]

    def shift(self, d: int, scale):
        m = [[self.zero()] * d for _ in range(d)]
        for k in range(d):
            m[(k - 1) % d][k] = scale
        return m

    def kron(self, a, b):
        ra, rb = len(a), len(b)
        return [
            [self.s_mul(a[i // rb][j // rb], b[i % rb][j % rb]) for j in range(ra * rb)]
            for i in range(ra * rb)
        ]

    def add(self, a, b):
        return [[self.s_add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def scale(self, s, a):
        return [[self.s_mul(s, x) for x in row] for row in a]

    def add_scalar(self, a, s):
        out = [list(r) for r in a]
        for i in range(len(out)):
            out[i][i] = self.s_add(out[i][i], s)
        return out

    def matmul(self, a, b):
        n, k, m = len(a), len(b), len(b[0])
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.zero()
                for t in range(k):
                    if any(a[i][t]) and any(b[t][j]):
                        acc = self.s_add(acc, self.s_mul(a[i][t], b[t][j]))
                row.append(acc)
            out.append(row)
        return out

    def inv(self, a):
        d = len(a)
        m = [list(r) + [self.one() if i == j else self.zero() for j in range(d)] for i, r in enumerate(a)]
        for c in range(d):
            piv = next((r for r in range(c, d) if any(m[r][c])), None)
            if piv is None:
                raise SingularMatrix()
            m[c], m[piv] = m[piv], m[c]
            iv = self.s_inv(m[c][c])
            m[c] = [self.s_mul(iv, x) for x in m[c]]
            for r in range(d):
                if r != c and any(m[r][c]):
                    f = self.s_neg(m[r][c])
                    m[r] = [self.s_add(x, self.s_mul(f, y)) for x, y in zip(m[r], m[c])]
        return [row[d:] for row in m]

    def is_zero(self, a) -> bool:
        return all(not any(x) for row in a for x in row)

    def equal(self, a, b) -> bool:
        return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    a = list(a)
    if len(a) < len(b):
        return [Fraction(0)], _trim(a)
    quo = [Fraction(0)] * (len(a) - len(b) + 1)
    for i in range(len(quo) - 1, -1, -1):
        c = a[i + len(b) - 1] / b[-1]
        quo[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return _trim(quo), _trim(a[: len(b) - 1] or [Fraction(0)])


def make_field(N: int, backend: str = "residue"):
    if backend == "residue":
        return ResidueField(N)
    if backend == "exact":
        return CyclotomicField(N)
    raise ValueError(f"unknown backend {backend!r}")
