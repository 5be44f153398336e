"""Classical Kashaev, shear and lambda-length coordinates with exact rationals.

Coordinates are kept in multiplicative form (``y``, ``z``, ``x``, ``ell``
rather than their logarithms).  The additive picture shows up only in the
log-linear matrices ``M``, ``f1``, ``f2``, ``f3`` and the Penner map, which are
built from the same side-slot enumeration as the multiplicative maps.

Triangles and edges are 1-based in the public API; matrix rows and columns
are 0-based with the Kashaev columns interleaved as
``(ln y_1, ln z_1, ln y_2, ln z_2, ...)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import NotACycle, NotApplicable
from .triangulation import (
    DecoratedTriangulation,
    DiagonalExchange,
    MarkRotation,
    Move,
    Reindex,
    align_for_flip,
    apply_move,
    exchange_labels,
    sigma_matrix,
)


def _positive(values, what):
    vals = tuple(Fraction(v) for v in values)
    if any(v <= 0 for v in vals):
        raise ValueError(f"{what} must be positive rationals")
    return vals


@dataclass(frozen=True)
class KashaevCoords:
    y: tuple
    z: tuple

    def __post_init__(self):
        object.__setattr__(self, "y", _positive(self.y, "y"))
        object.__setattr__(self, "z", _positive(self.z, "z"))
        if len(self.y) != len(self.z):
            raise ValueError("y and z must have the same length")

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def pairs(self):
        return list(zip(self.y, self.z))

    def __len__(self):
        return len(self.y)


@dataclass(frozen=True)
class HCoords:
    """Per triangle ``(h0, h1, h2)`` with ``h0 * h1 * h2 == 1``."""

    h: tuple

    def __post_init__(self):
        h = tuple(tuple(Fraction(v) for v in t) for t in self.h)
        for t in h:
            if t[0] * t[1] * t[2] != 1:
                raise ValueError(f"h-triple {t} does not multiply to 1")
        object.__setattr__(self, "h", h)


@dataclass(frozen=True)
class ShearCoords:
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", _positive(self.x, "shear coordinates"))


@dataclass(frozen=True)
class LambdaLengths:
    ell: tuple

    def __post_init__(self):
        object.__setattr__(self, "ell", _positive(self.ell, "lambda lengths"))


# --------------------------------------------------------------------------
# Kashaev coordinate changes


def kashaev_change(K: KashaevCoords, mv: Move, tau: DecoratedTriangulation) -> KashaevCoords:
    """Coordinates on ``mv(tau)`` of the point with coordinates ``K`` on ``tau``."""
    apply_move(tau, mv)  # validates applicability
    y, z = list(K.y), list(K.z)
    if isinstance(mv, Reindex):
        return KashaevCoords(tuple(y[mv(i) - 1] for i in range(1, len(y) + 1)),
                             tuple(z[mv(i) - 1] for i in range(1, len(z) + 1)))
    if isinstance(mv, MarkRotation):
        i = mv.i - 1
        y[i], z[i] = z[i] / y[i], 1 / y[i]
        return KashaevCoords(tuple(y), tuple(z))
    if isinstance(mv, DiagonalExchange):
        i, j = mv.i - 1, mv.j - 1
        yi, zi, yj, zj = y[i], z[i], y[j], z[j]
        d = yi * yj + zi * zj
        y[i], z[i], y[j], z[j] = zj / d, yi / d, zi / d, yj / d
        return KashaevCoords(tuple(y), tuple(z))
    raise TypeError(mv)


def kashaev_along(K: KashaevCoords, moves: Sequence[Move], tau: DecoratedTriangulation):
    for mv in moves:
        K = kashaev_change(K, mv, tau)
        tau = apply_move(tau, mv)
    return K, tau


def to_h(K: KashaevCoords) -> HCoords:
    return HCoords(tuple((y / z, z, 1 / y) for y, z in zip(K.y, K.z)))


def shear_from_kashaev(K: KashaevCoords, tau: DecoratedTriangulation) -> ShearCoords:
    h = to_h(K).h
    x = []
    for e in range(1, tau.n_edges + 1):
        (mu, s), (nu, t) = tau.slots(e)
        x.append(h[mu - 1][s] * h[nu - 1][t])
    return ShearCoords(tuple(x))


# --------------------------------------------------------------------------
# shear changes


def _shear_factors(case: int, xi: Fraction) -> dict:
    up = 1 + xi          # (1 + x_i)
    down = 1 / (1 + 1 / xi)   # (1 + x_i^-1)^-1
    return {
        1: {"j": up, "k": down, "l": up, "m": down},
        2: {"j": xi, "l": up, "m": down},
        3: {"j": xi, "k": down, "l": up},
        4: {"j": up * up, "k": down, "m": down},
        5: {"j": up, "k": down * down, "l": up},
        6: {"j": xi, "l": xi},
        7: {"j": xi, "k": xi},
        8: {"j": up * up, "k": down * down},
    }[case]


def shear_change(x: ShearCoords, tau: DecoratedTriangulation, edge: int, case=None) -> ShearCoords:
    """Shear coordinates after the diagonal exchange of ``edge``.

    Edge ids are preserved by the flip; the new diagonal keeps the id ``edge``.
    Marks play no role, so any decoration of ``tau`` gives the same answer.
    """
    rot, mu, nu = align_for_flip(tau, edge)
    aligned = tau
    for mv in rot:
        aligned = apply_move(aligned, mv)
    lab = exchange_labels(aligned, mu, nu)
    if case is not None and case != lab.case:
        raise NotApplicable(f"flip of edge {edge} is case {lab.case}, not case {case}")
    vals = list(x.x)
    xi = vals[edge - 1]
    for name, factor in _shear_factors(lab.case, xi).items():
        e = getattr(lab, name)
        vals[e - 1] = factor * vals[e - 1]
    vals[edge - 1] = 1 / xi
    return ShearCoords(tuple(vals))


def check_compat_diagram(tau: DecoratedTriangulation, mv: Move, K: KashaevCoords) -> bool:
    """Shear coordinates commute with the Kashaev coordinate change along ``mv``."""
    new_tau = apply_move(tau, mv)
    lhs = shear_from_kashaev(kashaev_change(K, mv, tau), new_tau)
    x = shear_from_kashaev(K, tau)
    if isinstance(mv, DiagonalExchange):
        rhs = shear_change(x, tau, tau.side(mv.i, 0))
    else:
        rhs = x
    return lhs == rhs


# --------------------------------------------------------------------------
# log-linear maps


def m_matrix(tau: DecoratedTriangulation) -> list:
    """``M``: ``(ln y, ln z) -> (ln h0, ln h1, ln h2)`` per triangle, as a 6m x 4m matrix."""
    n = tau.n_triangles
    rows = []
    for mu in range(n):
        r0, r1, r2 = [0] * (2 * n), [0] * (2 * n), [0] * (2 * n)
        r0[2 * mu], r0[2 * mu + 1] = 1, -1
        r1[2 * mu + 1] = 1
        r2[2 * mu] = -1
        rows += [r0, r1, r2]
    return rows


def f2_matrix(tau: DecoratedTriangulation) -> list:
    """``f2``: h-vector (rows of ``M``) to log shear coordinates, 3m x 6m."""
    rows = []
    for e in range(1, tau.n_edges + 1):
        r = [0] * (3 * tau.n_triangles)
        for mu, s in tau.slots(e):
            r[3 * (mu - 1) + s] += 1
        rows.append(r)
    return rows


def f1_matrix(tau: DecoratedTriangulation) -> list:
    return [[1] * tau.n_edges]


def j_matrix(tau: DecoratedTriangulation) -> list:
    """``J = f2 M``, the Jacobian of ``shear_from_kashaev`` in log coordinates."""
    return linalg.matmul(f2_matrix(tau), m_matrix(tau))


def dual_boundary(tau: DecoratedTriangulation) -> list:
    """Boundary of oriented dual edges (lower slot to higher), 2m x 3m."""
    n = tau.n_triangles
    rows = [[0] * tau.n_edges for _ in range(n)]
    for e in range(1, tau.n_edges + 1):
        (mu, _), (nu, _) = tau.slots(e)
        rows[nu - 1][e - 1] += 1
        rows[mu - 1][e - 1] -= 1
    return rows


def cycle_basis(tau: DecoratedTriangulation) -> list:
    return linalg.nullspace(dual_boundary(tau))


def homology_embed(c: Sequence, tau: DecoratedTriangulation) -> list:
    """``f3`` applied to a dual cycle ``c`` (one weight per edge); returns the log Kashaev vector."""
    c = [Fraction(v) for v in c]
    if len(c) != tau.n_edges:
        raise ValueError(f"need {tau.n_edges} edge weights")
    if any(v != 0 for v in linalg.matvec(dual_boundary(tau), c)):
        raise NotACycle("chain has nonzero boundary")
    n = tau.n_triangles
    h = [[Fraction(0)] * 3 for _ in range(n)]
    for e in range(1, tau.n_edges + 1):
        (mu, s), (nu, t) = tau.slots(e)
        h[mu - 1][s] -= c[e - 1]
        h[nu - 1][t] += c[e - 1]
    out = []
    for h0, h1, h2 in h:
        out += [-h2, h1]
    return out


def f3_matrix(tau: DecoratedTriangulation) -> list:
    """Columns are the images of a basis of the dual cycle space (4m x (m+1))."""
    cols = [homology_embed(c, tau) for c in cycle_basis(tau)]
    return linalg.transpose(cols) if cols else [[] for _ in range(2 * tau.n_triangles)]


def exactness_report(tau: DecoratedTriangulation) -> dict:
    m = tau.m
    f1, J, F3 = f1_matrix(tau), j_matrix(tau), f3_matrix(tau)
    n_cycles = len(cycle_basis(tau))
    rank_f3 = linalg.rank(F3)
    rank_f2 = linalg.rank(J)
    dim_ker_f2 = 4 * m - rank_f2
    rank_f1 = linalg.rank(f1)
    report = {
        "m": m,
        "cycle_space_dim": n_cycles,
        "rank_f3": rank_f3,
        "dim_ker_f2": dim_ker_f2,
        "dim_im_f2": rank_f2,
        "rank_f1": rank_f1,
        "f3_injective": rank_f3 == n_cycles,
        "im_f3_eq_ker_f2": linalg.is_zero(linalg.matmul(J, F3)) and rank_f3 == dim_ker_f2,
        "im_f2_eq_ker_f1": linalg.is_zero(linalg.matmul(f1, J))
        and rank_f2 == tau.n_edges - rank_f1,
        "f1_surjective": rank_f1 == 1,
    }
    report["dims_match"] = dim_ker_f2 == m + 1 and rank_f2 == 3 * m - 1
    report["exact"] = all(
        report[k] for k in ("f3_injective", "im_f3_eq_ker_f2", "im_f2_eq_ker_f1", "f1_surjective")
    )
    return report


# --------------------------------------------------------------------------
# Poisson structure


def kashaev_poisson(n_triangles: int) -> list:
    """Log Poisson matrix of the Kashaev coordinates.

    Sign chosen to match ``Z Y = q^2 Y Z``: the ``(z_mu, y_mu)`` entry is ``+1``.
    """
    B = [[0] * (2 * n_triangles) for _ in range(2 * n_triangles)]
    for mu in range(n_triangles):
        B[2 * mu + 1][2 * mu] = 1
        B[2 * mu][2 * mu + 1] = -1
    return B


def bivector_check(tau: DecoratedTriangulation) -> bool:
    """``J B J^T`` equals the corner matrix ``sigma``."""
    J = j_matrix(tau)
    push = linalg.matmul(linalg.matmul(J, kashaev_poisson(tau.n_triangles)), linalg.transpose(J))
    return push == sigma_matrix(tau).tolist()


# --------------------------------------------------------------------------
# Penner coordinates


def kashaev_from_penner(ell: LambdaLengths, tau: DecoratedTriangulation) -> KashaevCoords:
    L = ell.ell
    y, z = [], []
    for e0, e1, e2 in tau.triangles:
        y.append(L[e1 - 1] / L[e0 - 1])
        z.append(L[e2 - 1] / L[e0 - 1])
    return KashaevCoords(tuple(y), tuple(z))


def ptolemy_exchange(ell: LambdaLengths, tau: DecoratedTriangulation, i: int, j: int) -> LambdaLengths:
    """Lambda lengths after ``phi_ij``; the new diagonal keeps the old id."""
    lab = exchange_labels(tau, i, j)
    L = list(ell.ell)
    # opposite sides of the quadrilateral: (j, l) and (k, m)
    L[lab.i - 1] = (L[lab.j - 1] * L[lab.l - 1] + L[lab.k - 1] * L[lab.m - 1]) / L[lab.i - 1]
    return LambdaLengths(tuple(L))


def penner_change(ell: LambdaLengths, mv: Move, tau: DecoratedTriangulation) -> LambdaLengths:
    if isinstance(mv, DiagonalExchange):
        return ptolemy_exchange(ell, tau, mv.i, mv.j)
    apply_move(tau, mv)
    return ell


def penner_compat_check(tau: DecoratedTriangulation, mv: Move, ell: LambdaLengths) -> bool:
    new_tau = apply_move(tau, mv)
    lhs = kashaev_from_penner(penner_change(ell, mv, tau), new_tau)
    rhs = kashaev_change(kashaev_from_penner(ell, tau), mv, tau)
    return lhs == rhs


def penner_matrix(tau: DecoratedTriangulation) -> list:
    """Log-linearized ``f`` in ``ln ell`` coordinates, 4m x 3m."""
    rows = []
    for e0, e1, e2 in tau.triangles:
        ry, rz = [0] * tau.n_edges, [0] * tau.n_edges
        ry[e1 - 1] += 1
        ry[e0 - 1] -= 1
        rz[e2 - 1] += 1
        rz[e0 - 1] -= 1
        rows += [ry, rz]
    return rows


def penner_form(tau: DecoratedTriangulation) -> list:
    """Per-triangle cyclic form ``sum_s d_{e_s} ^ d_{e_{s+1}}`` as an antisymmetric matrix."""
    n = tau.n_edges
    W = [[0] * n for _ in range(n)]
    for t in tau.triangles:
        for s in range(3):
            a, b = t[s] - 1, t[(s + 1) % 3] - 1
            W[a][b] += 1
            W[b][a] -= 1
    return W


def kashaev_form(n_triangles: int) -> list:
    """``sum_mu d ln y_mu ^ d ln z_mu``."""
    W = [[0] * (2 * n_triangles) for _ in range(2 * n_triangles)]
    for mu in range(n_triangles):
        W[2 * mu][2 * mu + 1] = 1
        W[2 * mu + 1][2 * mu] = -1
    return W


def penner_exact_report(tau: DecoratedTriangulation) -> dict:
    m = tau.m
    F = penner_matrix(tau)
    r = linalg.rank(F)
    ker = linalg.nullspace(F)
    ones = [Fraction(1)] * tau.n_edges
    kernel_is_scaling = len(ker) == 1 and linalg.rank([ker[0], ones]) == 1
    pullback = linalg.matmul(linalg.matmul(linalg.transpose(F), kashaev_form(tau.n_triangles)), F)
    report = {
        "m": m,
        "rank_f": r,
        "kernel_dim": len(ker),
        "kernel_is_scaling": kernel_is_scaling,
        "coker_dim": 4 * m - r,
        # ln ell = delta / 2, so in delta coordinates the pullback carries a factor 1/4
        "two_form_pullback": pullback == penner_form(tau),
    }
    report["ok"] = (
        r == 3 * m - 1 and kernel_is_scaling and report["coker_dim"] == m + 1
        and report["two_form_pullback"]
    )
    return report


# --------------------------------------------------------------------------
# JSON


def _pair(v: Fraction):
    return [v.numerator, v.denominator]


def coords_to_dict(coords) -> dict:
    if isinstance(coords, KashaevCoords):
        return {"kashaev": [_pair(y) + _pair(z) for y, z in coords.pairs()]}
    if isinstance(coords, ShearCoords):
        return {"shear": [_pair(v) for v in coords.x]}
    if isinstance(coords, LambdaLengths):
        return {"lambda": [_pair(v) for v in coords.ell]}
    raise TypeError(coords)


def coords_from_dict(d: dict):
    try:
        if "kashaev" in d:
            return KashaevCoords.from_pairs(
                (Fraction(a, b), Fraction(c, e)) for a, b, c, e in d["kashaev"]
            )
        if "shear" in d:
            return ShearCoords(tuple(Fraction(a, b) for a, b in d["shear"]))
        if "lambda" in d:
            return LambdaLengths(tuple(Fraction(a, b) for a, b in d["lambda"]))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed coordinate JSON: {exc}") from exc
    raise ValueError("coordinate JSON needs a 'kashaev', 'shear' or 'lambda' key")


def coords_to_json(coords) -> str:
    return json.dumps(coords_to_dict(coords))
