"""Decorated ideal triangulations of punctured surfaces and their elementary moves.

A triangulation is stored as a tuple of triangles; triangle ``mu`` (1-based) is
the triple of edge ids bounding its sides 0, 1, 2.  Sides run counterclockwise
and side 0 is opposite the marked corner, so the mark is implicit.  Edge ids
run over ``1..3m`` and every edge fills exactly two side slots.

Gluing two side slots is always orientation reversing, so the side table alone
determines the oriented surface.  With side ``s`` running from local corner
``s`` to local corner ``s + 1``, the slot ``(T, s)`` glued to ``(T', s')``
identifies corner ``s`` of ``T`` with corner ``s' + 1`` of ``T'``.

Orientation convention for corners: at the corner where side ``s`` meets side
``s + 1`` the counterclockwise order around the puncture is ``(s + 1, s)``;
the first of these is the *left* side.  Hence a corner between an edge on side
``s + 1`` and an edge on side ``s`` adds one to ``a[e_{s+1}, e_s]``.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidPath, InvalidSurface, NotApplicable, NotFound


@dataclass(frozen=True)
class SurfaceSig:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 1:
            raise InvalidSurface(f"need genus >= 0 and punctures >= 1, got {self}")
        if self.m <= 0:
            raise InvalidSurface(
                f"surface (g={self.genus}, p={self.punctures}) has m = {self.m} <= 0"
            )

    @property
    def m(self) -> int:
        return 2 * self.genus - 2 + self.punctures

    @property
    def n_triangles(self) -> int:
        return 2 * self.m

    @property
    def n_edges(self) -> int:
        return 3 * self.m


# --------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class Reindex:
    """Reindexing: the new triangle ``i`` is the old triangle ``perm[i - 1]``."""

    perm: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(x) for x in self.perm))
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise InvalidPath(f"not a permutation of 1..n: {self.perm}")

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def inverse(self) -> "Reindex":
        inv = [0] * len(self.perm)
        for i, ai in enumerate(self.perm, start=1):
            inv[ai - 1] = i
        return Reindex(tuple(inv))


@dataclass(frozen=True)
class MarkRotation:
    i: int


@dataclass(frozen=True)
class DiagonalExchange:
    i: int
    j: int


Move = Union[Reindex, MarkRotation, DiagonalExchange]


def transposition(n: int, i: int, j: int) -> Reindex:
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = j, i
    return Reindex(tuple(perm))


def compose_perms(alpha: Reindex, beta: Reindex) -> Reindex:
    """The permutation ``alpha beta`` with ``(alpha beta)(tau) == alpha(beta(tau))``.

    Under the action ``alpha(tau)_i = tau_{alpha(i)}`` this is ``i -> beta(alpha(i))``.
    """
    return Reindex(tuple(beta(alpha(i)) for i in range(1, len(alpha.perm) + 1)))


def omega(mu: int, nu: int) -> list:
    """Moves of ``omega_{mu nu} = rho_mu o phi_{mu nu} o rho_nu`` in application order."""
    return [MarkRotation(nu), DiagonalExchange(mu, nu), MarkRotation(mu)]


def pentagon_paths(i: int, j: int, k: int):
    """The two sides of the pentagon relation as move lists (applied left to right).

    ``omega_jk o omega_ik o omega_ij`` and ``omega_ij o omega_jk``.
    """
    lhs = omega(i, j) + omega(i, k) + omega(j, k)
    rhs = omega(j, k) + omega(i, j)
    return lhs, rhs


# --------------------------------------------------------------------------
# triangulations


@dataclass(frozen=True)
class ExchangeLabels:
    """Edge labels around a diagonal exchange.

    ``mu``/``nu`` are the two triangles (shared edge on side 0 of both),
    ``i`` the shared edge, ``j, m`` sides 1, 2 of ``mu`` and ``l, k`` sides 1, 2
    of ``nu``.  Going clockwise around the quadrilateral the outer edges read
    ``j, k, l, m``.
    """

    case: int
    mu: int
    nu: int
    i: int
    j: int
    k: int
    l: int
    m: int


@dataclass(frozen=True)
class DecoratedTriangulation:
    surface: SurfaceSig
    triangles: tuple

    def __post_init__(self):
        tris = tuple(tuple(int(e) for e in t) for t in self.triangles)
        object.__setattr__(self, "triangles", tris)
        self._validate()

    # construction helpers

    @classmethod
    def from_sides(cls, genus: int, punctures: int, triangles: Iterable[Sequence[int]]):
        return cls(SurfaceSig(genus, punctures), tuple(tuple(t) for t in triangles))

    def _replace(self, triangles) -> "DecoratedTriangulation":
        # moves and renumbering preserve every invariant, so skip re-validation
        out = object.__new__(DecoratedTriangulation)
        object.__setattr__(out, "surface", self.surface)
        object.__setattr__(out, "triangles", tuple(tuple(t) for t in triangles))
        return out

    def _validate(self):
        surf = self.surface
        if len(self.triangles) != surf.n_triangles:
            raise InvalidSurface(
                f"expected {surf.n_triangles} triangles, got {len(self.triangles)}"
            )
        counts = {}
        for t in self.triangles:
            if len(t) != 3:
                raise InvalidSurface(f"triangle {t} does not have three sides")
            for e in t:
                counts[e] = counts.get(e, 0) + 1
        expected = set(range(1, surf.n_edges + 1))
        if set(counts) != expected or any(c != 2 for c in counts.values()):
            raise InvalidSurface("every edge id in 1..3m must fill exactly two side slots")
        if not self._dual_connected():
            raise InvalidSurface("dual graph is not connected")
        v = self.n_vertices()
        if v != surf.punctures:
            raise InvalidSurface(
                f"gluing has {v} vertices but the surface has {surf.punctures} punctures"
            )

    # basic queries

    @property
    def m(self) -> int:
        return self.surface.m

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_edges(self) -> int:
        return 3 * self.surface.m

    def side(self, mu: int, s: int) -> int:
        return self.triangles[mu - 1][s]

    def slots(self, edge: int):
        """The two ``(triangle, side)`` slots of ``edge``, lower slot first."""
        return self.slot_table()[edge]

    def slot_table(self) -> dict:
        return self._slot_table

    @functools.cached_property
    def _slot_table(self) -> dict:
        table = {}
        for mu, t in enumerate(self.triangles, start=1):
            for s, e in enumerate(t):
                table.setdefault(e, []).append((mu, s))
        return {e: tuple(sorted(v)) for e, v in table.items()}

    def edges_of(self, mu: int) -> tuple:
        return self.triangles[mu - 1]

    def is_embedded(self, mu: int) -> bool:
        return len(set(self.triangles[mu - 1])) == 3

    def _dual_connected(self) -> bool:
        table = {}
        for mu, t in enumerate(self.triangles, start=1):
            for e in t:
                table.setdefault(e, set()).add(mu)
        adj = {mu: set() for mu in range(1, len(self.triangles) + 1)}
        for tris in table.values():
            for a in tris:
                adj[a] |= tris
        seen, todo = {1}, [1]
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(self.triangles)

    def corner_classes(self) -> list:
        """Partition of the corners ``(triangle, local corner)`` into punctures."""
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for mu in range(1, self.n_triangles + 1):
            for c in range(3):
                find((mu, c))
        for (mu, s), (nu, t) in self.slot_table().values():
            union((mu, s), (nu, (t + 1) % 3))
            union((mu, (s + 1) % 3), (nu, t))
        classes = {}
        for x in list(parent):
            classes.setdefault(find(x), []).append(x)
        return sorted(sorted(v) for v in classes.values())

    def n_vertices(self) -> int:
        return len(self.corner_classes())

    def canonical(self) -> "DecoratedTriangulation":
        """Same decorated triangulation with edges renumbered by first appearance.

        Edge ids are bookkeeping only (the decorated data is the numbered,
        marked, glued triangles), so two triangulations are the same exactly
        when their canonical forms are equal.
        """
        ren = {}
        for t in self.triangles:
            for e in t:
                ren.setdefault(e, len(ren) + 1)
        return self._replace(tuple(ren[e] for e in t) for t in self.triangles)

    def same_as(self, other: "DecoratedTriangulation") -> bool:
        return self.surface == other.surface and self.canonical().triangles == other.canonical().triangles

    def edge_correspondence(self, other: "DecoratedTriangulation") -> dict:
        """Map from this triangulation's edge ids to ``other``'s, slot by slot."""
        if not self.same_as(other):
            raise InvalidPath("triangulations differ beyond edge numbering")
        return {e: f for t, u in zip(self.triangles, other.triangles) for e, f in zip(t, u)}

    def euler_characteristic(self) -> int:
        """``V - E + F`` of the closed surface."""
        return self.n_vertices() - self.n_edges + self.n_triangles

    # serialization

    def to_dict(self) -> dict:
        return {
            "genus": self.surface.genus,
            "punctures": self.surface.punctures,
            "triangles": [{"sides": list(t)} for t in self.triangles],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecoratedTriangulation":
        try:
            tris = [t["sides"] for t in data["triangles"]]
            return cls.from_sides(int(data["genus"]), int(data["punctures"]), tris)
        except (KeyError, TypeError) as exc:
            raise InvalidSurface(f"malformed triangulation JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "DecoratedTriangulation":
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# standard fixtures


def _polygon_fan(genus: int) -> list:
    """One-vertex triangulation of the closed genus-g surface from the 4g-gon.

    Polygon sides follow ``a1 b1 a1^-1 b1^-1 ...``; the fan of diagonals from
    polygon vertex 0 cuts it into ``4g - 2`` triangles.
    """
    n = 4 * genus
    side_edge = {}
    for h in range(genus):
        a, b = 2 * h + 1, 2 * h + 2
        side_edge[4 * h] = a
        side_edge[4 * h + 1] = b
        side_edge[4 * h + 2] = a
        side_edge[4 * h + 3] = b
    next_id = 2 * genus + 1
    diag = {}
    for r in range(2, n - 1):
        diag[r] = next_id
        next_id += 1

    def chord(r):  # edge from polygon vertex 0 to vertex r
        if r == 1:
            return side_edge[0]
        if r == n - 1:
            return side_edge[n - 1]
        return diag[r]

    return [(chord(r), side_edge[r], chord(r + 1)) for r in range(1, n - 1)]


def _insert_puncture(triangles: list, mu: int) -> list:
    """Split triangle ``mu`` into three by a new interior vertex (adds 3 edges)."""
    n_edges = max(max(t) for t in triangles)
    a, b, c = triangles[mu - 1]
    n0, n1, n2 = n_edges + 1, n_edges + 2, n_edges + 3
    out = list(triangles)
    out[mu - 1] = (a, n1, n0)
    out.append((b, n2, n1))
    out.append((c, n0, n2))
    return out


def build_standard(g: int, p: int) -> DecoratedTriangulation:
    """Deterministic decorated triangulation of the genus-``g``, ``p``-punctured surface.

    * ``(1, 1)``: the square torus, both triangles ``(1, 2, 3)``.
    * ``(0, 3)``: two triangles glued along all sides, ``(1, 2, 3)`` and ``(1, 3, 2)``.
    * ``g >= 1``: fan triangulation of the 4g-gon, then one puncture inserted into
      triangle 1, 2, 3, ... (cyclically) for each further puncture.
    * ``g == 0``: the ``(0, 3)`` table with punctures inserted the same way.
    """
    surf = SurfaceSig(g, p)  # raises InvalidSurface
    if g == 0:
        tris = [(1, 2, 3), (1, 3, 2)]
        extra = p - 3
    elif g == 1:
        tris = [(1, 2, 3), (1, 2, 3)]
        extra = p - 1
    else:
        tris = _polygon_fan(g)
        extra = p - 1
    for h in range(extra):
        tris = _insert_puncture(tris, (h % len(tris)) + 1)
    return DecoratedTriangulation(surf, tuple(tris))


# --------------------------------------------------------------------------
# moves


def flip_applicable(tau: DecoratedTriangulation, i: int, j: int) -> bool:
    n = tau.n_triangles
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        return False
    return tau.side(i, 0) == tau.side(j, 0)


def apply_move(tau: DecoratedTriangulation, mv: Move) -> DecoratedTriangulation:
    n = tau.n_triangles
    if isinstance(mv, Reindex):
        if len(mv.perm) != n:
            raise NotApplicable(f"reindexing of {len(mv.perm)} triangles applied to {n}")
        return tau._replace(tau.triangles[mv(i) - 1] for i in range(1, n + 1))
    if isinstance(mv, MarkRotation):
        if not 1 <= mv.i <= n:
            raise NotApplicable(f"rho_{mv.i}: no triangle {mv.i}")
        tris = list(tau.triangles)
        a0, a1, a2 = tris[mv.i - 1]
        # old side s becomes new side s + 2
        tris[mv.i - 1] = (a1, a2, a0)
        return tau._replace(tris)
    if isinstance(mv, DiagonalExchange):
        i, j = mv.i, mv.j
        if not (1 <= i <= n and 1 <= j <= n):
            raise NotApplicable(f"phi_{i}{j}: triangle index out of range")
        if i == j:
            raise NotApplicable(f"phi_{i}{j}: triangles must be distinct")
        if tau.side(i, 0) != tau.side(j, 0):
            raise NotApplicable(
                f"phi_{i}{j}: marked corners are not opposite a shared edge "
                f"(side 0 edges {tau.side(i, 0)} and {tau.side(j, 0)})"
            )
        e, ej, em = tau.triangles[i - 1]
        _, el, ek = tau.triangles[j - 1]
        tris = list(tau.triangles)
        tris[i - 1] = (e, ek, ej)
        tris[j - 1] = (e, em, el)
        return tau._replace(tris)
    raise TypeError(f"unknown move {mv!r}")


def apply_moves(tau: DecoratedTriangulation, moves: Iterable[Move]) -> DecoratedTriangulation:
    for idx, mv in enumerate(moves):
        try:
            tau = apply_move(tau, mv)
        except NotApplicable as exc:
            exc.move_index = idx
            raise
    return tau


def path_states(tau: DecoratedTriangulation, moves: Sequence[Move]) -> list:
    """All intermediate triangulations ``tau_(0), ..., tau_(n)``."""
    out = [tau]
    for mv in moves:
        out.append(apply_move(out[-1], mv))
    return out


def redecorate(tau: DecoratedTriangulation, rotations: Sequence[int]) -> DecoratedTriangulation:
    """Rotate the mark of triangle ``mu`` ``rotations[mu - 1]`` times."""
    for mu, r in enumerate(rotations, start=1):
        for _ in range(r % 3):
            tau = apply_move(tau, MarkRotation(mu))
    return tau


def all_decorations(tau: DecoratedTriangulation):
    for rot in itertools.product(range(3), repeat=tau.n_triangles):
        yield redecorate(tau, rot)


def align_for_flip(tau: DecoratedTriangulation, edge: int):
    """Mark rotations that put ``edge`` on side 0 of both triangles it bounds.

    Returns ``(moves, mu, nu)``; raises ``NotApplicable`` if ``edge`` bounds a
    single triangle twice (the interior edge of a self-folded triangle).
    """
    (mu, s), (nu, t) = tau.slots(edge)
    if mu == nu:
        raise NotApplicable(f"edge {edge} bounds triangle {mu} on two sides")
    moves = [MarkRotation(mu)] * s + [MarkRotation(nu)] * t  # side s -> s + 2 per turn
    return moves, mu, nu


def applicable_flips(tau: DecoratedTriangulation) -> list:
    out = []
    for i in range(1, tau.n_triangles + 1):
        for j in range(i + 1, tau.n_triangles + 1):
            if tau.side(i, 0) == tau.side(j, 0):
                out.append(DiagonalExchange(i, j))
    return out


# --------------------------------------------------------------------------
# derived combinatorics


def corner_counts(tau: DecoratedTriangulation, only=None) -> np.ndarray:
    """The matrix ``a[i, j]``: corners with edge ``i`` on the left and ``j`` on the right.

    Indices are 0-based edge ids (``edge - 1``).  ``only`` restricts to one triangle.
    """
    n = tau.n_edges
    a = np.zeros((n, n), dtype=np.int64)
    tris = range(1, tau.n_triangles + 1) if only is None else [only]
    for mu in tris:
        t = tau.triangles[mu - 1]
        for s in range(3):
            left, right = t[(s + 1) % 3], t[s]
            a[left - 1, right - 1] += 1
    return a


def sigma_matrix(tau: DecoratedTriangulation, only=None) -> np.ndarray:
    """Antisymmetric ``sigma[i, j] = a[i, j] - a[j, i]`` (0-based edge indices)."""
    a = corner_counts(tau, only)
    return a - a.T


def exchange_labels(tau: DecoratedTriangulation, i: int, j: int) -> ExchangeLabels:
    """Label the five edges of the diagonal exchange ``phi_ij`` and classify it.

    When only one pair of adjacent outer edges is identified the quadrilateral
    is turned half way round (``mu`` and ``nu`` swapped) so that the pattern
    reads as Case 2 or Case 3.
    """
    if not flip_applicable(tau, i, j):
        raise NotApplicable(f"phi_{i}{j} is not applicable")

    def labels(mu, nu):
        e, ej, em = tau.triangles[mu - 1]
        _, el, ek = tau.triangles[nu - 1]
        return e, ej, ek, el, em

    for mu, nu in ((i, j), (j, i)):
        e, ej, ek, el, em = labels(mu, nu)
        pairs = {
            name
            for name, (x, y) in {
                "jk": (ej, ek), "jm": (ej, em), "jl": (ej, el),
                "km": (ek, em), "kl": (ek, el), "lm": (el, em),
            }.items()
            if x == y
        }
        case = {
            frozenset(): 1,
            frozenset({"jk"}): 2,
            frozenset({"jm"}): 3,
            frozenset({"jl"}): 4,
            frozenset({"km"}): 5,
            frozenset({"jk", "lm"}): 6,
            frozenset({"jm", "kl"}): 7,
            frozenset({"jl", "km"}): 8,
        }.get(frozenset(pairs))
        if case is not None:
            return ExchangeLabels(case, mu, nu, e, ej, ek, el, em)
    raise AssertionError(f"unclassifiable exchange pattern at phi_{i}{j}")  # pragma: no cover


def classify_exchange(tau: DecoratedTriangulation, i: int, j: int) -> int:
    return exchange_labels(tau, i, j).case


def detect_pentagon(tau: DecoratedTriangulation, i: int, j: int, k: int) -> bool:
    """Whether triangles ``i, j, k`` sit in the pentagon of the pentagon relation.

    ``j`` is the middle triangle: ``i`` meets it across ``i``'s side 0 and
    ``j``'s side 1, and ``j`` meets ``k`` across ``j``'s side 0 and ``k``'s
    side 1.  This pins all three marks.
    """
    n = tau.n_triangles
    if len({i, j, k}) != 3 or not all(1 <= x <= n for x in (i, j, k)):
        return False
    return tau.side(i, 0) == tau.side(j, 1) and tau.side(j, 0) == tau.side(k, 1)


def find_pentagon(tau: DecoratedTriangulation):
    """First redecoration of ``tau`` (in rotation-count order) containing a pentagon.

    Returns ``(decorated, (i, j, k))``; raises ``NotFound`` if there is none.
    """
    n = tau.n_triangles
    for cand in all_decorations(tau):
        for i, j, k in itertools.permutations(range(1, n + 1), 3):
            if detect_pentagon(cand, i, j, k):
                return cand, (i, j, k)
    raise NotFound(0)


def neighbors(tau: DecoratedTriangulation):
    """Single-move neighbors ``(move, result)`` used by the path search."""
    n = tau.n_triangles
    for mu in range(1, n + 1):
        yield MarkRotation(mu), apply_move(tau, MarkRotation(mu))
    for mv in applicable_flips(tau):
        yield mv, apply_move(tau, mv)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            mv = transposition(n, a, b)
            yield mv, apply_move(tau, mv)


def find_move_path(tau, target, depth_limit: int = 6) -> list:
    """Breadth-first search for a move sequence carrying ``tau`` to ``target``.

    Triangulations are compared up to edge numbering (see ``canonical``).
    """
    if tau.surface != target.surface:
        raise InvalidPath("triangulations of different surfaces")
    goal = target.canonical().triangles
    start = tau.canonical()
    if start.triangles == goal:
        return []
    parent = {start.triangles: None}
    frontier = deque([(start, 0)])
    while frontier:
        cur, depth = frontier.popleft()
        if depth >= depth_limit:
            continue
        for mv, nxt in neighbors(cur):
            key = nxt.canonical().triangles
            if key in parent:
                continue
            parent[key] = (cur.triangles, mv)
            if key == goal:
                path = []
                while parent[key] is not None:
                    key, step = parent[key]
                    path.append(step)
                return path[::-1]
            frontier.append((nxt.canonical(), depth + 1))
    raise NotFound(depth_limit)


# --------------------------------------------------------------------------
# move JSON


def move_to_dict(mv: Move) -> dict:
    if isinstance(mv, MarkRotation):
        return {"op": "rho", "i": mv.i}
    if isinstance(mv, DiagonalExchange):
        return {"op": "phi", "i": mv.i, "j": mv.j}
    if isinstance(mv, Reindex):
        return {"op": "alpha", "perm": list(mv.perm)}
    raise TypeError(mv)


def move_from_dict(d: dict) -> Move:
    op = d.get("op")
    try:
        if op == "rho":
            return MarkRotation(int(d["i"]))
        if op == "phi":
            return DiagonalExchange(int(d["i"]), int(d["j"]))
        if op == "alpha":
            return Reindex(tuple(d["perm"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidPath(f"malformed move {d!r}: {exc}") from exc
    raise InvalidPath(f"unknown move op {op!r}")


def moves_from_json(text: str) -> list:
    return [move_from_dict(d) for d in json.loads(text)]


def moves_to_json(moves: Sequence[Move]) -> str:
    return json.dumps([move_to_dict(mv) for mv in moves])
