"""Rational expressions over quantum-torus generators, as an immutable DAG.

Nodes compare by identity so that shared subexpressions stay shared through
substitution and evaluation (every traversal memoizes on ``id``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Sum((self, lift(other)))

    def __radd__(self, other):
        return Sum((lift(other), self))

    def __sub__(self, other):
        return Sum((self, Prod((Const(Fraction(-1)), lift(other)))))

    def __rsub__(self, other):
        return lift(other) - self

    def __neg__(self):
        return Prod((Const(Fraction(-1)), self))

    def __mul__(self, other):
        return Prod((self, lift(other)))

    def __rmul__(self, other):
        return Prod((lift(other), self))

    def inv(self):
        return Inv(self)


@dataclass(frozen=True, eq=False)
class Gen(Expr):
    """Generator ``kind_index``; ``kind`` is ``'Y'``, ``'Z'`` (per triangle) or ``'X'`` (per edge)."""

    kind: str
    index: int

    @property
    def key(self):
        return (self.kind, self.index)


@dataclass(frozen=True, eq=False)
class QPow(Expr):
    k: int


@dataclass(frozen=True, eq=False)
class Param(Expr):
    name: str


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True, eq=False)
class Sum(Expr):
    children: tuple


@dataclass(frozen=True, eq=False)
class Prod(Expr):
    children: tuple


@dataclass(frozen=True, eq=False)
class Inv(Expr):
    child: Expr


ONE = Const(Fraction(1))
A = Param("a")
B = Param("b")


def lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(Fraction(x))


def prod(*xs) -> Expr:
    xs = [lift(x) for x in xs]
    return xs[0] if len(xs) == 1 else Prod(tuple(xs))


def Yg(mu: int) -> Gen:
    return Gen("Y", mu)


def Zg(mu: int) -> Gen:
    return Gen("Z", mu)


def Xg(i: int) -> Gen:
    return Gen("X", i)


def H(mu: int, s: int) -> Expr:
    """``H^0 = Y Z^-1``, ``H^1 = Z``, ``H^2 = Y^-1``."""
    if s == 0:
        return Prod((Yg(mu), Inv(Zg(mu))))
    if s == 1:
        return Zg(mu)
    return Inv(Yg(mu))


def walk(e: Expr):
    """Post-order traversal without repeats."""
    seen, out, stack = set(), [], [(e, False)]
    while stack:
        node, done = stack.pop()
        if id(node) in seen:
            continue
        if done:
            seen.add(id(node))
            out.append(node)
            continue
        stack.append((node, True))
        for c in children(node):
            if id(c) not in seen:
                stack.append((c, False))
    return out


def children(node: Expr) -> tuple:
    if isinstance(node, (Sum, Prod)):
        return node.children
    if isinstance(node, Inv):
        return (node.child,)
    return ()


def generators(e: Expr) -> set:
    return {n.key for n in walk(e) if isinstance(n, Gen)}


def params(e: Expr) -> set:
    return {n.name for n in walk(e) if isinstance(n, Param)}


def substitute(e: Expr, images: Mapping, memo=None) -> Expr:
    """Replace generators by their images (missing keys stay put)."""
    memo = {} if memo is None else memo
    for node in walk(e):
        if id(node) in memo:
            continue
        if isinstance(node, Gen):
            new = images.get(node.key, node)
        elif isinstance(node, (Sum, Prod)):
            kids = tuple(memo[id(c)] for c in node.children)
            changed = any(k is not c for k, c in zip(kids, node.children))
            new = type(node)(kids) if changed else node
        elif isinstance(node, Inv):
            kid = memo[id(node.child)]
            new = Inv(kid) if kid is not node.child else node
        else:
            new = node
        memo[id(node)] = new
    return memo[id(e)]


def bind_params(e: Expr, values: Mapping) -> Expr:
    """Replace parameter leaves by expressions (e.g. ``a -> q^-2``)."""
    images = {name: lift(v) for name, v in values.items()}
    memo = {}
    for node in walk(e):
        if isinstance(node, Param) and node.name in images:
            memo[id(node)] = images[node.name]
        elif isinstance(node, (Sum, Prod)):
            kids = tuple(memo[id(c)] for c in node.children)
            memo[id(node)] = node if all(k is c for k, c in zip(kids, node.children)) else type(node)(kids)
        elif isinstance(node, Inv):
            kid = memo[id(node.child)]
            memo[id(node)] = node if kid is node.child else Inv(kid)
        else:
            memo[id(node)] = node
    return memo[id(e)]


def size(e: Expr) -> int:
    return len(walk(e))


# --------------------------------------------------------------------------
# substitution maps


class SubstitutionMap:
    """An algebra map given by generator images; unlisted generators map to themselves.

    Maps run from the target triangulation's algebra back to the source's, so
    composition ``f.compose(g)`` means ``f o g``: substitute ``g``'s images first,
    then rewrite the result through ``f``.
    """

    def __init__(self, images: Mapping | None = None, label: str = ""):
        self.images = dict(images or {})
        self.label = label

    def __call__(self, e: Expr, memo=None) -> Expr:
        return substitute(e, self.images, memo)

    def image(self, key) -> Expr:
        img = self.images.get(key)
        return Gen(*key) if img is None else img

    def compose(self, inner: "SubstitutionMap") -> "SubstitutionMap":
        """``self o inner``."""
        memo = {}
        imgs = dict(self.images)
        for key, img in inner.images.items():
            imgs[key] = substitute(img, self.images, memo)
        label = " o ".join(x for x in (self.label, inner.label) if x)
        return SubstitutionMap(imgs, label)

    def keys(self):
        return set(self.images)


# --------------------------------------------------------------------------
# JSON


def to_json_obj(e: Expr):
    """Nested node-tagged form (shared nodes are expanded)."""
    memo = {}
    for node in walk(e):
        if isinstance(node, Gen):
            out = {"gen": node.kind, "index": node.index}
        elif isinstance(node, QPow):
            out = {"q": node.k}
        elif isinstance(node, Param):
            out = {"param": node.name}
        elif isinstance(node, Const):
            out = {"const": str(node.value)}
        elif isinstance(node, Sum):
            out = {"sum": [memo[id(c)] for c in node.children]}
        elif isinstance(node, Prod):
            out = {"prod": [memo[id(c)] for c in node.children]}
        else:
            out = {"inv": memo[id(node.child)]}
        memo[id(node)] = out
    return memo[id(e)]


def from_json_obj(d) -> Expr:
    if "gen" in d:
        return Gen(d["gen"], int(d["index"]))
    if "q" in d:
        return QPow(int(d["q"]))
    if "param" in d:
        return Param(d["param"])
    if "const" in d:
        return Const(Fraction(d["const"]))
    if "sum" in d:
        return Sum(tuple(from_json_obj(c) for c in d["sum"]))
    if "prod" in d:
        return Prod(tuple(from_json_obj(c) for c in d["prod"]))
    if "inv" in d:
        return Inv(from_json_obj(d["inv"]))
    raise ValueError(f"unknown expression node {d!r}")
