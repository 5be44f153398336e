"""Coordinate-change isomorphisms of the fraction algebras, and an evaluation oracle.

Maps go backwards along a move: the map attached to ``tau -> tau'`` sends
generators of ``tau'``'s algebra to expressions in ``tau``'s generators.  Along
a path ``tau_0 -> ... -> tau_n`` the composite is ``m_1 o ... o m_n``.

Equality of two expressions is tested by evaluating them in clock-and-shift
matrix representations at ``q = zeta_2N`` (see ``cyclotomic``).  A nonzero
difference in a nonsingular evaluation refutes equality outright; agreement
across many independent evaluations is accepted as equality.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import expr as ex
from .cyclotomic import make_field
from .errors import InvalidPath, NotApplicable, SingularMatrix
from .expr import A, B, Expr, Gen, Inv, Prod, QPow, SubstitutionMap, Sum, Xg, Yg, Zg
from .triangulation import (
    DecoratedTriangulation,
    DiagonalExchange,
    MarkRotation,
    Move,
    Reindex,
    align_for_flip,
    apply_move,
    compose_perms,
    detect_pentagon,
    exchange_labels,
    flip_applicable,
    pentagon_paths,
    transposition,
)
from .qtorus import TRIANGLE_SIGMA


# --------------------------------------------------------------------------
# generalized Kashaev maps


def map_rho_hat(i: int, a: Expr = A) -> SubstitutionMap:
    return SubstitutionMap(
        {("Y", i): ex.prod(a, Inv(Yg(i)), Zg(i)), ("Z", i): Inv(Yg(i))},
        f"rho^_{i}",
    )


def map_phi_hat(i: int, j: int, b: Expr = B) -> SubstitutionMap:
    d_inv = Inv(Sum((ex.prod(b, Yg(i), Yg(j)), ex.prod(Zg(i), Zg(j)))))
    return SubstitutionMap(
        {
            ("Y", i): ex.prod(d_inv, Zg(j)),
            ("Z", i): ex.prod(b, d_inv, Yg(i)),
            ("Y", j): ex.prod(d_inv, Zg(i)),
            ("Z", j): ex.prod(b, d_inv, Yg(j)),
        },
        f"phi^_{i}{j}",
    )


def map_alpha_hat(alpha: Reindex) -> SubstitutionMap:
    imgs = {}
    for i in range(1, len(alpha.perm) + 1):
        if alpha(i) != i:
            imgs[("Y", i)] = Yg(alpha(i))
            imgs[("Z", i)] = Zg(alpha(i))
    return SubstitutionMap(imgs, f"alpha^{list(alpha.perm)}")


def move_hat(mv: Move, a: Expr = A, b: Expr = B) -> SubstitutionMap:
    if isinstance(mv, MarkRotation):
        return map_rho_hat(mv.i, a)
    if isinstance(mv, DiagonalExchange):
        return map_phi_hat(mv.i, mv.j, b)
    if isinstance(mv, Reindex):
        return map_alpha_hat(mv)
    raise TypeError(mv)


def compose_along_path(tau: DecoratedTriangulation, path: Sequence[Move], a: Expr = A,
                       b: Expr = B) -> SubstitutionMap:
    """``Psi`` from the end of ``path`` back to ``tau``."""
    cur = tau
    for idx, mv in enumerate(path):
        try:
            cur = apply_move(cur, mv)
        except NotApplicable as exc:
            raise InvalidPath(f"move {idx} ({mv}) is not applicable: {exc}") from exc
    acc = SubstitutionMap(label="id")
    for mv in reversed(path):
        acc = move_hat(mv, a, b).compose(acc)
    return acc


def kashaev_generators(n_triangles: int) -> list:
    return [(k, mu) for mu in range(1, n_triangles + 1) for k in ("Y", "Z")]


# --------------------------------------------------------------------------
# quantum shear maps and F_tau


def _plus(c: int, x: Expr) -> Expr:
    """``1 + q^c x``."""
    return Sum((ex.ONE, ex.prod(QPow(c), x)))


def map_delta_hat(tau: DecoratedTriangulation, edge: int, case=None) -> SubstitutionMap:
    """Chekhov-Fock map from the flipped triangulation back to ``tau`` (edge ids kept)."""
    rot, mu, nu = align_for_flip(tau, edge)
    aligned = tau
    for mv in rot:
        aligned = apply_move(aligned, mv)
    lab = exchange_labels(aligned, mu, nu)
    if case is not None and case != lab.case:
        raise NotApplicable(f"flip of edge {edge} is case {lab.case}, not case {case}")
    xi = Xg(lab.i)
    xi_inv = Inv(xi)
    up = _plus(1, xi)
    up3 = _plus(3, xi)
    down = Inv(_plus(1, xi_inv))
    down3 = Inv(_plus(3, xi_inv))
    factors = {
        1: {"j": [up], "k": [down], "l": [up], "m": [down]},
        2: {"j": [xi], "l": [up], "m": [down]},
        3: {"j": [xi], "k": [down], "l": [up]},
        4: {"j": [up, up3], "k": [down], "m": [down]},
        5: {"j": [up], "l": [up], "k": [down, down3]},
        6: {"j": [xi], "l": [xi]},
        7: {"j": [xi], "k": [xi]},
        8: {"j": [up, up3], "k": [down, down3]},
    }[lab.case]
    imgs = {("X", lab.i): xi_inv}
    for name, fs in factors.items():
        e = getattr(lab, name)
        imgs[("X", e)] = Prod(tuple(fs) + (Xg(e),))
    return SubstitutionMap(imgs, f"Delta^_{edge}")


def f_tau_map(tau: DecoratedTriangulation) -> SubstitutionMap:
    """``X_i -> q^(delta sigma_ts) H^s_mu H^t_nu`` as expressions in ``Y``, ``Z``."""
    imgs = {}
    for e in range(1, tau.n_edges + 1):
        (mu, s), (nu, t) = tau.slots(e)
        factors = (ex.H(mu, s), ex.H(nu, t))
        if mu == nu:
            factors = (QPow(TRIANGLE_SIGMA[t][s]),) + factors
        imgs[("X", e)] = Prod(factors)
    return SubstitutionMap(imgs, "F_tau")


# --------------------------------------------------------------------------
# parameters


_QPOW = re.compile(r"^q\^?\(?([+-]?\d+)?\)?$")


def parse_param(spec) -> Expr | None:
    """``'q-2'``, ``'q^3'``, ``'q'``, ``'1'``, ``'3/2'`` to expressions; ``'random'`` to ``None``."""
    if spec is None or isinstance(spec, Expr):
        return spec
    s = str(spec).strip().replace(" ", "")
    if s == "random":
        return None
    m = _QPOW.match(s)
    if m:
        return QPow(int(m.group(1)) if m.group(1) else 1)
    try:
        return ex.Const(Fraction(s))
    except ValueError as exc:
        raise ValueError(f"cannot parse parameter value {spec!r}") from exc


def param_repr(e: Expr | None) -> str:
    if e is None:
        return "random"
    if isinstance(e, QPow):
        return f"q^{e.k}"
    if isinstance(e, ex.Const):
        return str(e.value)
    return "expr"


# --------------------------------------------------------------------------
# representations


class CyclotomicRep:
    """Clock-and-shift representation of the Kashaev generators of some triangles.

    ``Y_mu = c_mu diag(q^(2k))`` and ``Z_mu = d_mu S`` with ``S e_k = e_(k-1)``
    act on the tensor factor of ``mu``; so ``Z Y = q^2 Y Z`` and different
    triangles commute.  ``params`` binds ``a`` and ``b`` to field scalars.
    """

    def __init__(self, fld, triangles: Sequence[int], params: dict, rng: random.Random):
        self.field = fld
        self.N = fld.N
        self.triangles = list(triangles)
        self.params = dict(params)
        self.dim = self.N ** len(self.triangles)
        self._mats = {}
        N = self.N
        clock = [fld.q(2 * k) for k in range(N)]
        for pos, mu in enumerate(self.triangles):
            c = fld.random_nonzero(rng)
            d = fld.random_nonzero(rng)
            yl = fld.diag([fld.s_mul(c, x) for x in clock])
            zl = fld.shift(N, d)
            yi = fld.diag([fld.s_mul(fld.s_inv(c), fld.q(-2 * k)) for k in range(N)])
            zi = self._inverse_shift(d)
            for key, loc in ((("Y", mu), yl), (("Z", mu), zl), (("Yinv", mu), yi), (("Zinv", mu), zi)):
                self._mats[key] = self._embed(pos, loc)

    def _inverse_shift(self, d):
        fld, N = self.field, self.N
        m = fld.shift(N, fld.s_inv(d))
        # S^-1 = S^T
        if fld.exact:
            return [list(col) for col in zip(*m)]
        return m.T.copy()

    def _embed(self, pos: int, local):
        fld = self.field
        out = None
        for k in range(len(self.triangles)):
            f = local if k == pos else fld.eye(self.N)
            out = f if out is None else fld.kron(out, f)
        return out

    def gen(self, key):
        try:
            return self._mats[key]
        except KeyError:
            raise KeyError(f"generator {key} not covered by this representation") from None

    def gen_inv(self, key):
        return self._mats[(key[0] + "inv", key[1])]


class _Evaluator:
    """Evaluates expressions in one representation; values are ``(is_scalar, value)``."""

    def __init__(self, rep: CyclotomicRep):
        self.rep = rep
        self.f = rep.field
        self.vals = {}
        self.invs = {}

    def scalar_of(self, node):
        f = self.f
        if isinstance(node, QPow):
            return f.q(node.k)
        if isinstance(node, ex.Const):
            return f.const(node.value)
        if isinstance(node, ex.Param):
            return self.rep.params[node.name]
        raise TypeError(node)

    def value(self, e: Expr):
        for node in ex.walk(e):
            if id(node) in self.vals:
                continue
            self.vals[id(node)] = self._compute(node)
        return self.vals[id(e)]

    def _compute(self, node):
        f = self.f
        if isinstance(node, Gen):
            return (False, self.rep.gen(node.key))
        if isinstance(node, (QPow, ex.Const, ex.Param)):
            return (True, self.scalar_of(node))
        if isinstance(node, Sum):
            acc = None
            for c in node.children:
                acc = self._add(acc, self.vals[id(c)])
            return acc
        if isinstance(node, Prod):
            acc = None
            for c in node.children:
                acc = self._mul(acc, self.vals[id(c)])
            return acc
        if isinstance(node, Inv):
            return self._inverse(node.child)
        raise TypeError(node)

    def _add(self, x, y):
        f = self.f
        if x is None:
            return y
        (xs, xv), (ys, yv) = x, y
        if xs and ys:
            return (True, f.s_add(xv, yv))
        if xs:
            return (False, f.add_scalar(yv, xv))
        if ys:
            return (False, f.add_scalar(xv, yv))
        return (False, f.add(xv, yv))

    def _mul(self, x, y):
        f = self.f
        if x is None:
            return y
        (xs, xv), (ys, yv) = x, y
        if xs and ys:
            return (True, f.s_mul(xv, yv))
        if xs:
            return (False, f.scale(xv, yv))
        if ys:
            return (False, f.scale(yv, xv))
        return (False, f.matmul(xv, yv))

    def _inverse(self, node):
        if id(node) in self.invs:
            return self.invs[id(node)]
        f = self.f
        if isinstance(node, Gen):
            out = (False, self.rep.gen_inv(node.key))
        elif isinstance(node, Inv):
            out = self.value(node.child)
        elif isinstance(node, Prod):
            acc = None
            for c in reversed(node.children):
                acc = self._mul(acc, self._inverse(c))
            out = acc
        else:
            s, v = self.value(node)
            try:
                out = (True, f.s_inv(v)) if s else (False, f.inv(v))
            except SingularMatrix as exc:
                exc.node = node
                raise
        self.invs[id(node)] = out
        return out

    def is_zero_diff(self, e1: Expr, e2: Expr) -> bool:
        (s1, v1), (s2, v2) = self.value(e1), self.value(e2)
        f = self.f
        if s1 and s2:
            return f.s_is_zero(f.s_add(v1, f.s_neg(v2)))
        if s1 != s2:
            # scalar vs matrix: compare against scalar multiple of identity
            if s1:
                v1 = f.scale(v1, f.eye(self.rep.dim))
            else:
                v2 = f.scale(v2, f.eye(self.rep.dim))
        return f.equal(v1, v2)


def eval_expr(e: Expr, rep: CyclotomicRep):
    """Matrix of ``e`` in ``rep`` (scalars come back as scalar multiples of the identity)."""
    s, v = _Evaluator(rep).value(e)
    if s:
        return rep.field.scale(v, rep.field.eye(rep.dim))
    return v


# --------------------------------------------------------------------------
# equality verdicts


@dataclass
class TrialConfig:
    sizes: tuple = (3, 5, 7)
    samples: int = 5
    min_successes: int = 10
    retries: int = 20
    seed: int = 20240611
    backend: str = "residue"
    max_dim: int | None = None

    def to_dict(self):
        return {
            "sizes": list(self.sizes), "samples": self.samples,
            "min_successes": self.min_successes, "retries": self.retries,
            "seed": self.seed, "backend": self.backend, "max_dim": self.max_dim,
        }


@dataclass
class Verdict:
    claim: str
    verdict: str  # "equal" | "notequal" | "inconclusive"
    trials: list = field(default_factory=list)
    witness: dict | None = None

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"

    def to_dict(self):
        return {"claim": self.claim, "verdict": self.verdict, "trials": self.trials,
                "witness": self.witness}


def _triangles_of(*es) -> tuple:
    tris = set()
    for e in es:
        for kind, idx in ex.generators(e):
            if kind == "X":
                raise ValueError("substitute F_tau before evaluating Chekhov-Fock generators")
            tris.add(idx)
    return tuple(sorted(tris))


def compare_pairs(pairs, trials: TrialConfig | None = None, params: dict | None = None,
                  claim: str = "") -> Verdict:
    """Decide whether ``e1 == e2`` for every ``(label, e1, e2)`` in ``pairs``.

    ``params`` maps ``'a'``/``'b'`` to fixed expressions (q-powers or rationals);
    unbound parameters are sampled at random for each trial.
    """
    trials = trials or TrialConfig()
    params = {k: parse_param(v) for k, v in (params or {}).items()}
    rng = random.Random(trials.seed)
    groups = {}
    for label, e1, e2 in pairs:
        groups.setdefault(_triangles_of(e1, e2), []).append((label, e1, e2))
    records = []
    successes = 0
    retries_left = trials.retries
    for N in trials.sizes:
        fld = make_field(N, trials.backend)
        if trials.max_dim is not None:
            biggest = max((len(t) for t in groups), default=0)
            if N ** biggest > trials.max_dim:
                continue
        done = 0
        while done < trials.samples:
            vals, shown = {}, {}
            for name in ("a", "b"):
                fixed = params.get(name)
                if fixed is None:
                    vals[name] = fld.random_nonzero(rng)
                    shown[name] = fld.s_repr(vals[name])
                else:
                    vals[name] = fld.q(fixed.k) if isinstance(fixed, QPow) else fld.const(fixed.value)
                    shown[name] = param_repr(fixed)
            rec = {"N": N, "a": shown["a"], "b": shown["b"]}
            try:
                bad = None
                for tris, items in sorted(groups.items()):
                    ev = _Evaluator(CyclotomicRep(fld, tris, vals, rng))
                    for label, e1, e2 in items:
                        if not ev.is_zero_diff(e1, e2):
                            bad = label
                            break
                    if bad is not None:
                        break
            except SingularMatrix:
                rec["result"] = "singular"
                records.append(rec)
                retries_left -= 1
                if retries_left < 0:
                    return Verdict(claim, "inconclusive", records)
                continue
            done += 1
            if bad is not None:
                rec["result"] = "nonzero"
                records.append(rec)
                witness = {"N": N, "a": shown["a"], "b": shown["b"], "field": fld.name,
                           "generator": bad}
                return Verdict(claim, "notequal", records, witness)
            rec["result"] = "zero"
            records.append(rec)
            successes += 1
    if successes < trials.min_successes:
        return Verdict(claim, "inconclusive", records)
    return Verdict(claim, "equal", records)


def expr_equal(e1: Expr, e2: Expr, trials: TrialConfig | None = None, params=None,
               claim: str = "") -> Verdict:
    return compare_pairs([("expr", e1, e2)], trials, params, claim)


def map_pairs(f: SubstitutionMap, g: SubstitutionMap, keys=None) -> list:
    keys = sorted(keys if keys is not None else f.keys() | g.keys())
    return [(f"{k}{i}", f.image((k, i)), g.image((k, i))) for k, i in keys]


def maps_equal(f: SubstitutionMap, g: SubstitutionMap, trials=None, params=None, claim=""):
    return compare_pairs(map_pairs(f, g), trials, params, claim)


def path_pair_pairs(tau: DecoratedTriangulation, p1, p2, a=A, b=B) -> list:
    """Generator-wise comparison pairs for two paths with the same endpoints."""
    end1, end2 = tau, tau
    for mv in p1:
        end1 = apply_move(end1, mv)
    for mv in p2:
        end2 = apply_move(end2, mv)
    if not end1.same_as(end2):
        raise InvalidPath("the two paths end at different triangulations")
    f, g = compose_along_path(tau, p1, a, b), compose_along_path(tau, p2, a, b)
    return map_pairs(f, g)


def check_path_independence(tau, path_pairs, trials=None, params=None) -> list:
    out = []
    for n, (p1, p2) in enumerate(path_pairs):
        out.append(compare_pairs(path_pair_pairs(tau, p1, p2), trials, params,
                                 claim=f"thm-3.5-path-independence#{n}"))
    return out


# --------------------------------------------------------------------------
# relation suite


def flip_bases(tau: DecoratedTriangulation) -> list:
    """``(base, i, j)`` with ``phi_ij`` applicable on ``base``, one per flippable edge.

    ``base`` is ``tau`` itself when the marks already allow the flip, otherwise
    ``tau`` with marks rotated onto the edge.
    """
    out = []
    for e in range(1, tau.n_edges + 1):
        try:
            rot, mu, nu = align_for_flip(tau, e)
        except NotApplicable:
            continue
        base = tau
        for mv in rot:
            base = apply_move(base, mv)
        out.append((base, mu, nu))
    return out


def disjoint_flip_bases(tau: DecoratedTriangulation) -> list:
    out = []
    for e in range(1, tau.n_edges + 1):
        for f in range(e + 1, tau.n_edges + 1):
            try:
                r1, i, j = align_for_flip(tau, e)
                r2, k, l = align_for_flip(tau, f)
            except NotApplicable:
                continue
            if {i, j} & {k, l}:
                continue
            base = tau
            for mv in r1 + r2:
                base = apply_move(base, mv)
            out.append((base, (i, j), (k, l)))
    return out


def relation_instances(tau: DecoratedTriangulation, rng: random.Random | None = None,
                       limit: int = 6) -> dict:
    """Instances ``(base, path1, path2)`` of each move-calculus relation near ``tau``.

    Both paths start at ``base`` and end at the same triangulation.  Keys are
    statement ids; at most ``limit`` instances per relation.
    """
    rng = rng or random.Random(0)
    n = tau.n_triangles
    flips = flip_bases(tau)

    def rand_perm():
        p = list(range(1, n + 1))
        rng.shuffle(p)
        return Reindex(tuple(p))

    out = {}
    inst = []
    for _ in range(min(limit, 3)):
        al, be = rand_perm(), rand_perm()
        inst.append((tau, [be, al], [compose_perms(al, be)]))
    out["prop-3.3-1-reindex-composition"] = inst

    inst = []
    for base, i, j in flips[:limit]:
        inst.append((base, [DiagonalExchange(i, j)] * 2, [transposition(n, i, j)]))
    out["prop-3.3-2-flip-involution"] = inst

    inst = []
    for base, i, j in flips[:limit]:
        al = rand_perm()
        inv = al.inverse()
        inst.append((base, [DiagonalExchange(i, j), al], [al, DiagonalExchange(inv(i), inv(j))]))
    out["prop-3.3-3-reindex-flip"] = inst

    inst = []
    for base, (i, j), (k, l) in disjoint_flip_bases(tau)[:limit]:
        inst.append((base, [DiagonalExchange(i, j), DiagonalExchange(k, l)],
                     [DiagonalExchange(k, l), DiagonalExchange(i, j)]))
    out["prop-3.3-4-disjoint-flips"] = inst

    inst = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if detect_pentagon(tau, i, j, k):
                    inst.append((tau,) + pentagon_paths(i, j, k))
    out["prop-3.3-5-pentagon"] = inst[:limit]

    out["prop-3.3-6-rotation-order"] = [
        (tau, [MarkRotation(i)] * 3, []) for i in range(1, n + 1)
    ][:limit]

    out["prop-3.3-7-rotations-commute"] = [
        (tau, [MarkRotation(i), MarkRotation(j)], [MarkRotation(j), MarkRotation(i)])
        for i in range(1, n + 1) for j in range(i + 1, n + 1)
    ][:limit]

    inst = []
    for i in range(1, min(n, limit) + 1):
        al = rand_perm()
        inst.append((tau, [MarkRotation(i), al], [al, MarkRotation(al.inverse()(i))]))
    out["prop-3.3-8-reindex-rotation"] = inst
    return out


def homomorphy_pairs(mv: Move, n_triangles: int, a=A, b=B) -> list:
    """Images of the relations ``Z Y = q^2 Y Z`` and cross-commutation under a move map."""
    m = move_hat(mv, a, b)
    gens = kashaev_generators(n_triangles)
    touched = {idx for _, idx in m.keys()}
    out = []
    for mu in sorted(touched):
        y, z = m.image(("Y", mu)), m.image(("Z", mu))
        out.append((f"ZY{mu}", ex.prod(z, y), ex.prod(QPow(2), y, z)))
    for g1 in gens:
        for g2 in gens:
            if g1 < g2 and g1[1] != g2[1] and (g1[1] in touched or g2[1] in touched):
                x1, x2 = m.image(g1), m.image(g2)
                out.append((f"[{g1},{g2}]", ex.prod(x1, x2), ex.prod(x2, x1)))
    return out


def check_relation_suite(tau: DecoratedTriangulation, a=None, b=None,
                         trials: TrialConfig | None = None, limit: int = 6) -> dict:
    """Verdicts for every relation of the generalized maps on ``tau``.

    ``a`` and ``b`` default to random samples per trial.
    """
    trials = trials or TrialConfig()
    params = {"a": a, "b": b}
    verdicts = []
    for claim, instances in relation_instances(tau, random.Random(trials.seed), limit).items():
        pairs = []
        for n, (base, p1, p2) in enumerate(instances):
            pairs += [(f"#{n}:{lab}", e1, e2) for lab, e1, e2 in path_pair_pairs(base, p1, p2)]
        if not pairs:
            continue
        verdicts.append(compare_pairs(pairs, trials, params, claim))
    hom = []
    n = tau.n_triangles
    moves = [MarkRotation(i) for i in range(1, n + 1)]
    moves += [DiagonalExchange(i, j) for _, i, j in flip_bases(tau)]
    for mv in moves:
        hom += [(f"{mv}:{lab}", e1, e2) for lab, e1, e2 in homomorphy_pairs(mv, n)]
    verdicts.append(compare_pairs(hom, trials, params, "prop-3.4-homomorphism"))
    return {
        "verdicts": sorted((v.to_dict() for v in verdicts), key=lambda d: d["claim"]),
        "ok": all(v.equal for v in verdicts),
        "inconclusive": any(v.verdict == "inconclusive" for v in verdicts),
    }


# --------------------------------------------------------------------------
# compatibility with the Chekhov-Fock algebra


def ab_iff_pairs(tau: DecoratedTriangulation, mv: Move, a=A, b=B) -> list:
    new = apply_move(tau, mv)
    F, Fn = f_tau_map(tau), f_tau_map(new)
    m = move_hat(mv, a, b)
    pairs = []
    if isinstance(mv, DiagonalExchange):
        delta = map_delta_hat(tau, tau.side(mv.i, 0))
        for h in range(1, tau.n_edges + 1):
            lhs = F(delta.image(("X", h)))
            rhs = m(Fn.image(("X", h)))
            pairs.append((f"X{h}", lhs, rhs))
    else:
        for h in range(1, tau.n_edges + 1):
            pairs.append((f"X{h}", F.image(("X", h)), m(Fn.image(("X", h)))))
    return pairs


def check_ab_iff(tau: DecoratedTriangulation, mv: Move, a="q-2", b="q3",
                 trials: TrialConfig | None = None) -> Verdict:
    """Does the square between ``F_tau``, ``F_tau'`` and the move maps commute?"""
    if isinstance(mv, MarkRotation):
        claim = "lemma-5.5-iff"
    elif isinstance(mv, DiagonalExchange):
        claim = "lemma-5.6-iff"
    else:
        claim = "cor-5.8-reindex"
    a, b = parse_param(a), parse_param(b)
    return compare_pairs(ab_iff_pairs(tau, mv), trials, {"a": a, "b": b}, claim)


# --------------------------------------------------------------------------
# q = 1 specialization


def eval_scalar(e: Expr, values: dict, q=1, a=1, b=1) -> Fraction:
    """Evaluate with commuting rational generator values (keys ``('Y', mu)`` etc.)."""
    memo = {}
    q = Fraction(q)
    pv = {"a": Fraction(a), "b": Fraction(b)}
    for node in ex.walk(e):
        if isinstance(node, Gen):
            v = Fraction(values[node.key])
        elif isinstance(node, QPow):
            v = q ** node.k
        elif isinstance(node, ex.Param):
            v = pv[node.name]
        elif isinstance(node, ex.Const):
            v = Fraction(node.value)
        elif isinstance(node, Sum):
            v = sum((memo[id(c)] for c in node.children), Fraction(0))
        elif isinstance(node, Prod):
            v = Fraction(1)
            for c in node.children:
                v *= memo[id(c)]
        else:
            c = memo[id(node.child)]
            if c == 0:
                raise SingularMatrix(node)
            v = 1 / c
        memo[id(node)] = v
    return memo[id(e)]


def specialize_kashaev(m: SubstitutionMap, y: Sequence, z: Sequence) -> tuple:
    """Apply a map at ``q = a = b = 1`` to commuting coordinates; returns new ``(y, z)``."""
    values = {}
    for mu, (yv, zv) in enumerate(zip(y, z), start=1):
        values[("Y", mu)] = yv
        values[("Z", mu)] = zv
    ny = tuple(eval_scalar(m.image(("Y", mu)), values) for mu in range(1, len(y) + 1))
    nz = tuple(eval_scalar(m.image(("Z", mu)), values) for mu in range(1, len(z) + 1))
    return ny, nz
