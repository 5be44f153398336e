"""Verification suites: each returns a list of statement records.

A record is ``{"id": ..., "status": "pass" | "fail" | "inconclusive", ...}``
with whatever numbers back the verdict.  The ids are stable so reports can be
compared between runs.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from fractions import Fraction

from . import classical as cl
from . import qtorus as qt
from . import skewfield as sk
from .errors import NotApplicable, NotFound
from .triangulation import (
    DecoratedTriangulation,
    DiagonalExchange,
    MarkRotation,
    Reindex,
    align_for_flip,
    all_decorations,
    apply_move,
    apply_moves,
    build_standard,
    compose_perms,
    detect_pentagon,
    exchange_labels,
    find_move_path,
    find_pentagon,
    flip_applicable,
    pentagon_paths,
    transposition,
)

FIXTURES = [(1, 1), (0, 3), (0, 4), (1, 2), (2, 1)]


def _rec(sid, ok, **info):
    status = "inconclusive" if ok is None else ("pass" if ok else "fail")
    return {"id": sid, "status": status, **info}


def _verdict_rec(sid, verdict: sk.Verdict, expect_equal=True, **info):
    if verdict.verdict == "inconclusive":
        ok = None
    else:
        ok = verdict.equal == expect_equal
    return _rec(sid, ok, verdict=verdict.verdict, witness=verdict.witness,
                trials=verdict.trials, **info)


def random_positive(rng: random.Random, hi: int = 12) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, hi))


def random_kashaev(rng, n):
    return cl.KashaevCoords(tuple(random_positive(rng) for _ in range(n)),
                            tuple(random_positive(rng) for _ in range(n)))


def random_lambda(rng, n):
    return cl.LambdaLengths(tuple(random_positive(rng) for _ in range(n)))


# --------------------------------------------------------------------------
# move calculus


def _perms(n, rng, cap=24):
    allp = list(itertools.permutations(range(1, n + 1)))
    if len(allp) > cap:
        allp = [tuple(p) for p in rng.sample(allp, cap)]
    return [Reindex(p) for p in allp]


def move_relations(tau: DecoratedTriangulation, rng: random.Random | None = None) -> dict:
    """Counts of checked and failed instances of each move relation on ``tau``."""
    rng = rng or random.Random(0)
    n = tau.n_triangles
    perms = _perms(n, rng)
    flips = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if flip_applicable(tau, i, j)]
    stats = {k: [0, 0] for k in range(1, 9)}

    def check(k, ok):
        stats[k][0] += 1
        stats[k][1] += 0 if ok else 1

    for al in perms[:6]:
        for be in perms[:6]:
            check(1, apply_moves(tau, [be, al]) == apply_move(tau, compose_perms(al, be)))
    for i, j in flips:
        check(2, apply_moves(tau, [DiagonalExchange(i, j)] * 2) == apply_move(tau, transposition(n, i, j)))
        for al in perms:
            inv = al.inverse()
            lhs = apply_moves(tau, [DiagonalExchange(i, j), al])
            rhs = apply_moves(tau, [al, DiagonalExchange(inv(i), inv(j))])
            check(3, lhs == rhs)
        for k, l in flips:
            if not {i, j} & {k, l}:
                check(4, apply_moves(tau, [DiagonalExchange(i, j), DiagonalExchange(k, l)])
                      == apply_moves(tau, [DiagonalExchange(k, l), DiagonalExchange(i, j)]))
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        if detect_pentagon(tau, i, j, k):
            lhs, rhs = pentagon_paths(i, j, k)
            check(5, apply_moves(tau, lhs).same_as(apply_moves(tau, rhs)))
    for i in range(1, n + 1):
        check(6, apply_moves(tau, [MarkRotation(i)] * 3) == tau)
        for j in range(1, n + 1):
            if i != j:
                check(7, apply_moves(tau, [MarkRotation(i), MarkRotation(j)])
                      == apply_moves(tau, [MarkRotation(j), MarkRotation(i)]))
        for al in perms:
            check(8, apply_moves(tau, [MarkRotation(i), al])
                  == apply_moves(tau, [al, MarkRotation(al.inverse()(i))]))
    return stats


def suite_moves(g, p, **_):
    base = build_standard(g, p)
    total = {k: [0, 0] for k in range(1, 9)}
    for tau in all_decorations(base):
        for k, (c, f) in move_relations(tau).items():
            total[k][0] += c
            total[k][1] += f
    ok = all(f == 0 for _, f in total.values())
    return [_rec("lemma-2.1-move-relations", ok,
                 checked={str(k): v[0] for k, v in total.items()},
                 failed={str(k): v[1] for k, v in total.items()})]


# --------------------------------------------------------------------------
# classical


def suite_exact_sequence(g, p, **_):
    rep = cl.exactness_report(build_standard(g, p))
    return [_rec("thm-4.1-exactness", rep["exact"] and rep["dims_match"], **rep)]


def suite_bivector(g, p, **_):
    return [_rec("prop-4.3-bivector", cl.bivector_check(build_standard(g, p)))]


def flip_case_states(tau: DecoratedTriangulation, depth: int = 6, max_states: int = 400) -> dict:
    """First triangulation (by flip BFS) exhibiting each exchange case: case -> (state, i, j).

    The search stops at ``depth`` flips or after ``max_states`` triangulations.
    """
    found = {}
    seen = {tau.canonical().triangles}
    todo = deque([(tau, 0)])
    while todo and len(found) < 8 and len(seen) < max_states:
        cur, d = todo.popleft()
        for e in range(1, cur.n_edges + 1):
            try:
                rot, mu, nu = align_for_flip(cur, e)
            except NotApplicable:
                continue
            aligned = apply_moves(cur, rot)
            case = exchange_labels(aligned, mu, nu).case
            found.setdefault(case, (aligned, mu, nu))
            nxt = apply_move(aligned, DiagonalExchange(mu, nu))
            key = nxt.canonical().triangles
            if d + 1 <= depth and key not in seen:
                seen.add(key)
                todo.append((nxt, d + 1))
    return found


def suite_compat(g, p, seed=0, samples=100, **_):
    rng = random.Random(seed)
    tau = build_standard(g, p)
    out = []
    cases = flip_case_states(tau)
    moves = [("rho", tau, MarkRotation(1)),
             ("alpha", tau, Reindex(tuple(range(tau.n_triangles, 0, -1))))]
    moves += [(f"phi-case-{c}", st, DiagonalExchange(i, j)) for c, (st, i, j) in sorted(cases.items())]
    for name, st, mv in moves:
        n, e = st.n_triangles, st.n_edges
        k_ok = all(cl.check_compat_diagram(st, mv, random_kashaev(rng, n)) for _ in range(samples))
        l_ok = all(cl.penner_compat_check(st, mv, random_lambda(rng, e)) for _ in range(samples))
        out.append(_rec(f"prop-4.4-compat:{name}", k_ok, samples=samples))
        out.append(_rec(f"prop-a.3-compat:{name}", l_ok, samples=samples))
    return out


def suite_penner(g, p, seed=0, **_):
    tau = build_standard(g, p)
    rep = cl.penner_exact_report(tau)
    rng = random.Random(seed)
    ok_inv = True
    for st, i, j in sk.flip_bases(tau):
        ell = random_lambda(rng, tau.n_edges)
        once = cl.ptolemy_exchange(ell, st, i, j)
        twice = cl.ptolemy_exchange(once, apply_move(st, DiagonalExchange(i, j)), i, j)
        ok_inv &= twice == ell
    return [
        _rec("prop-a.1-exactness", rep["rank_f"] == 3 * tau.m - 1 and rep["kernel_is_scaling"]
             and rep["coker_dim"] == tau.m + 1, **{k: rep[k] for k in ("rank_f", "kernel_dim", "coker_dim")}),
        _rec("prop-a.2-two-form", rep["two_form_pullback"]),
        _rec("prop-a.3-ptolemy-involution", ok_inv),
    ]


# --------------------------------------------------------------------------
# quantum torus


def suite_homomorphism(g, p, **_):
    tau = build_standard(g, p)
    return [
        _rec("lemma-5.1-h-commutation", qt.h_commutation_check(1)),
        _rec("lemma-f-tau-homomorphism", qt.check_f_tau_homomorphism(tau)
             and qt.self_edge_symmetric(tau)),
    ]


def suite_h_image(g, p, **_):
    tau = build_standard(g, p)
    got, want = qt.h_image_exponent(tau), qt.expected_h_exponent(tau)
    return [_rec("thm-5.9-h-image", got == want, exponent=got, expected=want)]


# --------------------------------------------------------------------------
# skew field


def relation_fixture(g, p):
    """The standard triangulation, redecorated to contain a pentagon when possible."""
    base = build_standard(g, p)
    try:
        return find_pentagon(base)[0]
    except NotFound:
        return base


def suite_relations(g, p, trials=None, a=None, b=None, **_):
    tau = relation_fixture(g, p)
    rep = sk.check_relation_suite(tau, a, b, trials)
    return [_verdict_rec(v["claim"], sk.Verdict(**v)) for v in rep["verdicts"]]


def suite_pentagon(g, p, trials=None, a=None, b=None, **_):
    tau, (i, j, k) = find_pentagon(build_standard(g, p))
    lhs, rhs = pentagon_paths(i, j, k)
    v = sk.compare_pairs(sk.path_pair_pairs(tau, lhs, rhs), trials, {"a": a, "b": b},
                         "prop-3.3-5-pentagon")
    return [_verdict_rec("prop-3.3-5-pentagon", v, triangles=[i, j, k])]


def suite_ab_iff(g, p, trials=None, a="q-2", b="q3", **_):
    tau = build_standard(g, p)
    a = "q-2" if a is None else a
    b = "q3" if b is None else b
    out = []
    v = sk.check_ab_iff(tau, MarkRotation(1), a, b, trials)
    out.append(_verdict_rec("lemma-5.5-iff", v, a=str(a)))
    for n, (st, i, j) in enumerate(sk.flip_bases(tau)[:2]):
        v = sk.check_ab_iff(st, DiagonalExchange(i, j), a, b, trials)
        out.append(_verdict_rec(f"lemma-5.6-iff#{n}", v, b=str(b),
                                case=exchange_labels(st, i, j).case))
    return out


def path_pairs_04(tau: DecoratedTriangulation, ijk) -> list:
    """Distinct move paths with a common endpoint, starting at a pentagon triangulation."""
    i, j, k = ijk
    n = tau.n_triangles
    lhs, rhs = pentagon_paths(i, j, k)
    target = apply_moves(tau, lhs)
    bfs = find_move_path(tau, target, depth_limit=6)
    # detours that return to the same place
    spin = [MarkRotation(j)] * 3
    swap = transposition(n, i, k)
    via_swap = lhs + [swap, swap]
    return [(lhs, rhs), (lhs, bfs), (rhs, spin + bfs), (via_swap, rhs + spin)]


def suite_path_independence(g, p, trials=None, a=None, b=None, **_):
    tau, ijk = find_pentagon(build_standard(g, p))
    out = []
    for n, (p1, p2) in enumerate(path_pairs_04(tau, ijk)):
        v = sk.compare_pairs(sk.path_pair_pairs(tau, p1, p2), trials, {"a": a, "b": b},
                             f"thm-3.5-path-independence#{n}")
        out.append(_verdict_rec(f"thm-3.5-path-independence#{n}", v,
                                lengths=[len(p1), len(p2)]))
    return out


SUITES = {
    "moves": suite_moves,
    "exact-sequence": suite_exact_sequence,
    "bivector": suite_bivector,
    "compat": suite_compat,
    "penner": suite_penner,
    "homomorphism": suite_homomorphism,
    "h-image": suite_h_image,
    "relations": suite_relations,
    "pentagon": suite_pentagon,
    "ab-iff": suite_ab_iff,
    "path-independence": suite_path_independence,
}
