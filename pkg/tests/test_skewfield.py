import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qteich import classical as cl
from qteich import expr as ex
from qteich import qtorus as qt
from qteich import skewfield as sk
from qteich.cyclotomic import make_field
from qteich.errors import InvalidPath
from qteich.expr import Inv, Prod, QPow, SubstitutionMap, Yg, Zg
from qteich.triangulation import (
    DiagonalExchange,
    MarkRotation,
    Reindex,
    align_for_flip,
    applicable_flips,
    apply_move,
    apply_moves,
    build_standard,
    redecorate,
    transposition,
)
from qteich.verify import flip_case_states

QUICK = sk.TrialConfig(sizes=(3, 5), samples=2, min_successes=4)


# -- expressions -------------------------------------------------------------------


def test_expr_json_round_trip():
    e = sk.map_phi_hat(1, 2).image(("Z", 1))
    back = ex.from_json_obj(ex.to_json_obj(e))
    assert ex.to_json_obj(back) == ex.to_json_obj(e)
    with pytest.raises(ValueError):
        ex.from_json_obj({"bogus": 1})


def test_substitution_keeps_sharing():
    d = Inv(Yg(1) + Zg(1))
    e = ex.prod(d, Yg(2)) + ex.prod(d, Zg(2))
    out = ex.substitute(e, {("Y", 1): Zg(3)})
    invs = [n for n in ex.walk(out) if isinstance(n, Inv)]
    assert len(invs) == 1
    assert ex.generators(out) == {("Z", 3), ("Z", 1), ("Y", 2), ("Z", 2)}


def test_compose_order():
    f = SubstitutionMap({("Y", 1): Zg(1)}, "f")
    g = SubstitutionMap({("Z", 1): Yg(2)}, "g")
    fg = f.compose(g)  # f o g: g first
    assert fg.image(("Y", 1)) is f.image(("Y", 1))
    assert ex.generators(fg.image(("Z", 1))) == {("Y", 2)}
    gf = g.compose(f)
    assert ex.generators(gf.image(("Y", 1))) == {("Y", 2)}


def test_bind_params():
    e = ex.prod(ex.A, Yg(1)) + ex.B
    bound = ex.bind_params(e, {"a": QPow(-2), "b": 1})
    assert ex.params(bound) == set()
    assert ex.params(e) == {"a", "b"}


def test_parse_param():
    assert sk.parse_param("q-2").k == -2
    assert sk.parse_param("q^3").k == 3
    assert sk.parse_param("q").k == 1
    assert sk.parse_param("3/2").value == Fr(3, 2)
    assert sk.parse_param("random") is None
    with pytest.raises(ValueError):
        sk.parse_param("banana")


# -- maps ----------------------------------------------------------------------------


def test_definition_images():
    r = sk.map_rho_hat(1)
    assert isinstance(r.image(("Z", 1)), Inv)
    p = sk.map_phi_hat(1, 2)
    zi = p.image(("Z", 1))
    assert isinstance(zi, Prod) and zi.children[0] is ex.B


def test_compose_along_invalid_path():
    tau = build_standard(0, 4)
    with pytest.raises(InvalidPath):
        sk.compose_along_path(tau, [DiagonalExchange(1, 1)])


# -- representation soundness ----------------------------------------------------------


@pytest.mark.parametrize("backend", ["residue", "exact"])
def test_rep_relations(backend):
    fld = make_field(3, backend)
    rep = sk.CyclotomicRep(fld, [1, 2], {}, random.Random(0))
    Y1, Z1 = rep.gen(("Y", 1)), rep.gen(("Z", 1))
    Y2, Z2 = rep.gen(("Y", 2)), rep.gen(("Z", 2))
    assert fld.equal(fld.matmul(Z1, Y1), fld.scale(fld.q(2), fld.matmul(Y1, Z1)))
    for a in (Y1, Z1):
        for b in (Y2, Z2):
            assert fld.equal(fld.matmul(a, b), fld.matmul(b, a))
    for key in (("Y", 1), ("Z", 2)):
        assert fld.equal(fld.matmul(rep.gen(key), rep.gen_inv(key)), fld.eye(rep.dim))


# -- oracle consistency against exact quantum-torus algebra --------------------------------


ALG = qt.kashaev_algebra(2)


def to_expr(elem: qt.SkewLaurent):
    out = []
    for (u, k), c in sorted(elem.terms.items()):
        fs = [ex.Const(c), QPow(k)]
        for pos, e in enumerate(u):
            g = (Yg if pos % 2 == 0 else Zg)(pos // 2 + 1)
            fs += [g if e > 0 else Inv(g)] * abs(e)
        out.append(Prod(tuple(fs)))
    return ex.Sum(tuple(out)) if out else ex.Const(Fr(0))


@st.composite
def laurent(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 2))):
        u = tuple(draw(st.integers(-1, 2)) for _ in range(4))
        terms[(u, draw(st.integers(-2, 2)))] = Fr(draw(st.integers(1, 3)))
    return qt.SkewLaurent(ALG, terms)


@settings(max_examples=10)
@given(laurent(), laurent())
def test_oracle_agrees_with_quantum_torus(a, b):
    lhs = ex.prod(to_expr(a), to_expr(b))
    v = sk.expr_equal(lhs, to_expr(a * b), QUICK)
    assert v.verdict == "equal"


def test_oracle_refutes_wrong_q_power():
    v = sk.expr_equal(ex.prod(Zg(1), Yg(1)), ex.prod(Yg(1), Zg(1)), QUICK)
    assert v.verdict == "notequal"
    assert v.witness["generator"] == "expr"


def test_exact_backend_agrees():
    tau = build_standard(1, 1)
    rot, i, j = align_for_flip(tau, 1)
    base = apply_moves(tau, rot)
    pairs = sk.path_pair_pairs(base, [DiagonalExchange(i, j)] * 2, [transposition(2, i, j)])
    for backend in ("exact", "residue"):
        cfg = sk.TrialConfig(sizes=(3,), samples=2, min_successes=2, backend=backend)
        assert sk.compare_pairs(pairs, cfg).verdict == "equal"
    bad = [(lab, e1, ex.prod(QPow(2), e2)) for lab, e1, e2 in pairs]
    for backend in ("exact", "residue"):
        cfg = sk.TrialConfig(sizes=(3,), samples=2, min_successes=2, backend=backend)
        assert sk.compare_pairs(bad, cfg).verdict == "notequal"


def test_verdict_is_deterministic():
    pairs = [("x", ex.prod(Zg(1), Yg(1)), ex.prod(QPow(2), Yg(1), Zg(1)))]
    v1 = sk.compare_pairs(pairs, QUICK).to_dict()
    v2 = sk.compare_pairs(pairs, QUICK).to_dict()
    assert v1 == v2
    assert len(v1["trials"]) == 4


def test_inconclusive_when_too_few_trials():
    cfg = sk.TrialConfig(sizes=(3,), samples=1, min_successes=5)
    pairs = [("x", Yg(1), Yg(1))]
    assert sk.compare_pairs(pairs, cfg).verdict == "inconclusive"


def test_max_dim_skips_large_sizes():
    cfg = sk.TrialConfig(sizes=(3, 5), samples=1, min_successes=1, max_dim=10)
    v = sk.compare_pairs([("x", ex.prod(Yg(1), Yg(2)), ex.prod(Yg(2), Yg(1)))], cfg)
    assert {t["N"] for t in v.trials} == {3}


# -- small relation instances ----------------------------------------------------------------


def test_rho_cubed_and_flip_involution_torus():
    tau = build_standard(1, 1)
    pairs = sk.path_pair_pairs(tau, [MarkRotation(1)] * 3, [])
    assert sk.compare_pairs(pairs, QUICK).verdict == "equal"


def test_corrupted_phi_refuted():
    tau = build_standard(1, 1)
    rot, i, j = align_for_flip(tau, 1)
    good = sk.map_phi_hat(i, j)
    imgs = dict(good.images)
    imgs[("Z", i)] = ex.prod(QPow(1), imgs[("Z", i)])  # b -> b q on one image
    bad = SubstitutionMap(imgs)
    swap = sk.map_alpha_hat(transposition(2, i, j))
    assert sk.maps_equal(good.compose(good), swap, QUICK).verdict == "equal"
    assert sk.maps_equal(bad.compose(bad), swap, QUICK).verdict == "notequal"


def test_homomorphy_of_phi():
    pairs = sk.homomorphy_pairs(DiagonalExchange(1, 2), 3)
    assert sk.compare_pairs(pairs, QUICK).verdict == "equal"


def test_ab_iff_torus_flip():
    tau = build_standard(1, 1)
    rot, i, j = align_for_flip(tau, 1)
    base = apply_moves(tau, rot)
    assert sk.check_ab_iff(base, DiagonalExchange(i, j), trials=QUICK).verdict == "equal"
    assert sk.check_ab_iff(base, DiagonalExchange(i, j), b="q", trials=QUICK).verdict == "notequal"
    assert sk.check_ab_iff(tau, MarkRotation(1), trials=QUICK).verdict == "equal"
    assert sk.check_ab_iff(tau, MarkRotation(1), a="1", trials=QUICK).verdict == "notequal"
    assert sk.check_ab_iff(tau, Reindex((2, 1)), trials=QUICK).verdict == "equal"


# -- q = 1 specialization --------------------------------------------------------------------


pos = st.fractions(min_value=Fr(1, 9), max_value=9).filter(lambda v: v > 0)


@given(st.lists(st.tuples(pos, pos), min_size=4, max_size=4), st.data())
def test_specialization_matches_classical(pairs, data):
    rots = data.draw(st.lists(st.integers(0, 2), min_size=4, max_size=4))
    tau = redecorate(build_standard(0, 4), rots)
    K = cl.KashaevCoords.from_pairs(pairs)
    moves = [MarkRotation(data.draw(st.integers(1, 4)))]
    flips = applicable_flips(apply_moves(tau, moves))
    if flips:
        moves.append(data.draw(st.sampled_from(flips)))
    moves.append(Reindex(tuple(data.draw(st.permutations([1, 2, 3, 4])))))
    psi = sk.compose_along_path(tau, moves)
    got = sk.specialize_kashaev(psi, K.y, K.z)
    want, _ = cl.kashaev_along(K, moves, tau)
    assert got == (want.y, want.z)


@pytest.mark.parametrize("g,p", [(1, 1), (0, 3), (0, 4), (1, 2)])
def test_delta_hat_specializes_to_shear_change(g, p):
    rng = random.Random(3)
    for case, (st_, i, j) in flip_case_states(build_standard(g, p)).items():
        e = st_.side(i, 0)
        x = [Fr(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(st_.n_edges)]
        vals = {("X", k + 1): v for k, v in enumerate(x)}
        d = sk.map_delta_hat(st_, e, case=case)
        got = tuple(sk.eval_scalar(d.image(("X", h)), vals) for h in range(1, st_.n_edges + 1))
        assert got == cl.shear_change(cl.ShearCoords(tuple(x)), st_, e).x


def test_f_tau_map_specializes_to_shear():
    tau = build_standard(1, 2)
    K = cl.KashaevCoords.from_pairs([(Fr(k + 1), Fr(k + 2, 3)) for k in range(tau.n_triangles)])
    vals = {}
    for mu, (y, z) in enumerate(K.pairs(), start=1):
        vals[("Y", mu)], vals[("Z", mu)] = y, z
    F = sk.f_tau_map(tau)
    got = tuple(sk.eval_scalar(F.image(("X", e)), vals) for e in range(1, tau.n_edges + 1))
    assert got == cl.shear_from_kashaev(K, tau).x
