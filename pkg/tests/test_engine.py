import pytest
from hypothesis import given, strategies as st

from qkm import engine, catalog
from qkm.catalog import direct_sum
from qkm.datum import canonical_generators
from qkm.exact_core import ONE, Scalar, vadd
from conftest import entry, table

SMALL = [("q3", 3), ("q4", 3), ("psq3", 3), ("takiff-sl3-T", 3), ("a22+", 4), ("a22-", 4), ("xc1", 4),
         ("takiff-osp12-t", 3), ("takiff-sl11-T", 3), ("sl2", 3), ("osp12", 3), ("he0", 3), ("he1", 3),
         ("affine-a2", 4)]


def test_q3_roots():
    t = table("q3", 3)
    assert sorted(t.roots(1)) == [(0, 1), (1, 0), (1, 1)]
    assert all(t.sdim(th) == (1, 1) for th in t.roots())
    assert t.dim((2, 1)) == 0 and t.dim((1, 2)) == 0


def test_he0_pi_roots():
    assert sorted(table("he0-pi", 3).spaces) == [(-1,), (1,)]


def test_takiff_osp_t_roots():
    t = table("takiff-osp12-t", 3)
    assert sorted(t.spaces) == [(-2,), (-1,), (1,), (2,)]
    assert t.sdim((2,)) == (1, 1)


def test_height_guard():
    t = table("q3", 2)
    with pytest.raises(engine.CutoffError):
        t.gen_apply(1, 0, 0, (1, 1), {0: ONE})
    with pytest.raises(ValueError):
        engine.build(entry("q3").datum, 0)


def test_memory_guard(monkeypatch):
    monkeypatch.setenv("QKM_MAX_DIM", "3")
    with pytest.raises(engine.MemoryGuardError):
        engine.build(entry("a22+").datum, 6)


@pytest.mark.parametrize("name, N", SMALL)
def test_structure(name, N):
    rep = engine.verify_structure(table(name, N))
    assert rep.ok, rep.lines()


@pytest.mark.parametrize("name, N", SMALL)
def test_symmetric_dims_and_t_weights(name, N):
    t = table(name, N)
    for th in t.roots():
        neg = tuple(-x for x in th)
        assert t.dim(th) == t.dim(neg)
        assert not t.weight(th).is_zero()
    assert engine.radical_defects(t) == []


def test_corrupted_table_reports_jacobi():
    t = engine.build(entry("q3").datum, 3)
    key = engine.corrupt(t)
    assert key is not None
    rep = engine.verify_structure(t)
    assert not rep.ok
    assert any(w in ("jacobi", "antisymmetry", "t-diagonality") for w, _ in rep.failures)


@given(st.data())
def test_random_jacobi_triples(data):
    t = table("a22-", 5)
    els = [(th, p) for th in [t.zero_root] + t.roots() if abs(engine.height(th)) <= 2 for p in range(
        t.h.dim if th == t.zero_root else t.dim(th))]
    x, y, z = (data.draw(st.sampled_from(els)) for _ in range(3))
    par = lambda e: t.parity(*e)
    th = tuple(a + b + c for a, b, c in zip(x[0], y[0], z[0]))
    if abs(engine.height(th)) > t.N:
        return
    ty, yz = t.bracket(y[0], {y[1]: ONE}, z[0], {z[1]: ONE})
    lhs = t.bracket(x[0], {x[1]: ONE}, ty, yz)[1] if yz else {}
    tx, xy = t.bracket(x[0], {x[1]: ONE}, y[0], {y[1]: ONE})
    r1 = t.bracket(tx, xy, z[0], {z[1]: ONE})[1] if xy else {}
    tz, xz = t.bracket(x[0], {x[1]: ONE}, z[0], {z[1]: ONE})
    r2 = t.bracket(y[0], {y[1]: ONE}, tz, xz)[1] if xz else {}
    sign = -1 if par(x) * par(y) else 1
    assert lhs == vadd(r1, r2, Scalar(sign))


@pytest.mark.parametrize("name, N", [("q3", 3), ("q4", 4), ("a22+", 4), ("a22-", 4), ("psq3", 3)])
def test_serre(name, N):
    rep = engine.serre_check(table(name, N))
    assert rep.ok and rep.checked > 0, rep.lines()


def test_serre_a22_uses_cube():
    # a_ij = -2 needs (ad e_i)^3 e_j, so the cutoff must reach height 4
    rep = engine.serre_check(table("a22+", 3))
    assert any(w == "cutoff too small" for w, _ in rep.failures)


def test_integrability_examples():
    # least n with (ad g_a)^n g_a = 0
    assert engine.integrability_check(table("sl2", 3), 4)[(1, 0, 1, 0)] == 1
    assert engine.integrability_check(table("takiff-osp12-t", 4), 4)[(1, 0, 1, 0)] == 2
    assert engine.integrability_check(table("he0", 3), 4)[(1, 0, 1, 0)] <= 2


@pytest.mark.parametrize("name, N", [("q3", 3), ("psq3", 3), ("takiff-sl3-T", 3), ("a22+", 4), ("affine-a2", 4),
                                     ("takiff-osp12-t", 3), ("sl11", 3)])
def test_chevalley(name, N):
    rep = engine.chevalley_report(table(name, N))
    assert rep.ok, rep.lines()


def test_chevalley_omega_squared_is_parity():
    t = table("q3", 3)
    om = engine.chevalley(t)
    for th in t.roots():
        for p in range(t.dim(th)):
            t1, v1 = om.apply(th, {p: ONE})
            t2, v2 = om.apply(t1, v1)
            assert t2 == th
            assert v2 == {p: ONE if t.parity(th, p) == 0 else -ONE}


def test_chevalley_refusal():
    with pytest.raises(engine.ChevalleyRefusal):
        engine.chevalley(table("he2-pi", 3))


def test_center_examples():
    ev, od, kerA = engine.center(table("q3", 3))
    assert ev == [{0: ONE, 1: ONE, 2: ONE}] and ev == kerA
    assert engine.center(table("psq3", 3))[0] == []
    # K = sum of the odd coroots is central in the affinization
    d = entry("affine-a2").datum
    ev, od, _ = engine.center(table("affine-a2", 4))
    assert od == [{d.h.dim_t + d.h.odd_names.index("K"): ONE}]


@pytest.mark.parametrize("name, N", SMALL)
def test_even_center_is_kernel_of_simple_roots(name, N):
    ev, od, kerA = engine.center(table(name, N))
    assert ev == kerA


def test_growth_examples():
    assert engine.growth_profile(table("q3", 3)).tag == "bounded"
    assert engine.dims_by_height(table("q3", 3))[0] == [4, 2, 0]
    g = engine.growth_profile(table("xc1", 12))
    assert g.tag == "bounded"


def test_connectivity_proposition_direct_sum():
    d = direct_sum(entry("q3").datum, entry("sl2").datum, "q3+sl2")
    t = engine.build(d, 4)
    for th in t.roots():
        first, second = th[:2], th[2:]
        assert not any(first) or not any(second)
    assert sorted(t.roots(1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 0)]


def test_affine_2c0_relation():
    # 2 c_0 = c_1 + h_1 + c_n - h_n for the A(n)^(1) datum (n = 2)
    g = canonical_generators(entry("affine-a2").datum)
    lhs = [2 * x for x in g[0].c]
    rhs = [a + b + c - e for a, b, c, e in zip(g[1].c, g[1].h, g[2].c, g[2].h)]
    assert lhs == rhs


def test_export_is_stable():
    a = engine.export(engine.build(entry("q3").datum, 3), structure=True)
    b = engine.export(engine.build(entry("q3").datum, 3), structure=True)
    assert a == b and a.startswith("# table q3 height 3")
