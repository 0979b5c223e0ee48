import pytest

from qkm import catalog, engine
from qkm.catalog import (q_family, takiff, heisenberg, a22, odd_affinize, psq_sca, q_odd_form, direct_sum,
                         kac_moody_datum, invariant_forms, form_defects)
from qkm.datum import canonical_generators, xy_matrices, is_qkm, qkm_ok
from qkm.exact_core import ONE
from conftest import entry, table

WITH_ORACLE = [(n, k) for n in catalog.names() for k in range(len(catalog.get(n).oracles))]


@pytest.mark.parametrize("name", catalog.names())
def test_ckm_flags(name):
    e = catalog.get(name)
    # Clifford Kac-Moody needs irreducible simple root modules
    irreducible = all(M.is_irreducible() for M in e.datum.pos + e.datum.neg)
    assert irreducible == e.ckm


def test_q3_shape():
    d = entry("q3").datum
    assert (d.h.dim_t, d.h.dim_odd) == (3, 3) and d.n == 2


def test_sq2_not_ckm_psq3_ckm():
    assert not q_family(2, "sq").ckm and not entry("sq2").datum.pos[0].is_irreducible()
    assert q_family(3, "psq").ckm


@pytest.mark.parametrize("name, k", WITH_ORACLE)
def test_oracle_match(name, k):
    e = catalog.get(name)
    label, oracle, gm = e.oracles[k]
    N = 4 if name.startswith("affine") else 3
    rep = engine.compare_with_oracle(table(name, N), oracle, gm)
    assert rep.ok, rep.lines()


def test_takiff_sl2_quotient_is_q2():
    e = entry("takiff-sl2-T")
    label, oracle, gm = e.oracles[1]
    rep = engine.compare_with_oracle(table("takiff-sl2-T", 3), oracle, gm)
    assert rep.ok
    assert any("central" in n for n in rep.notes)


def test_takiff_coroot_space():
    # h_alpha = h (x) C[xi] + C c: dimension (2|1)
    d = entry("takiff-sl2-T").datum
    cor = d.coroot_space(0)
    ev = sum(1 for v in cor if all(d.h.parity(k) == 0 for k in v))
    assert (ev, len(cor) - ev) == (2, 1)


def test_takiff_osp_pt_string():
    t = table("takiff-osp12-pt", 3)
    assert sorted(t.spaces) == [(-2,), (-1,), (1,), (2,)]


def test_he2_matches_takiff_sl11():
    a, b = table("he2", 3), table("takiff-sl11-t", 3)
    assert {k: a.sdim(k) for k in a.spaces} == {k: b.sdim(k) for k in b.spaces}
    assert entry("he2").root_type == entry("takiff-sl11-t").root_type
    assert (entry("he2").datum.h.dim_t, entry("he2").datum.h.dim_odd) == \
        (entry("takiff-sl11-t").datum.h.dim_t, entry("takiff-sl11-t").datum.h.dim_odd)


def test_heisenberg_zero():
    d = entry("he0").datum
    assert d.pos[0].parities == (0,) and d.neg[0].parities == (0,)
    assert d.h.dim_odd == 0
    d = entry("he0-pi").datum
    assert d.pos[0].parities == (1,) and d.neg[0].parities == (0,)
    # h is odd in he(0)^Pi
    assert d.h.dim_t == 1 and d.h.dim_odd == 1


def test_a22_parameters():
    for name, prod in (("a22+", 4), ("a22-", 0)):
        m = xy_matrices(canonical_generators(entry(name).datum))
        assert m.X[0][1] * m.X[1][0] == prod
        assert [[int(x.rational()) for x in r] for r in m.A] == [[2, -2], [-2, 2]]
    m = xy_matrices(canonical_generators(entry("a22-").datum))
    assert m.X[0][1] != 0


def test_a22_h_identities():
    for name in ("a22+", "a22-"):
        d = entry(name).datum
        g = canonical_generators(d)
        m = xy_matrices(g)
        assert d.h.bracket(g[0].H, g[0].H) == [2 * x for x in g[0].c]
        br = d.h.bracket(g[0].H, g[1].H)
        assert br == [m.X[0][1] * c + m.Y[0][1] * h for c, h in zip(g[1].c, g[1].h)]


def test_odd_affinization_oracle():
    base = psq_sca(3)
    L = odd_affinize(base, q_odd_form(base, 3))
    assert not L.jacobi_defects((-1, 0, 1))
    assert L.parity(L.K) == 1
    # K is central
    for key in [(m, b) for m in (-1, 0, 1) for b in range(base.dim)] + [L.D]:
        assert not L.bracket({L.K: ONE}, {key: ONE})


def test_odd_form_is_invariant():
    base = psq_sca(3)
    assert not form_defects(base, q_odd_form(base, 3), 1)
    assert invariant_forms(base, 1)


def test_affine_root_multiplicities():
    t = table("affine-a2", 4)
    delta = (1, 1, 1)
    assert t.sdim(delta) == (2, 2)
    for th in t.roots(1):
        if th != delta:
            assert t.sdim(th) == (1, 1)


def test_affine_central_kernel_is_even():
    e = entry("affine-a2")
    rep = engine.compare_with_oracle(table("affine-a2", 4), e.oracle, e.genmap)
    d = e.datum
    for v in rep.central_kernel:
        assert all(d.h.parity(k) == 0 for k in v)


def test_direct_sum_and_km_reference():
    d = direct_sum(entry("q3").datum, entry("sl2").datum)
    assert d.n == 3
    km = kac_moody_datum([[2, -1], [-1, 2]], "a2")
    t = engine.build(km, 3)
    assert sorted(t.roots(1)) == [(0, 1), (1, 0), (1, 1)]
