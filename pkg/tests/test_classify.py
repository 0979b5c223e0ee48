import pytest

from qkm import catalog, engine, classify as C
from qkm.catalog import direct_sum, ONE_ROOT_ENTRIES
from qkm.datum import CartanDatum, canonical_generators, xy_matrices, SL2, OSP
from qkm.quasitoral import HModule, Weight
from conftest import entry, table

MULTI = ["q3", "q4", "psq3", "takiff-sl3-T", "takiff-sl3-pt", "a22+", "a22-", "xc1", "xc2", "xc3", "affine-a2"]


@pytest.mark.parametrize("name", ONE_ROOT_ENTRIES)
def test_one_root_labels(name):
    e = catalog.get(name)
    assert C.classify_one_root(e.datum).tag == e.root_type


def test_one_root_examples():
    assert C.classify_one_root(entry("he3").datum).tag == "H_3"
    rt = C.classify_one_root(entry("takiff-osp12-t").datum)
    assert rt.tag == OSP and rt.shape == (1, 2)
    rt = C.classify_one_root(entry("sl2").datum)
    assert rt.tag == "sl(2)" and rt.shape == (1,) and rt.rank == 0


def test_one_root_accepts_table():
    t = table("takiff-osp12-t", 3)
    assert C.classify_one_root(t.datum, t).tag == OSP


@pytest.mark.parametrize("name", MULTI)
def test_connectivity_audit_on_catalog(name):
    rep = C.connectivity_audit(entry(name).datum, table(name, 2))
    assert rep.ok, rep


def test_q3_connectivity_is_a2_adjacency():
    assert C.connectivity_audit(entry("q3").datum).matrix == [[False, True], [True, False]]


def test_single_sink_zero_matrix():
    assert C.connectivity_matrix(entry("he3").datum) == [[False]]


def _with_weight(M, lam):
    return HModule(M.algebra, lam, M.parities, M.action)


def test_he0_next_to_q2_root():
    d = direct_sum(entry("he0").datum, entry("q2").datum, "he0+q2")
    rep = C.connectivity_audit(d)
    assert rep.ok and rep.types[0].tag == "he(0)" and not any(rep.matrix[0])
    # forge a datum in which the central coroot of he(0) acts on the q(2) root: a sink with an arrow
    (c,), = [list(v) for v in d.coroot_space(0)]
    lam = Weight([x + (1 if k == c else 0) for k, x in enumerate(d.roots[1].coords)])
    bad = CartanDatum(d.h, [d.roots[0], lam], d.pos[:1] + [_with_weight(d.pos[1], lam)],
                      d.neg[:1] + [_with_weight(d.neg[1], -lam)], d.pairings, "forged")
    rep = C.connectivity_audit(bad)
    assert not rep.ok and any("sink" in v for v in rep.violations)


def test_coupling_audit_examples():
    a = C.coupling_theorem_audit(canonical_generators(entry("a22-").datum))
    assert a.cases == {(0, 1): 4} and a.ok
    assert canonical_generators(entry("a22-").datum).types == [SL2, SL2]
    a = C.coupling_theorem_audit(canonical_generators(entry("xc2").datum))
    assert a.cases == {(0, 1): 3} and a.ok
    assert any("h_0 = -2 h_1" in n for n in a.notes)
    a = C.coupling_theorem_audit(canonical_generators(entry("takiff-sl3-T").datum))
    assert a.cases == {(0, 1): 2} and a.ok


@pytest.mark.parametrize("name", MULTI)
def test_coupling_audit_total(name):
    a = C.coupling_theorem_audit(canonical_generators(entry(name).datum))
    assert a.ok and set(a.cases.values()) <= {1, 2, 3, 4}


def test_enumeration_small():
    assert C.enumerate_uncoupled_fg_diagrams(2).families() == ["A(1)^(1)", "A(2)"]
    assert C.enumerate_uncoupled_fg_diagrams(3).families() == ["A(1)^(1)", "A(2)", "A(2)^(1)", "A(3)"]
    with pytest.raises(ValueError):
        C.enumerate_uncoupled_fg_diagrams(1)


def test_enumeration_five():
    en = C.enumerate_uncoupled_fg_diagrams(5)
    assert en.families() == C.expected_families(5)
    assert en.rejected["3-star"] and en.rejected["interior vertex label"]
    for D in en:
        assert "<>" in D.text()
    # the plain 3-star (D4 shape) is rejected by the first filter
    star = C.Diagram(4, {(0, 1): (-1, -1), (0, 2): (-1, -1), (0, 3): (-1, -1)})
    assert any(R.key() == star.key() for R in en.rejected["3-star"])


def test_excluded_labels_are_reported():
    ok, excluded = C.candidate_labels()
    assert set(ok) == {(-1, -1), (-2, -2)}
    assert excluded[(-1, -4)].startswith("excluded by Theta-growth") is False
    assert excluded[(-3, -2)].startswith("excluded by Theta-growth")
    assert "uncoupled" in excluded[(-1, -2)]


@pytest.mark.parametrize("A, kind", [([[2, -1], [-1, 2]], "finite"), ([[2, -2], [-2, 2]], "affine"),
                                     ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], "affine"),
                                     ([[2, -3], [-3, 2]], "indefinite"), ([[2, -1], [-3, 2]], "finite"),
                                     ([[2, -1, 0], [-2, 2, -1], [0, -1, 2]], "finite")])
def test_theta_type(A, kind):
    from fractions import Fraction
    assert C.theta_type([[Fraction(x) for x in r] for r in A]) == kind


@pytest.mark.parametrize("name, N", [("q3", 4), ("q4", 4), ("a22+", 6), ("a22-", 6), ("affine-a2", 5)])
def test_root_system_surrogate(name, N):
    assert C.root_system_audit(table(name, N))["ok"]


def test_triangle_relation_logged():
    A = xy_matrices(canonical_generators(entry("affine-a2").datum)).A
    rows = C.triangle_relation(A)
    assert len(rows) == 1 and rows[0][3]
