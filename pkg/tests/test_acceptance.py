"""Acceptance suite: ten criteria, one PASS/FAIL line each.

Run under pytest (each criterion is a test) or directly with `python tests/test_acceptance.py`.
"""
import functools
import sys

from qkm import catalog, engine, classify
from qkm.catalog import ONE_ROOT_ENTRIES
from qkm.datum import canonical_generators, xy_matrices, formula_defects, is_qkm, qkm_ok
from qkm.exact_core import ONE, ZERO
from qkm.quasitoral import (QuasitoralAlgebra, Weight, clifford_module, irreducible_sdim, sharp_dual,
                            parity_shift, is_isomorphic, tensor_with_dual)

RESULTS = {}


@functools.lru_cache(maxsize=None)
def built(name, N):
    return engine.build(catalog.get(name).datum, N)


def report(k, ok, detail):
    line = f"ACCEPTANCE {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line, file=sys.__stdout__, flush=True)
    return ok


# 1. q(n) reconstruction

def criterion_1():
    notes, ok = [], True
    for n in (3, 4):
        name = f"q{n}"
        t = built(name, n - 1)
        d = t.datum
        want = set()
        for i in range(n):
            for j in range(n):
                if i != j:
                    want.add(tuple(ONE if k == i else -ONE if k == j else ZERO for k in range(n)))
        got = {tuple(t.weight(th).coords) for th in t.roots()}
        dims = {t.sdim(th) for th in t.roots()}
        e = catalog.get(name)
        rep = engine.compare_with_oracle(t, e.oracle, e.genmap)
        good = got == want and dims == {(1, 1)} and rep.ok
        ok &= good
        notes.append(f"q({n}): {len(got)} roots, sdims {sorted(dims)}, oracle {rep.checked} checks "
                     f"{'ok' if rep.ok else 'FAILED'}")
    return ok, "; ".join(notes)


# 2. one-root classification

def criterion_2():
    bad = []
    for name in ONE_ROOT_ENTRIES:
        e = catalog.get(name)
        got = classify.classify_one_root(e.datum).tag
        if got != e.root_type:
            bad.append(f"{name}: {got} != {e.root_type}")
    return not bad, f"{len(ONE_ROOT_ENTRIES)} entries" + (f", wrong: {bad}" if bad else ", all labels match")


# 3. Clifford identities

def generic_h(m):
    # t = <c, z>; a non-diagonal nondegenerate odd form into c
    br = {(a, a): [1 + a, 0] for a in range(m)}
    for a in range(m - 1):
        br[(a, a + 1)] = [1, 0]
    return QuasitoralAlgebra(["c", "z"], [f"X{a}" for a in range(m)], br)


def criterion_3():
    lam = Weight([1, 0])
    bad = []
    for m in (1, 2, 3, 4):
        M = clifford_module(generic_h(m), lam)
        if M.rank() != m or M.sdim() != irreducible_sdim(m) or M.sdim()[0] != 2 ** ((m - 1) // 2):
            bad.append(f"rk {m}: dim {M.sdim()}")
        if M.clifford_defects():
            bad.append(f"rk {m}: Clifford relation")
        S = sharp_dual(M)
        same, shifted = is_isomorphic(S, M), is_isomorphic(S, parity_shift(M))
        law = (same and shifted) if m % 2 else (shifted and not same) if m % 4 == 2 else (same and not shifted)
        if not law:
            bad.append(f"rk {m}: sharp dual parity")
        rep = tensor_with_dual(M)
        if not rep.matches:
            bad.append(f"rk {m}: tensor decomposition {rep.summands}")
    return not bad, "rk 1..4: dimensions, parity law, tensor decompositions" + (f"; {bad}" if bad else " all exact")


# 4. qKM formula suite

def criterion_4():
    names = [n for n in catalog.names() if qkm_ok(is_qkm(catalog.get(n).datum))]
    bad = {}
    for n in names:
        g = canonical_generators(catalog.get(n).datum)
        defects = formula_defects(g, xy_matrices(g, check=False))
        if defects:
            bad[n] = defects[:2]
    return not bad, f"{len(names)} qKM data" + (f", defects {bad}" if bad else ", all identities exact")


# 5. coupling classification

def criterion_5():
    notes, ok = [], True
    g = canonical_generators(catalog.get("takiff-sl3-T").datum)
    m = xy_matrices(g)
    a = classify.coupling_theorem_audit(g, m)
    good = a.tag == "completely Y-coupled" and m.X == m.A and a.ok
    ok &= good
    notes.append(f"T sl(3) {a.tag}, X == A: {m.X == m.A}")
    for case in (1, 2, 3):
        name = f"xc{case}"
        a = classify.coupling_theorem_audit(canonical_generators(catalog.get(name).datum))
        # probe the growth cheaply first; only a bounded probe is worth the full height-20 build
        probe = engine.growth_profile(built(name, 7))
        if probe.tag != "bounded":
            ints = engine.integrability_check(built(name, 7), 6)
            witness = [k for k, v in ints.items() if not isinstance(v, int)]
            notes.append(f"{name}: {a.tag}, dims to 7 {probe.dims} ({probe.tag}), "
                         f"ad not nilpotent at {witness[:2]}")
            ok = False
            continue
        g20 = engine.growth_profile(built(name, 20))
        good = g20.tag == "bounded" and a.ok and a.tag == "completely X-coupled"
        ok &= good
        notes.append(f"{name}: {a.tag}, height 20 max dim {max(g20.dims)} ({g20.tag})")
    return ok, "; ".join(notes)


# 6. q(2,2) root multiplicities

def criterion_6():
    notes, ok = [], True
    for name in ("a22+", "a22-"):
        t = built(name, 13)
        bad = []
        for th in t.roots(1):
            a, b = th
            imaginary = a == b
            want = (2, 2) if imaginary else (1, 1)
            if abs(a - b) > 1 or t.sdim(th) != want:
                bad.append((th, t.sdim(th)))
        ims = [t.sdim((k, k)) for k in range(1, 7)]
        good = not bad and ims == [(2, 2)] * 6 and t.sdim((7, 6)) == (1, 1)
        ok &= good
        notes.append(f"{name}: {len(t.roots(1))} positive roots, g_kdelta {set(ims)}" + (f", bad {bad[:3]}" if bad else ""))
    return ok, "; ".join(notes)


# 7. affinization

def criterion_7():
    e = catalog.get("affine-a2")
    t = built("affine-a2", 8)
    rep = engine.compare_with_oracle(t, e.oracle, e.genmap)
    d = e.datum
    even_kernel = all(d.h.parity(k) == 0 for v in rep.central_kernel for k in v)
    ev, _, _ = engine.center(t)
    from qkm.exact_core import span_basis
    inside = all(len(span_basis(ev + [v])) == len(span_basis(ev)) for v in rep.central_kernel)
    ok = rep.ok and even_kernel and inside
    return ok, (f"height 8, {len(t.roots())} roots, {rep.checked} oracle checks {'ok' if rep.ok else 'FAILED'}, "
                f"kernel dim {len(rep.central_kernel)} in even center: {even_kernel and inside}")


# 8. Serre relations

def criterion_8():
    notes, ok = [], True
    for name, N in (("q3", 3), ("q4", 4), ("a22+", 13), ("a22-", 13)):
        rep = engine.serre_check(built(name, N))
        ok &= rep.ok and rep.checked > 0
        notes.append(f"{name} {rep.checked} {'ok' if rep.ok else 'FAILED'}")
    return ok, ", ".join(notes)


# 9. diagram enumeration

def criterion_9():
    en = classify.enumerate_uncoupled_fg_diagrams(5)
    got, want = en.families(), classify.expected_families(5)
    star = classify.Diagram(4, {(0, 1): (-1, -1), (0, 2): (-1, -1), (0, 3): (-1, -1)})
    star_rejected = any(R.key() == star.key() for R in en.rejected["3-star"])
    forced = bool(en.rejected["interior vertex label"])
    ok = got == want and star_rejected and forced
    return ok, f"{got}; rejected {({k: len(v) for k, v in en.rejected.items()})}"


# 10. structural suite on every built table

STRUCTURE_TABLES = [("q3", 2), ("q4", 3), ("takiff-sl3-T", 4), ("a22+", 13), ("a22-", 13), ("affine-a2", 8),
                    ("xc1", 20)]


def criterion_10():
    notes, ok = [], True
    for name, N in STRUCTURE_TABLES:
        t = built(name, N)
        rep = engine.verify_structure(t)
        chev = engine.chevalley_report(t)
        ev, _, kerA = engine.center(t)
        good = rep.ok and chev.ok and ev == kerA
        ok &= good
        notes.append(f"{name}@{N} {rep.checked} checks" + ("" if good else
                     f" FAILED {rep.failures[:1]} {chev.failures[:1]} center {ev == kerA}"))
    return ok, "; ".join(notes)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


def _run(k):
    ok, detail = CRITERIA[k - 1]()
    report(k, ok, detail)
    assert ok, detail


def test_criterion_1_q_reconstruction():
    _run(1)


def test_criterion_2_one_root_classification():
    _run(2)


def test_criterion_3_clifford_identities():
    _run(3)


def test_criterion_4_formula_suite():
    _run(4)


def test_criterion_5_coupling_classification():
    _run(5)


def test_criterion_6_q22_multiplicities():
    _run(6)


def test_criterion_7_affinization():
    _run(7)


def test_criterion_8_serre():
    _run(8)


def test_criterion_9_diagram_enumeration():
    _run(9)


def test_criterion_10_structure():
    _run(10)


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        report(k, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
