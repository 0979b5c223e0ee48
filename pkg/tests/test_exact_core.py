from fractions import Fraction

from hypothesis import given, strategies as st

from qkm.exact_core import (ZERO, ONE, I, scalar, adjoin_sqrt, generators, sqrt_in_field, parse, to_text, Matrix,
                            rank, kernel_basis, kernel_sparse, solve, span_basis, Reducer, rref)

R2 = adjoin_sqrt(2)
R3 = adjoin_sqrt(3)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw):
    # random element of Q(i)(r2, r3)
    out = ZERO
    for g in (ONE, I, R2, R3, R2 * R3, I * R2):
        out = out + g * draw(small)
    return out


def test_adjoin_sqrt_of_minus_one_is_i():
    assert adjoin_sqrt(-1) == I


def test_adjoin_sqrt_of_perfect_square():
    assert adjoin_sqrt(4) == scalar(2)
    assert adjoin_sqrt(Fraction(9, 4)) == scalar(Fraction(3, 2))


def test_adjoin_sqrt_new_generator():
    r = adjoin_sqrt(2)
    assert r * r == scalar(2)
    assert not r.is_rational()
    assert adjoin_sqrt(8) == 2 * r
    assert adjoin_sqrt(-2) == I * r


def test_sqrt_in_field_finds_existing():
    assert sqrt_in_field(scalar(6)) in (R2 * R3, -R2 * R3)


@given(scalars(), scalars(), scalars())
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE


@given(scalars())
def test_text_round_trip(a):
    assert parse(to_text(a)) == a


@given(st.fractions(min_value=-50, max_value=50, max_denominator=20))
def test_adjoin_sqrt_squares_back_rational(q):
    r = adjoin_sqrt(q)
    assert r * r == scalar(q)


@given(scalars())
def test_adjoin_sqrt_of_square_does_not_extend(a):
    n = len(generators())
    r = adjoin_sqrt(a * a)
    assert r * r == a * a
    assert r in (a, -a)
    assert len(generators()) == n


def test_kernel_examples():
    assert kernel_basis(Matrix.from_rows([[1, 1]])) == [[-1, 1]]
    assert kernel_basis(Matrix.zero(2, 2)) == [[1, 0], [0, 1]]
    # hand row reduction: row 2 = -i * row 1, so x1 = -i x2
    K = kernel_basis(Matrix.from_rows([[1, I], [-I, 1]]))
    assert K == [[-I, ONE]]


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zero(3, 4)) == 0


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_nullity(rows):
    M = Matrix.from_rows(rows)
    K = kernel_sparse(M)
    for v in K:
        assert not any(M.apply(v).values()) if isinstance(M.apply(v), dict) else not any(M.apply(v))
    assert rank(M) + len(K) == M.ncols


@given(matrices, st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_solve_is_consistent(rows, x):
    M = Matrix.from_rows(rows)
    x = x[:M.ncols]
    b = M.apply({k: scalar(v) for k, v in enumerate(x) if v})
    y = solve(M, b)
    assert y is not None
    assert M.apply({k: v for k, v in enumerate(y) if v}) == b


def test_solve_inconsistent():
    assert solve(Matrix.from_rows([[1, 1], [2, 2]]), [1, 0]) is None


def test_rref_pivots():
    E, piv = rref(Matrix.from_rows([[0, 2, 4], [1, 1, 1]]))
    assert piv == [0, 1]
    assert E[(0, 0)] == ONE and E[(1, 1)] == ONE


@given(st.lists(st.dictionaries(st.integers(0, 3), st.integers(-2, 2).filter(bool), max_size=3), max_size=6))
def test_reducer_matches_span_basis(vecs):
    vecs = [{k: scalar(x) for k, x in v.items()} for v in vecs]
    red = Reducer()
    added = [i for i, v in enumerate(vecs) if red.add(v)]
    assert added == span_basis(vecs)
    for v in vecs:
        assert red.contains(v)
        comb = red.express(v)
        total = {}
        for idx, c in comb.items():
            for k, x in vecs[idx].items():
                total[k] = total.get(k, ZERO) + c * x
        assert {k: x for k, x in total.items() if x} == v
