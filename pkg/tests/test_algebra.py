import pickle

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ccdim.algebra import (
    FieldElem,
    FieldError,
    MatrixGF,
    field_arith,
    field_from_order,
    field_make,
    in_row_space,
    is_irreducible,
    kernel_basis,
    minimal_irreducible,
    normalize_vectors,
    projective_points,
    rank,
    rref,
    row_space,
    same_row_space,
)
from ccdim.caps import CapExceeded

from oracles import NaiveField, lincomb, naive_rank

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def elems(q):
    return st.integers(0, q - 1)


@pytest.mark.parametrize("q", SMALL_Q)
def test_tables_match_naive_field(q):
    f, F = field_from_order(q), NaiveField(q)
    for a in range(q):
        for b in range(q):
            assert f.add(a, b) == F.add(a, b)
            assert f.mul(a, b) == F.mul(a, b)
    assert np.array_equal(f.vmul(np.arange(q)[:, None], np.arange(q)[None, :]),
                          [[F.mul(a, b) for b in range(q)] for a in range(q)])


@pytest.mark.parametrize("q", SMALL_Q)
@given(data=st.data())
def test_field_axioms(q, data):
    f = field_from_order(q)
    a, b, c = (data.draw(elems(q)) for _ in range(3))
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, 0) == a and f.mul(a, 1) == a
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.div(f.mul(a, b), a) == b
        assert f.pow(a, q - 1) == 1


def test_gf4_product():
    assert field_arith(field_make(2, 2), 2, 2, "mul") == 3


def test_gf9_modulus():
    assert field_make(3, 2).irr == (1, 0, 1)
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((1, 0, 1), 2)
    assert minimal_irreducible(2, 3) == (1, 1, 0, 1)


def test_prime_field_irr_placeholder():
    assert field_make(5).m == 1 and field_make(5).q == 5


def test_field_errors():
    with pytest.raises(FieldError):
        field_from_order(6)
    with pytest.raises(FieldError):
        field_make(4, 1)
    with pytest.raises(CapExceeded):
        field_make(2, 13)
    with pytest.raises(FieldError):
        field_make(7).inv(0)
    with pytest.raises(FieldError):
        field_arith(field_make(7), 9, 1, "add")


def test_field_is_cached_and_picklable():
    f = field_make(2, 3)
    assert field_from_order(8) is f
    assert pickle.loads(pickle.dumps(f)) is f


def test_field_elem_operators():
    f = field_make(3, 2)
    a, b = FieldElem(f, 4), FieldElem(f, 7)
    assert (a + b).value == f.add(4, 7)
    assert (a * b).value == f.mul(4, 7)
    assert (a / b * b) == a
    assert (a ** 8).value == 1
    assert (-a + a).value == 0
    assert (a.inverse() * a).value == 1


def test_rref_example():
    f = field_make(3)
    R, r, piv = rref(MatrixGF(f, [[1, 2], [2, 1]]))
    assert R.tolist() == [[1, 2], [0, 0]] and r == 1 and piv == [0]


def test_kernel_parity():
    K = kernel_basis(MatrixGF(field_make(2), [[1, 1]]))
    assert K.tolist() == [[1, 1]]


def test_kernel_ternary():
    # x1 + x2 = x2 + x3 = 0 over GF(3) is solved by (1, 2, 1)
    K = kernel_basis(MatrixGF(field_make(3), [[1, 1, 0], [0, 1, 1]]))
    assert same_row_space(K, MatrixGF(field_make(3), [[1, 2, 1]]))


def matrices(max_rows=4, max_cols=6, qs=(2, 3, 4, 5, 7, 8, 9)):
    @st.composite
    def build(draw):
        q = draw(st.sampled_from(qs))
        r = draw(st.integers(1, max_rows))
        c = draw(st.integers(1, max_cols))
        rows = draw(st.lists(st.lists(elems(q), min_size=c, max_size=c), min_size=r, max_size=r))
        return field_from_order(q), rows
    return build()


@given(matrices())
def test_rank_matches_naive(fm):
    f, rows = fm
    assert rank(MatrixGF(f, rows)) == naive_rank(NaiveField(f.q), rows)


@given(matrices())
def test_rank_nullity(fm):
    f, rows = fm
    M = MatrixGF(f, rows)
    K = kernel_basis(M)
    assert rank(M) + K.rows == M.cols
    if K.rows:
        assert not (M @ K.T).entries.any()
        assert rank(K) == K.rows


@given(matrices())
def test_rref_is_canonical(fm):
    f, rows = fm
    M = MatrixGF(f, rows)
    R, r, piv = rref(M)
    assert same_row_space(M, R)
    assert rref(R)[0] == R
    for i, c in enumerate(piv):
        col = R.entries[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1
    # row operations do not change the canonical form
    shuffled = MatrixGF(f, np.asarray(rows)[::-1])
    assert row_space(shuffled) == row_space(M)


@given(matrices(max_rows=3))
def test_in_row_space(fm):
    f, rows = fm
    F = NaiveField(f.q)
    M = MatrixGF(f, rows)
    v = lincomb(F, [1] * len(rows), rows)
    assert in_row_space(M, v)


@given(st.integers(2, 5), st.sampled_from([2, 3, 4, 5]), st.data())
def test_lemma_independent_shift(t, q, data):
    """Shifting t-1 independent vectors by a multiple of the t-th keeps them independent."""
    f = field_from_order(q)
    m = data.draw(st.integers(t, t + 2))
    U = data.draw(st.lists(st.lists(elems(q), min_size=m, max_size=m), min_size=t, max_size=t))
    if rank(MatrixGF(f, U)) < t:
        return
    alpha = data.draw(elems(q))
    U = np.array(U)
    shifted = f.vadd(U[:-1], f.vmul(U[-1][None, :], alpha))
    assert rank(MatrixGF(f, shifted)) == t - 1


@given(st.integers(2, 4), st.sampled_from([2, 3, 4, 5]), st.data())
def test_lemma_shifted_subspaces(t, q, data):
    """D_alpha = D_beta iff alpha = beta, and D_alpha meets D_beta inside D_0."""
    f = field_from_order(q)
    m = data.draw(st.integers(t, t + 1))
    U = np.array(data.draw(st.lists(st.lists(elems(q), min_size=m, max_size=m), min_size=t, max_size=t)))
    if rank(MatrixGF(f, U)) < t:
        return
    a, b = data.draw(elems(q)), data.draw(elems(q))

    def D(x):
        return MatrixGF(f, f.vadd(U[:-1], f.vmul(U[-1][None, :], x)))

    Da, Db, D0 = D(a), D(b), MatrixGF(f, U[:-1])
    assert same_row_space(Da, Db) == (a == b)
    if a != b:
        # intersection = kernel of [Da; -Db]^T mapped back through Da
        stacked = MatrixGF(f, np.vstack([Da.entries, f.vneg(Db.entries)]).T)
        for coeffs in kernel_basis(stacked).entries:
            v = f.matmul(coeffs[None, : t - 1], Da.entries)[0]
            assert in_row_space(D0, v)


@pytest.mark.parametrize("q,k", [(2, 3), (3, 3), (4, 2), (5, 3), (2, 5)])
def test_projective_points(q, k):
    f = field_from_order(q)
    P = projective_points(f, k)
    assert len(P) == (q**k - 1) // (q - 1)
    assert np.array_equal(normalize_vectors(f, P), P)
    assert len({tuple(p) for p in P.tolist()}) == len(P)


def test_normalize_keeps_zero_rows():
    f = field_make(5)
    assert normalize_vectors(f, [[0, 0], [0, 3]]).tolist() == [[0, 0], [0, 1]]


def test_matrix_rejects_out_of_range():
    with pytest.raises(FieldError):
        MatrixGF(field_make(3), [[0, 3]])


def test_matrix_is_hashable_and_frozen():
    f = field_make(2)
    A, B = MatrixGF(f, [[1, 0]]), MatrixGF(f, [[1, 0]])
    assert A == B and hash(A) == hash(B)
    with pytest.raises(ValueError):
        A.entries[0, 0] = 0
