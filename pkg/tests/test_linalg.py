import pytest
from hypothesis import given, settings, strategies as st
from fractions import Fraction

from cyclicmon.linalg import (Echelon, IdentityMap, KronMap, LinalgError, Matrix, NotAComplexError,
                              Subspace, TransposedMap, block_diag, cohomology_at, fixed_space, hstack,
                              image, intersect, kernel, quotient, rank, scalar, span, vstack)


def M(rows):
    return Matrix.from_dense(rows)


def test_scalar_is_reduced():
    x = scalar("6/-4")
    assert x == Fraction(-3, 2)
    assert x.denominator == 2


def test_matrix_drops_zeros():
    m = M([[0, 1], [0, 0]])
    assert m.nnz() == 1
    assert (m - m).is_zero()
    assert (m - m).nnz() == 0


def test_matrix_products():
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert a.transpose().to_dense() == [[1, 3], [2, 4]]
    assert a.power(2) == a @ a
    assert a @ Matrix.identity(2) == a


def test_kron_index_convention():
    # (a, b) -> a * dim2 + b, first factor most significant
    a = M([[1, 2], [3, 4]])
    b = M([[0, 1], [1, 0]])
    k = a.kron(b)
    assert k.entry(0 * 2 + 1, 0 * 2 + 0) == 1
    assert k.entry(1 * 2 + 0, 0 * 2 + 1) == 3
    assert KronMap([a, b]).to_matrix() == k
    assert KronMap([a, IdentityMap(2), b]).to_matrix() == a.kron(Matrix.identity(2)).kron(b)


def test_kron_strictly_associative():
    a, b, c = M([[1, 1], [0, 1]]), M([[2]]), M([[0, 1], [1, 0]])
    assert a.kron(b).kron(c) == a.kron(b.kron(c))


def test_stacking():
    a = M([[1, 2]])
    assert hstack([a, a]).to_dense() == [[1, 2, 1, 2]]
    assert vstack([a, a]).to_dense() == [[1, 2], [1, 2]]
    assert block_diag([a, M([[3]])]).to_dense() == [[1, 2, 0], [0, 0, 3]]


def test_kernel_examples():
    assert kernel(M([[0]])).dim == 1
    assert kernel(Matrix.identity(3)).dim == 0
    k = kernel(M([[1, 1], [1, 1]]))
    assert k.dim == 1
    assert k.vectors[0] == {0: 1, 1: -1}


def test_image_examples():
    assert image(Matrix.zero(2, 2)).dim == 0
    assert image(Matrix.identity(2)) == Subspace.full(2)
    im = image(M([[1, 2], [2, 4]]))
    assert im.dim == 1
    assert im.vectors[0] == {0: 1, 1: 2}


def test_quotient_examples():
    q = quotient(2, span(2, [{0: 1}]))
    assert q.quotient_dim == 1
    q = quotient(3, Subspace.zero(3))
    assert q.projection == Matrix.identity(3)
    q = quotient(3, span(3, [{0: 1, 1: 1}, {2: 1}]))
    assert q.quotient_dim == 1
    assert q.projection @ q.section == Matrix.identity(1)
    with pytest.raises(LinalgError):
        quotient(4, span(3, [{0: 1}]))


def test_cohomology_at_examples():
    assert cohomology_at(Matrix.zero(1, 0), Matrix.zero(0, 1)) == 1
    assert cohomology_at(Matrix.identity(1), Matrix.zero(0, 1)) == 0
    assert cohomology_at(M([[1], [1]]), M([[1, -1]])) == 0
    with pytest.raises(NotAComplexError):
        cohomology_at(M([[1], [1]]), M([[1, 1]]))


def test_canonical_bases_compare_by_value():
    a = span(3, [{0: 1, 1: 2}, {1: 1, 2: 1}])
    b = span(3, [{0: 2, 1: 6, 2: 2}, {0: -1, 1: -1, 2: 1}])
    assert a == b
    assert a.vectors == b.vectors
    # pivot = smallest index, coefficient 1 there
    for p, v in zip(a.pivots, a.vectors):
        assert min(v) == p and v[p] == 1


def test_kernel_of_rows_matches_kernel():
    m = M([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]])
    k = kernel(m)
    assert k.dim == 2
    for v in k.vectors:
        assert m.apply(v) == {}
    # canonical form agrees with a span of the same vectors
    assert span(4, k.vectors) == k


def test_intersect():
    a = span(3, [{0: 1}, {1: 1}])
    b = span(3, [{1: 1}, {2: 1}])
    assert intersect(a, b) == span(3, [{1: 1}])


def test_subspace_coords():
    s = span(3, [{0: 1, 2: 1}, {1: 1, 2: -1}])
    assert s.coords({0: 2, 1: 3, 2: -1}) == {0: 2, 1: 3}
    assert not s.contains({2: 1})


def test_fixed_space_monomial_and_general():
    swap = M([[0, 1], [1, 0]])
    assert fixed_space(2, [swap]) == span(2, [{0: 1, 1: 1}])
    neg = swap.scale(-1)
    assert fixed_space(2, [neg]) == span(2, [{0: 1, 1: -1}])
    shear = M([[1, 1], [0, 1]])
    assert fixed_space(2, [shear]) == span(2, [{0: 1}])
    assert fixed_space(2, [TransposedMap(shear)]) == span(2, [{1: 1}])


def test_echelon_rules_agree_on_rank():
    vecs = [{0: 1, 3: 2}, {1: 1, 3: 1}, {0: 1, 1: 1, 3: 3}, {2: 5}]
    ranks = set()
    for rule in ("min", "max", "sparse"):
        e = Echelon(rule)
        for v in vecs:
            e.add(dict(v))
        ranks.add(len(e))
    assert ranks == {3}


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    m = M(rows)
    assert kernel(m).dim + image(m).dim == c
    assert rank(m) == image(m).dim == rank(m.transpose())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.data())
def test_quotient_contract(n, data):
    vecs = [{i: scalar(data.draw(small)) for i in range(n)} for _ in range(data.draw(st.integers(0, 3)))]
    vecs = [{i: x for i, x in v.items() if x} for v in vecs]
    sub = span(n, vecs)
    q = quotient(n, sub)
    assert q.quotient_dim == n - sub.dim
    assert q.projection @ q.section == Matrix.identity(q.quotient_dim)
    assert (q.projection @ sub.basis).is_zero()
