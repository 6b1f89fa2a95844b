import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srrlab import gf2
from srrlab.errors import CapExceeded
from srrlab.gf2 import BinaryMatrix, BinaryVector

from oracles import rank_mod2


@st.composite
def matrices(draw, max_rows=8, max_cols=12):
    n = draw(st.integers(1, max_cols))
    k = draw(st.integers(1, max_rows))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=k, max_size=k))
    return BinaryMatrix(n, tuple(rows))


def test_vector_basics():
    v = BinaryVector.from_list([1, 0, 1, 1])
    assert v.weight() == 3
    assert v.support() == [0, 2, 3]
    assert v.to_list() == [1, 0, 1, 1]
    assert (v + v).weight() == 0
    assert BinaryVector.unit(4, 2).to_list() == [0, 0, 1, 0]


def test_vector_length_mismatch():
    with pytest.raises(ValueError):
        BinaryVector(3, 0) + BinaryVector(4, 0)


def test_matrix_roundtrip_strings():
    rows = ["1010", "0111"]
    m = BinaryMatrix.from_strings(rows)
    assert m.to_strings() == rows
    assert m.shape == (2, 4)
    assert m.transpose().transpose() == m


def test_identity_rank_and_rref():
    m = BinaryMatrix.identity(5)
    assert gf2.rank(m) == 5
    r, piv = gf2.rref(m)
    assert r == m and piv == [0, 1, 2, 3, 4]


def test_rank_of_dependent_rows():
    m = BinaryMatrix.from_strings(["110", "011", "101"])
    assert gf2.rank(m) == 2
    assert len(gf2.nullspace_basis(m)) == 1


def test_solve_and_mismatch():
    m = BinaryMatrix.from_strings(["110", "011"])
    x = gf2.solve(m, BinaryVector.from_list([1, 1]))
    assert m.mul_vec(x).to_list() == [1, 1]
    with pytest.raises(ValueError):
        gf2.solve(m, BinaryVector.from_list([1, 1, 1]))


def test_unsolvable_system():
    m = BinaryMatrix.from_strings(["11", "11"])
    assert gf2.solve(m, BinaryVector.from_list([1, 0])) is None


def test_span_cap_refuses():
    basis = [1 << i for i in range(5)]
    with pytest.raises(CapExceeded):
        list(gf2.span_ints(basis, cap=16))


def test_span_gray_code_order_starts_at_zero():
    words = list(gf2.span_ints([1, 2, 4]))
    assert words[0] == 0
    assert sorted(words) == list(range(8))


def test_empty_basis_span_needs_length():
    assert [v.bits for v in gf2.enumerate_span([], length=3)] == [0]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_list_oracle(m):
    assert gf2.rank(m) == rank_mod2(m.to_lists())


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    null = gf2.nullspace_basis(m)
    assert gf2.rank(m) + len(null) == m.ncols
    for v in null:
        assert m.mul_vec(v).weight() == 0


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_preserves_row_space(m):
    r, pivots = gf2.rref(m)
    assert gf2.rank(r) == gf2.rank(m) == len(pivots)
    if pivots:
        assert gf2.rank(m.stack(r)) == gf2.rank(m)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_finds_solution_when_consistent(m, data):
    x = BinaryVector(m.ncols, data.draw(st.integers(0, (1 << m.ncols) - 1)))
    b = m.mul_vec(x)
    y = gf2.solve(m, b)
    assert y is not None and m.mul_vec(y) == b
