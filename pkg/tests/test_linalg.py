from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgkoszul.errors import ParseError, SubNotContained
from dgkoszul.linalg import (
    Echelon, SparseMatrix, format_rational, image_basis, kernel_basis, kernel_vectors, parse_rational,
    quotient_dimension, rank, rank_of_vectors, rref,
)

sympy = pytest.importorskip("sympy")

entries = st.integers(-3, 3)


@st.composite
def small_matrices(draw):
    r = draw(st.integers(0, 6))
    c = draw(st.integers(0, 6))
    return [[draw(entries) for _ in range(c)] for _ in range(r)], c


def _apply(rows, v):
    return [sum(Fraction(a) * v.get(j, 0) for j, a in enumerate(row)) for row in rows]


def test_rref_of_known_matrix():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 7], [0, 0, 1]])
    red, piv, r = rref(m)
    assert piv == [0, 2] and r == 2
    assert red.to_dense()[0] == [1, 2, 0]


def test_kernel_basis_shape():
    m = SparseMatrix.from_dense([[1, 1, 0, 2], [0, 0, 1, -1]])
    ks, piv = kernel_basis(m, with_pivots=True)
    assert piv == [0, 2]
    assert ks == [{1: 1, 0: -1}, {3: 1, 0: -2, 2: 1}]


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(mc):
    rows, c = mc
    m = SparseMatrix.from_dense(rows) if rows else SparseMatrix(0, c, {})
    want = sympy.Matrix(rows).rank() if rows and c else 0
    assert rank(m) == want
    assert rref(m)[2] == want
    assert len(image_basis(m)) == want


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_kernel_is_kernel_of_right_size(mc):
    rows, c = mc
    if not rows:
        return
    m = SparseMatrix.from_dense(rows)
    ks = kernel_basis(m)
    assert len(ks) == c - rank(m)
    for v in ks:
        assert all(x == 0 for x in _apply(rows, v))
    kv = kernel_vectors(m.column_dicts())
    assert len(kv) == len(ks)
    for v in kv:
        assert all(x == 0 for x in _apply(rows, v))
    assert rank_of_vectors(kv) == len(kv)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 5), st.fractions(max_denominator=5), max_size=4), max_size=6))
def test_echelon_rank_matches_sympy(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    dense = [[v.get(j, 0) for j in range(6)] for v in vectors]
    assert e.rank == (sympy.Matrix(dense).rank() if dense else 0)
    for v in vectors:
        assert e.contains(v)


def test_quotient_dimension():
    amb = [{0: 1}, {1: 1}, {2: 1}]
    assert quotient_dimension([{0: 1, 1: 1}], amb) == 2
    with pytest.raises(SubNotContained):
        quotient_dimension([{3: 1}], amb)


@given(st.fractions())
def test_rational_text_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("text", ["", "1/0", "a", "1.5.2", "--2"])
def test_bad_rationals(text):
    with pytest.raises(ParseError):
        parse_rational(text)
