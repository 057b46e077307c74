import pytest
from hypothesis import given, settings, strategies as st

from dgkoszul.checks import pbw_counts, pbw_dims
from dgkoszul.coalgebra import sphere_homology_coalgebra, validate_coalgebra
from dgkoszul.errors import DegreeZeroGenerator, InvariantViolation, NotReduced, ParseError
from dgkoszul.graded import DegreeWindow, homology, validate_algebra
from dgkoszul.lie import (
    FreeLiePresentation, abelian_lie, chevalley_eilenberg, cobar_lie, format_lie_word, free_graded_lie,
    lie_direct_sum, parse_lie_word, uea, validate_lie,
)
from dgkoszul.models import free_lie_dims


def _mobius(n):
    out, k, p = 1, n, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            out = -out
        p += 1
    return -out if k > 1 else out


def witt(k, q):
    """Necklace count: dimension of the degree-k part of the free Lie algebra on q letters."""
    return sum(_mobius(d) * q ** (k // d) for d in range(1, k + 1) if k % d == 0) // k


def test_free_lie_on_even_generators_matches_necklace_counts():
    p = FreeLiePresentation([("a", 2), ("b", 2)])
    l = free_graded_lie(p, 12)
    for k in range(1, 7):
        assert l.complex.dim(2 * k) == witt(k, 2)
        assert l.complex.dim(2 * k - 1) == 0


def test_one_odd_generator():
    l = free_graded_lie(FreeLiePresentation([("x", 1)]), 6)
    assert {n: l.complex.dim(n) for n in range(1, 7)} == {1: 1, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0}


@pytest.mark.parametrize("degs", [[1, 1], [1, 2], [2, 3], [1, 1, 2], [3]])
def test_free_lie_dims_oracle_agrees_with_construction(degs):
    p = FreeLiePresentation([(f"g{i}", d) for i, d in enumerate(degs)])
    l = free_graded_lie(p, 8)
    assert {n: l.complex.dim(n) for n in range(1, 9)} == free_lie_dims(degs, 8)


def test_enveloping_algebra_of_free_lie_is_tensor_algebra():
    l = free_graded_lie(FreeLiePresentation([("x", 1), ("y", 1)]), 7)
    u = uea(l, 7)
    assert [u.complex.dim(n) for n in range(8)] == [2 ** n for n in range(8)]


@pytest.mark.parametrize("degs", [[1, 1], [1, 2], [2, 2], [1, 3]])
def test_jacobi_and_pbw(degs):
    l = free_graded_lie(FreeLiePresentation([(f"g{i}", d) for i, d in enumerate(degs)]), 6)
    assert validate_lie(l).ok
    u = uea(l, 6)
    assert pbw_counts(l, u, 6).ok
    assert validate_algebra(u).ok


def test_differential_extends_as_derivation():
    p = FreeLiePresentation([("x", 1), ("y", 3)], {"y": {"[x,x]": 1}}, name="CP2")
    l = free_graded_lie(p, 7)
    assert validate_lie(l).ok
    # rational homotopy of ℂP² shifted down: degrees 1 and 4
    assert homology(l.complex, DegreeWindow(1, 6)).dims() == {1: 1, 2: 0, 3: 0, 4: 1, 5: 0, 6: 0}


def test_wrong_degree_differential():
    with pytest.raises(InvariantViolation):
        free_graded_lie(FreeLiePresentation([("x", 1), ("y", 2)], {"y": {"[x,x]": 1}}), 5)


def test_presentation_validation():
    with pytest.raises(DegreeZeroGenerator):
        FreeLiePresentation([("x", 0)])
    with pytest.raises(InvariantViolation):
        FreeLiePresentation([("x", 1), ("x", 2)])
    with pytest.raises(ParseError):
        FreeLiePresentation([("1x", 1)])


@given(st.recursive(st.sampled_from(["x", "y", "z1"]), lambda t: st.tuples(t, t), max_leaves=6))
def test_lie_word_text_round_trip(tree):
    assert parse_lie_word(format_lie_word(tree)) == tree


@pytest.mark.parametrize("text", ["[x,y", "[x y]", "[,x]", "x]"])
def test_bad_lie_words(text):
    with pytest.raises(ParseError):
        parse_lie_word(text)


def test_chevalley_eilenberg_of_abelian_lie():
    # sL has one even generator of degree 2: polynomial coalgebra, zero differential
    c = chevalley_eilenberg(abelian_lie([("x", 1)]), 8)
    assert validate_coalgebra(c).ok
    assert homology(c.complex, DegreeWindow(0, 7)).dims() == {n: int(n % 2 == 0) for n in range(8)}
    # one odd generator of degree 3: exterior
    c = chevalley_eilenberg(abelian_lie([("y", 2)]), 8)
    assert [c.complex.dim(n) for n in range(9)] == [1, 0, 0, 1, 0, 0, 0, 0, 0]


def test_chevalley_eilenberg_needs_reduced():
    with pytest.raises(NotReduced):
        chevalley_eilenberg(abelian_lie([("x", 0)]), 3)


def test_direct_sum_brackets_vanish_across():
    a = free_graded_lie(FreeLiePresentation([("x", 1)]), 4)
    b = free_graded_lie(FreeLiePresentation([("y", 1)]), 4)
    s = lie_direct_sum([a, b], name="s")
    assert validate_lie(s).ok
    assert s.bracket(a.complex.basis[1][0], b.complex.basis[1][0]) == {}


def test_cobar_lie_of_sphere_homology():
    l = cobar_lie(sphere_homology_coalgebra(3), 6)
    assert validate_lie(l).ok
    assert {n: l.complex.dim(n) for n in range(1, 7)} == free_lie_dims([2], 6)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_pbw_series_of_free_lie_is_tensor_series(degs):
    hi = 7
    tv = [1] + [0] * hi
    for n in range(1, hi + 1):
        tv[n] = sum(tv[n - g] for g in degs if g <= n)
    assert pbw_dims(free_lie_dims(degs, hi), hi) == dict(enumerate(tv))
