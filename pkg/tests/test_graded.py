import random

import pytest
from hypothesis import given, settings, strategies as st

from builders import random_complex
from dgkoszul.checks import cover_identities, kunneth, shift_identities
from dgkoszul.errors import DifferentialError, IncompleteDegree, InvariantViolation, WindowUnderflow
from dgkoszul.graded import (
    ChainComplex, ChainMap, DegreeWindow, connective_cover, direct_sum, hom_complex, homology, identity_map,
    is_quasi_iso, shift, tensor,
)

seeds = st.integers(0, 10**6)


def _rc(seed, tag="a", lo=0, hi=3):
    return random_complex(random.Random(seed), tag, lo, hi)


def _full(c):
    return homology(c, DegreeWindow(c.window.lo, c.window.hi)).dims()


def test_window_rejects_inverted_bounds():
    with pytest.raises(InvariantViolation):
        DegreeWindow(3, 1)


def test_d_squared_is_enforced():
    with pytest.raises(DifferentialError):
        ChainComplex({2: ["x"], 1: ["y"], 0: ["z"]}, {"x": {"y": 1}, "y": {"z": 1}})


def test_basis_outside_window_rejected():
    with pytest.raises(InvariantViolation):
        ChainComplex({5: ["x"]}, {}, DegreeWindow(0, 3))


def test_homology_of_small_complex():
    c = ChainComplex({0: ["a", "b"], 1: ["e"], 2: ["f"]}, {"e": {"a": 1, "b": -1}})
    assert _full(c) == {0: 1, 1: 0, 2: 1}


def test_untrusted_top_degree():
    c = ChainComplex({0: ["a"], 1: ["e"]}, {"e": {"a": 1}}, DegreeWindow(0, 1), exact_above=False)
    h = homology(c)
    assert h.trusted() == [0] and h.untrusted() == [1]
    with pytest.raises(IncompleteDegree):
        homology(c, DegreeWindow(0, 2))


def test_window_underflow():
    c = ChainComplex({1: ["e"]}, {}, DegreeWindow(1, 1), exact_below=False)
    with pytest.raises(WindowUnderflow):
        homology(c)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_euler_characteristic(seed):
    c = _rc(seed)
    h = _full(c)
    assert sum((-1) ** n * c.dim(n) for n in c.window) == sum((-1) ** n * d for n, d in h.items())


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_kunneth_for_random_complexes(s1, s2):
    a, b = _rc(s1, "a"), _rc(s2, "b")
    assert kunneth(a, b, DegreeWindow(0, 6)).ok


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_hom_complex_homology(s1, s2):
    a, b = _rc(s1, "a", 0, 2), _rc(s2, "b", 0, 2)
    h = hom_complex(a, b, DegreeWindow(-3, 3))
    got = homology(h, DegreeWindow(-2, 2)).dims()
    ha, hb = _full(a), _full(b)
    want = {q: sum(ha.get(p, 0) * hb.get(p + q, 0) for p in ha) for q in range(-2, 3)}
    assert got == want


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(-4, 4))
def test_shift_round_trip(seed, k):
    c = _rc(seed)
    assert shift_identities(c, k).ok
    assert shift(c, 0) is c


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 3))
def test_connective_cover(seed, k):
    c = _rc(seed, hi=4)
    assert cover_identities(c, k).ok
    cov, inc = connective_cover(c, k)
    assert min(cov.basis, default=k) >= k


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_identity_is_quasi_iso_and_zero_map_usually_not(seed):
    c = _rc(seed)
    assert all(is_quasi_iso(identity_map(c)).values())
    z = ChainMap(c, c, {})
    qi = is_quasi_iso(z)
    h = _full(c)
    assert all(qi[n] == (h[n] == 0) for n in qi)


def test_tensor_sign_rule():
    a = ChainComplex({1: ["x"], 0: ["y"]}, {"x": {"y": 1}})
    b = ChainComplex({1: ["u"], 0: ["v"]}, {"u": {"v": 1}})
    t = tensor(a, b)
    assert t.diff(("⊗", "x", "u")) == {("⊗", "y", "u"): 1, ("⊗", "x", "v"): -1}
    assert _full(t) == {0: 0, 1: 0, 2: 0}


def test_direct_sum_adds_homology():
    a = ChainComplex({0: ["a"]}, {})
    b = ChainComplex({0: ["b"], 1: ["c"]}, {})
    assert _full(direct_sum([a, b])) == {0: 2, 1: 1}
