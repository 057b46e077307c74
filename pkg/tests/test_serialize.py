import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from builders import random_complex
from dgkoszul.barcobar import cobar
from dgkoszul.coalgebra import coalgebra_as_comodule, product_sphere_homology_coalgebra, sphere_homology_coalgebra
from dgkoszul.errors import InvariantViolation, ParseError
from dgkoszul.graded import validate_algebra
from dgkoszul.lie import FreeLiePresentation
from dgkoszul.serialize import (
    algebra_in, algebra_out, coalgebra_in, coalgebra_out, comodule_in, comodule_out, complex_in, complex_out, dumps, label_in, loads, presentation_in, presentation_out,
    rational_in, rational_out, table_in, table_out,
)


@given(st.fractions())
def test_rational_round_trip(x):
    assert rational_in(loads(dumps(rational_out(x)))) == x


@given(st.dictionaries(st.integers(-20, 20), st.integers(0, 100)))
def test_table_round_trip(t):
    assert table_in(loads(dumps(table_out(t)))) == t


@given(st.integers(0, 10_000))
def test_complex_round_trip(seed):
    c = random_complex(random.Random(seed), "x", 0, 4)
    back = complex_in(loads(dumps(complex_out(c))))
    assert back.basis == c.basis
    assert all(back.diff(x) == c.diff(x) for x in c.labels())


def test_presentation_round_trip():
    p = FreeLiePresentation([("x", 1), ("y", 3)], {"y": {"[x,[x,x]]": Fraction(1, 3)}}, name="p")
    q = presentation_in(loads(dumps(presentation_out(p))))
    assert q.generators == p.generators and q.differential == p.differential


@pytest.mark.parametrize("bad", [True, 1.5, None, "1/0", "a"])
def test_bad_rationals(bad):
    with pytest.raises(ParseError):
        rational_in(bad)


@pytest.mark.parametrize("fn,rec", [
    (table_in, [1]),
    (table_in, {"a": 1}),
    (complex_in, {"kind": "space-model"}),
    (complex_in, {"kind": "chain-complex", "basis": {"x": ["a"]}}),
    (complex_in, {"kind": "chain-complex", "basis": [{"label": "a", "degree": "0"}]}),
    (complex_in, {"kind": "chain-complex", "basis": [], "differential": [{"inputs": ["a", "b"], "output": "c",
                                                                          "coefficient": "1"}]}),
    (algebra_in, {"kind": "chain-complex"}),
    (presentation_in, {"kind": "lie-presentation"}),
    (presentation_in, {"kind": "lie-presentation", "generators": [["x", 1]], "differential": {"x": 3}}),
])
def test_bad_records(fn, rec):
    with pytest.raises(ParseError):
        fn(rec)


def test_malformed_json():
    with pytest.raises(ParseError):
        loads("{")


def test_rationals_are_written_as_strings():
    assert rational_out(3) == "3"
    assert rational_out(Fraction(-2, 6)) == "-1/3"
    assert rational_in(4) == 4


def test_structured_labels_round_trip():
    omega = cobar(sphere_homology_coalgebra(2), 4)
    c = omega.complex
    back = complex_in(loads(dumps(complex_out(c))))
    assert back.basis == c.basis and back.window == c.window
    assert back.exact_above == c.exact_above
    assert all(back.diff(x) == c.diff(x) for x in c.labels())


def test_algebra_round_trip():
    a = cobar(product_sphere_homology_coalgebra(2, 2), 4)
    b = algebra_in(loads(dumps(algebra_out(a))))
    assert b.unit == a.unit and b.augmentation == a.augmentation
    xs = list(a.complex.labels())
    for x in xs:
        for y in xs:
            if a.complex.degree(x) + a.complex.degree(y) <= 4:
                assert b.mul(x, y) == a.mul(x, y)
    assert validate_algebra(b).ok


@pytest.mark.parametrize("bad", [1.5, True, None, {"a": 1}])
def test_bad_labels(bad):
    with pytest.raises(ParseError):
        label_in(bad)


@pytest.mark.parametrize("c", [sphere_homology_coalgebra(3), product_sphere_homology_coalgebra(2, 2)],
                         ids=["S3", "S2xS2"])
def test_coalgebra_round_trip(c):
    d = coalgebra_in(loads(dumps(coalgebra_out(c))))
    assert d.cocommutative == c.cocommutative and d.two_reduced == c.two_reduced
    assert all(d.delta(x) == c.delta(x) for x in c.complex.labels())


def test_coalgebra_flags_are_explicit_and_checked():
    rec = coalgebra_out(sphere_homology_coalgebra(2))
    del rec["two_reduced"]
    with pytest.raises(ParseError):
        coalgebra_in(rec)
    rec = coalgebra_out(sphere_homology_coalgebra(1))
    rec["two_reduced"] = True
    with pytest.raises(InvariantViolation):
        coalgebra_in(rec)


def test_broken_coproduct_is_rejected():
    rec = coalgebra_out(product_sphere_homology_coalgebra(2, 2))
    rec["coproduct"] = [e for e in rec["coproduct"] if e["output"] != ["a", "b"]]
    with pytest.raises(InvariantViolation):
        coalgebra_in(rec)


def test_comodule_round_trip():
    c = product_sphere_homology_coalgebra(2, 2)
    m = coalgebra_as_comodule(c)
    back = comodule_in(loads(dumps(comodule_out(m))), c)
    assert all(back.rho(x) == m.rho(x) for x in m.complex.labels())
    rec = comodule_out(m)
    rec["coaction"] = rec["coaction"][1:]
    with pytest.raises(InvariantViolation):
        comodule_in(rec, c)
