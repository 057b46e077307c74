import pytest

from dgkoszul.checks import cover_identities, d_squared, kunneth, pbw_dims, run_suite, shift_identities, structural_report
from dgkoszul.coalgebra import sphere_homology_coalgebra
from dgkoszul.graded import ChainComplex, DegreeWindow


def test_pbw_dims_one_odd_and_one_even_generator():
    # U of an odd class is exterior, of an even class polynomial
    assert pbw_dims({1: 1}, 4) == {0: 1, 1: 1, 2: 0, 3: 0, 4: 0}
    assert pbw_dims({2: 1}, 4) == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1}
    assert pbw_dims({1: 1, 2: 1}, 4) == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}


def test_d_squared_catches_bad_differential():
    bad = ChainComplex({2: ["x"], 1: ["y"], 0: ["z"]}, {"x": {"y": 1}, "y": {"z": 1}}, DegreeWindow(0, 2),
                       check=False)
    assert not d_squared(bad).ok


def test_identities_on_a_small_complex():
    c = sphere_homology_coalgebra(3).complex
    for rep in [shift_identities(c), cover_identities(c, 2), kunneth(c, c, DegreeWindow(0, 6))]:
        assert rep.ok


def test_structural_report_dispatch():
    c = sphere_homology_coalgebra(2)
    assert structural_report(c).ok
    assert structural_report(c.complex).ok
    with pytest.raises(TypeError):
        structural_report(3)


def test_run_suite_on_one_model():
    reps = run_suite(4, names=["S3"])
    assert reps and all(r.ok for r in reps)
