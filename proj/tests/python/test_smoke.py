import pytest

import voacert


def test_version():
    assert voacert.version() == "1.0.0"


def test_graded_dimensions():
    dims = voacert.dims(variant="Vpq", p=2, q=1, cutoff="4")
    assert dims == {"0": 3, "1": 6, "2": 9, "3": 18, "4": 27}
    assert voacert.dims(variant="VL", p=2, q=1, cutoff="4") == {
        "0": 1,
        "1": 2,
        "2": 3,
        "3": 6,
        "4": 9,
    }


def test_central_charges():
    assert voacert.central_charge(variant="Vpq", p=2, q=1) == "-2"
    assert voacert.central_charge(variant="VL-standard", n=1) == "1"
    assert voacert.central_charge(variant="Vpq", p=3, q=2) == "0"


def test_basis_names():
    names = voacert.basis(variant="VL", p=2, q=1, cutoff="2")
    assert names[0] == "e(0)"
    assert "g(-1)e(0)" in names


def test_twist_invariants():
    assert voacert.mu(variant="VL-standard", n=1, cutoff="5/2", twist="heisenberg(1/4)") == "1/8"
    assert voacert.mu(variant="Vpq", p=2, q=1, cutoff="3", twist="Q-screen") == "0"
    dims, depth = voacert.twisted_dims(
        variant="VL-standard", n=1, cutoff="5/2", twist="heisenberg(1/4)"
    )
    assert depth == "33/16"
    assert dims["1/16"] == 1
    assert dims["33/16"] == 2


def test_check_suite():
    ok, report = voacert.check(variant="Vpq", p=2, q=1, cutoff="3", suite="screening")
    assert ok
    assert report.startswith("voacert 1\n")
    assert "status PASS" in report
    assert "check screening pass" in report


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        voacert.dims(variant="Vpq", p=2, q=2)
    with pytest.raises(ValueError):
        voacert.check(variant="Vpq", p=2, q=1, suite="nonsense")
