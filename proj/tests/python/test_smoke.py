import json

import numpy as np
import pytest

import acbm

scipy_linalg = pytest.importorskip("scipy.linalg")


def test_canonical_round_trip():
    for cls in acbm.CLASSES:
        c = acbm.canonical_algebra(cls, 1.5, -0.75)
        assert acbm.classify(c) == [cls]
        alpha, beta = acbm.recover_parameters(c, cls)
        assert alpha == pytest.approx(1.5, abs=1e-12)
    assert acbm.classify([0.0] * 9) == []
    assert acbm.signature([0.0] * 9) == "F0 (cosymplectic)"


def test_jacobi():
    assert acbm.is_lie_algebra(acbm.canonical_algebra("F8", 1.0))
    bad = [1, 0, 0, 0, 0, 0, 0, 1, 0]
    assert not acbm.is_lie_algebra(bad)
    assert acbm.jacobi_residual(bad) == pytest.approx(1.0)
    with pytest.raises(acbm.ValidationError):
        acbm.f_from_connection(bad)


def test_f_tensor_oracle_agrees():
    rng = np.random.default_rng(3)
    for _ in range(20):
        c = acbm.canonical_algebra(str(rng.choice(acbm.CLASSES)), float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
        assert np.allclose(acbm.f_from_structure(c), acbm.f_from_connection(c), atol=1e-12)


def test_closed_form_matches_scipy():
    rng = np.random.default_rng(7)
    for cls in acbm.CLASSES:
        for _ in range(20):
            alpha, beta, a, b, c = rng.uniform(-3, 3, size=5)
            m = acbm.table1_matrix(cls, alpha, beta, a, b, c)
            expected = scipy_linalg.expm(m)
            got = acbm.closed_form_exp(cls, m)
            assert np.linalg.norm(got - expected) <= 1e-10 * max(1.0, np.linalg.norm(expected))
            assert np.allclose(acbm.reference_expm(m), expected, rtol=1e-12, atol=1e-12)


def test_coefficients_and_errors():
    m = acbm.table1_matrix("F4", 1.0, 0.0, 0.0, 0.0, 1.0)
    k = acbm.exp_coefficients("F4", m)
    assert k["branch"] == "trsq-negative"
    assert k["t"] == pytest.approx(np.sin(1.0), rel=1e-15)
    with pytest.raises(acbm.ArgumentError):
        acbm.exp_coefficients("F4", m, mode="exact")
    with pytest.raises(acbm.ArgumentError):
        acbm.canonical_algebra("F2", 1.0)
    with pytest.raises(acbm.FamilyViolation):
        acbm.closed_form_exp("F1", np.arange(9.0).reshape(3, 3))


def test_rodrigues_and_fixtures():
    axis = np.array([1.0, 2.0, 2.0]) / 3.0
    r = acbm.rodrigues(axis, 0.8)
    assert np.allclose(r, scipy_linalg.expm(0.8 * np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])))
    assert acbm.example_algebra("GI")["computed"] == ["F9"]
    assert acbm.example_algebra("GII")["computed"] == ["F4"]
    assert acbm.example_algebra("GIII", "span-xi")["computed"] == ["F8", "F10"]


def test_algebra_file_round_trip():
    c = acbm.canonical_algebra("F11", 1.0, 2.0)
    text = acbm.dump_algebra(c, "F11")
    assert json.loads(text)["C"]["02"] == [2.0, 0.0, 0.0]
    assert acbm.parse_algebra_json(text) == c
    with pytest.raises(acbm.ValidationError):
        acbm.parse_algebra_json('{"C":{"01":[0,0,0],"02":[0,0,0],"12":[1,0]}}')


def test_verify_small_sweep():
    a = acbm.verify_report(samples=5, seed=1)
    assert a == acbm.verify_report(samples=5, seed=1, workers=1)
    report = acbm.verify(samples=5, seed=1)
    assert report["pass"]
    assert {c["mode"] for c in report["cells"]} == {"printed", "corrected"}
