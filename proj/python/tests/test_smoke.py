import math

import numpy as np
import pytest

import laguerre


def test_P_is_lightlike():
    P = laguerre.vector_P(3)
    assert laguerre.lag_ip(P, P) == 0.0


def test_rotation_group_membership():
    T = laguerre.random_laguerre_rotation(3, 5)
    assert laguerre.is_laguerre_transform(T, 1e-10)
    T[2, 3] += 1e-3
    assert not laguerre.is_laguerre_transform(T, 1e-10)


def test_b_from_a_sums():
    b = laguerre.b_from_a([1.0, 2.0, 3.0])
    assert abs(b.sum()) < 1e-12
    assert abs((b**2).sum() - 1.0) < 1e-12


def test_torus_curvatures_at_origin():
    d = laguerre.principal_curvatures("torus", {"R": 2, "r": 1}, [0.0, 0.0])
    assert sorted(abs(d["k"])) == pytest.approx([1.0 / 3.0, 1.0])


def test_sphere_is_umbilic():
    with pytest.raises(laguerre.LaguerreError):
        laguerre.principal_curvatures("sphere", {"R": 1}, [0.1, 0.2])


def test_verify_explicit_family():
    rep = laguerre.verify("hilf", {"a": [1, 2, 3]}, 0.4, 3)
    assert rep["all_passed"]
    assert rep["l_variant_arbitration"]["matching"] == "closedA"
    b = np.array(rep["classification"]["b_sorted_mean"])
    assert b == pytest.approx(np.sort(-laguerre.b_from_a([1, 2, 3])), abs=1e-9)


def test_tau_roundtrip():
    a = [1.0, 2.0]
    u = np.array([0.3, -0.2])
    s = sum(ai * ai * ui * ui for ai, ui in zip(a, u))
    t = sum(ai * ui * ui for ai, ui in zip(a, u))
    x = np.array([t / 2, *u, t / 2])
    xi = np.array([(1 - s) / 2, *(-np.array(a) * u), -(1 + s) / 2])
    xp, _ = laguerre.laguerre_immersion_tau(x, xi)
    q = t / (s + 1)
    assert xp == pytest.approx([q, *(u - q * np.array(a) * u)], abs=1e-14)


def test_cli_catalog_and_bad_input():
    code, out, _ = laguerre.run_cli(["catalog"])
    assert code == 0 and "degenerate-hilf" in out
    code, _, err = laguerre.run_cli(["verify", "--surface", "nope"])
    assert code == 2 and "unknown surface" in err


def test_two_curvature_targets():
    b1, b2 = laguerre.two_curvature_targets(2, 1)
    assert b1 == pytest.approx(math.sqrt(0.5))
    assert b2 == pytest.approx(-math.sqrt(0.5))
