import math
import os
import tempfile

import numpy as np
import pytest

import mfield


def test_patch_closed_forms():
    u = mfield.patch_density(np.array([0.0, 1.0, 1.5]), 1.0)
    np.testing.assert_allclose(u, [0.5, 0.5, 0.0])
    M, M_t, M_s = mfield.patch_mass(0.5, 3.0)
    assert M_t + M * M_s == pytest.approx(0.0, abs=1e-15)
    density, *_ = mfield.largest_solution(2.0, 1.0)
    assert density == 1.0


def test_two_patch_interfaces():
    _, _, s = mfield.two_patch_state(0.0, 3.0)
    np.testing.assert_allclose(s, [2.0, math.sqrt(7.0), 1.5 * math.sqrt(7.0)], rtol=1e-12)
    cs = mfield.CharacteristicSolution.two_patch()
    r = np.linspace(0.0, 5.0, 41)
    exact = np.array([mfield.two_patch_state(x, 3.0)[1] for x in r])
    np.testing.assert_allclose(cs.mass(r**2 / 2, 3.0), exact, atol=1e-10)


def test_godunov_step_keeps_constants():
    M = np.full(65, 0.2)
    M[0] = 0.0
    out = mfield.step_finite_volume(M, r_max=2.0, dt=0.01)
    np.testing.assert_allclose(out[2:], 0.2)


def test_wasserstein_patch_closed_form():
    r = np.sqrt(2 * np.linspace(0.0, 4.5, 4097))
    a = np.array([mfield.patch_mass(x, 0.5)[0] for x in r])
    b = np.array([mfield.patch_mass(x, 2.0)[0] for x in r])
    w = mfield.wasserstein_radial(a, b, r_max=3.0)
    assert w == pytest.approx(mfield.patch_w2_closed_form(2, math.pi, 1.0, 0.5, 2.0), rel=1e-3)
    assert mfield.wasserstein_radial(a, a, r_max=3.0) == 0.0


def test_velocity_of_disk():
    u = mfield.sample_patch(64, 2.0, 0.0)
    vx, vy = mfield.velocity(u, 2.0)
    assert vx.shape == (64, 64)
    i = 32 + 8  # x = 0.53125
    x = -2.0 + (i + 0.5) * 4.0 / 64
    assert vx[i, 31] == pytest.approx(x / 2, rel=0.05)
    assert mfield.energy(u, 2.0, reference=u) == pytest.approx(0.0, abs=1e-12)


def test_solver_conserves_mass():
    res = mfield.run_solver({"kind": "patch"}, cells=64, final_time=0.25, output_times=[0.125])
    assert res["times"] == [0.0, 0.125, 0.25]
    masses = [mfield.total_mass(f, 4.0) for f in res["fields"]]
    assert max(masses) - min(masses) <= 1e-12 * masses[0]
    assert res["summary"]["config"]["scheme"] == "muscl"


def test_scenarios():
    names = [s["name"] for s in mfield.list_scenarios()]
    assert len(names) == 9 and "asymptotics" in names
    rep = mfield.run_scenario("barenblatt-limit")
    assert rep["pass"] and rep["scenario"] == "barenblatt-limit"
    with pytest.raises(ValueError):
        mfield.run_scenario("barenblatt-limit", {"no_such_key": 1})
    with tempfile.TemporaryDirectory() as d:
        rep = mfield.run_scenario("two-patch", out_dir=d)
        assert rep["pass"]
        assert os.path.exists(os.path.join(d, "two-patch", "report.json"))
