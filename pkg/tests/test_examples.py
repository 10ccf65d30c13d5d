import numpy as np
import pytest

from rotor.errors import InvalidParams
from rotor.examples import EXAMPLE_IDS, build, decay_profile, plateau_bump, smooth_step

GRID = (np.linspace(-4, 4, 41)[:, None] + 1j * np.linspace(-2, 2, 21)[None, :]).ravel()


def test_bump_shape():
    r = np.linspace(0, 0.25, 2001)
    b = plateau_bump(r)
    assert b[0] == 0 and b[-1] == 0 and plateau_bump(0.125) == 1.0
    assert np.all((b >= 0) & (b <= 1))
    assert np.all(plateau_bump(np.array([0.01, 0.03, 0.22, 0.24])) == 0)
    d = decay_profile(r)
    assert d[0] == 1 and d[-1] == 0 and np.all(np.diff(d) <= 0)
    assert smooth_step(0.5) == pytest.approx(0.5)


@pytest.mark.parametrize("name", EXAMPLE_IDS)
def test_fixed_sets(systems, name):
    s = systems[name]
    pts = s.fixed_points(6.0, seed=9)
    assert pts.size >= 1
    assert np.max(np.abs(s.f(pts) - pts)) < 1e-9


@pytest.mark.parametrize("name,probes", [
    ("ex5", [n * np.exp(0.7j) for n in (1, 2, 3)]),
    ("ex5bis", [np.exp(0.7j) / n for n in (1, 2, 3)]),
    ("ex6", [n + 0.125 * np.exp(0.2j) for n in (1, 2, 3)]),
    ("ex1", [1.5 + 0j, 2.5j]),
])
def test_moving_probes(systems, name, probes):
    s = systems[name]
    z = np.array(probes)
    assert np.min(np.abs(s.f(z) - z)) > 0.1


def test_ex4_commutes_with_unit_translation(ex4):
    assert np.max(np.abs(ex4.f(GRID + 1) - (ex4.f(GRID) + 1))) <= 1e-12


def test_ex4_ball_rotation():
    s = build("ex4", theta0=1.7)
    assert s.params["theta0"] == 1.7
    pts = s.fixed_points(2.0, seed=0)
    # circles where 1.7 * profile is an integer are fixed
    assert np.max(np.abs(s.f(pts) - pts)) < 1e-9
    ring = pts[(np.abs(pts - np.rint(pts.real)) > 0.04) & (np.abs(pts - np.rint(pts.real)) < 0.2)]
    assert ring.size > 0


def test_oracle_tables(systems):
    ex1 = systems["ex1"].oracle_table
    assert {(r.quantity, r.args["z"], r.expected) for r in ex1 if r.quantity == "tourne"} == {
        ("tourne", (n, 0), float(n)) for n in range(1, 6)}
    rho5 = [r for r in systems["ex5bis"].oracle_table if r.quantity == "rho"]
    assert [r.expected for r in rho5] == [1.5, 2.5, 3.5, 4.5]


@pytest.mark.parametrize("name,params", [
    ("ex4", {"theta0": 2.0}),
    ("ex5", {"c": 0.5}),
    ("ex5bis", {"c": -0.1}),
    ("ex6", {"c": 80.0}),
    ("ex3", {"eps": 0.1}),
    ("ex7", {}),
])
def test_invalid_params(name, params):
    with pytest.raises(InvalidParams):
        build(name, **params)


def test_id_spelling():
    assert build("Ex.5bis").id == "ex5bis"


def test_mirror_commutes_with_reflection(systems):
    f = systems["mirror"].f
    g = lambda z: -np.conj(z)
    assert np.max(np.abs(f(g(GRID)) - g(f(GRID)))) < 1e-12
