import numpy as np
import pytest

from rotor.errors import EmptyInput, InvalidInput, NoReturn, NotFree
from rotor.geometry import Polyline, winding
from rotor.isotopy import enlace_many, identity_isotopy, orbit_relative_arc
from rotor.returns import (
    alpha,
    alpha_many,
    alpha_tau_range,
    first_return,
    loop_winding,
    return_loop,
    return_winding,
    verify_free,
)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_ex5_disk_is_free_and_returns_in_two(ex5, m):
    U = verify_free(ex5.isotopy, (m, 0), 0.1)
    assert U.margin > 0 and U.samples > 256
    ret = first_return(ex5.isotopy, U, (m, 0))
    assert ret.tau == 2
    assert abs(ret.landing.as_complex() - m) < 1e-9
    assert alpha(ex5.isotopy, U, (0, 0), (m, 0)) == 2 * m + 1


def test_identity_is_never_free():
    with pytest.raises(NotFree):
        verify_free(identity_isotopy(), (3, 4), 0.5)


def test_disk_across_fixed_circle(ex1):
    with pytest.raises(NotFree):
        verify_free(ex1.isotopy, (1, 0), 0.1)


def test_ex1_half_turn(ex1):
    U = verify_free(ex1.isotopy, (1.5, 0), 0.1)
    assert first_return(ex1.isotopy, U, (1.5, 0.02)).tau == 2
    assert alpha(ex1.isotopy, U, (0, 0), (1.5, 0)) == 3


def test_wandering_point_never_returns(ex5):
    U = verify_free(ex5.isotopy, (1.5, 0), 0.02)
    with pytest.raises(NoReturn):
        first_return(ex5.isotopy, U, (1.5, 0), max_iter=300)


def test_seed_outside_disk(ex5):
    U = verify_free(ex5.isotopy, (2, 0), 0.1)
    with pytest.raises(InvalidInput):
        first_return(ex5.isotopy, U, (2.5, 0))


def test_puncture_inside_disk_rejected(ex4):
    U = verify_free(ex4.isotopy, (0.05, 0), 0.02)
    with pytest.raises(InvalidInput):
        alpha(ex4.isotopy, U, (0.05, 0.01), (0.05, 0))


def _ex4_disk(ex4):
    U = verify_free(ex4.isotopy, (0.05, 0), 0.02)
    rng = np.random.default_rng(11)
    seeds = 0.05 + 0.02 * np.sqrt(rng.random(40)) * np.exp(2j * np.pi * rng.random(40))
    return U, seeds


def test_loop_winding_equals_alpha(ex4):
    U, seeds = _ex4_disk(ex4)
    for z in seeds[:8]:
        rw = return_winding(ex4.isotopy, U, (0, 0), z)
        assert rw.tau >= 2
        assert round(loop_winding(ex4.isotopy, U, (0, 0), z)) == rw.value
        assert abs(rw.raw - rw.value) < 1e-6


def test_alpha_many_matches_scalar(ex4):
    U, seeds = _ex4_disk(ex4)
    a, tau = alpha_many(ex4.isotopy, U, (0, 0), seeds, with_tau=True)
    assert np.all(tau >= 2)
    assert [alpha(ex4.isotopy, U, (0, 0), z) for z in seeds[:5]] == list(a[:5])


def test_chord_independence(ex4):
    U, seeds = _ex4_disk(ex4)
    I, p = ex4.isotopy, 0j
    for z in seeds[:5]:
        loop = return_loop(I, U, p, z)
        ret = first_return(I, U, z)
        arc = orbit_relative_arc(I, z, p, ret.tau)
        c = U.c
        detour = Polyline.through([arc.end, c + 0.6 * U.radius * 1j - p, c - 0.5 * U.radius - p, z - p])
        other = Polyline.concat([arc, detour])
        assert abs(winding(other, 0j).turns - winding(loop, 0j).turns) < 1e-9


def test_alpha_tau_range_ex5_degenerate(ex5):
    U = verify_free(ex5.isotopy, (2, 0), 0.1)
    seeds = 2 * np.exp(2j * np.pi * np.linspace(-0.005, 0.005, 9))
    lo, hi = alpha_tau_range(ex5.isotopy, U, 0j, seeds)
    assert lo == hi == 2.5


def test_alpha_tau_range_empty(ex5):
    U = verify_free(ex5.isotopy, (2, 0), 0.1)
    with pytest.raises(EmptyInput):
        alpha_tau_range(ex5.isotopy, U, 0j, [])


def test_alpha_sums_orbit_linking(ex4):
    U, seeds = _ex4_disk(ex4)
    z = seeds[0]
    ret = first_return(ex4.isotopy, U, z)
    total = np.sum(enlace_many(ex4.isotopy, np.array(ret.itinerary[:-1]), 0j))
    assert abs(alpha(ex4.isotopy, U, 0j, z) - total) < 0.5
