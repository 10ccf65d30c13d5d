import numpy as np
import pytest

from rotor.errors import NotFree
from rotor.franks import AnnulusLift, check_franks, lift_disk, resimulate, verify_lifted_free
from rotor.returns import FreeDisk, alpha_many, verify_free
from rotor.geometry import Point


@pytest.fixture(scope="module")
def drift(systems):
    s = systems["drift"]
    c, r = s.params["disk"]
    return s, verify_free(s.isotopy, c, r)


def test_drift_map_certificate(drift):
    s, U = drift
    lift = AnnulusLift.of(s.isotopy, 0j, 0)
    cert = check_franks(lift, U, q_max=40)
    assert cert is not None
    assert cert.p >= 0 and cert.p2 <= 0 and 1 <= cert.q <= 40 and 1 <= cert.q2 <= 40
    assert resimulate(lift, cert)


def test_tampered_certificate_fails_resimulation(drift):
    from dataclasses import replace

    s, U = drift
    lift = AnnulusLift.of(s.isotopy, 0j, 0)
    cert = check_franks(lift, U, q_max=40)
    assert not resimulate(lift, replace(cert, p=cert.p + 1))
    assert not resimulate(lift, replace(cert, q=cert.q + 1))


@pytest.mark.parametrize("k", range(4))
def test_ex1_monotone_drift_has_no_certificate(ex1, k):
    U = verify_free(ex1.isotopy, (1.5, 0), 0.1)
    assert check_franks(AnnulusLift.of(ex1.isotopy, 0j, k), U, q_max=50) is None


def test_disk_around_fixed_point_of_lift(ex4):
    # z_1 is fixed and its lift (around z_0) gains no angle
    U = FreeDisk(Point(1.0, 0.0), 0.1, margin=1.0, samples=0)
    with pytest.raises(NotFree):
        verify_lifted_free(AnnulusLift.of(ex4.isotopy, 0j, 0), U)
    with pytest.raises(NotFree):
        check_franks(AnnulusLift.of(ex4.isotopy, 0j, 0), U)


def test_lifted_disk_branch():
    U = FreeDisk(Point(0.0, 2.0), 0.5, 1.0, 0)
    ld = lift_disk(U, 0j)
    assert ld.branch == pytest.approx(0.25)
    assert ld.reference_angle(np.array([2j]))[0] == pytest.approx(0.25)


def test_drift_extremes_bracket_zero(drift):
    s, U = drift
    a, tau = alpha_many(s.isotopy, U, 0j, U.grid(12), max_iter=400, with_tau=True)
    r = a / tau
    assert r.min() < 0 < r.max()
    for k in range(int(np.floor(r.min())) + 1, int(np.ceil(r.max()))):
        assert check_franks(AnnulusLift.of(s.isotopy, 0j, k), U, q_max=40) is not None


def test_constant_sign_increment_never_certifies(ex1):
    U = verify_free(ex1.isotopy, (2.6, 0), 0.05)
    lift = AnnulusLift.of(ex1.isotopy, 0j, 1)
    z = U.grid(12)
    _, th = lift.step_many(z, np.zeros(z.size))
    assert np.all(th > 0)
    assert check_franks(lift, U, q_max=50) is None
