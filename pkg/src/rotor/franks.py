"""Fixed-point certificates for lifts of annulus maps.

The annulus is the plane punctured at a fixed point. A lift is tracked by the
continuous angle coordinate around the puncture; ``lift_shift`` k composes
the canonical lift with the k-th inverse deck translation. A disk U (not
containing the puncture) is lifted to the branch whose angle coordinate is
closest to that of its center.

A certificate records a lifted orbit that re-enters a translate T^p(U~) with
p >= 0 and another that re-enters T^p'(U~) with p' <= 0. Together with
freeness of U~ this forces a fixed point of the lift.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotFree
from .geometry import TWO_PI, Point, as_complex, as_complex_array
from .isotopy import Isotopy, enlace_many
from .returns import FreeDisk, verify_free
from .rotation import LiftedPoint

GUARD_BAND = 0.25


@dataclass(frozen=True)
class AnnulusLift:
    isotopy: Isotopy
    puncture: Point
    lift_shift: int = 0

    @classmethod
    def of(cls, isotopy: Isotopy, puncture, lift_shift: int = 0) -> "AnnulusLift":
        return cls(isotopy, Point.from_complex(as_complex(puncture)), int(lift_shift))

    def step_many(self, base: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p = self.puncture.as_complex()
        inc = enlace_many(self.isotopy, base, p, pinned=True)
        return self.isotopy.end_map(base), theta + inc - self.lift_shift

    def step(self, q: LiftedPoint) -> LiftedPoint:
        b, t = self.step_many(np.array([q.base.as_complex()]), np.array([q.theta_lift]))
        return LiftedPoint(Point.from_complex(complex(b[0])), float(t[0]), q.puncture)


@dataclass(frozen=True)
class LiftedDisk:
    disk: FreeDisk
    puncture: complex
    branch: float  # angle coordinate of the lifted center

    def reference_angle(self, w: np.ndarray) -> np.ndarray:
        """Angle coordinate of the points of U~ above ``w``."""
        rel = (w - self.puncture) / (self.disk.c - self.puncture)
        return self.branch + np.angle(rel) / TWO_PI

    def offsets(self, base: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """For lifted points, the translate index p with the point in T^p(U~)
        and a mask of unambiguous hits."""
        inside = self.disk.contains(base)
        x = theta - self.reference_angle(base)
        p = np.rint(x)
        clear = np.abs(x - p) <= GUARD_BAND
        return p.astype(np.int64), inside & clear


def lift_disk(disk: FreeDisk, puncture) -> LiftedDisk:
    p = as_complex(puncture)
    if abs(disk.c - p) <= disk.radius:
        raise InvalidInput("the disk must not contain the puncture")
    d = disk.c - p
    return LiftedDisk(disk, p, math.atan2(d.imag, d.real) / TWO_PI)


@dataclass(frozen=True)
class FranksCertificate:
    disk: FreeDisk
    branch: float
    lift_shift: int
    q: int
    p: int
    q2: int
    p2: int
    witnesses: tuple[LiftedPoint, LiftedPoint]


def verify_lifted_free(lift: AnnulusLift, disk: FreeDisk, n: int = 24) -> None:
    """Hypothesis (1): the lifted disk is disjoint from its image.

    A disk free for the base map is free upstairs. Otherwise sample the disk
    and reject if any point landing back in U does so on the same branch.
    """
    try:
        verify_free(lift.isotopy, disk.c, disk.radius)
        return
    except NotFree:
        pass
    ld = lift_disk(disk, lift.puncture)
    pts = disk.grid(n)
    theta0 = ld.reference_angle(pts)
    base, theta = lift.step_many(pts, theta0)
    inside = disk.contains(base)
    x = theta - ld.reference_angle(base)
    if np.any(inside & (np.abs(x) < 1 - GUARD_BAND)):
        raise NotFree("the lifted disk meets its image")


def check_franks(lift: AnnulusLift, disk: FreeDisk, seeds=None, q_max: int = 50) -> FranksCertificate | None:
    """Search lifted orbits of seeds in U for re-entries into translates of
    U~ on both sides. Returns ``None`` when none is found within q_max."""
    verify_lifted_free(lift, disk)
    ld = lift_disk(disk, lift.puncture)
    z0 = disk.grid(12) if seeds is None else as_complex_array(seeds)
    if z0.size == 0 or not np.all(disk.contains(z0)):
        raise InvalidInput("seeds must be a non-empty set of points of the disk")
    theta0 = ld.reference_angle(z0)
    base, theta = z0.copy(), theta0.copy()
    pos = neg = None
    for q in range(1, q_max + 1):
        base, theta = lift.step_many(base, theta)
        p, hit = ld.offsets(base, theta)
        if pos is None and np.any(hit & (p >= 0)):
            j = int(np.flatnonzero(hit & (p >= 0))[0])
            pos = (q, int(p[j]), j)
        if neg is None and np.any(hit & (p <= 0)):
            j = int(np.flatnonzero(hit & (p <= 0))[0])
            neg = (q, int(p[j]), j)
        if pos and neg:
            break
    if not (pos and neg):
        return None
    punct = Point.from_complex(ld.puncture)
    w1 = LiftedPoint(Point.from_complex(complex(z0[pos[2]])), float(theta0[pos[2]]), punct)
    w2 = LiftedPoint(Point.from_complex(complex(z0[neg[2]])), float(theta0[neg[2]]), punct)
    return FranksCertificate(disk, ld.branch, lift.lift_shift, pos[0], pos[1], neg[0], neg[1], (w1, w2))


def resimulate(lift: AnnulusLift, cert: FranksCertificate) -> bool:
    """Re-run both witnesses from scratch and confirm the recorded landings."""
    ld = LiftedDisk(cert.disk, lift.puncture.as_complex(), cert.branch)
    for w, q, p in ((cert.witnesses[0], cert.q, cert.p), (cert.witnesses[1], cert.q2, cert.p2)):
        base = np.array([w.base.as_complex()])
        theta = np.array([w.theta_lift])
        if abs(theta[0] - ld.reference_angle(base)[0]) > 1e-12:
            return False
        for _ in range(q):
            base, theta = lift.step_many(base, theta)
        got, ok = ld.offsets(base, theta)
        if not (ok[0] and got[0] == p):
            return False
    return cert.p >= 0 and cert.p2 <= 0
