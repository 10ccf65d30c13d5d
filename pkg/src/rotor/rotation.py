"""Rotation numbers of orbits around fixed points.

Three estimators: the Birkhoff average of Enlace along return times, the
angle coordinate of a lift to the universal cover of the punctured plane,
and the difference of two lifts (relative rotation).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DiagonalInput, InvalidInput, NoRecurrence, NotFixed, NotInteger
from .geometry import TWO_PI, Point, as_complex, as_complex_array
from .isotopy import Isotopy, enlace, enlace_many

FIXED_RESIDUAL = 1e-9
INTEGER_RESIDUAL = 1e-6
EPS_RETURN = 1e-6
MIN_RETURNS = 3
# a return closer than this (relative) is treated as an exact period
PERIODIC_EPS = 1e-12


def fixed_residual(I: Isotopy, z) -> float:
    z = as_complex(z)
    return abs(I.at(z) - z)


def require_fixed(I: Isotopy, *points) -> None:
    for z in points:
        r = fixed_residual(I, z)
        if not r < FIXED_RESIDUAL:
            raise NotFixed(f"{as_complex(z)} moves by {r:.3e}")


def rho_fixed(I: Isotopy, z, z2) -> int:
    """Rotation number of a fixed point around another: their (integer) Enlace."""
    if as_complex(z) == as_complex(z2):
        raise DiagonalInput("z and z2 coincide")
    require_fixed(I, z, z2)
    e = enlace(I, z, z2)
    k = round(e)
    if abs(e - k) >= INTEGER_RESIDUAL:
        raise NotInteger(f"Enlace on a fixed pair is {e!r}")
    return int(k)


@dataclass(frozen=True)
class LiftedPoint:
    """A point of the universal cover of the plane punctured at ``puncture``:
    the base point together with a continuous angle coordinate in turns."""

    base: Point
    theta_lift: float
    puncture: Point

    def __post_init__(self):
        if self.base == self.puncture:
            raise InvalidInput("a lifted point cannot sit on the puncture")

    @classmethod
    def over(cls, base, puncture, sheet: int = 0) -> "LiftedPoint":
        b, p = as_complex(base), as_complex(puncture)
        theta = math.atan2((b - p).imag, (b - p).real) / TWO_PI + sheet
        return cls(Point.from_complex(b), theta, Point.from_complex(p))

    def deck(self, k: int = 1) -> "LiftedPoint":
        """Apply the deck translation ``k`` times."""
        return LiftedPoint(self.base, self.theta_lift + k, self.puncture)

    def angle_defect(self) -> float:
        """Distance (mod 1) between theta_lift and the actual angle of base."""
        d = self.base.as_complex() - self.puncture.as_complex()
        a = math.atan2(d.imag, d.real) / TWO_PI
        x = (self.theta_lift - a) % 1.0
        return min(x, 1.0 - x)


def lift_step(I: Isotopy, p: LiftedPoint) -> LiftedPoint:
    """Image of a lifted point under the lift of f fixing the puncture's fibre."""
    b, c = p.base.as_complex(), p.puncture.as_complex()
    inc = enlace(I, b, c, pinned=True)
    return LiftedPoint(Point.from_complex(I.at(b)), p.theta_lift + inc, p.puncture)


def lift_increments(I: Isotopy, z, puncture, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbit z..f^n(z) and the n angle increments of its lift."""
    if n < 0:
        raise InvalidInput("n must be non-negative")
    z, c = as_complex(z), as_complex(puncture)
    if z == c:
        raise DiagonalInput("the point sits on the puncture")
    orbit = I.iterate(z, n)
    if n == 0:
        return orbit, np.zeros(0)
    return orbit, enlace_many(I, orbit[:-1], c, pinned=True)


def lift_orbit(I: Isotopy, p: LiftedPoint, n: int) -> list[LiftedPoint]:
    orbit, inc = lift_increments(I, p.base, p.puncture, n)
    thetas = p.theta_lift + np.concatenate([[0.0], np.cumsum(inc)])
    return [LiftedPoint(Point.from_complex(w), float(t), p.puncture) for w, t in zip(orbit, thetas)]


def rho_lift(I: Isotopy, z, puncture, n: int = 1000) -> float:
    """Angle gained by the lift after ``n`` steps, divided by ``n``."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    _, inc = lift_increments(I, z, puncture, n)
    return float(np.sum(inc) / n)


def rho_relative(I: Isotopy, z, p1, p2, n: int = 1000) -> float:
    """Rotation around ``p1`` minus rotation around ``p2``; independent of the
    isotopy class."""
    if as_complex(p1) == as_complex(p2):
        raise DiagonalInput("the two punctures coincide")
    z = as_complex(z)
    orbit = I.iterate(z, n - 1)
    a = enlace_many(I, orbit, as_complex(p1), pinned=True)
    b = enlace_many(I, orbit, as_complex(p2), pinned=True)
    return float(np.sum(a - b) / n)


@dataclass(frozen=True)
class RotationEstimate:
    value: float
    return_times: tuple[int, ...]
    per_return_values: tuple[float, ...]
    residual: float
    converged: bool
    periodic: bool = False

    def __str__(self):
        return f"{self.value:.12g} {'converged' if self.converged else 'not-converged'}"


def _birkhoff(I: Isotopy, z: np.ndarray, p: complex, eps_return: float, max_iter: int, tol: float):
    """Run the return-time average for a batch of seeds at once."""
    m = z.size
    sums = np.zeros(m)
    cur = z.copy()
    active = np.ones(m, dtype=bool)
    returns: list[list[int]] = [[] for _ in range(m)]
    values: list[list[float]] = [[] for _ in range(m)]
    periodic = np.zeros(m, dtype=bool)
    converged = np.zeros(m, dtype=bool)
    periodic_tol = PERIODIC_EPS * np.maximum(1.0, np.abs(z))
    for step in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        sums[idx] += enlace_many(I, cur[idx], p, pinned=True)
        cur[idx] = I.end_map(cur[idx])
        dist = np.abs(cur[idx] - z[idx])
        for j in idx[dist < eps_return]:
            v = sums[j] / step
            returns[j].append(step)
            values[j].append(v)
            if abs(cur[j] - z[j]) < periodic_tol[j]:
                periodic[j] = converged[j] = True
                active[j] = False
            elif len(values[j]) >= MIN_RETURNS and abs(values[j][-1] - values[j][-2]) < tol:
                converged[j] = True
                active[j] = False
    return returns, values, periodic, converged


def _estimate(rt, vals, periodic, converged) -> RotationEstimate:
    if periodic:
        n, v = rt[0], vals[0]
        return RotationEstimate(v, (n, 2 * n, 3 * n), (v, v, v), 0.0, True, True)
    residual = abs(vals[-1] - vals[-2])
    return RotationEstimate(vals[-1], tuple(rt), tuple(vals), residual, bool(converged))


def rho_birkhoff(I: Isotopy, z, puncture, eps_return: float = EPS_RETURN, max_iter: int = 10_000,
                 tol: float = 1e-9) -> RotationEstimate:
    """Average of Enlace(f^r z, puncture) over r < n_k at the return times n_k
    of the orbit of z to the eps_return-ball around z."""
    z, p = as_complex(z), as_complex(puncture)
    if z == p:
        raise DiagonalInput("the point sits on the puncture")
    rt, vals, per, conv = _birkhoff(I, np.array([z]), p, eps_return, max_iter, tol)
    if not per[0] and len(vals[0]) < 2:
        raise NoRecurrence(f"{len(vals[0])} return(s) within {max_iter} iterates")
    return _estimate(rt[0], vals[0], per[0], conv[0])


def rho_birkhoff_many(I: Isotopy, z, puncture, eps_return: float = EPS_RETURN, max_iter: int = 10_000,
                      tol: float = 1e-9) -> np.ndarray:
    """Birkhoff rotation numbers for many seeds (last per-return value each)."""
    z = as_complex_array(z)
    p = as_complex(puncture)
    if np.any(z == p):
        raise DiagonalInput("a seed sits on the puncture")
    rt, vals, per, conv = _birkhoff(I, z, p, eps_return, max_iter, tol)
    out = np.empty(z.size)
    for j in range(z.size):
        if not per[j] and len(vals[j]) < 2:
            raise NoRecurrence(f"seed {z[j]} returned {len(vals[j])} time(s) within {max_iter} iterates")
        out[j] = vals[j][-1] if not per[j] else vals[j][0]
    return out
