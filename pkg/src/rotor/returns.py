"""Free disks, first returns and the integer return winding around a fixed point."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EmptyInput, InvalidInput, NoReturn, NotFree, NotInteger
from .geometry import TWO_PI, Point, Polyline, as_complex, as_complex_array, turn_between, winding
from .isotopy import Isotopy, enlace_many, orbit_relative_arc

MAX_RETURN_ITER = 10**6


@dataclass(frozen=True)
class FreeDisk:
    """Open round disk checked to be disjoint from its image."""

    center: Point
    radius: float
    margin: float
    samples: int

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InvalidInput("disk radius must be positive and finite")

    @property
    def c(self) -> complex:
        return self.center.as_complex()

    def contains(self, z) -> np.ndarray | bool:
        d = np.abs(np.asarray(z, dtype=complex) - self.c)
        return d < self.radius

    def grid(self, n: int = 12) -> np.ndarray:
        """Points of an n x n grid over the bounding square that fall inside."""
        s = (np.arange(n) + 0.5) / n * 2 - 1
        xx, yy = np.meshgrid(s, s)
        pts = self.c + self.radius * (xx + 1j * yy).ravel()
        return pts[self.contains(pts)]


def _as_map(f) -> Callable[[np.ndarray], np.ndarray]:
    return f.end_map if isinstance(f, Isotopy) else f


def verify_free(f, center, radius: float, n_boundary: int = 256, n_grid: int = 16) -> FreeDisk:
    """Sample the disk and its boundary and bound dist(f(U), U) from below.

    The bound is the smallest sampled distance from an image point to the disk,
    minus the largest image gap between neighbouring samples (a finite
    difference Lipschitz slack). Success is numerical evidence, not a proof.
    """
    if not radius > 0:
        raise InvalidInput("disk radius must be positive")
    fm = _as_map(f)
    c = as_complex(center)
    ring = c + radius * np.exp(1j * TWO_PI * np.arange(n_boundary) / n_boundary)
    s = (np.arange(n_grid) + 0.5) / n_grid * 2 - 1
    xx, yy = np.meshgrid(s, s)
    grid = c + radius * (xx + 1j * yy)
    inside = np.abs(grid - c) < radius
    ring_img = fm(ring)
    grid_img = fm(grid.ravel()).reshape(grid.shape)

    gap = np.max(np.abs(np.diff(np.append(ring_img, ring_img[:1]))))
    gx = np.abs(np.diff(grid_img, axis=1))[inside[:, 1:] & inside[:, :-1]]
    gy = np.abs(np.diff(grid_img, axis=0))[inside[1:, :] & inside[:-1, :]]
    for g in (gx, gy):
        if g.size:
            gap = max(gap, float(np.max(g)))
    images = np.concatenate([ring_img, grid_img[inside]])
    dist = float(np.min(np.abs(images - c))) - radius
    margin = dist - 0.5 * gap
    if not margin > 0:
        raise NotFree(f"image of the disk comes within {dist:.3e} of it (slack {0.5 * gap:.3e})")
    return FreeDisk(Point.from_complex(c), float(radius), margin, int(ring.size + inside.sum()))


@dataclass(frozen=True)
class ReturnData:
    tau: int
    landing: Point
    itinerary: tuple[complex, ...]


def first_return(f, U: FreeDisk, z, max_iter: int = MAX_RETURN_ITER) -> ReturnData:
    """Smallest tau >= 1 with f^tau(z) in U."""
    fm = _as_map(f)
    z = as_complex(z)
    if not U.contains(z):
        raise InvalidInput("the seed is not in the disk")
    w = np.array([z])
    path = [z]
    for tau in range(1, max_iter + 1):
        w = fm(w)
        path.append(complex(w[0]))
        if U.contains(w[0]):
            return ReturnData(tau, Point.from_complex(complex(w[0])), tuple(path))
    raise NoReturn(f"no return to the disk within {max_iter} iterates")


def return_times(f, U: FreeDisk, z, max_iter: int = MAX_RETURN_ITER) -> tuple[np.ndarray, np.ndarray]:
    """First return times and landings for many seeds of U at once."""
    fm = _as_map(f)
    z = as_complex_array(z)
    if not np.all(U.contains(z)):
        raise InvalidInput("a seed is not in the disk")
    tau = np.zeros(z.size, dtype=np.int64)
    land = z.copy()
    cur = z.copy()
    active = np.arange(z.size)
    for step in range(1, max_iter + 1):
        cur[active] = fm(cur[active])
        back = U.contains(cur[active])
        done = active[back]
        tau[done] = step
        land[done] = cur[done]
        active = active[~back]
        if active.size == 0:
            return tau, land
    raise NoReturn(f"{active.size} seed(s) did not return within {max_iter} iterates")


def hits_disk(f, U: FreeDisk, z, max_iter: int = MAX_RETURN_ITER) -> np.ndarray:
    """Whether the forward orbit (including time 0) of each point enters U."""
    fm = _as_map(f)
    cur = as_complex_array(z).copy()
    hit = U.contains(cur)
    active = np.flatnonzero(~hit)
    for _ in range(max_iter):
        if active.size == 0:
            break
        cur[active] = fm(cur[active])
        now = U.contains(cur[active])
        hit[active[now]] = True
        active = active[~now]
    return hit


def _check_puncture(U: FreeDisk, p: complex) -> None:
    if abs(p - U.c) <= U.radius:
        raise InvalidInput("the puncture must lie outside the closed disk")


def chord_winding(a, b, puncture) -> float:
    """Turns swept around ``puncture`` by the straight segment a -> b."""
    p = as_complex(puncture)
    return float(turn_between(as_complex(a) - p, as_complex(b) - p))


@dataclass(frozen=True)
class ReturnWinding:
    value: int
    raw: float
    tau: int
    landing: complex


def return_winding(I: Isotopy, U: FreeDisk, puncture, z, tol: float = 1e-6,
                   max_iter: int = MAX_RETURN_ITER) -> ReturnWinding:
    """Enlace summed along the orbit segment from z to its first return, closed
    by the chord back to z; the result is an integer."""
    p = as_complex(puncture)
    _check_puncture(U, p)
    ret = first_return(I, U, z, max_iter)
    orbit = np.array(ret.itinerary[:-1])
    raw = float(np.sum(enlace_many(I, orbit, p, pinned=True)))
    landing = ret.itinerary[-1]
    raw += chord_winding(landing, as_complex(z), p)
    k = round(raw)
    if abs(raw - k) >= tol:
        raise NotInteger(f"return winding {raw!r} is not an integer")
    return ReturnWinding(int(k), raw, ret.tau, landing)


def alpha(I: Isotopy, U: FreeDisk, puncture, z, tol: float = 1e-6, max_iter: int = MAX_RETURN_ITER) -> int:
    return return_winding(I, U, puncture, z, tol, max_iter).value


def alpha_many(I: Isotopy, U: FreeDisk, puncture, z, tol: float = 1e-6, max_iter: int = MAX_RETURN_ITER,
               with_tau: bool = False):
    """Return windings for many seeds of U, computed step by step in batch."""
    p = as_complex(puncture)
    _check_puncture(U, p)
    z = as_complex_array(z)
    if not np.all(U.contains(z)):
        raise InvalidInput("a seed is not in the disk")
    sums = np.zeros(z.size)
    tau = np.zeros(z.size, dtype=np.int64)
    cur = z.copy()
    active = np.arange(z.size)
    for step in range(1, max_iter + 1):
        sums[active] += enlace_many(I, cur[active], p, pinned=True)
        cur[active] = I.end_map(cur[active])
        back = U.contains(cur[active])
        tau[active[back]] = step
        active = active[~back]
        if active.size == 0:
            break
    else:
        raise NoReturn(f"{active.size} seed(s) did not return within {max_iter} iterates")
    raw = sums + turn_between(cur - p, z - p)
    k = np.rint(raw)
    if np.any(np.abs(raw - k) >= tol):
        raise NotInteger(f"worst residual {np.max(np.abs(raw - k)):.3e}")
    return (k, tau) if with_tau else k


def return_loop(I: Isotopy, U: FreeDisk, puncture, z, tol: float | None = None,
                max_iter: int = MAX_RETURN_ITER) -> Polyline:
    """Closed loop of relative trajectories from z to its first return, closed
    by the chord inside U; expressed relative to the puncture."""
    p = as_complex(puncture)
    _check_puncture(U, p)
    z = as_complex(z)
    ret = first_return(I, U, z, max_iter)
    arc = orbit_relative_arc(I, z, p, ret.tau, tol)
    chord = Polyline.through([arc.end, z - p])
    return Polyline.concat([arc, chord])


def loop_winding(I: Isotopy, U: FreeDisk, puncture, z, tol: float | None = None) -> float:
    return winding(return_loop(I, U, puncture, z, tol), 0j).turns


def alpha_tau_range(I: Isotopy, U: FreeDisk, puncture, seeds, max_iter: int = MAX_RETURN_ITER) -> tuple[float, float]:
    """Observed (min, max) of alpha / tau over the seeds."""
    if len(seeds) == 0:
        raise EmptyInput("no seeds")
    a, tau = alpha_many(I, U, puncture, seeds, max_iter=max_iter, with_tau=True)
    r = a / tau
    return float(r.min()), float(r.max())
