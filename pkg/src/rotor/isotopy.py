"""Isotopies from the identity and the winding quantities they define.

An isotopy is stored as a vectorised flow ``flow(t, z)`` on complex arrays.
``tourne`` winds the trajectory ``t -> f_t(z)`` around the origin and
``enlace`` winds the difference ``t -> f_t(z) - f_t(z2)`` around the origin.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Literal

import numpy as np

from .errors import DiagonalInput, InvalidInput
from .geometry import (
    TWO_PI,
    Point,
    Polyline,
    as_complex,
    as_complex_array,
    refine,
    refine_many,
)

Flow = Callable[[np.ndarray, np.ndarray], np.ndarray]
Map = Callable[[np.ndarray], np.ndarray]

# every trajectory segment subtends at most this many turns
TRAJECTORY_MAX_TURN = 0.1
TRAJECTORY_GRID = 16


@dataclass(frozen=True)
class Isotopy:
    """A path ``t -> f_t`` of plane homeomorphisms with ``f_0 = id``.

    ``flow(t, z)`` takes equally shaped float and complex arrays. ``end`` is an
    optional closed form of ``f_1`` (used for iteration); ``inverse`` an
    optional closed form of its inverse. ``shift_k`` counts full rotations
    stacked on top of the reference isotopy by ``shift_class``.
    """

    flow: Flow
    end: Map | None = None
    inverse: Map | None = None
    shift_k: int = 0
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def eval(self, t, z):
        t = np.asarray(t, dtype=float)
        z = np.asarray(z, dtype=complex)
        t, z = np.broadcast_arrays(t, z)
        return self.flow(t, z)

    def end_map(self, z):
        z = np.asarray(z, dtype=complex)
        if self.end is not None:
            return self.end(z)
        return self.flow(np.ones(z.shape), z)

    def __call__(self, z):
        return self.end_map(z)

    def at(self, z) -> complex:
        """f(z) for a single point."""
        return complex(self.end_map(np.array([as_complex(z)]))[0])

    def iterate(self, z, n: int) -> np.ndarray:
        """The orbit z, f(z), ..., f^n(z) of a single point."""
        out = np.empty(n + 1, dtype=complex)
        w = np.array([as_complex(z)])
        out[0] = w[0]
        for k in range(1, n + 1):
            w = self.end_map(w)
            out[k] = w[0]
        return out


def identity_isotopy() -> Isotopy:
    return Isotopy(lambda t, z: z.copy(), end=lambda z: z.copy(), inverse=lambda z: z.copy(), name="identity")


def translation_isotopy(v) -> Isotopy:
    v = as_complex(v)
    return Isotopy(
        lambda t, z: z + t * v,
        end=lambda z: z + v,
        inverse=lambda z: z - v,
        name=f"translation by {v}",
    )


def shift_class(I: Isotopy, k: int) -> Isotopy:
    """Compose with ``k`` full turns about the origin spread over [0, 1].

    The end map is unchanged, Enlace moves by exactly ``k`` on every pair and
    Tourne by exactly ``k`` wherever it is defined.
    """
    k = int(k)
    if k == 0:
        return I
    flow = I.flow

    def shifted(t, z):
        return np.exp(1j * TWO_PI * k * t) * flow(t, z)

    return replace(I, flow=shifted, shift_k=I.shift_k + k, name=f"{I.name} shifted by {k:+d}")


@dataclass(frozen=True)
class Trajectory:
    path: Polyline
    seed: Point
    kind: Literal["absolute", "relative"] = "absolute"
    partner: Point | None = None


def _relative_curve(I: Isotopy, z: np.ndarray, z2: np.ndarray | None):
    """Curve family for refine_many: rows index the seeds."""
    if z2 is None:
        return lambda t, rows: I.eval(t, z[rows])
    # The pinned form f_t(z) - f_t(z2) + z2, wound around z2, traces the same
    # relative vector, so both forms share one curve.
    if np.all(z2 == z2[0]):
        # one partner for every row: evaluate it once per distinct time
        def shared(t, rows):
            ts, inv = np.unique(t, return_inverse=True)
            return I.eval(t, z[rows]) - I.eval(ts, np.full(ts.shape, z2[0]))[inv]

        return shared
    return lambda t, rows: I.eval(t, z[rows]) - I.eval(t, z2[rows])


def tourne_many(I: Isotopy, z) -> np.ndarray:
    """Tourne for a batch of points (complex array)."""
    z = as_complex_array(z)
    if z.size == 0:
        return np.zeros(0)
    turns, _ = refine_many(_relative_curve(I, z, None), z.size, TRAJECTORY_MAX_TURN, grid=TRAJECTORY_GRID)
    return turns


def enlace_many(I: Isotopy, z, z2, pinned: bool = False) -> np.ndarray:
    """Enlace for a batch of pairs; ``z2`` may be a single point."""
    z = as_complex_array(z)
    z2 = np.broadcast_to(as_complex_array(np.atleast_1d(z2)), z.shape).copy()
    if z.size == 0:
        return np.zeros(0)
    if np.any(z == z2):
        raise DiagonalInput("enlace is undefined on the diagonal")
    curve = _relative_curve(I, z, z2)
    turns, _ = refine_many(curve, z.size, TRAJECTORY_MAX_TURN, grid=TRAJECTORY_GRID)
    return turns


def tourne(I: Isotopy, z) -> float:
    """Winding of ``t -> f_t(z)`` around the origin, in turns."""
    return float(tourne_many(I, [as_complex(z)])[0])


def enlace(I: Isotopy, z, z2, pinned: bool = False) -> float:
    """Winding of ``t -> f_t(z) - f_t(z2)`` around the origin, in turns.

    With ``pinned=True`` the isotopy is first corrected by the translations
    that keep ``z2`` in place and the trajectory of ``z`` is wound around
    ``z2``; for a fixed ``z2`` both forms agree.
    """
    return float(enlace_many(I, [as_complex(z)], [as_complex(z2)], pinned=pinned)[0])


def trajectory(I: Isotopy, z, center=0j, tol: float | None = None) -> Trajectory:
    """Adaptive polyline of ``t -> f_t(z)`` fine enough to wind around ``center``.

    ``tol`` caps the midpoint chord deviation when given.
    """
    z = as_complex(z)
    path = refine(lambda t: I.eval(t, np.full(np.shape(t), z)), center, TRAJECTORY_MAX_TURN, tol)
    return Trajectory(path, Point.from_complex(z))


def relative_trajectory(I: Isotopy, z, z2, tol: float | None = None) -> Trajectory:
    """Adaptive polyline of ``t -> f_t(z) - f_t(z2)``, refined around the origin."""
    z, z2 = as_complex(z), as_complex(z2)
    if z == z2:
        raise DiagonalInput("relative trajectory of a point against itself")

    def c(t):
        t = np.asarray(t, dtype=float)
        return I.eval(t, np.full(t.shape, z)) - I.eval(t, np.full(t.shape, z2))

    path = refine(c, 0j, TRAJECTORY_MAX_TURN, tol)
    return Trajectory(path, Point.from_complex(z), "relative", Point.from_complex(z2))


def orbit_relative_arc(I: Isotopy, z, z2, n: int, tol: float | None = None) -> Polyline:
    """Relative trajectories of z, f(z), ..., f^{n-1}(z) against the fixed
    point ``z2``, joined into one path over [0, 1]."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    orbit = I.iterate(z, n - 1)
    return Polyline.concat([relative_trajectory(I, w, z2, tol).path for w in orbit])


def sample_identity_defect(I: Isotopy, points) -> float:
    """max |f_0(z) - z| over ``points``."""
    z = as_complex_array(points)
    return float(np.max(np.abs(I.eval(np.zeros(z.shape), z) - z)))


def sample_endpoint_defect(I: Isotopy, points) -> float:
    """max |f_1(z) - end_map(z)| over ``points``."""
    z = as_complex_array(points)
    return float(np.max(np.abs(I.eval(np.ones(z.shape), z) - I.end_map(z))))


def sample_continuity(I: Isotopy, points, dt: float = 1e-6, n_t: int = 64) -> float:
    """Largest displacement |f_{t+dt}(z) - f_t(z)| seen on a time grid."""
    z = as_complex_array(points)
    ts = np.linspace(0.0, 1.0 - dt, n_t)
    zz = np.repeat(z, n_t)
    tt = np.tile(ts, z.size)
    return float(np.max(np.abs(I.eval(tt + dt, zz) - I.eval(tt, zz))))
