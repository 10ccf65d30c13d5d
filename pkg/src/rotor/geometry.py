"""Points, polylines and winding integrals of the polar angle form.

Angles are measured in turns throughout (one full revolution = 1.0), so
winding numbers of closed loops come out as integers.

Internally points are complex numbers; ``Point`` is the public value type.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import CenterOnPath, InvalidInput, RefinementBudgetExceeded, SegmentTooWide

TWO_PI = 2.0 * math.pi

# a segment may subtend at most half a turn minus this guard
SEGMENT_DELTA = 1e-3
MAX_SEGMENT_TURN = 0.5 - SEGMENT_DELTA
REFINE_BUDGET = 2**20
# relative distance below which a point counts as sitting on the center
CLEARANCE_EPS = 1e-12


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInput(f"non-finite point ({self.x}, {self.y})")

    @classmethod
    def from_complex(cls, z: complex) -> "Point":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


def as_complex(p) -> complex:
    """Coerce a Point, an (x, y) pair or a number to a complex scalar."""
    if isinstance(p, Point):
        return p.as_complex()
    if isinstance(p, (complex, float, int, np.number)):
        z = complex(p)
    else:
        x, y = p
        z = complex(float(x), float(y))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInput(f"non-finite point {z!r}")
    return z


def as_complex_array(points) -> np.ndarray:
    """Coerce a sequence of points (or a complex array) to a 1-d complex array."""
    if isinstance(points, np.ndarray) and np.iscomplexobj(points):
        return np.atleast_1d(points).astype(complex, copy=False)
    arr = np.asarray(points)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        return arr[:, 0].astype(float) + 1j * arr[:, 1].astype(float)
    return np.array([as_complex(p) for p in points], dtype=complex)


@dataclass(frozen=True, eq=False)
class Polyline:
    """Ordered vertices together with the curve parameter of each vertex."""

    vertices: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        v = as_complex_array(self.vertices)
        t = np.asarray(self.params, dtype=float)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "params", t)
        if v.ndim != 1 or v.size < 2:
            raise InvalidInput("a polyline needs at least two vertices")
        if t.shape != v.shape:
            raise InvalidInput("params and vertices differ in length")
        if not np.all(np.isfinite(v.real) & np.isfinite(v.imag)):
            raise InvalidInput("non-finite vertex")
        if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
            raise InvalidInput("params must increase strictly from 0 to 1")

    @classmethod
    def through(cls, points: Sequence) -> "Polyline":
        """Polyline through ``points`` with uniformly spaced parameters."""
        v = as_complex_array(points)
        return cls(v, np.linspace(0.0, 1.0, v.size))

    @staticmethod
    def concat(pieces: Sequence["Polyline"]) -> "Polyline":
        """Join pieces end to start, piece i occupying [i/n, (i+1)/n]."""
        if not pieces:
            raise InvalidInput("nothing to concatenate")
        n = len(pieces)
        verts = [pieces[0].vertices[:1]]
        params = [np.zeros(1)]
        for i, piece in enumerate(pieces):
            verts.append(piece.vertices[1:])
            params.append((i + piece.params[1:]) / n)
        params[-1][-1] = 1.0
        return Polyline(np.concatenate(verts), np.concatenate(params))

    def reversed(self) -> "Polyline":
        return Polyline(self.vertices[::-1], 1.0 - self.params[::-1])

    def reflected(self, center) -> "Polyline":
        """Image under the half-turn z -> 2c - z about ``center``."""
        c = as_complex(center)
        return Polyline(2 * c - self.vertices, self.params)

    def translated(self, shift) -> "Polyline":
        return Polyline(self.vertices + as_complex(shift), self.params)

    @property
    def points(self) -> list[Point]:
        return [Point.from_complex(z) for z in self.vertices]

    @property
    def start(self) -> complex:
        return complex(self.vertices[0])

    @property
    def end(self) -> complex:
        return complex(self.vertices[-1])

    def __len__(self):
        return self.vertices.size


@dataclass(frozen=True)
class WindingValue:
    turns: float
    max_segment_turn: float

    @property
    def nearest_integer(self) -> int:
        return int(round(self.turns))

    @property
    def residual(self) -> float:
        return abs(self.turns - round(self.turns))


def turn_between(a, b):
    """Signed angle from a to b seen from the origin, in turns, in (-1/2, 1/2]."""
    return np.angle(b * np.conj(a)) / TWO_PI


def _clearance_threshold(rel: np.ndarray) -> float:
    return CLEARANCE_EPS * max(1.0, float(np.max(np.abs(rel))))


def _segment_distances(rel: np.ndarray) -> np.ndarray:
    a, b = rel[:-1], rel[1:]
    d = b - a
    dd = np.abs(d) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(dd > 0, -np.real(np.conj(d) * a) / dd, 0.0)
    s = np.clip(s, 0.0, 1.0)
    return np.abs(a + s * d)


def winding(path: Polyline, center=0j) -> WindingValue:
    """Integral of the polar angle form along ``path`` around ``center``."""
    rel = path.vertices - as_complex(center)
    eps = _clearance_threshold(rel)
    if np.min(np.abs(rel)) < eps or np.min(_segment_distances(rel)) < eps:
        raise CenterOnPath("path passes through the center")
    seg = turn_between(rel[:-1], rel[1:])
    widest = float(np.max(np.abs(seg)))
    if widest >= MAX_SEGMENT_TURN:
        raise SegmentTooWide(f"a segment subtends {widest:.6f} turns; refine the path")
    return WindingValue(float(np.sum(seg)), widest)


def refine_many(
    curve: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n_rows: int,
    max_turn: float = 0.1,
    max_chord_err: float | None = None,
    grid: int = 64,
    budget: int = REFINE_BUDGET,
    keep_segments: bool = False,
):
    """Adaptive bisection of many curves at once, measured around the origin.

    ``curve(t, rows)`` returns the points of curves ``rows`` at parameters
    ``t`` (both 1-d arrays of equal length), already expressed relative to the
    center. An interval is accepted once both halves and the whole subtend at
    most ``max_turn`` and the midpoint sits within a quarter of the local
    distance to the center from the chord (and within ``max_chord_err`` when
    given). Otherwise it is bisected.

    Returns ``(turns, widest)`` per row, plus the accepted segments as
    ``(rows, ta, tb, pa, pb)`` when ``keep_segments`` is set.
    """
    if max_turn <= 0 or max_turn >= MAX_SEGMENT_TURN:
        raise InvalidInput("max_turn must lie in (0, 0.5 - delta)")
    nodes = np.linspace(0.0, 1.0, grid + 1)
    row_ids = np.arange(n_rows)
    pts = np.asarray(curve(np.tile(nodes, n_rows), np.repeat(row_ids, grid + 1)), dtype=complex)
    _check_clear(pts, np.repeat(row_ids, grid + 1))
    pts = pts.reshape(n_rows, grid + 1)

    rows = np.repeat(row_ids, grid)
    ta = np.tile(nodes[:-1], n_rows)
    tb = np.tile(nodes[1:], n_rows)
    pa = pts[:, :-1].ravel()
    pb = pts[:, 1:].ravel()

    turns = np.zeros(n_rows)
    widest = np.zeros(n_rows)
    splits = np.zeros(n_rows, dtype=np.int64)
    kept = []
    while ta.size:
        tm = 0.5 * (ta + tb)
        pm = np.asarray(curve(tm, rows), dtype=complex)
        _check_clear(pm, rows)
        s_ab = turn_between(pa, pb)
        s_am = turn_between(pa, pm)
        s_mb = turn_between(pm, pb)
        dev = np.abs(pm - 0.5 * (pa + pb))
        near = np.minimum(np.minimum(np.abs(pa), np.abs(pb)), np.abs(pm))
        ok = (
            (np.abs(s_ab) <= max_turn)
            & (np.abs(s_am) <= max_turn)
            & (np.abs(s_mb) <= max_turn)
            & (dev <= 0.25 * near)
        )
        if max_chord_err is not None:
            ok &= dev <= max_chord_err
        if ok.any():
            turns += np.bincount(rows[ok], weights=s_ab[ok], minlength=n_rows)
            np.maximum.at(widest, rows[ok], np.abs(s_ab[ok]))
            if keep_segments:
                kept.append((rows[ok], ta[ok], tb[ok], pa[ok], pb[ok]))
        bad = ~ok
        if not bad.any():
            break
        r = rows[bad]
        splits += np.bincount(r, minlength=n_rows)
        if splits.max() > budget or np.min(tm[bad] - ta[bad]) < 2.0**-50:
            raise RefinementBudgetExceeded("subdivision cap hit; path runs too close to the center")
        rows = np.concatenate([r, r])
        ta, tb = np.concatenate([ta[bad], tm[bad]]), np.concatenate([tm[bad], tb[bad]])
        pa, pb = np.concatenate([pa[bad], pm[bad]]), np.concatenate([pm[bad], pb[bad]])
    if keep_segments:
        return turns, widest, tuple(np.concatenate(parts) for parts in zip(*kept))
    return turns, widest


def _check_clear(pts: np.ndarray, rows: np.ndarray) -> None:
    if not np.all(np.isfinite(pts.real) & np.isfinite(pts.imag)):
        raise InvalidInput("curve produced a non-finite point")
    if pts.size == 0:
        return
    d = np.abs(pts)
    if np.min(d) < _clearance_threshold(pts):
        bad = int(rows[np.argmin(d)])
        raise CenterOnPath(f"curve {bad} meets the center")


def refine(
    curve: Callable[[np.ndarray], np.ndarray],
    center=0j,
    max_turn: float = 0.1,
    max_chord_err: float | None = None,
    budget: int = REFINE_BUDGET,
    grid: int = 16,
) -> Polyline:
    """Sample a parametric curve ``c: [0, 1] -> C`` finely enough to integrate
    the angle form around ``center``.

    ``curve`` must accept an array of parameters. Every segment of the result
    subtends at most ``max_turn``; zero-length segments are merged away, so a
    constant curve comes back as a two-vertex path.
    """
    c = as_complex(center)

    def rel(t, rows):
        return np.asarray(curve(t), dtype=complex) - c

    _, _, (_, ta, tb, pa, pb) = refine_many(
        rel, 1, max_turn=max_turn, max_chord_err=max_chord_err, grid=grid, budget=budget, keep_segments=True
    )
    order = np.argsort(ta)
    verts = np.concatenate([pa[order][:1], pb[order]]) + c
    params = np.concatenate([[0.0], tb[order]])
    keep = np.ones(verts.size, dtype=bool)
    keep[1:] = verts[1:] != verts[:-1]
    keep[-1] = True
    verts, params = verts[keep], params[keep]
    return Polyline(verts, params)


def straight_path(a, b) -> Callable[[np.ndarray], np.ndarray]:
    """Parametric straight segment from a to b."""
    a, b = as_complex(a), as_complex(b)
    return lambda t: (1.0 - np.asarray(t)) * a + np.asarray(t) * b


def winding_of_curve(curve: Callable[[np.ndarray], np.ndarray], center=0j, max_turn: float = 0.1) -> float:
    return winding(refine(curve, center, max_turn=max_turn), center).turns
