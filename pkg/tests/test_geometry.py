import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotor.errors import CenterOnPath, InvalidInput, RefinementBudgetExceeded, SegmentTooWide
from rotor.geometry import MAX_SEGMENT_TURN, Point, Polyline, refine, straight_path, winding

SQUARE = [(1, -1), (1, 1), (-1, 1), (-1, -1), (1, -1)]


def test_square_ccw_and_cw():
    assert winding(Polyline.through(SQUARE), (0, 0)).turns == pytest.approx(1.0, abs=1e-12)
    assert winding(Polyline.through(SQUARE[::-1]), (0, 0)).turns == pytest.approx(-1.0, abs=1e-12)


def test_triangle_away_from_center():
    tri = Polyline.through([(1, 0), (3, 1), (2, -2), (1, 0)])
    assert winding(tri, (0, 0)).turns == pytest.approx(0.0, abs=1e-12)


def test_center_on_vertex_and_segment():
    with pytest.raises(CenterOnPath):
        winding(Polyline.through([(0, 0), (1, 1)]), (0, 0))
    with pytest.raises(CenterOnPath):
        winding(Polyline.through([(-1, 0), (1, 0)]), (0, 0))


def test_wide_segment_rejected():
    with pytest.raises(SegmentTooWide):
        winding(Polyline.through([(1, 0), (-1, 1e-6)]), (0, 0))


def test_polyline_invariants():
    with pytest.raises(InvalidInput):
        Polyline.through([(0, 0)])
    with pytest.raises(InvalidInput):
        Polyline([0, 1], [0.0, 0.5])
    with pytest.raises(InvalidInput):
        Point(float("nan"), 0.0)


def test_refine_circle():
    path = refine(lambda t: np.exp(2j * np.pi * t), 0j, max_turn=0.1)
    assert len(path) - 1 >= 10
    w = winding(path, 0j)
    assert w.turns == pytest.approx(1.0, abs=1e-9)
    assert w.max_segment_turn <= 0.1


def test_refine_constant_curve():
    path = refine(lambda t: np.full(np.shape(t), 2 + 1j), 0j)
    assert len(path) == 2
    assert winding(path, 0j).turns == 0.0


def test_refine_near_half_turn_chord():
    path = refine(straight_path((1, 0), (-1, 1e-6)), 0j, max_turn=0.1)
    assert abs(winding(path, 0j).turns - 0.5) < 1e-3


def test_refine_chord_error_cap():
    path = refine(lambda t: 3 * np.exp(2j * np.pi * t), 0j, max_turn=0.1, max_chord_err=1e-3)
    v = path.vertices
    mid = 3 * np.exp(2j * np.pi * 0.5 * (path.params[1:] + path.params[:-1]))
    assert np.max(np.abs(mid - 0.5 * (v[1:] + v[:-1]))) <= 1e-3


def test_refine_budget():
    with pytest.raises((RefinementBudgetExceeded, CenterOnPath)):
        refine(straight_path((-1, 1e-300), (1, 1e-300)), 0j, budget=64)


def test_refinement_convergence_on_smooth_curve():
    c = lambda t: (2 + np.cos(6 * np.pi * t)) * np.exp(2j * np.pi * (t + 0.2 * np.sin(2 * np.pi * t)))
    a = winding(refine(c, 0.3j, max_turn=0.1), 0.3j).turns
    b = winding(refine(c, 0.3j, max_turn=0.05), 0.3j).turns
    assert abs(a - b) < 1e-9


coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def paths(draw, n_min=2, n_max=8):
    n = draw(st.integers(n_min, n_max))
    pts = [draw(coords) + 1j * draw(coords) for _ in range(n)]
    return pts


def _clear(pts, c):
    rel = np.asarray(pts) - c
    if np.min(np.abs(rel)) < 1e-3:
        return False
    a, b = rel[:-1], rel[1:]
    d = b - a
    s = np.clip(-np.real(np.conj(d) * a) / np.maximum(np.abs(d) ** 2, 1e-300), 0, 1)
    return np.min(np.abs(a + s * d)) > 1e-3


def _segment_refined(pts, c):
    """Straight segments refined so every piece subtends less than the cap."""
    pieces = [refine(straight_path(a, b), c, max_turn=0.1) for a, b in zip(pts[:-1], pts[1:])]
    return pieces


@settings(max_examples=200)
@given(paths(), paths(), coords, coords)
def test_additivity(p, q, cx, cy):
    c = complex(cx, cy)
    q = [p[-1]] + q
    if not (_clear(p, c) and _clear(q, c)):
        return
    a = Polyline.concat(_segment_refined(p, c))
    b = Polyline.concat(_segment_refined(q, c))
    whole = Polyline.concat([a, b])
    assert winding(whole, c).turns == pytest.approx(winding(a, c).turns + winding(b, c).turns, abs=1e-12)


@settings(max_examples=200)
@given(paths(3, 8), coords, coords)
def test_closed_paths_are_integral(p, cx, cy):
    c = complex(cx, cy)
    p = p + [p[0]]
    if not _clear(p, c):
        return
    w = winding(Polyline.concat(_segment_refined(p, c)), c)
    assert abs(w.turns - round(w.turns)) < 1e-9


@settings(max_examples=200)
@given(paths(), coords, coords)
def test_antipodal_invariance(p, cx, cy):
    c = complex(cx, cy)
    if not _clear(p, c):
        return
    path = Polyline.concat(_segment_refined(p, c))
    assert winding(path.reflected(c), c).turns == pytest.approx(winding(path, c).turns, abs=1e-12)


def test_segment_cap_constant():
    assert MAX_SEGMENT_TURN == pytest.approx(0.5 - 1e-3)
    assert math.isclose(winding(Polyline.through([(1, 0), (0, 1)]), 0j).turns, 0.25)
