"""Finite-scan heuristics for boundedness of Enlace on fixed pairs and constancy
of Tourne on far fixed points, plus the adapted-isotopy normalisation and an
equivariance check for rotation numbers.

Boundedness and constancy near infinity cannot be decided from finitely many
samples, so verdicts are three-valued and carry the radii that were scanned.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotCommuting, NotConstant, NotFixed
from .geometry import as_complex, as_complex_array
from .isotopy import Isotopy, enlace_many, shift_class, tourne_many
from .rotation import FIXED_RESIDUAL, INTEGER_RESIDUAL, rho_lift

FixedSampler = Callable[[float, np.random.Generator], np.ndarray]

GROWTH_STEP = 0.5


def _fixed(I: Isotopy, sampler: FixedSampler, radius: float, rng) -> np.ndarray:
    pts = as_complex_array(sampler(radius, rng)) if radius > 0 else np.zeros(0, dtype=complex)
    pts = np.unique(pts)
    if pts.size:
        res = np.abs(I.end_map(pts) - pts)
        if np.any(res >= FIXED_RESIDUAL):
            bad = pts[np.argmax(res)]
            raise NotFixed(f"sampler produced {bad} with residual {res.max():.3e}")
    return pts


@dataclass(frozen=True)
class P1Report:
    max_abs: float
    argmax: tuple[complex, complex] | None
    verdict: str  # violated | consistent | inconclusive
    radii: tuple[float, ...]
    maxima: tuple[float, ...]

    @property
    def holds(self) -> bool | None:
        return {"violated": False, "consistent": True}.get(self.verdict)


def scan_p1(I: Isotopy, fixed_sampler: FixedSampler, n_pairs: int = 2000, base_radius: float = 2.0,
            doublings: int = 3, seed: int = 0) -> P1Report:
    """Largest |Enlace| over fixed pairs within radius R for R = R0 * 2^j.

    Violated if the maximum grows by more than 1/2 at every doubling; consistent
    if it does not grow at the last doubling; inconclusive otherwise.
    """
    rng = np.random.default_rng(seed)
    radii = tuple(base_radius * 2.0**j for j in range(doublings + 1))
    maxima = []
    best, best_pair = 0.0, None
    for R in radii:
        pts = _fixed(I, fixed_sampler, R, rng)
        m = pts.size
        if m < 2:
            maxima.append(0.0)
            continue
        if m * (m - 1) // 2 <= n_pairs:
            ii, jj = np.array(list(itertools.combinations(range(m), 2))).T
        else:
            ii = rng.integers(0, m, n_pairs)
            jj = (ii + rng.integers(1, m, n_pairs)) % m
        e = np.abs(enlace_many(I, pts[ii], pts[jj]))
        k = int(np.argmax(e))
        maxima.append(float(e[k]))
        if e[k] > best:
            best, best_pair = float(e[k]), (complex(pts[ii[k]]), complex(pts[jj[k]]))
    steps = np.diff(maxima)
    if np.all(steps > GROWTH_STEP):
        verdict = "violated"
    elif steps[-1] <= GROWTH_STEP and abs(maxima[-1] - maxima[-2]) <= GROWTH_STEP:
        verdict = "consistent"
    else:
        verdict = "inconclusive"
    return P1Report(best, best_pair, verdict, radii, tuple(maxima))


@dataclass(frozen=True)
class ShellValues:
    inner: float
    outer: float
    values: tuple[int, ...]

    @property
    def constant(self) -> bool:
        return len(set(self.values)) <= 1


@dataclass(frozen=True)
class P2Report:
    shells: tuple[ShellValues, ...]
    verdict: str  # constant | non-constant | inconclusive
    value: int | None

    @property
    def holds(self) -> bool | None:
        return {"non-constant": False, "constant": True}.get(self.verdict)


def scan_p2(I: Isotopy, fixed_sampler: FixedSampler, radii=(1.0, 2.0, 4.0, 8.0), seed: int = 0) -> P2Report:
    """Tourne on the fixed points of the shells R <= |z| <= 2R.

    Constant if every value in every shell is the same integer (vacuously so
    when no shell contains fixed points).
    """
    rng = np.random.default_rng(seed)
    shells = []
    for R in radii:
        pts = _fixed(I, fixed_sampler, 2 * R, rng)
        pts = pts[(np.abs(pts) >= R) & (np.abs(pts) <= 2 * R)]
        vals = tourne_many(I, pts) if pts.size else np.zeros(0)
        k = np.rint(vals)
        if np.any(np.abs(vals - k) >= INTEGER_RESIDUAL):
            raise NotFixed("Tourne is not an integer on a sampled fixed point")
        shells.append(ShellValues(R, 2 * R, tuple(int(v) for v in k)))
    seen = {v for s in shells for v in s.values}
    if len(seen) > 1:
        return P2Report(tuple(shells), "non-constant", None)
    return P2Report(tuple(shells), "constant", seen.pop() if seen else None)


def adapted_shift(I: Isotopy, fixed_sampler: FixedSampler, radii=(4.0, 8.0), seed: int = 0) -> int:
    """The common Tourne value k on far fixed points; shift_class(I, -k) is
    then adapted. Zero when no far fixed points were found."""
    rep = scan_p2(I, fixed_sampler, radii, seed)
    if rep.verdict != "constant":
        vals = sorted({v for s in rep.shells for v in s.values})
        raise NotConstant(f"Tourne takes the values {vals} on far fixed points")
    k = rep.value or 0
    check = scan_p2(shift_class(I, -k), fixed_sampler, radii, seed)
    if check.value not in (None, 0):
        raise NotConstant("normalised isotopy does not vanish on far fixed points")
    return k


@dataclass(frozen=True)
class EquivarianceReport:
    lhs: float
    rhs: float
    diff: float


def equivariance_check(I: Isotopy, g: Callable, g_preserves_orientation: bool, z, puncture, n: int = 100,
                       commute_tol: float = 1e-9) -> EquivarianceReport:
    """Compare rho(g z, g puncture) with +/- rho(z, puncture)."""
    z, p = as_complex(z), as_complex(puncture)
    probe = np.append(I.iterate(z, n), p)
    defect = np.abs(g(I.end_map(probe)) - I.end_map(g(probe)))
    if np.max(defect) >= commute_tol:
        raise NotCommuting(f"g and f fail to commute by {np.max(defect):.3e} along the orbit")
    gz, gp = complex(g(np.array([z]))[0]), complex(g(np.array([p]))[0])
    lhs = rho_lift(I, gz, gp, n)
    rhs = rho_lift(I, z, p, n) * (1 if g_preserves_orientation else -1)
    return EquivarianceReport(lhs, rhs, lhs - rhs)


def find_fixed_points(f: Callable, lower_left, upper_right, n: int = 200, tol: float = 1e-9) -> np.ndarray:
    """Fixed points found by polishing near-fixed grid nodes with Newton steps
    (finite-difference Jacobian) and keeping those with residual below ``tol``.

    Plumbing for maps without an analytic fixed set; misses isolated fixed
    points that fall between grid nodes unless the polish reaches them.
    """
    a, b = as_complex(lower_left), as_complex(upper_right)
    xs = np.linspace(a.real, b.real, n)
    ys = np.linspace(a.imag, b.imag, n)
    xx, yy = np.meshgrid(xs, ys)
    z = (xx + 1j * yy).ravel()
    res = np.abs(f(z) - z)
    h = max(b.real - a.real, b.imag - a.imag) / (n - 1)
    cand = z[res < 2 * h]
    for _ in range(20):
        if cand.size == 0:
            break
        g0 = f(cand) - cand
        e = 1e-7
        gx = (f(cand + e) - (cand + e) - g0) / e
        gy = (f(cand + 1j * e) - (cand + 1j * e) - g0) / e
        det = gx.real * gy.imag - gy.real * gx.imag
        ok = np.abs(det) > 1e-12
        dx = np.where(ok, (-g0.real * gy.imag + gy.real * g0.imag) / np.where(ok, det, 1), 0)
        dy = np.where(ok, (-gx.real * g0.imag + gx.imag * g0.real) / np.where(ok, det, 1), 0)
        cand = cand + dx + 1j * dy
    found = cand[np.abs(f(cand) - cand) < tol]
    return np.unique(np.round(found, 9))
