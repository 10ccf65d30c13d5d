"""Sampleable finite measures and Monte Carlo checks of ergodic identities.

Random numbers come from numpy's Philox generator, a counter-based bit
generator, seeded through ``SeedSequence`` so that independent substreams are
obtained by spawning rather than by reseeding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidInput, NonFiniteSample
from .geometry import TWO_PI, as_complex

SampleFn = Callable[[np.random.Generator, int], tuple[np.ndarray, np.ndarray]]


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.Philox(ss))


def substreams(seed: int, k: int) -> list[np.random.Generator]:
    """``k`` statistically independent generators derived from one seed."""
    return [make_rng(s) for s in np.random.SeedSequence(int(seed)).spawn(k)]


@dataclass(frozen=True)
class MeasureSampler:
    """A finite measure given by a sampler of its normalisation.

    ``sample(rng, n)`` returns ``n`` points (complex) and positive weights with
    expectation one, so that the integral of phi is ``total_mass * E[w phi]``.
    """

    sample: SampleFn
    total_mass: float
    description: str = ""
    atom: complex | None = None

    def __post_init__(self):
        if not (self.total_mass > 0 and math.isfinite(self.total_mass)):
            raise InvalidInput("total mass must be positive and finite")


def circle_measure(center, radius: float, mass: float | None = None) -> MeasureSampler:
    """Arc length on the circle |z - center| = radius (rescaled to ``mass``)."""
    c = as_complex(center)

    def sample(rng, n):
        u = rng.random(n)
        return c + radius * np.exp(1j * TWO_PI * u), np.ones(n)

    return MeasureSampler(sample, TWO_PI * radius if mass is None else mass, f"circle |z-{c}|={radius}")


def arc_measure(center, radius: float, arcs: Sequence[tuple[float, float]]) -> MeasureSampler:
    """Arc length on a union of disjoint arcs, given as angle intervals in turns."""
    c = as_complex(center)
    lo = np.array([a for a, _ in arcs], dtype=float)
    widths = np.array([b - a for a, b in arcs], dtype=float)
    if np.any(widths <= 0):
        raise InvalidInput("arcs must have positive width")
    cum = np.concatenate([[0.0], np.cumsum(widths)])
    total = cum[-1]

    def sample(rng, n):
        s = rng.random(n) * total
        k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(widths) - 1)
        theta = lo[k] + (s - cum[k])
        return c + radius * np.exp(1j * TWO_PI * theta), np.ones(n)

    return MeasureSampler(sample, TWO_PI * radius * total, f"{len(arcs)} arcs of |z-{c}|={radius}")


def disk_measure(center, radius: float) -> MeasureSampler:
    """Lebesgue measure on the disk |z - center| < radius."""
    c = as_complex(center)

    def sample(rng, n):
        r = radius * np.sqrt(rng.random(n))
        return c + r * np.exp(1j * TWO_PI * rng.random(n)), np.ones(n)

    return MeasureSampler(sample, math.pi * radius**2, f"disk |z-{c}|<{radius}")


def point_mass(z, mass: float = 1.0) -> MeasureSampler:
    z = as_complex(z)
    return MeasureSampler(lambda rng, n: (np.full(n, z), np.ones(n)), mass, f"point mass at {z}", atom=z)


def mixture(components: Sequence[MeasureSampler], coefficients: Sequence[float]) -> MeasureSampler:
    """The measure sum_i c_i m_i, sampled by picking a component in proportion
    to its mass."""
    if len(components) != len(coefficients) or not components:
        raise InvalidInput("need one coefficient per component")
    masses = np.array([c * m.total_mass for m, c in zip(components, coefficients)])
    if np.any(masses <= 0):
        raise InvalidInput("coefficients must be positive")
    probs = masses / masses.sum()

    def sample(rng, n):
        counts = rng.multinomial(n, probs)
        pts = np.empty(n, dtype=complex)
        w = np.empty(n)
        start = 0
        for m, k in zip(components, counts):
            if k:
                pts[start:start + k], w[start:start + k] = m.sample(rng, k)
                start += k
        perm = rng.permutation(n)
        return pts[perm], w[perm]

    return MeasureSampler(sample, float(masses.sum()), f"mixture of {len(components)}")


def _evaluate(phi, pts) -> np.ndarray:
    vals = np.asarray(phi(pts), dtype=float)
    if vals.shape != pts.shape:
        vals = np.broadcast_to(vals, pts.shape)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteSample("integrand returned a non-finite value")
    return vals


def integrate(m: MeasureSampler, phi: Callable[[np.ndarray], np.ndarray], n: int = 10_000, seed: int = 0):
    """Monte Carlo integral of ``phi`` (vectorised over complex arrays).

    Returns ``(value, stderr)``; a point mass is integrated exactly.
    """
    if m.atom is not None:
        v = _evaluate(phi, np.array([m.atom]))[0]
        return float(m.total_mass * v), 0.0
    if n < 100:
        raise InvalidInput("use at least 100 samples")
    pts, w = m.sample(make_rng(seed), n)
    vals = _evaluate(phi, pts) * w
    return float(m.total_mass * vals.mean()), float(m.total_mass * vals.std(ddof=1) / math.sqrt(n))


@dataclass(frozen=True)
class InvarianceReport:
    max_discrepancy: float
    stderr: float
    per_function: tuple[tuple[float, float], ...]

    @property
    def within_noise(self) -> bool:
        return all(abs(d) < 3 * s or abs(d) < 1e-12 for d, s in self.per_function)


def check_invariance(m: MeasureSampler, f: Callable, test_fns: Sequence[Callable], n: int = 10_000, seed: int = 0) -> InvarianceReport:
    """Compare the integrals of phi o f and phi with common random numbers."""
    if not test_fns:
        raise InvalidInput("no test functions")
    pts, w = m.sample(make_rng(seed), max(n, 100))
    images = np.asarray(f(pts), dtype=complex)
    rows = []
    for phi in test_fns:
        d = (_evaluate(phi, images) - _evaluate(phi, pts)) * w
        rows.append((float(m.total_mass * d.mean()), float(m.total_mass * d.std(ddof=1) / math.sqrt(d.size))))
    worst = max(range(len(rows)), key=lambda i: abs(rows[i][0]))
    return InvarianceReport(abs(rows[worst][0]), rows[worst][1], tuple(rows))


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    diff: float
    stderr: float
    n: int


def birkhoff_identity(I, U, puncture, m: MeasureSampler, n: int = 100_000, seed: int = 0,
                      eps_return: float = 1e-6, max_iter: int = 10_000) -> IdentityReport:
    """Monte Carlo comparison of the integral of the rotation number over the
    orbit of a free disk with the integral of the return winding over the disk.

    lhs integrand: rho(z) for points whose forward orbit enters ``U``, else 0.
    rhs integrand: alpha(z) for points of ``U``, else 0. Both use the same
    sample so the reported stderr is that of the difference.
    """
    from .returns import alpha_many, hits_disk
    from .rotation import rho_birkhoff_many

    p = as_complex(puncture)
    pts, w = m.sample(make_rng(seed), n)
    lhs_vals = np.zeros(n)
    rhs_vals = np.zeros(n)
    hit = hits_disk(I, U, pts, max_iter)
    if hit.any():
        lhs_vals[hit] = rho_birkhoff_many(I, pts[hit], p, eps_return=eps_return, max_iter=max_iter)
    inside = U.contains(pts)
    if inside.any():
        rhs_vals[inside] = alpha_many(I, U, p, pts[inside], max_iter=max_iter)
    lhs_vals *= w
    rhs_vals *= w
    for v in (lhs_vals, rhs_vals):
        if not np.all(np.isfinite(v)):
            raise NonFiniteSample("non-finite integrand value")
    lhs = m.total_mass * lhs_vals.mean()
    rhs = m.total_mass * rhs_vals.mean()
    d = lhs_vals - rhs_vals
    se = float(m.total_mass * d.std(ddof=1) / math.sqrt(n))
    return IdentityReport(float(lhs), float(rhs), float(lhs - rhs), se, n)
