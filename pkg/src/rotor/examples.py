"""Built-in example homeomorphisms with closed-form invariants.

Each system bundles an isotopy, a sampler of known fixed points, invariant
measures and a table of exactly known values used as oracles. Notation:
``z_n`` is the integer point n on the real axis and ``B_n`` the closed disk
of radius 1/4 around it.

Ids: ex1, ex2, ex3, ex4, ex5, ex5bis, ex6 and two synthetic systems, ``drift``
(an annulus map with drift of both signs, for the Franks checker) and
``mirror`` (a map commuting with an orientation-reversing reflection).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidParams
from .geometry import TWO_PI, as_complex
from .isotopy import Isotopy
from .measures import MeasureSampler, arc_measure, circle_measure, disk_measure, mixture

BALL_RADIUS = 0.25
BUMP_EPS = 1.0 / 32.0

EXAMPLE_IDS = ("ex1", "ex2", "ex3", "ex4", "ex5", "ex5bis", "ex6")
SYNTHETIC_IDS = ("drift", "mirror")

FixedSampler = Callable[[float, np.random.Generator], np.ndarray]


def _h(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)
    a, b = _h(x), _h(1.0 - x)
    return a / (a + b)


def plateau_bump(r, eps: float = BUMP_EPS):
    """Smooth bump on [0, 1/4]: zero on [0, eps] and [1/4 - eps, 1/4], one on a
    plateau around 1/8."""
    w = 0.125 - 2 * eps
    return smooth_step((np.asarray(r) - eps) / w) * smooth_step((BALL_RADIUS - eps - np.asarray(r)) / w)


def decay_profile(r, eps: float = BUMP_EPS):
    """Smooth profile on [0, 1/4]: one on [0, eps], zero on [1/4 - eps, 1/4]."""
    return 1.0 - smooth_step((np.asarray(r) - eps) / (BALL_RADIUS - 2 * eps))


@dataclass(frozen=True)
class OracleRow:
    case: str
    quantity: str  # enlace | tourne | rho
    args: dict
    expected: float
    tol: float = 1e-9
    note: str = ""


@dataclass
class ExampleSystem:
    id: str
    params: dict
    isotopy: Isotopy
    fixed_sampler: FixedSampler
    safe_radius: float
    measures: dict[str, MeasureSampler] = field(default_factory=dict)
    oracle_table: list[OracleRow] = field(default_factory=list)
    description: str = ""

    @property
    def f(self):
        return self.isotopy.end_map

    def fixed_points(self, radius: float, seed: int = 0) -> np.ndarray:
        return self.fixed_sampler(radius, np.random.default_rng(seed))


# -- rotation-type maps ------------------------------------------------------


def _polar_flow(angle_turns: Callable, radial: Callable | None = None):
    """Flow ``r e^{2 pi i theta} -> R_t(r) e^{2 pi i (theta + t a(r))}``.

    ``radial(r)`` is the time-one radius; the isotopy interpolates linearly.
    """

    def flow(t, z):
        r = np.abs(z)
        turn = np.exp(1j * TWO_PI * t * angle_turns(r))
        if radial is None:
            return z * turn
        with np.errstate(invalid="ignore", divide="ignore"):
            scale = np.where(r > 0, ((1 - t) * r + t * radial(r)) / r, 1.0)
        return z * scale * turn

    return flow


def _ball_flow(amplitude: Callable, profile: Callable, radial: Callable | None = None):
    """Flow rotating each ball B_n about z_n by ``t * amplitude(n) * profile(r)``
    turns (and moving radii by ``radial`` when given); identity elsewhere."""

    def flow(t, z):
        n = np.rint(z.real)
        w = z - n
        r = np.abs(w)
        inside = r < BALL_RADIUS
        out = z.copy()
        if not np.any(inside):
            return out
        ti, wi, ri, ni = t[inside], w[inside], r[inside], n[inside]
        rot = np.exp(1j * TWO_PI * ti * amplitude(ni) * profile(ri))
        if radial is None:
            out[inside] = ni + wi * rot
        else:
            with np.errstate(invalid="ignore", divide="ignore"):
                scale = np.where(ri > 0, ((1 - ti) * ri + ti * radial(ri)) / ri, 1.0)
            out[inside] = ni + wi * scale * rot
        return out

    return flow


def _end_of(flow):
    return lambda z: flow(np.ones(np.shape(z)), np.asarray(z, dtype=complex))


def _random_on_circles(radii, per_circle, rng, center=0j):
    radii = np.repeat(np.asarray(radii, dtype=float), per_circle)
    phases = rng.uniform(0.0, 1.0, radii.size)
    return center + radii * np.exp(1j * TWO_PI * phases)


# -- Ex.1: f(r e^{2 pi i theta}) = r e^{2 pi i (theta + r)} --------------------


def _build_ex1(params):
    flow = _polar_flow(lambda r: r)
    iso = Isotopy(flow, end=_end_of(flow), inverse=lambda z: z * np.exp(-1j * TWO_PI * np.abs(z)), name="ex1")

    def fixed(radius, rng):
        ks = np.arange(1, int(math.floor(radius)) + 1)
        pts = [np.zeros(1, dtype=complex), ks.astype(complex), _random_on_circles(ks, 3, rng)]
        return np.concatenate(pts)

    oracle = []
    for n in range(1, 6):
        oracle.append(OracleRow("ex1", "enlace", {"z": (n, 0), "z2": (0, 0)}, float(n)))
        oracle.append(OracleRow("ex1", "tourne", {"z": (n, 0)}, float(n)))
    oracle.append(OracleRow("ex1", "rho", {"z": (1.5, 0), "puncture": (0, 0)}, 1.5, note="half-turn circle"))
    measures = {"circle1.5": circle_measure(0j, 1.5)}
    return ExampleSystem("ex1", params, iso, fixed, 0.0, measures, oracle, "neither property")


# -- Ex.2: angle term sin(pi r + pi/2) --------------------------------------


def ex2_turns(r):
    return np.sin(np.pi * np.asarray(r) + np.pi / 2)


def _build_ex2(params):
    flow = _polar_flow(ex2_turns)
    iso = Isotopy(flow, end=_end_of(flow), inverse=lambda z: z * np.exp(-1j * TWO_PI * ex2_turns(np.abs(z))), name="ex2")

    def fixed(radius, rng):
        # the angle term is an integer exactly on the half-integer radii
        ks = np.arange(1, int(math.floor(2 * radius)) + 1) / 2.0
        return np.concatenate([np.zeros(1, dtype=complex), ks.astype(complex), _random_on_circles(ks, 2, rng)])

    oracle = []
    for n in range(1, 7):
        oracle.append(OracleRow("ex2", "tourne", {"z": (n, 0)}, float((-1) ** n)))
    for n in range(1, 4):
        oracle.append(OracleRow("ex2", "enlace", {"z": (n, 0), "z2": (0, 0)}, float((-1) ** n)))
    measures = {"circle1.5": circle_measure(0j, 1.5)}
    return ExampleSystem("ex2", params, iso, fixed, 0.0, measures, oracle, "bounded linking, Tourne not constant at infinity")


# -- Ex.3: B_n twisted by n * bump(r) ----------------------------------------


def _check_eps(eps):
    if not (0 < eps < 1.0 / 16.0):
        raise InvalidParams("bump plateau parameter eps must lie in (0, 1/16)")


def _ball_fixed_sampler(amplitude_is_integer_on_plateau: bool, outer_fixed: bool = True):
    def fixed(radius, rng):
        ns = np.arange(-int(math.floor(radius)), int(math.floor(radius)) + 1)
        pts = [ns.astype(complex)]
        if amplitude_is_integer_on_plateau:
            pts.append(ns + 0.125)
            pts.append(ns + _random_on_circles(np.full(ns.size, 0.125), 1, rng))
        if outer_fixed:
            # identity annulus just inside the ball boundary, and points between balls
            pts.append(ns + _random_on_circles(rng.uniform(0.225, 0.245, ns.size), 1, rng))
            pts.append(ns + 0.5 + 1j * rng.uniform(-0.4, 0.4, ns.size))
        out = np.concatenate(pts)
        return out[np.abs(out) <= radius]

    return fixed


def _build_ex3(params):
    eps = params.setdefault("eps", BUMP_EPS)
    _check_eps(eps)
    flow = _ball_flow(lambda n: n, lambda r: plateau_bump(r, eps))
    iso = Isotopy(flow, end=_end_of(flow), name="ex3")
    oracle = []
    for n in range(-3, 4):
        oracle.append(OracleRow("ex3", "enlace", {"z": (n, 0), "z2": (n + 0.125, 0)}, float(n)))
    for z in [(2.5, 0.0), (3.125, 0.0), (-2.0, 0.0), (1.0, 0.0), (0.0, 4.0)]:
        oracle.append(OracleRow("ex3", "tourne", {"z": z}, 0.0))
    measures = {"circle-z2": circle_measure(2 + 0j, 0.2)}
    return ExampleSystem("ex3", params, iso, _ball_fixed_sampler(True), 0.0, measures, oracle, "Tourne constant, linking unbounded")


# -- Ex.4: B_n twisted by theta0 * decay(r) ----------------------------------


def ex4_alpha(r, theta0, eps=BUMP_EPS):
    return theta0 * decay_profile(r, eps)


def _build_ex4(params):
    theta0 = float(params.setdefault("theta0", 0.3))
    eps = params.setdefault("eps", BUMP_EPS)
    _check_eps(eps)
    if float(theta0).is_integer():
        raise InvalidParams("theta0 must not be an integer")
    flow = _ball_flow(lambda n: theta0, lambda r: decay_profile(r, eps))
    iso = Isotopy(flow, end=_end_of(flow), name="ex4")
    levels = [k for k in range(1, int(math.floor(abs(theta0))) + 1)]

    def fixed(radius, rng):
        base = _ball_fixed_sampler(False)(radius, rng)
        extra = []
        if levels:
            ns = np.arange(-int(math.floor(radius)), int(math.floor(radius)) + 1)
            for k in levels:
                r_k = _invert_decreasing(lambda r: abs(theta0) * decay_profile(r, eps), k, eps, BALL_RADIUS - eps)
                extra.append(ns + _random_on_circles(np.full(ns.size, r_k), 1, rng))
        out = np.concatenate([base] + extra)
        return out[np.abs(out) <= radius]

    oracle = []
    for n in (-1, 0, 2):
        oracle.append(OracleRow("ex4", "enlace", {"z": (n + 0.02, 0), "z2": (n, 0)}, theta0, note="both in B_n, max radius in the plateau"))
        oracle.append(OracleRow("ex4", "enlace", {"z": (n + 0.23, 0), "z2": (n, 0.0)}, 0.0))
    oracle.append(OracleRow("ex4", "enlace", {"z": (2.0, 0), "z2": (0.23, 0.0)}, 0.0, note="fixed pair in different balls"))
    oracle.append(OracleRow("ex4", "tourne", {"z": (3.5, 0)}, 0.0))
    measures = {f"ball{n}": disk_measure(complex(n), BALL_RADIUS) for n in (0, 1, 2)}
    return ExampleSystem("ex4", params, iso, fixed, 0.0, measures, oracle, "both properties, no C1 extension")


def _invert_decreasing(g, level, lo, hi, iters=80):
    """Solve g(r) = level for a decreasing g on [lo, hi] by bisection."""
    a, b = lo, hi
    for _ in range(iters):
        m = 0.5 * (a + b)
        if g(m) > level:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


# -- Ex.5 / Ex.5bis: radial pushes with a half-turn offset --------------------


def ex5_radial(r, c):
    return r + c * np.sin(np.pi * r) ** 2


def _check_c5(c):
    if not (0 <= c < 1 / math.pi):
        raise InvalidParams("radial stiffness c must lie in [0, 1/pi) for monotonicity")


def _build_ex5(params):
    c = float(params.setdefault("c", 0.1))
    _check_c5(c)
    flow = _polar_flow(lambda r: r + 0.5, lambda r: ex5_radial(r, c))
    iso = Isotopy(flow, end=_end_of(flow), name="ex5")

    def fixed(radius, rng):
        return np.zeros(1, dtype=complex)

    oracle = [OracleRow("ex5", "rho", {"z": (m, 0), "puncture": (0, 0)}, m + 0.5) for m in range(1, 5)]
    n_terms = int(params.setdefault("n_terms", 12))
    weights = [2.0**-n for n in range(1, n_terms + 1)]
    measures = {f"circle{m}": circle_measure(0j, float(m)) for m in range(1, 5)}
    measures["weighted"] = mixture([circle_measure(0j, float(n)) for n in range(1, n_terms + 1)], weights)
    return ExampleSystem("ex5", params, iso, fixed, 0.0, measures, oracle, "rotation number unbounded at infinity")


def ex5bis_radial(r, c):
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        s = np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), np.inf)
    out = np.where(np.isfinite(s), 1.0 / ex5_radial(s, c), 0.0)
    return out


def ex5bis_turns(r):
    r = np.asarray(r, dtype=float)
    return np.where(r > 0, 1.0 / np.where(r > 0, r, 1.0), 0.0) + 0.5


def _build_ex5bis(params):
    c = float(params.setdefault("c", 0.1))
    _check_c5(c)
    flow = _polar_flow(ex5bis_turns, lambda r: ex5bis_radial(r, c))
    iso = Isotopy(flow, end=_end_of(flow), name="ex5bis")

    def fixed(radius, rng):
        return np.zeros(1, dtype=complex)

    oracle = [OracleRow("ex5bis", "rho", {"z": (1.0 / n, 0), "puncture": (0, 0)}, n + 0.5) for n in range(1, 5)]
    measures = {f"circle1/{n}": circle_measure(0j, 1.0 / n) for n in range(1, 5)}
    return ExampleSystem("ex5bis", params, iso, fixed, 0.0, measures, oracle, "rotation number unbounded near the fixed point")


# -- Ex.6: B_n twisted by (n + 1/2) * bump(r), radii attracted to 1/8 ----------


def ex6_radial(r, c):
    return r + c * r * (0.125 - r) * (0.25 - r)


def _build_ex6(params):
    c = float(params.setdefault("c", 20.0))
    eps = params.setdefault("eps", BUMP_EPS)
    _check_eps(eps)
    if not (0 < c < 64):
        raise InvalidParams("radial stiffness c must lie in (0, 64) for monotone attraction to 1/8")
    flow = _ball_flow(lambda n: n + 0.5, lambda r: plateau_bump(r, eps), lambda r: ex6_radial(r, c))
    iso = Isotopy(flow, end=_end_of(flow), name="ex6")

    def fixed(radius, rng):
        ns = np.arange(-int(math.floor(radius)), int(math.floor(radius)) + 1)
        out = np.concatenate([ns.astype(complex), ns + 0.5 + 1j * rng.uniform(-0.4, 0.4, ns.size)])
        return out[np.abs(out) <= radius]

    oracle = [OracleRow("ex6", "rho", {"z": (n + 0.125, 0), "puncture": (n, 0)}, n + 0.5) for n in range(1, 5)]
    oracle += [OracleRow("ex6", "enlace", {"z": (n, 0), "z2": (n + 1, 0)}, 0.0) for n in range(0, 3)]
    measures = {f"circle-z{n}": circle_measure(complex(n), 0.125) for n in range(1, 5)}
    return ExampleSystem("ex6", params, iso, fixed, 0.0, measures, oracle, "rotation number bounded per fixed point only")


# -- synthetic: annulus map with drift of both signs ---------------------------


def _build_drift(params):
    """Strip coordinates (x, y) with z = exp(2 pi (y + i x)). First a vertical
    shear y += h sin(2 pi x), then a horizontal drift x += -s tanh(y / a): drift
    +s below the circle |z| = 1 and -s above it."""
    s = float(params.setdefault("drift", 0.3))
    h = float(params.setdefault("h", 0.1))
    a = float(params.setdefault("a", 0.05))

    def flow(t, z):
        first = np.clip(2 * t, 0.0, 1.0)
        second = np.clip(2 * t - 1, 0.0, 1.0)
        x = np.angle(z) / TWO_PI
        w = z * np.exp(TWO_PI * first * h * np.sin(TWO_PI * x))
        with np.errstate(divide="ignore"):
            y = np.log(np.abs(w)) / TWO_PI
        return w * np.exp(1j * TWO_PI * second * (-s * np.tanh(y / a)))

    iso = Isotopy(flow, end=_end_of(flow), name="drift")
    disk_center = complex(np.exp(1j * TWO_PI * 0.25))
    params.setdefault("disk", (disk_center, 0.3))
    return ExampleSystem("drift", params, iso, lambda radius, rng: np.zeros(1, dtype=complex), 0.0,
                         {}, [], "two-sided drift around the origin")


# -- synthetic: twists of opposite sense swapped by x -> -x --------------------


def _build_mirror(params):
    beta = float(params.setdefault("beta", 0.3))
    eps = params.setdefault("eps", BUMP_EPS)

    def flow(t, z):
        out = z.copy()
        for c, sign in ((-1.0, 1.0), (1.0, -1.0)):
            w = z - c
            r = np.abs(w)
            inside = r < BALL_RADIUS
            rot = np.exp(1j * TWO_PI * t[inside] * sign * beta * decay_profile(r[inside], eps))
            out[inside] = c + w[inside] * rot
        return out

    iso = Isotopy(flow, end=_end_of(flow), name="mirror")

    def fixed(radius, rng):
        pts = np.array([-1.0, 1.0, 0.0, 2.0, -2.0], dtype=complex)
        return pts[np.abs(pts) <= radius]

    return ExampleSystem("mirror", params, iso, fixed, 0.0, {}, [], "commutes with (x, y) -> (-x, y)")


_BUILDERS = {
    "ex1": _build_ex1,
    "ex2": _build_ex2,
    "ex3": _build_ex3,
    "ex4": _build_ex4,
    "ex5": _build_ex5,
    "ex5bis": _build_ex5bis,
    "ex6": _build_ex6,
    "drift": _build_drift,
    "mirror": _build_mirror,
}


def build(example_id: str, **params) -> ExampleSystem:
    """Construct a built-in system by id (see module docstring)."""
    key = example_id.lower().replace(".", "").replace("_", "")
    if key not in _BUILDERS:
        raise InvalidParams(f"unknown example {example_id!r}; choose from {', '.join(_BUILDERS)}")
    return _BUILDERS[key](dict(params))


def half_turn_arcs(center, radius: float, disk_radius: float) -> list[tuple[float, float]]:
    """Arcs (in turns) of the circle |z - center| = radius lying in the disk of
    radius ``disk_radius`` centred on the circle at angle 0, and in its image
    under the half turn."""
    half = 2.0 * math.asin(disk_radius / (2.0 * radius)) / TWO_PI
    return [(-half, half), (0.5 - half, 0.5 + half)]


def two_arc_measure(radius: float, disk_radius: float) -> MeasureSampler:
    """Normalised arc length on C_radius restricted to the disk centred at
    (radius, 0) and its antipodal copy."""
    return arc_measure(0j, radius, half_turn_arcs(0j, radius, disk_radius))


def as_point(z) -> complex:
    return as_complex(z)
