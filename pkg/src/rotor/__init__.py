"""Winding, linking and rotation invariants of planar homeomorphisms given by
isotopies from the identity."""
from .errors import *  # noqa: F401,F403
from .geometry import Point, Polyline, WindingValue, refine, winding
from .isotopy import Isotopy, enlace, orbit_relative_arc, shift_class, tourne, trajectory
from .rotation import LiftedPoint, RotationEstimate, lift_step, rho_birkhoff, rho_fixed, rho_lift, rho_relative
from .returns import FreeDisk, ReturnData, alpha, alpha_tau_range, first_return, verify_free
from .franks import AnnulusLift, FranksCertificate, check_franks
from .measures import MeasureSampler, birkhoff_identity, check_invariance, integrate
from .properties import adapted_shift, equivariance_check, scan_p1, scan_p2
from .examples import ExampleSystem, build

__version__ = "0.1.0"
