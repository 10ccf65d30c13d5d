"""Monte Carlo check that the integral of rho over points whose orbit meets U
equals the integral of the return winding over U, for Ex.1 and Ex.5."""
import argparse
import math

from rotor.examples import build, two_arc_measure
from rotor.measures import birkhoff_identity
from rotor.returns import verify_free

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, default=100_000)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--disk-radius", type=float, default=0.1)
a = ap.parse_args()

cases = [("ex1", 1.5)] + [("ex5", float(m)) for m in (1, 2, 3)]
print(f"{'system':>6} {'R':>4} {'lhs':>10} {'rhs':>10} {'diff':>10} {'stderr':>9} {'nu(U)':>9}")
for name, R in cases:
    s = build(name)
    U = verify_free(s.isotopy, (R, 0), a.disk_radius)
    rep = birkhoff_identity(s.isotopy, U, 0j, two_arc_measure(R, a.disk_radius), n=a.n, seed=a.seed)
    nu = R * 4 * math.asin(a.disk_radius / (2 * R))
    print(f"{name:>6} {R:4.1f} {rep.lhs:10.6f} {rep.rhs:10.6f} {rep.diff:10.2e} {rep.stderr:9.2e} {nu:9.6f}")
