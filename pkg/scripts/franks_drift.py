"""Search for fixed-point certificates on the drift map and on Ex.1."""
import argparse

from rotor.examples import build
from rotor.franks import AnnulusLift, check_franks, resimulate
from rotor.returns import verify_free

ap = argparse.ArgumentParser()
ap.add_argument("--q-max", type=int, default=50)
a = ap.parse_args()

dr = build("drift")
c, r = dr.params["disk"]
U = verify_free(dr.isotopy, c, r)
for k in range(-1, 2):
    lift = AnnulusLift.of(dr.isotopy, 0j, k)
    cert = check_franks(lift, U, q_max=a.q_max)
    if cert is None:
        print(f"drift  k={k:+d}: no certificate within {a.q_max}")
    else:
        print(f"drift  k={k:+d}: (q,p)=({cert.q},{cert.p}) (q',p')=({cert.q2},{cert.p2}) "
              f"resimulated={resimulate(lift, cert)}")

e1 = build("ex1")
U1 = verify_free(e1.isotopy, (1.5, 0), 0.1)
for k in range(4):
    cert = check_franks(AnnulusLift.of(e1.isotopy, 0j, k), U1, q_max=a.q_max)
    print(f"ex1    k={k:+d}: {'certificate' if cert else 'none'}")
