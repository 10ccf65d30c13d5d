"""Recompute every example's reference table and write out/appendix.csv."""
import argparse
import sys

from rotor.cli import run

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out")
    ap.add_argument("--tol", default="1e-9")
    a = ap.parse_args()
    sys.exit(run(["reproduce-appendix", "--out", a.out, "--tol", a.tol]))
