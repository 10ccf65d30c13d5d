"""Command-line front end.

    rotor tourne  --example ex1 --point 3,0
    rotor enlace  --example ex3 --point 2,0 --point2 2.125,0
    rotor rho     --example ex5 --puncture 0,0 --point 2,0 --max-iter 1000
    rotor alpha   --example ex5 --disk 2,0,0.1 --puncture 0,0 --point 2,0
    rotor franks  --example drift --puncture 0,0 --shift 0 --q-max 40
    rotor props   --example ex3
    rotor measures --example ex1 --disk 1.5,0,0.1 --puncture 0,0 --n 100000
    rotor reproduce-appendix --out results/

Exit status: 0 success, 1 numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .errors import InvalidInput, NumericalFailure, RotorError
from .examples import EXAMPLE_IDS, build, two_arc_measure
from .geometry import Polyline
from .isotopy import enlace, relative_trajectory, shift_class, tourne, trajectory
from .measures import birkhoff_identity
from .properties import adapted_shift, scan_p1, scan_p2
from .returns import return_winding, verify_free
from .rotation import rho_birkhoff

CSV_HEADER = ["case", "quantity", "args", "expected", "computed", "abs_err", "pass"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(2, f"\n{self.prog}: error: {message}\n")


def _point(text: str) -> complex:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    return complex(x, y)


def _disk(text: str) -> tuple[complex, float]:
    try:
        cx, cy, r = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected cx,cy,r but got {text!r}") from None
    return complex(cx, cy), r


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _pt(z: complex) -> str:
    return f"({fmt(z.real)},{fmt(z.imag)})"


def write_svg(path: Polyline, out: Path, center: complex = 0j) -> None:
    """One <line> per segment, view box fitted to the path and the center."""
    v = np.append(path.vertices, center)
    lo_x, hi_x, lo_y, hi_y = v.real.min(), v.real.max(), v.imag.min(), v.imag.max()
    pad = 0.05 * max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    w, h = hi_x - lo_x + 2 * pad, hi_y - lo_y + 2 * pad
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo_x - pad:.6g} {-hi_y - pad:.6g} {w:.6g} {h:.6g}">',
        f'<g stroke="black" stroke-width="{0.004 * max(w, h):.4g}">',
    ]
    for a, b in zip(path.vertices[:-1], path.vertices[1:]):
        lines.append(f'<line x1="{a.real:.9g}" y1="{-a.imag:.9g}" x2="{b.real:.9g}" y2="{-b.imag:.9g}"/>')
    lines.append("</g>")
    lines.append(f'<circle cx="{center.real:.9g}" cy="{-center.imag:.9g}" r="{0.01 * max(w, h):.4g}" fill="red"/>')
    lines.append("</svg>")
    out.write_text("\n".join(lines) + "\n")


def _emit(args, text: str, payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _system(args):
    sys_ = build(args.example)
    iso = shift_class(sys_.isotopy, args.shift) if getattr(args, "shift", 0) else sys_.isotopy
    return sys_, iso


def cmd_tourne(args) -> int:
    _, iso = _system(args)
    v = tourne(iso, args.point)
    if args.svg:
        write_svg(trajectory(iso, args.point, 0j).path, Path(args.svg))
    _emit(args, f"{v:.9f}", {"tourne": v, "point": [args.point.real, args.point.imag]})
    return 0


def cmd_enlace(args) -> int:
    _, iso = _system(args)
    v = enlace(iso, args.point, args.point2)
    if args.svg:
        write_svg(relative_trajectory(iso, args.point, args.point2).path, Path(args.svg))
    _emit(args, f"{v:.9f}", {"enlace": v})
    return 0


def cmd_rho(args) -> int:
    _, iso = _system(args)
    est = rho_birkhoff(iso, args.point, args.puncture, eps_return=args.eps_return, max_iter=args.max_iter, tol=args.tol)
    _emit(args, str(est), {
        "value": est.value, "converged": est.converged, "return_times": list(est.return_times),
        "residual": est.residual,
    })
    return 0 if est.converged else 1


def cmd_alpha(args) -> int:
    _, iso = _system(args)
    c, r = args.disk
    U = verify_free(iso, c, r)
    res = return_winding(iso, U, args.puncture, args.point, tol=max(args.tol, 1e-12), max_iter=args.max_iter)
    _emit(args, f"{res.value} tau={res.tau}", {"alpha": res.value, "tau": res.tau, "raw": res.raw})
    return 0


def cmd_franks(args) -> int:
    from .franks import AnnulusLift, check_franks, resimulate

    sys_ = build(args.example)
    if args.disk is not None:
        c, r = args.disk
    elif "disk" in sys_.params:
        c, r = sys_.params["disk"]
    else:
        raise InvalidInput("this example has no default disk; pass --disk")
    U = verify_free(sys_.isotopy, c, r)
    lift = AnnulusLift.of(sys_.isotopy, args.puncture, args.shift)
    cert = check_franks(lift, U, q_max=args.q_max)
    if cert is None:
        _emit(args, "none", {"certificate": None})
        return 0
    ok = resimulate(lift, cert)
    _emit(args, f"certificate q={cert.q} p={cert.p} q'={cert.q2} p'={cert.p2} resimulated={str(ok).lower()}",
          {"certificate": {"q": cert.q, "p": cert.p, "q2": cert.q2, "p2": cert.p2}, "resimulated": ok})
    return 0 if ok else 1


def cmd_props(args) -> int:
    sys_ = build(args.example)
    p1 = scan_p1(sys_.isotopy, sys_.fixed_sampler, seed=args.seed)
    p2 = scan_p2(sys_.isotopy, sys_.fixed_sampler, seed=args.seed)
    try:
        k = adapted_shift(sys_.isotopy, sys_.fixed_sampler, seed=args.seed)
    except NumericalFailure:
        k = None
    text = (f"P1 {p1.verdict} max={fmt(p1.max_abs)} maxima={','.join(fmt(m) for m in p1.maxima)}\n"
            f"P2 {p2.verdict}\nadapted_shift {'none' if k is None else k}")
    _emit(args, text, {"p1": p1.verdict, "p1_max": p1.max_abs, "p1_maxima": list(p1.maxima),
                       "p2": p2.verdict, "adapted_shift": k})
    return 0


def cmd_measures(args) -> int:
    _, iso = _system(args)
    c, r = args.disk
    U = verify_free(iso, c, r)
    m = two_arc_measure(abs(c), r)
    rep = birkhoff_identity(iso, U, args.puncture, m, n=args.n, seed=args.seed)
    ok = abs(rep.diff) < 3 * rep.stderr
    _emit(args, f"lhs={fmt(rep.lhs)} rhs={fmt(rep.rhs)} diff={fmt(rep.diff)} stderr={fmt(rep.stderr)} "
          f"{'within' if ok else 'outside'} 3 stderr",
          {"lhs": rep.lhs, "rhs": rep.rhs, "diff": rep.diff, "stderr": rep.stderr, "within": ok})
    return 0


def appendix_rows(tol: float) -> list[list[str]]:
    rows = []
    for ex in EXAMPLE_IDS:
        sys_ = build(ex)
        for row in sys_.oracle_table:
            a = row.args
            if row.quantity == "tourne":
                got = tourne(sys_.isotopy, a["z"])
            elif row.quantity == "enlace":
                got = enlace(sys_.isotopy, a["z"], a["z2"])
            else:
                got = rho_birkhoff(sys_.isotopy, a["z"], a["puncture"], tol=tol).value
            err = abs(got - row.expected)
            arg_text = ";".join(f"{k}={_pt(complex(*v))}" for k, v in a.items())
            rows.append([row.case, row.quantity, arg_text, fmt(row.expected), fmt(got), fmt(err),
                         "true" if err < max(row.tol, tol) else "false"])
    rows.sort(key=lambda r: r[0])
    return rows


def cmd_reproduce(args) -> int:
    rows = appendix_rows(args.tol)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    text = buf.getvalue()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "appendix.csv").write_text(text)
    n_fail = sum(r[-1] == "false" for r in rows)
    if args.json:
        print(json.dumps([dict(zip(CSV_HEADER, r)) for r in rows]))
    elif not args.out:
        sys.stdout.write(text)
    else:
        print(f"{len(rows)} rows, {n_fail} failing -> {Path(args.out) / 'appendix.csv'}")
    return 1 if n_fail else 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--example", default="ex1", help="ex1..ex6, ex5bis, drift, mirror")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="rotor", description="Winding, linking and rotation invariants of planar isotopies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tourne", parents=[common], help="winding of a trajectory around the origin")
    s.add_argument("--point", type=_point, required=True)
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--svg", default=None)
    s.set_defaults(func=cmd_tourne)

    s = sub.add_parser("enlace", parents=[common], help="linking number of two trajectories")
    s.add_argument("--point", type=_point, required=True)
    s.add_argument("--point2", type=_point, required=True)
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--svg", default=None)
    s.set_defaults(func=cmd_enlace)

    s = sub.add_parser("rho", parents=[common], help="rotation number around a fixed point")
    s.add_argument("--point", type=_point, required=True)
    s.add_argument("--puncture", type=_point, required=True)
    s.add_argument("--max-iter", type=int, default=10_000)
    s.add_argument("--eps-return", type=float, default=1e-6)
    s.add_argument("--shift", type=int, default=0)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("alpha", parents=[common], help="return winding of a free disk")
    s.add_argument("--disk", type=_disk, required=True)
    s.add_argument("--puncture", type=_point, required=True)
    s.add_argument("--point", type=_point, required=True)
    s.add_argument("--max-iter", type=int, default=10**6)
    s.add_argument("--shift", type=int, default=0)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("franks", parents=[common], help="search for a fixed-point certificate of a lift")
    s.add_argument("--disk", type=_disk, default=None)
    s.add_argument("--puncture", type=_point, default=0j)
    s.add_argument("--shift", type=int, default=0)
    s.add_argument("--q-max", type=int, default=50)
    s.set_defaults(func=cmd_franks)

    s = sub.add_parser("props", parents=[common], help="scan linking boundedness and far-field Tourne")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("measures", parents=[common], help="Monte Carlo check of the return-winding identity")
    s.add_argument("--disk", type=_disk, required=True)
    s.add_argument("--puncture", type=_point, default=0j)
    s.add_argument("--n", type=int, default=100_000)
    s.add_argument("--shift", type=int, default=0)
    s.set_defaults(func=cmd_measures)

    s = sub.add_parser("reproduce-appendix", parents=[common], help="CSV of every oracle row")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalFailure as exc:
        print(f"rotor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InvalidInput, RotorError) as exc:
        print(f"rotor: {type(exc).__name__}: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
