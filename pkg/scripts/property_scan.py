"""Boundedness of Enlace on fixed pairs and far-field constancy of Tourne for
every example with a known fixed set."""
from rotor.examples import EXAMPLE_IDS, build
from rotor.properties import scan_p1, scan_p2

print(f"{'system':>8} {'P1':>13} {'max|E|':>8} {'maxima by radius':<34} {'P2':>13} value")
for ex in EXAMPLE_IDS:
    s = build(ex)
    if s.fixed_sampler is None:
        continue
    p1 = scan_p1(s.isotopy, s.fixed_sampler)
    p2 = scan_p2(s.isotopy, s.fixed_sampler)
    maxima = " ".join(f"{m:.3g}" for m in p1.maxima)
    print(f"{ex:>8} {p1.verdict:>13} {p1.max_abs:8.3g} {maxima:<34} {p2.verdict:>13} {p2.value}")
