#!/usr/bin/env python3
"""Record minima of n <n a> <n b> for badly approximable pairs.

Scans n up to 10^6 with a fixed-point prefilter and exact refinement of
the candidates.  For quadratic irrationals the records decay slowly and
stay strictly positive at every tested scale; a rational input collapses
to zero immediately.
"""

from fractions import Fraction

from sadiclab import littlewood_scan
from sadiclab.surd import QuadraticSurd

pairs = [
    ("sqrt2, sqrt3", QuadraticSurd.sqrt(2), QuadraticSurd.sqrt(3)),
    ("sqrt2, sqrt2", QuadraticSurd.sqrt(2), QuadraticSurd.sqrt(2)),
    ("phi, sqrt2", QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 5),
     QuadraticSurd.sqrt(2)),
]

for label, a, b in pairs:
    res = littlewood_scan(a, b, 10 ** 6)
    print(f"== {label}, n <= 1e6: min = {res.minimum:.10f} at n = {res.argmin}")
    print("   record trace (n, value):")
    for n, v in res.records[-6:]:
        print(f"     {n:>8d}  {v:.10f}")

res = littlewood_scan(Fraction(1, 2), QuadraticSurd.sqrt(3), 100)
print(f"\nrational alpha = 1/2: minimum {res.minimum} at n = {res.argmin} "
      "(distance to the integers vanishes exactly)")
