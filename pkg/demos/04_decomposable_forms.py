#!/usr/bin/env python3
"""Decomposable forms: value spectra, discreteness and rationality.

The dichotomy on display: a form that is a scalar multiple of an integral
form takes discrete values; x(sqrt2 x - y) is not, and its values pile up
at 1/(2 sqrt2) along the continued-fraction convergents of sqrt2.  The
shipped counterexample probe x^2(phi x - y) shows why independent factors
are essential: it stays discrete despite the irrational coefficient.
"""

import math

from sadiclab import (
    HeightWindow,
    builtin_probes,
    create_field,
    discreteness_report,
    field_norm,
    make_form,
    norm_form,
    rationality_reconstruct,
    value_spectrum,
)
from sadiclab.numberfield import archimedean_places
from sadiclab.surd import QuadraticSurd

field = create_field([0, 1])
real = archimedean_places(field)
s2 = QuadraticSurd.sqrt(2)

# norm forms expand exactly and evaluate to the field norm
for poly, label in [([-2, 0, 1], "Q(sqrt2)"), ([-1, -1, 1], "Q(phi)"),
                    ([1, 0, 1], "Q(i)")]:
    target = create_field(poly)
    form = norm_form(target)
    value = form.expansions[0]
    check = field_norm(target.element([3, 2]))
    print(f"norm form of {label}: coefficients {[str(c) for c in value]}, "
          f"value at (3,2) = {form.evaluate([3, 2])[0]} = N = {check}")

print()
sqrt2_form = make_form(field, real, [[(1, 0), (s2, -1)]])
spec = value_spectrum(sqrt2_form, HeightWindow(100), magnitude_cap=0.9)
print("small values of x(sqrt2 x - y) up to H=100:")
for entry in spec.entries[:8]:
    print(f"   {entry.magnitude:.10f}  at {entry.witness}")
print(f"   ... clustering near 1/(2 sqrt2) = {1 / (2 * math.sqrt(2)):.10f}")

rep = discreteness_report(sqrt2_form, [10, 100, 1000, 10000])
print(f"\ngrowing-window verdict: {rep.verdict}")
print(f"   cluster center {rep.cluster.center:.10f} with "
      f"{len(rep.cluster.members)} members; counts per window "
      f"{rep.cluster.per_window_counts}")

recon = rationality_reconstruct(sqrt2_form)
print(f"   rationality: {recon.status} ({recon.evidence})")

pell = make_form(field, real, [[(1, s2), (1, -s2)]])
print(f"\nx^2 - 2y^2: {discreteness_report(pell, [10, 100, 1000]).verdict}; "
      f"reconstruction {rationality_reconstruct(pell).status} with "
      f"g={rationality_reconstruct(pell).g}")

probe = builtin_probes()["dependent-factors"]
probe_rep = discreteness_report(probe, [10, 100, 1000])
print(f"\nprobe x^2(phi x - y) [{probe.label}]:")
print(f"   {probe_rep.verdict}; min nonzero magnitude "
      f"{probe_rep.min_nonzero:.7f} = 2 - phi")
