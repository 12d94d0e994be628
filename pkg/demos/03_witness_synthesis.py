# Witnesses for one choice of component per reducible fiber
# ----------------------------------------------------------
# D1 meets only the chosen component at each reducible fiber, D2 is a
# multiple of the ample profile, and each vertical part E_v is solved for
# so that every component pairs to zero with the whole divisor.

import json

from fibral import cycle_fiber, d4_fiber, irreducible_fiber, synthesize_witness, verify_witness
from fibral.fibers import surface_from_fibers

s = surface_from_fibers("demo", [cycle_fiber(2, "p"), d4_fiber("q"), irreducible_fiber("r", 2)])
print("reducible places:", s.reducible_places, "ample degree:", s.ample.generic_degree)

w = synthesize_witness(s, {"p": "C1", "q": "C0"})
print(json.dumps(w.data_dict(s)["vertical"], indent=2))

report = verify_witness(s, w)
print(report.format())
