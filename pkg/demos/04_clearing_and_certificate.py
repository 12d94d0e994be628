# Clearing every vertical part, then replaying the certificate
# ------------------------------------------------------------
# For the first reducible place, one witness per component is combined
# with positive integer weights from the kernel solver. What is left at
# that place is a rational multiple of the fiber, removed by scaling.
# Repeating over all places leaves two disjoint horizontal divisors.

import json

from fibral import cycle_fiber, prove_theorem, replay_certificate
from fibral.fibers import surface_from_fibers

s = surface_from_fibers("two-places", [cycle_fiber(2, "a"), cycle_fiber(3, "b")])
cert = prove_theorem(s)
print("final degree:", cert.degree)
print("D1 support:", sorted(cert.final_witness.d1.support))
print("D2 support:", sorted(cert.final_witness.d2.support))

for step in cert.log:
    if step.op == "kernel":
        print(step.target, "weights", step.outputs["integer_weights"])
    if step.op == "remove_fiber":
        print(step.target, "removed", step.outputs["fiber_multiple"], "* fiber, d =", step.outputs["d"])

doc = json.loads(cert.to_json(s))
print("replay:", replay_certificate(s, doc).ok)
doc["log"][0]["outputs"]["witness"]["degree"] = "7"
print("tampered replay:", replay_certificate(s, doc).divergence)
