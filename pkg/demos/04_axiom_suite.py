"""Run the seeded axiom suite, then the same suite with a deliberate defect.

The defect adds an edge leaving A before taking pushouts, so the pushout
leg stops being a cofibration and the suite must say so.
"""

from fractions import Fraction

from pathcof import InstanceSpec, axiom_suite

spec = InstanceSpec(seed=2024, vertex_budget=6, edge_density=Fraction(1, 4), max_degree=4)
for corrupt in (False, True):
    rep = axiom_suite(spec, instances=10, corrupt=corrupt)
    print(f"corrupt={corrupt}: ok={rep.ok}")
    for ax in rep.passed:
        print(f"  {ax:<16} {rep.passed[ax]:>3} passed {rep.failed[ax]:>3} failed")
