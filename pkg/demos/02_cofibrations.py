"""Which subgraph inclusions are cofibrations, and why the others fail."""

from pathcof import check_cofibration, codiagonal_factorization, gen_cycle, gen_J, gen_mn_cycle, is_homology_iso

J = gen_J()
v = check_cofibration(J, [-2, 2])
print("J with its two ends:", bool(v))
print("  heights   ", v.decomposition.heights)
print("  projection", v.decomposition.projection)

C = gen_mn_cycle(3, 1)
for A in ([2, 3], [0, 1]):
    v = check_cofibration(C, A)
    print(f"C_(3,1) with A={A}:", v.failure.kind, v.failure.witness)

fac = codiagonal_factorization(gen_cycle(3))
print("\nC_3 x dJ -> C_3 x J is a cofibration:", bool(check_cofibration(fac.cylinder, fac.ends.vertices)))
print("C_3 x J -> C_3 is a homology iso up to degree 4:", is_homology_iso(fac.projection, 4))
