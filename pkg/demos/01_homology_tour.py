"""Path homology of a few small digraphs, printed as tables.

A directed triangle keeps its hole; the commuting triangle and square fill
theirs with a 2-dimensional Ω-chain; the suspension of the alternating
square has a single class in degree 2.
"""

from pathcof import gen_cycle, gen_line, gen_mn_cycle, gen_punctured_cube, gen_suspension_alt4, homology

for name, X, K in [
    ("line I_2", gen_line(2), 4),
    ("directed triangle", gen_cycle(3), 4),
    ("commuting triangle", gen_mn_cycle(2, 1), 3),
    ("commuting square", gen_mn_cycle(2, 2), 3),
    ("suspension of alternating square", gen_suspension_alt4(), 4),
    ("punctured 3-cube", gen_punctured_cube(), 5),
]:
    print(f"== {name} ({len(X)} vertices, {len(X.edges)} edges)")
    print(homology(X, K).to_text())
    print()

t = homology(gen_suspension_alt4(), 3, generators=True)
print("degree-2 generator of the suspension:", t.generators[2][0])
