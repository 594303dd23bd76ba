"""Excision on a pushout: collapsing the two ends of J to a single point.

The relative homology of (J, ends) equals that of (Y, point), and the map
of relative Ω-complexes is an isomorphism degree by degree.
"""

import json

from pathcof import DiGraph, GraphMap, gen_J, induced_subgraph, pushout, verify_excision, verify_les
from pathcof.excision import omega_pushout_dims

X = gen_J()
A = induced_subgraph(X, [-2, 2])
sq = pushout(X, A, GraphMap(A, DiGraph(["p"]), {-2: "p", 2: "p"}))
print("Y =", sq.Y.to_dict())
print(json.dumps(verify_excision(sq, 3).to_dict(), indent=1))
print("Ω dims:", omega_pushout_dims(sq, 3))
print("long exact sequence exact:", verify_les(X, [-2, 2], 4).ok)
