"""Cofibrations of digraphs: no edges out plus a projecting decomposition.

A subgraph inclusion ``A ⊂ X`` is tested in three stages, and the first
stage to fail is reported with a concrete witness:

1. ``A`` must be induced;
2. no edge may leave ``A``;
3. every vertex that reaches ``A`` must have a unique closest vertex
   ``π(x)`` in ``A`` through which some shortest path to every reachable
   ``a ∈ A`` passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import (
    UNREACHABLE,
    DiGraph,
    GraphError,
    GraphMap,
    bfs_distances,
    box_product,
    boundary_J,
    gen_J,
    heights,
    induced_subgraph,
    is_induced,
    label_str,
)

NOT_INDUCED = "not-induced"
EDGE_OUT = "edge-out"
NO_UNIQUE_CLOSEST = "no-unique-closest"
METRIC_VIOLATION = "metric-violation"


def subset_of(X: DiGraph, A) -> frozenset:
    """Vertex set of ``A``, given as a subgraph or as an iterable of vertices."""
    return X.check_subset(A.vertices if isinstance(A, DiGraph) else A)


def find_edge_out(X: DiGraph, A) -> tuple | None:
    """The first edge ``a -> x`` with ``a`` in ``A`` and ``x`` outside, if any."""
    Av = subset_of(X, A)
    for u, v in X.sorted_edges():
        if u in Av and v not in Av:
            return (u, v)
    return None


def no_edges_out(X: DiGraph, A) -> tuple[bool, tuple | None]:
    e = find_edge_out(X, A)
    return e is None, e


@dataclass(frozen=True)
class Failure:
    kind: str
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "witness": {k: _jsonable(v) for k, v in self.witness.items()}}


def _jsonable(v):
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, int):
        return v
    return label_str(v)


class ProjectionError(ValueError):
    """No projecting decomposition exists; carries the failing witness."""

    def __init__(self, failure: Failure):
        super().__init__(f"{failure.kind}: {failure.witness}")
        self.failure = failure


@dataclass(frozen=True, eq=False)
class ProjectingDecomposition:
    """Heights and the projection ``π`` of ``X^A`` onto ``A``."""

    X: DiGraph
    A: frozenset
    heights: dict
    projection: dict

    @property
    def reaching(self) -> list:
        """Vertices of ``X^A`` in vertex order."""
        return [v for v in self.X.vertices if v in self.projection]

    def __call__(self, v):
        return self.projection[v]

    def level(self, k: int) -> frozenset:
        return frozenset(v for v, h in self.heights.items() if h == k)

    def to_dict(self) -> dict:
        return {"heights": {label_str(v): (h if h is not UNREACHABLE else None)
                            for v, h in self.heights.items()},
                "projection": {label_str(v): label_str(a) for v, a in self.projection.items()}}


def projecting_decomposition(X: DiGraph, A) -> ProjectingDecomposition:
    """Compute ``π`` or raise :class:`ProjectionError` naming the first bad vertex.

    ``A`` must be induced; a subgraph that is not raises :class:`GraphError`.
    Distances are BFS distances in all of ``X``, since shortest paths to
    ``A`` may run through ``A``.
    """
    if isinstance(A, DiGraph) and not is_induced(X, A):
        raise GraphError("A is not an induced subgraph of X")
    Av = subset_of(X, A)
    h = heights(X, Av)
    reach = [v for v in X.vertices if h[v] is not UNREACHABLE]
    dist = {v: bfs_distances(X, v) for v in reach}
    pi = {}
    for x in reach:
        closest = [a for a in X.vertices if a in Av and dist[x].get(a) == h[x]]
        if len(closest) != 1:
            raise ProjectionError(Failure(NO_UNIQUE_CLOSEST, {"x": x, "closest": closest}))
        pi[x] = closest[0]
    for x in reach:
        via = dist[pi[x]]
        for a in X.vertices:
            if a not in Av or a not in dist[x]:
                continue
            d = via.get(a)
            if d is None or dist[x][a] != h[x] + d:
                raise ProjectionError(Failure(METRIC_VIOLATION, {
                    "x": x, "a": a, "pi_x": pi[x], "dist": dist[x][a],
                    "through_pi": None if d is None else h[x] + d}))
    decomp = ProjectingDecomposition(X, Av, h, pi)
    check_pi_edges(decomp)
    return decomp


def check_pi_edges(decomp: ProjectingDecomposition) -> None:
    """Every edge ``x -> y`` of ``X^A`` with ``h(x) >= h(y)`` is of one of two kinds.

    Either the heights agree and ``π(x) -> π(y)`` (possibly equal), or
    ``h(x) = h(y) + 1`` and ``π(x) = π(y)``.  A violation means the
    decomposition code is wrong, so this raises ``AssertionError``.
    """
    X, h, pi = decomp.X, decomp.heights, decomp.projection
    for x, y in X.sorted_edges():
        if y not in pi or h[x] < h[y]:
            continue
        if h[x] == h[y] and X.related(pi[x], pi[y]):
            continue
        if h[x] == h[y] + 1 and pi[x] == pi[y]:
            continue
        raise AssertionError(f"edge {x!r}->{y!r} breaks the height/projection dichotomy")


@dataclass(frozen=True, eq=False)
class CofibVerdict:
    is_cofibration: bool
    failure: Failure | None = None
    decomposition: ProjectingDecomposition | None = None

    def __bool__(self) -> bool:
        return self.is_cofibration

    def to_dict(self) -> dict:
        d = {"is_cofibration": self.is_cofibration,
             "failure": self.failure.to_dict() if self.failure else None}
        if self.decomposition is not None:
            d["decomposition"] = self.decomposition.to_dict()
        return d


def check_cofibration(X: DiGraph, A, *, coerce_induced: bool = False) -> CofibVerdict:
    """Decide whether ``A ⊂ X`` is a cofibration, reporting the first failure."""
    if isinstance(A, DiGraph) and not is_induced(X, A):
        if not all(v in X for v in A.vertices):
            raise GraphError("A has vertices outside X")
        if not coerce_induced:
            S = set(A.vertices)
            missing = [e for e in X.sorted_edges() if e[0] in S and e[1] in S and e not in A.edges]
            return CofibVerdict(False, Failure(NOT_INDUCED, {"missing_edge": list(missing[0]) if missing else []}))
        A = frozenset(A.vertices)
    Av = subset_of(X, A)
    e = find_edge_out(X, Av)
    if e is not None:
        return CofibVerdict(False, Failure(EDGE_OUT, {"a": e[0], "x": e[1]}))
    try:
        decomp = projecting_decomposition(X, Av)
    except ProjectionError as err:
        return CofibVerdict(False, err.failure)
    return CofibVerdict(True, None, decomp)


def is_cofibration(X: DiGraph, A) -> bool:
    return check_cofibration(X, A).is_cofibration


# ---------------------------------------------------------------------------
# closure properties
# ---------------------------------------------------------------------------


def compose_cofibrations(X: DiGraph, B, A) -> CofibVerdict:
    """Check ``A ⊂ B ⊂ X`` leg by leg, then re-check the composite ``A ⊂ X``.

    The composite verdict is returned; a failing leg is reported first as a
    ``GraphError`` since the diagram is then not a pair of cofibrations.
    """
    Bv, Av = subset_of(X, B), subset_of(X, A)
    if not Av <= Bv:
        raise GraphError("A is not contained in B")
    Bg = induced_subgraph(X, Bv)
    for sup, sub, name in ((Bg, Av, "A -> B"), (X, Bv, "B -> X")):
        v = check_cofibration(sup, sub)
        if not v:
            raise GraphError(f"leg {name} is not a cofibration: {v.failure.kind}")
    return check_cofibration(X, Av)


@dataclass(frozen=True, eq=False)
class RetractDiagram:
    """``A ⊂ X`` as a retract of ``A2 ⊂ X2``: ``r ∘ s = id_X``, with ``s(A) ⊂ A2`` and ``r(A2) ⊂ A``."""

    X: DiGraph
    A: frozenset
    X2: DiGraph
    A2: frozenset
    s: GraphMap
    r: GraphMap

    def validate(self) -> None:
        if self.s.domain != self.X or self.s.codomain != self.X2:
            raise GraphError("s must map X to X2")
        if self.r.domain != self.X2 or self.r.codomain != self.X:
            raise GraphError("r must map X2 to X")
        if not (self.r @ self.s).is_identity():
            raise GraphError("r ∘ s is not the identity")
        if not self.s.image(self.A) <= self.A2:
            raise GraphError("s does not carry A into A2")
        if not self.r.image(self.A2) <= self.A:
            raise GraphError("r does not carry A2 into A")


def verify_retract(diagram: RetractDiagram) -> CofibVerdict:
    """Validate the retract diagram, then check the retract leg from scratch."""
    diagram.validate()
    return check_cofibration(diagram.X, diagram.A)


# ---------------------------------------------------------------------------
# codiagonal factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CodiagonalFactorization:
    """``X □ ∂J ⊂ X □ J -> X``; the composite is the fold map ``X ⊔ X -> X``."""

    X: DiGraph
    cylinder: DiGraph          # X □ J
    ends: DiGraph              # X □ ∂J, induced in the cylinder
    projection: GraphMap       # X □ J -> X

    def inclusion(self) -> GraphMap:
        return GraphMap.inclusion(self.ends, self.cylinder)

    def fold(self) -> GraphMap:
        return self.projection @ self.inclusion()


def codiagonal_factorization(X: DiGraph) -> CodiagonalFactorization:
    J = gen_J()
    cyl = box_product(X, J)
    ends_v = [(x, j) for x, j in cyl.vertices if j in boundary_J()]
    ends = induced_subgraph(cyl, ends_v)
    proj = GraphMap(cyl, X, {(x, j): x for x, j in cyl.vertices})
    return CodiagonalFactorization(X, cyl, ends, proj)


__all__ = [
    "EDGE_OUT", "METRIC_VIOLATION", "NOT_INDUCED", "NO_UNIQUE_CLOSEST",
    "CodiagonalFactorization", "CofibVerdict", "Failure", "ProjectingDecomposition",
    "ProjectionError", "RetractDiagram", "check_cofibration", "check_pi_edges",
    "codiagonal_factorization", "compose_cofibrations", "find_edge_out", "is_cofibration",
    "no_edges_out", "projecting_decomposition", "subset_of", "verify_retract",
]
