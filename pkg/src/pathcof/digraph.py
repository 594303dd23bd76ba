"""Finite digraphs with implicit self-loops, named examples, and colimits.

A digraph here is a finite vertex list together with an irreflexive set of
directed edges; the reflexive loops are structural and never stored.  A
digraph map is a vertex function sending every edge either to an edge or to
a single vertex.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

Vertex = Hashable


class GraphError(ValueError):
    """Malformed graph, subset, or map."""


class DiGraph:
    """Immutable finite digraph.

    ``vertices`` keeps its given order; that order defines the canonical
    (lexicographic) ordering of paths everywhere else in the package.
    Self-edges are dropped and repeated edges collapsed, each with a warning.
    """

    __slots__ = ("vertices", "edges", "_index", "_succ", "_pred")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple] = (), *, quiet: bool = False):
        verts = tuple(vertices)
        index = {v: i for i, v in enumerate(verts)}
        if len(index) != len(verts):
            raise GraphError("duplicate vertex in vertex list")
        es = set()
        loops = dupes = 0
        for e in edges:
            u, v = e
            if u not in index or v not in index:
                raise GraphError(f"edge {u!r}->{v!r} has an endpoint that is not a vertex")
            if u == v:
                loops += 1
                continue
            if (u, v) in es:
                dupes += 1
            es.add((u, v))
        if not quiet:
            if loops:
                warnings.warn(f"dropped {loops} self-edge(s); loops are implicit", stacklevel=2)
            if dupes:
                warnings.warn(f"collapsed {dupes} parallel edge(s)", stacklevel=2)
        succ = {v: [] for v in verts}
        pred = {v: [] for v in verts}
        for u, v in es:
            succ[u].append(v)
            pred[v].append(u)
        key = index.__getitem__
        self.vertices = verts
        self.edges = frozenset(es)
        self._index = index
        self._succ = {v: tuple(sorted(s, key=key)) for v, s in succ.items()}
        self._pred = {v: tuple(sorted(s, key=key)) for v, s in pred.items()}

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiGraph):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edges))

    def __repr__(self) -> str:
        return f"DiGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def index(self, v) -> int:
        return self._index[v]

    def succ(self, v) -> tuple:
        return self._succ[v]

    def pred(self, v) -> tuple:
        return self._pred[v]

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edges

    def related(self, u, v) -> bool:
        """The reflexive relation: ``u == v`` or ``u -> v``."""
        return u == v or (u, v) in self.edges

    def sorted_edges(self) -> list[tuple]:
        key = self._index.__getitem__
        return sorted(self.edges, key=lambda e: (key(e[0]), key(e[1])))

    def path_key(self, path) -> tuple:
        """Sort key putting vertex tuples in lexicographic vertex order."""
        return tuple(self._index[v] for v in path)

    def check_subset(self, S) -> frozenset:
        S = frozenset(S)
        bad = [v for v in S if v not in self._index]
        if bad:
            raise GraphError(f"unknown vertex {bad[0]!r}")
        return S

    def relabel(self, mapping: Mapping) -> "DiGraph":
        return DiGraph([mapping[v] for v in self.vertices],
                       [(mapping[u], mapping[v]) for u, v in self.edges], quiet=True)

    def to_dict(self) -> dict:
        return {"vertices": [label_str(v) for v in self.vertices],
                "edges": [[label_str(u), label_str(v)] for u, v in self.sorted_edges()]}


def label_str(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(label_str(x) for x in v) + ")"
    return str(v)


@dataclass(frozen=True, eq=False)
class GraphMap:
    """A digraph map given by its vertex function."""

    domain: DiGraph
    codomain: DiGraph
    vertex_map: Mapping

    def __post_init__(self):
        vm = dict(self.vertex_map)
        object.__setattr__(self, "vertex_map", vm)
        for v in self.domain.vertices:
            if v not in vm:
                raise GraphError(f"map is undefined on vertex {v!r}")
            if vm[v] not in self.codomain:
                raise GraphError(f"{v!r} maps to {vm[v]!r}, not a codomain vertex")
        for u, v in self.domain.edges:
            if not self.codomain.related(vm[u], vm[v]):
                raise GraphError(
                    f"edge {u!r}->{v!r} goes to {vm[u]!r},{vm[v]!r}, which is neither an edge nor a vertex")

    def __call__(self, v):
        return self.vertex_map[v]

    def __matmul__(self, other: "GraphMap") -> "GraphMap":
        """Composition ``self ∘ other``."""
        return GraphMap(other.domain, self.codomain,
                        {v: self.vertex_map[other.vertex_map[v]] for v in other.domain.vertices})

    def restrict(self, sub: DiGraph) -> "GraphMap":
        return GraphMap(sub, self.codomain, {v: self.vertex_map[v] for v in sub.vertices})

    def image(self, S) -> frozenset:
        return frozenset(self.vertex_map[v] for v in S)

    def is_identity(self) -> bool:
        return all(self.vertex_map[v] == v for v in self.domain.vertices)

    @classmethod
    def identity(cls, X: DiGraph) -> "GraphMap":
        return cls(X, X, {v: v for v in X.vertices})

    @classmethod
    def inclusion(cls, sub: DiGraph, X: DiGraph) -> "GraphMap":
        return cls(sub, X, {v: v for v in sub.vertices})

    @classmethod
    def constant(cls, X: DiGraph, Y: DiGraph, y) -> "GraphMap":
        return cls(X, Y, {v: y for v in X.vertices})


# ---------------------------------------------------------------------------
# named graphs
# ---------------------------------------------------------------------------


def gen_line(n: int) -> DiGraph:
    """The line ``0 -> 1 -> ... -> n``."""
    if n < 0:
        raise GraphError("line length must be >= 0")
    return DiGraph(range(n + 1), [(i, i + 1) for i in range(n)])


def gen_cycle(n: int) -> DiGraph:
    """The oriented cycle on ``0..n-1``."""
    if n < 1:
        raise GraphError("cycle needs n >= 1")
    return DiGraph(range(n), [(i, (i + 1) % n) for i in range(n) if n > 1], quiet=True)


def gen_alt_cycle(two_k: int) -> DiGraph:
    """Alternating cycle on ``2k`` vertices: even vertices are sources."""
    if two_k < 2 or two_k % 2:
        raise GraphError("alternating cycle needs an even size >= 2")
    n = two_k
    edges = set()
    for i in range(n):
        if i % 2 == 0:
            edges.add((i, (i + 1) % n))
        else:
            edges.add(((i + 1) % n, i))
    return DiGraph(range(n), edges, quiet=True)


def gen_mn_cycle(m: int, n: int) -> DiGraph:
    """The cycle ``C_{m,n}``: a length-``m`` and a length-``n`` path from 0 to one sink.

    Vertices ``0..m+n-1``; edges ``i -> i+1`` for ``i < m``, ``i+1 -> i``
    for ``m <= i < m+n-1``, and ``0 -> m+n-1``.  Edges that would leave the
    vertex range (``n = 0``) are omitted.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise GraphError("C_{m,n} needs m, n >= 0 and m + n >= 1")
    top = m + n - 1
    edges = {(i, i + 1) for i in range(m) if i + 1 <= top}
    edges |= {(i + 1, i) for i in range(m, top)}
    edges.add((0, top))
    return DiGraph(range(m + n), edges, quiet=True)


def gen_J() -> DiGraph:
    """The zig-zag line ``-2 <- -1 -> 0 <- 1 -> 2``."""
    return DiGraph([-2, -1, 0, 1, 2], [(-1, -2), (-1, 0), (1, 0), (1, 2)])


def boundary_J() -> DiGraph:
    """The two endpoints of ``J`` as an edgeless graph."""
    return DiGraph([-2, 2])


def gen_complete(labels: Iterable) -> DiGraph:
    labels = list(labels)
    return DiGraph(labels, [(u, v) for u in labels for v in labels if u != v])


def gen_suspension_alt4() -> DiGraph:
    """Two cone points ``a`` and ``b`` over the alternating 4-cycle."""
    base = gen_alt_cycle(4)
    edges = set(base.edges)
    edges |= {(c, i) for c in ("a", "b") for i in range(4)}
    return DiGraph(["a", 0, 1, 2, 3, "b"], edges)


def gen_punctured_cube() -> DiGraph:
    """``I_2 □ I_2 □ I_2`` with its central vertex removed (26 vertices)."""
    cube = box_product(box_product(gen_line(2), gen_line(2)), gen_line(2))
    flat = {v: (v[0][0], v[0][1], v[1]) for v in cube.vertices}
    cube = cube.relabel(flat)
    return complement(cube, [(1, 1, 1)])


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def box_product(X: DiGraph, Y: DiGraph) -> DiGraph:
    """Vertices ``X_V × Y_V``; an edge moves along one factor with the other fixed."""
    verts = [(x, y) for x in X.vertices for y in Y.vertices]
    edges = [((x, y), (x2, y)) for x, x2 in X.edges for y in Y.vertices]
    edges += [((x, y), (x, y2)) for y, y2 in Y.edges for x in X.vertices]
    return DiGraph(verts, edges)


def box_map(f: GraphMap, g: GraphMap) -> GraphMap:
    """The box product of two maps, acting coordinatewise."""
    dom = box_product(f.domain, g.domain)
    cod = box_product(f.codomain, g.codomain)
    return GraphMap(dom, cod, {(x, y): (f(x), g(y)) for x, y in dom.vertices})


def induced_subgraph(X: DiGraph, S: Iterable) -> DiGraph:
    S = X.check_subset(S)
    return DiGraph([v for v in X.vertices if v in S],
                   [e for e in X.edges if e[0] in S and e[1] in S])


def complement(X: DiGraph, A) -> DiGraph:
    """Induced subgraph on the vertices not in ``A``."""
    Av = X.check_subset(A.vertices if isinstance(A, DiGraph) else A)
    return induced_subgraph(X, [v for v in X.vertices if v not in Av])


def is_induced(X: DiGraph, A: DiGraph) -> bool:
    if not all(v in X for v in A.vertices):
        return False
    S = set(A.vertices)
    return A.edges == {e for e in X.edges if e[0] in S and e[1] in S}


def disjoint_union(X: DiGraph, Y: DiGraph) -> DiGraph:
    """Coproduct; vertices are tagged ``(0, x)`` and ``(1, y)``."""
    verts = [(0, x) for x in X.vertices] + [(1, y) for y in Y.vertices]
    edges = [((0, u), (0, v)) for u, v in X.edges] + [((1, u), (1, v)) for u, v in Y.edges]
    return DiGraph(verts, edges)


class Reach(enum.Enum):
    UNREACHABLE = "unreachable"

    def __repr__(self):
        return "UNREACHABLE"


UNREACHABLE = Reach.UNREACHABLE


def bfs_distances(X: DiGraph, source) -> dict:
    """Directed distances from ``source`` to every vertex it reaches."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in X.succ(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def heights(X: DiGraph, A) -> dict:
    """Length of a shortest directed path from each vertex into ``A``.

    Vertices with no such path map to :data:`UNREACHABLE`.
    """
    Av = X.check_subset(A.vertices if isinstance(A, DiGraph) else A)
    h = {a: 0 for a in Av}
    queue = deque(v for v in X.vertices if v in Av)
    while queue:
        u = queue.popleft()
        for v in X.pred(u):
            if v not in h:
                h[v] = h[u] + 1
                queue.append(v)
    return {v: h.get(v, UNREACHABLE) for v in X.vertices}


def reaching_vertices(X: DiGraph, A) -> list:
    """Vertices of ``X`` admitting a path to ``A``, in vertex order."""
    h = heights(X, A)
    return [v for v in X.vertices if h[v] is not UNREACHABLE]


def undirected_components(X: DiGraph) -> list[list]:
    seen, comps = set(), []
    for s in X.vertices:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in X.succ(u) + X.pred(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# pushouts
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PushoutSquare:
    """The square ``A ⊂ X``, ``f: A -> B``, ``B ⊂ Y``, ``g: X -> Y``.

    ``Y`` uses labels ``"B:<b>"`` for the image of ``B`` and ``"X:<x>"`` for
    the complement ``X - A``.
    """

    X: DiGraph
    A: DiGraph
    attaching: GraphMap
    Y: DiGraph
    B_to_Y: GraphMap
    X_to_Y: GraphMap

    @property
    def B(self) -> DiGraph:
        return self.attaching.codomain

    @property
    def B_in_Y(self) -> DiGraph:
        """The image of ``B`` as an induced subgraph of ``Y``."""
        return induced_subgraph(self.Y, self.B_to_Y.image(self.B.vertices))


def pushout(X: DiGraph, A, f: GraphMap) -> PushoutSquare:
    """Pushout of the induced inclusion ``A ⊂ X`` along ``f: A -> B``."""
    A = _as_induced(X, A)
    if set(f.domain.vertices) != set(A.vertices) or f.domain.edges != A.edges:
        raise GraphError("attaching map is not defined on A")
    B = f.codomain
    Av = set(A.vertices)
    bname = {b: f"B:{label_str(b)}" for b in B.vertices}
    xname = {x: f"X:{label_str(x)}" for x in X.vertices if x not in Av}
    verts = [bname[b] for b in B.vertices] + [xname[x] for x in X.vertices if x not in Av]
    g = {x: (bname[f(x)] if x in Av else xname[x]) for x in X.vertices}
    edges = {(bname[u], bname[v]) for u, v in B.edges}
    for u, v in X.edges:
        if u in Av and v in Av:
            continue
        gu, gv = g[u], g[v]
        if gu != gv:
            edges.add((gu, gv))
    Y = DiGraph(verts, edges)
    return PushoutSquare(X, A, f, Y, GraphMap(B, Y, bname), GraphMap(X, Y, g))


def _as_induced(X: DiGraph, A) -> DiGraph:
    if isinstance(A, DiGraph):
        if not is_induced(X, A):
            raise GraphError("A is not an induced subgraph of X")
        return A
    return induced_subgraph(X, A)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def find_isomorphism(X: DiGraph, Y: DiGraph) -> dict | None:
    """A vertex bijection carrying edges exactly onto edges, or ``None``.

    Backtracking over candidates with matching (in, out) degree; intended
    for graphs of a few dozen vertices.
    """
    if len(X) != len(Y) or len(X.edges) != len(Y.edges):
        return None

    def profile(G, v):
        return (len(G.succ(v)), len(G.pred(v)),
                tuple(sorted((len(G.succ(w)), len(G.pred(w))) for w in G.succ(v))),
                tuple(sorted((len(G.succ(w)), len(G.pred(w))) for w in G.pred(v))))

    px = {v: profile(X, v) for v in X.vertices}
    py = {v: profile(Y, v) for v in Y.vertices}
    if sorted(px.values()) != sorted(py.values()):
        return None
    by_profile: dict = {}
    for v, p in py.items():
        by_profile.setdefault(p, []).append(v)
    # most constrained first, then neighbours of already placed vertices
    order = _search_order(X, px, by_profile)
    fwd: dict = {}
    used: set = set()

    def consistent(x, y):
        for w in X.succ(x):
            if w in fwd and not Y.has_edge(y, fwd[w]):
                return False
        for w in X.pred(x):
            if w in fwd and not Y.has_edge(fwd[w], y):
                return False
        # edge counts match, so checking X-edges alone is enough once complete
        for w, z in fwd.items():
            if Y.has_edge(y, z) and not X.has_edge(x, w):
                return False
            if Y.has_edge(z, y) and not X.has_edge(w, x):
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in by_profile[px[x]]:
            if y not in used and consistent(x, y):
                fwd[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del fwd[x]
                used.discard(y)
        return False

    return dict(fwd) if extend(0) else None


def _search_order(X, px, by_profile):
    order, placed = [], set()
    remaining = sorted(X.vertices, key=lambda v: (len(by_profile[px[v]]), X.index(v)))
    while remaining:
        nxt = next((v for v in remaining
                    if any(w in placed for w in X.succ(v) + X.pred(v))), remaining[0])
        remaining.remove(nxt)
        order.append(nxt)
        placed.add(nxt)
    return order


def is_isomorphic(X: DiGraph, Y: DiGraph) -> bool:
    return find_isomorphism(X, Y) is not None


def all_graph_maps(X: DiGraph, Y: DiGraph):
    """Every digraph map ``X -> Y`` (exhaustive; for tiny graphs only)."""
    for images in itertools.product(Y.vertices, repeat=len(X)):
        vm = dict(zip(X.vertices, images))
        if all(Y.related(vm[u], vm[v]) for u, v in X.edges):
            yield GraphMap(X, Y, vm)
