"""Seeded random instances and the finite cofibration-category axiom suite.

Every generator takes an :class:`InstanceSpec` and draws from a private
``random.Random`` seeded from it, so an instance is a pure function of its
spec.  Child specs for the ``i``-th instance of a run are derived from the
master seed and ``i``, which keeps runs reproducible instance by instance.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .cofib import (
    RetractDiagram,
    check_cofibration,
    codiagonal_factorization,
    compose_cofibrations,
    projecting_decomposition,
    ProjectionError,
    verify_retract,
)
from .digraph import (
    DiGraph,
    GraphMap,
    PushoutSquare,
    box_map,
    box_product,
    disjoint_union,
    gen_line,
    induced_subgraph,
    label_str,
    pushout,
)
from .excision import (
    omega_pushout_dims,
    verify_excision,
    verify_left_properness,
)
from .linalg import QQ, Field
from .pathhom import RelativeComplex, is_homology_iso


@dataclass(frozen=True)
class InstanceSpec:
    seed: int = 0
    vertex_budget: int = 6
    edge_density: Fraction = Fraction(1, 3)
    max_degree: int = 4

    def __post_init__(self):
        object.__setattr__(self, "edge_density", Fraction(self.edge_density))
        if not 0 <= self.edge_density <= 1:
            raise ValueError("edge density must lie in [0, 1]")
        if self.vertex_budget < 0:
            raise ValueError("vertex budget must be >= 0")

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(_mix(self.seed, salt))

    def child(self, index: int, salt: str = "") -> "InstanceSpec":
        return replace(self, seed=_mix(self.seed, f"{salt}#{index}"))


def _mix(seed: int, salt: str) -> int:
    """A 64-bit seed derived from ``seed`` and ``salt`` (stable across runs and platforms)."""
    h = hashlib.sha256(f"{seed}:{salt}".encode()).digest()
    return int.from_bytes(h[:8], "big")


class BudgetExhausted(RuntimeError):
    """A sampler gave up after its retry budget."""


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


def _bernoulli(rng: random.Random, p: Fraction) -> bool:
    return rng.randrange(p.denominator) < p.numerator


def random_digraph(spec: InstanceSpec, rng: random.Random | None = None, n: int | None = None) -> DiGraph:
    """Each ordered pair ``u != v`` is an edge independently with probability ``edge_density``."""
    rng = rng or spec.rng("digraph")
    n = spec.vertex_budget if n is None else n
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and _bernoulli(rng, spec.edge_density)]
    return DiGraph(range(n), edges)


def random_tree(spec: InstanceSpec, rng: random.Random | None = None, n: int | None = None) -> DiGraph:
    """A uniformly attached random tree on ``0..n-1`` with random edge orientations."""
    rng = rng or spec.rng("tree")
    n = spec.vertex_budget if n is None else n
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    return DiGraph(range(n), edges)


def _successor_closure(X: DiGraph, seeds) -> frozenset:
    out, stack = set(seeds), list(seeds)
    while stack:
        for w in X.succ(stack.pop()):
            if w not in out:
                out.add(w)
                stack.append(w)
    return frozenset(out)


# ---------------------------------------------------------------------------
# cofibrations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CofibInstance:
    X: DiGraph
    A: frozenset
    strategy: str

    @property
    def A_graph(self) -> DiGraph:
        return induced_subgraph(self.X, self.A)


def layered_cofibration(spec: InstanceSpec, rng: random.Random | None = None) -> CofibInstance:
    """A random base ``A`` plus new vertices, each with one edge toward what is already built.

    A vertex with a single out-edge has all its paths run through that
    edge, so closest vertices are unique and the metric condition holds.
    New vertices may also receive edges from later ones, but never send a
    second edge.
    """
    rng = rng or spec.rng("layered")
    n = max(spec.vertex_budget, 1)
    k = rng.randint(1, max(1, n // 2))
    base = random_digraph(spec, rng, k)
    edges = set(base.edges)
    for v in range(k, n):
        edges.add((v, rng.randrange(v)))
    return CofibInstance(DiGraph(range(n), edges), frozenset(range(k)), "layered")


def _block_digraph(spec: InstanceSpec, rng: random.Random, n: int, k: int) -> DiGraph:
    """Random graph on ``0..n-1`` in which ``0..k-1`` has no edges out.

    Inside each block edges appear with probability ``spec.edge_density``.
    Each vertex outside gets at most one edge into the block, which keeps closest
    vertices unique often enough for rejection sampling to be cheap.
    """
    p = spec.edge_density
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v or (u < k) != (v < k):
                continue
            if _bernoulli(rng, p):
                edges.append((u, v))
    for u in range(k, n):
        if k and rng.random() < 0.6:
            edges.append((u, rng.randrange(k)))
    return DiGraph(range(n), edges)


def random_cofibration(spec: InstanceSpec, *, tries: int = 40) -> CofibInstance:
    """Rejection-sample a successor-closed ``A`` that admits a projecting decomposition.

    Draws alternate between the successor closure of random seed vertices
    in a random digraph and a two-block graph whose first block is closed
    by construction; both never have edges out.  Closures equal to all of
    ``X`` are redrawn, and the empty subgraph is kept only occasionally.
    After ``tries`` failed draws the layered construction is used.  The
    result is always re-checked; a failing fallback raises
    :class:`BudgetExhausted`.
    """
    rng = spec.rng("cofibration")
    n = spec.vertex_budget
    for t in range(tries):
        how = "closure"
        if n == 0 or rng.random() < 0.05:
            X, A = random_digraph(spec, rng), frozenset()
        elif t % 2 == 0:
            X = random_digraph(spec, rng)
            A = _successor_closure(X, rng.sample(range(n), 1))
            if len(A) == n and n > 1:
                continue
        else:
            k = rng.randint(1, max(1, n - 1))
            X = _block_digraph(spec, rng, n, k)
            A, how = frozenset(range(k)), "block"
        try:
            projecting_decomposition(X, A)
        except ProjectionError:
            continue
        return CofibInstance(X, A, how)
    inst = layered_cofibration(spec, rng)
    if not check_cofibration(inst.X, inst.A):
        raise BudgetExhausted("layered fallback did not produce a cofibration")
    return inst


# ---------------------------------------------------------------------------
# maps and squares
# ---------------------------------------------------------------------------


def random_map_onto_target(spec: InstanceSpec, A: DiGraph, rng: random.Random, size: int) -> GraphMap:
    """A random map ``A -> B`` with ``|B| <= size``; ``B`` gets the image edges plus random extras."""
    size = max(size, 1)
    verts = list(range(size))
    vm = {a: rng.choice(verts) for a in A.vertices}
    edges = {(vm[u], vm[v]) for u, v in A.edges if vm[u] != vm[v]}
    for u in verts:
        for v in verts:
            if u != v and _bernoulli(rng, spec.edge_density / 2):
                edges.add((u, v))
    B = DiGraph(verts, edges)
    return GraphMap(A, B, vm)


def random_pushout_square(spec: InstanceSpec, target_size: int = 6, *, corrupt: bool = False) -> PushoutSquare:
    """Pushout of a random cofibration along a random map onto a small target.

    With ``corrupt`` set, an edge out of ``A`` is added first (when ``A`` is
    a nonempty proper subset), so the left leg is no longer a cofibration.
    """
    inst = random_cofibration(spec)
    rng = spec.rng("attach")
    X, A = inst.X, inst.A
    if corrupt:
        X = inject_edge_out(X, A, rng)
    Ag = induced_subgraph(X, A)
    f = random_map_onto_target(spec, Ag, rng, rng.randint(1, target_size))
    return pushout(X, Ag, f)


def inject_edge_out(X: DiGraph, A, rng: random.Random) -> DiGraph:
    """Add one edge from ``A`` to its complement (no-op if either side is empty)."""
    inside = [v for v in X.vertices if v in A]
    outside = [v for v in X.vertices if v not in A]
    if not inside or not outside:
        return X
    return DiGraph(X.vertices, set(X.edges) | {(rng.choice(inside), rng.choice(outside))})


def _leaf_collapse(A: DiGraph, rng: random.Random) -> GraphMap | None:
    """Fold a degree-one vertex onto its only neighbour."""
    leaves = [v for v in A.vertices if len(A.succ(v)) + len(A.pred(v)) == 1]
    if not leaves:
        return None
    v = rng.choice(leaves)
    w = (A.succ(v) + A.pred(v))[0]
    B = induced_subgraph(A, [u for u in A.vertices if u != v])
    return GraphMap(A, B, {u: (w if u == v else u) for u in A.vertices})


def _cylinder_end(A: DiGraph, rng: random.Random) -> GraphMap:
    """``a ↦ (a, 0)`` into ``A □ I_1``."""
    cyl = box_product(A, gen_line(1))
    end = rng.choice([0, 1])
    return GraphMap(A, cyl, {a: (a, end) for a in A.vertices})


def homology_iso_attaching(spec: InstanceSpec, A: DiGraph, rng: random.Random,
                           cutoff: int, target_size: int = 6, tries: int = 12) -> tuple[GraphMap, str]:
    """A map out of ``A`` verified to be a homology isomorphism below ``cutoff``.

    Tries random maps onto small targets first, then folds of leaves and
    cylinder ends, and finally the identity.
    """
    for _ in range(tries):
        f = random_map_onto_target(spec, A, rng, rng.randint(1, target_size))
        if is_homology_iso(f, cutoff):
            return f, "random"
    for _ in range(3):
        f = _leaf_collapse(A, rng)
        if f is not None and is_homology_iso(f, cutoff):
            return f, "leaf-collapse"
    if len(A) <= 6:
        f = _cylinder_end(A, rng)
        if is_homology_iso(f, cutoff):
            return f, "cylinder-end"
    return GraphMap.identity(A), "identity"


# ---------------------------------------------------------------------------
# retracts
# ---------------------------------------------------------------------------


def random_retract(spec: InstanceSpec) -> RetractDiagram:
    """``A ⊂ X`` presented as a retract of a larger cofibration.

    Either ``X □ I_1`` with ``x ↦ (x, 0)`` and the projection, or ``X ⊔ W``
    for a second cofibration ``V ⊂ W``, retracted by sending ``W`` to one
    vertex of ``A``.
    """
    inst = random_cofibration(spec)
    X, A = inst.X, inst.A
    rng = spec.rng("retract")
    if A and rng.random() < 0.5:
        other = random_cofibration(spec.child(1, "retract"))
        X2 = disjoint_union(X, other.X)
        A2 = frozenset((0, a) for a in A) | frozenset((1, v) for v in other.A)
        s = GraphMap(X, X2, {x: (0, x) for x in X.vertices})
        anchor = sorted(A, key=X.index)[0]
        r = GraphMap(X2, X, {(t, v): (v if t == 0 else anchor) for t, v in X2.vertices})
        return RetractDiagram(X, A, X2, A2, s, r)
    X2 = box_product(X, gen_line(1))
    A2 = frozenset((a, i) for a in A for i in (0, 1))
    s = GraphMap(X, X2, {x: (x, 0) for x in X.vertices})
    r = GraphMap(X2, X, {(x, i): x for x, i in X2.vertices})
    return RetractDiagram(X, A, X2, A2, s, r)


# ---------------------------------------------------------------------------
# the axiom suite
# ---------------------------------------------------------------------------

OUT_OF_SCOPE = {
    "C2": "2-out-of-6 holds by functoriality of homology; a statement about all triples, not a finite check",
    "C6": "small coproducts: disjoint union exists by construction",
    "C7": "transfinite composites need infinite colimits",
}


@dataclass
class AxiomReport:
    spec: dict
    instances: int
    cutoff: int
    passed: dict = field(default_factory=dict)
    failed: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    skipped: dict = field(default_factory=lambda: dict(OUT_OF_SCOPE))

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def record(self, axiom: str, ok: bool, detail=None) -> None:
        self.passed.setdefault(axiom, 0)
        self.failed.setdefault(axiom, 0)
        if ok:
            self.passed[axiom] += 1
        else:
            self.failed[axiom] += 1
            self.counterexamples.append({"axiom": axiom, "detail": detail})

    def to_dict(self) -> dict:
        return {"spec": self.spec, "instances": self.instances, "cutoff": self.cutoff,
                "ok": self.ok, "passed": self.passed, "failed": self.failed,
                "skipped": self.skipped, "counterexamples": self.counterexamples}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _graph_dump(G: DiGraph) -> dict:
    return G.to_dict()


def _acyclic(X: DiGraph, A, cutoff: int, fld: Field) -> bool:
    return not any(RelativeComplex(X, A, fld).homology(cutoff).betti)


def axiom_suite(spec: InstanceSpec, instances: int = 20, field: Field = QQ, *,
                corrupt: bool = False) -> AxiomReport:
    """Run the finite axiom checks on ``instances`` seeded instances.

    Each instance ``i`` uses child specs derived from ``spec.seed`` and
    ``i``, so a single failing instance can be replayed on its own.
    ``corrupt`` injects an edge out of ``A`` before the pushout checks, as a
    negative control: the C4 stability check must then report failures.
    """
    K = spec.max_degree
    rep = AxiomReport({"seed": spec.seed, "vertex_budget": spec.vertex_budget,
                       "edge_density": str(spec.edge_density), "max_degree": K}, instances, K)
    for i in range(instances):
        s = spec.child(i)
        inst = random_cofibration(s)
        X, A = inst.X, inst.A
        dump = {"instance": i, "X": _graph_dump(X), "A": sorted(map(label_str, A))}

        # C1: identities, and composites of cofibrations
        rep.record("C1-identity", bool(check_cofibration(X, X.vertices)), dump)
        rng = s.rng("compose")
        inner = _successor_closure(inst.A_graph, rng.sample(sorted(A, key=X.index), min(len(A), 1)))
        if not check_cofibration(inst.A_graph, inner):
            inner = frozenset()
        rep.record("C1-composition", bool(compose_cofibrations(X, A, inner)),
                   dict(dump, inner=sorted(map(label_str, inner))))

        # C3: everything is cofibrant
        rep.record("C3", bool(check_cofibration(X, ())), dump)

        # C4: pushouts of cofibrations, and of acyclic ones
        sq = random_pushout_square(s.child(0, "c4"), target_size=min(6, max(1, spec.vertex_budget)),
                                   corrupt=corrupt)
        Bv = sq.B_to_Y.image(sq.B.vertices)
        leg = check_cofibration(sq.Y, Bv)
        rep.record("C4-cofibration", bool(leg), {"X": _graph_dump(sq.X), "Y": _graph_dump(sq.Y),
                                                 "failure": leg.to_dict()["failure"]})
        if leg and check_cofibration(sq.X, sq.A.vertices):
            if _acyclic(sq.X, sq.A.vertices, K, field):
                rep.record("C4-acyclic", _acyclic(sq.Y, Bv, K, field), {"Y": _graph_dump(sq.Y)})
            exc = verify_excision(sq, K, field)
            rep.record("excision", exc.ok, exc.to_dict())
            dims = omega_pushout_dims(sq, K, field)
            rep.record("omega-pushout", dims["ok"], dims)

        # C5: the codiagonal factorization (kept small: the cylinder has 5|X| vertices)
        small = random_digraph(s, s.rng("c5"), min(3, max(1, spec.vertex_budget)))
        fac = codiagonal_factorization(small)
        c5 = bool(check_cofibration(fac.cylinder, fac.ends.vertices)) and is_homology_iso(fac.projection, K, field)
        rep.record("C5", c5, {"X": _graph_dump(small)})

        # left properness
        rng = s.rng("left-proper")
        f, how = homology_iso_attaching(s, inst.A_graph, rng, K)
        lp = verify_left_properness(pushout(X, inst.A_graph, f), K, field)
        rep.record("left-properness", lp.ok, dict(dump, attaching=how))

        # retracts
        rep.record("retract", bool(verify_retract(random_retract(s.child(0, "retract")))), dump)

        # box products of cofibrations and of weak equivalences
        other = random_cofibration(replace(s.child(0, "box"), vertex_budget=min(3, spec.vertex_budget)))
        XY = box_product(X, other.X)
        AB = [(a, b) for a in X.vertices if a in A for b in other.X.vertices if b in other.A]
        bv = check_cofibration(XY, AB)
        pi_ok = bool(bv) and all(
            bv.decomposition.projection[(x, y)] == (inst_pi(X, A)[x], inst_pi(other.X, other.A)[y])
            for (x, y) in bv.decomposition.projection)
        rep.record("box-cofibration", pi_ok, dump)
        if len(other.X) <= 3:
            g, _ = homology_iso_attaching(s, other.X, s.rng("box-weq"), K, target_size=3)
            rep.record("box-weq", is_homology_iso(box_map(GraphMap.identity(small), g), K, field)
                       or not is_homology_iso(g, K, field), {"X": _graph_dump(small)})
    return rep


def inst_pi(X: DiGraph, A) -> dict:
    return projecting_decomposition(X, A).projection


def verify_random_cofibrations(spec: InstanceSpec, count: int) -> tuple[int, int]:
    """Sample ``count`` cofibrations; return ``(accepted, passing check_cofibration)``."""
    ok = 0
    for i in range(count):
        inst = random_cofibration(spec.child(i, "sample"))
        ok += bool(check_cofibration(inst.X, inst.A))
    return count, ok


__all__ = [
    "AxiomReport", "BudgetExhausted", "CofibInstance", "InstanceSpec", "axiom_suite",
    "homology_iso_attaching", "layered_cofibration", "random_cofibration", "random_digraph",
    "random_map_onto_target", "random_pushout_square", "random_retract", "random_tree",
    "verify_random_cofibrations",
]
