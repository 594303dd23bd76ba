"""The mapping cone of a cofibration, the comparison map E, and excision.

For a cofibration ``A ⊂ X`` with projection ``π`` the grid operators

    L^j(x_0 … x_{n-1}) = Σ_{i=j}^{n-1} (-1)^i x_0 … x_i a_i … a_{n-1},   a_i = π(x_i)

send complement paths to alternating sums of paths that drop into ``A``
along their projections.  ``E(p, q) = L⁰(p) + q`` compares the cone

    M_n = Ω̂¹_{n-1}(X, A) ⊕ Ω_n(X - A),   ∂(p, q) = (-∂p, ∂q - p)

with the complement complex Ω̂(X, A).  Everything here is a checker: each
function builds the relevant chains and reports whether the expected
identities hold, without assuming them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cofib import ProjectingDecomposition, check_cofibration, subset_of
from .digraph import DiGraph, GraphError, PushoutSquare, induced_subgraph
from .linalg import QQ, Field, KeyIndex, LabeledMatrix, rank_of_vectors, solve_sparse
from .pathhom import (
    Chain,
    ChainComplex,
    HatOneComplex,
    PathComplex,
    RelativeComplex,
    allowed_paths,
    induced_rank,
    is_homology_iso,
    map_chain,
    regular_boundary,
)


def _decomposition(X: DiGraph, A) -> ProjectingDecomposition:
    verdict = check_cofibration(X, A)
    if not verdict:
        raise GraphError(f"not a cofibration ({verdict.failure.kind})")
    return verdict.decomposition


def _boundary(c: Chain) -> Chain:
    """Regular boundary, with the boundary of a degree-0 chain taken as zero."""
    if not c or c.degree == 0:
        return Chain(field=c.field)
    return regular_boundary(c)


# ---------------------------------------------------------------------------
# L and π
# ---------------------------------------------------------------------------


def L(decomp: ProjectingDecomposition, j: int, c: Chain) -> Chain:
    """The operator ``L^j`` on a chain of degree ``n - 1`` supported in ``(X - A)^A``."""
    out = Chain(field=c.field)
    A, pi = decomp.A, decomp.projection
    for path, coeff in c.items():
        n = len(path)
        if not 0 <= j <= n - 1:
            raise ValueError(f"L^{j} is undefined on paths of degree {n - 1}")
        if any(v in A or v not in pi for v in path):
            raise ValueError(f"path {path!r} leaves (X - A)^A")
        a = tuple(pi[v] for v in path)
        for i in range(j, n):
            out.add_term(path[:i + 1] + a[i:], coeff if i % 2 == 0 else -coeff)
    return out


def pi_linear(decomp: ProjectingDecomposition, c: Chain) -> Chain:
    """``x_0 … x_n ↦ π(x_0) … π(x_n)``; degenerate images vanish."""
    out = Chain(field=c.field)
    pi = decomp.projection
    for path, coeff in c.items():
        if any(v not in pi for v in path):
            raise ValueError(f"path {path!r} leaves X^A")
        out.add_term(tuple(pi[v] for v in path), coeff)
    return out


def complement_paths(decomp: ProjectingDecomposition, n: int) -> list:
    """Allowed ``n``-paths of ``(X - A)^A``, the natural test domain for ``L``."""
    X, A, pi = decomp.X, decomp.A, decomp.projection
    sub = induced_subgraph(X, [v for v in X.vertices if v in pi and v not in A])
    return allowed_paths(sub, n).paths


def verify_L_injective(decomp: ProjectingDecomposition, n: int, j: int,
                       paths: Iterable | None = None, fld: Field = QQ) -> bool:
    """``L^j`` sends the given degree ``n - 1`` paths to independent chains."""
    paths = list(complement_paths(decomp, n - 1) if paths is None else paths)
    images = [L(decomp, j, Chain({p: 1}, fld)) for p in paths]
    return rank_of_vectors(images, fld) == len(paths)


# ---------------------------------------------------------------------------
# the mapping cone
# ---------------------------------------------------------------------------


def _tag(tag: str, c: Chain) -> Chain:
    return Chain({(tag, p): v for p, v in c.items()}, c.field)


def _untag(tag: str, c: Chain) -> Chain:
    return Chain({p: v for (t, p), v in c.items() if t == tag}, c.field)


class MappingCone(ChainComplex):
    """``M(X, A)``; chains are keyed by ``("p", path)`` and ``("q", path)``."""

    def __init__(self, X: DiGraph, A, field: Field = QQ, *, decomposition: ProjectingDecomposition | None = None):
        self.X = X
        self.A = subset_of(X, A)
        self.field = field
        self.decomposition = decomposition or _decomposition(X, self.A)
        self.hat1 = HatOneComplex(X, self.A, field)
        self.rest = self.hat1.rest
        self._basis: dict = {}

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if n not in self._basis:
            ps = self.hat1.basis(n - 1) if n >= 1 else []
            self._basis[n] = [_tag("p", p) for p in ps] + [_tag("q", q) for q in self.rest.basis(n)]
        return self._basis[n]

    def split(self, c: Chain) -> tuple[Chain, Chain]:
        return _untag("p", c), _untag("q", c)

    def d(self, c: Chain) -> Chain:
        p, q = self.split(c)
        return _tag("p", -_boundary(p)) + _tag("q", _boundary(q) - p)

    def check_d_squared(self, cutoff: int) -> bool:
        return all(not self.d(self.d(b)) for n in range(2, cutoff + 1) for b in self.basis(n))


def mapping_cone(X: DiGraph, A, cutoff: int = 5, field: Field = QQ) -> MappingCone:
    """Build the cone and confirm ``∂∘∂ = 0`` through degree ``cutoff``."""
    M = MappingCone(X, A, field)
    if not M.check_d_squared(cutoff):
        raise AssertionError("mapping cone boundary does not square to zero")
    return M


def E(M: MappingCone, c: Chain) -> Chain:
    p, q = M.split(c)
    return L(M.decomposition, 0, p) + q if p else q


def E_map(X: DiGraph, A, cutoff: int = 5, field: Field = QQ) -> list[LabeledMatrix]:
    """Matrices of ``E: M_n -> Ω̂_n`` in the computed bases, for ``n <= cutoff``."""
    M = MappingCone(X, A, field)
    R = RelativeComplex(X, M.A, field)
    out = []
    for n in range(cutoff + 1):
        tgt = R.omega_hat(n)
        cols = [tgt.coordinates(E(M, b)) for b in M.basis(n)]
        entries = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
        out.append(LabeledMatrix(list(range(len(tgt))), list(range(len(cols))), entries, field))
    return out


@dataclass
class EReport:
    cutoff: int
    cone_dims: list = field(default_factory=list)
    hat_dims: list = field(default_factory=list)
    in_target: list = field(default_factory=list)
    chain_map: list = field(default_factory=list)
    bijective: list = field(default_factory=list)
    decomposed: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.in_target) and all(self.chain_map) and all(self.bijective) and all(self.decomposed)

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "ok": self.ok, "cone_dims": self.cone_dims,
                "hat_dims": self.hat_dims, "in_target": self.in_target,
                "chain_map": self.chain_map, "bijective": self.bijective,
                "decomposed": self.decomposed}


def verify_E(X: DiGraph, A, cutoff: int = 4, field: Field = QQ) -> EReport:
    """Check that ``E`` is a chain isomorphism ``M(X, A) -> Ω̂(X, A)`` in degrees ``<= cutoff``.

    Per degree: every ``E(b)`` lies in Ω̂, ``E ∂ = ∂ E`` on the cone basis,
    ``E`` is square of full rank, and every Ω̂ basis vector is solved for
    as ``L⁰(p) + q``.
    """
    M = MappingCone(X, A, field)
    R = RelativeComplex(X, M.A, field)
    rep = EReport(cutoff)
    for n in range(cutoff + 1):
        basis = M.basis(n)
        images = [E(M, b) for b in basis]
        hat = R.omega_hat(n)
        rep.cone_dims.append(len(basis))
        rep.hat_dims.append(len(hat))
        inside = True
        for img in images:
            try:
                hat.coordinates(img)
            except ValueError:
                inside = False
                break
        rep.in_target.append(inside)
        rep.chain_map.append(all(E(M, M.d(b)) == R.d(img) if n else True
                                 for b, img in zip(basis, images)))
        rk = rank_of_vectors(images, field)
        rep.bijective.append(len(basis) == len(hat) == rk)
        rep.decomposed.append(_solves(images, R.basis(n), field))
    return rep


def _solves(images: list, targets: list, fld: Field) -> bool:
    """Every target is a combination of the images."""
    idx = KeyIndex()
    cols = [idx.row(c) for c in images]
    trows = [idx.row(t) for t in targets]
    rows = [{} for _ in range(len(idx))]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return all(solve_sparse(rows, [t.get(i, 0) for i in range(len(idx))], len(cols), fld) is not None
               for t in trows)


@dataclass
class LBoundaryReport:
    cutoff: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "checked": self.checked, "ok": self.ok,
                "failures": [repr(f) for f in self.failures]}


def verify_L_boundary(X: DiGraph, A, cutoff: int = 4, field: Field = QQ) -> LBoundaryReport:
    """``∂L⁰(p) = -L⁰(∂p) - p + π(p)`` on every generator of ``Â¹_{n-1}``, ``1 <= n <= cutoff``.

    The identity is checked exactly in ``C(X)`` and again after dropping
    terms inside ``A`` (where the ``π(p)`` term disappears).
    """
    Av = subset_of(X, A)
    decomp = _decomposition(X, Av)
    hat1 = HatOneComplex(X, Av, field)
    rep = LBoundaryReport(cutoff)
    meets = lambda p: any(v not in Av for v in p)  # noqa: E731
    for n in range(1, cutoff + 1):
        for path in hat1.rest.allowed(n - 1).paths:
            if path[-1] not in hat1.level_one:
                continue
            p = Chain({path: 1}, field)
            lhs = regular_boundary(L(decomp, 0, p))
            dp = _boundary(p)
            rhs = -(L(decomp, 0, dp) if dp else dp) - p + pi_linear(decomp, p)
            rep.checked += 1
            if lhs != rhs or lhs.restrict(meets) != rhs.restrict(meets):
                rep.failures.append(path)
    return rep


# ---------------------------------------------------------------------------
# excision on pushout squares
# ---------------------------------------------------------------------------


def omega_hat_map(square: PushoutSquare, c: Chain) -> Chain:
    """Push a chain of Ω̂(X, A) into Ω̂(Y, B): apply ``g``, drop terms inside ``B``."""
    Bv = square.B_to_Y.image(square.B.vertices)
    return map_chain(square.X_to_Y, c).restrict(lambda p: any(v not in Bv for v in p))


@dataclass
class ExcisionReport:
    cutoff: int
    source_betti: list
    target_betti: list
    dims_equal: bool
    chain_iso: list
    legs: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.dims_equal and all(self.chain_iso)

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "ok": self.ok, "source_betti": self.source_betti,
                "target_betti": self.target_betti, "dims_equal": self.dims_equal,
                "chain_iso": self.chain_iso, "legs": self.legs}


def check_square(square: PushoutSquare) -> None:
    """Reject a square that does not commute or whose legs are not induced."""
    Bv = square.B_to_Y.image(square.B.vertices)
    for a in square.A.vertices:
        if square.X_to_Y(a) != square.B_to_Y(square.attaching(a)):
            raise GraphError(f"square does not commute at {a!r}")
    if len(Bv) != len(square.B):
        raise GraphError("B -> Y is not injective")


def verify_excision(square: PushoutSquare, cutoff: int = 4, field: Field = QQ) -> ExcisionReport:
    """Compare ``H(X, A)`` and ``H(Y, B)`` and test the induced Ω̂ map for being a chain isomorphism."""
    check_square(square)
    Bv = square.B_to_Y.image(square.B.vertices)
    legs = {}
    for name, G, S in (("source", square.X, square.A.vertices), ("target", square.Y, Bv)):
        v = check_cofibration(G, S)
        legs[name] = v.to_dict()["failure"]
        if not v:
            raise GraphError(f"{name} leg is not a cofibration ({v.failure.kind})")
    R = RelativeComplex(square.X, square.A.vertices, field)
    S = RelativeComplex(square.Y, Bv, field)
    hs, ht = R.homology(cutoff).betti, S.homology(cutoff).betti
    iso = []
    for n in range(cutoff + 1):
        basis = R.basis(n)
        images = [omega_hat_map(square, b) for b in basis]
        ok = len(basis) == S.dim(n) == rank_of_vectors(images, field)
        if ok:
            tgt = S.omega_hat(n)
            try:
                for img in images:
                    tgt.coordinates(img)
            except ValueError:
                ok = False
        if ok and n:
            ok = all(omega_hat_map(square, R.d(b)) == S.d(img) for b, img in zip(basis, images))
        iso.append(ok)
    return ExcisionReport(cutoff, hs, ht, hs == ht, iso, legs)


def omega_pushout_dims(square: PushoutSquare, cutoff: int = 4, field: Field = QQ) -> dict:
    """``dim Ω_n`` of ``X``, ``A``, ``B``, ``Y`` and whether ``Y = X + B - A`` holds for ``n <= cutoff``."""
    dims = {}
    for name, G in (("X", square.X), ("A", square.A), ("B", square.B), ("Y", square.Y)):
        P = PathComplex(G, field)
        dims[name] = [P.dim(n) for n in range(cutoff + 1)]
    dims["ok"] = all(dims["Y"][n] == dims["X"][n] + dims["B"][n] - dims["A"][n]
                     for n in range(cutoff + 1))
    return dims


@dataclass
class LeftProperReport:
    cutoff: int
    premise: bool
    conclusion: bool | None

    @property
    def ok(self) -> bool:
        return (not self.premise) or bool(self.conclusion)

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "premise": self.premise,
                "conclusion": self.conclusion, "ok": self.ok}


def verify_left_properness(square: PushoutSquare, cutoff: int = 4, field: Field = QQ) -> LeftProperReport:
    """If ``A -> B`` is a homology iso below ``cutoff``, so must be ``X -> Y``."""
    check_square(square)
    premise = is_homology_iso(square.attaching, cutoff, field)
    if not premise:
        return LeftProperReport(cutoff, False, None)
    return LeftProperReport(cutoff, True, is_homology_iso(square.X_to_Y, cutoff, field))


# ---------------------------------------------------------------------------
# the long exact sequence
# ---------------------------------------------------------------------------


@dataclass
class LESNode:
    name: str          # "H_n(A)", "H_n(X)" or "H_n(X,A)"
    degree: int
    dim: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.rank_in + self.rank_out == self.dim

    def to_dict(self) -> dict:
        return {"node": self.name, "degree": self.degree, "dim": self.dim,
                "rank_in": self.rank_in, "rank_out": self.rank_out,
                "composite_zero": self.composite_zero, "exact": self.exact}


@dataclass
class LESReport:
    cutoff: int
    nodes: list

    @property
    def ok(self) -> bool:
        return all(n.exact for n in self.nodes)

    def to_dict(self) -> dict:
        return {"cutoff": self.cutoff, "ok": self.ok, "nodes": [n.to_dict() for n in self.nodes]}


def verify_les(X: DiGraph, A, cutoff: int = 4, field: Field = QQ) -> LESReport:
    """Exactness of ``… -> H_n(A) -> H_n(X) -> H_n(X,A) -> H_{n-1}(A) -> …`` for ``n < cutoff``.

    Homology classes are handled through cycle bases and boundary spans in
    the common path coordinates of ``X``.  The connecting map takes a
    relative cycle (already an Ω-chain of ``X``) to its full boundary,
    which lies in Ω(A).
    """
    Av = subset_of(X, A)
    PA = PathComplex(induced_subgraph(X, Av), field)
    PX = PathComplex(X, field)
    R = RelativeComplex(X, Av, field)
    incl = lambda c: c  # noqa: E731
    trunc = R.truncate

    def conn(c: Chain) -> Chain:
        return _boundary(c)

    cx = {"A": PA, "X": PX, "XA": R}
    # node order within degree n: A -> X -> XA -> A (degree n - 1)
    def prev(kind, n):
        return {"A": ("XA", n + 1, conn), "X": ("A", n, incl), "XA": ("X", n, trunc)}[kind]

    def nxt(kind, n):
        return {"A": ("X", n, incl), "X": ("XA", n, trunc), "XA": ("A", n - 1, conn)}[kind]

    def hdim(kind, n):
        return cx[kind].betti(n) if n >= 0 else 0

    def rank_map(src, n, f, tgt, m):
        if n < 0 or m < 0:
            return 0
        return induced_rank([f(z) for z in cx[src].cycles(n)], cx[tgt].boundaries(m), field)

    def composite_zero(src, n, f, tgt, m, g, tgt2, k):
        if min(n, m, k) < 0:
            return True
        base = cx[tgt2].boundaries(k)
        r0 = rank_of_vectors(base, field)
        imgs = [g(f(z)) for z in cx[src].cycles(n)]
        return rank_of_vectors(list(base) + imgs, field) == r0

    labels = {"A": "H_{n}(A)", "X": "H_{n}(X)", "XA": "H_{n}(X,A)"}
    nodes = []
    for n in range(cutoff - 1, -1, -1):
        for kind in ("XA", "X", "A"):
            src, sn, f = prev(kind, n)
            tgt, tn, g = nxt(kind, n)
            r_in = rank_map(src, sn, f, kind, n)
            r_out = rank_map(kind, n, g, tgt, tn)
            cz = composite_zero(src, sn, f, kind, n, g, tgt, tn)
            nodes.append(LESNode(labels[kind].format(n=n), n, hdim(kind, n), r_in, r_out, cz))
    return LESReport(cutoff, nodes)


__all__ = [
    "E", "EReport", "ExcisionReport", "LBoundaryReport", "LESNode", "LESReport", "L",
    "LeftProperReport", "MappingCone", "E_map", "check_square", "complement_paths",
    "mapping_cone", "omega_hat_map", "omega_pushout_dims", "pi_linear", "verify_E",
    "verify_L_boundary", "verify_L_injective", "verify_excision", "verify_les",
    "verify_left_properness",
]
