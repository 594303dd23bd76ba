"""Path chains, the Ω complex of a digraph, and (relative) path homology.

Chains are dicts from vertex tuples to field elements.  A tuple with two
equal consecutive vertices is zero in the chain group, so such tuples are
never stored.  All Ω-type subspaces (Ω, Ω̂, Ω̂¹) are computed as kernels of
"boundary must stay allowed" constraint matrices and returned as
:class:`OmegaBasis` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .digraph import DiGraph, GraphError, GraphMap, complement, heights, label_str
from .linalg import QQ, Field, KeyIndex, LabeledMatrix, nullspace_sparse, nullspace_with_free, rank_of_vectors


def is_regular(path: Sequence) -> bool:
    return all(path[i] != path[i + 1] for i in range(len(path) - 1))


def is_allowed(X: DiGraph, path: Sequence) -> bool:
    return all((path[i], path[i + 1]) in X.edges for i in range(len(path) - 1))


class Chain(dict):
    """A finite linear combination of regular paths.

    Zero coefficients and degenerate paths are never stored.
    """

    __slots__ = ("field",)

    def __init__(self, terms=(), field: Field = QQ):
        super().__init__()
        self.field = field
        items = terms.items() if isinstance(terms, dict) else terms
        for p, c in items:
            self.add_term(p, c)

    def add_term(self, path, coeff) -> None:
        if isinstance(path, tuple) and not is_regular(path):
            return
        v = self.field.norm(self.get(path, 0) + coeff)
        if v:
            self[path] = v
        else:
            self.pop(path, None)

    @property
    def degree(self):
        for p in self:
            return len(p) - 1
        return None

    def copy(self) -> "Chain":
        return Chain(self, self.field)

    def __add__(self, other: dict) -> "Chain":
        out = self.copy()
        for p, c in other.items():
            out.add_term(p, c)
        return out

    def __sub__(self, other: dict) -> "Chain":
        out = self.copy()
        for p, c in other.items():
            out.add_term(p, -c)
        return out

    def __neg__(self) -> "Chain":
        return Chain({p: -c for p, c in self.items()}, self.field)

    def __mul__(self, scalar) -> "Chain":
        return Chain({p: scalar * c for p, c in self.items()}, self.field)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self:
            return "0"
        parts = []
        for p, c in self.items():
            name = "".join(map(label_str, p)) if all(len(label_str(v)) == 1 for v in p) else "·".join(map(label_str, p))
            parts.append(f"{c}*{name}")
        return " + ".join(parts)

    def restrict(self, keep: Callable) -> "Chain":
        return Chain({p: c for p, c in self.items() if keep(p)}, self.field)


def regular_boundary(c: Chain) -> Chain:
    """Alternating sum of vertex deletions; faces that become degenerate vanish."""
    out = Chain(field=c.field)
    for path, coeff in c.items():
        n = len(path) - 1
        if n < 1:
            raise ValueError("boundary of a degree-0 chain is not defined here")
        for i in range(n + 1):
            if 0 < i < n and path[i - 1] == path[i + 1]:
                continue
            out.add_term(path[:i] + path[i + 1:], coeff if i % 2 == 0 else -coeff)
    return out


def map_chain(f: GraphMap, c: Chain) -> Chain:
    """Push a chain forward along a digraph map (degenerate images vanish)."""
    out = Chain(field=c.field)
    for path, coeff in c.items():
        out.add_term(tuple(f(v) for v in path), coeff)
    return out


# ---------------------------------------------------------------------------
# bases
# ---------------------------------------------------------------------------


@dataclass
class AllowedBasis:
    """Allowed regular paths of one degree, in lexicographic vertex order."""

    degree: int
    paths: list

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.paths)}

    def __len__(self):
        return len(self.paths)

    def __contains__(self, p):
        return p in self.index


def allowed_paths(X: DiGraph, n: int) -> AllowedBasis:
    """All walks of ``n`` genuine edges, ordered lexicographically."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    out = [(v,) for v in X.vertices]
    for _ in range(n):
        out = [p + (w,) for p in out for w in X.succ(p[-1])]
    return AllowedBasis(n, out)


@dataclass
class OmegaBasis:
    """A basis of a subspace of chains, stored over an ambient path list.

    ``vectors[k]`` maps ambient indices to coefficients.  It has a 1 at
    ``lead[k]`` and a 0 at every other lead position, which makes reading
    off coordinates trivial.
    """

    degree: int
    paths: list
    vectors: list
    lead: list
    field: Field = QQ

    def __len__(self):
        return len(self.vectors)

    def chain(self, k: int) -> Chain:
        return Chain({self.paths[i]: v for i, v in self.vectors[k].items()}, self.field)

    def chains(self) -> list[Chain]:
        return [self.chain(k) for k in range(len(self.vectors))]

    def coordinates(self, c: dict) -> list:
        """Coordinates of ``c`` in this basis; ``ValueError`` if ``c`` is outside the span."""
        index = getattr(self, "_index", None)
        if index is None:
            index = self._index = {p: i for i, p in enumerate(self.paths)}
        zero = self.field.zero()
        coords = [zero] * len(self.vectors)
        for k, i in enumerate(self.lead):
            coords[k] = self.field(c.get(self.paths[i], 0))
        recon = Chain(field=self.field)
        for k, a in enumerate(coords):
            if a:
                for i, v in self.vectors[k].items():
                    recon.add_term(self.paths[i], a * v)
        if recon != Chain(c, self.field):
            raise ValueError("chain is not in the span of this basis")
        return coords


def kernel_basis(degree: int, paths: list, violations: Callable, fld: Field = QQ) -> OmegaBasis:
    """Combinations of ``paths`` whose boundary terms flagged by ``violations`` cancel.

    ``violations(path)`` yields ``(term, coeff)`` pairs of boundary terms that
    must vanish in any admissible combination.
    """
    rows_by_term: dict = {}
    for j, p in enumerate(paths):
        for term, coeff in violations(p):
            row = rows_by_term.setdefault(term, {})
            v = fld.norm(row.get(j, 0) + coeff)
            if v:
                row[j] = v
            else:
                row.pop(j)
    vectors, lead = nullspace_with_free(rows_by_term.values(), len(paths), fld)
    return OmegaBasis(degree, paths, vectors, lead, fld)


def _faces(path):
    n = len(path) - 1
    for i in range(n + 1):
        if 0 < i < n and path[i - 1] == path[i + 1]:
            continue
        yield path[:i] + path[i + 1:], (1 if i % 2 == 0 else -1)


# ---------------------------------------------------------------------------
# chain complexes and homology
# ---------------------------------------------------------------------------


@dataclass
class HomologyTable:
    """Per-degree data for degrees ``0..cutoff-1``."""

    cutoff: int
    omega_dims: list
    ranks: list      # rank of the boundary out of degree n (0 for n = 0)
    nullities: list
    betti: list
    field: Field = QQ
    generators: dict | None = dc_field(default=None)

    def to_dict(self) -> dict:
        d = {"cutoff": self.cutoff, "field": self.field.name,
             "omega_dims": list(self.omega_dims), "ranks": list(self.ranks),
             "nullities": list(self.nullities), "betti": list(self.betti)}
        if self.generators is not None:
            d["generators"] = {str(n): [_chain_json(c) for c in gens]
                               for n, gens in self.generators.items()}
        return d

    def to_text(self) -> str:
        lines = [f"{'n':>3} {'dim Ω':>7} {'rank ∂':>7} {'null ∂':>7} {'H':>4}"]
        for n in range(self.cutoff):
            lines.append(f"{n:>3} {self.omega_dims[n]:>7} {self.ranks[n]:>7} "
                         f"{self.nullities[n]:>7} {self.betti[n]:>4}")
        return "\n".join(lines)


def _chain_json(c: Chain) -> list:
    return [[[label_str(v) for v in p], str(x)] for p, x in c.items()]


class ChainComplex:
    """A complex given degree-wise by a basis of chains and a boundary.

    Subclasses supply :meth:`basis` and :meth:`d`.  Homology is computed by
    rank arithmetic on boundary images expressed in ambient coordinates, so
    no change of basis is ever needed.
    """

    field: Field = QQ

    def basis(self, n: int) -> list:
        raise NotImplementedError

    def d(self, c: Chain) -> Chain:
        raise NotImplementedError

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def boundary_images(self, n: int) -> list:
        if n <= 0:
            return []
        cache = self.__dict__.setdefault("_bimg", {})
        if n not in cache:
            cache[n] = [self.d(b) for b in self.basis(n)]
        return cache[n]

    def boundary_rank(self, n: int) -> int:
        if n <= 0:
            return 0
        cache = self.__dict__.setdefault("_brank", {})
        if n not in cache:
            cache[n] = rank_of_vectors(self.boundary_images(n), self.field)
        return cache[n]

    def cycles(self, n: int) -> list:
        """A basis of the cycles in degree ``n``."""
        basis = self.basis(n)
        if n <= 0:
            return list(basis)
        idx = KeyIndex()
        rows: dict = {}
        for j, img in enumerate(self.boundary_images(n)):
            for term, v in img.items():
                rows.setdefault(idx(term), {})[j] = v
        out = []
        for combo in nullspace_sparse(rows.values(), len(basis), self.field):
            c = Chain(field=self.field)
            for j, a in combo.items():
                for p, v in basis[j].items():
                    c.add_term(p, a * v)
            out.append(c)
        return out

    def boundaries(self, n: int) -> list:
        """A spanning set of the boundaries in degree ``n``."""
        return self.boundary_images(n + 1)

    def betti(self, n: int) -> int:
        return self.dim(n) - self.boundary_rank(n) - self.boundary_rank(n + 1)

    def homology(self, cutoff: int = 5, generators: bool = False) -> HomologyTable:
        if cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        dims = [self.dim(n) for n in range(cutoff)]
        ranks = [self.boundary_rank(n) for n in range(cutoff + 1)]
        nullities = [dims[n] - ranks[n] for n in range(cutoff)]
        betti = [nullities[n] - ranks[n + 1] for n in range(cutoff)]
        gens = None
        if generators:
            gens = {n: self.homology_generators(n) for n in range(cutoff)}
        return HomologyTable(cutoff, dims, ranks[:cutoff], nullities, betti, self.field, gens)

    def homology_generators(self, n: int) -> list:
        """Cycles whose classes form a basis of homology in degree ``n``."""
        chosen = list(self.boundaries(n))
        r = rank_of_vectors(chosen, self.field)
        out = []
        for z in self.cycles(n):
            r2 = rank_of_vectors(chosen + [z], self.field)
            if r2 > r:
                chosen.append(z)
                out.append(z)
                r = r2
        return out


def induced_rank(cycle_images: list, target_boundaries: list, fld: Field = QQ) -> int:
    """Rank of a map on homology, given images of a cycle basis."""
    base = rank_of_vectors(target_boundaries, fld)
    return rank_of_vectors(list(target_boundaries) + list(cycle_images), fld) - base


class PathComplex(ChainComplex):
    """The Ω complex of a digraph, built lazily degree by degree."""

    def __init__(self, X: DiGraph, field: Field = QQ):
        self.X = X
        self.field = field
        self._allowed: dict = {}
        self._omega: dict = {}
        self._basis: dict = {}

    def allowed(self, n: int) -> AllowedBasis:
        if n not in self._allowed:
            if n > 0 and (n - 1) in self._allowed:
                prev = self._allowed[n - 1].paths
                X = self.X
                self._allowed[n] = AllowedBasis(n, [p + (w,) for p in prev for w in X.succ(p[-1])])
            else:
                self._allowed[n] = allowed_paths(self.X, n)
        return self._allowed[n]

    def omega(self, n: int) -> OmegaBasis:
        if n not in self._omega:
            paths = self.allowed(n).paths
            if n == 0:
                one = self.field.one()
                self._omega[n] = OmegaBasis(0, paths, [{i: one} for i in range(len(paths))],
                                            list(range(len(paths))), self.field)
            else:
                edges = self.X.edges

                def violations(p):
                    for face, s in _faces(p):
                        if not all((face[i], face[i + 1]) in edges for i in range(len(face) - 1)):
                            yield face, s

                self._omega[n] = kernel_basis(n, paths, violations, self.field)
        return self._omega[n]

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if n not in self._basis:
            self._basis[n] = self.omega(n).chains()
        return self._basis[n]

    def d(self, c: Chain) -> Chain:
        return regular_boundary(c)


class RelativeComplex(ChainComplex):
    """The complement complex Ω̂(X, A) of an induced subgraph with no edges out.

    Degree ``n`` consists of Ω-chains of ``X`` supported on paths meeting
    ``X - A``; the boundary drops every term lying entirely in ``A``.
    """

    def __init__(self, X: DiGraph, A, field: Field = QQ, *, check: bool = True):
        from .cofib import find_edge_out, subset_of

        self.X = X
        self.A = subset_of(X, A)
        self.field = field
        if check:
            e = find_edge_out(X, self.A)
            if e is not None:
                raise GraphError(f"edge {e[0]!r}->{e[1]!r} leaves A; relative homology needs no edges out")
        self.ambient = PathComplex(X, field)
        self._hat: dict = {}
        self._basis: dict = {}

    def meets_complement(self, path) -> bool:
        return any(v not in self.A for v in path)

    def omega_hat(self, n: int) -> OmegaBasis:
        if n not in self._hat:
            paths = [p for p in self.ambient.allowed(n).paths if self.meets_complement(p)]
            if n == 0:
                one = self.field.one()
                self._hat[n] = OmegaBasis(0, paths, [{i: one} for i in range(len(paths))],
                                          list(range(len(paths))), self.field)
            else:
                edges = self.X.edges

                def violations(p):
                    for face, s in _faces(p):
                        if not all((face[i], face[i + 1]) in edges for i in range(len(face) - 1)):
                            yield face, s

                self._hat[n] = kernel_basis(n, paths, violations, self.field)
        return self._hat[n]

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if n not in self._basis:
            self._basis[n] = self.omega_hat(n).chains()
        return self._basis[n]

    def truncate(self, c: Chain) -> Chain:
        return c.restrict(self.meets_complement)

    def d(self, c: Chain) -> Chain:
        return self.truncate(regular_boundary(c))


class HatOneComplex(ChainComplex):
    """Ω̂¹(X, A): allowed paths of ``X - A`` ending at height 1, closed under ∂."""

    def __init__(self, X: DiGraph, A, field: Field = QQ):
        from .cofib import subset_of

        self.X = X
        self.A = subset_of(X, A)
        self.field = field
        h = heights(X, self.A)
        self.level_one = frozenset(v for v in X.vertices if h[v] == 1)
        self.rest = PathComplex(complement(X, self.A), field)
        self._hat: dict = {}
        self._basis: dict = {}

    def omega_hat1(self, n: int) -> OmegaBasis:
        if n not in self._hat:
            ones = self.level_one
            paths = [p for p in self.rest.allowed(n).paths if p[-1] in ones]
            if n == 0:
                one = self.field.one()
                self._hat[n] = OmegaBasis(0, paths, [{i: one} for i in range(len(paths))],
                                          list(range(len(paths))), self.field)
            else:
                edges = self.X.edges

                def violations(p):
                    for face, s in _faces(p):
                        if face[-1] not in ones or not all(
                                (face[i], face[i + 1]) in edges for i in range(len(face) - 1)):
                            yield face, s

                self._hat[n] = kernel_basis(n, paths, violations, self.field)
        return self._hat[n]

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if n not in self._basis:
            self._basis[n] = self.omega_hat1(n).chains()
        return self._basis[n]

    def d(self, c: Chain) -> Chain:
        return regular_boundary(c)


# ---------------------------------------------------------------------------
# functional front end
# ---------------------------------------------------------------------------


def omega_basis(X: DiGraph, n: int, field: Field = QQ) -> OmegaBasis:
    return PathComplex(X, field).omega(n)


def omega_boundary_matrix(X: DiGraph, n: int, field: Field = QQ, *, complex_: PathComplex | None = None) -> LabeledMatrix:
    """Matrix of ∂: Ω_n -> Ω_{n-1} in the computed Ω bases.

    Columns are indexed by Ω_n basis positions, rows by Ω_{n-1} positions.
    """
    if n < 1:
        raise ValueError("boundary matrix needs n >= 1")
    P = complex_ or PathComplex(X, field)
    src, tgt = P.omega(n), P.omega(n - 1)
    cols = []
    for c in src.chains():
        try:
            cols.append(tgt.coordinates(regular_boundary(c)))
        except ValueError:  # pragma: no cover - would mean Ω is not a complex
            raise AssertionError("boundary of an Ω basis vector left Ω") from None
    entries = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
    return LabeledMatrix(list(range(len(tgt))), list(range(len(src))), entries, field)


def homology(X: DiGraph, cutoff: int = 5, field: Field = QQ, *, generators: bool = False) -> HomologyTable:
    return PathComplex(X, field).homology(cutoff, generators=generators)


def omega_hat_basis(X: DiGraph, A, n: int, field: Field = QQ) -> OmegaBasis:
    return RelativeComplex(X, A, field).omega_hat(n)


def omega_hat1_basis(X: DiGraph, A, n: int, field: Field = QQ) -> OmegaBasis:
    from .cofib import find_edge_out, subset_of

    if find_edge_out(X, subset_of(X, A)) is not None:
        raise GraphError("Ω̂¹ needs an inclusion with no edges out")
    return HatOneComplex(X, A, field).omega_hat1(n)


def relative_homology(X: DiGraph, A, cutoff: int = 5, field: Field = QQ) -> HomologyTable:
    """Homology of Ω(X)/Ω(A), computed through the complement complex."""
    return RelativeComplex(X, A, field).homology(cutoff)


def homology_map_ranks(f: GraphMap, cutoff: int = 5, field: Field = QQ,
                       source: PathComplex | None = None, target: PathComplex | None = None) -> list:
    """Rank of ``f_*: H_n(X) -> H_n(Y)`` for ``n < cutoff``."""
    S = source or PathComplex(f.domain, field)
    T = target or PathComplex(f.codomain, field)
    return [induced_rank([map_chain(f, z) for z in S.cycles(n)], T.boundaries(n), field)
            for n in range(cutoff)]


def is_homology_iso(f: GraphMap, cutoff: int = 5, field: Field = QQ) -> bool:
    """Whether ``f`` induces isomorphisms on ``H_n`` for every ``n < cutoff``."""
    S = PathComplex(f.domain, field)
    T = PathComplex(f.codomain, field)
    ranks = homology_map_ranks(f, cutoff, field, S, T)
    return all(r == S.betti(n) == T.betti(n) for n, r in enumerate(ranks))
