"""Exact linear algebra over fields.

Two coefficient fields are supported: the rationals (``QQ``, backed by
:class:`fractions.Fraction`) and prime fields ``GF(p)`` (plain ints reduced
mod ``p``).  Matrices are small and very sparse in practice (boundary
matrices have at most ``n + 1`` nonzeros per column), so the elimination
core works on rows stored as ``{column: value}`` dicts.  The dense
:class:`LabeledMatrix` is the public carrier and converts on the way in.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

# When set, every rref/nullspace call re-checks rank + nullity = columns.
CHECK_INVARIANTS = os.environ.get("PATHCOF_CHECK", "") not in ("", "0")


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """A coefficient field: characteristic 0 means the rationals."""

    characteristic: int = 0

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __repr__(self) -> str:
        return self.name

    def __call__(self, value: Any):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has no image in {self.name}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def norm(self, x):
        return x if self.characteristic == 0 else x % self.characteristic

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero in " + self.name)
        if self.characteristic == 0:
            return Fraction(1) / x
        return pow(x, -1, self.characteristic)


QQ = Field(0)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def GF(p: int) -> Field:
    """The prime field with ``p`` elements; composite moduli are rejected."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime; GF(p) requires a prime modulus")
    return Field(p)


def parse_field(spec: str) -> Field:
    """Parse ``"q"`` or ``"p=<prime>"``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational", "rationals"):
        return QQ
    if spec.startswith("p="):
        try:
            p = int(spec[2:])
        except ValueError:
            raise FieldError(f"bad prime in field spec {spec!r}") from None
        return GF(p)
    raise FieldError(f"unknown field spec {spec!r} (use 'q' or 'p=<prime>')")


# ---------------------------------------------------------------------------
# sparse core
# ---------------------------------------------------------------------------

Row = dict  # column index -> nonzero field element


def _axpy(target: Row, factor, source: Row, fld: Field) -> None:
    """target -= factor * source, dropping zeros."""
    norm = fld.norm
    for c, v in source.items():
        x = norm(target.get(c, 0) - factor * v)
        if x:
            target[c] = x
        else:
            target.pop(c, None)


def echelon(rows: Iterable[Row], fld: Field = QQ) -> dict[int, Row]:
    """Reduce rows to echelon form keyed by pivot column.

    Each stored row has its pivot (its smallest column) equal to 1.  Rows
    are reduced only on their leading term, which is enough for rank and
    cheap on sparse input.
    """
    pivots: dict[int, Row] = {}
    for r in rows:
        row = {c: fld.norm(v) for c, v in r.items()}
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = fld.inv(row[lead])
                if inv != 1:
                    row = {c: fld.norm(v * inv) for c, v in row.items()}
                pivots[lead] = row
                break
            _axpy(row, row[lead], prow, fld)
    return pivots


def rref_sparse(rows: Iterable[Row], fld: Field = QQ) -> dict[int, Row]:
    """Reduced row echelon form, keyed by pivot column (ascending).

    The pivot set is the set of leading positions of the row space, so the
    result is the canonical RREF whatever order the rows arrive in.
    """
    pivots = echelon(rows, fld)
    order = sorted(pivots)
    # back-substitute from the right so every pivot column is cleared
    for i in range(len(order) - 1, -1, -1):
        row = pivots[order[i]]
        for c in order[i + 1:]:
            v = row.get(c)
            if v:
                _axpy(row, v, pivots[c], fld)
    return {c: pivots[c] for c in order}


def rank_sparse(rows: Iterable[Row], fld: Field = QQ) -> int:
    return len(echelon(rows, fld))


def nullspace_sparse(rows: Iterable[Row], ncols: int, fld: Field = QQ) -> list[Row]:
    """Basis of ``{v : M v = 0}`` for the matrix with the given rows.

    One vector per free column ``f``: it has a 1 at ``f``, zeros at every
    other free column, and is ordered by ``f``.
    """
    return nullspace_with_free(rows, ncols, fld)[0]


def nullspace_with_free(rows: Iterable[Row], ncols: int, fld: Field = QQ) -> tuple[list[Row], list[int]]:
    """Like :func:`nullspace_sparse`, also returning the free columns."""
    red = rref_sparse(rows, fld)
    free = [c for c in range(ncols) if c not in red]
    # column -> [(pivot, value)] so each free column is read off directly
    by_col: dict[int, list] = {}
    for p, row in red.items():
        for c, v in row.items():
            if c != p:
                by_col.setdefault(c, []).append((p, v))
    one = fld.one()
    basis = []
    for f in free:
        vec = {f: one}
        for p, v in by_col.get(f, ()):
            vec[p] = fld.norm(-v)
        basis.append(vec)
    if CHECK_INVARIANTS:
        assert len(red) + len(basis) == ncols
    return basis, free


def solve_sparse(rows: Sequence[Row], rhs: Sequence, ncols: int, fld: Field = QQ):
    """One solution ``x`` (as a sparse dict) of ``M x = b``, or ``None``."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        b = fld.norm(b)
        if b:
            row[ncols] = b
        aug.append(row)
    red = rref_sparse(aug, fld)
    if ncols in red:
        return None
    return {p: row[ncols] for p, row in red.items() if ncols in row}


class KeyIndex:
    """Assigns dense column indices to arbitrary hashable keys on first sight."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.index: dict = {}
        self.keys: list = []
        for k in keys:
            self(k)

    def __call__(self, key):
        i = self.index.get(key)
        if i is None:
            i = self.index[key] = len(self.keys)
            self.keys.append(key)
        return i

    def row(self, vec: dict) -> Row:
        return {self(k): v for k, v in vec.items()}

    def __len__(self):
        return len(self.keys)


def rank_of_vectors(vectors: Iterable[dict], fld: Field = QQ) -> int:
    """Rank of a family of sparse vectors keyed by arbitrary hashables."""
    idx = KeyIndex()
    return rank_sparse((idx.row(v) for v in vectors), fld)


# ---------------------------------------------------------------------------
# labeled dense matrices
# ---------------------------------------------------------------------------


@dataclass
class LabeledMatrix:
    """Dense matrix whose rows and columns are indexed by basis labels."""

    row_labels: list
    col_labels: list
    entries: list  # row-major, list of lists
    field: Field = QQ

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row count does not match row labels")
        for r in self.entries:
            if len(r) != len(self.col_labels):
                raise ValueError("column count does not match column labels")
        if len(set(self.row_labels)) != len(self.row_labels):
            raise ValueError("duplicate row labels")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise ValueError("duplicate column labels")
        self.entries = [[self.field(x) for x in r] for r in self.entries]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Row], row_labels, col_labels, fld: Field = QQ):
        n = len(col_labels)
        dense = [[0] * n for _ in rows]
        for i, r in enumerate(rows):
            for c, v in r.items():
                dense[i][c] = v
        return cls(list(row_labels), list(col_labels), dense, fld)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], row_labels, col_labels, fld: Field = QQ):
        """Build from sparse columns keyed by row label."""
        pos = {lab: i for i, lab in enumerate(row_labels)}
        dense = [[0] * len(columns) for _ in row_labels]
        for j, col in enumerate(columns):
            for lab, v in col.items():
                dense[pos[lab]][j] = v
        return cls(list(row_labels), list(col_labels), dense, fld)

    def sparse_rows(self) -> list[Row]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.entries]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def __matmul__(self, other: "LabeledMatrix") -> "LabeledMatrix":
        if self.col_labels != other.row_labels:
            raise ValueError("inner labels do not match")
        n = len(other.col_labels)
        out = []
        for r in self.entries:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return LabeledMatrix(self.row_labels, other.col_labels, out, self.field)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("," + ",".join(_csv_label(c) for c in self.col_labels) + "\n")
        for lab, r in zip(self.row_labels, self.entries):
            buf.write(_csv_label(lab) + "," + ",".join(str(x) for x in r) + "\n")
        return buf.getvalue()


def _csv_label(lab) -> str:
    if isinstance(lab, tuple):
        lab = "".join(map(str, lab)) if all(len(str(v)) == 1 for v in lab) else "-".join(map(str, lab))
    s = str(lab)
    return f'"{s}"' if "," in s else s


def rref(M: LabeledMatrix) -> tuple[LabeledMatrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    red = rref_sparse(M.sparse_rows(), M.field)
    rows = list(red.values())
    nz = len(M.row_labels) - len(rows)
    rows += [{} for _ in range(nz)]
    out = LabeledMatrix.from_sparse_rows(
        rows, list(range(len(rows))), M.col_labels, M.field)
    return out, list(red)


def rank(M: LabeledMatrix) -> int:
    return rank_sparse(M.sparse_rows(), M.field)


def nullspace_basis(M: LabeledMatrix) -> list[list]:
    """Dense basis vectors of the kernel of ``M`` (one per free column)."""
    n = len(M.col_labels)
    out = []
    for vec in nullspace_sparse(M.sparse_rows(), n, M.field):
        dense = [M.field.zero()] * n
        for c, v in vec.items():
            dense[c] = v
        out.append(dense)
    return out


def solve(M: LabeledMatrix, b: Sequence):
    """Some ``x`` with ``M x = b`` as a dense list, or ``None`` if inconsistent."""
    if len(b) != len(M.row_labels):
        raise ValueError(f"right-hand side has length {len(b)}, expected {len(M.row_labels)}")
    n = len(M.col_labels)
    sol = solve_sparse(M.sparse_rows(), [M.field(x) for x in b], n, M.field)
    if sol is None:
        return None
    return [sol.get(j, M.field.zero()) for j in range(n)]
