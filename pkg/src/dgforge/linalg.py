"""Exact dense linear algebra over QQ and GF(p).

Conventions used throughout dg-forge:

* vectors are coordinate rows (tuples of scalars);
* linear maps are matrices acting on the right of row vectors, so the
  image of the i-th basis vector is row i of the matrix;
* subspaces are stored by their reduced row echelon basis, which is
  canonical -- two subspaces are equal iff their basis matrices are
  identical.

Over GF(p) the elimination work is delegated to the mod-p kernels
(numba or numpy backend, see fpkernels); over QQ everything runs on
`fractions.Fraction`.  Both paths implement the same pivoting rule, so
results are deterministic and backend-independent.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import fpkernels
from .errors import DimMismatch, NoSolution
from .fields import Field, PrimeField, same_field


class Mat:
    """Immutable exact matrix.  `rows` is a tuple of tuples of scalars."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            ncols_found = len(rows[0])
            if any(len(r) != ncols_found for r in rows):
                raise DimMismatch("ragged rows")
            if ncols is not None and ncols != ncols_found:
                raise DimMismatch(f"ncols {ncols} != {ncols_found}")
            ncols = ncols_found
        elif ncols is None:
            raise DimMismatch("empty matrix needs explicit ncols")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_parsed(cls, field: Field, rows, ncols: int | None = None) -> "Mat":
        return cls(field, [[field.parse(x) for x in r] for r in rows], ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"Mat({self.field!r}, {[list(r) for r in self.rows]!r})"

    def __add__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimMismatch("matrix addition shape mismatch")
        add = f.add
        return Mat(
            f,
            [
                [add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimMismatch("matrix subtraction shape mismatch")
        sub = f.sub
        return Mat(
            f,
            [
                [sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def scale(self, c) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, [[mul(c, x) for x in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        f = same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimMismatch(f"matmul {self.ncols} vs {other.nrows}")
        if isinstance(f, PrimeField) and self.nrows and self.ncols and other.ncols:
            prod = fpkernels.matmul_mod(_to_np(self), _to_np(other), f.p)
            return _from_np(f, prod)
        add, mul, z = f.add, f.mul, f.zero
        out = []
        bt = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = z
                for a, b in zip(ra, cb):
                    acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(f, out, other.ncols)

    def transpose(self) -> "Mat":
        if not self.rows:
            return Mat(self.field, [() for _ in range(self.ncols)], 0)
        return Mat(self.field, list(zip(*self.rows)), self.nrows)

    def stack(self, other: "Mat") -> "Mat":
        same_field(self.field, other.field)
        if self.ncols != other.ncols:
            raise DimMismatch("stack needs equal ncols")
        return Mat(self.field, self.rows + other.rows, self.ncols)

    def hstack(self, other: "Mat") -> "Mat":
        same_field(self.field, other.field)
        if self.nrows != other.nrows:
            raise DimMismatch("hstack needs equal nrows")
        return Mat(
            self.field,
            [ra + rb for ra, rb in zip(self.rows, other.rows)],
            self.ncols + other.ncols,
        )

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)


def _to_np(m: Mat) -> np.ndarray:
    return np.array([[int(x) for x in r] for r in m.rows], dtype=np.int64).reshape(
        m.nrows, m.ncols
    )


def _from_np(field: Field, a: np.ndarray) -> Mat:
    return Mat(field, [[int(x) for x in row] for row in a], a.shape[1])


def vec_is_zero(field: Field, v: Sequence) -> bool:
    z = field.zero
    return all(x == z for x in v)


def vec_add(field: Field, u, v):
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vec_sub(field: Field, u, v):
    return tuple(field.sub(a, b) for a, b in zip(u, v))

def vec_scale(field: Field, c, v):
    return tuple(field.mul(c, x) for x in v)


def apply_row(field: Field, v: Sequence, m: Mat):
    """Row vector times matrix: the action of the operator m on v."""
    if len(v) != m.nrows:
        raise DimMismatch(f"apply_row {len(v)} vs {m.nrows}")
    z, add, mul = field.zero, field.add, field.mul
    out = [z] * m.ncols
    for c, row in zip(v, m.rows):
        if c != z:
            for j, x in enumerate(row):
                out[j] = add(out[j], mul(c, x))
    return tuple(out)


def _rref_generic(field: Field, rows: list[list]):
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rows = [list(r) for r in rows]
    z = field.zero
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = -1
        for row in range(rank, nrows):
            if rows[row][col] != z:
                sel = row
                break
        if sel < 0:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        iv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(iv, x) for x in rows[rank]]
        for row in range(nrows):
            if row != rank and rows[row][col] != z:
                f = rows[row][col]
                rows[row] = [
                    field.sub(a, field.mul(f, b)) for a, b in zip(rows[row], rows[rank])
                ]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rows, pivots, rank


def rref(m: Mat):
    """Reduced row echelon form with zero rows dropped.

    Returns (r, pivots): r is a Mat whose rows are the nonzero RREF rows,
    pivots the tuple of pivot column indices.
    """
    f = m.field
    if isinstance(f, PrimeField) and m.nrows:
        arr, piv, rank = fpkernels.rref_mod(_to_np(m), f.p)
        return _from_np(f, arr[:rank]), tuple(int(c) for c in piv[:rank])
    rows, pivots, rank = _rref_generic(f, [list(r) for r in m.rows])
    return Mat(f, rows[:rank], m.ncols), tuple(pivots)


def solve_right(a: Mat, b: Mat) -> Mat:
    """Solve a @ x = b (column convention) for the unique solution with all
    free variables set to zero.  Raises NoSolution if inconsistent."""
    f = same_field(a.field, b.field)
    if a.nrows != b.nrows:
        raise DimMismatch(f"solve_right {a.nrows} vs {b.nrows}")
    aug = a.hstack(b)
    r, pivots = rref(aug)
    n = a.ncols
    for p in pivots:
        if p >= n:
            raise NoSolution("inconsistent linear system")
    z = f.zero
    x = [[z] * b.ncols for _ in range(n)]
    for i, p in enumerate(pivots):
        x[p] = list(r.rows[i][n:])
    return Mat(f, x, b.ncols)


def solve_linear(a: Mat, b: Sequence):
    """Solve a @ x = b for a single right-hand-side vector (deterministic:
    free variables zero).  Returns a tuple, or raises NoSolution."""
    bm = Mat(a.field, [(x,) for x in b], 1)
    x = solve_right(a, bm)
    return tuple(r[0] for r in x.rows)


def right_nullspace(m: Mat) -> Mat:
    """Basis (as rows) of {x : m @ x = 0}, canonical order by free column."""
    f = m.field
    r, pivots = rref(m)
    n = m.ncols
    free = [j for j in range(n) if j not in pivots]
    z, o = f.zero, f.one
    rows = []
    for j in free:
        v = [z] * n
        v[j] = o
        for i, p in enumerate(pivots):
            v[p] = f.neg(r.rows[i][j])
        rows.append(v)
    return Mat(f, rows, n)


def left_nullspace(m: Mat) -> Mat:
    """Basis (as rows) of {v : v @ m = 0}."""
    return right_nullspace(m.transpose())


class Subspace:
    """Subspace of row vectors in field**ambient, stored by its RREF basis.

    Equality and hashing use the canonical basis matrix, so Subspace values
    can serve as dict keys when deduplicating enumerated lattices.
    """

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, basis: Mat, pivots: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, field: Field, ambient: int, vectors) -> "Subspace":
        m = Mat(field, list(vectors), ambient)
        r, pivots = rref(m)
        return cls(field, ambient, r, pivots)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, Mat(field, [], ambient), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(
            field, ambient, Mat.identity(field, ambient), tuple(range(ambient))
        )

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def reduce_vector(self, v: Sequence):
        """Residual of v after eliminating this subspace's pivots; zero iff
        v belongs to the subspace."""
        f = self.field
        v = list(v)
        if len(v) != self.ambient:
            raise DimMismatch("vector/ambient mismatch")
        for i, p in enumerate(self.pivots):
            c = v[p]
            if c != f.zero:
                row = self.basis.rows[i]
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v: Sequence) -> bool:
        return vec_is_zero(self.field, self.reduce_vector(v))

    def coords_of(self, v: Sequence):
        """Coefficients of v in the RREF basis, or None if v is outside."""
        if not self.contains_vector(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(r) for r in other.basis.rows)

    def _check_compatible(self, other: "Subspace"):
        same_field(self.field, other.field)
        if self.ambient != other.ambient:
            raise DimMismatch("ambient mismatch")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(
            self.field, self.ambient, self.basis.rows + other.basis.rows
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: row reduce [[A A],[B 0]]; rows with zero left half
        carry an intersection basis in their right half."""
        self._check_compatible(other)
        f, n = self.field, self.ambient
        z = f.zero
        rows = [list(r) + list(r) for r in self.basis.rows]
        rows += [list(r) + [z] * n for r in other.basis.rows]
        if not rows:
            return Subspace.zero(f, n)
        r, _ = rref(Mat(f, rows, 2 * n))
        inter = [
            row[n:]
            for row in r.rows
            if all(x == z for x in row[:n])
        ]
        return Subspace.from_vectors(f, n, inter)

    def quotient_basis(self):
        """Standard basis vectors completing this subspace to the ambient
        space (the non-pivot coordinates), as a tuple of row vectors."""
        f, n = self.field, self.ambient
        z, o = f.zero, f.one
        out = []
        for j in range(n):
            if j not in self.pivots:
                v = [z] * n
                v[j] = o
                out.append(tuple(v))
        return tuple(out)

    def membership_matrix(self) -> Mat:
        """Matrix K with v in W  iff  v @ K = 0 (columns span the right
        kernel of the basis)."""
        return right_nullspace(self.basis).transpose()

    def image(self, op: Mat) -> "Subspace":
        """Image of this subspace under the row-action operator op."""
        if op.nrows != self.ambient:
            raise DimMismatch("operator/ambient mismatch")
        if self.dim == 0:
            return Subspace.zero(self.field, op.ncols)
        return Subspace.from_vectors(
            self.field, op.ncols, (self.basis @ op).rows
        )

    def preimage(self, op: Mat) -> "Subspace":
        """{v : v @ op in self}; op maps an n1-dim space into this ambient."""
        if op.ncols != self.ambient:
            raise DimMismatch("operator/ambient mismatch")
        k = self.membership_matrix()
        cond = op @ k
        return Subspace.from_vectors(
            self.field, op.nrows, left_nullspace(cond).rows
        )
