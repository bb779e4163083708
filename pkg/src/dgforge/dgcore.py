"""Finite-dimensional differential graded algebras over an exact field.

An algebra is given by structure constants on a homogeneous basis, a unit
vector, an integer degree per basis element, and a differential of degree +1
satisfying d**2 = 0 and the Koszul-signed Leibniz rule

    d(a*b) = d(a)*b + (-1)**|a| * a*d(b).

Operators follow the row convention of `linalg`: the matrix of a linear map
has the image of the i-th basis vector in row i.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimMismatch, NoSolution, NotACycle
from .fields import Field, same_field
from .linalg import (
    Mat,
    Subspace,
    apply_row,
    left_nullspace,
    solve_linear,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)


def koszul_sign(field: Field, degree: int):
    """(-1)**degree as a field scalar."""
    return field.neg(field.one) if degree % 2 else field.one


class CheckResult:
    """Outcome of one named axiom/property check."""

    def __init__(self, name: str, ok: bool, witness=None):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        tail = "" if self.ok else f", witness={self.witness!r}"
        return f"CheckResult({self.name}: {'ok' if self.ok else 'FAIL'}{tail})"


class ValidationReport:
    def __init__(self, checks: list[CheckResult]):
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def __repr__(self):
        return f"ValidationReport(ok={self.ok}, checks={self.checks!r})"


class Element:
    """Element of a DgAlgebra, stored by its coordinate row."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "DgAlgebra", coords: Sequence):
        coords = tuple(coords)
        if len(coords) != algebra.dim:
            raise DimMismatch("coordinate length != algebra dimension")
        self.algebra = algebra
        self.coords = coords

    def _same(self, other: "Element") -> "DgAlgebra":
        if self.algebra is not other.algebra:
            raise DimMismatch("elements of different algebras")
        return self.algebra

    def __add__(self, other):
        alg = self._same(other)
        return Element(alg, vec_add(alg.field, self.coords, other.coords))

    def __sub__(self, other):
        alg = self._same(other)
        return Element(alg, vec_sub(alg.field, self.coords, other.coords))

    def __neg__(self):
        return self.scale(self.algebra.field.neg(self.algebra.field.one))

    def scale(self, c):
        return Element(self.algebra, vec_scale(self.algebra.field, c, self.coords))

    def __mul__(self, other):
        alg = self._same(other)
        return Element(alg, alg.mul_coords(self.coords, other.coords))

    def d(self):
        return Element(self.algebra, apply_row(self.algebra.field, self.coords, self.algebra.diff))

    def is_zero(self) -> bool:
        return vec_is_zero(self.algebra.field, self.coords)

    def degree(self):
        """Degree of a homogeneous element; None for 0 (member of every
        degree); ValueError if genuinely inhomogeneous."""
        degs = {
            self.algebra.degrees[i]
            for i, c in enumerate(self.coords)
            if c != self.algebra.field.zero
        }
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element, degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
            return True
        except ValueError:
            return False

    def homogeneous_components(self):
        """dict degree -> Element, omitting zero components."""
        alg = self.algebra
        z = alg.field.zero
        comps: dict[int, list] = {}
        for i, c in enumerate(self.coords):
            if c != z:
                comps.setdefault(alg.degrees[i], [z] * alg.dim)
        for n, vec in comps.items():
            for i, c in enumerate(self.coords):
                if c != z and alg.degrees[i] == n:
                    vec[i] = c
        return {n: Element(alg, v) for n, v in sorted(comps.items())}

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        alg, z = self.algebra, self.algebra.field.zero
        terms = [
            (f"{c}*" if c != alg.field.one else "") + alg.basis_names[i]
            for i, c in enumerate(self.coords)
            if c != z
        ]
        return " + ".join(terms) if terms else "0"


class DgAlgebra:
    """Finite-dimensional dg-algebra.

    mul_table[i][j] is the coordinate row of e_i * e_j; diff is the
    row-action matrix of d; degrees are per basis element.  Instances are
    treated as immutable after construction.
    """

    def __init__(
        self,
        field: Field,
        basis_names: Sequence[str],
        degrees: Sequence[int],
        mul_table,
        unit: Sequence,
        diff: Mat,
    ):
        self.field = field
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        self.degrees = tuple(int(n) for n in degrees)
        if len(self.degrees) != self.dim:
            raise DimMismatch("degrees/basis length mismatch")
        self.mul_table = tuple(
            tuple(tuple(cell) for cell in row) for row in mul_table
        )
        if len(self.mul_table) != self.dim or any(
            len(row) != self.dim or any(len(cell) != self.dim for cell in row)
            for row in self.mul_table
        ):
            raise DimMismatch("mul_table must be dim x dim x dim")
        self.unit = tuple(unit)
        if len(self.unit) != self.dim:
            raise DimMismatch("unit/basis length mismatch")
        same_field(field, diff.field)
        if diff.nrows != self.dim or diff.ncols != self.dim:
            raise DimMismatch("diff must be dim x dim")
        self.diff = diff
        self._validation: ValidationReport | None = None

    # ------------------------------------------------------------ elements

    def element(self, coords) -> Element:
        return Element(self, coords)

    def parse_element(self, coords) -> Element:
        return Element(self, [self.field.parse(c) for c in coords])

    def basis_element(self, i: int) -> Element:
        z, o = self.field.zero, self.field.one
        return Element(self, [o if j == i else z for j in range(self.dim)])

    def by_name(self, name: str) -> Element:
        return self.basis_element(self.basis_names.index(name))

    def zero(self) -> Element:
        return Element(self, [self.field.zero] * self.dim)

    def one(self) -> Element:
        return Element(self, self.unit)

    # ------------------------------------------------------------ products

    def mul_coords(self, a: Sequence, b: Sequence):
        f = self.field
        z = f.zero
        out = [z] * self.dim
        for i, ca in enumerate(a):
            if ca == z:
                continue
            row = self.mul_table[i]
            for j, cb in enumerate(b):
                if cb == z:
                    continue
                c = f.mul(ca, cb)
                cell = row[j]
                for k, ck in enumerate(cell):
                    if ck != z:
                        out[k] = f.add(out[k], f.mul(c, ck))
        return tuple(out)

    def left_mult_matrix(self, a: Sequence) -> Mat:
        """Row-action matrix of x -> a*x."""
        return Mat(
            self.field,
            [self.mul_coords(a, self.basis_element(i).coords) for i in range(self.dim)],
            self.dim,
        )

    def right_mult_matrix(self, a: Sequence) -> Mat:
        """Row-action matrix of x -> x*a."""
        return Mat(
            self.field,
            [self.mul_coords(self.basis_element(i).coords, a) for i in range(self.dim)],
            self.dim,
        )

    # ------------------------------------------------------------ grading

    def degrees_present(self):
        return sorted(set(self.degrees))

    def component_subspace(self, n: int) -> Subspace:
        vecs = [
            self.basis_element(i).coords for i in range(self.dim) if self.degrees[i] == n
        ]
        if not vecs:
            return Subspace.zero(self.field, self.dim)
        return Subspace.from_vectors(self.field, self.dim, vecs)

    def row_degree(self, v: Sequence):
        """Degree of a homogeneous coordinate row (None for zero), raising
        ValueError if the row mixes degrees."""
        return Element(self, v).degree()

    # ------------------------------------------------------------ validation

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        f, z = self.field, self.field.zero
        checks: list[CheckResult] = []

        def first_failure(name, gen):
            for witness in gen:
                checks.append(CheckResult(name, False, witness))
                return
            checks.append(CheckResult(name, True))

        def assoc_fails():
            for i in range(self.dim):
                ei = self.basis_element(i).coords
                for j in range(self.dim):
                    ij = self.mul_table[i][j]
                    ej = self.basis_element(j).coords
                    for k in range(self.dim):
                        ek = self.basis_element(k).coords
                        left = self.mul_coords(ij, ek)
                        right = self.mul_coords(ei, self.mul_coords(ej, ek))
                        if left != right:
                            yield (
                                self.basis_names[i],
                                self.basis_names[j],
                                self.basis_names[k],
                            )

        def unit_fails():
            for i in range(self.dim):
                ei = self.basis_element(i).coords
                if self.mul_coords(self.unit, ei) != ei or self.mul_coords(ei, self.unit) != ei:
                    yield self.basis_names[i]

        def grading_fails():
            for i in range(self.dim):
                for j in range(self.dim):
                    want = self.degrees[i] + self.degrees[j]
                    for k, c in enumerate(self.mul_table[i][j]):
                        if c != z and self.degrees[k] != want:
                            yield (self.basis_names[i], self.basis_names[j], self.basis_names[k])

        def diff_degree_fails():
            for i in range(self.dim):
                for k, c in enumerate(self.diff.rows[i]):
                    if c != z and self.degrees[k] != self.degrees[i] + 1:
                        yield (self.basis_names[i], self.basis_names[k])

        def d_squared_fails():
            for i in range(self.dim):
                dd = apply_row(f, self.diff.rows[i], self.diff)
                if not vec_is_zero(f, dd):
                    yield self.basis_names[i]

        def leibniz_fails():
            for i in range(self.dim):
                sign = koszul_sign(f, self.degrees[i])
                ei = self.basis_element(i).coords
                di = self.diff.rows[i]
                for j in range(self.dim):
                    ej = self.basis_element(j).coords
                    dj = self.diff.rows[j]
                    lhs = apply_row(f, self.mul_table[i][j], self.diff)
                    rhs = vec_add(
                        f,
                        self.mul_coords(di, ej),
                        vec_scale(f, sign, self.mul_coords(ei, dj)),
                    )
                    if lhs != rhs:
                        yield (self.basis_names[i], self.basis_names[j])

        first_failure("associativity", assoc_fails())
        first_failure("unit", unit_fails())
        first_failure("grading", grading_fails())
        first_failure("diff_degree", diff_degree_fails())
        first_failure("d_squared", d_squared_fails())
        first_failure("leibniz", leibniz_fails())
        report = ValidationReport(checks)
        self._validation = report
        return report

    def ensure_valid(self):
        report = self.validate()
        if not report.ok:
            raise ValueError(f"invalid dg-algebra: {report.failures()}")

    # ------------------------------------------------------------ inverses

    def invert(self, a: Element) -> Element | None:
        """Two-sided inverse of a, or None.  In finite dimension a is
        invertible iff left multiplication by a is injective."""
        m = self.left_mult_matrix(a.coords)
        try:
            x = solve_linear(m.transpose(), self.unit)
        except NoSolution:
            return None
        xa = self.mul_coords(x, a.coords)
        ax = self.mul_coords(a.coords, x)
        if xa != self.unit or ax != self.unit:
            return None
        return Element(self, x)

    def is_regular(self, a: Element) -> bool:
        """No zero divisors against a: both multiplication operators
        injective (in finite dimension this equals invertibility)."""
        lm = self.left_mult_matrix(a.coords)
        rm = self.right_mult_matrix(a.coords)
        return (
            left_nullspace(lm.transpose()).nrows == 0
            and left_nullspace(rm.transpose()).nrows == 0
        )

    # ------------------------------------------------------------ repr

    def __repr__(self):
        return (
            f"DgAlgebra(dim={self.dim}, field={self.field!r}, "
            f"basis={list(self.basis_names)!r})"
        )


def algebra_from_products(
    field: Field,
    names: Sequence[str],
    degrees: Sequence[int],
    products: dict,
    diff: dict,
    unit_name: str | None = None,
    unit_coords=None,
) -> DgAlgebra:
    """Convenience constructor from sparse dictionaries.

    products maps (name_i, name_j) -> {name_k: scalar} (missing pairs are
    zero); diff maps name_i -> {name_k: scalar}.  The unit is either a named
    basis element or an explicit coordinate row.
    """
    names = tuple(names)
    n = len(names)
    idx = {name: i for i, name in enumerate(names)}
    z = field.zero
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    for (a, b), cell in products.items():
        for k, c in cell.items():
            table[idx[a]][idx[b]][idx[k]] = field.parse(c)
    dmat = [[z] * n for _ in range(n)]
    for a, cell in diff.items():
        for k, c in cell.items():
            dmat[idx[a]][idx[k]] = field.parse(c)
    if unit_name is not None:
        unit = [z] * n
        unit[idx[unit_name]] = field.one
    else:
        unit = [field.parse(c) for c in unit_coords]
    return DgAlgebra(field, names, degrees, table, unit, Mat(field, dmat, n))


# ---------------------------------------------------------------- homology


class HomologyAlgebra(DgAlgebra):
    """H(A) = ker(d)/im(d) as a dg-algebra with zero differential, together
    with the projection pi (defined on cycles) and a linear section."""

    def __init__(self, parent: DgAlgebra, cycles: Subspace, boundaries: Subspace, reps: Mat):
        self.parent = parent
        self.cycles = cycles
        self.boundaries = boundaries
        self.reps = reps
        f = parent.field
        h = reps.nrows
        names = [f"h{k}" for k in range(h)]
        degrees = [parent.row_degree(r) or 0 for r in reps.rows]
        # solve coordinates of a cycle against boundaries + representatives
        self._expand = boundaries.basis.stack(reps)
        table = []
        for i in range(h):
            row = []
            for j in range(h):
                prod = parent.mul_coords(reps.rows[i], reps.rows[j])
                row.append(self._cycle_coords(prod))
            table.append(row)
        unit = self._cycle_coords(parent.unit)
        super().__init__(f, names, degrees, table, unit, Mat.zero(f, h, h))

    def _cycle_coords(self, v):
        """Coordinates in homology of a cycle's coordinate row."""
        f = self.parent.field
        x = solve_linear(self._expand.transpose(), v)
        return tuple(x[self.boundaries.dim:])

    def pi(self, a: Element) -> Element:
        if a.algebra is not self.parent:
            raise DimMismatch("pi expects an element of the parent algebra")
        if not a.d().is_zero():
            raise NotACycle(f"{a!r} is not a cycle")
        return Element(self, self._cycle_coords(a.coords))

    def section(self, h: Element) -> Element:
        if h.algebra is not self:
            raise DimMismatch("section expects a homology element")
        return Element(self.parent, apply_row(self.field, h.coords, self.reps))


def homology(alg: DgAlgebra) -> HomologyAlgebra:
    """Homology with deterministic representatives: per degree, the cycle
    basis rows that extend the boundary space, in RREF order."""
    alg.ensure_valid()
    f = alg.field
    cycles = Subspace.from_vectors(f, alg.dim, left_nullspace(alg.diff).rows) \
        if alg.dim else Subspace.zero(f, 0)
    boundaries = Subspace.from_vectors(f, alg.dim, alg.diff.rows) \
        if alg.dim else Subspace.zero(f, 0)
    assert cycles.contains(boundaries), "d**2 != 0?"
    reps: list = []
    for n in alg.degrees_present():
        comp = alg.component_subspace(n)
        zn = cycles.intersect(comp)
        bn = boundaries.intersect(comp)
        current = bn
        for row in zn.basis.rows:
            if not current.contains_vector(row):
                reps.append(row)
                current = current.sum(Subspace.from_vectors(f, alg.dim, [row]))
    return HomologyAlgebra(alg, cycles, boundaries, Mat(f, reps, alg.dim))


def cycle_subalgebra(alg: DgAlgebra):
    """ker(d) as a graded algebra with zero differential, plus the embedding
    matrix whose rows are the images of its basis in the parent."""
    alg.ensure_valid()
    f = alg.field
    z = Subspace.from_vectors(f, alg.dim, left_nullspace(alg.diff).rows) \
        if alg.dim else Subspace.zero(f, 0)
    basis = z.basis
    names = [f"z{k}" for k in range(basis.nrows)]
    degrees = [alg.row_degree(r) or 0 for r in basis.rows]
    table = []
    for i in range(basis.nrows):
        row = []
        for j in range(basis.nrows):
            prod = alg.mul_coords(basis.rows[i], basis.rows[j])
            coords = z.coords_of(prod)
            assert coords is not None, "kernel not closed under product?"
            row.append(coords)
        table.append(row)
    unit = z.coords_of(alg.unit)
    assert unit is not None, "unit is not a cycle?"
    sub = DgAlgebra(
        f, names, degrees, table, unit, Mat.zero(f, basis.nrows, basis.nrows)
    )
    return sub, basis


# ---------------------------------------------------------------- quotients


def quotient_algebra(alg: DgAlgebra, ideal: Subspace):
    """A / ideal for a two-sided dg-ideal given as a subspace.

    Returns (quotient, proj, lift): proj maps parent coordinates onto
    quotient coordinates (row convention), lift sends quotient basis
    elements to their canonical coset representatives.
    """
    alg.ensure_valid()
    f = alg.field
    if ideal.ambient != alg.dim:
        raise DimMismatch("ideal ambient mismatch")
    reps = ideal.quotient_basis()          # non-pivot standard basis vectors
    cols = [j for j in range(alg.dim) if j not in ideal.pivots]
    qdim = len(cols)
    names = [alg.basis_names[j] for j in cols]
    degrees = [alg.degrees[j] for j in cols]

    def project(v):
        residual = ideal.reduce_vector(v)
        return tuple(residual[j] for j in cols)

    table = []
    for a in range(qdim):
        row = []
        for b in range(qdim):
            row.append(project(alg.mul_coords(reps[a], reps[b])))
        table.append(row)
    dmat = [project(apply_row(f, reps[a], alg.diff)) for a in range(qdim)]
    unit = project(alg.unit)
    quot = DgAlgebra(f, names, degrees, table, unit, Mat(f, dmat, qdim))
    proj = Mat(f, [project(alg.basis_element(i).coords) for i in range(alg.dim)], qdim)
    lift = Mat(f, list(reps), alg.dim)
    return quot, proj, lift


def direct_sum(a: DgAlgebra, b: DgAlgebra) -> DgAlgebra:
    """Block direct sum A x B (componentwise product and differential)."""
    f = same_field(a.field, b.field)
    z = f.zero
    n, m = a.dim, b.dim
    names = [f"a.{x}" for x in a.basis_names] + [f"b.{x}" for x in b.basis_names]
    degrees = list(a.degrees) + list(b.degrees)
    dim = n + m
    table = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(a.mul_table[i][j]):
                table[i][j][k] = c
    for i in range(m):
        for j in range(m):
            for k, c in enumerate(b.mul_table[i][j]):
                table[n + i][n + j][n + k] = c
    dmat = [[z] * dim for _ in range(dim)]
    for i in range(n):
        for k, c in enumerate(a.diff.rows[i]):
            dmat[i][k] = c
    for i in range(m):
        for k, c in enumerate(b.diff.rows[i]):
            dmat[n + i][n + k] = c
    unit = list(a.unit) + list(b.unit)
    return DgAlgebra(f, names, degrees, table, unit, Mat(f, dmat, dim))
