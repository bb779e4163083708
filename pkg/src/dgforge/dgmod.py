"""Dg-modules over finite-dimensional dg-algebras.

A dg-submodule is a graded, differential-stable, action-stable subspace.
Three operator modes run through one engine:

    'classical' -- action operators only (ungraded module theory),
    'graded'    -- actions + grading projectors,
    'dg'        -- actions + grading projectors + the differential.

Submodule generation and exhaustive enumeration spin vectors under the
(homogeneous) operators; socles come from the radical of the enveloping
operator algebra via its trace form (characteristic 0 or p > dim M), with
an exact enumeration fallback over small prime fields; uniform dimension
is the length of the socle, computed per isotypic component from the
endomorphism algebra.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Sequence

import numpy as np
import sympy

from . import fpkernels
from .dgcore import CheckResult, DgAlgebra, ValidationReport, koszul_sign
from .errors import BudgetExceeded, DimMismatch, FieldTooSmall
from .fields import PrimeField, RationalField, same_field
from .linalg import Mat, Subspace, apply_row, vec_add, vec_is_zero

DEFAULT_BUDGET = 1 << 20
LATTICE_CAP = 50_000

MODES = ("classical", "graded", "dg")


class DgModule:
    """Finite-dimensional module over a DgAlgebra with differential delta.

    Actions are stored per algebra basis element as row-action matrices:
    right_actions[i] is m -> m * e_i, left_actions[i] is m -> e_i * m.
    side is 'right', 'left' or 'bi'.
    """

    def __init__(
        self,
        algebra: DgAlgebra,
        degrees: Sequence[int],
        side: str,
        right_actions: Sequence[Mat] | None = None,
        left_actions: Sequence[Mat] | None = None,
        delta: Mat | None = None,
        label: str = "",
    ):
        if side not in ("right", "left", "bi"):
            raise ValueError(f"side must be right|left|bi, not {side!r}")
        self.algebra = algebra
        self.field = algebra.field
        self.degrees = tuple(int(n) for n in degrees)
        self.dim = len(self.degrees)
        self.side = side
        self.label = label
        if side in ("right", "bi") and right_actions is None:
            raise ValueError("right actions required")
        if side in ("left", "bi") and left_actions is None:
            raise ValueError("left actions required")
        self.right_actions = tuple(right_actions) if right_actions else None
        self.left_actions = tuple(left_actions) if left_actions else None
        self.delta = delta if delta is not None else Mat.zero(self.field, self.dim, self.dim)
        for mats in (self.right_actions or ()), (self.left_actions or ()):
            for m in mats:
                if m.nrows != self.dim or m.ncols != self.dim:
                    raise DimMismatch("action matrix shape")
        if self.delta.nrows != self.dim or self.delta.ncols != self.dim:
            raise DimMismatch("delta shape")
        self._np_ops_cache: dict[str, np.ndarray] = {}
        self._validation: ValidationReport | None = None

    # ------------------------------------------------------------ builders

    @classmethod
    def regular(cls, algebra: DgAlgebra, side: str = "right") -> "DgModule":
        """The algebra as a module over itself (right, left or bimodule)."""
        algebra.ensure_valid()
        n = algebra.dim
        right = None
        left = None
        if side in ("right", "bi"):
            right = [algebra.right_mult_matrix(algebra.basis_element(i).coords) for i in range(n)]
        if side in ("left", "bi"):
            left = [algebra.left_mult_matrix(algebra.basis_element(i).coords) for i in range(n)]
        return cls(
            algebra, algebra.degrees, side, right, left, algebra.diff,
            label=f"regular-{side}",
        )

    def row_degree(self, v: Sequence):
        degs = {self.degrees[i] for i, c in enumerate(v) if c != self.field.zero}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous module vector, degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_components(self, v: Sequence):
        z = self.field.zero
        comps: dict[int, list] = {}
        for i, c in enumerate(v):
            if c != z:
                comps.setdefault(self.degrees[i], [z] * self.dim)[i] = c
        return [tuple(vec) for _, vec in sorted(comps.items())]

    def component_subspace(self, n: int) -> Subspace:
        vecs = []
        z, o = self.field.zero, self.field.one
        for i, d in enumerate(self.degrees):
            if d == n:
                row = [z] * self.dim
                row[i] = o
                vecs.append(row)
        if not vecs:
            return Subspace.zero(self.field, self.dim)
        return Subspace.from_vectors(self.field, self.dim, vecs)

    def degrees_present(self):
        return sorted(set(self.degrees))

    # ------------------------------------------------------------ operators

    def action_operators(self) -> list[Mat]:
        ops = []
        if self.side in ("right", "bi") and self.right_actions:
            ops.extend(self.right_actions)
        if self.side in ("left", "bi") and self.left_actions:
            ops.extend(self.left_actions)
        return ops

    def operator_set(self, mode: str) -> list[Mat]:
        """Operators whose invariant subspaces are exactly the submodules of
        the given mode.  Grading projectors are included for graded/dg."""
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        ops = self.action_operators()
        if mode in ("graded", "dg"):
            f = self.field
            for n in self.degrees_present():
                rows = []
                z, o = f.zero, f.one
                for i in range(self.dim):
                    row = [z] * self.dim
                    if self.degrees[i] == n:
                        row[i] = o
                    rows.append(row)
                ops.append(Mat(f, rows, self.dim))
        if mode == "dg":
            ops.append(self.delta)
        return ops

    def spin_operators(self, mode: str) -> list[Mat]:
        """Operators used for closure from homogeneous seeds (projectors are
        redundant there: the other operators are degree-homogeneous)."""
        ops = self.action_operators()
        if mode == "dg":
            ops.append(self.delta)
        return ops

    def _np_spin_ops(self, mode: str) -> np.ndarray:
        if mode not in self._np_ops_cache:
            ops = self.spin_operators(mode)
            self._np_ops_cache[mode] = np.array(
                [[[int(x) for x in row] for row in op.rows] for op in ops],
                dtype=np.int64,
            ).reshape(len(ops), self.dim, self.dim)
        return self._np_ops_cache[mode]

    # ------------------------------------------------------------ validation

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        alg, f = self.algebra, self.field
        z = f.zero
        checks: list[CheckResult] = []

        def add(name, witness):
            checks.append(CheckResult(name, witness is None, witness))

        witness = None
        for side, actions in (("right", self.right_actions), ("left", self.left_actions)):
            if actions is None:
                continue
            for i, op in enumerate(actions):
                gdeg = alg.degrees[i]
                for j in range(self.dim):
                    for k, c in enumerate(op.rows[j]):
                        if c != z and self.degrees[k] != self.degrees[j] + gdeg:
                            witness = witness or (side, alg.basis_names[i], j, k)
        add("action_grading", witness)

        witness = None
        if self.right_actions:
            unit_op = self._combine(self.right_actions, alg.unit)
            if unit_op != Mat.identity(f, self.dim):
                witness = ("right",)
        if witness is None and self.left_actions:
            unit_op = self._combine(self.left_actions, alg.unit)
            if unit_op != Mat.identity(f, self.dim):
                witness = ("left",)
        add("unit_action", witness)

        witness = None
        if self.right_actions:
            # m * (e_i e_j) == (m * e_i) * e_j
            for i in range(alg.dim):
                for j in range(alg.dim):
                    prod_op = self._combine(self.right_actions, alg.mul_table[i][j])
                    comp = self.right_actions[i] @ self.right_actions[j]
                    if prod_op != comp:
                        witness = ("right", alg.basis_names[i], alg.basis_names[j])
                        break
                if witness:
                    break
        if witness is None and self.left_actions:
            # (e_i e_j) * m == e_i * (e_j * m): row convention composes as
            # L_{e_i e_j} = L_{e_j} @ L_{e_i}
            for i in range(alg.dim):
                for j in range(alg.dim):
                    prod_op = self._combine(self.left_actions, alg.mul_table[i][j])
                    comp = self.left_actions[j] @ self.left_actions[i]
                    if prod_op != comp:
                        witness = ("left", alg.basis_names[i], alg.basis_names[j])
                        break
                if witness:
                    break
        add("action_assoc", witness)

        witness = None
        if self.side == "bi":
            # (e_i * m) * e_j == e_i * (m * e_j)
            for i in range(alg.dim):
                for j in range(alg.dim):
                    lhs = self.left_actions[i] @ self.right_actions[j]
                    rhs = self.right_actions[j] @ self.left_actions[i]
                    if lhs != rhs:
                        witness = (alg.basis_names[i], alg.basis_names[j])
                        break
                if witness:
                    break
        add("bimodule_compat", witness)

        witness = None
        for j in range(self.dim):
            for k, c in enumerate(self.delta.rows[j]):
                if c != z and self.degrees[k] != self.degrees[j] + 1:
                    witness = witness or (j, k)
        add("delta_degree", witness)

        witness = None
        if not (self.delta @ self.delta).is_zero():
            witness = ()
        add("delta_squared", witness)

        witness = None
        if self.right_actions:
            # delta(m e_i) = delta(m) e_i + (-1)^{|m|} m d(e_i)
            for i in range(alg.dim):
                di = alg.diff.rows[i]
                d_op = self._combine(self.right_actions, di)
                for j in range(self.dim):
                    mj = [z] * self.dim
                    mj[j] = f.one
                    lhs = apply_row(f, apply_row(f, mj, self.right_actions[i]), self.delta)
                    sign = koszul_sign(f, self.degrees[j])
                    rhs = vec_add(
                        f,
                        apply_row(f, apply_row(f, mj, self.delta), self.right_actions[i]),
                        tuple(f.mul(sign, x) for x in apply_row(f, mj, d_op)),
                    )
                    if lhs != rhs:
                        witness = ("right", alg.basis_names[i], j)
                        break
                if witness:
                    break
        add("leibniz_right", witness)

        witness = None
        if self.left_actions:
            # delta(e_i m) = d(e_i) m + (-1)^{|e_i|} e_i delta(m)
            for i in range(alg.dim):
                di = alg.diff.rows[i]
                d_op = self._combine(self.left_actions, di)
                sign = koszul_sign(f, alg.degrees[i])
                for j in range(self.dim):
                    mj = [z] * self.dim
                    mj[j] = f.one
                    lhs = apply_row(f, apply_row(f, mj, self.left_actions[i]), self.delta)
                    rhs = vec_add(
                        f,
                        apply_row(f, mj, d_op),
                        tuple(
                            f.mul(sign, x)
                            for x in apply_row(f, apply_row(f, mj, self.delta), self.left_actions[i])
                        ),
                    )
                    if lhs != rhs:
                        witness = ("left", alg.basis_names[i], j)
                        break
                if witness:
                    break
        add("leibniz_left", witness)

        report = ValidationReport(checks)
        self._validation = report
        return report

    def _combine(self, actions, coeffs) -> Mat:
        """Linear combination sum_i coeffs[i] * actions[i]."""
        f = self.field
        out = Mat.zero(f, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c != f.zero:
                out = out + actions[i].scale(c)
        return out

    def ensure_valid(self):
        report = self.validate()
        if not report.ok:
            raise ValueError(f"invalid dg-module: {report.failures()}")

    def __repr__(self):
        return (
            f"DgModule(dim={self.dim}, side={self.side!r}, "
            f"label={self.label!r}, algebra={self.algebra!r})"
        )


def direct_sum_modules(a: DgModule, b: DgModule) -> DgModule:
    """Block direct sum of two modules over the same algebra and side."""
    if a.algebra is not b.algebra or a.side != b.side:
        raise DimMismatch("modules must share algebra and side")
    f = same_field(a.field, b.field)
    n, m = a.dim, b.dim

    def block(x: Mat | None, y: Mat | None):
        if x is None:
            return None
        z = f.zero
        rows = []
        for i in range(n):
            rows.append(list(x.rows[i]) + [z] * m)
        for j in range(m):
            rows.append([z] * n + list(y.rows[j]))
        return Mat(f, rows, n + m)

    right = None
    left = None
    if a.right_actions:
        right = [block(x, y) for x, y in zip(a.right_actions, b.right_actions)]
    if a.left_actions:
        left = [block(x, y) for x, y in zip(a.left_actions, b.left_actions)]
    return DgModule(
        a.algebra,
        a.degrees + b.degrees,
        a.side,
        right,
        left,
        block(a.delta, b.delta),
        label=f"{a.label}(+){b.label}",
    )


# ---------------------------------------------------------------- submodules


class DgSubmodule:
    """A certified submodule: subspace + mode + verified certificates."""

    def __init__(self, module: DgModule, space: Subspace, mode: str = "dg"):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if space.ambient != module.dim:
            raise DimMismatch("subspace ambient != module dim")
        self.module = module
        self.space = space
        self.mode = mode
        self.certificates = self._certify()

    def _certify(self) -> dict:
        m, s = self.module, self.space
        certs: dict[str, bool] = {}
        if self.mode in ("graded", "dg"):
            graded = True
            for row in s.basis.rows:
                try:
                    m.row_degree(row)
                except ValueError:
                    graded = False
                    break
            certs["graded"] = graded
        if self.mode == "dg":
            certs["d_stable"] = all(
                s.contains_vector(apply_row(m.field, row, m.delta))
                for row in s.basis.rows
            )
        certs["action_stable"] = all(
            s.contains_vector(apply_row(m.field, row, op))
            for op in m.action_operators()
            for row in s.basis.rows
        )
        return certs

    @property
    def certified(self) -> bool:
        return all(self.certificates.values())

    @property
    def dim(self) -> int:
        return self.space.dim

    def __eq__(self, other):
        return (
            isinstance(other, DgSubmodule)
            and self.module is other.module
            and self.mode == other.mode
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.mode, self.space))

    def __repr__(self):
        return f"DgSubmodule(dim={self.dim}, mode={self.mode!r}, certified={self.certified})"

    def as_module(self) -> DgModule:
        """The submodule as a dg-module in its own right (restricted actions
        and differential).  Only dg-mode submodules restrict coherently."""
        if self.mode != "dg":
            raise ValueError("as_module requires a dg-mode submodule")
        m, s = self.module, self.space
        f = m.field
        basis = s.basis

        def restrict(op: Mat) -> Mat:
            rows = []
            for row in basis.rows:
                img = apply_row(f, row, op)
                coords = s.coords_of(img)
                assert coords is not None, "submodule not stable?"
                rows.append(coords)
            return Mat(f, rows, s.dim)

        right = [restrict(op) for op in m.right_actions] if m.right_actions else None
        left = [restrict(op) for op in m.left_actions] if m.left_actions else None
        delta = restrict(m.delta)
        degrees = []
        for row in basis.rows:
            deg = m.row_degree(row)
            degrees.append(0 if deg is None else deg)
        return DgModule(
            m.algebra, degrees, m.side, right, left, delta,
            label=f"{m.label}|sub{s.dim}",
        )


def _spin_generic(module: DgModule, seeds, ops) -> Subspace:
    f = module.field
    basis: list[tuple] = []
    space = Subspace.zero(f, module.dim)
    queue = [tuple(v) for v in seeds]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if not space.contains_vector(v):
            basis.append(v)
            space = Subspace.from_vectors(f, module.dim, basis)
            for op in ops:
                queue.append(apply_row(f, v, op))
    return space


def dg_generate(module: DgModule, vectors: Iterable[Sequence], mode: str = "dg") -> DgSubmodule:
    """Smallest mode-submodule containing the given vectors.

    For graded/dg modes the vectors are first split into homogeneous
    components; the closure then runs under homogeneous operators only, so
    the result is automatically graded.
    """
    module.ensure_valid()
    f = module.field
    seeds: list[tuple] = []
    for v in vectors:
        v = tuple(v)
        if len(v) != module.dim:
            raise DimMismatch("generator length != module dim")
        if mode in ("graded", "dg"):
            seeds.extend(module.homogeneous_components(v))
        elif not vec_is_zero(f, v):
            seeds.append(v)
    if not seeds:
        return DgSubmodule(module, Subspace.zero(f, module.dim), mode)
    if isinstance(f, PrimeField):
        ops = module._np_spin_ops(mode)
        seed_arr = np.array([[int(x) for x in v] for v in seeds], dtype=np.int64)
        basis = fpkernels.spin_mod(seed_arr, ops, f.p)
        space = Subspace.from_vectors(f, module.dim, [tuple(int(x) for x in r) for r in basis]) \
            if basis.shape[0] else Subspace.zero(f, module.dim)
    else:
        space = _spin_generic(module, seeds, module.spin_operators(mode))
    return DgSubmodule(module, space, mode)


def largest_submodule_inside(module: DgModule, w: Subspace, mode: str = "dg") -> DgSubmodule:
    """Greatest mode-submodule contained in the subspace w: the fixpoint of
    intersecting with the graded part and all operator preimages."""
    module.ensure_valid()
    f = module.field
    current = w
    while True:
        nxt = current
        if mode in ("graded", "dg"):
            graded = Subspace.zero(f, module.dim)
            for n in module.degrees_present():
                graded = graded.sum(current.intersect(module.component_subspace(n)))
            nxt = nxt.intersect(graded)
        for op in module.spin_operators(mode):
            nxt = nxt.intersect(current.preimage(op))
        if nxt == current:
            return DgSubmodule(module, current, mode)
        current = nxt


# ---------------------------------------------------------------- envelope


def envelope_algebra(module: DgModule, mode: str) -> list[Mat]:
    """Basis (echelonised, deterministic) of the unital operator algebra
    generated by the mode's operator set, inside End(M)."""
    return _operator_algebra_closure(
        module.field, module.dim, [Mat.identity(module.field, module.dim)]
        + module.operator_set(mode)
    )


def _operator_algebra_closure(field, n: int, gens: list[Mat]) -> list[Mat]:
    span = Subspace.zero(field, n * n)
    basis_mats: list[Mat] = []
    queue = list(gens)
    head = 0
    while head < len(queue):
        op = queue[head]
        head += 1
        flat = tuple(x for row in op.rows for x in row)
        if not span.contains_vector(flat):
            basis_mats.append(op)
            span = span.sum(Subspace.from_vectors(field, n * n, [flat]))
            for g in gens:
                queue.append(op @ g)
    return basis_mats


def _operator_trace_product(a: Mat, b: Mat):
    """tr(a @ b) without forming the product."""
    f = a.field
    acc = f.zero
    for i in range(a.nrows):
        for j in range(a.ncols):
            acc = f.add(acc, f.mul(a.rows[i][j], b.rows[j][i]))
    return acc


def envelope_radical(module: DgModule, basis_mats: list[Mat]) -> list[Mat]:
    """Radical of the enveloping operator algebra via the trace form of the
    faithful action.  Valid for char 0 or p > dim(module); FieldTooSmall
    otherwise (callers may fall back to enumeration)."""
    f = module.field
    if isinstance(f, PrimeField) and f.p <= module.dim:
        raise FieldTooSmall(
            f"trace-form radical needs p > {module.dim}, have p = {f.p}"
        )
    e = len(basis_mats)
    gram = Mat(
        f,
        [[_operator_trace_product(basis_mats[i], basis_mats[j]) for j in range(e)] for i in range(e)],
        e,
    )
    from .linalg import right_nullspace

    coeffs = right_nullspace(gram)
    rad = []
    for row in coeffs.rows:
        m = Mat.zero(f, module.dim, module.dim)
        for c, b in zip(row, basis_mats):
            if c != f.zero:
                m = m + b.scale(c)
        rad.append(m)
    return rad


# ---------------------------------------------------------------- socle


def _socle_via_radical(module: DgModule, mode: str) -> Subspace:
    basis_mats = envelope_algebra(module, mode)
    rad = envelope_radical(module, basis_mats)
    f = module.field
    soc = Subspace.full(f, module.dim)
    from .linalg import left_nullspace

    for x in rad:
        soc = soc.intersect(
            Subspace.from_vectors(f, module.dim, left_nullspace(x).rows)
        )
    return soc


def _projective_vectors(p: int, dim: int):
    """One representative per projective point of GF(p)^dim: first nonzero
    coordinate equals 1."""
    vec = np.zeros(dim, dtype=np.int64)

    def rec(i):
        if i == dim:
            return
        # leading position i: coordinate 1, rest arbitrary
        vec[:i] = 0
        vec[i] = 1
        tail = dim - i - 1
        for rest in range(p ** tail):
            r = rest
            for j in range(dim - 1, i, -1):
                vec[j] = r % p
                r //= p
            yield vec.copy()

    for i in range(dim):
        yield from rec(i)


def minimal_submodules(module: DgModule, mode: str = "dg", budget: int = DEFAULT_BUDGET):
    """All minimal nonzero mode-submodules, by exhausting cyclic closures
    over a prime field.  BudgetExceeded if q**dim is too large."""
    f = module.field
    if not isinstance(f, PrimeField):
        raise FieldTooSmall("exhaustive enumeration needs a finite field")
    if f.p ** module.dim > budget:
        raise BudgetExceeded(f"{f.p}**{module.dim} > {budget}")
    module.ensure_valid()
    ops = module._np_spin_ops(mode)
    seen: dict[Subspace, None] = {}
    for v in _projective_vectors(f.p, module.dim):
        basis = fpkernels.spin_mod(v.reshape(1, -1), ops, f.p)
        space = Subspace.from_vectors(
            f, module.dim, [tuple(int(x) for x in r) for r in basis]
        )
        # mode closure may require homogeneous splitting: redo via dg_generate
        # only when the raw spin is not graded (cheap check)
        sub = DgSubmodule(module, space, mode)
        if not sub.certified:
            sub = dg_generate(module, [tuple(int(x) for x in v)], mode)
        seen.setdefault(sub.space)
    closures = sorted(seen.keys(), key=lambda s: (s.dim, s.basis.rows))
    minimal: list[Subspace] = []
    for c in closures:
        if c.dim == 0:
            continue
        if not any(c.contains(m) for m in minimal):
            minimal.append(c)
    # keep only true minimal elements (list is dim-sorted, so any container
    # of an earlier minimal was already skipped)
    return [DgSubmodule(module, s, mode) for s in minimal]


def dg_socle(module: DgModule, mode: str = "dg", budget: int = DEFAULT_BUDGET) -> DgSubmodule:
    """Sum of all minimal mode-submodules.

    Route 1 (char 0 or p > dim): annihilator of the envelope-algebra radical.
    Route 2 (small p within budget): exhaustive minimal-submodule sum.
    """
    module.ensure_valid()
    f = module.field
    if isinstance(f, RationalField) or f.char > module.dim:
        soc = _socle_via_radical(module, mode)
        return DgSubmodule(module, soc, mode)
    try:
        mins = minimal_submodules(module, mode, budget)
    except BudgetExceeded as exc:
        raise FieldTooSmall(
            f"p = {f.char} <= dim = {module.dim} and enumeration over budget: {exc}"
        ) from exc
    soc = Subspace.zero(f, module.dim)
    for m in mins:
        soc = soc.sum(m.space)
    return DgSubmodule(module, soc, mode)


def is_dg_essential(
    n: "DgSubmodule | Subspace",
    module: DgModule | None = None,
    mode: str = "dg",
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """N is essential iff it contains the socle (finite dimension)."""
    if isinstance(n, DgSubmodule):
        module = n.module
        mode = n.mode
        space = n.space
    else:
        if module is None:
            raise ValueError("module required when passing a bare subspace")
        space = n
    soc = dg_socle(module, mode, budget)
    return space.contains(soc.space)


def dg_complement(
    module: DgModule,
    n: DgSubmodule,
    mode: str | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    retries: int = 200,
):
    """A complement-maximal submodule X with N ∩ X = 0 (so N ⊕ X is
    essential).  Returns (X, maximal_certified).

    Over a small prime field the extension search is exhaustive, so
    maximality is certified; over QQ candidates come from a deterministic
    stream plus seeded random combinations, and the flag reports whether
    maximality was proved (it still is when N ⊕ X fills the module).
    """
    mode = mode or n.mode
    module.ensure_valid()
    f = module.field
    x = Subspace.zero(f, module.dim)
    exhaustive = isinstance(f, PrimeField) and f.p ** module.dim <= budget

    def try_extend(x_space: Subspace) -> Subspace | None:
        if exhaustive:
            candidates = (
                tuple(int(c) for c in v)
                for v in _projective_vectors(f.p, module.dim)
            )
        else:
            rng = random.Random(seed)
            det = [tuple(module.component_subspace(d).basis.rows[i])
                   for d in module.degrees_present()
                   for i in range(module.component_subspace(d).dim)]

            def rand_stream():
                for v in det:
                    yield v
                for _ in range(retries):
                    yield tuple(
                        f.from_int(rng.randrange(-3, 4)) for _ in range(module.dim)
                    )

            candidates = rand_stream()
        for v in candidates:
            if x_space.contains_vector(v):
                continue
            cand = dg_generate(module, list(x_space.basis.rows) + [v], mode)
            if cand.space.intersect(n.space).is_zero() and cand.space.dim > x_space.dim:
                return cand.space
        return None

    while True:
        ext = try_extend(x)
        if ext is None:
            break
        x = ext
    certified = exhaustive or (x.dim + n.space.dim == module.dim)
    return DgSubmodule(module, x, mode), certified


# ---------------------------------------------------------------- udim


def _restrict_ops_to(space: Subspace, ops: list[Mat], field) -> list[Mat]:
    out = []
    for op in ops:
        rows = []
        for row in space.basis.rows:
            img = apply_row(field, row, op)
            coords = space.coords_of(img)
            assert coords is not None, "subspace not stable under operator"
            rows.append(coords)
        out.append(Mat(field, rows, space.dim))
    return out


def _centralizer(field, dim: int, gens: list[Mat], within: list[Mat] | None = None) -> list[Mat]:
    """Basis of {x : x g = g x for all g}, optionally intersected with the
    span of `within` (given as matrices)."""
    if within is None:
        ambient = [
            Mat(field, [[field.one if (r, c) == (i, j) else field.zero for c in range(dim)] for r in range(dim)], dim)
            for i in range(dim)
            for j in range(dim)
        ]
    else:
        ambient = within
    space = Subspace.from_vectors(
        field, dim * dim,
        [tuple(x for row in m.rows for x in row) for m in ambient],
    ) if ambient else Subspace.zero(field, dim * dim)
    for g in gens:
        keep = []
        for row in space.basis.rows:
            m = Mat(field, [row[i * dim:(i + 1) * dim] for i in range(dim)], dim)
            comm = (m @ g) - (g @ m)
            keep.append(tuple(x for r in comm.rows for x in r))
        cond = Mat(field, keep, dim * dim) if keep else Mat(field, [], dim * dim)
        from .linalg import left_nullspace

        coeffs = left_nullspace(cond)
        vecs = [
            apply_row(field, c, space.basis) for c in coeffs.rows
        ]
        space = Subspace.from_vectors(field, dim * dim, vecs) if vecs else Subspace.zero(field, dim * dim)
    return [
        Mat(field, [row[i * dim:(i + 1) * dim] for i in range(dim)], dim)
        for row in space.basis.rows
    ]


def _minimal_polynomial(field, m: Mat):
    """Monic minimal polynomial coefficients [c0, c1, ..., 1] of m."""
    n = m.nrows
    powers = [Mat.identity(field, n)]
    flat = lambda x: tuple(v for row in x.rows for v in row)
    span = Subspace.from_vectors(field, n * n, [flat(powers[0])])
    while True:
        nxt = powers[-1] @ m
        fv = flat(nxt)
        if span.contains_vector(fv):
            stacked = Mat(field, [flat(p) for p in powers], n * n)
            from .linalg import solve_linear

            coeffs = solve_linear(stacked.transpose(), fv)
            # nxt = sum coeffs[i] powers[i]  ->  min poly = x^k - sum c_i x^i
            return [field.neg(c) for c in coeffs] + [field.one]
        powers.append(nxt)
        span = span.sum(Subspace.from_vectors(field, n * n, [fv]))


def _factor_poly(field, coeffs):
    """Irreducible factorisation via sympy; returns list of (coeff list
    low-to-high, multiplicity)."""
    x = sympy.symbols("x")
    if isinstance(field, RationalField):
        expr = sum(
            sympy.Rational(c.numerator, c.denominator) * x ** i
            for i, c in enumerate(coeffs)
        )
        _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
        out = []
        for poly, mult in factors:
            cs = [field.parse(str(c)) for c in reversed(sympy.Poly(poly, x).all_coeffs())]
            out.append((cs, int(mult)))
        return out
    expr = sum(int(c) * x ** i for i, c in enumerate(coeffs))
    _, factors = sympy.Poly(expr, x, modulus=field.p, symmetric=False).factor_list()
    out = []
    for poly, mult in factors:
        cs = [field.parse(int(c)) for c in reversed(sympy.Poly(poly, x, modulus=field.p, symmetric=False).all_coeffs())]
        out.append((cs, int(mult)))
    return out


def _eval_poly(field, coeffs, m: Mat) -> Mat:
    out = Mat.zero(field, m.nrows, m.ncols)
    for c in reversed(coeffs):
        out = out @ m
        if c != field.zero:
            out = out + Mat.identity(field, m.nrows).scale(c)
    return out


def _split_commutative(field, dim: int, center: list[Mat], seed: int = 0, retries: int = 24):
    """Split a commutative semisimple operator algebra on K^dim into its
    primitive blocks.  Returns a list of subspaces (the block supports)."""
    rng = random.Random(seed)

    def candidates(basis, k):
        for z in basis:
            yield z
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                yield basis[i] + basis[j]
        for _ in range(retries):
            m = Mat.zero(field, k, k)
            for z in basis:
                m = m + z.scale(field.from_int(rng.randrange(-5, 6)))
            yield m

    def split(space: Subspace):
        # restrict the center to this invariant subspace and look for an
        # element with a reducible (squarefree) minimal polynomial
        local = _restrict_ops_to(space, center, field)
        k = space.dim
        for z in candidates(local, k):
            mp = _minimal_polynomial(field, z)
            factors = _factor_poly(field, mp)
            assert all(mult == 1 for _, mult in factors), "center not semisimple?"
            if len(factors) > 1:
                parts = []
                from .linalg import left_nullspace

                for cs, _ in factors:
                    ker = _eval_poly(field, cs, z)
                    sub_rows = left_nullspace(ker.transpose()).rows
                    # rows are in space coordinates; lift to the ambient
                    lifted = [apply_row(field, r, space.basis) for r in sub_rows]
                    parts.append(Subspace.from_vectors(field, space.ambient, lifted))
                out = []
                for part in parts:
                    out.extend(split(part))
                return out
        return [space]

    return split(Subspace.full(field, dim))


class UdimResult:
    """Uniform dimension as a certified interval [lower, upper]."""

    def __init__(self, lower: int, upper: int, method: str):
        self.lower = lower
        self.upper = upper
        self.method = method

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"uniform dimension not pinned: [{self.lower}, {self.upper}]")
        return self.lower

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact and self.lower == other
        return (
            isinstance(other, UdimResult)
            and (self.lower, self.upper) == (other.lower, other.upper)
        )

    def __repr__(self):
        if self.exact:
            return f"UdimResult({self.lower}, method={self.method!r})"
        return f"UdimResult([{self.lower}, {self.upper}], method={self.method!r})"


def dg_udim(
    module: DgModule,
    mode: str = "dg",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> UdimResult:
    """Uniform dimension = length of the socle.

    Per isotypic socle component S_i the endomorphism algebra E_i of the
    restricted action is M_{m_i}(D_i); over a finite field D_i is a field,
    so m_i = sqrt(dim E_i / dim Z(E_i)) exactly.  Over QQ the same number
    is an upper bound (D_i might be a division algebra of degree s_i > 1),
    and a constructed direct sum of cyclic submodules provides the lower
    bound; the result collapses to an exact value when the two meet.
    """
    module.ensure_valid()
    f = module.field
    if module.dim == 0:
        return UdimResult(0, 0, "zero-module")
    soc = dg_socle(module, mode, budget)
    if soc.dim == 0:
        return UdimResult(0, 0, "zero-socle")
    gens = _restrict_ops_to(soc.space, module.operator_set(mode), f)
    psi = _operator_algebra_closure(f, soc.dim, [Mat.identity(f, soc.dim)] + gens)
    center = _centralizer(f, soc.dim, gens, within=psi)
    blocks = _split_commutative(f, soc.dim, center, seed=seed)
    upper = 0
    uppers = []
    for block in blocks:
        bgens = _restrict_ops_to(block, gens, f)
        endo = _centralizer(f, block.dim, bgens)
        e_i = len(endo)
        zend = _centralizer(f, block.dim, endo, within=endo)
        z_i = len(zend)
        assert e_i % z_i == 0, "endomorphism algebra not free over its center?"
        m_hat = math.isqrt(e_i // z_i)
        assert m_hat * m_hat * z_i == e_i, "dim E_i / dim Z(E_i) not a perfect square"
        uppers.append((block, m_hat))
        upper += m_hat
    if isinstance(f, PrimeField):
        return UdimResult(upper, upper, "isotypic-endomorphism-count")
    # char 0: construct a direct sum inside each isotypic block
    lower = 0
    rng = random.Random(seed)
    for block, m_hat in uppers:
        found = 0
        accum = Subspace.zero(f, module.dim)

        def lift(row):
            # block coordinates -> socle coordinates -> module coordinates
            soc_vec = apply_row(f, row, block.basis)
            return tuple(apply_row(f, soc_vec, soc.space.basis))

        candidates = [lift(r) for r in Subspace.full(f, block.dim).basis.rows]
        extra = []
        for _ in range(64):
            coeffs = [f.from_int(rng.randrange(-3, 4)) for _ in range(block.dim)]
            extra.append(lift(coeffs))
        for v in candidates + extra:
            if found == m_hat:
                break
            if vec_is_zero(f, v) or accum.contains_vector(v):
                continue
            c = dg_generate(module, [v], mode)
            if c.space.intersect(accum).is_zero():
                accum = accum.sum(c.space)
                found += 1
        lower += found
    return UdimResult(lower, upper, "isotypic-endomorphism-count")


# ---------------------------------------------------------------- lattices


def enumerate_submodules(
    module: DgModule, mode: str = "dg", budget: int = DEFAULT_BUDGET
) -> list[DgSubmodule]:
    """The full mode-submodule lattice over a small prime field: cyclic
    closures of every projective point, then closure under pairwise sums.
    Includes 0 and the module itself.  BudgetExceeded when q**dim or the
    lattice itself grows past the cap."""
    f = module.field
    if not isinstance(f, PrimeField):
        raise FieldTooSmall("exhaustive enumeration needs a finite field")
    if f.p ** module.dim > budget:
        raise BudgetExceeded(f"{f.p}**{module.dim} > {budget}")
    module.ensure_valid()
    ops = module._np_spin_ops(mode)
    found: dict[Subspace, None] = {Subspace.zero(f, module.dim): None}
    for v in _projective_vectors(f.p, module.dim):
        basis = fpkernels.spin_mod(v.reshape(1, -1), ops, f.p)
        space = Subspace.from_vectors(
            f, module.dim, [tuple(int(x) for x in r) for r in basis]
        )
        sub = DgSubmodule(module, space, mode)
        if not sub.certified:
            sub = dg_generate(module, [tuple(int(x) for x in v)], mode)
            space = sub.space
        found.setdefault(space)
        if len(found) > LATTICE_CAP:
            raise BudgetExceeded(f"submodule lattice larger than {LATTICE_CAP}")
    # join closure
    frontier = list(found.keys())
    while frontier:
        new = []
        items = list(found.keys())
        for a in frontier:
            for b in items:
                s = a.sum(b)
                if s not in found:
                    found.setdefault(s)
                    new.append(s)
                    if len(found) > LATTICE_CAP:
                        raise BudgetExceeded(
                            f"submodule lattice larger than {LATTICE_CAP}"
                        )
        frontier = new
    return [DgSubmodule(module, s, mode) for s in sorted(found.keys(), key=lambda s: (s.dim, s.basis.rows))]
