"""Dg-ideal calculus on finite-dimensional dg-algebras.

Ideals are submodules of the regular module (left / right / bimodule), so
everything rides on the dg-module engine: products, powers and nilpotency,
left/right annihilators with certified closure properties, the nil radical
dgnil (largest d-stable graded two-sided ideal inside the classical nil
radical), the prime radical, dg-prime/semiprime tests with witnesses, the
associated ideal ass(S) of a multiplicative set of cycles, and the singular
ideals with their comparison maps into homology.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .dgcore import (
    CheckResult,
    DgAlgebra,
    Element,
    cycle_subalgebra,
    homology,
    quotient_algebra,
)
from .dgmod import (
    DEFAULT_BUDGET,
    DgModule,
    DgSubmodule,
    UdimResult,
    dg_generate,
    dg_socle,
    dg_udim,
    enumerate_submodules,
    is_dg_essential,
    largest_submodule_inside,
)
from .errors import (
    BudgetExceeded,
    FieldTooSmall,
    NotACycle,
    NotOre,
    NotSemiprime,
)
from .fields import PrimeField
from .linalg import Mat, Subspace, apply_row, left_nullspace

SIDES = ("left", "right", "two")

_SIDE_TO_MODULE = {"left": "left", "right": "right", "two": "bi"}


def _as_coords(alg: DgAlgebra, x) -> tuple:
    if isinstance(x, Element):
        if x.algebra is not alg:
            raise ValueError("element belongs to a different algebra")
        return x.coords
    return tuple(alg.field.parse(c) for c in x)


def regular_module(alg: DgAlgebra, side: str) -> DgModule:
    if side not in SIDES:
        raise ValueError(f"side must be left|right|two, not {side!r}")
    return DgModule.regular(alg, _SIDE_TO_MODULE[side])


class DgIdeal:
    """A one- or two-sided ideal with re-verified certificates.

    The certificates come from viewing the ideal as a submodule of the
    regular module for its side; `certified` is True when the space is
    graded, d-stable and stable under the declared actions.
    """

    def __init__(self, algebra: DgAlgebra, space: Subspace, side: str = "two", mode: str = "dg"):
        if side not in SIDES:
            raise ValueError(f"side must be left|right|two, not {side!r}")
        self.algebra = algebra
        self.side = side
        self.mode = mode
        self.space = space
        self.sub = DgSubmodule(regular_module(algebra, side), space, mode)
        self.certificates = self.sub.certificates

    @property
    def certified(self) -> bool:
        return self.sub.certified

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_zero(self) -> bool:
        return self.space.is_zero()

    def __eq__(self, other):
        if isinstance(other, DgIdeal):
            return self.space == other.space and self.side == other.side
        if isinstance(other, Subspace):
            return self.space == other
        return NotImplemented

    def __hash__(self):
        return hash((self.side, self.space))

    def __repr__(self):
        return (
            f"DgIdeal(dim={self.dim}, side={self.side!r}, "
            f"mode={self.mode!r}, certified={self.certified})"
        )


def ideal_generate(
    alg: DgAlgebra, gens: Iterable, side: str = "two", mode: str = "dg"
) -> DgIdeal:
    """Smallest mode-ideal of the given side containing the generators."""
    mod = regular_module(alg, side)
    vectors = [_as_coords(alg, g) for g in gens]
    sub = dg_generate(mod, vectors, mode)
    return DgIdeal(alg, sub.space, side, mode)


def subspace_product(alg: DgAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of {x * y : x in a, y in b} (via spanning sets)."""
    f = alg.field
    vecs = [
        alg.mul_coords(x, y)
        for x in a.basis.rows
        for y in b.basis.rows
    ]
    if not vecs:
        return Subspace.zero(f, alg.dim)
    return Subspace.from_vectors(f, alg.dim, vecs)


def ideal_product(i: DgIdeal, j: DgIdeal) -> DgIdeal:
    """IJ = span of products; for same-side (or two-sided) dg-ideals this is
    again a dg-ideal of that side, and the certificates re-verify it."""
    if i.algebra is not j.algebra:
        raise ValueError("ideals over different algebras")
    if i.side != j.side:
        raise ValueError(f"side mismatch: {i.side} vs {j.side}")
    space = subspace_product(i.algebra, i.space, j.space)
    return DgIdeal(i.algebra, space, i.side, i.mode)


def ideal_power(i: DgIdeal, k: int) -> DgIdeal:
    if k < 1:
        raise ValueError("power must be >= 1")
    out = i
    for _ in range(k - 1):
        out = ideal_product(out, i)
    return out


def is_nilpotent(i: DgIdeal) -> tuple[bool, int | None]:
    """(True, e) with I**e = 0 and I**(e-1) != 0, or (False, None) when the
    descending power chain stabilizes at a nonzero ideal."""
    if i.is_zero():
        return True, 1
    prev = i.space
    power = i
    exponent = 1
    while True:
        nxt = ideal_product(power, i)
        exponent += 1
        if nxt.is_zero():
            return True, exponent
        if nxt.space == prev:
            return False, None
        prev = nxt.space
        power = nxt


# ------------------------------------------------------------- annihilators


def lann(alg: DgAlgebra, s) -> Subspace:
    """{x : x * a = 0 for all a in s} for a subspace or element list."""
    rows = s.basis.rows if isinstance(s, Subspace) else [_as_coords(alg, a) for a in s]
    out = Subspace.full(alg.field, alg.dim)
    for a in rows:
        ker = left_nullspace(alg.right_mult_matrix(a))
        out = out.intersect(Subspace.from_vectors(alg.field, alg.dim, ker.rows))
    return out


def rann(alg: DgAlgebra, s) -> Subspace:
    """{x : a * x = 0 for all a in s}."""
    rows = s.basis.rows if isinstance(s, Subspace) else [_as_coords(alg, a) for a in s]
    out = Subspace.full(alg.field, alg.dim)
    for a in rows:
        ker = left_nullspace(alg.left_mult_matrix(a))
        out = out.intersect(Subspace.from_vectors(alg.field, alg.dim, ker.rows))
    return out


class AnnihilatorReport:
    """Raw annihilator subspaces plus their best certified ideal forms.

    When the input is a dg-left ideal, its left annihilator is a two-sided
    dg-ideal (and mirrored for dg-right ideals); in those cases the certified
    DgIdeal equals the raw subspace.  Otherwise the report carries the
    largest dg-ideal of the appropriate side inside the raw annihilator.
    """

    def __init__(self, algebra, lann_space, rann_space, lann_ideal, rann_ideal):
        self.algebra = algebra
        self.lann_space = lann_space
        self.rann_space = rann_space
        self.lann_ideal = lann_ideal
        self.rann_ideal = rann_ideal


def annihilators(alg: DgAlgebra, s) -> AnnihilatorReport:
    alg.ensure_valid()
    if isinstance(s, DgIdeal):
        space = s.space
        input_side = s.side if s.certified and s.mode == "dg" else None
    elif isinstance(s, Subspace):
        space = s
        input_side = None
    else:
        space = Subspace.from_vectors(
            alg.field, alg.dim, [_as_coords(alg, a) for a in s]
        )
        input_side = None
    l_space = lann(alg, space)
    r_space = rann(alg, space)
    if input_side in ("left", "two"):
        l_ideal = DgIdeal(alg, l_space, "two", "dg")
        assert l_ideal.certified, "left annihilator of a dg-left ideal must be two-sided"
    else:
        best = largest_submodule_inside(regular_module(alg, "left"), l_space, "dg")
        l_ideal = DgIdeal(alg, best.space, "left", "dg")
    if input_side in ("right", "two"):
        r_ideal = DgIdeal(alg, r_space, "two", "dg")
        assert r_ideal.certified, "right annihilator of a dg-right ideal must be two-sided"
    else:
        best = largest_submodule_inside(regular_module(alg, "right"), r_space, "dg")
        r_ideal = DgIdeal(alg, best.space, "right", "dg")
    return AnnihilatorReport(alg, l_space, r_space, l_ideal, r_ideal)


# ----------------------------------------------------------------- radicals


def _mat_trace(m: Mat):
    f = m.field
    acc = f.zero
    for i in range(m.nrows):
        acc = f.add(acc, m.rows[i][i])
    return acc


def classical_nil_radical(alg: DgAlgebra) -> Subspace:
    """Largest nilpotent two-sided ideal (= Jacobson radical in finite
    dimension) via the regular trace form tau(a, b) = tr(L_{ab}).

    Valid for char 0 or p > dim; FieldTooSmall otherwise.
    """
    alg.ensure_valid()
    f = alg.field
    n = alg.dim
    if isinstance(f, PrimeField) and f.p <= n:
        raise FieldTooSmall(f"trace-form radical needs p > {n}, have p = {f.p}")
    traces = [
        _mat_trace(alg.left_mult_matrix(alg.basis_element(k).coords)) for k in range(n)
    ]
    z = f.zero
    gram_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = z
            for k, c in enumerate(alg.mul_table[i][j]):
                if c != z:
                    acc = f.add(acc, f.mul(c, traces[k]))
            row.append(acc)
        gram_rows.append(row)
    coeffs = left_nullspace(Mat(f, gram_rows, n))
    return Subspace.from_vectors(f, n, coeffs.rows)


def dgnil(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> DgIdeal:
    """Sum of all nilpotent two-sided dg-ideals.

    Route 1 (char 0 or p > dim): largest dg-ideal inside the classical nil
    radical — it is nilpotent because the nil radical is, and contains every
    nilpotent dg-ideal because each lies in the nil radical.
    Route 2 (small p within budget): literal sum of the nilpotent members of
    the enumerated two-sided dg-ideal lattice.
    """
    alg.ensure_valid()
    f = alg.field
    bi = regular_module(alg, "two")
    if not (isinstance(f, PrimeField) and f.p <= alg.dim):
        nil = classical_nil_radical(alg)
        inside = largest_submodule_inside(bi, nil, "dg")
        ideal = DgIdeal(alg, inside.space, "two", "dg")
    else:
        try:
            lattice = enumerate_submodules(bi, "dg", budget)
        except BudgetExceeded as exc:
            raise FieldTooSmall(
                f"p = {f.p} <= dim = {alg.dim} and lattice enumeration over budget: {exc}"
            ) from exc
        total = Subspace.zero(f, alg.dim)
        for sub in lattice:
            cand = DgIdeal(alg, sub.space, "two", "dg")
            nilp, _ = is_nilpotent(cand)
            if nilp:
                total = total.sum(cand.space)
        ideal = DgIdeal(alg, total, "two", "dg")
    nilp, _ = is_nilpotent(ideal)
    assert nilp, "dgnil must be nilpotent"
    assert ideal.certified, "dgnil must be a certified dg-ideal"
    return ideal


def is_dg_semiprime(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> bool:
    """dgnil(R) = 0."""
    return dgnil(alg, budget).is_zero()


def maximal_two_sided_dg_ideals(
    alg: DgAlgebra, budget: int = DEFAULT_BUDGET
) -> list[DgIdeal]:
    """All maximal proper two-sided dg-ideals, by exhaustive lattice
    enumeration over a small prime field."""
    bi = regular_module(alg, "two")
    lattice = [s.space for s in enumerate_submodules(bi, "dg", budget)]
    proper = [s for s in lattice if s.dim < alg.dim]
    maximal = [
        s
        for s in proper
        if not any(t.contains(s) and t.dim > s.dim for t in proper)
    ]
    return [DgIdeal(alg, s, "two", "dg") for s in maximal]


class RadicalReport:
    """dgnil, the prime radical, and (when enumerable) the intersection of
    maximal two-sided dg-ideals, with agreement flags and witnesses."""

    def __init__(
        self,
        dgnil_ideal: DgIdeal,
        prad_ideal: DgIdeal,
        dgrad2_ideal: DgIdeal | None,
        exponent: int | None,
        via: str,
        maximal_count: int | None,
    ):
        self.dgnil = dgnil_ideal
        self.prad = prad_ideal
        self.dgrad2 = dgrad2_ideal
        self.exponent = exponent
        self.via = via
        self.maximal_count = maximal_count

    @property
    def agreement(self) -> dict:
        out = {
            "dgnil_subset_prad": self.prad.space.contains(self.dgnil.space),
            "dgnil_equals_prad": self.dgnil.space == self.prad.space,
        }
        if self.dgrad2 is not None:
            out["dgnil_equals_dgrad2"] = self.dgnil.space == self.dgrad2.space
        return out


def prad(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> DgIdeal:
    """Intersection of all dg-prime ideals.  In finite dimension the ring is
    dg-artinian on two-sided dg-ideals, so this equals dgnil."""
    return dgnil(alg, budget)


def radical_report(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> RadicalReport:
    n = dgnil(alg, budget)
    _, exponent = is_nilpotent(n)
    p = DgIdeal(alg, n.space, "two", "dg")
    dgrad2 = None
    maximal_count = None
    f = alg.field
    if isinstance(f, PrimeField) and f.p ** alg.dim <= budget:
        maximals = maximal_two_sided_dg_ideals(alg, budget)
        maximal_count = len(maximals)
        inter = Subspace.full(f, alg.dim)
        for m in maximals:
            inter = inter.intersect(m.space)
        dgrad2 = DgIdeal(alg, inter, "two", "dg")
    return RadicalReport(n, p, dgrad2, exponent, "artinian-reduction", maximal_count)


# ------------------------------------------------------------------- prime


class PrimeResult:
    """Three-valued dg-primeness answer with witnesses and cross-checks."""

    def __init__(
        self,
        answer: str,
        method: str,
        witness: tuple[DgIdeal, DgIdeal] | None = None,
        cross_checks: dict | None = None,
        udim: UdimResult | None = None,
    ):
        assert answer in ("yes", "no", "unknown")
        self.answer = answer
        self.method = method
        self.witness = witness
        self.cross_checks = cross_checks or {}
        self.udim = udim

    def __repr__(self):
        return f"PrimeResult({self.answer!r}, method={self.method!r})"


def _independent_ideal_pair(
    alg: DgAlgebra, budget: int, seed: int
) -> tuple[DgIdeal, DgIdeal] | None:
    """Two nonzero two-sided dg-ideals with zero intersection (hence zero
    product), searched greedily inside the bimodule socle."""
    bi = regular_module(alg, "two")
    soc = dg_socle(bi, "dg", budget)
    f = alg.field
    rng = random.Random(seed)
    candidates = [tuple(r) for r in soc.space.basis.rows]
    for _ in range(64):
        coeffs = [f.from_int(rng.randrange(-3, 4)) for _ in range(soc.space.dim)]
        candidates.append(tuple(apply_row(f, coeffs, soc.space.basis)))
    first: DgIdeal | None = None
    for v in candidates:
        if all(c == f.zero for c in v):
            continue
        cand = DgIdeal(alg, dg_generate(bi, [v], "dg").space, "two", "dg")
        if cand.is_zero():
            continue
        if first is None:
            first = cand
            continue
        if cand.space.intersect(first.space).is_zero():
            prod = ideal_product(first, cand)
            assert prod.is_zero(), "independent socle ideals must have zero product"
            return first, cand
        # retry the smaller of the two as the anchor for variety
        if cand.dim < first.dim:
            first = cand
    return None


def is_dg_prime(
    alg: DgAlgebra,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    with_cross_checks: bool = True,
) -> PrimeResult:
    """Decide dg-primeness: no nonzero two-sided dg-ideals I, J with IJ = 0.

    Decision path: a nonzero dgnil N of exponent e gives the witness
    (N^{e-1}, N); otherwise the ring is dg-semiprime and it is dg-prime
    exactly when the dg-uniform dimension of the regular bimodule is 1
    (two independent ideals I, J satisfy IJ ⊆ I∩J = 0, and conversely a
    zero product forces I∩J nilpotent hence zero).  When the bimodule
    uniform dimension only comes back as an interval over QQ, a transfer
    from the cycle subalgebra (gr-prime kernel forces dg-prime) is tried
    before answering unknown.
    """
    alg.ensure_valid()
    cross: dict = {}
    f = alg.field
    if with_cross_checks and isinstance(f, PrimeField) and f.p ** alg.dim <= min(budget, 1 << 12):
        lattice = enumerate_submodules(regular_module(alg, "two"), "dg", budget)
        cross["dg-simple-enumeration"] = "yes" if len(lattice) == 2 else "no"
    n = dgnil(alg, budget)
    if not n.is_zero():
        _, e = is_nilpotent(n)
        witness = (ideal_power(n, e - 1), n) if e and e > 1 else (n, n)
        return PrimeResult("no", "nilpotent-ideal", witness, cross)
    bi = regular_module(alg, "two")
    udim = dg_udim(bi, "dg", budget, seed)
    if udim.exact and udim.value == 1:
        return PrimeResult("yes", "semiprime-uniform", None, cross, udim)
    pair = _independent_ideal_pair(alg, budget, seed)
    if pair is not None:
        return PrimeResult("no", "independent-ideals", pair, cross, udim)
    if udim.exact and udim.value >= 2:
        # exact count says non-uniform but the greedy pair search failed;
        # report unknown rather than an unwitnessed no
        return PrimeResult("unknown", "missing-witness", None, cross, udim)
    if not alg.diff.is_zero():
        sub, _embed = cycle_subalgebra(alg)
        transfer = is_dg_prime(sub, budget, seed, with_cross_checks=False)
        cross["cycle-subalgebra-gr-prime"] = transfer.answer
        if transfer.answer == "yes":
            return PrimeResult("yes", "cycle-subalgebra-transfer", None, cross, udim)
    return PrimeResult("unknown", "udim-interval", None, cross, udim)


# --------------------------------------------------------------------- ass


class AssReport:
    """ass(S) for the multiplicative closure of commuting cycle generators,
    with the stabilization exponent and the regularity of S in R/ass(S)."""

    def __init__(
        self,
        ideal: DgIdeal,
        stabilization_power: int,
        s_image_regular: bool,
        quotient: DgAlgebra,
    ):
        self.ideal = ideal
        self.stabilization_power = stabilization_power
        self.s_image_regular = s_image_regular
        self.quotient = quotient


def ass_ideal(alg: DgAlgebra, s_gens: Iterable, budget: int = DEFAULT_BUDGET) -> AssReport:
    """ass(S) = {r : r s = 0 for some s in S}, S the multiplicative monoid
    generated by the given cycles.

    For commuting generators the union collapses to the ascending chain
    lann(P^k) for P the product of all generators, which stabilizes within
    dim steps; non-commuting generators are rejected (NotOre), as is any
    result that fails the two-sided dg-ideal certificates.
    """
    alg.ensure_valid()
    f = alg.field
    gens = [_as_coords(alg, g) for g in s_gens]
    for g in gens:
        if not vec_zero(f, apply_row(f, g, alg.diff)):
            raise NotACycle(f"generator {g} is not a cycle")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if alg.mul_coords(gens[i], gens[j]) != alg.mul_coords(gens[j], gens[i]):
                raise NotOre("non-commuting multiplicative generators")
    if not gens:
        product = alg.one().coords
    else:
        product = gens[0]
        for g in gens[1:]:
            product = alg.mul_coords(product, g)
    power = product
    prev = lann(alg, [power])
    k = 1
    while True:
        power = alg.mul_coords(power, product)
        k += 1
        nxt = lann(alg, [power])
        if nxt == prev:
            break
        prev = nxt
        if k > alg.dim + 1:
            raise NotOre("annihilator chain failed to stabilize")
    ideal = DgIdeal(alg, prev, "two", "dg")
    if not ideal.certified:
        failing = [name for name, ok in ideal.certificates.items() if not ok]
        raise NotOre(f"ass(S) is not a two-sided dg-ideal (failed: {failing})")
    quot, proj, _lift = quotient_algebra(alg, ideal.space)
    regular = all(
        quot.is_regular(quot.element(apply_row(f, g, proj))) for g in gens
    )
    return AssReport(ideal, k - 1, regular, quot)


def vec_zero(field, v) -> bool:
    return all(c == field.zero for c in v)


# ---------------------------------------------------------------- singular


def _complex_homology_dims(alg: DgAlgebra, space: Subspace) -> dict[int, int]:
    """Per-degree homology dimensions of a d-stable graded subspace viewed
    as a subcomplex of (R, d)."""
    f = alg.field
    cycles = Subspace.from_vectors(f, alg.dim, left_nullspace(alg.diff).rows)
    z_in = space.intersect(cycles)
    b_in = space.image(alg.diff)
    out = {}
    for n in alg.degrees_present():
        comp = alg.component_subspace(n)
        h = z_in.intersect(comp).dim - b_in.intersect(comp).dim
        if h:
            out[n] = h
    return out


class SingularReport:
    """The three singular ideals and their comparison checks.

    zeta is the classical right singular ideal (left annihilator of the
    classical socle of the right regular module), zeta_dg the dg version
    (a certified left dg-ideal), zeta_ker the singular ideal of the cycle
    subalgebra, embedded back into the ambient coordinates.
    """

    def __init__(
        self,
        algebra: DgAlgebra,
        zeta: Subspace,
        zeta_dg: DgIdeal,
        zeta_ker: Subspace,
        zeta_ker_embedded: Subspace,
        checks: list[CheckResult],
        h_zeta_dg: dict[int, int],
        map_flags: dict[str, bool | None],
    ):
        self.algebra = algebra
        self.zeta = zeta
        self.zeta_dg = zeta_dg
        self.zeta_ker = zeta_ker
        self.zeta_ker_embedded = zeta_ker_embedded
        self.checks = checks
        self.h_zeta_dg = h_zeta_dg
        self.map_flags = map_flags

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def classical_singular_ideal(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> Subspace:
    """lann of the classical socle of the right regular module."""
    soc = dg_socle(DgModule.regular(alg, "right"), "classical", budget)
    return lann(alg, soc.space)


def singular_ideals(alg: DgAlgebra, budget: int = DEFAULT_BUDGET) -> SingularReport:
    alg.ensure_valid()
    f = alg.field
    mod_r = DgModule.regular(alg, "right")
    soc_dg = dg_socle(mod_r, "dg", budget)
    zeta_dg = DgIdeal(alg, lann(alg, soc_dg.space), "left", "dg")
    zeta = classical_singular_ideal(alg, budget)
    sub_alg, embed = cycle_subalgebra(alg)
    if sub_alg.dim:
        zeta_ker = classical_singular_ideal(sub_alg, budget)
        zeta_ker_embedded = Subspace.from_vectors(
            f, alg.dim, [apply_row(f, r, embed) for r in zeta_ker.basis.rows]
        )
    else:
        zeta_ker = Subspace.zero(f, 0)
        zeta_ker_embedded = Subspace.zero(f, alg.dim)
    cycles = Subspace.from_vectors(f, alg.dim, left_nullspace(alg.diff).rows)

    checks: list[CheckResult] = []
    checks.append(
        CheckResult(
            "zeta_dg_left_dg_ideal",
            zeta_dg.certified,
            None if zeta_dg.certified else tuple(
                name for name, ok in zeta_dg.certificates.items() if not ok
            ),
        )
    )
    lhs = zeta.intersect(cycles)
    rhs = zeta_dg.space.intersect(cycles)
    checks.append(
        CheckResult(
            "zeta_meet_cycles_inside_zeta_dg",
            rhs.contains(lhs),
            None if rhs.contains(lhs) else lhs.basis.rows,
        )
    )
    ok = rhs.contains(zeta_ker_embedded)
    checks.append(
        CheckResult(
            "zeta_ker_inside_zeta_dg_meet_cycles",
            ok,
            None if ok else zeta_ker_embedded.basis.rows,
        )
    )

    h = homology(alg)
    map_flags: dict[str, bool | None] = {}
    if h.dim:
        zeta_h = classical_singular_ideal(h, budget)
        img_rows = []
        for r in zeta_ker_embedded.basis.rows:
            img_rows.append(h.pi(alg.element(r)).coords)
        img = (
            Subspace.from_vectors(f, h.dim, img_rows)
            if img_rows
            else Subspace.zero(f, h.dim)
        )
        ok = zeta_h.contains(img)
        checks.append(
            CheckResult(
                "pi_zeta_ker_inside_zeta_homology",
                ok,
                None if ok else img.basis.rows,
            )
        )
    else:
        checks.append(CheckResult("pi_zeta_ker_inside_zeta_homology", True, "skipped: homology is zero"))

    # homology of the subcomplex zeta_dg and the map induced by inclusion
    h_dims = _complex_homology_dims(alg, zeta_dg.space)
    z_in = zeta_dg.space.intersect(cycles)
    b_in = zeta_dg.space.image(alg.diff)
    boundaries = Subspace.from_vectors(
        f, alg.dim, [apply_row(f, alg.basis_element(i).coords, alg.diff) for i in range(alg.dim)]
    )
    h_dim_total = z_in.dim - b_in.dim
    image_dim = z_in.sum(boundaries).dim - boundaries.dim
    map_flags["zero_map"] = image_dim == 0
    map_flags["injective"] = image_dim == h_dim_total
    map_flags["surjective"] = image_dim == h.dim
    return SingularReport(
        alg, zeta, zeta_dg, zeta_ker, zeta_ker_embedded, checks, h_dims, map_flags
    )


# --------------------------------------------------- semiprime ideal theory


class SemiprimeIdealReport:
    """Annihilator symmetry and essentiality facts for a proper two-sided
    dg-ideal of a dg-semiprime algebra."""

    def __init__(self, ideal: DgIdeal, ann: Subspace, checks: list[CheckResult]):
        self.ideal = ideal
        self.ann = ann
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def semiprime_ideal_properties(
    alg: DgAlgebra, ideal: DgIdeal, budget: int = DEFAULT_BUDGET
) -> SemiprimeIdealReport:
    """For dg-semiprime R and a proper two-sided dg-ideal I: lann = rann
    (=: ann), I ∩ ann = 0, I ⊕ ann is dg-essential, and I is dg-essential
    iff ann = 0."""
    alg.ensure_valid()
    if not is_dg_semiprime(alg, budget):
        raise NotSemiprime("algebra has a nonzero nilpotent dg-ideal")
    if ideal.side != "two" or not ideal.certified:
        raise ValueError("a certified two-sided dg-ideal is required")
    if ideal.space.dim == alg.dim:
        raise ValueError("the improper ideal I = A is rejected")
    l_space = lann(alg, ideal.space)
    r_space = rann(alg, ideal.space)
    checks = []
    same = l_space == r_space
    checks.append(
        CheckResult(
            "lann_equals_rann",
            same,
            None if same else (l_space.basis.rows, r_space.basis.rows),
        )
    )
    ann = l_space.intersect(r_space)
    inter = ideal.space.intersect(ann)
    checks.append(
        CheckResult("ideal_meets_ann_trivially", inter.is_zero(), None if inter.is_zero() else inter.basis.rows)
    )
    bi = regular_module(alg, "two")
    total = ideal.space.sum(ann)
    ess = is_dg_essential(total, bi, "dg", budget)
    checks.append(CheckResult("ideal_plus_ann_dg_essential", ess, None if ess else total.basis.rows))
    ess_i = is_dg_essential(ideal.space, bi, "dg", budget)
    equiv = ess_i == ann.is_zero()
    checks.append(
        CheckResult(
            "dg_essential_iff_ann_zero",
            equiv,
            None if equiv else {"essential": ess_i, "ann_dim": ann.dim},
        )
    )
    return SemiprimeIdealReport(ideal, ann, checks)
