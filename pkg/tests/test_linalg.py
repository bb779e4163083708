import random
from fractions import Fraction

import pytest

from dgforge.errors import DimMismatch, NoSolution
from dgforge.fields import GF, QQ
from dgforge.linalg import (
    Mat,
    Subspace,
    apply_row,
    left_nullspace,
    rref,
    right_nullspace,
    solve_linear,
    solve_right,
    _rref_generic,
)

import oracles


def qmat(rows):
    return Mat.from_parsed(QQ, rows)


def pmat(p, rows):
    return Mat.from_parsed(GF(p), rows)


# ---------------------------------------------------------------- rref

def test_rref_drops_dependent_row():
    # hand elimination: R1 <- R1/2 = [1 2]; R2 <- R2 - R1 = [0 0]
    r, pivots = rref(qmat([[2, 4], [1, 2]]))
    assert [list(row) for row in r.rows] == [[1, 2]]
    assert pivots == (0,)


def test_rref_identity_fixed_point():
    m = Mat.identity(QQ, 3)
    r, pivots = rref(m)
    assert r == m and pivots == (0, 1, 2)


def _random_qmat(rng, nrows, ncols):
    return Mat(
        QQ,
        [
            [Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(ncols)]
            for _ in range(nrows)
        ],
        ncols,
    )


def test_rref_idempotent_and_rank_nullity():
    rng = random.Random(0)
    for _ in range(40):
        nrows, ncols = rng.randrange(1, 5), rng.randrange(1, 5)
        m = _random_qmat(rng, nrows, ncols)
        r, pivots = rref(m)
        r2, pivots2 = rref(r)
        assert r2 == r and pivots2 == pivots
        ns = right_nullspace(m)
        assert len(pivots) + ns.nrows == ncols
        # every nullspace row really solves m @ x = 0
        for row in ns.rows:
            col = Mat(QQ, [(x,) for x in row], 1)
            assert (m @ col).is_zero()


def test_fp_kernel_agrees_with_generic_elimination():
    rng = random.Random(1)
    for p in (2, 3, 5, 101):
        f = GF(p)
        for _ in range(25):
            nrows, ncols = rng.randrange(1, 6), rng.randrange(1, 6)
            rows = [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]
            via_kernel, piv_kernel = rref(Mat(f, rows, ncols))
            gen_rows, gen_piv, gen_rank = _rref_generic(f, rows)
            assert [list(r) for r in via_kernel.rows] == gen_rows[:gen_rank]
            assert list(piv_kernel) == gen_piv


# ---------------------------------------------------------------- solve

def test_solve_sets_free_variables_to_zero():
    x = solve_linear(qmat([[1, 1]]), [Fraction(2)])
    assert x == (Fraction(2), Fraction(0))


def test_solve_inconsistent_raises():
    with pytest.raises(NoSolution):
        solve_linear(qmat([[0]]), [Fraction(1)])
    with pytest.raises(NoSolution):
        solve_linear(qmat([[1, 1], [1, 1]]), [Fraction(1), Fraction(2)])


def test_solve_right_multi_rhs():
    a = qmat([[1, 2], [3, 4]])
    b = Mat.identity(QQ, 2)
    x = solve_right(a, b)
    assert a @ x == b


def test_solve_random_consistent_systems():
    rng = random.Random(2)
    for _ in range(30):
        n, m = rng.randrange(1, 5), rng.randrange(1, 5)
        a = _random_qmat(rng, n, m)
        xs = [Fraction(rng.randrange(-3, 4)) for _ in range(m)]
        b = [sum(a.rows[i][j] * xs[j] for j in range(m)) for i in range(n)]
        x = solve_linear(a, b)
        got = [sum(a.rows[i][j] * x[j] for j in range(m)) for i in range(n)]
        assert got == list(b)


def test_shape_errors():
    with pytest.raises(DimMismatch):
        qmat([[1, 2]]) @ qmat([[1, 2]])
    with pytest.raises(DimMismatch):
        Mat(QQ, [[Fraction(1)], [Fraction(1), Fraction(2)]])


# ---------------------------------------------------------------- subspaces

def test_subspace_canonical_equality():
    f = GF(5)
    a = Subspace.from_vectors(f, 3, [(1, 2, 0), (0, 0, 1)])
    b = Subspace.from_vectors(f, 3, [(2, 4, 1), (0, 0, 3), (1, 2, 1)])
    assert a == b
    assert hash(a) == hash(b)
    assert a.basis == b.basis


def test_subspace_ops_match_brute_force_sets():
    rng = random.Random(3)
    for p in (2, 3):
        f = GF(p)
        for _ in range(30):
            n = rng.randrange(1, 5)
            va = [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randrange(3))]
            vb = [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randrange(3))]
            a = Subspace.from_vectors(f, n, va) if va else Subspace.zero(f, n)
            b = Subspace.from_vectors(f, n, vb) if vb else Subspace.zero(f, n)
            sa, sb = oracles.span_set(p, va, n), oracles.span_set(p, vb, n)
            assert oracles.subspace_set(a.sum(b)) == oracles.span_set(p, va + vb, n)
            assert oracles.subspace_set(a.intersect(b)) == sa & sb
            assert a.contains(b) == (sb <= sa)
            # dimension formula
            assert a.sum(b).dim == a.dim + b.dim - a.intersect(b).dim


def test_preimage_matches_brute_force():
    rng = random.Random(4)
    for p in (2, 3):
        f = GF(p)
        for _ in range(25):
            n, m = rng.randrange(1, 4), rng.randrange(1, 4)
            op = Mat(f, [[rng.randrange(p) for _ in range(m)] for _ in range(n)], m)
            vw = [[rng.randrange(p) for _ in range(m)] for _ in range(rng.randrange(3))]
            w = Subspace.from_vectors(f, m, vw) if vw else Subspace.zero(f, m)
            pre = w.preimage(op)
            expected = oracles.brute_preimage_set(
                f, op, oracles.span_set(p, vw, m), n
            )
            assert oracles.subspace_set(pre) == expected


def test_preimage_of_line_under_nilpotent_map_is_everything():
    # v |-> (v2, 0) lands in span{e1} for every v
    op = qmat([[0, 0], [1, 0]])
    w = Subspace.from_vectors(QQ, 2, [(Fraction(1), Fraction(0))])
    assert w.preimage(op).dim == 2


def test_quotient_basis_completes_to_ambient():
    f = GF(3)
    a = Subspace.from_vectors(f, 4, [(1, 2, 0, 1), (0, 0, 1, 2)])
    q = a.quotient_basis()
    assert len(q) == 2
    total = Subspace.from_vectors(f, 4, list(a.basis.rows) + list(q))
    assert total.is_full()


def test_membership_matrix():
    f = GF(5)
    w = Subspace.from_vectors(f, 3, [(1, 0, 2), (0, 1, 3)])
    k = w.membership_matrix()
    for v in oracles.all_vectors(5, 3):
        residual = apply_row(f, v, k)
        assert (v in oracles.subspace_set(w)) == all(x == 0 for x in residual)


def test_image_and_left_nullspace():
    f = GF(3)
    op = pmat(3, [[1, 0], [1, 0], [0, 0]])
    s = Subspace.full(f, 3)
    img = s.image(op)
    assert oracles.subspace_set(img) == oracles.span_set(3, [(1, 0)], 2)
    ln = left_nullspace(op)
    for row in ln.rows:
        assert all(x == 0 for x in apply_row(f, row, op))
    assert ln.nrows == 2
