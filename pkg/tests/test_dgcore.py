from fractions import Fraction

import pytest

from dgforge.dgcore import (
    Element,
    Mat,
    algebra_from_products,
    cycle_subalgebra,
    direct_sum,
    homology,
    quotient_algebra,
)
from dgforge.errors import NotACycle
from dgforge.fields import GF, QQ
from dgforge.fixtures import (
    acyclic_block_plus_dual,
    dual_numbers,
    endo2x2_dg,
    exterior2,
    group_algebra_c2,
    product_field,
    triangular2,
    trunc_poly_dg,
    truncated_poly,
)
from dgforge.linalg import Subspace


# ------------------------------------------------------------ validation

def test_all_fixture_algebras_validate():
    for alg in (
        endo2x2_dg(QQ),
        endo2x2_dg(GF(5)),
        trunc_poly_dg(QQ),
        dual_numbers(QQ),
        truncated_poly(QQ, 4),
        product_field(GF(3)),
        triangular2(QQ),
        exterior2(QQ),
        exterior2(GF(3)),
        group_algebra_c2(GF(2)),
        acyclic_block_plus_dual(QQ),
    ):
        assert alg.validate().ok, alg


def test_leibniz_violation_reported_with_witness():
    # flip the sign of d(e21) in the matrix algebra: still degree +1 and
    # d**2 = 0, but Leibniz breaks on products involving e21
    alg = endo2x2_dg(QQ)
    bad_diff = [list(r) for r in alg.diff.rows]
    bad_diff[2] = [-c for c in bad_diff[2]]
    from dgforge.dgcore import DgAlgebra

    bad = DgAlgebra(
        QQ, alg.basis_names, alg.degrees, alg.mul_table, alg.unit,
        Mat(QQ, bad_diff, 4),
    )
    report = bad.validate()
    names = {c.name: c for c in report.checks}
    assert not names["leibniz"].ok
    assert names["leibniz"].witness is not None
    assert names["d_squared"].ok  # the corrupted d still squares to zero


def test_grading_violation_reported():
    alg = algebra_from_products(
        QQ, ["1", "x"], [0, 1],
        {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
         ("x", "x"): {"x": 1}},  # degree 2 product lands in degree 1
        {}, unit_name="1",
    )
    report = alg.validate()
    names = {c.name: c for c in report.checks}
    assert not names["grading"].ok
    assert names["grading"].witness == ("x", "x", "x")


def test_d_squared_violation_reported():
    alg = algebra_from_products(
        QQ, ["a", "b", "c"], [0, 1, 2],
        {("a", "a"): {"a": 1}, ("a", "b"): {"b": 1}, ("b", "a"): {"b": 1},
         ("a", "c"): {"c": 1}, ("c", "a"): {"c": 1}},
        {"a": {"b": 1}, "b": {"c": 1}},
        unit_name="a",
    )
    report = alg.validate()
    names = {c.name: c for c in report.checks}
    assert not names["d_squared"].ok


# ------------------------------------------------------------ arithmetic

def test_matrix_units_multiply_and_differentiate():
    alg = endo2x2_dg(QQ)
    e11, e12, e21, e22 = (alg.by_name(n) for n in ("e11", "e12", "e21", "e22"))
    one = alg.one()
    assert e21 * e12 == e22
    assert e12 * e21 == e11
    assert e11 * e21 == alg.zero()
    assert e21.d() == one
    assert e11.d() == -e12
    assert e22.d() == e12
    assert e12.d() == alg.zero()
    # Leibniz by hand on (e21, e12): d(e22) = d(e21)e12 + (-1)^{-1} e21 d(e12)
    assert (e21 * e12).d() == e21.d() * e12 - e21 * e12.d()
    assert one.d() == alg.zero()


def test_element_degrees():
    alg = endo2x2_dg(QQ)
    assert alg.by_name("e12").degree() == 1
    assert alg.by_name("e21").degree() == -1
    assert alg.zero().degree() is None
    mixed = alg.by_name("e11") + alg.by_name("e12")
    with pytest.raises(ValueError):
        mixed.degree()
    comps = mixed.homogeneous_components()
    assert sorted(comps) == [0, 1]
    assert comps[0] == alg.by_name("e11")
    assert comps[1] == alg.by_name("e12")


def test_invert():
    alg = endo2x2_dg(QQ)
    e11, e12, e21, e22 = (alg.by_name(n) for n in ("e11", "e12", "e21", "e22"))
    swap = e12 + e21
    inv = alg.invert(swap)
    assert inv == swap  # swap matrix is an involution
    assert alg.invert(e11) is None  # idempotent, not invertible
    tp = trunc_poly_dg(QQ)
    x, one = tp.by_name("x"), tp.one()
    assert tp.invert(x) is None
    assert tp.invert(one + x) == one - x
    diag = e11.scale(Fraction(2)) + e22.scale(Fraction(-3))
    got = alg.invert(diag)
    assert got == e11.scale(Fraction(1, 2)) + e22.scale(Fraction(-1, 3))


def test_is_regular_matches_invertibility_in_finite_dimension():
    alg = endo2x2_dg(QQ)
    for el in (alg.by_name("e11"), alg.by_name("e12"), alg.one(),
               alg.by_name("e12") + alg.by_name("e21")):
        assert alg.is_regular(el) == (alg.invert(el) is not None)


# ------------------------------------------------------------ homology

def test_acyclic_fixtures_have_zero_homology():
    for alg in (endo2x2_dg(QQ), trunc_poly_dg(QQ), endo2x2_dg(GF(7))):
        h = homology(alg)
        assert h.dim == 0
        assert h.cycles.dim == h.boundaries.dim


def test_endo2x2_cycles_are_unit_and_e12():
    alg = endo2x2_dg(QQ)
    h = homology(alg)
    expect = Subspace.from_vectors(
        QQ, 4, [alg.one().coords, alg.by_name("e12").coords]
    )
    assert h.cycles == expect
    assert h.boundaries == expect


def test_zero_differential_homology_is_identity():
    alg = exterior2(QQ)
    h = homology(alg)
    assert h.dim == alg.dim
    # products carry over: pi(x) * pi(y) = pi(xy)
    x, y, xy = alg.by_name("x"), alg.by_name("y"), alg.by_name("xy")
    assert h.pi(x) * h.pi(y) == h.pi(xy)
    assert h.pi(y) * h.pi(x) == -h.pi(xy)
    assert h.section(h.pi(x)) == x


def test_partial_homology_block_sum():
    alg = acyclic_block_plus_dual(QQ)
    h = homology(alg)
    assert h.dim == 2
    assert h.one() != h.zero()
    # the class of the second-block x is nonzero and squares to zero
    xb = alg.by_name("b.x")
    hx = h.pi(xb)
    assert not hx.is_zero()
    assert (hx * hx).is_zero()


def test_pi_rejects_non_cycles():
    alg = endo2x2_dg(QQ)
    h = homology(alg)
    with pytest.raises(NotACycle):
        h.pi(alg.by_name("e21"))
    # boundaries map to zero
    assert h.pi(alg.one()).is_zero()


def test_pi_section_round_trip():
    alg = acyclic_block_plus_dual(GF(5))
    h = homology(alg)
    for k in range(h.dim):
        hk = h.basis_element(k)
        assert h.pi(h.section(hk)) == hk


# ------------------------------------------------------------ cycle algebra

def test_cycle_subalgebra_of_matrix_dg():
    alg = endo2x2_dg(QQ)
    sub, embed = cycle_subalgebra(alg)
    assert sub.dim == 2
    assert sorted(sub.degrees) == [0, 1]
    # embedding rows really are cycles
    for row in embed.rows:
        assert Element(alg, row).d().is_zero()
    # the degree-1 cycle squares to zero: ker(d) = K[x]/(x^2), |x| = 1
    k = sub.degrees.index(1)
    zx = sub.basis_element(k)
    assert (zx * zx).is_zero()
    assert sub.validate().ok


def test_cycle_subalgebra_zero_differential_is_everything():
    alg = triangular2(QQ)
    sub, embed = cycle_subalgebra(alg)
    assert sub.dim == alg.dim


# ------------------------------------------------------------ quotients

def test_quotient_of_truncated_polynomials():
    alg = truncated_poly(QQ, 3)  # K[x]/x^3
    x2 = alg.by_name("x2")
    ideal = Subspace.from_vectors(QQ, 3, [x2.coords])
    quot, proj, lift = quotient_algebra(alg, ideal)
    assert quot.dim == 2
    assert quot.validate().ok
    # x * x = x^2 = 0 in the quotient
    xq = quot.by_name("x")
    assert (xq * xq).is_zero()


def test_direct_sum_blocks_are_orthogonal():
    alg = direct_sum(product_field(QQ), dual_numbers(QQ))
    assert alg.validate().ok
    assert (alg.by_name("a.u") * alg.by_name("b.x")).is_zero()
    assert alg.one() == alg.element([1, 1, 1, 0])
