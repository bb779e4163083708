"""Built-in fixture algebras and rings.

These are small, hand-checkable dg-algebras that exercise every corner of
the toolkit: acyclic matrix algebras, truncated polynomial rings with and
without differential, products of fields, triangular and exterior algebras.
Each builder documents its multiplication and differential inline.
"""

from __future__ import annotations

from .dgcore import DgAlgebra, algebra_from_products, direct_sum
from .fields import Field, QQ


def endo2x2_dg(field: Field = QQ, lam=1) -> DgAlgebra:
    """End(K^2) with grading |e11|=|e22|=0, |e12|=+1, |e21|=-1 and
    differential d(e21) = lam*(e11+e22), d(e11) = -lam*e12,
    d(e22) = lam*e12, d(e12) = 0.  Acyclic for lam != 0."""
    lam = field.parse(lam)
    names = ["e11", "e12", "e21", "e22"]
    prods = {}
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                for e in (1, 2):
                    if b == c:
                        prods[(f"e{a}{b}", f"e{c}{e}")] = {f"e{a}{e}": 1}
    diff = {
        "e11": {"e12": field.neg(lam)},
        "e22": {"e12": lam},
        "e21": {"e11": lam, "e22": lam},
    }
    alg = algebra_from_products(
        field, names, [0, 1, -1, 0], prods, diff, unit_coords=[1, 0, 0, 1]
    )
    alg.ensure_valid()
    return alg


def trunc_poly_dg(field: Field = QQ) -> DgAlgebra:
    """K[x]/(x^2) with |x| = -1 and d(x) = 1; acyclic and dg-simple."""
    alg = algebra_from_products(
        field,
        ["1", "x"],
        [0, -1],
        {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}},
        {"x": {"1": 1}},
        unit_name="1",
    )
    alg.ensure_valid()
    return alg


def dual_numbers(field: Field = QQ, deg: int = 0) -> DgAlgebra:
    """K[x]/(x^2) with zero differential; |x| = deg (0 gives the classical
    dual numbers, nonzero an evenly/oddly graded square-zero extension)."""
    alg = algebra_from_products(
        field,
        ["1", "x"],
        [0, deg],
        {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}},
        {},
        unit_name="1",
    )
    alg.ensure_valid()
    return alg


def truncated_poly(field: Field = QQ, n: int = 3, deg: int = 0) -> DgAlgebra:
    """K[x]/(x^n), zero differential, |x| = deg."""
    names = ["1"] + [f"x{k}" if k > 1 else "x" for k in range(1, n)]
    prods = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                prods[(names[i], names[j])] = {names[i + j]: 1}
    alg = algebra_from_products(
        field, names, [deg * k for k in range(n)], prods, {}, unit_name="1"
    )
    alg.ensure_valid()
    return alg


def product_field(field: Field = QQ) -> DgAlgebra:
    """K x K: two orthogonal idempotents u, v with unit u+v, d = 0."""
    alg = algebra_from_products(
        field,
        ["u", "v"],
        [0, 0],
        {("u", "u"): {"u": 1}, ("v", "v"): {"v": 1}},
        {},
        unit_coords=[1, 1],
    )
    alg.ensure_valid()
    return alg


def triangular2(field: Field = QQ) -> DgAlgebra:
    """Upper triangular 2x2 matrices, graded by |e12| = 1, d = 0."""
    alg = algebra_from_products(
        field,
        ["e11", "e12", "e22"],
        [0, 1, 0],
        {
            ("e11", "e11"): {"e11": 1},
            ("e11", "e12"): {"e12": 1},
            ("e12", "e22"): {"e12": 1},
            ("e22", "e22"): {"e22": 1},
        },
        {},
        unit_coords=[1, 0, 1],
    )
    alg.ensure_valid()
    return alg


def exterior2(field: Field = QQ) -> DgAlgebra:
    """Exterior algebra on two degree-1 generators, zero differential:
    basis 1, x, y, xy with yx = -xy and x^2 = y^2 = 0."""
    alg = algebra_from_products(
        field,
        ["1", "x", "y", "xy"],
        [0, 1, 1, 2],
        {
            ("1", "1"): {"1": 1},
            ("1", "x"): {"x": 1},
            ("1", "y"): {"y": 1},
            ("1", "xy"): {"xy": 1},
            ("x", "1"): {"x": 1},
            ("y", "1"): {"y": 1},
            ("xy", "1"): {"xy": 1},
            ("x", "y"): {"xy": 1},
            ("y", "x"): {"xy": -1},
        },
        {},
        unit_name="1",
    )
    alg.ensure_valid()
    return alg


def group_algebra_c2(field: Field = QQ) -> DgAlgebra:
    """K[C_2] = K[g]/(g^2 - 1), degree 0, zero differential. Semisimple in
    characteristic != 2, local with radical (g-1) in characteristic 2."""
    alg = algebra_from_products(
        field,
        ["1", "g"],
        [0, 0],
        {
            ("1", "1"): {"1": 1},
            ("1", "g"): {"g": 1},
            ("g", "1"): {"g": 1},
            ("g", "g"): {"1": 1},
        },
        {},
        unit_name="1",
    )
    alg.ensure_valid()
    return alg


def matrix2_graded(field: Field = QQ) -> DgAlgebra:
    """End(K^2) with the (0, +1, -1, 0) grading and zero differential."""
    return endo2x2_dg(field, lam=0)


def acyclic_block_plus_dual(field: Field = QQ) -> DgAlgebra:
    """endo2x2_dg x dual numbers: nonzero differential with nonzero
    homology concentrated in the second block."""
    return direct_sum(endo2x2_dg(field), dual_numbers(field))
