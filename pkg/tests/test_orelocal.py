"""Ore localisation: multiplicative sets, fraction arithmetic, the extended
differential and its verification suite, homology comparison, the graded
Goldie pipeline, essentiality/udim transfer and the lying-over check —
pinned against the direct product-rule oracle on the identity-map case and
hand-computed Laurent values."""

import random

import pytest

from dgforge.dgcore import koszul_sign
from dgforge.dgideal import ass_ideal, ideal_product
from dgforge.dgpoly import GradedPolyRing, poly_ring_kx
from dgforge.errors import (
    FieldTooSmall,
    HypothesisFailed,
    InhomogeneousDenominator,
    NotACycle,
    NotHereditary,
    NotOre,
    NotRegular,
    VerificationError,
    WindowTooSmall,
)
from dgforge.fields import GF, QQ
from dgforge.fixtures import (
    endo2x2_dg,
    group_algebra_c2,
    matrix2_graded,
    product_field,
)
from dgforge.linalg import Mat
from dgforge.orelocal import (
    Fraction,
    GoldieReport,
    IsoReport,
    LocalisedDgRing,
    LyingOverReport,
    MultSet,
    PropertyReport,
    TransferReport,
    VERIFICATION_CHECKS,
    d_S,
    goldie_pipeline,
    homology_comparison,
    localisation_transfer_checks,
    localise,
    lying_over_check,
    mult_set,
    quotient_ring_axioms,
    verify_localisation,
)

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)


def kx_ring(field=QQ):
    return poly_ring_kx(field)


def kx_zero_diff(field=QQ):
    ring = GradedPolyRing(field, [("X", -1, False)], None)
    ring.ensure_valid()
    return ring


def unit_set(alg):
    """Degree-0 invertible denominators of the endomorphism fixture."""
    return mult_set(alg, [alg.one(), alg.element([1, 0, 0, 2])], "regular")


# ------------------------------------------------------------ mult sets


def test_mult_set_rejects_inhomogeneous_generators():
    kx = kx_ring()
    x = kx.gen("X")
    with pytest.raises(InhomogeneousDenominator):
        mult_set(kx, [x + x * x], "regular")
    endo = endo2x2_dg(QQ)
    with pytest.raises(InhomogeneousDenominator):
        mult_set(endo, [endo.element([1, 0, 1, 0])], "regular")


def test_mult_set_rejects_zero_and_zero_divisors():
    kx = kx_ring()
    with pytest.raises(NotRegular):
        mult_set(kx, [kx.zero()], "regular")
    endo = endo2x2_dg(QQ)
    with pytest.raises(NotRegular):
        mult_set(endo, [endo.by_name("e12")], "regular")


def test_mult_set_kernel_mode_requires_cycles():
    kx = kx_ring()
    with pytest.raises(NotACycle):
        mult_set(kx, [kx.gen("X")], "kernel")  # d(X) = 1
    endo = endo2x2_dg(QQ)
    with pytest.raises(NotACycle):
        mult_set(endo, [endo.by_name("e21")], "kernel")


def test_mult_set_poly_rejects_non_monomial_generators():
    ring = GradedPolyRing(QQ, [("U", 1, False), ("V", 1, False)], None)
    u, v = ring.gen("U"), ring.gen("V")
    with pytest.raises(NotOre):
        mult_set(ring, [u + v], "regular")


def test_mult_set_membership_finite_closure():
    kk = product_field(QQ)
    s = mult_set(kk, [kk.one(), kk.by_name("u")], "kernel")
    assert s.in_kernel
    assert s.contains(kk.one()) and s.contains(kk.by_name("u"))
    assert not s.contains(kk.by_name("v"))
    assert not s.contains(kk.zero())
    assert s.membership_exact


def test_mult_set_membership_falls_back_on_open_monoids():
    endo = endo2x2_dg(QQ)
    s = unit_set(endo)
    d = endo.element([1, 0, 0, 4])  # = (e11 + 2 e22)^2, never enumerated
    assert s.contains(d)
    assert not s.membership_exact
    assert not s.contains(endo.by_name("e12"))  # zero divisor
    assert not s.contains(endo.element([1, 0, 1, 0]))  # inhomogeneous


def test_mult_set_poly_membership_by_exponents():
    kx = kx_ring()
    x = kx.gen("X")
    s = mult_set(kx, [x * x], "kernel")
    assert s.contains(kx.one())
    assert s.contains(kx.monomial((4,)))
    assert not s.contains(kx.monomial((3,)))
    assert not s.contains(kx.monomial((2,), QQ.from_int(2)))  # not monic


def test_mult_set_random_member_stays_in_set():
    kx = kx_ring()
    s = mult_set(kx, [kx.gen("X")], "regular")
    rng = random.Random(0)
    for _ in range(50):
        assert s.contains(s.random_member(rng))
    endo = endo2x2_dg(QQ)
    su = unit_set(endo)
    rng = random.Random(0)
    for _ in range(50):
        assert su.contains(su.random_member(rng))


# ------------------------------------------------------------- localise


def test_localise_findim_units_is_identity():
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    assert lr.case == 1 and lr.target is endo
    assert lr.ass_space.is_zero()
    for i in range(endo.dim):
        assert lr.lam(endo.basis_element(i)) == endo.basis_element(i)


def test_localise_product_field_kernel_case_two():
    kk = product_field(QQ)
    s = mult_set(kk, [kk.one(), kk.by_name("u")], "kernel")
    lr = localise(kk, s)
    assert lr.case == 2
    assert lr.target.dim == 1
    assert lr.ass_space.dim == 1
    assert lr.ass_space.contains_vector(kk.by_name("v").coords)
    # u maps to the unit of the quotient field, v to zero
    assert lr.lam(kk.by_name("u")) == lr.target.one()
    assert lr.lam(kk.by_name("v")).is_zero()


def test_localise_kernel_mode_with_trivial_set_keeps_ring():
    kk = product_field(QQ)
    lr = localise(kk, mult_set(kk, [kk.one()], "kernel"))
    assert lr.case == 2 and lr.ass_space.is_zero()
    assert lr.target.dim == kk.dim


def test_ass_ideal_of_regular_set_is_zero():
    endo = endo2x2_dg(QQ)
    report = ass_ideal(endo, [endo.one()])
    assert report.ideal.space.is_zero()
    lr = localise(endo, unit_set(endo))
    assert lr.ass_space.is_zero()


def test_localise_poly_builds_saturated_laurent_ring():
    kx = kx_ring()
    x = kx.gen("X")
    lr = localise(kx, mult_set(kx, [x * x], "kernel"))
    assert lr.target.laurent == (True,)
    assert lr.lam(x) == lr.target.gen("X")
    # X itself becomes invertible: X^{-1} = X * (X^2)^{-1}
    assert lr.target.gen("X").is_unit()


def test_fraction_requires_denominator_from_the_set():
    kx = kx_ring()
    lr = localise(kx, mult_set(kx, [kx.gen("X") ** 2], "kernel"))
    with pytest.raises(ValueError):
        lr.fraction(kx.one(), kx.monomial((3,)))


# ------------------------------------------------- fraction arithmetic


def test_fraction_degree_and_zero():
    kx = kx_ring()
    lr = localise(kx, mult_set(kx, [kx.gen("X")], "regular"))
    f = lr.fraction(kx.one(), kx.gen("X"))
    assert f.degree() == 0 - (-1)
    assert lr.zero_fraction().degree() is None
    assert lr.zero_fraction().is_zero()
    with pytest.raises(TypeError):
        hash(f)


def test_fraction_equality_is_compatible_with_arithmetic():
    kx = kx_ring()
    x = kx.gen("X")
    lr = localise(kx, mult_set(kx, [x], "regular"))
    rng = random.Random(3)
    ms = lr.mult_set
    for _ in range(200):
        num = kx.monomial((rng.randint(0, 4),), QQ.from_int(rng.randint(-3, 3)))
        s = ms.random_member(rng)
        t = ms.random_member(rng)
        f1 = lr.fraction(num, s)
        f2 = lr.fraction(num * t, s * t)
        g = lr.fraction(kx.monomial((rng.randint(0, 3),)), ms.random_member(rng))
        assert f1 == f2 and f2 == f1
        assert f1 + g == f2 + g
        assert f1 * g == f2 * g
        assert f1 - f1 == lr.zero_fraction()


def test_fraction_equality_findim_resolves_values():
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    rng = random.Random(5)
    ms = lr.mult_set
    for _ in range(100):
        a = endo.element([QQ.from_int(rng.randint(-3, 3)) for _ in range(4)])
        s = ms.random_member(rng)
        t = ms.random_member(rng)
        f1 = lr.fraction(a, s)
        ta = endo.element(endo.mul_coords(t.coords, a.coords))
        ts = endo.element(endo.mul_coords(t.coords, s.coords))
        f2 = lr.fraction(ta, ts)
        assert f1 == f2
        assert (f1 - f2).is_zero() or (f1 - f2).value().is_zero()


# ------------------------------------------------- extended differential


def test_extended_differential_motivating_hand_value():
    # |X| = -1, d(X) = 1: d(1, X) = (1, X^2), i.e. d(X^{-1}) = X^{-2}
    kx = kx_ring()
    x = kx.gen("X")
    lr = localise(kx, mult_set(kx, [x], "regular"))
    df = lr.fraction(kx.one(), x).d()
    assert df == lr.fraction(kx.one(), x * x)
    assert df.value() == lr.target.monomial((-2,))


def test_extended_differential_even_kernel_denominators_reduce():
    # d(s) = 0 and |s| even: d(b, s) = (d(b), s) with no correction term
    kx = kx_ring()
    s_el = kx.gen("X") ** 2
    lr = localise(kx, mult_set(kx, [s_el], "kernel"))
    rng = random.Random(11)
    for _ in range(100):
        b = kx.monomial((rng.randint(0, 5),), QQ.from_int(rng.randint(-3, 3)))
        assert lr.fraction(b, s_el).d() == lr.fraction(b.d(), s_el)


def test_extended_differential_matches_product_rule_oracle():
    # case 1 has lambda = id, so d_S on a resolved fraction must equal the
    # plain differential of the resolved element
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    rng = random.Random(7)
    for _ in range(200):
        a = endo.element([QQ.from_int(rng.randint(-4, 4)) for _ in range(4)])
        f = lr.fraction(a, lr.mult_set.random_member(rng))
        assert f.d().value() == f.value().d()


def test_inverse_rule_agrees_with_fraction_formula():
    # d(s^{-1}) = (-1)^{|s|+1} s^{-1} d(s) s^{-1}, computed two ways
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    rng = random.Random(13)
    for _ in range(60):
        s = lr.mult_set.random_member(rng)
        via_formula = lr.fraction(endo.one(), s).d().value()
        inv = endo.invert(s)
        sign = koszul_sign(QQ, s.degree() + 1)
        direct = (inv * s.d() * inv).scale(sign)
        assert via_formula == direct
    kx = kx_ring()
    x = kx.gen("X")
    lrp = localise(kx, mult_set(kx, [x], "regular"))
    xinv = lrp.target.gen("X").monomial_inverse()
    sign = koszul_sign(QQ, x.degree() + 1)
    assert lrp.fraction(kx.one(), x).d().value() == (
        xinv * lrp.target.cast(x.d()) * xinv
    ).scale(sign)


def test_free_function_form_matches_method():
    kx = kx_ring()
    x = kx.gen("X")
    lr = localise(kx, mult_set(kx, [x], "regular"))
    f = lr.fraction(kx.monomial((3,)), x)
    assert d_S(f) == f.d()


# ------------------------------------------------------- verification


def test_verify_localisation_poly_all_checks():
    kx = kx_ring()
    lr = localise(kx, mult_set(kx, [kx.gen("X")], "regular"))
    report = verify_localisation(lr, samples=150, seed=0)
    assert report.ok and len(report.checks) == len(VERIFICATION_CHECKS)
    assert [c.name for c in report.checks] == list(VERIFICATION_CHECKS)


def test_verify_localisation_findim_all_checks():
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    report = verify_localisation(lr, samples=150, seed=0)
    assert report.ok and len(report.checks) == len(VERIFICATION_CHECKS)


def test_verify_localisation_case_two_kernel_equals_ass():
    kk = product_field(QQ)
    lr = localise(kk, mult_set(kk, [kk.one(), kk.by_name("u")], "kernel"))
    report = verify_localisation(lr, samples=150, seed=2)
    assert report.ok
    inj = [c for c in report.checks if c.name == "lambda_injective"]
    assert inj and "ass(S)" in str(inj[0].witness)


def test_verify_localisation_check_subset_and_unknown_name():
    kx = kx_ring()
    lr = localise(kx, mult_set(kx, [kx.gen("X")], "regular"))
    report = verify_localisation(lr, samples=20, seed=0, checks=("d_squared",))
    assert report.ok and len(report.checks) == 1
    with pytest.raises(ValueError):
        verify_localisation(lr, samples=1, checks=("nonsense",))


def test_verify_localisation_corrupted_sign_fails_leibniz():
    # flipping the sign of the correction term is invisible only when the
    # denominators are cycles, so use unit denominators with d(s) != 0
    endo = endo2x2_dg(QQ)
    lr = localise(endo, unit_set(endo))
    lr._flip_first_sign = True
    with pytest.raises(VerificationError) as exc:
        verify_localisation(lr, samples=500, seed=0, checks=("leibniz",))
    assert exc.value.check == "leibniz"
    lr._flip_first_sign = False
    assert verify_localisation(lr, samples=50, seed=0, checks=("leibniz",)).ok


def test_quotient_ring_axioms_sampled():
    kx = kx_ring()
    lr = localise(kx, mult_set(kx, [kx.gen("X")], "regular"))
    assert quotient_ring_axioms(lr, samples=100, seed=0).ok
    endo = endo2x2_dg(QQ)
    assert quotient_ring_axioms(localise(endo, unit_set(endo)), samples=60, seed=0).ok
    kk = product_field(QQ)
    lrk = localise(kk, mult_set(kk, [kk.one(), kk.by_name("u")], "kernel"))
    assert quotient_ring_axioms(lrk, samples=60, seed=0).ok


# ------------------------------------------------- homology comparison


def test_homology_comparison_zero_differential_identity_iso():
    for maker in (product_field, matrix2_graded, group_algebra_c2):
        alg = maker(QQ)
        s = mult_set(alg, [alg.one()], "regular")
        report = homology_comparison(alg, s)
        assert report.ok and report.backend == "findim"
        assert report.iso == Mat.identity(QQ, alg.dim)
        assert all(l == r for l, r in report.per_degree.values())


def test_homology_comparison_product_field_both_sides_collapse():
    kk = product_field(QQ)
    s = mult_set(kk, [kk.one(), kk.by_name("u")], "kernel")
    report = homology_comparison(kk, s)
    assert report.ok
    assert report.per_degree == {0: (1, 1)}
    names = {c.name for c in report.checks}
    assert "kernel_matches_ass" in names and "bijective" in names


def test_homology_comparison_kx_even_powers_window():
    kx = kx_ring()
    x = kx.gen("X")
    report = homology_comparison(kx, mult_set(kx, [x * x], "kernel"), window=20)
    assert report.ok and report.backend == "poly"
    assert report.window == (-20, 20)
    assert set(report.per_degree) == set(range(-20, 21))
    assert all(v == (0, 0) for v in report.per_degree.values())


def test_homology_comparison_poly_zero_differential_nontrivial_dims():
    ring = kx_zero_diff()
    x = ring.gen("X")
    report = homology_comparison(ring, mult_set(ring, [x], "kernel"), window=8)
    assert report.ok
    # K[X]_X = K[X, X^{-1}] with d = 0: one dimension in every degree,
    # while K[X] alone has dimension only in degrees <= 0
    assert all(v == (1, 1) for v in report.per_degree.values())


def test_homology_comparison_requires_kernel_set_and_window():
    kx = kx_ring()
    x = kx.gen("X")
    with pytest.raises(ValueError):
        homology_comparison(kx, mult_set(kx, [x], "regular"))  # d(X) != 0
    with pytest.raises(WindowTooSmall):
        homology_comparison(kx, mult_set(kx, [x * x], "kernel"), window=2)


# --------------------------------------------------------- Goldie


def test_goldie_pipeline_kx_all_stages_pass():
    report = goldie_pipeline(kx_ring())
    assert isinstance(report, GoldieReport) and report.ok
    assert [st.name for st in report.stages] == [
        "cycle-subalgebra",
        "gr-prime",
        "gr-Goldie",
        "ore",
        "localise",
        "dg-simple",
    ]
    assert all(st.status == "pass" for st in report.stages)
    assert report.localisation.target.laurent == (True,)
    assert all(fact.ok for fact in report.transfer_facts)


def test_goldie_pipeline_kx_zero_differential():
    report = goldie_pipeline(kx_zero_diff())
    assert report.ok and report.backend == "poly"


def test_goldie_pipeline_endo_fails_gr_prime_with_nilpotent_witness():
    endo = endo2x2_dg(QQ)
    with pytest.raises(HypothesisFailed) as exc:
        goldie_pipeline(endo)
    assert exc.value.stage == "gr-prime"
    left, right = exc.value.witness
    # the kernel of d is K[eps] with eps^2 = 0: the witness pair is
    # ((eps), (eps)) and its product vanishes
    assert left.space.dim == 1 and right.space.dim == 1
    assert ideal_product(left, right).space.is_zero()
    partial = exc.value.report
    assert partial.stages[-1].status == "fail"
    assert partial.stages[0].status == "pass"


def test_goldie_pipeline_product_field_fails_gr_prime():
    with pytest.raises(HypothesisFailed) as exc:
        goldie_pipeline(product_field(QQ))
    assert exc.value.stage == "gr-prime"


def test_goldie_pipeline_matrix_algebra_passes_certified():
    report = goldie_pipeline(matrix2_graded(F2))
    assert report.ok
    simple = report.stages[-1]
    assert simple.name == "dg-simple" and simple.certified


# -------------------------------------------------------- transfer


def test_transfer_checks_findim_units():
    endo = endo2x2_dg(QQ)
    report = localisation_transfer_checks(endo, unit_set(endo), samples=8, seed=0)
    assert isinstance(report, TransferReport) and report.ok
    assert {c.name for c in report.entries} == {
        "essential_iff_extended_essential",
        "udim_preserved_under_extension",
        "contracted_essential_iff_essential",
        "udim_preserved_under_contraction",
    }


def test_transfer_checks_require_regular_mode():
    kk = product_field(QQ)
    s = mult_set(kk, [kk.by_name("u")], "kernel")
    with pytest.raises(ValueError):
        localisation_transfer_checks(kk, s)


def test_transfer_checks_poly_window():
    kx = kx_ring()
    x = kx.gen("X")
    report = localisation_transfer_checks(kx, mult_set(kx, [x * x], "kernel"))
    assert report.ok and report.window == (-20, 20)
    assert len(report.entries) == 5


# ------------------------------------------------------- lying over


def test_lying_over_kx_ideal_chain():
    report = lying_over_check(kx_ring())
    assert isinstance(report, LyingOverReport) and report.ok
    assert "X^2" in report.hereditary_note
    assert {c.name for c in report.entries} == {
        "extension_is_d_stable",
        "intersection_recovers_ideal",
    }
    # d = 0 variant: the cycle subalgebra is the whole ring
    report0 = lying_over_check(kx_zero_diff())
    assert report0.ok and "X^1" in report0.hereditary_note


def test_lying_over_findim_semisimple_kernels():
    for alg in (product_field(QQ), group_algebra_c2(QQ), matrix2_graded(F5)):
        report = lying_over_check(alg)
        assert report.ok, alg
        assert "semisimple" in report.hereditary_note


def test_lying_over_rejects_non_hereditary_kernel():
    with pytest.raises(NotHereditary):
        lying_over_check(endo2x2_dg(QQ))


def test_lying_over_small_field_trace_gate_surfaces():
    with pytest.raises(FieldTooSmall):
        lying_over_check(matrix2_graded(F2))
