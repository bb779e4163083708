"""Ideal calculus: products, annihilators, radicals, primeness, ass(S) and
the singular ideals, pinned against brute-force set oracles over GF(2)/GF(3)
and hand-computed values over QQ."""

import pytest

import oracles
from dgforge.dgcore import quotient_algebra
from dgforge.dgideal import (
    AnnihilatorReport,
    DgIdeal,
    annihilators,
    ass_ideal,
    classical_nil_radical,
    dgnil,
    ideal_generate,
    ideal_power,
    ideal_product,
    is_dg_prime,
    is_dg_semiprime,
    is_nilpotent,
    lann,
    maximal_two_sided_dg_ideals,
    prad,
    radical_report,
    rann,
    regular_module,
    semiprime_ideal_properties,
    singular_ideals,
)
from dgforge.dgmod import enumerate_submodules, is_dg_essential
from dgforge.errors import FieldTooSmall, NotACycle, NotOre, NotSemiprime
from dgforge.fields import GF, QQ
from dgforge.fixtures import (
    dual_numbers,
    endo2x2_dg,
    exterior2,
    matrix2_graded,
    product_field,
    triangular2,
    trunc_poly_dg,
    truncated_poly,
)
from dgforge.linalg import Subspace

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)

SEMIPRIME_MAKERS = (endo2x2_dg, trunc_poly_dg, product_field)
NILPOTENT_MAKERS = (dual_numbers, triangular2, exterior2, truncated_poly)
ALL_MAKERS = SEMIPRIME_MAKERS + NILPOTENT_MAKERS


def named_space(alg, names):
    z, o = alg.field.zero, alg.field.one
    vecs = []
    for n in names:
        row = [z] * alg.dim
        row[alg.basis_names.index(n)] = o
        vecs.append(row)
    return Subspace.from_vectors(alg.field, alg.dim, vecs)


# ------------------------------------------------------ generation, product


def test_ideal_generation_by_side():
    alg = endo2x2_dg(QQ)
    right = ideal_generate(alg, [alg.by_name("e11")], side="right")
    assert right.space == named_space(alg, ["e11", "e12"])
    left = ideal_generate(alg, [alg.by_name("e12")], side="left")
    assert left.space == named_space(alg, ["e12", "e22"])
    two = ideal_generate(alg, [alg.by_name("e11")], side="two")
    assert two.space == Subspace.full(QQ, 4)
    assert right.certified and left.certified and two.certified


def test_ideal_product_and_nilpotency():
    alg = endo2x2_dg(QQ)
    i = ideal_generate(alg, [alg.by_name("e11")], side="right")
    assert ideal_product(i, i).space == i.space
    assert is_nilpotent(i) == (False, None)

    dn = dual_numbers(QQ)
    x = ideal_generate(dn, [dn.by_name("x")], side="two")
    assert ideal_product(x, x).is_zero()
    assert is_nilpotent(x) == (True, 2)

    zero = ideal_generate(dn, [], side="two")
    assert is_nilpotent(zero) == (True, 1)

    t3 = truncated_poly(QQ, n=3)
    xt = ideal_generate(t3, [t3.by_name("x")], side="two")
    assert is_nilpotent(xt) == (True, 3)
    assert ideal_power(xt, 2).space == named_space(t3, ["x2"])


def test_ideal_product_side_mismatch():
    alg = endo2x2_dg(QQ)
    r = ideal_generate(alg, [alg.by_name("e11")], side="right")
    l = ideal_generate(alg, [alg.by_name("e12")], side="left")
    with pytest.raises(ValueError):
        ideal_product(r, l)


def test_ideal_product_matches_brute_sets_over_gf3():
    alg = exterior2(F3)
    i = ideal_generate(alg, [alg.by_name("x")], side="two")
    j = ideal_generate(alg, [alg.by_name("y")], side="two")
    prod = ideal_product(i, j)
    iset = oracles.subspace_set(i.space)
    jset = oracles.subspace_set(j.space)
    products = [alg.mul_coords(a, b) for a in iset for b in jset]
    expected = oracles.span_set(3, products, alg.dim)
    assert oracles.subspace_set(prod.space) == expected


# ------------------------------------------------------------- annihilators


def test_annihilator_hand_values():
    alg = endo2x2_dg(QQ)
    rep = annihilators(alg, [alg.by_name("e22")])
    assert rep.rann_space == named_space(alg, ["e11", "e12"])
    assert rep.rann_ideal.space == rep.rann_space
    assert rep.rann_ideal.certified and rep.rann_ideal.side == "right"
    assert rann(alg, [alg.one()]).is_zero()
    assert lann(alg, [alg.one()]).is_zero()

    dn = dual_numbers(QQ)
    assert rann(dn, [dn.by_name("x")]) == named_space(dn, ["x"])


def test_annihilator_of_sided_ideals_carries_certificates():
    alg = endo2x2_dg(QQ)
    i = ideal_generate(alg, [alg.by_name("e11")], side="right")
    rep = annihilators(alg, i)
    # rann of a dg-right ideal is a two-sided dg-ideal (here: zero)
    assert rep.rann_ideal.side == "two" and rep.rann_ideal.certified
    assert rep.rann_space.is_zero()
    # lann of a right ideal is only a left dg-ideal; here it is the whole
    # raw annihilator span{e12, e22}
    assert rep.lann_space == named_space(alg, ["e12", "e22"])
    assert rep.lann_ideal.space == rep.lann_space
    assert rep.lann_ideal.side == "left" and rep.lann_ideal.certified

    l = ideal_generate(alg, [alg.by_name("e12")], side="left")
    rep2 = annihilators(alg, l)
    assert rep2.lann_ideal.side == "two" and rep2.lann_ideal.certified


def test_annihilators_match_brute_force_over_gf3():
    alg = exterior2(F3)
    space = named_space(alg, ["x", "xy"])
    got_l = oracles.subspace_set(lann(alg, space))
    got_r = oracles.subspace_set(rann(alg, space))
    aset = oracles.subspace_set(space)
    exp_l = frozenset(
        v
        for v in oracles.all_vectors(3, alg.dim)
        if all(
            not any(alg.mul_coords(v, a))
            for a in aset
        )
    )
    exp_r = frozenset(
        v
        for v in oracles.all_vectors(3, alg.dim)
        if all(
            not any(alg.mul_coords(a, v))
            for a in aset
        )
    )
    assert got_l == exp_l
    assert got_r == exp_r


# ----------------------------------------------------------------- radicals


def test_classical_nil_radical_hand_values():
    assert classical_nil_radical(endo2x2_dg(QQ)).is_zero()
    assert classical_nil_radical(trunc_poly_dg(QQ)) == named_space(trunc_poly_dg(QQ), ["x"])
    tri = triangular2(QQ)
    assert classical_nil_radical(tri) == named_space(tri, ["e12"])
    ext = exterior2(QQ)
    assert classical_nil_radical(ext) == named_space(ext, ["x", "y", "xy"])


def test_dgnil_hand_values():
    # d(x) = 1 kills the classical radical: no d-stable ideal survives inside
    assert dgnil(trunc_poly_dg(QQ)).is_zero()
    assert dgnil(endo2x2_dg(QQ)).is_zero()
    dn = dual_numbers(QQ)
    assert dgnil(dn).space == named_space(dn, ["x"])
    tri = triangular2(QQ)
    assert dgnil(tri).space == named_space(tri, ["e12"])


def test_dgnil_routes_agree_over_gf5():
    # p = 5 exceeds every fixture dimension here, so the trace-form route is
    # active; the literal route sums the nilpotent members of the enumerated
    # lattice and must agree
    for make in (endo2x2_dg, trunc_poly_dg, dual_numbers, triangular2, product_field):
        alg = make(F5)
        primary = dgnil(alg)
        bi = regular_module(alg, "two")
        total = Subspace.zero(F5, alg.dim)
        for sub in enumerate_submodules(bi, "dg"):
            cand = DgIdeal(alg, sub.space, "two", "dg")
            nilp, _ = is_nilpotent(cand)
            if nilp:
                total = total.sum(cand.space)
        assert primary.space == total, make.__name__


def test_dgnil_enumeration_route_matches_brute_over_gf2():
    for make in (dual_numbers, triangular2, trunc_poly_dg, product_field):
        alg = make(F2)
        got = dgnil(alg)  # p = 2 <= dim forces the enumeration route
        mod = regular_module(alg, "two")
        lattice = oracles.brute_submodule_lattice(mod, "dg")
        total = set()
        for s in lattice:
            # literal set nilpotency: iterate set products until zero
            current = s
            nilpotent = False
            for _ in range(alg.dim + 2):
                if len(current) == 1:
                    nilpotent = True
                    break
                products = [
                    alg.mul_coords(a, b) for a in current for b in s
                ]
                current = oracles.span_set(2, products, alg.dim)
            if nilpotent:
                total |= set(s)
        expected = oracles.span_set(2, sorted(total), alg.dim)
        assert oracles.subspace_set(got.space) == expected, make.__name__


def test_dgnil_quotient_is_dg_semiprime():
    for make in ALL_MAKERS:
        alg = make(QQ)
        n = dgnil(alg)
        quot, _proj, _lift = quotient_algebra(alg, n.space)
        assert dgnil(quot).is_zero(), make.__name__


def test_radical_report_and_dgrad2():
    dn = dual_numbers(F2)
    rep = radical_report(dn)
    assert rep.exponent == 2
    assert rep.dgnil.space == named_space(dn, ["x"])
    assert rep.dgrad2 is not None and rep.dgrad2.space == rep.dgnil.space
    assert rep.maximal_count == 1
    assert rep.agreement == {
        "dgnil_subset_prad": True,
        "dgnil_equals_prad": True,
        "dgnil_equals_dgrad2": True,
    }
    pf = product_field(F2)
    rep2 = radical_report(pf)
    assert rep2.maximal_count == 2 and rep2.dgrad2.is_zero()
    e = endo2x2_dg(F2)
    rep3 = radical_report(e)
    assert rep3.maximal_count == 1 and rep3.dgrad2.is_zero()


def test_prad_equals_dgnil_and_prad_quotient_clean():
    for make in ALL_MAKERS:
        alg = make(QQ)
        assert prad(alg).space == dgnil(alg).space, make.__name__
    tp = trunc_poly_dg(QQ)
    # strictly smaller than the classical prime radical (x)
    assert prad(tp).is_zero()
    assert classical_nil_radical(tp).dim == 1


def test_dgnil_small_field_over_budget():
    alg = endo2x2_dg(F2)
    from dgforge.dgcore import direct_sum

    big = direct_sum(direct_sum(alg, alg), direct_sum(alg, alg))
    big = direct_sum(big, big)  # dimension 32
    with pytest.raises(FieldTooSmall):
        dgnil(big, budget=1000)


# -------------------------------------------------------------------- prime


def test_semiprime_classification():
    assert is_dg_semiprime(endo2x2_dg(QQ))
    assert is_dg_semiprime(trunc_poly_dg(QQ))
    assert is_dg_semiprime(product_field(QQ))
    assert not is_dg_semiprime(dual_numbers(QQ))
    assert not is_dg_semiprime(triangular2(QQ))
    assert not is_dg_semiprime(exterior2(QQ))


def test_prime_yes_cases():
    for field in (QQ, F2, F5):
        res = is_dg_prime(endo2x2_dg(field))
        assert res.answer == "yes", field
        assert res.method == "semiprime-uniform"
    res = is_dg_prime(trunc_poly_dg(QQ))
    assert res.answer == "yes"


def test_prime_no_with_independent_ideal_witness():
    pf = product_field(QQ)
    res = is_dg_prime(pf)
    assert res.answer == "no" and res.method == "independent-ideals"
    i, j = res.witness
    assert not i.is_zero() and not j.is_zero()
    assert ideal_product(i, j).is_zero()
    assert {i.space, j.space} == {named_space(pf, ["u"]), named_space(pf, ["v"])}


def test_prime_no_with_nilpotent_witness():
    dn = dual_numbers(QQ)
    res = is_dg_prime(dn)
    assert res.answer == "no" and res.method == "nilpotent-ideal"
    i, j = res.witness
    assert not i.is_zero() and not j.is_zero()
    assert ideal_product(i, j).is_zero()


def test_prime_cross_checks_consistent_over_gf2():
    for make, expected_simple in (
        (endo2x2_dg, "yes"),
        (trunc_poly_dg, "yes"),
        (product_field, "no"),
        (dual_numbers, "no"),
    ):
        res = is_dg_prime(make(F2))
        assert res.cross_checks.get("dg-simple-enumeration") == expected_simple
        if expected_simple == "yes":
            assert res.answer == "yes"


def test_prime_implies_nonzero_ideals_essential():
    alg = endo2x2_dg(F2)
    assert is_dg_prime(alg).answer == "yes"
    bi = regular_module(alg, "two")
    for sub in enumerate_submodules(bi, "dg"):
        if sub.dim:
            assert is_dg_essential(sub.space, bi, "dg")


def test_kernel_subalgebra_not_gr_prime_for_matrix_block():
    # ker(d) of the matrix block is K[eps]/eps^2, which has the nilpotent
    # ideal (eps): the transfer criterion is one-directional
    from dgforge.dgcore import cycle_subalgebra

    alg = endo2x2_dg(QQ)
    sub, _embed = cycle_subalgebra(alg)
    res = is_dg_prime(sub)
    assert res.answer == "no" and res.method == "nilpotent-ideal"


def test_maximal_ideal_enumeration():
    pf = product_field(F3)
    maximals = maximal_two_sided_dg_ideals(pf)
    assert {m.space for m in maximals} == {
        named_space(pf, ["u"]),
        named_space(pf, ["v"]),
    }


# ---------------------------------------------------------------------- ass


def test_ass_ideal_product_field():
    for field in (QQ, F5):
        pf = product_field(field)
        rep = ass_ideal(pf, [pf.by_name("u")])
        assert rep.ideal.space == named_space(pf, ["v"])
        assert rep.ideal.certified and rep.ideal.side == "two"
        assert rep.s_image_regular
        assert rep.quotient.dim == 1


def test_ass_ideal_trivial_cases():
    alg = endo2x2_dg(QQ)
    assert ass_ideal(alg, []).ideal.is_zero()
    assert ass_ideal(alg, [alg.one()]).ideal.is_zero()
    two = alg.one().scale(QQ.from_int(2))
    rep = ass_ideal(alg, [two])
    assert rep.ideal.is_zero() and rep.s_image_regular


def test_ass_ideal_rejects_non_cycles():
    alg = endo2x2_dg(QQ)
    with pytest.raises(NotACycle):
        ass_ideal(alg, [alg.by_name("e21")])


def test_ass_ideal_rejects_non_commuting_generators():
    alg = matrix2_graded(QQ)  # zero differential: everything is a cycle
    with pytest.raises(NotOre):
        ass_ideal(alg, [alg.by_name("e11"), alg.by_name("e12")])


def test_ass_ideal_chain_stabilization():
    t3 = truncated_poly(QQ, n=3)
    # S generated by 1 + x (a unit): nothing annihilates any power
    one_plus_x = t3.element(
        [QQ.one, QQ.one] + [QQ.zero] * (t3.dim - 2)
    )
    rep = ass_ideal(t3, [one_plus_x])
    assert rep.ideal.is_zero() and rep.s_image_regular


# ----------------------------------------------------------------- singular


def test_singular_ideals_matrix_block():
    alg = endo2x2_dg(QQ)
    rep = singular_ideals(alg)
    assert rep.zeta.is_zero()
    assert rep.zeta_dg.space == named_space(alg, ["e12", "e22"])
    assert rep.zeta_dg.side == "left" and rep.zeta_dg.certified
    # not two-sided: the certificates of a two-sided reading fail
    as_two = DgIdeal(alg, rep.zeta_dg.space, "two", "dg")
    assert not as_two.certified
    # idempotent, hence not nilpotent, unlike the classical singular ideal
    sq = ideal_product(rep.zeta_dg, rep.zeta_dg)
    assert sq.space == rep.zeta_dg.space
    assert is_nilpotent(rep.zeta_dg) == (False, None)
    assert rep.zeta_ker_embedded == named_space(alg, ["e12"])
    assert rep.ok, rep.failures()
    # computed homology of the zeta_dg subcomplex vanishes (d e22 = e12):
    # the induced map to H(R) is the zero map
    assert rep.h_zeta_dg == {}
    assert rep.map_flags["zero_map"]


def test_singular_ideals_trunc_poly():
    alg = trunc_poly_dg(QQ)
    rep = singular_ideals(alg)
    assert rep.zeta_dg.is_zero()
    assert rep.zeta == named_space(alg, ["x"])
    assert rep.ok, rep.failures()


def test_singular_ideals_semisimple_zero_diff():
    alg = product_field(QQ)
    rep = singular_ideals(alg)
    assert rep.zeta.is_zero()
    assert rep.zeta_dg.is_zero()
    assert rep.zeta_ker_embedded.is_zero()
    assert rep.ok


def test_singular_comparison_map_on_nonzero_homology():
    # zero differential: H = A, pi = identity, so the comparison reads
    # zeta(ker d) = zeta(A) inside zeta(H) = zeta(A)
    for make in (dual_numbers, exterior2, triangular2):
        alg = make(QQ)
        rep = singular_ideals(alg)
        by_name = {c.name: c for c in rep.checks}
        assert by_name["pi_zeta_ker_inside_zeta_homology"].ok, make.__name__
        assert rep.ok, (make.__name__, rep.failures())


def test_singular_ideals_across_fields():
    for field in (F2, F5):
        alg = endo2x2_dg(field)
        rep = singular_ideals(alg)
        assert rep.zeta.is_zero()
        assert rep.zeta_dg.dim == 2
        assert rep.ok, rep.failures()


def test_zeta_dg_least_essential_characterization_brute():
    # zeta_dg = lann(dg-socle); literal definition: the union of lann(E)
    # over all dg-essential right dg-ideals E equals lann of the least one
    alg = endo2x2_dg(F2)
    mod = regular_module(alg, "right")
    lattice = oracles.brute_submodule_lattice(mod, "dg")
    essentials = [
        s for s in lattice if oracles.brute_essential(s, lattice)
    ]
    union = set()
    for e in essentials:
        vecs = sorted(e)
        space = Subspace.from_vectors(F2, alg.dim, vecs)
        union |= set(oracles.subspace_set(lann(alg, space)))
    rep = singular_ideals(alg)
    assert oracles.subspace_set(rep.zeta_dg.space) == frozenset(union)


# ------------------------------------------------- semiprime ideal theory


def test_semiprime_ideal_properties_product_field():
    pf = product_field(QQ)
    i = ideal_generate(pf, [pf.by_name("u")], side="two")
    rep = semiprime_ideal_properties(pf, i)
    assert rep.ok, rep.failures()
    assert rep.ann == named_space(pf, ["v"])


def test_semiprime_ideal_properties_zero_ideal():
    alg = endo2x2_dg(QQ)
    zero = ideal_generate(alg, [], side="two")
    rep = semiprime_ideal_properties(alg, zero)
    assert rep.ok, rep.failures()
    assert rep.ann == Subspace.full(QQ, 4)


def test_semiprime_ideal_properties_guards():
    dn = dual_numbers(QQ)
    x = ideal_generate(dn, [dn.by_name("x")], side="two")
    with pytest.raises(NotSemiprime):
        semiprime_ideal_properties(dn, x)
    alg = endo2x2_dg(QQ)
    full = ideal_generate(alg, [alg.one()], side="two")
    with pytest.raises(ValueError):
        semiprime_ideal_properties(alg, full)
    one_sided = ideal_generate(alg, [alg.by_name("e11")], side="right")
    with pytest.raises(ValueError):
        semiprime_ideal_properties(alg, one_sided)
