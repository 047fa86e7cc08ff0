from fractions import Fraction

import pytest

from tep7 import fixtures, pipeline
from tep7.poly import (
    ONE,
    ZERO,
    Poly,
    evaluate,
    exquo,
    is_homogeneous,
    parse,
    power,
    substitute,
    univariate_coeffs,
    var,
)
from tep7.tep_model import SolutionFamily, builtin_family, verify_family

a1, a2, a3, m, n, t = (var(v) for v in ("a1", "a2", "a3", "m", "n", "t"))


@pytest.fixture(scope="module")
def traces():
    return pipeline.enumerate_branches()


# -- stage 0 ---------------------------------------------------------------------------


def test_base_entries_are_the_stored_ones():
    xs, ys = pipeline.rmjm_base()
    assert xs[0] == a1 * m + (a1 + 2 * a3) * (a1 + 2 * a2 + a3) * n
    assert len(xs) == len(ys) == 4


@pytest.mark.parametrize("r", [1, 2, 4])
def test_base_solves_low_degrees(r):
    assert pipeline.power_sum_difference(r).is_zero()


def test_base_fails_r6_without_conditions():
    assert not pipeline.power_sum_difference(6).is_zero()


def test_residual_r6_matches_stored_factorization():
    want = fixtures.product(fixtures.R6_FACTORS, fixtures.R6_CONSTANT)
    assert pipeline.residual_r6() == want


def test_residual_r6_planted_factors():
    r6 = pipeline.residual_r6()
    assert substitute(r6, "a1", a3).is_zero()
    assert substitute(r6, "m", 3 * (a1 + a3) * n).is_zero()


def test_solve_m_and_q():
    assert pipeline.quadratic_q() == fixtures.Q
    assert pipeline.quartic_p() == fixtures.P
    sol = pipeline.solve_m()
    y = var("y")
    assert sol.numerator == n * y and sol.denominator == fixtures.Q
    assert pipeline.last_factor() == fixtures.Q * m * m - fixtures.P * n * n


def test_phi_forms():
    phi = pipeline.phi()
    assert phi == fixtures.PHI_PRODUCT == fixtures.PHI_COLLECTED
    assert univariate_coeffs(phi, "a2")[4] == parse("a1^2 - 38*a1*a3 + a3^2")
    assert substitute(substitute(phi, "a1", ZERO), "a3", ZERO).is_zero()


# -- stage 1 ---------------------------------------------------------------------------


def test_substituted_phi_is_homogeneous_sextic():
    s = pipeline.substituted_phi()
    assert is_homogeneous(s, ("a1", "a3"))
    assert max(sum(e for v, e in zip(s.gens, ex) if v in ("a1", "a3")) for ex, _ in s.monomials()) == 6


def test_substituted_phi_f_minus_2():
    s = pipeline.substituted_phi(-2, None)
    assert exquo(s, a3 * a3) == fixtures.PHI1_F_MINUS_2


def test_substituted_phi_rational_clears_denominators():
    s = pipeline.substituted_phi(Fraction(1, 2), 3)
    # a2 = (a1 + 6 a3)/2 and the sextic is scaled by 2^4
    for x, z in [(2, 1), (4, -3), (10, 7)]:
        a2v = Fraction(x + 6 * z, 2)
        assert evaluate(s, {"a1": x, "a3": z}) == 16 * evaluate(pipeline.phi(), {"a1": x, "a2": a2v, "a3": z})


def test_f1_g1_discriminant_vanishes():
    s = pipeline.substituted_phi(1, 1)
    disc, _ = pipeline.binary_discriminant(s)
    assert disc.is_zero()


def test_first_condition_constant_multiple():
    cond = pipeline.first_condition()
    want = fixtures.product(fixtures.FIRST_FACTORS)
    q = exquo(cond, want)
    assert q.is_constant() and q.constant_value() == 33177600000


def test_first_condition_vanishes_on_lines():
    cond = pipeline.first_condition()
    assert substitute(cond, "f", Poly(-2)).is_zero()
    assert substitute(cond, "g", ONE).is_zero()


def test_linear_factor_choices():
    choices = pipeline.linear_factor_choices()
    assert len(choices) == 10
    by_label = {c.label: c for c in choices}
    c = by_label["f + 2"]
    assert (c.fixed, c.value, c.free) == ("f", Poly(-2), "g")
    c = by_label["g - 1"]
    assert (c.fixed, c.value, c.free) == ("g", ONE, "f")
    c = by_label["f - 2*g - 1"]
    assert (c.fixed, c.value, c.free) == ("f", parse("2*g + 1"), "g")
    for c in choices:
        assert exquo(pipeline.first_condition(), power(c.factor, 2))


def test_reduce_once_f_minus_2():
    red = pipeline.reduce_once(pipeline.choice_for(-2, None))
    assert red.square_part == a3
    assert red.cofactor == fixtures.PHI1_F_MINUS_2
    assert red.cofactor_degree == 4 and not red.degenerate


def test_reduce_form_planted():
    s = 2 * a1 + a3
    c = fixtures.CONIC_WORKED
    red = pipeline.reduce_form(s * s * c)
    assert red.square_part == s and red.cofactor == c


def test_reduce_once_without_square():
    with pytest.raises(pipeline.NoSquaredFactor):
        pipeline.reduce_once(pipeline.choice_for(5, None))


@pytest.mark.parametrize("choice", pipeline.linear_factor_choices(), ids=lambda c: c.label)
def test_reduction_reassembles(choice):
    red = pipeline.reduce_once(choice)
    sextic = pipeline.branch_sextic(choice)
    assert power(red.square_part, 2) * red.content * red.cofactor == sextic


def test_second_condition_f_minus_2():
    choice = pipeline.choice_for(-2, None)
    cond = pipeline.second_condition(choice)
    want = fixtures.product(fixtures.SECOND_FACTORS_F_MINUS_2)
    q = exquo(cond, want)
    assert q.is_constant() and q.constant_value() == 2304000
    roots = pipeline.second_roots(cond)
    assert roots == sorted(Fraction(v) for v in (1, -1, -2, -3, -4, Fraction(-3, 2)))
    quartic = parse("g^4 - 226*g^3 - 300*g^2 - 130*g - 155")
    assert pipeline.second_roots(quartic) == []


# -- the conic ---------------------------------------------------------------------------


def test_parametrize_worked_conic():
    q = fixtures.CONIC_WORKED
    x1, x3, y = pipeline.parametrize_square(q)
    assert substitute(substitute(q, "a1", x1), "a3", x3) == y * y
    assert y in (fixtures.Y_WORKED, -fixtures.Y_WORKED)
    # the stored parametrization works too
    p1, p3 = fixtures.CONIC_PARAM
    assert substitute(substitute(q, "a1", p1), "a3", p3) == power(fixtures.Y_WORKED, 2)
    assert -2 * p1 - p3 == fixtures.ALPHA2_WORKED


def test_parametrize_square_of_linear():
    q = power(a1 + a3, 2)
    x1, x3, y = pipeline.parametrize_square(q)
    assert substitute(substitute(q, "a1", x1), "a3", x3) == y * y
    assert y.total_degree() <= 1


def test_parametrize_negative_definite():
    with pytest.raises(pipeline.NoRationalPoint):
        pipeline.parametrize_square(-a1 * a1 - a3 * a3)


def test_parametrize_needs_search_point():
    # 2 a1^2 - a3^2 has no axis point but (1, 1) gives w = 1
    q = 2 * a1 * a1 - a3 * a3
    x1, x3, y = pipeline.parametrize_square(q)
    assert substitute(substitute(q, "a1", x1), "a3", x3) == y * y


# -- assembly and equivalence ---------------------------------------------------------------


def test_worked_example_family():
    asm = pipeline.assemble(-2, -1)
    assert asm.conic == fixtures.CONIC_WORKED
    assert asm.y * asm.y == pipeline._at_alpha(pipeline.phi(), asm.alpha)
    fam = asm.family
    assert verify_family(fam, range(1, 8)).passed
    assert pipeline.equivalent(fam, builtin_family(1))


def test_assemble_trivial():
    with pytest.raises(pipeline.TrivialFamily):
        pipeline.assemble(-2, 1)


def test_equivalence_examples():
    A = builtin_family(1)
    shifted = SolutionFamily(
        [substitute(p, "t", t + 5) for p in A.xs], [substitute(p, "t", t + 5) for p in A.ys]
    )
    assert pipeline.equivalent(A, shifted)
    tripled = SolutionFamily([3 * p for p in A.ys], [-3 * p for p in A.xs])
    assert pipeline.equivalent(A, tripled)
    assert not pipeline.equivalent(A, builtin_family(2))


def test_equivalence_rescaled_parameter():
    A = builtin_family(3)
    moved = SolutionFamily(
        [substitute(p, "t", 2 * t - 7) for p in A.xs], [substitute(p, "t", 2 * t - 7) for p in A.ys]
    )
    assert pipeline.equivalent(moved, A)


def test_builtin_families_pairwise_distinct():
    fams = [builtin_family(k) for k in range(1, 5)]
    for i in range(4):
        for j in range(4):
            assert pipeline.equivalent(fams[i], fams[j]) == (i == j)


def test_projective_relation_merges_families_2_and_4():
    assert pipeline.equivalent(builtin_family(2), builtin_family(4), "projective")
    assert not pipeline.equivalent(builtin_family(1), builtin_family(3), "projective")
    with pytest.raises(ValueError):
        pipeline.equivalent(builtin_family(1), builtin_family(1), "birational")


# -- enumeration ------------------------------------------------------------------------------


def test_every_branch_traced(traces):
    assert [tr.choice.label for tr in traces] == [c.label for c in pipeline.linear_factor_choices()]
    assert all(tr.status == "ok" for tr in traces)


def test_emitted_families_verify(traces):
    for tr in traces:
        for o in tr.outcomes:
            assert o.status in ("family", "trivial")
            if o.status == "family":
                assert verify_family(o.family, range(1, 8)).passed
                assert not verify_family(o.family, {8}).passed


def test_trivial_outcomes_are_labelled(traces):
    trivial = {o.choice.name for tr in traces for o in tr.outcomes if o.status == "trivial"}
    assert "f=-2,g=1" in trivial and "f=-2,g=-2" in trivial
    j = traces[0].to_json()
    assert j["factor"] == "f + 2"
    assert {o["params"]: o["status"] for o in j["outcomes"]}["f=-2,g=1"] == "trivial"


def test_each_builtin_family_is_reached(traces):
    fams = [o.family for tr in traces for o in tr.outcomes if o.status == "family"]
    for k in range(1, 5):
        assert any(pipeline.equivalent(f, builtin_family(k)) for f in fams)


def test_builtin_families_on_f_minus_2(traces):
    got = {}
    for o in traces[0].outcomes:
        if o.status == "family":
            got[o.choice.name] = [k for k in range(1, 5) if pipeline.equivalent(o.family, builtin_family(k))]
    assert got == {"f=-2,g=-4": [2], "f=-2,g=-3": [3], "f=-2,g=-3/2": [4], "f=-2,g=-1": [1]}


def test_enumeration_is_deterministic(traces):
    again = pipeline.enumerate_branches()
    assert [tr.to_json() for tr in again] == [tr.to_json() for tr in traces]
