import pytest

from tcbounds.arith import PreconditionError, PrimeField, SplitMix64
from tcbounds.froeberg import DegreeType
from tcbounds.fixtures import (
    DEFAULT_PRIME,
    fixture_names,
    make_fixture,
    variables_ideal,
)
from tcbounds.macaulay import (
    Form,
    FormSystem,
    first_inclusion_degree,
    form_product,
    random_form,
    random_form_system,
)
from tcbounds.quotient import (
    FrobeniusQuery,
    GradedQuotient,
    frobenius_membership,
    frobenius_power_ideal,
    ideal_membership,
    ring_basis,
    ring_dimension_at,
    tight_witness_scan,
    verify_theorem_b,
    verify_theorem_c,
)


def monomial_form(v, exps, coeff=1):
    return Form.make(v, sum(exps), {tuple(exps): coeff})


@pytest.fixture(scope="module")
def cubic7():
    return make_fixture("fermat-cubic", p=7)


@pytest.fixture(scope="module")
def cubic2():
    return make_fixture("fermat-cubic-p2")


@pytest.fixture(scope="module")
def cubic5():
    return make_fixture("fermat-cubic", p=5)


class TestFixtures:
    def test_names(self):
        assert set(fixture_names()) == {
            "fermat-cubic",
            "fermat-cubic-p2",
            "fermat-quartic",
            "poly-ring",
        }

    def test_a_invariants(self):
        assert make_fixture("fermat-cubic").a_invariant == 0
        assert make_fixture("fermat-cubic-p2").a_invariant == 0
        assert make_fixture("fermat-quartic").a_invariant == 1
        assert make_fixture("poly-ring", d=2).a_invariant == -3

    def test_default_prime(self):
        assert make_fixture("fermat-cubic").ring.field.p == DEFAULT_PRIME

    def test_singular_characteristic_rejected(self):
        with pytest.raises(PreconditionError, match="not smooth"):
            make_fixture("fermat-cubic", p=3)
        with pytest.raises(PreconditionError, match="not smooth"):
            make_fixture("fermat-quartic", p=2)

    def test_p2_fixture_pins_its_prime(self):
        assert make_fixture("fermat-cubic-p2", p=2).ring.field.p == 2
        with pytest.raises(PreconditionError):
            make_fixture("fermat-cubic-p2", p=7)

    def test_poly_ring_needs_d(self):
        with pytest.raises(PreconditionError):
            make_fixture("poly-ring")
        ring = make_fixture("poly-ring", d=3).ring
        assert ring.v == 4
        assert ring.krull_dimension == 4

    def test_unknown_name(self):
        with pytest.raises(PreconditionError, match="unknown fixture"):
            make_fixture("fermat-quintic")

    def test_variables_ideal(self, cubic7):
        ideal = variables_ideal(cubic7.ring, 2)
        assert ideal.degrees == (1, 1)
        assert ideal.forms[0].terms == (((1, 0, 0), 1),)
        assert ideal.forms[1].terms == (((0, 1, 0), 1),)
        with pytest.raises(PreconditionError):
            variables_ideal(cubic7.ring, 4)


class TestGradedQuotient:
    def test_dimensions_on_cubic(self, cubic7):
        # all of P_2 survives; in degree 3 exactly the relation dies
        assert ring_dimension_at(cubic7.ring, 2) == 6
        assert ring_dimension_at(cubic7.ring, 3) == 9

    def test_dimensions_no_modulus(self):
        ring = make_fixture("poly-ring", d=2).ring
        for m in (0, 1, 4):
            assert ring_dimension_at(ring, m) == len(ring_basis(ring, m))
        assert ring_dimension_at(ring, 4) == 15

    def test_basis_count_matches_dimension(self, cubic7):
        for m in range(6):
            assert len(ring_basis(cubic7.ring, m)) == ring_dimension_at(cubic7.ring, m)

    def test_basis_below_relation_degree_is_everything(self, cubic7):
        assert len(ring_basis(cubic7.ring, 2)) == 6

    def test_krull_dimension(self, cubic7):
        assert cubic7.ring.krull_dimension == 2

    def test_relation_echelon_is_cached(self, cubic7):
        assert cubic7.ring.relation_echelon(5) is cubic7.ring.relation_echelon(5)

    def test_constructor_validation(self):
        field = PrimeField(7)
        other = FormSystem(field=PrimeField(5), v=3, forms=())
        with pytest.raises(PreconditionError):
            GradedQuotient(field, 3, other)
        wrong_v = FormSystem(field=field, v=2, forms=())
        with pytest.raises(PreconditionError):
            GradedQuotient(field, 3, wrong_v)
        with pytest.raises(PreconditionError):
            GradedQuotient(field, 0)

    def test_negative_degree(self, cubic7):
        with pytest.raises(PreconditionError):
            ring_dimension_at(cubic7.ring, -1)


class TestIdealMembership:
    def test_explicit_combination_is_contained(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        # x*(x + 2y) is visibly in (x, y)
        f = Form.make(3, 2, {(2, 0, 0): 1, (1, 1, 0): 2})
        verdict = ideal_membership(cubic7.ring, I, f)
        assert verdict.contained
        assert verdict.rank_with == verdict.rank_without
        assert verdict.degree == 2

    def test_z_squared_not_in_two_variables(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        verdict = ideal_membership(cubic7.ring, I, monomial_form(3, (0, 0, 2)))
        assert not verdict.contained
        assert verdict.rank_with == verdict.rank_without + 1

    def test_all_variables_contain_everything(self, cubic7):
        I = variables_ideal(cubic7.ring, 3)
        f = random_form(3, 2, cubic7.ring.field, SplitMix64(4))
        assert ideal_membership(cubic7.ring, I, f).contained

    def test_zero_form_is_contained(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        assert ideal_membership(cubic7.ring, I, Form.make(3, 2, {})).contained

    def test_monotone_under_ideal_growth(self, cubic7):
        # f not in (x, y); appending f as a generator makes it a member
        I = variables_ideal(cubic7.ring, 2)
        f = monomial_form(3, (0, 0, 2))
        assert not ideal_membership(cubic7.ring, I, f).contained
        bigger = FormSystem(field=I.field, v=I.v, forms=I.forms + (f,))
        assert ideal_membership(cubic7.ring, bigger, f).contained
        # a member stays a member under growth
        g = monomial_form(3, (1, 0, 1))
        assert ideal_membership(cubic7.ring, I, g).contained
        assert ideal_membership(cubic7.ring, bigger, g).contained

    def test_mismatches_rejected(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        with pytest.raises(PreconditionError):
            ideal_membership(cubic7.ring, I, Form.make(2, 1, {(1, 0): 1}))
        foreign = FormSystem(field=PrimeField(5), v=3, forms=())
        with pytest.raises(PreconditionError):
            ideal_membership(cubic7.ring, foreign, monomial_form(3, (0, 0, 2)))


class TestFrobeniusPowers:
    def test_char_two_square(self):
        field = PrimeField(2)
        I = FormSystem(
            field=field, v=2, forms=(Form.make(2, 1, {(1, 0): 1, (0, 1): 1}),)
        )
        sq = frobenius_power_ideal(I, 2)
        assert sq.forms[0].terms == (((2, 0), 1), ((0, 2), 1))
        assert sq.forms[0].degree == 2

    def test_q_one_is_identity(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        assert frobenius_power_ideal(I, 1) == I

    def test_char_three_example(self):
        field = PrimeField(3)
        I = FormSystem(
            field=field,
            v=2,
            forms=(Form.make(2, 2, {(2, 0): 1}), Form.make(2, 2, {(1, 1): 1})),
        )
        cubed = frobenius_power_ideal(I, 3)
        assert cubed.forms[0].terms == (((6, 0), 1),)
        assert cubed.forms[1].terms == (((3, 3), 1),)

    def test_composition(self, cubic5):
        rng = SplitMix64(8)
        I = random_form_system(3, (2, 2), cubic5.ring.field, rng)
        assert frobenius_power_ideal(frobenius_power_ideal(I, 5), 5) == frobenius_power_ideal(I, 25)

    def test_rejects_non_powers(self, cubic7):
        I = variables_ideal(cubic7.ring, 2)
        for q in (0, 6, 14, -7):
            with pytest.raises(PreconditionError):
                frobenius_power_ideal(I, q)

    def test_membership_chain(self, cubic5):
        # I is inside its Frobenius closure: members stay members at every q
        ring = cubic5.ring
        I = variables_ideal(ring, 2)
        rng = SplitMix64(12)
        g = random_form(3, 1, ring.field, rng)
        f = form_product(I.forms[0], g, ring.field.p)
        assert ideal_membership(ring, I, f).contained
        for q in (1, 5, 25):
            assert frobenius_membership(ring, I, f, q).contained

    def test_z_squared_hand_check_char_two(self, cubic2):
        # z^4 = z*(x^3+y^3) = x^2(xz) + y^2(yz) in (x^2, y^2) mod the cubic
        ring = cubic2.ring
        I = variables_ideal(ring, 2)
        z2 = monomial_form(3, (0, 0, 2))
        assert not frobenius_membership(ring, I, z2, 1).contained
        assert frobenius_membership(ring, I, z2, 2).contained

    def test_q7_verdict_recorded(self, cubic7):
        # recorded oracle outcome (p = 7 is 1 mod 3): z^14 does not land in
        # (x^7, y^7) + J, and the verdict is internally consistent
        I = variables_ideal(cubic7.ring, 2)
        verdict = frobenius_membership(cubic7.ring, I, monomial_form(3, (0, 0, 2)), 7)
        assert verdict.contained is False
        assert verdict.degree == 14
        assert verdict.contained == (verdict.rank_without == verdict.rank_with)


class TestFrobeniusQuery:
    def test_validation(self, cubic5):
        I = variables_ideal(cubic5.ring, 2)
        f = monomial_form(3, (0, 0, 2))
        q = FrobeniusQuery(f=f, ideal=I, q_list=(5, 25))
        assert q.witness is None
        with pytest.raises(PreconditionError):
            FrobeniusQuery(f=f, ideal=I, q_list=())
        with pytest.raises(PreconditionError):
            FrobeniusQuery(f=f, ideal=I, q_list=(10,))
        with pytest.raises(PreconditionError):
            FrobeniusQuery(f=f, ideal=I, q_list=(5,), witness=Form.make(3, 1, {}))


class TestWitnessScan:
    def test_variable_witnesses_pass(self, cubic5):
        # z^2 has the parameter degree a_1 + a_2, so it lies in the tight
        # closure of (x, y) and the scan must find a passing witness
        ring = cubic5.ring
        I = variables_ideal(ring, 2)
        witnesses = tuple(
            monomial_form(3, tuple(1 if i == j else 0 for i in range(3)))
            for j in range(3)
        )
        report = tight_witness_scan(
            ring, I, monomial_form(3, (0, 0, 2)), witnesses=witnesses, q_list=(5, 25)
        )
        assert report.found
        assert report.passing == (0, 1, 2)
        assert len(report.verdicts) == 3
        assert all(len(row) == 2 for row in report.verdicts)
        assert report.query.witness == witnesses[0]
        assert report.query.q_list == (5, 25)

    def test_member_passes_with_every_witness(self, cubic5):
        ring = cubic5.ring
        I = variables_ideal(ring, 2)
        report = tight_witness_scan(
            ring, I, monomial_form(3, (2, 0, 0)), q_list=(5, 25)
        )
        assert report.passing == tuple(range(len(report.witnesses)))

    def test_default_pool_is_monomials_up_to_degree_two(self, cubic5):
        ring = cubic5.ring
        I = variables_ideal(ring, 2)
        report = tight_witness_scan(ring, I, monomial_form(3, (0, 0, 2)), q_list=(5,))
        assert len(report.witnesses) == 1 + 3 + 6
        assert report.witnesses[0].degree == 0

    def test_generator_as_witness_at_q_one(self, cubic7):
        ring = cubic7.ring
        I = variables_ideal(ring, 2)
        report = tight_witness_scan(
            ring, I, monomial_form(3, (0, 0, 2)), witnesses=(I.forms[0],), q_list=(1,)
        )
        # x * z^2 is in (x, y) regardless of anything else
        assert report.passing == (0,)

    def test_rejects_zero_witness(self, cubic5):
        I = variables_ideal(cubic5.ring, 2)
        with pytest.raises(PreconditionError):
            tight_witness_scan(
                cubic5.ring,
                I,
                monomial_form(3, (0, 0, 2)),
                witnesses=(Form.make(3, 2, {}),),
                q_list=(5,),
            )


class TestTheoremC:
    def test_polynomial_ring_reduces_to_first_inclusion(self):
        fx = make_fixture("poly-ring", d=2)
        dt = DegreeType(2, (2, 2, 2, 2))
        report = verify_theorem_c(fx.ring, dt, fx.a_invariant, seed=7)
        assert report.passed
        assert report.draws == 1
        assert report.bound == 3
        # on the polynomial ring the inclusion degree is exactly m0
        assert first_inclusion_degree(report.system) == report.bound

    def test_fermat_cubic_three_quadrics(self):
        fx = make_fixture("fermat-cubic")
        report = verify_theorem_c(fx.ring, DegreeType(1, (2, 2, 2)), fx.a_invariant, seed=7)
        assert report.passed
        assert report.bound == 4
        assert all(ok for _, ok in report.element_verdicts)

    def test_fermat_quartic_four_cubics(self):
        fx = make_fixture("fermat-quartic")
        report = verify_theorem_c(
            fx.ring, DegreeType(1, (3, 3, 3, 3)), fx.a_invariant, seed=7
        )
        assert report.passed
        assert report.bound == 6

    def test_parameter_case_strict_below_bound(self):
        # two generic quadrics on the cubic: inclusion holds at the bound 5
        # and fails at 4 and at m0 + d - 1 = 3
        fx = make_fixture("fermat-cubic")
        dt = DegreeType(1, (2, 2))
        report = verify_theorem_c(fx.ring, dt, fx.a_invariant, seed=7)
        assert report.passed
        assert report.bound == 5
        system = report.system
        for degree in (3, 4):
            missing = [
                mono
                for mono in ring_basis(fx.ring, degree)
                if not ideal_membership(
                    fx.ring, system, monomial_form(3, mono.exponents)
                ).contained
            ]
            assert missing

    def test_retry_budget_on_impossible_bound(self):
        # a deliberately wrong a-invariant puts the bound below the true
        # inclusion degree; every draw fails and the budget is exhausted
        fx = make_fixture("fermat-cubic")
        report = verify_theorem_c(fx.ring, DegreeType(1, (2, 2)), -1, seed=7, max_redraws=2)
        assert not report.passed
        assert report.bound == 4
        assert report.draws == 2
        assert any(not ok for _, ok in report.element_verdicts)

    def test_dimension_mismatch(self):
        fx = make_fixture("poly-ring", d=2)
        with pytest.raises(PreconditionError, match="dimension"):
            verify_theorem_c(fx.ring, DegreeType(1, (2, 2)), fx.a_invariant, seed=7)

    def test_bad_budget(self):
        fx = make_fixture("fermat-cubic")
        with pytest.raises(PreconditionError):
            verify_theorem_c(fx.ring, DegreeType(1, (2, 2)), 0, seed=7, max_redraws=0)


class TestTheoremB:
    def test_char_two_parameter_ideal(self, cubic2):
        ring = cubic2.ring
        I = variables_ideal(ring, 2)
        report = verify_theorem_b(ring, DegreeType(1, (1, 1)), q_max=16, seed=7, ideal=I)
        assert report.bound == 3
        assert report.all_resolved
        assert all(q is not None and q <= 4 for _, q in report.elements)
        assert len(report.elements) == 9
        # x^2 y is already in (x, y): resolved with no Frobenius power
        assert dict(report.elements)[(2, 1, 0)] == 1
        assert "not" in report.note and "counterexample" in report.note

    def test_char_five_parameter_ideal(self, cubic5):
        ring = cubic5.ring
        I = variables_ideal(ring, 2)
        report = verify_theorem_b(ring, DegreeType(1, (1, 1)), seed=7, ideal=I)
        assert report.all_resolved
        assert report.q_list[0] == 1

    def test_random_draw_deterministic(self, cubic7):
        dt = DegreeType(1, (2, 2))
        a = verify_theorem_b(cubic7.ring, dt, q_max=49, seed=11)
        b = verify_theorem_b(cubic7.ring, dt, q_max=49, seed=11)
        assert a == b
        assert a.ideal.degrees == (2, 2)

    def test_explicit_ideal_must_match_degree_type(self, cubic2):
        I = variables_ideal(cubic2.ring, 2)
        with pytest.raises(PreconditionError, match="degree type"):
            verify_theorem_b(cubic2.ring, DegreeType(1, (2, 2)), ideal=I)

    def test_q_max_validation(self, cubic2):
        with pytest.raises(PreconditionError):
            verify_theorem_b(cubic2.ring, DegreeType(1, (1, 1)), q_max=0)
