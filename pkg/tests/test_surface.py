"""Chord/tangent geometry, normalization, Hensel lifting, enumeration."""

import random

import pytest

import oracles
from cubicloop.eisenstein import (
    ONE,
    PI,
    THETA,
    ZERO,
    PrecisionExhausted,
    RingElt,
    equal_mod,
    nu,
    to_digits,
)
from cubicloop.surface import (
    DegenerateLine,
    HenselCriterionFailed,
    LambdaParams,
    NotTangentDirection,
    PointsCoincide,
    ProjPoint,
    all_params,
    canonical_form,
    chord,
    compose_parametric,
    enumerate_classes,
    eval_form,
    hensel_lift_root,
    lift_representative,
    normalize,
    random_lift,
    residue_tuple,
    tangent_section_point,
)

U0 = ProjPoint((ONE, -ONE, ZERO, ZERO))
U1 = ProjPoint((ONE, ZERO, -ONE, ZERO))
Q2 = ProjPoint((ZERO, ONE, -THETA, ZERO))


class TestEvalForm:
    def test_exact_zero(self):
        assert eval_form(U0).is_zero()

    def test_unit_value(self):
        assert eval_form(ProjPoint((ONE, ONE, ONE, ZERO))) == RingElt(3)

    def test_near_surface_residue(self):
        # the canonical mod-pi^3 tuple of a class solves F only to nu = 5
        p = ProjPoint(residue_tuple(LambdaParams("P", 0, (1, 0, 0))))
        assert nu(eval_form(p)) == 5


class TestNormalize:
    def test_worked_example(self):
        p = ProjPoint((-(THETA**2) + PI**2, THETA, PI, -PI * THETA**2))
        cf = normalize(p, 3)
        assert cf.pivot == 0
        assert [d.digits for d in cf.coords] == [
            (1, 0, 0),
            (-1, -1, 1),
            (0, -1, 1),
            (0, 1, 0),
        ]

    def test_pivot_conditions(self):
        rng = random.Random(11)
        params = all_params()
        for _ in range(30):
            lp = params[rng.randrange(len(params))]
            cf = normalize(random_lift(lp, 12, rng.randrange(1 << 30)), 3)
            assert cf.coords[cf.pivot].digits == (1, 0, 0)
            for i in range(cf.pivot):
                assert cf.coords[i].digits[0] == 0

    def test_scales_out_common_valuation(self):
        p = ProjPoint((PI**2, -(PI**2), ZERO, ZERO))
        cf = normalize(p, 3)
        assert cf.pivot == 0 and cf.coords[1].digits == (-1, 0, 0)

    def test_zero_point_rejected(self):
        with pytest.raises(PrecisionExhausted):
            normalize(ProjPoint((ZERO, ZERO, ZERO, ZERO)), 3)

    def test_insufficient_precision_rejected(self):
        with pytest.raises(PrecisionExhausted):
            normalize(ProjPoint(U0.coords, 2), 3)


class TestChord:
    def test_swap_on_u0(self):
        r, trace = chord(U0, U1)
        assert normalize(r, 3) == normalize(ProjPoint((ZERO, ONE, -ONE, ZERO)), 3)
        assert trace.margin == float("inf")

    def test_known_pair(self):
        r, _ = chord(U1, Q2)
        assert normalize(r, 3) == normalize(ProjPoint((-THETA, ONE, ZERO, ZERO)), 3)

    def test_generic_swap(self):
        # the chord through U0 swaps the first two coordinates of any point
        rng = random.Random(5)
        for _ in range(10):
            lp = all_params()[rng.randrange(243)]
            p = random_lift(lp, 12, rng.randrange(1 << 30))
            r, _ = chord(U0, p)
            swapped = ProjPoint((p.coords[1], p.coords[0], p.coords[2], p.coords[3]), p.prec)
            assert normalize(r, 3) == normalize(swapped, 3)

    def test_output_on_surface(self):
        rng = random.Random(17)
        for _ in range(20):
            lp1 = all_params()[rng.randrange(243)]
            lp2 = all_params()[rng.randrange(243)]
            p = random_lift(lp1, 12, rng.randrange(1 << 30))
            q = random_lift(lp2, 12, rng.randrange(1 << 30))
            try:
                r, _ = chord(p, q)
            except (PointsCoincide, PrecisionExhausted):
                continue
            assert oracles.check_on_surface(r.coords, r.effective_prec())

    def test_symmetry_and_involution(self):
        rng = random.Random(23)
        p = random_lift(all_params()[40], 12, rng.randrange(1 << 30))
        q = random_lift(all_params()[150], 12, rng.randrange(1 << 30))
        r1, _ = chord(p, q)
        r2, _ = chord(q, p)
        assert normalize(r1, 3) == normalize(r2, 3)
        back, _ = chord(r1, q)
        assert normalize(back, 3) == normalize(p, 3)

    def test_coincident_points(self):
        with pytest.raises(PointsCoincide):
            chord(U0, ProjPoint((RingElt(2), RingElt(-2), ZERO, ZERO)))


class TestTangent:
    def test_eckhardt_collapse(self):
        for d in ((ONE, -ONE, ONE, ZERO), (ZERO, ZERO, ZERO, ONE)):
            out = tangent_section_point(U0, d)
            assert normalize(out, 3) == normalize(U0, 3)

    def test_not_tangent(self):
        with pytest.raises(NotTangentDirection):
            tangent_section_point(U0, (ONE, ZERO, ZERO, ZERO))

    def test_contraction_at_generic_point(self):
        rng = random.Random(31)
        p = random_lift(all_params()[100], 12, rng.randrange(1 << 30))
        for _ in range(5):
            d = oracles.tangent_direction(p, rng)
            out = tangent_section_point(p, d)
            assert normalize(out, 3) == normalize(p, 3)


class TestHensel:
    def test_exact_root(self):
        g = [ZERO, -ONE, ZERO, ONE]  # y^3 - y
        assert hensel_lift_root(g, ONE, 12) == ONE

    def test_square_root_of_one_plus_pi(self):
        g = [-(ONE + PI), ZERO, ONE]
        y = hensel_lift_root(g, ONE, 12)
        assert nu(y * y - (ONE + PI)) >= 12

    def test_criterion_failure(self):
        with pytest.raises(HenselCriterionFailed):
            hensel_lift_root([-PI, ZERO, ONE], ZERO, 8)


class TestLifting:
    def test_representative_contract(self):
        rng = random.Random(41)
        for _ in range(15):
            lp = all_params()[rng.randrange(243)]
            p = lift_representative(lp, 12)
            assert nu(eval_form(p)) >= 12
            assert normalize(p, 3) == canonical_form(lp)

    def test_random_lift_stays_in_class(self):
        rng = random.Random(43)
        for _ in range(10):
            lp = all_params()[rng.randrange(243)]
            seed = rng.randrange(1 << 30)
            p = random_lift(lp, 12, seed)
            assert nu(eval_form(p)) >= 12
            assert normalize(p, 3) == canonical_form(lp)

    def test_random_lifts_differ_below_class_level(self):
        lp = LambdaParams("Q", 1, (0, 1, -1))
        a = random_lift(lp, 12, 1)
        b = random_lift(lp, 12, 2)
        assert normalize(a, 3) == normalize(b, 3)
        assert normalize(a, 5) != normalize(b, 5)

    def test_deterministic(self):
        lp = LambdaParams("R", 2, (1, 0, 0))
        a = random_lift(lp, 12, 99)
        b = random_lift(lp, 12, 99)
        assert all(equal_mod(x, y, 12) for x, y in zip(a.coords, b.coords))


class TestEnumeration:
    def test_counts(self):
        assert [len(enumerate_classes(n)) for n in (1, 2, 3)] == [3, 27, 243]

    def test_forms_distinct(self):
        for n in (1, 2, 3):
            forms = enumerate_classes(n)
            assert len({oracles.key(cf) for cf in forms}) == len(forms)

    @pytest.mark.parametrize("n", [1, 2])
    def test_against_bruteforce_oracle(self, n):
        got = {oracles.key(cf) for cf in enumerate_classes(n)}
        assert got == oracles.liftable_tuples(n)

    def test_depth_consistency(self):
        # truncating the 243 depth-3 forms yields exactly the 27 depth-2 forms
        deep = {oracles.key(cf.truncate(2)) for cf in enumerate_classes(3)}
        assert deep == {oracles.key(cf) for cf in enumerate_classes(2)}

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            enumerate_classes(4)


class TestParametricComposition:
    def test_worked_example(self):
        got = compose_parametric(
            LambdaParams("P", 0, (1, 0, 0)), LambdaParams("Q", 0, (0, 0, 0))
        )
        expected = normalize(
            ProjPoint((PI, -ONE + PI**2, ONE, -PI), 3), 3
        )
        assert got == expected

    def test_matches_chord(self):
        rng = random.Random(53)
        for _ in range(25):
            lp_p = LambdaParams(
                "P", rng.randrange(3), tuple(rng.randrange(-1, 2) for _ in range(3))
            )
            lp_q = LambdaParams(
                "Q", rng.randrange(3), tuple(rng.randrange(-1, 2) for _ in range(3))
            )
            r, _ = chord(lift_representative(lp_p, 12), lift_representative(lp_q, 12))
            assert compose_parametric(lp_p, lp_q) == normalize(r, 3)

    def test_family_restriction(self):
        with pytest.raises(ValueError):
            compose_parametric(
                LambdaParams("Q", 0, (0, 0, 0)), LambdaParams("Q", 0, (0, 0, 0))
            )


class TestLambdaParams:
    @pytest.mark.parametrize(
        "family,exp,digits",
        [("X", 0, (0, 0, 0)), ("P", 3, (0, 0, 0)), ("P", 0, (2, 0, 0)), ("P", 0, (0, 0))],
    )
    def test_validation(self, family, exp, digits):
        with pytest.raises(ValueError):
            LambdaParams(family, exp, digits)

    def test_coupled_sign(self):
        assert LambdaParams("P", 0, (1, 0, -1)).coupled_sign == 1
        assert LambdaParams("Q", 0, (1, -1, 0)).coupled_sign == -1
