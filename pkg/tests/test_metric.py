import random
from fractions import Fraction

import pytest

from prelie_calculus.exact_core import (
    GenPoly,
    LambdaScalar,
    ONE,
    RatFunc,
    Scalar,
    ZERO,
    ratfunc_equal,
)
from prelie_calculus.metric import (
    DT,
    DX,
    MetricCandidate,
    check_metric,
    form_past_func,
    form_star,
    func_mul,
    func_star,
    metric_from_uv,
    normal_order_localized,
    one_form_u_v,
    scalar_curvature_classical,
    standard_metric,
)

L = LambdaScalar((ZERO, ONE))
X = GenPoly.monomial(1, 0)
T = GenPoly.monomial(0, 1)


def gp(terms):
    return GenPoly(terms)


ALL_CALCULI = [
    ("b1", Fraction(3)),
    ("b2", Fraction(2)),
    ("b4", None),
    ("b5", None),
]


class TestNormalOrder:
    def test_already_ordered(self):
        r = normal_order_localized([X, "dx"], "b1", Fraction(1))
        assert r == {(DX,): X}

    def test_b1_t_past_negative_power(self):
        # t x^-1 = x^-1 (t + lambda)
        r = normal_order_localized([T, gp({(-1, 0): ONE})], "b1",
                                   Fraction(2))
        assert r == {(): gp({(-1, 1): ONE, (-1, 0): L})}

    def test_integer_power_induction_oracle(self):
        """Closed-form exponent shifts agree with moving one generator
        at a time, for integer exponents a in [-4, 4]."""
        xinv = gp({(-1, 0): ONE})
        for calc, param in ALL_CALCULI:
            for a in range(-4, 5):
                for b in range(0, 4):
                    for xi in ("dx", "dt"):
                        closed = normal_order_localized(
                            [xi, GenPoly.monomial(a, b)], calc, param)
                        factors = [xi] + [X if a >= 0 else xinv] * abs(a) \
                            + [T] * b
                        assert closed == normal_order_localized(
                            factors, calc, param)

    def test_idempotent(self):
        r = normal_order_localized([T, X, "dx", T], "b2", Fraction(2))
        again = {}
        for w, c in r.items():
            redo = normal_order_localized(
                [c] + ["dx" if e == DX else "dt" for e in w],
                "b2", Fraction(2))
            for w2, c2 in redo.items():
                again[w2] = again.get(w2, GenPoly({})) + c2
        assert r == {w: c for w, c in again.items() if not c.is_zero()}

    def test_grassmann(self):
        assert normal_order_localized(["dx", "dx"], "b4") == {}
        up = normal_order_localized(["dx", "dt"], "b4")
        down = normal_order_localized(["dt", "dx"], "b4")
        assert up == {(DX, DT): GenPoly.const(1)}
        assert down == {(DX, DT): GenPoly.const(-1)}

    def test_case3_rejected(self):
        with pytest.raises(ValueError, match="ln"):
            normal_order_localized([T, X], "b3")

    def test_func_mul_random_associative(self):
        rng = random.Random(11)

        def rand_poly():
            return GenPoly({
                (Fraction(rng.randint(-3, 3), rng.choice([1, 2])),
                 rng.randint(0, 2)): Scalar(rng.randint(1, 4))
                for _ in range(2)})

        for _ in range(20):
            a, b, c = rand_poly(), rand_poly(), rand_poly()
            assert func_mul(func_mul(a, b), c) == func_mul(a, func_mul(b, c))


class TestStar:
    def test_generators_fixed(self):
        assert func_star(X) == X
        assert func_star(T) == T

    def test_monomial(self):
        # (x^a t^b)* = x^a (t - lambda a)^b
        f = gp({(2, 1): ONE})
        assert func_star(f) == gp({(2, 1): ONE, (2, 0): Scalar(-2) * L})

    def test_involution(self):
        f = gp({(Fraction(-1, 2), 2): Scalar(3), (1, 1): Scalar(0, 1)})
        assert func_star(func_star(f)) == f

    def test_case1_u_v_self_adjoint(self):
        u, v = one_form_u_v("b1", Fraction(-2))
        assert form_star("b1", Fraction(-2), u) == u
        assert form_star("b1", Fraction(-2), v) == v

    def test_case2_v_star(self):
        # v* = v + lambda beta (beta - 2) u
        for beta in (Fraction(1), Fraction(2), Fraction(3), Fraction(-1)):
            u, v = one_form_u_v("b2", beta)
            vs = form_star("b2", beta, v)
            shift = Scalar(beta * (beta - 2)) * L
            expect = {xi: v[xi] + u[xi].scale(shift) for xi in (DX, DT)}
            assert vs == expect

    def test_case4_v_star(self):
        # v* = v - 3 lambda u
        u, v = one_form_u_v("b4", None)
        vs = form_star("b4", None, v)
        expect = {xi: v[xi] + u[xi].scale(Scalar(-3) * L)
                  for xi in (DX, DT)}
        assert vs == expect

    def test_case5_v_star(self):
        # v* = v - lambda u
        u, v = one_form_u_v("b5", None)
        vs = form_star("b5", None, v)
        expect = {xi: v[xi] + u[xi].scale(-L) for xi in (DX, DT)}
        assert vs == expect


class TestCentralForms:
    def test_u_v_central(self):
        """u and v commute with both generators on every calculus."""
        for calc, param in ALL_CALCULI:
            for w in one_form_u_v(calc, param):
                for h in (X, T):
                    for eta in (DX, DT):
                        if w[eta].is_zero():
                            continue
                    # h . w - w . h componentwise
                    left = {xi: func_mul(h, w[xi]) for xi in (DX, DT)}
                    right = {DX: GenPoly({}), DT: GenPoly({})}
                    for xi in (DX, DT):
                        moved = form_past_func(calc, param, xi, h)
                        for zeta in (DX, DT):
                            right[zeta] = right[zeta] + func_mul(
                                w[xi], moved[zeta])
                    assert left == right, (calc, w)


class TestStandardMetrics:
    def test_case1_display(self):
        a = Fraction(3)
        M = standard_metric(1, alpha=a, c1=2, c2=5, c3=7)
        assert M.coefficients[DX][DX] == gp({(-2, 0): Scalar(2)})
        assert M.coefficients[DX][DT] == gp({(a - 1, 0): Scalar(5)})
        assert M.coefficients[DT][DX] == gp({(a - 1, 0): Scalar(5)})
        assert M.coefficients[DT][DT] == gp({(2 * a, 0): Scalar(7)})

    def test_case2_display(self):
        # dx(x)dx and dt(x)dt coefficients of the beta-family metric
        b = Fraction(2)
        M = standard_metric(2, beta=b)
        assert M.coefficients[DX][DX] == gp({
            (2 * b - 2, 0): ONE + LambdaScalar(
                [ZERO, ZERO, Scalar(b * b * (b * b - 3 * b + 3))]),
            (2 * b - 2, 2): Scalar(b * b),
            (2 * b - 2, 1): Scalar(-b * b * (2 * b - 3)) * L,
        })
        assert M.coefficients[DT][DT] == gp({(2 * b, 0): ONE})
        # off-diagonal: -beta c3 x^(2b-1) (t - lambda (b - 1))
        F_ = gp({(2 * b - 1, 1): Scalar(-b),
                 (2 * b - 1, 0): Scalar(b * (b - 1)) * L})
        assert M.coefficients[DX][DT] == F_
        assert M.coefficients[DT][DX] == F_

    def test_case4_display(self):
        M = standard_metric(4)
        assert M.coefficients[DX][DX] == gp({(-2, 0): ONE})
        F_ = gp({(-3, 1): Scalar(-1), (-3, 0): Scalar(-2) * L})
        assert M.coefficients[DX][DT] == F_
        assert M.coefficients[DT][DX] == F_
        assert M.coefficients[DT][DT] == gp({
            (-4, 0): ONE + LambdaScalar([ZERO, ZERO, Scalar(7)]),
            (-4, 1): Scalar(5) * L,
            (-4, 2): ONE,
        })

    def test_case5_display(self):
        M = standard_metric(5)
        assert M.coefficients[DX][DX] == gp({
            (0, 0): ONE + LambdaScalar([ZERO, ZERO, ONE]),
            (0, 2): ONE,
            (1, 1): Scalar(-2),
            (0, 1): L,
            (2, 0): ONE,
        })
        F_ = gp({(2, 0): ONE, (1, 1): Scalar(-1)})
        assert M.coefficients[DX][DT] == F_
        assert M.coefficients[DT][DX] == F_
        assert M.coefficients[DT][DT] == gp({(2, 0): ONE})

    def test_case3_rejected(self):
        with pytest.raises(ValueError, match="ln"):
            standard_metric(3)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            standard_metric(2)          # missing beta
        with pytest.raises(ValueError):
            standard_metric(2, beta=0)
        with pytest.raises(ValueError):
            standard_metric(7)


def catalog_metrics():
    return [
        ("case1 a=-2", standard_metric(1, alpha=Fraction(-2))),
        ("case1 a=1", standard_metric(1, alpha=Fraction(1),
                                      c2=Fraction(1, 2))),
        ("case2 b=1", standard_metric(2, beta=Fraction(1))),
        ("case2 b=2", standard_metric(2, beta=Fraction(2), c1=3)),
        ("case2 b=-1", standard_metric(2, beta=Fraction(-1))),
        ("case4", standard_metric(4)),
        ("case4 c2", standard_metric(4, c2=2)),
        ("case5", standard_metric(5)),
        ("case5 c2", standard_metric(5, c2=-1)),
    ]


class TestCheckMetric:
    def test_case1_simple_all_pass(self):
        # g = x^-2 dx(x)dx + x^-4 dt(x)dt at alpha = -2
        M = standard_metric(1, alpha=Fraction(-2))
        assert M.coefficients[DX][DX] == gp({(-2, 0): ONE})
        assert M.coefficients[DT][DT] == gp({(-4, 0): ONE})
        rep = check_metric(M)
        assert all(rep[k] for k in
                   ("central", "wedge_symmetric", "real", "nondegenerate"))

    def test_all_catalog_metrics_pass_exactly_in_lambda(self):
        for name, M in catalog_metrics():
            rep = check_metric(M)
            assert all(rep[k] for k in rep), (name, rep)

    def test_degenerate_detected(self):
        M = standard_metric(5, c3=0)
        rep = check_metric(M)
        assert not rep["nondegenerate"]

    def test_antisymmetric_fails_wedge(self):
        # g = dx(x)dt - dt(x)dx has wedge 2 dx^dt
        M = MetricCandidate("b1", Fraction(1), (
            (GenPoly({}), GenPoly.const(1)),
            (GenPoly.const(-1), GenPoly({}))))
        rep = check_metric(M, with_witnesses=True)
        assert not rep["wedge_symmetric"]
        assert rep["witnesses"]["wedge_symmetric"]

    def test_imaginary_coefficient_fails_reality(self):
        M = standard_metric(1, alpha=Fraction(2), c1=Scalar(0, 1))
        rep = check_metric(M)
        assert not rep["real"]
        assert rep["central"]

    def test_noncentral_detected(self):
        M = MetricCandidate("b4", None, (
            (GenPoly.const(1), GenPoly({})),
            (GenPoly({}), GenPoly.const(1))))
        rep = check_metric(M, with_witnesses=True)
        assert not rep["central"]

    def test_centrality_survives_t_shift(self):
        """Replacing v by v - c2 u (the shift t -> t + const) keeps
        every predicate true."""
        for beta in (Fraction(1), Fraction(2)):
            for c2 in (Fraction(1), Fraction(-3, 2)):
                shifted = metric_from_uv("b2", beta, 1, c2, 1)
                rep = check_metric(shifted)
                assert all(rep[k] for k in rep), (beta, c2)


class TestCurvature:
    def test_case1_constant(self):
        # R = -2 a^2 c3 / (c1 c3 - c2^2)
        for a, c1, c2, c3 in [(Fraction(1), 1, 0, 1),
                              (Fraction(-2), 2, 1, 3),
                              (Fraction(3), 1, Fraction(1, 2), 2)]:
            R = scalar_curvature_classical(
                standard_metric(1, alpha=a, c1=c1, c2=c2, c3=c3))
            expect = Fraction(-2) * a * a * c3 \
                / (Fraction(c1) * c3 - Fraction(c2) ** 2)
            assert ratfunc_equal(R, RatFunc.const(expect))

    def test_case1_unit_example(self):
        R = scalar_curvature_classical(standard_metric(1, alpha=Fraction(1)))
        assert ratfunc_equal(R, RatFunc.const(-2))

    def test_flat_euclidean(self):
        M = MetricCandidate("b1", Fraction(1), (
            (GenPoly.const(1), GenPoly({})),
            (GenPoly({}), GenPoly.const(1))))
        R = scalar_curvature_classical(M)
        assert R.is_zero()

    def test_case2(self):
        """R = -4 b^2 / (c1 x^(2b)); at b = 1 this is the published
        -x^(-2b) 2b(b+1) c1/(c1 + c3(b^2-1)t^2)^2."""
        for b, c1, c3 in [(Fraction(1), 1, 1), (Fraction(2), 3, 2),
                          (Fraction(-1), 1, 5), (Fraction(1, 2), 2, 1)]:
            R = scalar_curvature_classical(
                standard_metric(2, beta=b, c1=c1, c3=c3))
            expect = RatFunc(gp({(-2 * b, 0): Scalar(-4 * b * b)}),
                             GenPoly.const(c1))
            assert ratfunc_equal(R, expect)
            if b == 1:
                c1sq = gp({(0, 0): Scalar(c1)}) * gp({(0, 0): Scalar(c1)})
                text_form = RatFunc(
                    gp({(-2 * b, 0): Scalar(-2 * b * (b + 1) * c1)}),
                    c1sq)
                assert ratfunc_equal(R, text_form)

    def test_case4(self):
        # R = 4(x^2 - 2 t^2)/c1 - 8/c3
        for c1, c3 in [(1, 1), (2, 5), (Fraction(1, 3), 4)]:
            R = scalar_curvature_classical(standard_metric(4, c1=c1, c3=c3))
            expect = RatFunc(gp({
                (2, 0): Scalar(Fraction(4, 1) / c1),
                (0, 2): Scalar(Fraction(-8, 1) / c1),
                (0, 0): Scalar(Fraction(-8, 1) / c3)}))
            assert ratfunc_equal(R, expect)

    def test_case5(self):
        # R = -4/(c1 x^2)
        for c1, c3 in [(1, 1), (3, 2), (Fraction(1, 2), 7)]:
            R = scalar_curvature_classical(standard_metric(5, c1=c1, c3=c3))
            expect = RatFunc(gp({(0, 0): Scalar(-4)}),
                             gp({(2, 0): Scalar(c1)}))
            assert ratfunc_equal(R, expect)

    def test_degenerate_rejected(self):
        M = standard_metric(5, c3=0)
        with pytest.raises(ValueError, match="degenerate"):
            scalar_curvature_classical(M)
