from fractions import Fraction as F

import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from ndstab import (
    MultiPoly,
    UniPoly,
    arith,
    circle_distance_poly,
    complex_split,
    evaluate,
    gcd_univariate,
    l1_norm,
    parse_poly,
    resultant,
    squarefree_decomposition,
    substitute,
)
from ndstab.textform import PolySyntaxError, UndeclaredVariableError, format_poly

from helpers import to_sympy, uni_to_sympy

V = ("z1", "z2")


def P(text, variables=V):
    return parse_poly(text, list(variables))


t = UniPoly.x()


class TestArith:
    def test_add(self):
        assert arith(P("z1+z2-2"), P("z1^2-2*z1-2"), "add") == P("z1^2 - z1 + z2 - 4")

    def test_mul_example_factor(self):
        assert arith(P("z1-3"), P("z2-5/2"), "mul") == P("z1*z2 - 5/2*z1 - 3*z2 + 15/2")

    def test_mul_zero(self):
        assert arith(P("z1^3*z2 + 7"), P("0"), "mul").is_zero()

    def test_sub_self(self):
        p = P("3/7*z1^2*z2 - z2 + 1")
        assert arith(p, p, "sub").is_zero()

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            arith(P("z1"), P("z2"), "div")


class TestEvaluate:
    def test_integer_point(self):
        assert evaluate(P("z1^2-2*z1-2"), [3, 0]) == (F(1), F(0))

    def test_rational_point(self):
        assert evaluate(P("z1^2-2*z1-2"), [F(-1, 2), 0]) == (F(-3, 4), F(0))

    def test_example_s_at_rational_point(self):
        z1, z2 = F(27, 10), F(-7, 10)
        expected = z1 * z2 - 3 * z1 - 3 * z2 + 8
        assert evaluate(P("z1*z2 - 3*z1 - 3*z2 + 8"), [z1, z2]) == (expected, F(0))

    def test_complex_point(self):
        # (i)^2 + 1 = 0
        assert evaluate(P("z1^2+1"), [(F(0), F(1)), 0]) == (F(0), F(0))


class TestSubstitute:
    def test_correction_into_z1(self):
        tt = ("t", "z1")
        q = substitute(P("-1/2*t + 1/2", tt), "t", P("z1", tt))
        assert q == P("-1/2*z1 + 1/2", tt)

    def test_square_of_sum(self):
        ctx = ("t", "z1", "z2")
        q = substitute(P("t^2", ctx), "t", P("z1+z2", ctx))
        assert q == P("z1^2 + 2*z1*z2 + z2^2", ctx)

    def test_example_g2(self):
        ctx = ("t", "z1")
        assert substitute(P("2-t", ctx), "t", P("z1", ctx)) == P("2 - z1", ctx)


class TestResultant:
    ctx = ("t", "z1", "z2")

    def test_first_coordinate(self):
        r = resultant(P("t^2-2*t-2", self.ctx), P("z1 - t", self.ctx), "t")
        assert r == P("z1^2 - 2*z1 - 2", self.ctx)

    def test_second_coordinate(self):
        r = resultant(P("t^2-2*t-2", self.ctx), P("z2 - (2 - t)", self.ctx), "t")
        assert r == P("z2^2 - 2*z2 - 2", self.ctx)

    def test_linear(self):
        ctx = ("t", "z", "a")
        assert resultant(P("t - a", ctx), P("z - t", ctx), "t") == P("z - a", ctx)

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.integers(-5, 5), min_size=2, max_size=4),
        st.lists(st.integers(-5, 5), min_size=2, max_size=4),
    )
    def test_matches_sympy(self, a, b):
        ctx = ("t", "z")
        if a[-1] == 0 or b[-1] == 0:
            return
        ts, zs = sp.symbols("t z")
        pa = MultiPoly(ctx, {(i, 0): c for i, c in enumerate(a)})
        pb = MultiPoly.var("z", ctx) - MultiPoly(ctx, {(i, 0): c for i, c in enumerate(b)})
        mine = resultant(pa, pb, "t")
        # Sylvester determinant; sympy's own resultant can flip sign when deg p < deg q
        oracle = sylvester(to_sympy(pa, (ts, zs)), to_sympy(pb, (ts, zs)), ts).det()
        assert sp.expand(to_sympy(mine, (ts, zs)) - oracle) == 0


class TestGcdAndSquarefree:
    def test_shared_root(self):
        assert gcd_univariate(t**2 - 1, t - 1) == t - 1

    def test_coprime(self):
        assert gcd_univariate(t**2 + 1, t**2 - 1) == UniPoly([1])

    def test_factor_inspection(self):
        assert gcd_univariate((t - 2) ** 2 * (t + 1), (t - 2) * (t - 5)) == t - 2

    def test_decomposition(self):
        assert squarefree_decomposition((t - 1) ** 2 * (t + 2)) == [(t + 2, 1), (t - 1, 2)]

    def test_already_squarefree(self):
        f = t**2 - 2 * t - 2
        assert squarefree_decomposition(f) == [(f, 1)]

    def test_pure_power(self):
        assert squarefree_decomposition(t**3) == [(t, 3)]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-30, 30), min_size=2, max_size=7))
    def test_product_reconstructs(self, cs):
        if cs[-1] == 0:
            return
        p = UniPoly(cs)
        prod = UniPoly([1])
        for q, m in squarefree_decomposition(p):
            prod = prod * q**m
            assert gcd_univariate(q, q.derivative()).degree == 0
        assert prod.monic() == p.monic()

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.integers(-9, 9), min_size=1, max_size=5),
        st.lists(st.integers(-9, 9), min_size=1, max_size=5),
    )
    def test_gcd_matches_sympy(self, a, b):
        pa, pb = UniPoly(a), UniPoly(b)
        if pa.is_zero() or pb.is_zero():
            return
        x = sp.Symbol("t")
        oracle = sp.Poly(sp.gcd(uni_to_sympy(pa, x), uni_to_sympy(pb, x)), x).monic()
        mine = gcd_univariate(pa, pb)
        assert sp.Poly(uni_to_sympy(mine, x), x).monic() == oracle


class TestComplexParts:
    def test_identity(self):
        re, im = complex_split(t)
        assert re == P("x1", ("x1", "x2")) and im == P("x2", ("x1", "x2"))

    def test_example_g2(self):
        re, im = complex_split(UniPoly([2, -1]))
        assert re == P("2 - x1", ("x1", "x2")) and im == P("-x2", ("x1", "x2"))

    def test_square(self):
        re, im = complex_split(t**2)
        assert re == P("x1^2 - x2^2", ("x1", "x2")) and im == P("2*x1*x2", ("x1", "x2"))

    def test_circle_identity(self):
        assert circle_distance_poly(t) == P("x1^2 + x2^2 - 1", ("x1", "x2"))

    def test_circle_example_g2(self):
        assert circle_distance_poly(UniPoly([2, -1])) == P("x1^2 - 4*x1 + x2^2 + 3", ("x1", "x2"))

    def test_circle_constant(self):
        assert circle_distance_poly(UniPoly([F(3, 2)])) == F(5, 4)


class TestL1:
    def test_example_s(self):
        assert l1_norm(P("z1*z2 - 3*z1 - 3*z2 + 8")) == 15

    def test_zero(self):
        assert l1_norm(P("0")) == 0

    def test_correction(self):
        assert l1_norm(P("1/2*t - 1/2", ("t",))) == 1


class TestTextForm:
    def test_round_trip(self):
        p = P("z1*z2 - 3*z1 - 3*z2 + 8")
        assert format_poly(p) == "z1*z2 - 3*z1 - 3*z2 + 8"
        assert P(format_poly(p)) == p

    def test_rational_coefficient(self):
        assert P("3/2*z1").terms == {(1, 0): F(3, 2)}

    def test_undeclared(self):
        with pytest.raises(UndeclaredVariableError):
            P("z3 + 1")

    def test_syntax_error_position(self):
        with pytest.raises(PolySyntaxError) as err:
            P("z1 + * z2")
        assert err.value.column >= 1
