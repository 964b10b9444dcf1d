import random
from fractions import Fraction as F

import pytest
import sympy as sp

from ndstab import (
    EmptyVarietyError,
    Ideal,
    MultiPoly,
    NotZeroDimensionalError,
    UniPoly,
    groebner,
    normal_form,
    parse_poly,
    quotient_dimension,
    radicalize,
    univ_r,
)
from ndstab.rur import trial_form

from helpers import draw_system, to_sympy

V = ("z1", "z2")


def P(text, variables=V):
    return parse_poly(text, list(variables))


def system(*texts, variables=V):
    return [P(x, variables) for x in texts]


EXAMPLE = system("z1^2 - 2*z1 - 2", "z1 + z2 - 2")


def same_ideal(gb, polys):
    return all(normal_form(p, gb)[0].is_zero() for p in polys)


class TestGroebner:
    def test_example_basis(self):
        gb = groebner(Ideal.of(EXAMPLE, V))
        assert set(map(str, gb.basis)) == {"z1 + z2 - 2", "z2^2 - 2*z2 - 2"}

    def test_variables_already_basis(self):
        gb = groebner(Ideal.of(system("z1", "z2"), V))
        assert set(map(str, gb.basis)) == {"z1", "z2"}

    def test_point(self):
        gb = groebner(Ideal.of(system("z1 - 2", "z2 - 3"), V))
        assert set(map(str, gb.basis)) == {"z1 - 2", "z2 - 3"}

    def test_transform_identity(self):
        gb = groebner(Ideal.of(EXAMPLE, V))
        for b, row in zip(gb.basis, gb.transform):
            combo = MultiPoly.const(0, V)
            for c, p in zip(row, EXAMPLE):
                combo = combo + c * p
            assert combo == b

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_sympy_reduced_basis(self, seed):
        variables, polys = draw_system(seed, 2 + seed % 2, "2", coeff_bound=9, scale=1)
        syms = sp.symbols(list(variables))
        mine = groebner(Ideal.of(polys, variables))
        theirs = sp.groebner([to_sympy(p, syms) for p in polys], *syms, order="grevlex")
        mine_sp = sorted(sp.srepr(sp.expand(to_sympy(b, syms))) for b in mine.basis)
        theirs_sp = sorted(
            sp.srepr(sp.expand(g / sp.Poly(g, *syms).LC(order="grevlex"))) for g in theirs.exprs
        )
        assert mine_sp == theirs_sp


class TestQuotientDimension:
    def test_worked_example(self):
        assert quotient_dimension(groebner(Ideal.of(EXAMPLE, V))) == 2

    def test_positive_dimensional(self):
        assert quotient_dimension(groebner(Ideal.of(system("z1"), V))) == "infinite"

    def test_unit(self):
        assert quotient_dimension(groebner(Ideal.of(system("z1", "z1 - 1"), V))) == 0


class TestNormalForm:
    def test_example_membership(self):
        gb = groebner(Ideal.of(EXAMPLE, V))
        rem, cof = normal_form(P("z1*z2 - 3*z1 - 3*z2 + 8"), gb)
        assert rem.is_zero()
        assert cof[0] == P("-1") and cof[1] == P("z1 - 3")

    def test_generator(self):
        gb = groebner(Ideal.of(EXAMPLE, V))
        rem, cof = normal_form(EXAMPLE[0], gb)
        assert rem.is_zero()

    def test_one_not_in_maximal(self):
        gb = groebner(Ideal.of(system("z1", "z2"), V))
        rem, _ = normal_form(P("1"), gb)
        assert rem == P("1")

    @pytest.mark.parametrize("seed", range(10))
    def test_cofactor_identity(self, seed):
        variables, polys = draw_system(seed, 2, "2,3", coeff_bound=9, scale=1)
        gb = groebner(Ideal.of(polys, variables))
        rng = random.Random(seed)
        p = MultiPoly(variables, {(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-9, 9) for _ in range(6)})
        rem, cof = normal_form(p, gb)
        combo = rem
        for c, q in zip(cof, polys):
            combo = combo + c * q
        assert combo == p


class TestRadical:
    def test_square(self):
        rad = radicalize(Ideal.of(system("z1^2", "z2"), V))
        assert same_ideal(groebner(rad), system("z1", "z2"))
        assert quotient_dimension(groebner(rad)) == 1

    def test_radical_input(self):
        rad = radicalize(Ideal.of(EXAMPLE, V))
        assert quotient_dimension(groebner(rad)) == 2

    def test_cube(self):
        rad = radicalize(Ideal.of(system("(z1 - 1)^3", "z2 - z1"), V))
        assert same_ideal(groebner(rad), system("z1 - 1", "z2 - 1"))


class TestUnivR:
    def test_worked_example(self):
        ur = univ_r(EXAMPLE, V)
        assert ur.a == (1, 0)
        assert ur.f == UniPoly([-2, -2, 1])
        assert ur.g == (UniPoly([0, 1]), UniPoly([2, -1]))

    def test_point(self):
        ur = univ_r(system("z1 - 2", "z2 - 3"), V)
        assert ur.a == (1, 0) and ur.f == UniPoly([-2, 1])
        assert ur.g == (UniPoly([2]), UniPoly([3]))

    def test_diagonal(self):
        ur = univ_r(system("z1^2 - 1", "z2 - z1"), V)
        assert ur.a == (1, 0) and ur.f == UniPoly([-1, 0, 1])
        assert ur.g == (UniPoly([0, 1]), UniPoly([0, 1]))

    def test_needs_second_trial(self):
        # z1 takes one value on two points, so (1, 0) cannot separate
        ur = univ_r(system("z1 - 1", "z2^2 - 4"), V)
        assert ur.a != (1, 0)
        assert ur.f.degree == 2

    def test_non_radical(self):
        ur = univ_r(system("(z1 - 1)^3", "z2 - z1"), V)
        assert ur.f.degree == 1

    def test_empty(self):
        with pytest.raises(EmptyVarietyError):
            univ_r(system("z1", "z1 - 1"), V)

    def test_positive_dimension(self):
        with pytest.raises(NotZeroDimensionalError):
            univ_r(system("z1*z2"), V)

    def test_trial_sequence(self):
        assert trial_form(0, 3) == (1, 0, 0)
        assert trial_form(2, 3) == (1, 2, 4)

    def test_identity_mod_f(self):
        for seed in range(6):
            variables, polys = draw_system(seed, 2, "2", coeff_bound=9, scale=1)
            ur = univ_r(polys, variables)
            total = UniPoly([])
            for a, g in zip(ur.a, ur.g):
                total = total + g * a
            assert (total - UniPoly.x()) % ur.f == UniPoly([])
