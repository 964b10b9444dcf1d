"""Independent oracles (sympy, mpmath) and corpus generators shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import sympy as sp

from ndstab import MultiPoly, UniPoly
from ndstab.cli import random_system, _degrees


def to_sympy(p: MultiPoly, syms):
    by_name = {str(s): s for s in syms}
    out = sp.Integer(0)
    for e, c in p.terms.items():
        mono = sp.Integer(1)
        for v, k in zip(p.vars, e):
            if k:
                mono *= by_name[v] ** k
        out += sp.Rational(c.numerator, c.denominator) * mono
    return out


def uni_to_sympy(u: UniPoly, x):
    return sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(u.coeffs))


def mp_eval_uni(u: UniPoly, z):
    acc = mpmath.mpc(0)
    for c in reversed(u.coeffs):
        acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
    return acc


def mp_eval_multi(p: MultiPoly, point):
    total = mpmath.mpc(0)
    for e, c in p.terms.items():
        term = mpmath.mpf(c.numerator) / c.denominator
        for z, k in zip(point, e):
            if k:
                term *= z**k
        total += term
    return total


def oracle_solutions(polys, variables, dps: int = 100):
    """All solutions via a lex Groebner basis in shape position and mpmath roots.

    Returns None when the basis is not in shape position, so callers can skip.
    """
    syms = sp.symbols(list(variables))
    G = sp.groebner([to_sympy(p, syms) for p in polys], *syms, order="lex")
    exprs = list(G.exprs)
    n = len(syms)
    last = syms[-1]
    if len(exprs) != n:
        return None
    lin = []
    for k, g in enumerate(exprs[:-1]):
        P = sp.Poly(g, syms[k])
        if P.degree() != 1 or not g.free_symbols <= {syms[k], last}:
            return None
        c1, c0 = P.all_coeffs()
        lin.append((sp.Poly(c1, last), sp.Poly(c0, last)))
    h = sp.Poly(exprs[-1], last)
    if sp.degree(sp.gcd(h, h.diff(last)), last) > 0:
        return None
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(sp.fraction(c)[0])) / int(sp.fraction(c)[1]) for c in h.all_coeffs()]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps) if len(coeffs) > 1 else []
        sols = []
        for r in roots:
            pt = []
            for c1, c0 in lin:
                a = _mp_poly(c1, r)
                b = _mp_poly(c0, r)
                pt.append(-b / a)
            pt.append(mpmath.mpc(r))
            sols.append(pt)
    return sols


def _mp_poly(P, x):
    acc = mpmath.mpc(0)
    for c in P.all_coeffs():
        num, den = sp.fraction(c)
        acc = acc * x + mpmath.mpf(int(num)) / int(den)
    return acc


def oracle_verdict(sols):
    """(stabilizable, margin) from numeric solutions."""
    if not sols:
        return True, mpmath.inf
    margin = min(abs(max(abs(z) for z in pt) - 1) for pt in sols)
    inside = any(max(abs(z) for z in pt) <= 1 for pt in sols)
    return not inside, margin


def draw_system(seed: int, nvars: int, degree: str, coeff_bound: int = 100, scale=10):
    """A random zero-dimensional system of full degree, resampled deterministically."""
    from ndstab import Ideal, groebner, quotient_dimension

    degrees = _degrees(degree, nvars)
    attempt = 0
    while True:
        rng = random.Random(seed * 7919 + attempt)
        variables, polys = random_system(rng, nvars, degrees, coeff_bound, Fraction(scale))
        if all(p.total_degree() == d for p, d in zip(polys, degrees)):
            dim = quotient_dimension(groebner(Ideal.of(polys, variables), with_transform=False))
            if dim != "infinite" and dim > 0:
                return variables, polys
        attempt += 1


def random_uni(rng: random.Random, degree: int, bound: int = 20) -> UniPoly:
    while True:
        cs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
        if cs[-1]:
            return UniPoly(cs, "z")


def numeric_circle_count(r: UniPoly) -> int:
    """Roots within 1e-30 of the circle, each confirmed as a root of gcd(q, reversed q).

    A root on the circle of a real polynomial is also a root of its reversal,
    so this gcd (computed by sympy) must vanish there.
    """
    x = sp.Symbol("z")
    total = 0
    for q, m in sp.sqf_list(uni_to_sympy(r, x))[1]:
        P = sp.Poly(q, x)
        if P.degree() < 1:
            continue
        G = sp.Poly(sp.gcd(P.as_expr(), sp.expand(x ** P.degree() * P.as_expr().subs(x, 1 / x))), x)
        with mpmath.workdps(120):
            roots = mpmath.polyroots([mpmath.mpf(int(c.p)) / int(c.q) for c in P.all_coeffs()], maxsteps=500, extraprec=600)
            near = [z for z in roots if abs(abs(z) - 1) < mpmath.mpf(10) ** -30]
            gc = [mpmath.mpf(int(c.p)) / int(c.q) for c in G.all_coeffs()]
            for z in near:
                assert G.degree() > 0 and abs(mpmath.polyval(gc, z)) < mpmath.mpf(10) ** -60
        total += m * len(near)
    return total
