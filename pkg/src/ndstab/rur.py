"""Univariate representation of a zero-dimensional variety.

The quotient algebra Q[z]/I is handled through its normal-set basis and the
multiplication matrices of the coordinates. A separating form t = sum a_k z_k
is searched over a fixed trial sequence; its minimal polynomial is found by
Krylov elimination on 1, t, t^2, ... and each coordinate is expressed as a
polynomial in t by an exact linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import (
    GroebnerBasis,
    Ideal,
    NotZeroDimensionalError,
    groebner,
    reduce_terms,
    standard_monomials,
)
from .poly import MultiPoly, UniPoly, squarefree_part


class EmptyVarietyError(ValueError):
    def __init__(self, msg: str = "empty variety"):
        super().__init__(msg)


@dataclass(frozen=True)
class UnivariateRepresentation:
    a: tuple
    f: UniPoly
    g: tuple
    variables: tuple

    @property
    def degree(self) -> int:
        return self.f.degree

    def linear_form(self) -> MultiPoly:
        out = MultiPoly(self.variables, {})
        for ak, v in zip(self.a, self.variables):
            if ak:
                out = out + MultiPoly.var(v, self.variables) * ak
        return out


class QuotientAlgebra:
    """Q[z]/I for a zero-dimensional ideal given by a reduced Groebner basis."""

    def __init__(self, gb: GroebnerBasis):
        mons = standard_monomials(gb)
        if mons is None:
            raise NotZeroDimensionalError()
        self.gb = gb
        self.basis = mons
        self.index = {m: i for i, m in enumerate(mons)}
        self.dim = len(mons)
        self._mult: dict = {}

    def vector(self, terms: dict) -> list:
        """Coordinates of the normal form of a term dictionary."""
        rem = terms if all(e in self.index for e in terms) else reduce_terms(terms, self.gb)
        v = [Fraction(0)] * self.dim
        for e, c in rem.items():
            v[self.index[e]] = c
        return v

    def unit(self) -> list:
        v = [Fraction(0)] * self.dim
        v[self.index[(0,) * len(self.gb.variables)]] = Fraction(1)
        return v

    def mult_columns(self, k: int) -> list:
        """Columns of multiplication by the k-th variable."""
        cols = self._mult.get(k)
        if cols is None:
            cols = []
            for m in self.basis:
                e = tuple(x + (1 if j == k else 0) for j, x in enumerate(m))
                cols.append(self.vector({e: Fraction(1)}))
            self._mult[k] = cols
        return cols

    def form_columns(self, a: Sequence) -> list:
        cols = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for k, ak in enumerate(a):
            if not ak:
                continue
            for j, col in enumerate(self.mult_columns(k)):
                cj = cols[j]
                for i, x in enumerate(col):
                    if x:
                        cj[i] += ak * x
        return cols


def _apply(cols: list, v: list) -> list:
    out = [Fraction(0)] * len(v)
    for j, vj in enumerate(v):
        if vj:
            for i, x in enumerate(cols[j]):
                if x:
                    out[i] += vj * x
    return out


class _Krylov:
    """Incremental echelon form of the Krylov vectors v, Mv, M^2 v, ..."""

    def __init__(self, cols: list, v0: list):
        self.rows: list = []  # (pivot, vector, combination of Krylov powers)
        self.minpoly = None
        n = len(v0)
        v = v0
        for j in range(n + 1):
            comb = [Fraction(0)] * (n + 1)
            comb[j] = Fraction(1)
            w = list(v)
            self._eliminate(w, comb, -1)
            piv = next((i for i, x in enumerate(w) if x), None)
            if piv is None:
                self.minpoly = UniPoly(comb[: j + 1])
                return
            self.rows.append((piv, w, comb))
            v = _apply(cols, v)
        raise ArithmeticError("Krylov sequence did not terminate")

    def _eliminate(self, w: list, comb: list, sign: int) -> None:
        for piv, row, rc in self.rows:
            x = w[piv]
            if x:
                f = x / row[piv]
                for i, r in enumerate(row):
                    if r:
                        w[i] -= f * r
                for i, r in enumerate(rc):
                    if r:
                        comb[i] += sign * f * r

    def express(self, u: list) -> UniPoly:
        """Polynomial p with p(M) v0 = u, of degree below the Krylov length."""
        w = list(u)
        comb = [Fraction(0)] * (len(u) + 1)
        self._eliminate(w, comb, 1)
        if any(w):
            raise ArithmeticError("vector outside the Krylov space")
        return UniPoly(comb)


def _gb(ideal: Ideal) -> GroebnerBasis:
    return groebner(ideal, with_transform=False)


def _coordinate_minpolys(alg: QuotientAlgebra) -> list:
    return [_Krylov(alg.mult_columns(k), alg.unit()).minpoly for k in range(len(alg.gb.variables))]


def _radical(ideal: Ideal):
    """Return (ideal, gb, algebra) for the radical, recomputing the basis only when needed."""
    gb = _gb(ideal)
    if gb.is_unit():
        raise EmptyVarietyError()
    alg = QuotientAlgebra(gb)
    extra = []
    for k, e in enumerate(_coordinate_minpolys(alg)):
        sq = squarefree_part(e)
        if sq.degree < e.degree:
            extra.append(_rename(sq, ideal.variables[k], ideal.variables))
    if not extra:
        return ideal, gb, alg
    rad = Ideal(ideal.generators + tuple(extra), ideal.variables)
    gb = _gb(rad)
    return rad, gb, QuotientAlgebra(gb)


def _rename(u: UniPoly, var: str, variables: Sequence[str]) -> MultiPoly:
    n = len(variables)
    k = list(variables).index(var)
    terms = {}
    for d, c in enumerate(u.coeffs):
        if c:
            terms[tuple(d if j == k else 0 for j in range(n))] = Fraction(c)
    return MultiPoly(variables, terms)


def radicalize(ideal: Ideal) -> Ideal:
    """Add the squarefree parts of the coordinate eliminants (Seidenberg's lemma)."""
    gb = _gb(ideal)
    if gb.is_unit():
        return ideal
    alg = QuotientAlgebra(gb)
    extra = tuple(
        _rename(squarefree_part(e), v, ideal.variables)
        for v, e in zip(ideal.variables, _coordinate_minpolys(alg))
    )
    return Ideal(ideal.generators + extra, ideal.variables)


def trial_form(j: int, n: int) -> tuple:
    return tuple(Fraction(j) ** k for k in range(n))


def univ_r(polys: Sequence[MultiPoly], variables: Sequence[str] | None = None) -> UnivariateRepresentation:
    """Univariate representation (a, f, g) of the variety of ``polys``.

    Raises ``NotZeroDimensionalError`` for positive-dimensional input and
    ``EmptyVarietyError`` when the system has no complex solution.
    """
    ideal = Ideal.of(polys, variables)
    _, gb, alg = _radical(ideal)
    n = len(ideal.variables)
    D = alg.dim
    bound = n * D * (D - 1) // 2 + 1
    for j in range(bound):
        a = trial_form(j, n)
        kry = _Krylov(alg.form_columns(a), alg.unit())
        if kry.minpoly.degree != D:
            continue
        g = []
        for k in range(n):
            col0 = alg.mult_columns(k)[alg.index[(0,) * n]]
            g.append(kry.express(col0))
        return UnivariateRepresentation(a, kry.minpoly, tuple(g), ideal.variables)
    raise RuntimeError("separating form search exceeded its bound")
