"""Buchberger's algorithm (degrevlex, sugar strategy, Gebauer-Moeller criteria).

Optionally every basis element carries its expression over the input
generators, so membership tests yield cofactors over the original ideal.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, grevlex_key, merge_vars


class NotZeroDimensionalError(ValueError):
    def __init__(self, msg: str = "ideal not zero-dimensional"):
        super().__init__(msg)


@dataclass(frozen=True)
class Ideal:
    generators: tuple
    variables: tuple

    @classmethod
    def of(cls, polys: Sequence[MultiPoly], variables: Sequence[str] | None = None) -> "Ideal":
        polys = list(polys)
        if variables is None:
            variables = merge_vars(*(p.vars for p in polys))
        variables = tuple(variables)
        gens = tuple(p.extend(variables) for p in polys)
        if not any(g for g in gens):
            raise ValueError("ideal needs at least one nonzero generator")
        return cls(gens, variables)


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple
    variables: tuple
    generators: tuple
    transform: tuple | None = None
    order: str = "grevlex"

    @property
    def leading_monomials(self) -> list:
        return [max(g.terms, key=grevlex_key) for g in self.basis]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()


# -- internal sparse helpers ---------------------------------------------------

def _hkey(e: tuple):
    # min-heap key whose minimum is the grevlex-largest monomial
    return (-sum(e), e[::-1])


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_mul(target: dict, f: Fraction, shift: tuple, src: dict, heap: list | None = None) -> None:
    """``target -= f * x^shift * src`` in place."""
    for e, c in src.items():
        k = tuple(x + y for x, y in zip(e, shift))
        old = target.get(k)
        if old is None:
            target[k] = -f * c
            if heap is not None:
                heapq.heappush(heap, (_hkey(k), k))
        else:
            v = old - f * c
            if v:
                target[k] = v
            else:
                del target[k]


@dataclass
class _Elem:
    terms: dict
    lm: tuple
    sugar: int
    cof: list | None = None


def _make_elem(terms: dict, sugar: int, cof: list | None) -> _Elem | None:
    if not terms:
        return None
    lm = max(terms, key=grevlex_key)
    lc = terms[lm]
    if lc != 1:
        inv = 1 / lc
        terms = {e: c * inv for e, c in terms.items()}
        if cof is not None:
            cof = [{e: c * inv for e, c in q.items()} for q in cof]
    return _Elem(terms, lm, sugar, cof)


def _reduce(terms: dict, basis: list, cof: list | None, full: bool = True, quot: dict | None = None):
    """Divide ``terms`` by ``basis``; returns the remainder (cofactors updated in place)."""
    p = dict(terms)
    heap = [(_hkey(e), e) for e in p]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.get(e)
        if c is None:
            continue
        for idx, g in enumerate(basis):
            if _divides(g.lm, e):
                shift = tuple(x - y for x, y in zip(e, g.lm))
                _sub_mul(p, c, shift, g.terms, heap)
                if cof is not None and g.cof is not None:
                    for qi, gi in zip(cof, g.cof):
                        _sub_mul(qi, c, shift, gi)
                if quot is not None:
                    q = quot.setdefault(idx, {})
                    q[shift] = q.get(shift, 0) + c
                break
        else:
            rem[e] = c
            del p[e]
            if not full:
                rem.update(p)
                return rem
    return rem


def _spoly(a: _Elem, b: _Elem, track: bool):
    lcm = _lcm(a.lm, b.lm)
    sa = tuple(x - y for x, y in zip(lcm, a.lm))
    sb = tuple(x - y for x, y in zip(lcm, b.lm))
    terms: dict = {}
    _sub_mul(terms, Fraction(-1), sa, a.terms)
    _sub_mul(terms, Fraction(1), sb, b.terms)
    cof = None
    if track:
        cof = [dict() for _ in a.cof]
        for qi, ai in zip(cof, a.cof):
            _sub_mul(qi, Fraction(-1), sa, ai)
        for qi, bi in zip(cof, b.cof):
            _sub_mul(qi, Fraction(1), sb, bi)
    sugar = max(a.sugar + sum(sa), b.sugar + sum(sb))
    return terms, cof, sugar


def _update(polys: list, active: list, pairs: list, h: int) -> list:
    """Gebauer-Moeller installation of ``polys[h]``; returns the new active list."""
    lh = polys[h].lm
    cand = [(h, g, _lcm(lh, polys[g].lm)) for g in active]
    kept = []
    for i, (_, g1, l1) in enumerate(cand):
        coprime = all(x == 0 or y == 0 for x, y in zip(lh, polys[g1].lm))
        if coprime:
            kept.append((g1, l1, True))
            continue
        dominated = any(_divides(l2, l1) for (_, g2, l2) in cand[i + 1:]) or any(
            _divides(l2, l1) for (g2, l2, _) in kept
        )
        if not dominated:
            kept.append((g1, l1, False))
    new_pairs = []
    for (i, j, l, s) in pairs:
        if _divides(lh, l) and _lcm(polys[i].lm, lh) != l and _lcm(polys[j].lm, lh) != l:
            continue
        new_pairs.append((i, j, l, s))
    for g1, l1, coprime in kept:
        if not coprime:
            sugar = max(
                polys[h].sugar + sum(l1) - sum(lh), polys[g1].sugar + sum(l1) - sum(polys[g1].lm)
            )
            new_pairs.append((g1, h, l1, sugar))
    pairs[:] = new_pairs
    return [g for g in active if not _divides(lh, polys[g].lm)] + [h]


def groebner(ideal: Ideal, with_transform: bool = True) -> GroebnerBasis:
    """Reduced degrevlex basis of ``ideal``, optionally with its cofactor transform."""
    ctx = ideal.variables
    gens = ideal.generators
    r = len(gens)
    n = len(ctx)
    zero = (0,) * n
    polys: list = []
    active: list = []
    pairs: list = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        cof = None
        if with_transform:
            cof = [dict() for _ in range(r)]
            cof[i][zero] = Fraction(1)
        terms = _reduce(g.terms, [polys[k] for k in active], cof)
        el = _make_elem(terms, g.total_degree(), cof)
        if el is None:
            continue
        polys.append(el)
        active = _update(polys, active, pairs, len(polys) - 1)
    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][3], grevlex_key(pairs[k][2])))
        i, j, _, _ = pairs.pop(best)
        terms, cof, sugar = _spoly(polys[i], polys[j], with_transform)
        terms = _reduce(terms, [polys[k] for k in active], cof)
        el = _make_elem(terms, sugar, cof)
        if el is None:
            continue
        polys.append(el)
        active = _update(polys, active, pairs, len(polys) - 1)
        if not any(el.lm):
            active = [len(polys) - 1]
            pairs.clear()
            break
    basis = [polys[k] for k in active]
    basis.sort(key=lambda el: grevlex_key(el.lm))
    reduced = []
    for idx, el in enumerate(basis):
        others = [b for k, b in enumerate(basis) if k != idx]
        cof = [dict(q) for q in el.cof] if with_transform else None
        head = {el.lm: el.terms[el.lm]}
        tail = {e: c for e, c in el.terms.items() if e != el.lm}
        tail = _reduce(tail, others, cof)
        head.update(tail)
        reduced.append(_make_elem(head, el.sugar, cof))
    out_basis = tuple(MultiPoly._raw(ctx, el.terms) for el in reduced)
    transform = None
    if with_transform:
        transform = tuple(tuple(MultiPoly._raw(ctx, q) for q in el.cof) for el in reduced)
    return GroebnerBasis(out_basis, ctx, gens, transform)


def _elems(gb: GroebnerBasis) -> list:
    out = []
    for k, g in enumerate(gb.basis):
        lm = max(g.terms, key=grevlex_key)
        cof = [dict(q.terms) for q in gb.transform[k]] if gb.transform is not None else None
        out.append(_Elem(g.terms, lm, 0, cof))
    return out


def normal_form(p: MultiPoly, gb: GroebnerBasis):
    """Remainder of ``p`` modulo ``gb`` and cofactors over the original generators.

    ``p == sum(u_i * gen_i) + remainder``; cofactors are ``None`` when the basis
    was computed without its transform.
    """
    p = p.extend(merge_vars(p.vars, gb.variables)).extend(gb.variables)
    ctx = gb.variables
    basis = _elems(gb)
    quot: dict = {}
    rem = _reduce(p.terms, basis, None, quot=quot)
    remainder = MultiPoly._raw(ctx, rem)
    if gb.transform is None:
        return remainder, None
    r = len(gb.generators)
    cof = [MultiPoly(ctx, {}) for _ in range(r)]
    for idx, q in quot.items():
        qp = MultiPoly._raw(ctx, {e: c for e, c in q.items() if c})
        for i in range(r):
            t = gb.transform[idx][i]
            if t:
                cof[i] = cof[i] + qp * t
    return remainder, cof


def reduce_terms(terms: dict, gb: GroebnerBasis) -> dict:
    return _reduce(terms, _elems(gb), None)


def standard_monomials(gb: GroebnerBasis) -> list | None:
    """Monomials irreducible modulo the leading terms, or ``None`` if infinitely many."""
    n = len(gb.variables)
    if gb.is_unit():
        return []
    lms = gb.leading_monomials
    for k in range(n):
        if not any(m[k] > 0 and sum(m) == m[k] for m in lms):
            return None
    zero = (0,) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for k in range(n):
                e = tuple(x + (1 if j == k else 0) for j, x in enumerate(m))
                if e in seen or any(_divides(l, e) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return sorted(seen, key=grevlex_key)


def quotient_dimension(gb: GroebnerBasis):
    mons = standard_monomials(gb)
    return "infinite" if mons is None else len(mons)
