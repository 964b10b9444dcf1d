"""Decide whether a zero-dimensional variety avoids the closed unit polydisc."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .interval import ComplexBox, Sign, circle_enclosure, classify, uni_box_eval
from .poly import MultiPoly, UniPoly, resultant
from .roots import count_circle_roots, isolate, refine
from .rur import EmptyVarietyError, UnivariateRepresentation, univ_r


@dataclass(frozen=True)
class Witness:
    """Enclosure of a solution lying in the closed polydisc."""

    t_box: ComplexBox
    coordinates: tuple  # one ComplexBox per variable
    on_circle: tuple  # True where |z_k| = 1 could not be excluded (and is certified by l_k)


@dataclass(frozen=True)
class StabilizabilityVerdict:
    stabilizable: bool
    witnesses: tuple
    circle_counts: tuple
    ur: UnivariateRepresentation | None
    note: str = ""
    boxes: tuple = field(default=(), repr=False)
    eps: Fraction | None = None


def elimination_poly(ur: UnivariateRepresentation, k: int) -> UniPoly:
    """Resultant of f(t) and z - g_k(t) with respect to t, as a polynomial in z."""
    ctx = ("t", "z")
    f = ur.f.to_multi(("t",)).extend(ctx)
    zk = MultiPoly.var("z", ctx) - ur.g[k].to_multi(("t",)).extend(ctx)
    return resultant(f, zk, "t").to_uni("z")


def circle_count(ur: UnivariateRepresentation, k: int) -> int:
    """Number of points of the variety with |z_k| = 1."""
    return count_circle_roots(elimination_poly(ur, k))


def is_stabilizable(polys: Sequence[MultiPoly], variables: Sequence[str] | None = None) -> StabilizabilityVerdict:
    try:
        ur = univ_r(polys, variables)
    except EmptyVarietyError:
        n = len(variables) if variables is not None else len({v for p in polys for v in p.vars})
        return StabilizabilityVerdict(True, (), (0,) * n, None, note="empty variety")
    f = ur.f
    n = len(ur.variables)
    d = f.degree
    boxes = list(isolate(f).boxes)
    eps = min(b.width for b in boxes)
    live = list(range(d))
    counts = []
    on_circle = [[False] * n for _ in range(d)]
    for k in range(n):
        lk = circle_count(ur, k)
        counts.append(lk)
        g = ur.g[k]
        signs = [classify(circle_enclosure(g, b)) for b in boxes]
        while sum(s is Sign.CONTAINS_ZERO for s in signs) > lk:
            eps /= 2
            # a strict sign persists on sub-boxes, so only undecided boxes are refined
            for i, s in enumerate(signs):
                if s is Sign.CONTAINS_ZERO:
                    boxes[i] = refine(f, boxes[i], eps)
                    signs[i] = classify(circle_enclosure(g, boxes[i]))
        for i, s in enumerate(signs):
            if s is Sign.CONTAINS_ZERO:
                on_circle[i][k] = True
        live = [i for i in live if signs[i] is not Sign.POSITIVE]
        if not live:
            return StabilizabilityVerdict(True, (), tuple(counts), ur, boxes=tuple(boxes), eps=eps)
    witnesses = tuple(
        Witness(
            boxes[i],
            tuple(uni_box_eval(g, boxes[i]) for g in ur.g),
            tuple(on_circle[i]),
        )
        for i in live
    )
    return StabilizabilityVerdict(False, witnesses, tuple(counts), ur, boxes=tuple(boxes), eps=eps)
