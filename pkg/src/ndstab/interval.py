"""Exact rational interval arithmetic and complex boxes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2
from typing import Mapping, Sequence

from .poly import MultiPoly, bit_size


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "RatInterval":
        return cls(x, x)

    @staticmethod
    def _lift(x) -> "RatInterval":
        return x if isinstance(x, RatInterval) else RatInterval(x, x)

    def __add__(self, other):
        o = self._lift(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatInterval):
            c = Fraction(other)
            a, b = self.lo * c, self.hi * c
            return RatInterval(min(a, b), max(a, b))
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(p), max(p))

    __rmul__ = __mul__

    def sqr(self) -> "RatInterval":
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.lo <= 0 <= self.hi:
            return RatInterval(0, max(a, b))
        return RatInterval(min(a, b), max(a, b))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def __contains__(self, x) -> bool:
        if isinstance(x, RatInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def intersect(self, other: "RatInterval") -> "RatInterval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return RatInterval(lo, hi) if lo <= hi else None

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def interval_ops(a: RatInterval, b: RatInterval, op: str) -> RatInterval:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class ComplexBox:
    """Axes-parallel box in the complex plane, treated as closed."""

    re: RatInterval
    im: RatInterval

    @classmethod
    def from_bounds(cls, re_lo, re_hi, im_lo, im_hi) -> "ComplexBox":
        return cls(RatInterval(re_lo, re_hi), RatInterval(im_lo, im_hi))

    @classmethod
    def square(cls, center, half_width) -> "ComplexBox":
        x, y = center
        h = Fraction(half_width)
        return cls(RatInterval(x - h, x + h), RatInterval(y - h, y + h))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def magnitude(self) -> Fraction:
        return max(self.re.mag, self.im.mag)

    @property
    def midpoint(self) -> tuple:
        return (self.re.mid, self.im.mid)

    def contains_point(self, z) -> bool:
        return z[0] in self.re and z[1] in self.im

    def __contains__(self, other) -> bool:
        if isinstance(other, ComplexBox):
            return other.re in self.re and other.im in self.im
        return self.contains_point(other)

    def intersect(self, other: "ComplexBox") -> "ComplexBox | None":
        r = self.re.intersect(other.re)
        i = self.im.intersect(other.im)
        if r is None or i is None:
            return None
        return ComplexBox(r, i)

    def disjoint(self, other: "ComplexBox") -> bool:
        return (
            self.re.hi < other.re.lo
            or other.re.hi < self.re.lo
            or self.im.hi < other.im.lo
            or other.im.hi < self.im.lo
        )

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def abs2(self) -> RatInterval:
        return self.re.sqr() + self.im.sqr()

    def __str__(self):
        return f"{self.re} x {self.im}"


class Sign(enum.Enum):
    CONTAINS_ZERO = "contains_zero"
    POSITIVE = "strictly_positive"
    NEGATIVE = "strictly_negative"


def classify(i: RatInterval) -> Sign:
    if i.lo > 0:
        return Sign.POSITIVE
    if i.hi < 0:
        return Sign.NEGATIVE
    return Sign.CONTAINS_ZERO


def interval_eval(p: MultiPoly, env: Mapping[str, RatInterval]) -> RatInterval:
    """Nested Horner evaluation of ``p`` over the intervals in ``env``."""
    used = p.used_vars()
    for v in used:
        if v not in env:
            raise KeyError(f"no interval given for {v}")
    if not used:
        return RatInterval.point(p.constant_value())
    q = p.extend(used)
    return _horner(q.terms, used, 0, [env[v] for v in used])


def _horner(terms: dict, names: tuple, depth: int, ivs: list) -> RatInterval:
    if depth == len(names):
        (c,) = terms.values()
        return RatInterval.point(c)
    buckets: dict = {}
    for e, c in terms.items():
        buckets.setdefault(e[depth], {})[e] = c
    x = ivs[depth]
    acc = None
    for k in range(max(buckets), -1, -1):
        b = buckets.get(k)
        coeff = _horner(b, names, depth + 1, ivs) if b else None
        if acc is None:
            acc = coeff
        else:
            acc = acc * x
            if coeff is not None:
                acc = acc + coeff
    return acc


def box_eval(p: MultiPoly, box: ComplexBox, names: tuple = ("x1", "x2")) -> RatInterval:
    """Enclosure of the real bivariate ``p`` over ``box`` (first name = real axis)."""
    return interval_eval(p, {names[0]: box.re, names[1]: box.im})


def lemma_width_bound(p: MultiPoly, box: ComplexBox) -> Fraction:
    """A priori ceiling ``2**(tau + d*sigma + 1) * d**3 * w(B)`` on the enclosure width."""
    d = max(p.total_degree(), 1)
    tau = p.height_bits()
    mag = box.magnitude
    sigma = max(0, ceil(log2(mag))) if mag > 0 else 0
    return Fraction(2) ** (tau + d * sigma + 1) * d ** 3 * box.width


# -- complex interval arithmetic ----------------------------------------------

def _cmul_box(a: ComplexBox, b: ComplexBox) -> ComplexBox:
    return ComplexBox(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


def complex_box_eval(p: MultiPoly, boxes: Sequence[ComplexBox]) -> ComplexBox:
    """Rectangular complex-interval enclosure of ``p`` over a product of boxes."""
    if len(boxes) != len(p.vars):
        raise ValueError("one box per variable required")
    zero = RatInterval.point(0)
    total = ComplexBox(zero, zero)
    powers = [[ComplexBox(RatInterval.point(1), zero)] for _ in boxes]
    for e, c in p.terms.items():
        val = ComplexBox(RatInterval.point(c), zero)
        for i, k in enumerate(e):
            pw = powers[i]
            while len(pw) <= k:
                pw.append(_cmul_box(pw[-1], boxes[i]))
            if k:
                val = _cmul_box(val, pw[k])
        total = ComplexBox(total.re + val.re, total.im + val.im)
    return total


def uni_box_eval(g, box: ComplexBox) -> ComplexBox:
    """Complex Horner enclosure of a univariate polynomial over a box."""
    zero = RatInterval.point(0)
    acc = ComplexBox(zero, zero)
    for c in reversed(g.coeffs):
        acc = _cmul_box(acc, box)
        acc = ComplexBox(acc.re + c, acc.im)
    return acc


# -- fixed-point enclosure of |g|^2 - 1 ---------------------------------------

def _fx(q: Fraction, P: int) -> tuple:
    lo = (q.numerator << P) // q.denominator
    hi = -((-q.numerator << P) // q.denominator)
    return lo, hi


def _fx_mul(a: tuple, b: tuple, P: int) -> tuple:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p) >> P, -((-max(p)) >> P)


def _fx_sqr(a: tuple, P: int) -> tuple:
    lo, hi = a
    sq = (lo * lo, hi * hi)
    m = 0 if lo <= 0 <= hi else min(sq)
    return m >> P, -((-max(sq)) >> P)


def _working_bits(box: ComplexBox, degree: int) -> int:
    w = box.width
    if w > 0:
        k = max(0, -(w.numerator.bit_length() - w.denominator.bit_length()) + 1)
    else:
        ends = (box.re.lo, box.re.hi, box.im.lo, box.im.hi)
        k = max(e.denominator.bit_length() for e in ends)
    mag = box.magnitude
    sigma = max(0, mag.numerator.bit_length() - mag.denominator.bit_length() + 1)
    return k + 64 + degree * sigma


def circle_enclosure(g, box: ComplexBox) -> RatInterval:
    """Enclosure of |g(z)|^2 - 1 over the box, by complex-interval Horner.

    Endpoints are kept as integers scaled by 2^P and rounded outward, so the
    result is a rigorous (slightly wider) enclosure computed without rationals.
    """
    cs = g.coeffs
    if not cs:
        return RatInterval(-1, -1)
    P = _working_bits(box, len(cs))
    x, y = _fx(box.re.lo, P)[0], _fx(box.re.hi, P)[1]
    u, v = _fx(box.im.lo, P)[0], _fx(box.im.hi, P)[1]
    zr, zi = (x, y), (u, v)
    ar, ai = _fx(cs[-1], P), (0, 0)
    for c in reversed(cs[:-1]):
        rr = _fx_mul(ar, zr, P)
        ii = _fx_mul(ai, zi, P)
        ri = _fx_mul(ar, zi, P)
        ir = _fx_mul(ai, zr, P)
        cl, ch = _fx(c, P)
        ar = (rr[0] - ii[1] + cl, rr[1] - ii[0] + ch)
        ai = (ri[0] + ir[0], ri[1] + ir[1])
    s1, s2 = _fx_sqr(ar, P), _fx_sqr(ai, P)
    one = 1 << P
    return RatInterval(Fraction(s1[0] + s2[0] - one, one), Fraction(s1[1] + s2[1] - one, one))


__all__ = [
    "circle_enclosure",
    "RatInterval",
    "ComplexBox",
    "Sign",
    "classify",
    "interval_ops",
    "interval_eval",
    "box_eval",
    "complex_box_eval",
    "uni_box_eval",
    "lemma_width_bound",
    "bit_size",
]
