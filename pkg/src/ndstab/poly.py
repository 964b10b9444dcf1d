"""Exact polynomial arithmetic over the rationals.

Two representations are used throughout the package:

* :class:`MultiPoly` -- sparse multivariate polynomials, a map from exponent
  tuples to nonzero :class:`~fractions.Fraction` coefficients over an ordered
  variable context.
* :class:`UniPoly` -- dense univariate polynomials, coefficient tuples stored
  from the constant term upwards.

Exact complex numbers are plain ``(re, im)`` pairs of Fractions.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Complex = tuple  # (Fraction, Fraction)

_VAR_RE = re.compile(r"([A-Za-z_]+)(\d*)$")


def var_key(name: str):
    """Sort key putting ``z2`` before ``z10`` and ``t`` before ``x1``."""
    m = _VAR_RE.match(name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


def merge_vars(*contexts: Sequence[str]) -> tuple:
    names = set()
    for c in contexts:
        names.update(c)
    return tuple(sorted(names, key=var_key))


def grevlex_key(exp: tuple):
    """Graded reverse lexicographic key; the first variable is the largest."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def bit_size(q: Scalar) -> int:
    q = Fraction(q)
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


# -- exact complex helpers ---------------------------------------------------

def cadd(a: Complex, b: Complex) -> Complex:
    return (a[0] + b[0], a[1] + b[1])


def csub(a: Complex, b: Complex) -> Complex:
    return (a[0] - b[0], a[1] - b[1])


def cmul(a: Complex, b: Complex) -> Complex:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cabs2(a: Complex) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def as_complex(x) -> Complex:
    if isinstance(x, tuple):
        return (Fraction(x[0]), Fraction(x[1]))
    return (Fraction(x), Fraction(0))


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Scalar] | None = None):
        self.vars = tuple(variables)
        clean = {}
        n = len(self.vars)
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                if c:
                    clean[tuple(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    # -- constructors --
    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables else (name,)
        i = variables.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {e: 1})

    @classmethod
    def const(cls, c: Scalar, variables: Sequence[str] = ()) -> "MultiPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        return obj

    # -- context handling --
    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if variables == self.vars:
            return self
        missing = set(self.vars) - set(variables)
        if missing:
            # allowed only if those variables do not occur
            used = self.used_vars()
            if missing & set(used):
                raise ValueError(f"cannot drop variables {sorted(missing & set(used))}")
        pos = [self.vars.index(v) if v in self.vars else None for v in variables]
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(e[p] if p is not None else 0 for p in pos)] = c
        return MultiPoly._raw(variables, terms)

    def used_vars(self) -> tuple:
        used = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    used.add(v)
        return tuple(v for v in self.vars if v in used)

    def _coerce(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        if other.vars == self.vars:
            return self, other
        ctx = merge_vars(self.vars, other.vars)
        return self.extend(ctx), other.extend(ctx)

    # -- arithmetic --
    def __add__(self, other):
        a, b = self._coerce(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if not c:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        a, b = self._coerce(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(a.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return div_exact(self, other)
        c = Fraction(other)
        return MultiPoly._raw(self.vars, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other, self.vars)
            except (TypeError, ValueError):
                return NotImplemented
        ctx = merge_vars(self.vars, other.vars)
        return self.extend(ctx).terms == other.extend(ctx).terms

    def __hash__(self):
        return hash(frozenset(self.extend(self.used_vars()).terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .textform import format_poly
        return f"MultiPoly({format_poly(self)!r})"

    def __str__(self):
        from .textform import format_poly
        return format_poly(self)

    # -- queries --
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def coefficients_in(self, var: str) -> list:
        """Coefficients of ``self`` viewed in ``var``, lowest degree first.

        The coefficients live in the context with ``var`` removed.
        """
        if var not in self.vars:
            return [self] if self.terms else []
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        deg = self.degree(var)
        buckets = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MultiPoly._raw(rest, b) for b in buckets]

    def height_bits(self) -> int:
        return max((bit_size(c) for c in self.terms.values()), default=0)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def to_uni(self, var: str | None = None) -> "UniPoly":
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "t")
        elif set(used) - {var}:
            raise ValueError(f"not univariate in {var}: {used}")
        if var not in self.vars:
            return UniPoly([self.constant_value()], var)
        i = self.vars.index(var)
        deg = self.degree(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UniPoly(coeffs, var)


def from_coeffs_in(coeffs: Sequence[MultiPoly], var: str, variables: Sequence[str]) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.coefficients_in`."""
    variables = tuple(variables)
    i = variables.index(var)
    rest = variables[:i] + variables[i + 1:]
    terms = {}
    for k, c in enumerate(coeffs):
        c = c.extend(rest)
        for e, v in c.terms.items():
            terms[e[:i] + (k,) + e[i:]] = v
    return MultiPoly._raw(variables, terms)


def div_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient ``p / q``; raises ``ArithmeticError`` if ``q`` does not divide ``p``."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p, q = p._coerce(q)
    qe, qc = q.leading_term()
    rem = dict(p.terms)
    quot = {}
    while rem:
        e = max(rem, key=grevlex_key)
        c = rem[e]
        d = tuple(x - y for x, y in zip(e, qe))
        if any(x < 0 for x in d):
            raise ArithmeticError("inexact polynomial division")
        f = c / qc
        quot[d] = f
        for e2, c2 in q.terms.items():
            k = tuple(x + y for x, y in zip(d, e2))
            v = rem.get(k, 0) - f * c2
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return MultiPoly._raw(p.vars, quot)


def arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def evaluate(p: MultiPoly, point: Sequence) -> Complex:
    """Exact evaluation at a point of Gaussian rationals (or plain rationals)."""
    if len(point) != len(p.vars):
        raise ValueError("point length must match the variable count")
    pt = [as_complex(x) for x in point]
    powers = [[(Fraction(1), Fraction(0))] for _ in pt]
    total = (Fraction(0), Fraction(0))
    for e, c in p.terms.items():
        val = (c, Fraction(0))
        for i, k in enumerate(e):
            pw = powers[i]
            while len(pw) <= k:
                pw.append(cmul(pw[-1], pt[i]))
            if k:
                val = cmul(val, pw[k])
        total = cadd(total, val)
    return total


def substitute(p: MultiPoly, var: str, q: MultiPoly) -> MultiPoly:
    """Replace ``var`` in ``p`` by ``q``."""
    coeffs = p.coefficients_in(var)
    rest = tuple(v for v in p.vars if v != var)
    ctx = merge_vars(rest, q.vars)
    q = q.extend(ctx)
    result = MultiPoly(ctx, {})
    for c in reversed(coeffs):
        result = result * q + c.extend(ctx)
    return result


def l1_norm(p: MultiPoly | "UniPoly") -> Fraction:
    if isinstance(p, UniPoly):
        return sum((abs(c) for c in p.coeffs), Fraction(0))
    return sum((abs(c) for c in p.terms.values()), Fraction(0))


# -- univariate polynomials ----------------------------------------------------

class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``var**k``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar], var: str = "t"):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], var: str = "t") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-Fraction(r), 1], var)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({str(self)!r})"

    def __str__(self):
        from .textform import format_poly
        return format_poly(self.to_multi())

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([x * c for x in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lc()
        if len(rem) - 1 < dq:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot, self.var), UniPoly(rem[:dq], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation at a rational, a Gaussian-rational pair, or a polynomial."""
        if isinstance(x, tuple):
            acc = (Fraction(0), Fraction(0))
            z = as_complex(x)
            for c in reversed(self.coeffs):
                acc = cmul(acc, z)
                acc = (acc[0] + c, acc[1])
            return acc
        if isinstance(x, (UniPoly, MultiPoly)):
            acc = x * 0
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def content(self) -> Fraction:
        """Positive rational content; ``self / content`` is a primitive integer polynomial."""
        if not self.coeffs:
            return Fraction(0)
        num = reduce(gcd, (c.numerator for c in self.coeffs))
        den = reduce(lcm, (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> "UniPoly":
        if not self.coeffs:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return UniPoly([x / c for x in self.coeffs], self.var)

    def integer_coeffs(self) -> list:
        return [int(c) for c in self.primitive().coeffs]

    def compose(self, q: "UniPoly") -> "UniPoly":
        acc = UniPoly([], q.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def shift(self, a: Scalar) -> "UniPoly":
        """``p(x + a)`` by repeated synthetic division."""
        cs = list(self.coeffs)
        n = len(cs)
        a = Fraction(a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return UniPoly(cs, self.var)

    def scale(self, s: Scalar) -> "UniPoly":
        """``p(s * x)``."""
        s = Fraction(s)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= s
        return UniPoly(out, self.var)

    def reverse(self) -> "UniPoly":
        return UniPoly(list(reversed(self.coeffs)), self.var)

    def to_multi(self, variables: Sequence[str] | None = None) -> MultiPoly:
        variables = tuple(variables) if variables else (self.var,)
        i = variables.index(self.var)
        n = len(variables)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                terms[tuple(k if j == i else 0 for j in range(n))] = c
        return MultiPoly._raw(variables, terms)

    def height_bits(self) -> int:
        return max((bit_size(c) for c in self.coeffs), default=0)


def gcd_univariate(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd, computed by a primitive remainder sequence."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        # pseudo-remainder then strip content
        r = _prem(a, b)
        a, b = b, r.primitive()
    return a.monic()


def _prem(a: UniPoly, b: UniPoly) -> UniPoly:
    d = a.degree - b.degree
    if d < 0:
        return a
    return divmod(a * (b.lc() ** (d + 1)), b)[1]


def squarefree_decomposition(p: UniPoly) -> list:
    """Yun's algorithm: ``p = lc * prod(q_j ** m_j)`` with monic squarefree coprime ``q_j``."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    df = f.derivative()
    a = gcd_univariate(f, df)
    b = f // a
    c = df // a
    out = []
    k = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = gcd_univariate(b, d) if not d.is_zero() else b.monic()
        if g.degree > 0:
            out.append((g, k))
        b = b // g
        c = d // g
        k += 1
    out.sort(key=lambda qm: (qm[1], qm[0].degree, qm[0].coeffs))
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return UniPoly([1], p.var)
    g = gcd_univariate(p, p.derivative())
    return (p // g).monic()


def complex_split(g: UniPoly, names: tuple = ("x1", "x2")) -> tuple:
    """Real and imaginary parts of ``g(x1 + i*x2)`` as real bivariate polynomials."""
    ctx = names
    x1 = MultiPoly.var(names[0], ctx)
    x2 = MultiPoly.var(names[1], ctx)
    re_acc = MultiPoly(ctx, {})
    im_acc = MultiPoly(ctx, {})
    for c in reversed(g.coeffs):
        re_acc, im_acc = re_acc * x1 - im_acc * x2 + c, re_acc * x2 + im_acc * x1
    return re_acc, im_acc


def circle_distance_poly(g: UniPoly, names: tuple = ("x1", "x2")) -> MultiPoly:
    """``Re(g)**2 + Im(g)**2 - 1``: its sign tells whether ``|g(x1+i x2)|`` exceeds one."""
    re_p, im_p = complex_split(g, names)
    return re_p * re_p + im_p * im_p - 1


# -- resultants ------------------------------------------------------------

def _lc(cs: list) -> MultiPoly:
    return cs[-1]


def _strip(cs: list) -> list:
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _prem_multi(a: list, b: list) -> list:
    """Pseudo-remainder of coefficient lists over a polynomial ring."""
    da, db = len(a) - 1, len(b) - 1
    lcb = b[-1]
    r = list(a)
    delta = da - db + 1
    for _ in range(da - db + 1):
        if len(r) - 1 < db:
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lcb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] = r[shift + j] - lr * bc
        delta -= 1
        r = _strip(r)
    if delta and r:
        f = lcb ** delta
        r = [c * f for c in r]
    return _strip(r)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant eliminating ``var``, by the subresultant remainder sequence."""
    ctx = merge_vars(p.vars, q.vars, (var,))
    p, q = p.extend(ctx), q.extend(ctx)
    rest = tuple(v for v in ctx if v != var)
    if p.is_zero() or q.is_zero():
        return MultiPoly(rest, {})
    m, n = p.degree(var), q.degree(var)
    if m <= 0 and n <= 0:
        raise ValueError("no elimination variable")
    A = p.coefficients_in(var)
    B = q.coefficients_in(var)
    if n == 0:
        return B[0] ** m
    if m == 0:
        return A[0] ** n
    sign = 1
    if m < n:
        A, B = B, A
        m, n = n, m
        if (m * n) % 2:
            sign = -1
    one = MultiPoly.const(1, rest)
    g = one
    h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        R = _prem_multi(A, B)
        A = B
        if not R:
            return MultiPoly(rest, {})
        divisor = g * h ** delta
        B = [div_exact(c, divisor) for c in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = div_exact(g ** delta, h ** (delta - 1))
        if len(B) - 1 == 0:
            break
    da = len(A) - 1
    lb = B[-1]
    if da == 0:
        res = h
    elif da == 1:
        res = lb
    else:
        res = div_exact(lb ** da, h ** (da - 1))
    return res * sign
