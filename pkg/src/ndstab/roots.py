"""Certified complex root isolation for squarefree rational polynomials.

Roots are approximated numerically (Aberth iteration in mpmath) and then
certified exactly: with Weierstrass corrections ``W_i`` of the approximations
``z_i``, every root lies in a disc ``|z - z_i| <= d*|W_i|`` and a connected
cluster of ``m`` discs holds exactly ``m`` roots.  Discs are enclosed in
rational squares; pairwise disjoint squares therefore isolate one root each.
All certification arithmetic is on integers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, isqrt, log2

import mpmath
import numpy as np

from .interval import ComplexBox, RatInterval
from .poly import UniPoly, gcd_univariate, squarefree_decomposition

log = logging.getLogger(__name__)

MAX_PREC = 1 << 15


class IsolationError(ValueError):
    pass


@dataclass(frozen=True)
class IsolationResult:
    boxes: tuple
    polynomial: UniPoly

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    @property
    def min_width(self) -> Fraction:
        return min(b.width for b in self.boxes)


# -- numeric approximation -----------------------------------------------------

def _float_seeds(coeffs: tuple) -> list:
    d = len(coeffs) - 1
    top = max(abs(c).bit_length() for c in coeffs)
    shift = max(0, top - 60)
    fc = np.array([float(c >> shift) if c >= 0 else -float((-c) >> shift) for c in reversed(coeffs)])
    seeds = None
    if fc[0] != 0 and np.all(np.isfinite(fc)):
        with np.errstate(all="ignore"):
            try:
                r = np.roots(fc)
                if len(r) == d and np.all(np.isfinite(r)):
                    seeds = [complex(z) for z in r]
            except np.linalg.LinAlgError:
                seeds = None
    if seeds is None:
        # points on a circle of Cauchy-bound radius
        lead = abs(coeffs[-1])
        rad = 1 + max(abs(c) for c in coeffs[:-1]) / lead if d else 1.0
        seeds = [rad * complex(np.cos(2 * np.pi * k / d + 0.4), np.sin(2 * np.pi * k / d + 0.4)) for k in range(d)]
    # separate exact duplicates so the iteration is well defined
    out = []
    for z in seeds:
        while any(abs(z - w) < 1e-12 * max(1.0, abs(w)) for w in out):
            z = z * (1 + 1e-7) + 1e-9j
        out.append(z)
    return out


def _aberth(coeffs: tuple, prec: int, seeds: list, maxiter: int = 400) -> list:
    d = len(coeffs) - 1
    with mpmath.workprec(prec + 32):
        cs = [mpmath.mpf(c) for c in coeffs]
        dcs = [k * cs[k] for k in range(1, d + 1)]
        z = [mpmath.mpc(s) for s in seeds]
        tol = mpmath.mpf(2) ** (-(prec + 8))
        for _ in range(maxiter):
            worst = mpmath.mpf(0)
            for i in range(d):
                zi = z[i]
                p = cs[d]
                for c in reversed(cs[:d]):
                    p = p * zi + c
                if p == 0:
                    continue
                dp = dcs[d - 1]
                for c in reversed(dcs[: d - 1]):
                    dp = dp * zi + c
                s = mpmath.mpc(0)
                for j in range(d):
                    if j != i:
                        diff = zi - z[j]
                        if diff == 0:
                            diff = tol
                        s += 1 / diff
                if dp == 0:
                    w = tol * (1 + 1j)
                else:
                    ratio = p / dp
                    den = 1 - ratio * s
                    w = ratio / den if den != 0 else ratio
                z[i] = zi - w
                rel = abs(w) / max(1, abs(zi))
                if rel > worst:
                    worst = rel
            if worst < tol:
                break
        return list(z)


def _symmetrize(z: list, prec: int) -> list | None:
    """Force exact conjugate symmetry on approximations of a real polynomial."""
    tol = mpmath.mpf(2) ** (-(prec // 2))
    real, upper, lower = [], [], []
    for w in z:
        if abs(w.imag) <= tol * max(1, abs(w)):
            real.append(mpmath.mpc(w.real, 0))
        elif w.imag > 0:
            upper.append(w)
        else:
            lower.append(w)
    if len(upper) != len(lower):
        return None
    out = list(real)
    remaining = list(lower)
    for w in upper:
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - mpmath.conj(w)))
        remaining.pop(j)
        out.append(w)
        out.append(mpmath.conj(w))
    return out


def _to_grid(z: list, k: int) -> list:
    scale = mpmath.mpf(2) ** k
    out = []
    for w in z:
        x = int(mpmath.nint(w.real * scale))
        y = int(mpmath.nint(w.imag * scale))
        out.append((x, y))
    return out


# -- exact certification -------------------------------------------------------

def _certify(coeffs: tuple, centers: list, k: int) -> list | None:
    """Integer Smith-disc certificate; returns ``(X, Y, r)`` grid triples or None."""
    d = len(coeffs) - 1
    S = 1 << k
    ad = coeffs[-1]
    spow = [1]
    for _ in range(d):
        spow.append(spow[-1] * S)
    out = []
    for i, (X, Y) in enumerate(centers):
        # 2^{kd} f(z_i) by scaled Horner over Gaussian integers
        fr, fi = ad, 0
        for j in range(d - 1, -1, -1):
            fr, fi = fr * X - fi * Y + coeffs[j] * spow[d - j], fr * Y + fi * X
        num = d * d * (fr * fr + fi * fi)
        den = ad * ad
        for j, (Xj, Yj) in enumerate(centers):
            if j != i:
                dx, dy = X - Xj, Y - Yj
                q = dx * dx + dy * dy
                if q == 0:
                    return None
                den *= q
        r = isqrt(num // den) + 1
        out.append((X, Y, r))
    for i in range(d):
        Xi, Yi, ri = out[i]
        for j in range(i + 1, d):
            Xj, Yj, rj = out[j]
            if abs(Xi - Xj) <= ri + rj and abs(Yi - Yj) <= ri + rj:
                return None
    return out


@lru_cache(maxsize=512)
def _certified_roots(coeffs: tuple, prec: int) -> tuple:
    """Certified discs ``(X, Y, r, k)`` for the integer polynomial ``coeffs``.

    The returned precision ``k`` may exceed ``prec`` when the first attempt fails.
    """
    seeds = _seed_for(coeffs, prec)
    p = prec
    while p <= MAX_PREC:
        approx = _aberth(coeffs, p, seeds)
        with mpmath.workprec(p + 32):
            sym = _symmetrize(approx, p)
            centers = _to_grid(sym, p) if sym is not None else None
        if sym is not None:
            cert = _certify(coeffs, centers, p)
            if cert is not None:
                _SEEDS[coeffs] = (p, sym)
                return tuple((X, Y, r, p) for X, Y, r in cert)
        seeds = approx
        p *= 2
    raise IsolationError("root certification did not succeed within the precision cap")


_SEEDS: dict = {}


def _seed_for(coeffs: tuple, prec: int) -> list:
    best = _SEEDS.get(coeffs)
    if best is not None:
        return best[1]
    return _float_seeds(coeffs)


def _int_coeffs(f: UniPoly) -> tuple:
    return tuple(f.integer_coeffs())


def _box_of(X: int, Y: int, r: int, k: int) -> ComplexBox:
    S = Fraction(1, 1 << k)
    return ComplexBox(
        RatInterval((X - r) * S, (X + r) * S),
        RatInterval((Y - r) * S, (Y + r) * S),
    )


def _check_input(f: UniPoly) -> tuple:
    if f.is_zero() or f.degree < 1:
        raise IsolationError("no roots to isolate")
    coeffs = _int_coeffs(f)
    return coeffs


def _prec_for(eps: Fraction | None) -> int:
    if eps is None or eps <= 0:
        return 64
    return max(64, ceil(log2(1 / eps)) + 24) if eps < 1 else 64


def _order(boxes: list) -> tuple:
    return tuple(sorted(boxes, key=lambda b: (b.midpoint[0], b.midpoint[1])))


def _round_sym(q: Fraction) -> int:
    n = round(abs(q))
    return n if q >= 0 else -n


def _coarse_boxes(cert: tuple) -> list | None:
    d = len(cert)
    boxes = []
    for i, (X, Y, r, k) in enumerate(cert):
        S = Fraction(1, 1 << k)
        if d == 1:
            h = Fraction(1)
        else:
            sep = min(max(abs(X - Xj), abs(Y - Yj)) for j, (Xj, Yj, _, _) in enumerate(cert) if j != i)
            quarter = sep * S / 4
            e = int(log2(quarter.numerator) - log2(quarter.denominator)) + 1
            h = Fraction(2) ** e
            while h > quarter:
                h /= 2
        if r * S > h / 2:
            return None
        g = h / 4
        c = (_round_sym(X * S / g) * g, _round_sym(Y * S / g) * g)
        boxes.append(ComplexBox.square(c, h))
    for i in range(d):
        for j in range(i + 1, d):
            if not boxes[i].disjoint(boxes[j]):
                return None
    return boxes


def isolate(f: UniPoly, region: ComplexBox | None = None, eps: Fraction | None = None) -> IsolationResult:
    """Disjoint rational boxes, one per complex root of the squarefree ``f``.

    Without ``eps`` and ``region`` the boxes are as coarse as disjointness
    allows (dyadic half-widths).  With ``eps`` every box has width ``<= eps``;
    with ``region`` only roots inside it are returned.
    """
    coeffs = _check_input(f)
    if gcd_univariate(f, f.derivative()).degree > 0:
        raise IsolationError("polynomial is not squarefree")
    eps = Fraction(eps) if eps is not None else None
    prec = _prec_for(eps)
    while prec <= MAX_PREC:
        cert = _certified_roots(coeffs, prec)
        if eps is None and region is None:
            boxes = _coarse_boxes(cert)
            if boxes is not None:
                return IsolationResult(_order(boxes), f)
            prec *= 2
            continue
        boxes = [_box_of(*c) for c in cert]
        if eps is not None and any(b.width > eps for b in boxes):
            prec *= 2
            continue
        if region is not None:
            inside = [b for b in boxes if b in region]
            straddling = [b for b in boxes if b not in region and not b.disjoint(region)]
            if straddling:
                prec *= 2
                continue
            boxes = inside
        return IsolationResult(_order(boxes), f)
    raise IsolationError("isolation did not converge (root on the region boundary?)")


def refine(f: UniPoly, box: ComplexBox, eps: Fraction) -> ComplexBox:
    """Sub-box of ``box`` of width ``<= eps`` holding the same root."""
    coeffs = _check_input(f)
    eps = Fraction(eps)
    if box.width <= eps:
        return box
    prec = _prec_for(eps)
    while prec <= MAX_PREC:
        cert = _certified_roots(coeffs, prec)
        hits = [s for s in (_box_of(*c) for c in cert) if not s.disjoint(box)]
        if not hits:
            raise IsolationError("empty refinement")
        # a lone square meeting the box must hold the box's root
        if len(hits) == 1 and hits[0].width <= eps:
            return hits[0].intersect(box)
        prec *= 2
    raise IsolationError("refinement did not converge")


def root_approximations(f: UniPoly, digits: int = 30) -> list:
    """Certified centres as Python complex numbers (diagnostics and tests)."""
    cert = _certified_roots(_check_input(f), max(64, int(digits * 3.33) + 8))
    return [complex(float(Fraction(X, 1 << k)), float(Fraction(Y, 1 << k))) for X, Y, _, k in cert]


# -- real roots ----------------------------------------------------------------

def _sign_variations(cs) -> int:
    v, last = 0, 0
    for c in cs:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                v += 1
            last = s
    return v


def _descartes(p: UniPoly, a: Fraction, b: Fraction) -> int:
    q = p.shift(a).scale(b - a).reverse().shift(1)
    return _sign_variations(q.coeffs)


def _cauchy_power_of_two(p: UniPoly) -> Fraction:
    lc = abs(p.lc())
    bound = 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


def _positive_roots(p: UniPoly, bound: Fraction) -> list:
    out = []
    stack = [(Fraction(0), bound)]
    while stack:
        a, b = stack.pop()
        v = _descartes(p, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append(RatInterval(a, b))
            continue
        m = (a + b) / 2
        if p(m) == 0:
            out.append(RatInterval(m, m))
        stack.append((a, m))
        stack.append((m, b))
    return out


def real_root_isolation(g: UniPoly) -> list:
    """Disjoint rational intervals isolating the real roots of the squarefree ``g``.

    Roots found exactly at bisection points come back as degenerate intervals.
    """
    if g.is_zero():
        raise ValueError("zero polynomial")
    g = g.primitive()
    if g.degree < 1:
        return []
    out = []
    if g.coeffs[0] == 0:
        out.append(RatInterval(0, 0))
        g = g // UniPoly.x(g.var)
        if g.degree < 1:
            return out
    bound = _cauchy_power_of_two(g)
    out.extend(_positive_roots(g, bound))
    mirrored = g.scale(-1)
    out.extend(RatInterval(-iv.hi, -iv.lo) for iv in _positive_roots(mirrored, bound))
    out.sort(key=lambda iv: iv.lo)
    return out


# -- unit circle ---------------------------------------------------------------

def _cpoly_mul(a: tuple, b: tuple) -> tuple:
    ar, ai = a
    br, bi = b
    return (ar * br - ai * bi, ar * bi + ai * br)


def mobius_numerator(q: UniPoly) -> tuple:
    """Real and imaginary parts of ``(x+i)^n q((x-i)/(x+i))`` for real ``x``."""
    n = q.degree
    x = UniPoly.x("x")
    one = UniPoly([1], "x")
    zero = UniPoly([], "x")
    minus = (x, -one)  # x - i
    plus = (x, one)  # x + i
    pw_minus = [(one, zero)]
    pw_plus = [(one, zero)]
    for _ in range(n):
        pw_minus.append(_cpoly_mul(pw_minus[-1], minus))
        pw_plus.append(_cpoly_mul(pw_plus[-1], plus))
    re_p, im_p = zero, zero
    for k, c in enumerate(q.coeffs):
        if c:
            tr, ti = _cpoly_mul(pw_minus[k], pw_plus[n - k])
            re_p = re_p + tr * c
            im_p = im_p + ti * c
    return re_p, im_p


def _circle_roots_squarefree(q: UniPoly) -> int:
    re_p, im_p = mobius_numerator(q)
    if re_p.is_zero():
        g = im_p
    elif im_p.is_zero():
        g = re_p
    else:
        g = gcd_univariate(re_p, im_p)
    count = len(real_root_isolation(g)) if g.degree > 0 else 0
    # z = 1 is the image of x = infinity
    if q(Fraction(1)) == 0:
        count += 1
    return count


def count_circle_roots(r: UniPoly) -> int:
    """Roots of ``r`` on ``|z| = 1``, counted with multiplicity."""
    if r.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    total = 0
    for q, m in squarefree_decomposition(r):
        total += m * _circle_roots_squarefree(q)
    return total
