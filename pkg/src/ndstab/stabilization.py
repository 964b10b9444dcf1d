"""Construction of a certified stable polynomial in a stabilizable ideal.

Each root of f is replaced by a Gaussian-rational approximation on the grid
eps*Z[i]; the product of the linear factors z_k - g_k(approx) gives an
approximately stable polynomial, which a correction term in t = sum a_k z_k
moves into the ideal. Stability is proved by the exact inequality L > N, where
L bounds the product from below on the polydisc and N bounds the correction
from above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .groebner import Ideal, groebner, normal_form
from .interval import ComplexBox, Sign, circle_enclosure, classify
from .poly import MultiPoly, UniPoly, cabs2, l1_norm
from .roots import isolate, refine
from .rur import UnivariateRepresentation
from .stabilizability import is_stabilizable


class NotStabilizableError(ValueError):
    pass


class CapExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class ApproxSpectrum:
    gammas: tuple  # exact complex approximations (re, im)
    var_index: tuple  # 0-based variable index k_i
    moduli: tuple  # exact |g_{k_i}(gamma_i)|^2
    eps: Fraction
    f_tilde: UniPoly
    boxes: tuple  # refined isolating boxes, reusable by a later pass


@dataclass(frozen=True)
class Certificate:
    lower_bound: Fraction
    correction_norm: Fraction
    eps: Fraction

    @property
    def ok(self) -> bool:
        return self.lower_bound > self.correction_norm


@dataclass(frozen=True)
class StabilityResult:
    s: MultiPoly
    cofactors: tuple
    s_tilde: MultiPoly
    h0: UniPoly
    correction: UniPoly
    certificate: Certificate
    spectrum: ApproxSpectrum
    ur: UnivariateRepresentation
    generators: tuple
    power: int = 1


def _snap(lo: Fraction, eps: Fraction) -> Fraction:
    return ceil(lo / eps) * eps


def _snap_point(box: ComplexBox, eps: Fraction) -> tuple:
    re = _snap(box.re.lo, eps)
    if box.im.lo > 0:
        im = _snap(box.im.lo, eps)
    elif box.im.hi < 0:
        im = -_snap(-box.im.hi, eps)
    else:
        im = Fraction(0)
    return (re, im)


def _is_lower(box: ComplexBox) -> bool:
    return box.im.hi < 0


def _mirror_index(boxes: list, i: int) -> int:
    target = boxes[i].conjugate()
    for j, b in enumerate(boxes):
        if j != i and not b.disjoint(target):
            return j
    raise ArithmeticError("conjugate box not found")


def approx_spectrum(
    ur: UnivariateRepresentation,
    boxes: Sequence[ComplexBox],
    eps: Fraction,
    min_eps: Fraction | None = None,
) -> ApproxSpectrum:
    """Approximate every root on the grid eps*Z[i] until some coordinate is certified outside.

    For the approximation gamma of a root, the square of half-width eps about
    gamma contains the root. The first variable whose circle polynomial is
    positive on that square is taken, provided |g_k(gamma)|^2 > 1 holds
    exactly; otherwise eps is halved.
    """
    f = ur.f
    eps = Fraction(eps)
    boxes = list(boxes)
    d = len(boxes)
    gammas: list = [None] * d
    ks: list = [None] * d
    mods: list = [None] * d
    for i in range(d):
        if _is_lower(boxes[i]):
            continue
        while True:
            if min_eps is not None and eps < min_eps:
                raise CapExceededError("not stabilizable or cap exceeded")
            boxes[i] = refine(f, boxes[i], eps / 4)
            gam = _snap_point(boxes[i], eps)
            sq = ComplexBox.square(gam, eps)
            hit = None
            for k, g in enumerate(ur.g):
                if classify(circle_enclosure(g, sq)) is Sign.POSITIVE:
                    M = cabs2(ur.g[k](gam))
                    if M > 1:
                        hit = (k, M)
                    break
            if hit is not None:
                gammas[i], (ks[i], mods[i]) = gam, hit
                break
            eps /= 2
    for i in range(d):
        if gammas[i] is None:
            j = _mirror_index(boxes, i)
            re, im = gammas[j]
            gammas[i], ks[i], mods[i] = (re, -im), ks[j], mods[j]
            boxes[i] = boxes[j].conjugate()
    return ApproxSpectrum(tuple(gammas), tuple(ks), tuple(mods), eps, _real_product(gammas), tuple(boxes))


def _pairs(gammas: Sequence) -> list:
    """Group approximations into real singletons and conjugate pairs (upper member kept)."""
    out = []
    for i, (re, im) in enumerate(gammas):
        if im == 0:
            out.append((i, False))
        elif im > 0:
            out.append((i, True))
    return out


def _real_product(gammas: Sequence) -> UniPoly:
    t = UniPoly.x()
    out = UniPoly([1])
    for i, pair in _pairs(gammas):
        re, im = gammas[i]
        if pair:
            out = out * UniPoly([re * re + im * im, -2 * re, 1])
        else:
            out = out * (t - re)
    return out


def _factor_uni(c: tuple, pair: bool) -> UniPoly:
    """(z - c) or (z - c)(z - conj c) as a polynomial in z."""
    re, im = c
    if pair:
        return UniPoly([re * re + im * im, -2 * re, 1], "z")
    return UniPoly([-re, 1], "z")


def compose_linear(c: UniPoly, a: Sequence, variables: Sequence[str]) -> MultiPoly:
    """c(sum a_k z_k) as a polynomial in the z variables."""
    variables = tuple(variables)
    lin = MultiPoly(variables, {})
    for ak, v in zip(a, variables):
        if ak:
            lin = lin + MultiPoly.var(v, variables) * ak
    return c(lin) if c.coeffs else lin * 0


def build_stable(ur: UnivariateRepresentation, spec: ApproxSpectrum):
    """Return (s_tilde, h0, s, correction).

    ``correction`` is h0*(f_tilde - f) reduced modulo f; both agree whenever
    the product has degree below deg f, and they always differ by a multiple of f.
    """
    variables = ur.variables
    s_tilde = MultiPoly.const(1, variables)
    s_t = UniPoly([1])
    for i, pair in _pairs(spec.gammas):
        k = spec.var_index[i]
        w = ur.g[k](spec.gammas[i])  # exact complex value g_k(gamma_i)
        fac = _factor_uni(w, pair)
        z = MultiPoly.var(variables[k], variables)
        s_tilde = s_tilde * fac(z)
        s_t = s_t * fac.compose(UniPoly(ur.g[k].coeffs))
    h0, rem = divmod(s_t, spec.f_tilde)
    if not rem.is_zero():
        raise ArithmeticError("approximate product not divisible by f_tilde")
    correction = (h0 * (spec.f_tilde - ur.f)) % ur.f
    s = s_tilde - compose_linear(correction, ur.a, variables)
    return s_tilde, h0, s, correction


def lower_bound_factor(M: Fraction) -> Fraction:
    """Rational lower bound on sqrt(M) - 1 for M > 1, via (M-1)/(1+U) with U = (M+1)/2 >= sqrt(M)."""
    return (M - 1) / (1 + (M + 1) / 2)


def certify_stable(ur: UnivariateRepresentation, spec: ApproxSpectrum, correction: UniPoly) -> Certificate:
    L = Fraction(1)
    for M in spec.moduli:
        L *= lower_bound_factor(M)
    N = l1_norm(compose_linear(correction, ur.a, ur.variables))
    return Certificate(L, N, spec.eps)


def stable_polynomial(
    polys: Sequence[MultiPoly],
    variables: Sequence[str] | None = None,
    initial_eps: Fraction | None = None,
    max_halvings: int = 64,
    max_power: int = 64,
) -> StabilityResult:
    """Certified stable s in the ideal, with cofactors over the input generators."""
    ideal = Ideal.of(polys, variables)
    verdict = is_stabilizable(ideal.generators, ideal.variables)
    if not verdict.stabilizable:
        raise NotStabilizableError("system not stabilizable")
    if verdict.ur is None:
        return _unit_result(ideal)
    ur = verdict.ur
    boxes = list(isolate(ur.f).boxes)
    eps = Fraction(initial_eps) if initial_eps is not None else min(b.width for b in boxes)
    if eps <= 0:
        raise ValueError("initial eps must be positive")
    min_eps = eps / 2 ** max_halvings
    while True:
        spec = approx_spectrum(ur, boxes, eps, min_eps)
        s_tilde, h0, s, correction = build_stable(ur, spec)
        cert = certify_stable(ur, spec, correction)
        if cert.ok:
            break
        boxes = list(spec.boxes)
        eps = spec.eps / 2
        if eps < min_eps:
            raise CapExceededError(
                f"certificate failed down to eps={spec.eps} (L={cert.lower_bound}, N={cert.correction_norm})"
            )
    gb = groebner(ideal, with_transform=True)
    power, member, cofactors = 1, s, None
    while power <= max_power:
        rem, cofactors = normal_form(member, gb)
        if rem.is_zero():
            break
        power += 1
        member = member * s
    else:
        raise ArithmeticError("no power of s found in the ideal")
    return StabilityResult(
        member, tuple(cofactors), s_tilde, h0, correction, cert, spec, ur, ideal.generators, power
    )


def _unit_result(ideal: Ideal) -> StabilityResult:
    """Empty variety: 1 lies in the ideal and is trivially stable."""
    gb = groebner(ideal, with_transform=True)
    one = MultiPoly.const(1, ideal.variables)
    _, cof = normal_form(one, gb)
    cert = Certificate(Fraction(1), Fraction(0), Fraction(0))
    empty = ApproxSpectrum((), (), (), Fraction(0), UniPoly([1]), ())
    return StabilityResult(one, tuple(cof), one, UniPoly([1]), UniPoly([]), cert, empty, None, ideal.generators)
