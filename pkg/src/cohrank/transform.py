"""Numerical shadow of the Fourier-Mukai transform.

The rank functions near a point are recovered from the Hilbert
polynomials of the transformed sheaves by coefficient reversal
(:func:`invert_neg`, :func:`invert_pos`).  The ideal of a point and the
evaluation bundle are related by a Moebius change of variable
(:func:`mobius_ideal_to_evalbundle`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DegreeOverflow, DegreeTooHigh, LeadingMismatch
from .exact import AlgReal, Poly, algreal_compare, as_rat, isolate_real_roots, mobius
from .rank import DERIVED, UNKNOWN, PiecewisePoly, RankFamily


def _check_degree(q: Poly, g: int):
    if g < 1:
        raise ValueError("g must be positive")
    if q.degree > g:
        raise DegreeTooHigh(f"deg {q} = {q.degree} exceeds g = {g}")


def invert_neg(q: Poly, g: int, chi) -> Poly:
    """``P(x) = (-x)^g Q(-1/x) / chi``, computed by reversing coefficients."""
    _check_degree(q, g)
    chi = as_rat(chi)
    c = q.padded(g + 1)
    out = [None] * (g + 1)
    for j in range(g + 1):
        sign = -1 if (g + j) % 2 else 1
        out[g - j] = sign * c[j] / chi
    return Poly(out)


def invert_pos(q: Poly, g: int, chi) -> Poly:
    """``P(x) = x^g Q(1/x) / chi``."""
    _check_degree(q, g)
    chi = as_rat(chi)
    c = q.padded(g + 1)
    return Poly(c[g - k] / chi for k in range(g + 1))


@dataclass(frozen=True)
class TransformGerm:
    """Hilbert polynomials of the transforms feeding the left and right germs at a point.

    ``minus[i]`` produces the left germ of ``h^i``, ``plus[i]`` the right
    one.  Missing degrees are zero.
    """

    g: int
    chi_l: int
    minus: Mapping[int, Poly] = field(default_factory=dict)
    plus: Mapping[int, Poly] = field(default_factory=dict)

    def __post_init__(self):
        for side in (self.minus, self.plus):
            for i, q in side.items():
                if not 0 <= i <= self.g:
                    raise ValueError(f"degree {i} outside 0..{self.g}")
                _check_degree(q, self.g)

    def q_minus(self, i: int) -> Poly:
        return self.minus.get(i, Poly())

    def q_plus(self, i: int) -> Poly:
        return self.plus.get(i, Poly())


def germ_from_transform(tg: TransformGerm, name: str = "germ", eps=None) -> RankFamily:
    """Family with one left and one right segment per degree around 0.

    Only the germs are meaningful, so the segments are kept on a window
    ``(-eps, eps)`` and everything outside is unknown.  ``eps`` defaults to
    the largest power of 1/2 (at most 1) below every nonzero root of the
    germ polynomials, so no germ changes sign inside the window.
    """
    g = tg.g
    germs = {}
    for i in range(g + 1):
        qm, qp = tg.q_minus(i), tg.q_plus(i)
        if qm.coeff(g) != qp.coeff(g):
            raise LeadingMismatch(
                f"h^{i}: degree-{g} coefficients {qm.coeff(g)} and {qp.coeff(g)} differ"
            )
        germs[i] = (invert_neg(qm, g, tg.chi_l), invert_pos(qp, g, tg.chi_l))
    if eps is None:
        eps = _germ_window([p for pair in germs.values() for p in pair])
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    funcs = {
        i: PiecewisePoly([-eps, 0, eps], [UNKNOWN, left, right, UNKNOWN], [None, DERIVED, DERIVED, None])
        for i, (left, right) in germs.items()
    }
    return RankFamily(g, tg.chi_l, funcs, complete=False, name=name)


def _germ_window(polys) -> Fraction:
    eps = Fraction(1)
    for p in polys:
        if not p:
            continue
        for r, _ in isolate_real_roots(p):
            if algreal_compare(r, 0) == 0:
                continue
            r = r if algreal_compare(r, 0) > 0 else -r
            while algreal_compare(r, eps) <= 0:
                eps /= 2
    return eps


def double_inversion_identity_check(q: Poly, g: int, chi) -> bool:
    """Applying each inversion twice multiplies by ``(-1)^g / chi^2`` resp. ``1 / chi^2``."""
    chi = as_rat(chi)
    nn = invert_neg(invert_neg(q, g, chi), g, chi)
    pp = invert_pos(invert_pos(q, g, chi), g, chi)
    return nn == q * ((-1) ** g / chi**2) and pp == q / chi**2


def mobius_segment(p: Poly, g: int, chi_n) -> Poly:
    """``chi_n (1+x)^g P(x/(1+x))`` as a polynomial; needs ``deg P <= g``."""
    if p.degree > g:
        raise DegreeOverflow(f"segment {p} has degree {p.degree} > g = {g}; the image is not a polynomial")
    x, one_x = Poly.x(), Poly([1, 1])
    out = Poly()
    for k, c in enumerate(p.coeffs):
        if c:
            out = out + c * x**k * one_x ** (g - k)
    return out * as_rat(chi_n)


def mobius_piecewise(f: PiecewisePoly, g: int, chi_n) -> PiecewisePoly:
    """Push ``f`` on ``(-inf, 1)`` through ``y = x/(1+x)``; the image lives on ``x > -1``.

    Breakpoints ``b < 1`` go to ``b/(1-b)``; breakpoints at or beyond 1
    have no image.  Left of ``x = -1`` the result is unknown.
    """
    bps, segs, srcs = [AlgReal.rational(-1)], [UNKNOWN], [None]
    for k, b in enumerate(f.breakpoints):
        if algreal_compare(b, 1) >= 0:
            break
        seg = f.segments[k]
        segs.append(UNKNOWN if seg is UNKNOWN else mobius_segment(seg, g, chi_n))
        srcs.append(DERIVED)
        bps.append(mobius(b, 1, 0, -1, 1))
    else:
        k = len(f.breakpoints)
    seg = f.segments[k]
    segs.append(UNKNOWN if seg is UNKNOWN else mobius_segment(seg, g, chi_n))
    srcs.append(DERIVED)
    return PiecewisePoly(bps, segs, srcs)


def mobius_ideal_to_evalbundle(fam_ip: RankFamily, chi_n: int, name: str | None = None) -> RankFamily:
    """Evaluation-bundle family from the ideal-of-a-point family.

    ``h^i_M(x) = chi_n (1+x)^g h^i_I(x/(1+x))`` for ``x > -1`` and
    ``i = 0, 1``.  Higher degrees are left unknown.
    """
    g = fam_ip.g
    funcs = {i: mobius_piecewise(fam_ip.h(i), g, chi_n) for i in (0, 1)}
    for i in range(2, g + 1):
        funcs[i] = PiecewisePoly.unknown()
    return RankFamily(g, chi_n, funcs, complete=False, name=name or f"evaluation bundle of {fam_ip.name}")
