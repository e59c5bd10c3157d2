"""Closed-form rank-function models and the built-in catalog.

Each ``*Spec`` dataclass is a small, validated descriptor; ``.build()``
turns it into a :class:`~cohrank.rank.RankFamily`.  Segments taken
directly from a published closed form are tagged ``"stated"``; segments
this module works out (by duality, Euler bookkeeping or a direct-sum
decomposition) are tagged ``"derived"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Union

from .errors import BadParameters, NotRealRooted, SignViolation
from .exact import Poly, as_rat, isolate_real_roots, rational_between
from .rank import DERIVED, STATED, UNKNOWN, PiecewisePoly, RankFamily
from .transform import TransformGerm, invert_neg, invert_pos


def _principal(g: int, chi_l: int) -> Optional[tuple]:
    return (1,) * g if chi_l == 1 else None


def _check_g(g, low=1):
    if not isinstance(g, int) or isinstance(g, bool) or g < low:
        raise BadParameters(f"g must be an integer >= {low}, got {g!r}")


# line bundles

def build_line_bundle(P: Poly, g: int, chi_l: int, name: Optional[str] = None,
                      pol_type: Optional[tuple] = None) -> RankFamily:
    """Non-degenerate line bundle whose Euler polynomial is ``P``.

    With real roots ``l_1 > ... > l_k`` of multiplicities ``m_1 .. m_k``,
    on ``(l_{i+1}, l_i)`` only ``h^{a_i}`` is nonzero, equal to
    ``(-1)^{a_i} P`` where ``a_i = m_1 + ... + m_i``.
    """
    _check_g(g)
    if chi_l < 1:
        raise BadParameters("chi_l must be positive")
    if not P:
        raise BadParameters("the Euler polynomial of a line bundle is nonzero")
    if P.degree > g:
        raise BadParameters(f"deg P = {P.degree} exceeds g = {g}")
    roots = isolate_real_roots(P)
    if sum(m for _, m in roots) != P.degree:
        raise NotRealRooted(f"{P} has non-real roots")
    # intervals from the top down: (l_1, inf), (l_2, l_1), ..., (-inf, l_k)
    tops = [None] + [r for r, _ in roots]
    bottoms = [r for r, _ in roots] + [None]
    index = [0]
    for _, m in roots:
        index.append(index[-1] + m)
    for lo, hi, a in zip(bottoms, tops, index):
        q = rational_between(lo, hi)
        if (-1) ** a * P(q) <= 0:
            raise SignViolation(f"(-1)^{a} P is not positive at {q}")
    bps = [r for r, _ in reversed(roots)]
    n = len(bps)
    funcs = {}
    for j in range(g + 1):
        segs = []
        # segment s (ascending) is interval number n - s from the top
        for s in range(n + 1):
            a = index[n - s]
            segs.append((-1) ** a * P if a == j else Poly())
        funcs[j] = PiecewisePoly(bps, segs, [STATED] * (n + 1))
    return RankFamily(
        g, chi_l, funcs,
        pol_type=pol_type if pol_type is not None else _principal(g, chi_l),
        complete=True,
        name=name or f"line_bundle[{P}]",
        hilbert=P,
        notes={"index rule": ", ".join(f"{a}" for a in index)},
    )


def dual_line_bundle_poly(P: Poly, g: int) -> Poly:
    """Euler polynomial of the inverse bundle: ``(-1)^g P(-t)``."""
    return P.scale_arg(-1) * ((-1) ** g)


# GV-subschemes

def gv_euler_poly(g: int, d: int) -> Poly:
    return sum((Poly([-1, 1]) ** i * comb(g, i) for i in range(d + 1)), Poly())


def gv_T(g: int, d: int) -> Poly:
    """``T(y) = (-1)^(d+1) sum_{i=d+1}^g C(g,i) y^(i-d-1)``.

    The left germ of ``h^d`` at 1 is ``y^(d+1) T(y)`` with ``y = x - 1``,
    and ``T(0) != 0``.
    """
    sign = (-1) ** (d + 1)
    return Poly(sign * comb(g, i) for i in range(d + 1, g + 1))


def build_gv_subscheme(g: int, d: int, extend_negative: bool = False,
                       name: Optional[str] = None) -> RankFamily:
    """Structure sheaf of a non-degenerate GV-subscheme with ``h^i(O_X) = C(g, i)`` for ``i <= d``.

    ``h^0`` is ``0 | x^g | chi`` with breaks at 0 and 1, ``h^d`` is
    ``(-1)^d (chi - x^g)`` on ``(0, 1)`` and 0 beyond 1, everything else
    vanishes for ``x > 0``.  Left of 0 only ``h^0`` is known unless
    ``extend_negative`` is set, in which case ``h^d = (-1)^d chi`` and the
    rest vanish there too (worked out by duality, not a stated form).
    """
    _check_g(g, 2)
    if not isinstance(d, int) or not 1 <= d <= g - 1:
        raise BadParameters(f"need 1 <= d <= g - 1, got d = {d!r} with g = {g}")
    chi = gv_euler_poly(g, d)
    xg = Poly.monomial(g)
    sd = (-1) ** d
    neg_tag = DERIVED if extend_negative else None
    funcs = {0: PiecewisePoly([0, 1], [Poly(), xg, chi], [STATED] * 3)}
    for i in range(1, g + 1):
        left = (sd * chi if i == d else Poly()) if extend_negative else UNKNOWN
        if i == d:
            funcs[i] = PiecewisePoly([0, 1], [left, sd * (chi - xg), Poly()], [neg_tag, STATED, STATED])
        else:
            funcs[i] = PiecewisePoly([0], [left, Poly()], [neg_tag, STATED])
    return RankFamily(
        g, 1, funcs,
        pol_type=(1,) * g,
        complete=extend_negative,
        name=name or f"gv_subscheme_g{g}_d{d}",
        hilbert=chi,
        notes={
            "hodge numbers": tuple(comb(g, i) for i in range(d + 1)),
            "maximal critical point": 1,
            "T": gv_T(g, d),
        },
    )


def germs_to_transform(left: dict, right: dict, g: int, chi) -> TransformGerm:
    """Inverse of :func:`~cohrank.transform.germ_from_transform` on polynomial germs."""
    chi = as_rat(chi)
    sgn = (-1) ** g
    minus = {i: invert_neg(p, g, chi) * (sgn * chi**2) for i, p in left.items() if p}
    plus = {i: invert_pos(p, g, chi) * chi**2 for i, p in right.items() if p}
    return TransformGerm(g, int(chi), minus, plus)


def gv_subscheme_transform_germ(g: int, d: int) -> TransformGerm:
    """Transform data of a GV-subscheme at the point 1 (shifted to 0)."""
    fam = build_gv_subscheme(g, d)
    left, right = {}, {}
    for i in (0, d):
        lg, rg = fam.h(i).germs(1)
        left[i] = lg.compose_affine(1, 1)
        right[i] = rg.compose_affine(1, 1)
    return germs_to_transform(left, right, g, 1)


# examples with a critical point at 0

def build_product_be(g: int, name: Optional[str] = None) -> RankFamily:
    """``O_B(Theta_B)`` boxed with ``O_E`` on ``B x E``: only ``h^0`` is known."""
    _check_g(g, 2)
    chi = Poly.x() * Poly([1, 1]) ** (g - 1)
    funcs = {0: PiecewisePoly([0], [Poly(), chi], [STATED, STATED])}
    for i in range(1, g + 1):
        funcs[i] = PiecewisePoly.unknown()
    return RankFamily(
        g, 1, funcs,
        pol_type=(1,) * g,
        complete=False,
        jump_data={(0, 0): 1},
        name=name or f"product_be_g{g}",
        hilbert=chi,
        notes={"declared euler polynomial": chi},
    )


def build_abel_jacobi(g: int, name: Optional[str] = None) -> RankFamily:
    """Pushforward of ``O_C((g-1)p)`` from an Abel-Jacobi curve."""
    _check_g(g, 2)
    gx = Poly([0, g])
    funcs = {
        0: PiecewisePoly([0], [Poly(), gx], [STATED, STATED]),
        1: PiecewisePoly([0], [-gx, Poly()], [DERIVED, DERIVED]),
    }
    return RankFamily(g, 1, funcs, pol_type=(1,) * g, complete=True,
                      name=name or f"abel_jacobi_g{g}", hilbert=gx)


def build_theta_sum(g: int, name: Optional[str] = None) -> RankFamily:
    """``O_A + O_Theta(Theta)`` on a principally polarized abelian variety."""
    _check_g(g, 2)
    one_x = Poly([1, 1]) ** g
    xg = Poly.monomial(g)
    negx = Poly.monomial(g, (-1) ** g)
    low = (one_x - xg) * ((-1) ** (g - 1))
    funcs = {0: PiecewisePoly([-1], [Poly(), one_x], [STATED, STATED])}
    for i in range(1, g - 1):
        funcs[i] = PiecewisePoly.constant(Poly(), DERIVED)
    funcs[g - 1] = PiecewisePoly([-1, 0], [low, negx, Poly()], [DERIVED, STATED, DERIVED])
    funcs[g] = PiecewisePoly([-1, 0], [negx, negx, Poly()], [DERIVED, STATED, DERIVED])
    return RankFamily(g, 1, funcs, pol_type=(1,) * g, complete=True,
                      name=name or f"theta_sum_g{g}", hilbert=one_x)


# descriptors

@dataclass(frozen=True)
class LineBundleSpec:
    P: Poly
    g: int
    chi_l: int
    label: Optional[str] = field(default=None, compare=False)
    kind = "line_bundle"

    @property
    def name(self) -> str:
        return self.label or f"line_bundle_g{self.g}_chi{self.chi_l}[{self.P}]"

    def build(self) -> RankFamily:
        return build_line_bundle(self.P, self.g, self.chi_l, name=self.name)


@dataclass(frozen=True)
class GvSubschemeSpec:
    g: int
    d: int
    label: Optional[str] = field(default=None, compare=False)
    kind = "gv_subscheme"

    @property
    def name(self) -> str:
        return self.label or f"gv_subscheme_g{self.g}_d{self.d}"

    def build(self) -> RankFamily:
        return build_gv_subscheme(self.g, self.d, name=self.name)


@dataclass(frozen=True)
class ProductBESpec:
    g: int
    label: Optional[str] = field(default=None, compare=False)
    kind = "product_be"

    @property
    def name(self) -> str:
        return self.label or f"product_be_g{self.g}"

    def build(self) -> RankFamily:
        return build_product_be(self.g, name=self.name)


@dataclass(frozen=True)
class AbelJacobiSpec:
    g: int
    label: Optional[str] = field(default=None, compare=False)
    kind = "abel_jacobi"

    @property
    def name(self) -> str:
        return self.label or f"abel_jacobi_g{self.g}"

    def build(self) -> RankFamily:
        return build_abel_jacobi(self.g, name=self.name)


@dataclass(frozen=True)
class ThetaSumSpec:
    g: int
    label: Optional[str] = field(default=None, compare=False)
    kind = "theta_sum"

    @property
    def name(self) -> str:
        return self.label or f"theta_sum_g{self.g}"

    def build(self) -> RankFamily:
        return build_theta_sum(self.g, name=self.name)


@dataclass(frozen=True)
class GermSpec:
    tg: TransformGerm
    label: Optional[str] = field(default=None, compare=False)
    kind = "germ"

    @property
    def name(self) -> str:
        return self.label or f"germ_g{self.tg.g}"

    @property
    def g(self) -> int:
        return self.tg.g

    def build(self) -> RankFamily:
        from .transform import germ_from_transform
        return germ_from_transform(self.tg, name=self.name)


ModelSpec = Union[LineBundleSpec, GvSubschemeSpec, ProductBESpec, AbelJacobiSpec, ThetaSumSpec, GermSpec]


def catalog() -> list:
    """The built-in models, in a fixed order."""
    specs = [
        LineBundleSpec(Poly([-2, 0, 1]), 2, 1, label="line_bundle_x2_minus_2"),
        LineBundleSpec(Poly([0, 1]), 1, 1, label="line_bundle_elliptic"),
        LineBundleSpec(Poly.from_roots([1, 1, -3]), 3, 1, label="line_bundle_double_root"),
    ]
    specs += [GvSubschemeSpec(g, d) for g, d in [(3, 1), (4, 2), (5, 2), (6, 3)]]
    specs += [ProductBESpec(g) for g in (2, 3, 4)]
    specs += [AbelJacobiSpec(g) for g in (2, 3, 5)]
    specs += [ThetaSumSpec(g) for g in (2, 3, 4)]
    specs.append(GermSpec(gv_subscheme_transform_germ(4, 2), label="germ_gv_subscheme_g4_d2"))
    return specs


def catalog_by_name() -> dict:
    return {s.name: s for s in catalog()}


def synthetic_ideal_point_h1(beta_l, h: int = 1) -> PiecewisePoly:
    """A linear stand-in for ``h^1`` of the ideal of a point, in the variable of ``h * l``.

    Equal to ``1 - h y / beta_l`` on ``[0, beta_l / h]``, zero after and
    unknown below 0.  Its support ends at ``beta_l / h``.
    """
    beta_l = as_rat(beta_l)
    if not 0 < beta_l <= 1:
        raise BadParameters("need 0 < beta_l <= 1")
    end = beta_l / h
    return PiecewisePoly([0, end], [UNKNOWN, Poly([1, -h / beta_l]), Poly()], [None, DERIVED, DERIVED])
