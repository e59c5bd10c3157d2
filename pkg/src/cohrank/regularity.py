"""Generic-vanishing classification, thresholds and the beta / s invariants."""

from __future__ import annotations

import enum
import math
from functools import total_ordering
from typing import Iterable, Union

from .errors import (
    BetaBoundViolation,
    DegenerateDenominator,
    InvalidBeta,
    UnboundedSupport,
    UnknownRegion,
)
from .exact import AlgReal, algreal_compare, as_rat, is_root, mobius, to_algreal
from .rank import (
    SMOOTH,
    UNKNOWN,
    PiecewisePoly,
    RankFamily,
    Report,
    critical_points,
    fmt_point,
    smoothness_index,
)
from .transform import mobius_piecewise


class RegularityClass(enum.Enum):
    IT0 = "IT0"
    MRegular = "MRegular"
    GV = "GV"
    NotGV = "NotGV"

    def __str__(self):
        return self.value


IT0 = RegularityClass.IT0
MREGULAR = RegularityClass.MRegular
GV = RegularityClass.GV
NOT_GV = RegularityClass.NotGV


@total_ordering
class _NegInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"


NEG_INF = _NegInfinity()
Threshold = Union[AlgReal, _NegInfinity]


def _left_data(fam: RankFamily, x0):
    """Left germs of ``h^1 .. h^g`` at ``x0`` with their vanishing orders."""
    out = []
    for i in range(1, fam.g + 1):
        germ = fam.h(i).germ(x0, "left")
        out.append((i, germ, germ.order_at(x0)))
    return out


def _vanishes_at(fam: RankFamily, i: int, x0) -> bool:
    f = fam.h(i)
    left, right = f.germs(x0)
    for s in (left, right):
        if s is UNKNOWN:
            continue
        if isinstance(x0, AlgReal):
            if not is_root(s, x0):
                return False
        elif s(x0) != 0:
            return False
    return True


def vanishing_orders(fam: RankFamily, x0) -> dict:
    """``{i: order}`` of the left germs for ``i >= 1`` (``math.inf`` for a zero germ)."""
    x0 = x0 if isinstance(x0, AlgReal) else as_rat(x0)
    return {i: k for i, _, k in _left_data(fam, x0)}


def classify(fam: RankFamily, x0) -> RegularityClass:
    """Regularity class of the twist at ``x0``, read off the left germs.

    IT0 when every ``h^i`` (``i >= 1``) vanishes on a left neighbourhood
    and at ``x0``; M-regular when each left germ vanishes to order at
    least ``i + 1``; GV for order at least ``i``.
    """
    x0 = x0 if isinstance(x0, AlgReal) else as_rat(x0)
    data = _left_data(fam, x0)
    if all(k == math.inf for _, _, k in data) and all(_vanishes_at(fam, i, x0) for i, _, _ in data):
        return IT0
    if all(k >= i + 1 for i, _, k in data):
        return MREGULAR
    if all(k >= i for i, _, k in data):
        return GV
    return NOT_GV


def hierarchy_holds(fam: RankFamily, x0) -> bool:
    """Re-derive each class from the orders and check the implication chain."""
    x0 = x0 if isinstance(x0, AlgReal) else as_rat(x0)
    cls = classify(fam, x0)
    orders = vanishing_orders(fam, x0)
    is_gv = all(k >= i for i, k in orders.items())
    is_m = all(k >= i + 1 for i, k in orders.items())
    is_it0 = all(k == math.inf for k in orders.values()) and all(_vanishes_at(fam, i, x0) for i in orders)
    if is_it0 and not is_m or is_m and not is_gv:
        return False
    expected = IT0 if is_it0 else MREGULAR if is_m else GV if is_gv else NOT_GV
    return cls is expected


def hacon_monotonicity_check(fam: RankFamily, x0, samples: Iterable) -> Report:
    """If the twist at ``x0`` is GV, every larger sample point must be IT0."""
    x0 = as_rat(x0)
    rep = Report()
    base = classify(fam, x0)
    rep.add(f"GV at {x0}", base is not NOT_GV, f"class {base}", model=fam.name)
    if base is NOT_GV:
        return rep
    for s in samples:
        s = as_rat(s)
        if s <= x0:
            raise ValueError(f"sample {s} is not above {x0}")
        c = classify(fam, s)
        rep.add(f"IT0 at {s} above {x0}", c is IT0, f"class {c}", model=fam.name)
    return rep


def max_critical_point(fam: RankFamily) -> Threshold:
    """Largest critical point over all degrees, or ``NEG_INF`` if there is none.

    Raises :class:`UnknownRegion` when an unknown segment sits above the
    candidate, since a larger critical point could hide there.
    """
    cps = critical_points(fam)
    best = NEG_INF
    for cp in cps:
        if best is NEG_INF or algreal_compare(cp.location, best) > 0:
            best = cp.location
    for i, f in fam.functions.items():
        for k in range(len(f.segments) - 1, -1, -1):
            if f.segments[k] is UNKNOWN:
                if k == len(f.segments) - 1:
                    raise UnknownRegion(f"h^{i} is unknown on a right tail")
                edge = f.breakpoints[k]
                if best is NEG_INF or algreal_compare(edge, best) > 0:
                    raise UnknownRegion(f"h^{i} is unknown below {fmt_point(edge)}, above the largest known critical point")
                break
    return best


def beta_invariant(f: PiecewisePoly, ideal_of_point: bool = False) -> Threshold:
    """Supremum of the support of ``f`` (the point after which it vanishes).

    With ``ideal_of_point`` the result must be at most 1.
    """
    segs = f.segments
    last = segs[-1]
    if last is UNKNOWN:
        raise UnknownRegion("function unknown on a right tail")
    if last:
        raise UnboundedSupport(f"function is {last} on a right tail")
    k = len(segs) - 2
    while k >= 0 and segs[k] is not UNKNOWN and not segs[k]:
        k -= 1
    if k < 0:
        return NEG_INF
    if segs[k] is UNKNOWN:
        raise UnknownRegion(f"function unknown just below {fmt_point(f.breakpoints[k])}")
    beta = f.breakpoints[k]
    if ideal_of_point and algreal_compare(beta, 1) > 0:
        raise BetaBoundViolation(f"support reaches {fmt_point(beta)} > 1")
    return beta


def s_from_beta(beta, h: int) -> AlgReal:
    """``s = beta / (h - beta)``."""
    beta = to_algreal(beta)
    if int(h) != h or h < 1:
        raise ValueError("h must be a positive integer")
    if algreal_compare(beta, 1) > 0:
        raise InvalidBeta(f"beta = {fmt_point(beta)} exceeds 1")
    if algreal_compare(beta, h) == 0:
        raise DegenerateDenominator("h = beta: s has a pole")
    return mobius(beta, 1, 0, -1, h)


def _same(a, b) -> bool:
    if a is NEG_INF or b is NEG_INF:
        return a is b
    return algreal_compare(a, b) == 0


def beta_s_consistency(f_h1: PiecewisePoly, g: int, chi_n: int, h: int) -> Report:
    """Compare the support of the Moebius image with the predicted ``s``.

    ``f_h1`` is ``h^1`` of the ideal of a point for the polarization
    ``h * l``, in the variable of ``h * l``.
    """
    rep = Report()
    beta_hl = beta_invariant(f_h1, ideal_of_point=True)
    out = mobius_piecewise(f_h1, g, chi_n)
    if beta_hl is NEG_INF:
        # left of -1 lies outside the image of the transform
        vanishes = all(seg is UNKNOWN or not seg for seg in out.segments)
        rep.add("s vanishes with beta", vanishes, "image is zero" if vanishes else "image is nonzero")
        return rep
    s = beta_invariant(out)
    pred = mobius(beta_hl, 1, 0, -1, 1)
    rep.add("s = beta_hl / (1 - beta_hl)", _same(s, pred), f"s = {fmt_point(s)}, predicted {fmt_point(pred)}")
    beta_l = mobius(beta_hl, h, 0, 0, 1)
    law = s_from_beta(beta_l, h)
    rep.add("s = beta_l / (h - beta_l)", _same(s, law), f"beta_l = {fmt_point(beta_l)}, s = {fmt_point(law)}")
    return rep


def jump_consistency(fam: RankFamily) -> Report:
    """Stored jump-locus codimensions must not exceed index + 1."""
    rep = Report()
    for (i, x0), c in sorted(fam.jump_data.items()):
        name = f"jump codim h^{i} at {x0}"
        k = smoothness_index(fam, i, x0)
        if k is SMOOTH:
            rep.add(name, False, f"codim {c} recorded but h^{i} is smooth at {x0}", model=fam.name)
            continue
        rep.add(name, c <= k + 1, f"codim {c} <= index {k} + 1" if c <= k + 1 else f"codim {c} > index {k} + 1",
                model=fam.name)
    return rep
