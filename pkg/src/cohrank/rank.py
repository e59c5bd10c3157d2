"""Piecewise-polynomial rank functions and families of them.

A :class:`PiecewisePoly` is a function on the real line cut at finitely
many algebraic breakpoints.  Each open interval carries either a
polynomial or the marker :data:`UNKNOWN`.  A :class:`RankFamily` bundles
the functions ``h^0 .. h^g`` together with the polarization data.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    DegreeTooHigh,
    DiscontinuityError,
    DivisibilityFailure,
    EulerMismatch,
    IncompleteFamily,
    NotCoprime,
    UnknownRegion,
)
from .exact import (
    AlgReal,
    Poly,
    algreal_compare,
    as_rat,
    is_root,
    mobius,
    rational_between,
    taylor_shift,
    to_algreal,
)


class Marker(enum.Enum):
    UNKNOWN = "unknown"
    SMOOTH = "smooth"

    def __repr__(self):
        return self.name


UNKNOWN = Marker.UNKNOWN
SMOOTH = Marker.SMOOTH

# where a piece of data came from: a published closed form, or worked out here
STATED = "stated"
DERIVED = "derived"

Segment = Union[Poly, Marker]


def fmt_point(x) -> str:
    if isinstance(x, AlgReal):
        if x.is_rational:
            return str(x.lo)
        return f"{x.decimal(9)} (root of {x.poly})"
    return str(x)


class PiecewisePoly:
    """Breakpoints ``b_0 < ... < b_{n-1}`` and ``n + 1`` segments.

    Segment ``k`` lives on the open interval ``(b_{k-1}, b_k)`` with
    ``b_{-1} = -inf`` and ``b_n = +inf``.  ``sources`` optionally tags each
    segment with where it came from (``"stated"`` or ``"derived"``).
    """

    __slots__ = ("breakpoints", "segments", "sources")

    def __init__(self, breakpoints: Iterable = (), segments: Iterable = (None,),
                 sources: Optional[Iterable] = None):
        bps = tuple(to_algreal(b) for b in breakpoints)
        segs = []
        for s in segments:
            if s is None or s is UNKNOWN:
                segs.append(UNKNOWN if s is UNKNOWN else Poly())
            elif isinstance(s, Poly):
                segs.append(s)
            else:
                segs.append(Poly(s) if isinstance(s, (list, tuple)) else Poly.const(s))
        if len(segs) != len(bps) + 1:
            raise ValueError(f"{len(bps)} breakpoints need {len(bps) + 1} segments, got {len(segs)}")
        for a, b in zip(bps, bps[1:]):
            if algreal_compare(a, b) >= 0:
                raise ValueError("breakpoints must be strictly increasing")
        if sources is None:
            srcs = tuple(None for _ in segs)
        else:
            srcs = tuple(sources)
            if len(srcs) != len(segs):
                raise ValueError("one source tag per segment")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "segments", tuple(segs))
        object.__setattr__(self, "sources", srcs)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewisePoly is immutable")

    @classmethod
    def constant(cls, p=None, source=None) -> PiecewisePoly:
        """A single segment covering the line (zero by default)."""
        return cls((), (p if p is not None else Poly(),), (source,))

    @classmethod
    def unknown(cls) -> PiecewisePoly:
        return cls((), (UNKNOWN,))

    def __eq__(self, other):
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return (len(self.breakpoints) == len(other.breakpoints)
                and all(algreal_compare(a, b) == 0 for a, b in zip(self.breakpoints, other.breakpoints))
                and self.segments == other.segments)

    __hash__ = None

    def __repr__(self):
        return f"PiecewisePoly({list(self.breakpoints)!r}, {list(self.segments)!r})"

    def __str__(self):
        parts = []
        edges = ["-inf"] + [fmt_point(b) for b in self.breakpoints] + ["+inf"]
        for k, s in enumerate(self.segments):
            body = "unknown" if s is UNKNOWN else str(s)
            parts.append(f"({edges[k]}, {edges[k + 1]}): {body}")
        return "; ".join(parts)

    @property
    def max_degree(self) -> int:
        return max((s.degree for s in self.segments if s is not UNKNOWN), default=-1)

    @property
    def is_complete(self) -> bool:
        return all(s is not UNKNOWN for s in self.segments)

    def locate(self, x) -> tuple[int, bool]:
        """Return ``(k, hit)``: ``k`` breakpoints lie below ``x``; ``hit`` if ``x`` is breakpoint ``k``."""
        lo, hi = 0, len(self.breakpoints)
        while lo < hi:
            mid = (lo + hi) // 2
            if algreal_compare(self.breakpoints[mid], x) < 0:
                lo = mid + 1
            else:
                hi = mid
        hit = lo < len(self.breakpoints) and algreal_compare(self.breakpoints[lo], x) == 0
        return lo, hit

    def germs(self, x0) -> tuple[Segment, Segment]:
        """The segments immediately left and right of ``x0``."""
        k, hit = self.locate(x0)
        if hit:
            return self.segments[k], self.segments[k + 1]
        return self.segments[k], self.segments[k]

    def germ(self, x0, side: str) -> Poly:
        left, right = self.germs(x0)
        s = left if side == "left" else right
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if s is UNKNOWN:
            raise UnknownRegion(f"{side} germ at {fmt_point(x0)} is unknown")
        return s

    def __call__(self, x) -> Fraction:
        x = as_rat(x)
        left, right = self.germs(x)
        known = [s for s in (left, right) if s is not UNKNOWN]
        if not known:
            raise UnknownRegion(f"no known segment at x = {x}")
        vals = [s(x) for s in known]
        if len(vals) == 2 and vals[0] != vals[1]:
            raise DiscontinuityError(f"one-sided limits {vals[0]} and {vals[1]} differ at x = {x}")
        return vals[0]

    def interval_segment(self, lo, hi) -> Segment:
        """Segment covering the open interval (lo, hi); None stands for an infinite end."""
        return self.segments[self.locate(rational_between(lo, hi))[0]]

    def map_segments(self, fn) -> PiecewisePoly:
        segs = [s if s is UNKNOWN else fn(s) for s in self.segments]
        return PiecewisePoly(self.breakpoints, segs, self.sources)

    def source_of(self, k: int) -> Optional[str]:
        return self.sources[k]


def merge_breakpoints(lists: Iterable[Sequence[AlgReal]]) -> list[AlgReal]:
    """Sorted union of several ascending breakpoint lists, without duplicates."""
    out: list[AlgReal] = []
    for bps in lists:
        for b in bps:
            lo, hi = 0, len(out)
            while lo < hi:
                mid = (lo + hi) // 2
                if algreal_compare(out[mid], b) < 0:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < len(out) and algreal_compare(out[lo], b) == 0:
                continue
            out.insert(lo, b)
    return out


def _intervals(bps: Sequence[AlgReal]):
    edges = [None, *bps, None]
    return list(zip(edges, edges[1:]))


@dataclass(frozen=True)
class RankFamily:
    """The functions ``h^0 .. h^g`` of one sheaf with respect to one polarization.

    ``jump_data`` maps ``(i, x0)`` to the codimension of the jump locus,
    when a model knows it.  ``hilbert`` is the declared Euler polynomial,
    if any; ``notes`` holds free-form model documentation.
    """

    g: int
    chi_l: int
    functions: Mapping[int, PiecewisePoly]
    pol_type: Optional[tuple] = None
    complete: bool = False
    jump_data: Mapping[tuple, int] = field(default_factory=dict)
    name: str = "family"
    hilbert: Optional[Poly] = None
    notes: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be positive")
        if self.chi_l < 1:
            raise ValueError("chi_l must be positive")
        funcs = {}
        for i in range(self.g + 1):
            f = self.functions.get(i)
            funcs[i] = f if f is not None else PiecewisePoly.constant()
        extra = set(self.functions) - set(funcs)
        if extra:
            raise ValueError(f"degrees {sorted(extra)} outside 0..{self.g}")
        for i, f in funcs.items():
            if f.max_degree > self.g:
                raise DegreeTooHigh(f"h^{i} has a segment of degree {f.max_degree} > g = {self.g}")
        if self.pol_type is not None:
            d = tuple(int(v) for v in self.pol_type)
            if len(d) != self.g or any(v < 1 for v in d):
                raise ValueError("pol_type needs g positive entries")
            if any(b % a for a, b in zip(d, d[1:])):
                raise ValueError("pol_type entries must divide each other in order")
            if math.prod(d) != self.chi_l:
                raise ValueError("product of pol_type must equal chi_l")
            object.__setattr__(self, "pol_type", d)
        object.__setattr__(self, "functions", funcs)
        object.__setattr__(self, "jump_data", {(int(i), as_rat(x)): int(c) for (i, x), c in self.jump_data.items()})

    def h(self, i: int) -> PiecewisePoly:
        if i not in self.functions:
            raise ValueError(f"degree {i} outside 0..{self.g}")
        return self.functions[i]

    def with_functions(self, functions, **kw) -> RankFamily:
        return replace(self, functions=functions, **kw)

    def all_breakpoints(self) -> list[AlgReal]:
        return merge_breakpoints(f.breakpoints for f in self.functions.values())


def zero_family(g: int, chi_l: int = 1, name: str = "zero") -> RankFamily:
    return RankFamily(g, chi_l, {}, complete=True, name=name, hilbert=Poly())


# evaluation and germs

def evaluate(fam: RankFamily, i: int, x) -> Fraction:
    """Exact value of ``h^i`` at rational ``x`` (shared one-sided limit at a breakpoint)."""
    return fam.h(i)(x)


def vanishing_order(fam: RankFamily, i: int, x0, side: str):
    """Order of vanishing at ``x0`` of the left or right germ (``math.inf`` for zero)."""
    return fam.h(i).germ(x0, side).order_at(x0)


def smoothness_index(fam: RankFamily, i: int, x0):
    """Index ``k`` of ``h^i`` at ``x0``, i.e. C^k but not C^(k+1); ``SMOOTH`` if the germs agree."""
    f = fam.h(i)
    left, right = f.germ(x0, "left"), f.germ(x0, "right")
    diff = right - left
    if not diff:
        return SMOOTH
    return diff.order_at(x0) - 1


@dataclass(frozen=True)
class CriticalPoint:
    location: AlgReal
    degree: int
    index: int

    def __str__(self):
        return f"x = {fmt_point(self.location)}: h^{self.degree} index {self.index}"


def critical_points(fam: RankFamily) -> list[CriticalPoint]:
    """Every (breakpoint, degree) where the two known germs differ, sorted by location."""
    out = []
    for i, f in fam.functions.items():
        for k, b in enumerate(f.breakpoints):
            left, right = f.segments[k], f.segments[k + 1]
            if left is UNKNOWN or right is UNKNOWN:
                continue
            diff = right - left
            if diff:
                out.append(CriticalPoint(b, i, diff.order_at(b) - 1))
    # stable insertion sort by location; the lists are short
    ordered: list[CriticalPoint] = []
    for cp in out:
        pos = len(ordered)
        while pos and algreal_compare(ordered[pos - 1].location, cp.location) > 0:
            pos -= 1
        ordered.insert(pos, cp)
    return ordered


# reports

@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    source: Optional[str] = None
    model: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        src = f" [{self.source}]" if self.source else ""
        who = f"{self.model}: " if self.model else ""
        return f"{tag} {who}{self.name}{src}" + (f": {self.detail}" if self.detail else "")


class Report:
    """An ordered list of checks."""

    def __init__(self, checks: Iterable[Check] = ()):
        self.checks = list(checks)

    def add(self, name, ok, detail="", source=None, model=""):
        self.checks.append(Check(name, bool(ok), detail, source, model))

    def extend(self, other: Report):
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def text(self) -> str:
        return "\n".join(c.line() for c in self.checks)

    def __str__(self):
        return self.text()


def _source(f: PiecewisePoly, *ks) -> Optional[str]:
    tags = {f.sources[k] for k in ks if 0 <= k < len(f.sources)} - {None}
    if not tags:
        return None
    return DERIVED if DERIVED in tags else STATED


def continuity_report(fam: RankFamily) -> Report:
    """Compare one-sided limits at every breakpoint with two known neighbours."""
    rep = Report()
    for i, f in fam.functions.items():
        for k, b in enumerate(f.breakpoints):
            left, right = f.segments[k], f.segments[k + 1]
            if left is UNKNOWN or right is UNKNOWN:
                continue
            name = f"continuity h^{i} at x = {fmt_point(b)}"
            if b.is_rational:
                lv, rv = left(b.lo), right(b.lo)
                rep.add(name, lv == rv, f"left {lv}, right {rv}", _source(f, k, k + 1), fam.name)
            else:
                ok = is_root(right - left, b)
                rep.add(name, ok, "" if ok else "one-sided limits differ", _source(f, k, k + 1), fam.name)
    return rep


def euler_poly(fam: RankFamily) -> Poly:
    """The alternating sum of the h^i, which must be one polynomial on the whole line."""
    if not fam.complete:
        raise IncompleteFamily(f"{fam.name} is not complete")
    result = None
    for lo, hi in _intervals(fam.all_breakpoints()):
        total = Poly()
        for i, f in fam.functions.items():
            s = f.interval_segment(lo, hi)
            if s is UNKNOWN:
                raise IncompleteFamily(f"h^{i} unknown on ({fmt_point(lo)}, {fmt_point(hi)})")
            total = total + s if i % 2 == 0 else total - s
        if result is None:
            result = total
        elif total != result:
            raise EulerMismatch(f"alternating sum {total} on ({fmt_point(lo)}, {fmt_point(hi)}) differs from {result}",
                                interval=(lo, hi))
    return result


def euler_check(fam: RankFamily) -> Report:
    rep = Report()
    try:
        chi = euler_poly(fam)
    except (IncompleteFamily, EulerMismatch) as exc:
        rep.add("euler characteristic", False, str(exc), model=fam.name)
        return rep
    if fam.hilbert is None:
        rep.add("euler characteristic", True, f"chi = {chi}", model=fam.name)
    else:
        rep.add("euler characteristic", chi == fam.hilbert, f"chi = {chi}, declared {fam.hilbert}", model=fam.name)
    return rep


# change of center

def rescale(fam: RankFamily, center, b, name: Optional[str] = None) -> RankFamily:
    """Family ``z -> b^(2g) h^i(center + z / b^2)`` for rational ``center`` and ``b > 0``."""
    center, b = as_rat(center), as_rat(b)
    if b <= 0:
        raise ValueError("b must be positive")
    g = fam.g
    b2 = b * b
    factor = b2**g

    def tp(p: Poly) -> Poly:
        return taylor_shift(p, center).scale_arg(1 / b2) * factor

    funcs = {}
    for i, f in fam.functions.items():
        bps = [mobius(x, b2, -b2 * center, 0, 1) for x in f.breakpoints]
        funcs[i] = PiecewisePoly(bps, [s if s is UNKNOWN else tp(s) for s in f.segments], f.sources)
    jumps = {(i, b2 * (x - center)): c for (i, x), c in fam.jump_data.items()}
    return replace(
        fam,
        functions=funcs,
        jump_data=jumps,
        hilbert=None if fam.hilbert is None else tp(fam.hilbert),
        name=name or f"{fam.name} rescaled at {center} by {b}",
    )


def recenter(fam: RankFamily, a: int, b: int) -> RankFamily:
    """Recenter at ``a/b``: ``f'_i(z) = b^(2g) f_i(a/b + z/b^2)``.

    ``a/b`` must be in lowest terms with ``b > 0``.
    """
    if int(b) != b or int(a) != a:
        raise ValueError("a and b must be integers")
    a, b = int(a), int(b)
    if b < 1:
        raise ValueError("b must be positive")
    if math.gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not in lowest terms")
    return rescale(fam, Fraction(a, b), b, name=f"{fam.name} recentered at {Fraction(a, b)}")


# arithmetic checks

def integrality_bound(pol_type: Sequence[int], k: int, g: int, literal: bool = False) -> Fraction:
    """Generator of the lattice that the degree-``k`` coefficient must lie in.

    The default is ``(d_1...d_k) / k!``.  ``literal=True`` gives the larger
    ``(d_1...d_k) (g-k)! / k!`` that a naive reading of the expansion
    suggests; it already fails for ``(1 + x)^g``.
    """
    base = Fraction(math.prod(pol_type[:k]), math.factorial(k))
    return base * math.factorial(g - k) if literal else base


def integrality_check(fam: RankFamily, literal_refined: bool = False) -> Report:
    """Check ``g! c_k`` is an integer and, given a polarization type, the refined lattice bound."""
    rep = Report()
    gf = math.factorial(fam.g)
    for i, f in fam.functions.items():
        for k, s in enumerate(f.segments):
            if s is UNKNOWN or not s:
                continue
            where = f"h^{i} segment {k} ({s})"
            bad = [j for j, c in enumerate(s.coeffs) if (c * gf).denominator != 1]
            rep.add(f"integrality g! {where}", not bad,
                    f"coefficients of degree {bad} not in (1/{gf})Z" if bad else "", f.sources[k], fam.name)
            if fam.pol_type is not None:
                bad = []
                for j, c in enumerate(s.coeffs):
                    q = c / integrality_bound(fam.pol_type, j, fam.g, literal_refined)
                    if q.denominator != 1:
                        bad.append(j)
                rep.add(f"refined integrality {where}", not bad,
                        f"coefficients of degree {bad} outside the type lattice" if bad else "",
                        f.sources[k], fam.name)
    return rep


def divisibility_check(fam: RankFamily, i: int, a: int, b: int) -> int:
    """Return ``b^(2g) h^i(a/b) / b^g``, checking both are integers."""
    g = fam.g
    if b < 1:
        raise ValueError("b must be positive")
    if math.gcd(b, math.factorial(g)) != 1:
        raise NotCoprime(f"gcd({b}, {g}!) != 1")
    v = Fraction(b) ** (2 * g) * evaluate(fam, i, Fraction(a, b))
    if v.denominator != 1:
        raise DivisibilityFailure(f"b^2g h^{i}({a}/{b}) = {v} is not an integer")
    v = v.numerator
    if v % b**g:
        raise DivisibilityFailure(f"{v} is not divisible by {b}^{g}")
    return v // b**g


def serre_dual_check(famF: RankFamily, famD: RankFamily, samples: Iterable) -> Report:
    """Compare ``h^i_F(x)`` with ``h^(g-i)`` of the dual family at ``-x``."""
    rep = Report()
    if famF.g != famD.g:
        rep.add("serre duality", False, f"dimensions differ ({famF.g} vs {famD.g})", model=famF.name)
        return rep
    g = famF.g
    for x in samples:
        x = as_rat(x)
        for i in range(g + 1):
            name = f"serre duality h^{i}({x})"
            try:
                lhs, rhs = evaluate(famF, i, x), evaluate(famD, g - i, -x)
            except UnknownRegion as exc:
                rep.add(name, False, str(exc), model=famF.name)
                continue
            rep.add(name, lhs == rhs, f"{lhs} vs {rhs}", model=famF.name)
    return rep


def known_sample_points(f: PiecewisePoly, rng, per_segment: int, span: int = 4) -> list[Fraction]:
    """Random rationals inside the known segments of ``f`` (bounded ends padded by ``span``)."""
    pts = []
    edges = _intervals(f.breakpoints)
    for k, (lo, hi) in enumerate(edges):
        if f.segments[k] is UNKNOWN:
            continue
        a = rational_between(None, hi) - span if lo is None else None
        left = a if lo is None else _rational_above(lo)
        right = rational_between(lo, None) + span if hi is None else _rational_below(hi)
        if lo is None and hi is None:
            left, right = Fraction(-span), Fraction(span)
        if left >= right:
            continue
        for _ in range(per_segment):
            t = Fraction(rng.randint(1, 999), 1000)
            pts.append(left + (right - left) * t)
    return pts


def _rational_above(a: AlgReal) -> Fraction:
    while not a.is_rational and a.hi - a.lo > Fraction(1, 1000):
        a = a.refine()
    return a.hi if not a.is_rational else a.lo


def _rational_below(a: AlgReal) -> Fraction:
    while not a.is_rational and a.hi - a.lo > Fraction(1, 1000):
        a = a.refine()
    return a.lo


def nonnegativity_check(fam: RankFamily, rng, per_segment: int = 20) -> Report:
    """Sample every known segment at random rationals and check the values are >= 0."""
    rep = Report()
    for i, f in fam.functions.items():
        bad = []
        n = 0
        for x in known_sample_points(f, rng, per_segment):
            n += 1
            if f(x) < 0:
                bad.append(x)
        rep.add(f"non-negativity h^{i}", not bad,
                f"{n} samples" if not bad else f"negative at {[str(x) for x in bad[:3]]}", model=fam.name)
    return rep
