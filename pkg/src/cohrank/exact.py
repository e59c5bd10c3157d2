"""Exact rationals, dense univariate polynomials and real algebraic numbers.

Rationals are :class:`fractions.Fraction`.  A :class:`Poly` stores its
coefficients in ascending degree order and is immutable.  An
:class:`AlgReal` is a real root of a square-free rational polynomial,
pinned down by an isolating interval; rationals are the degenerate case
``(x - q, [q, q])``.

Nothing here ever touches floating point except the display helpers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

from .errors import EndpointIsRoot

Rat = Fraction
RatLike = Union[Fraction, int]


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction.

    Floats are refused on purpose: an accidental float would silently
    import a binary rounding error into exact computations.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    # constructors

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Poly:
        p = cls.const(lead)
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    # basic accessors

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lead(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def padded(self, n: int) -> list:
        """Coefficients zero-padded to length ``n + 1``."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds {n}")
        return list(self._c) + [Fraction(0)] * (n + 1 - len(self._c))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    # arithmetic

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self._c), len(other._c))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rat(other)
            return Poly(c * a for a in self._c)
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_rat(c)
        return Poly(a / c for a in self._c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out, base = Poly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: Poly):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        if len(rem) <= dq:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        lead = other.lead
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            quo[k] = c
            if c:
                for j, oc in enumerate(other._c):
                    rem[k + j] -= c * oc
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self._c) if k)

    def monic(self) -> Poly:
        return self / self.lead if self._c else self

    def divides(self, other: Poly) -> bool:
        return not (other % self)

    def compose_affine(self, shift, scale) -> Poly:
        """Return ``y -> P(shift + scale*y)``."""
        return taylor_shift(self, shift).scale_arg(scale)

    def scale_arg(self, s) -> Poly:
        """Return ``y -> P(s*y)``."""
        s = as_rat(s)
        return Poly(c * s**k for k, c in enumerate(self._c))

    def order_at(self, c) -> float | int:
        """Multiplicity of ``c`` as a root; ``math.inf`` for the zero polynomial."""
        if not self._c:
            return math.inf
        if isinstance(c, AlgReal):
            return order_at_algebraic(self, c)
        shifted = taylor_shift(self, c)._c
        return next(k for k, a in enumerate(shifted) if a)

    def squarefree_part(self) -> Poly:
        if self.degree < 1:
            return self.monic()
        return (self // poly_gcd(self, self.derivative())).monic()

    # display

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self._c)}])"

    def format(self, var: str = "x") -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()


def poly_eval(p: Poly, x) -> Fraction:
    return p(as_rat(x))


def taylor_shift(p: Poly, c) -> Poly:
    """Return Q with Q(y) = P(c + y), by repeated synthetic division."""
    c = as_rat(c)
    a = list(p.coeffs)
    if not c:
        return Poly(a)
    n = len(a)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return Poly(a)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime ``a_i`` with P = lc * prod a_i^i.

    Only factors of positive degree are returned.
    """
    if p.degree < 1:
        return []
    f = p.monic()
    df = f.derivative()
    b = poly_gcd(f, df)
    c = f // b
    d = df // b - c.derivative()
    out = []
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c // a
        d = d // a - c.derivative()
        i += 1
    return out


# Sturm sequences

def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        # positive rescaling keeps signs and tames coefficient growth
        seq.append(r / abs(r.lead))
    if not seq[-1]:
        seq.pop()
    return seq


def _variations(seq: list[Poly], x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _count_open(seq: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Distinct roots of the square-free ``seq[0]`` in the open interval (lo, hi).

    V(lo) - V(hi) counts roots in (lo, hi]; a root sitting at ``hi`` is
    subtracted.  Valid for square-free polynomials even when ``lo`` or
    ``hi`` is itself a root.
    """
    n = _variations(seq, lo) - _variations(seq, hi)
    if seq[0](hi) == 0:
        n -= 1
    return n


def sturm_count(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    lo, hi = as_rat(lo), as_rat(hi)
    if not p:
        raise ValueError("zero polynomial has no Sturm sequence")
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointIsRoot(f"{p} vanishes at an endpoint of ({lo}, {hi})")
    s = p.squarefree_part()
    seq = sturm_sequence(s)
    return _variations(seq, lo) - _variations(seq, hi)


def root_bound(p: Poly) -> Fraction:
    """An integer strictly larger than the modulus of every root (Cauchy)."""
    lead = abs(p.lead)
    m = max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    return Fraction(math.floor(1 + m) + 1)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


# above this the divisor enumeration gets slow; roots stay irrational-shaped
_RATIONAL_DETECTION_LIMIT = 10**12


def _integer_lead(p: Poly) -> int:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return abs(ints[-1] // g)


def _rational_root_in(p: Poly, seq, lo: Fraction, hi: Fraction):
    """Return the rational root of square-free ``p`` in (lo, hi), if there is one.

    Assumes (lo, hi) isolates a single root.  A rational root p/q in lowest
    terms has q dividing the leading coefficient of the primitive integer
    form, so once the interval is narrower than 1/lead each admissible q
    leaves at most one numerator to test.
    """
    if p.degree == 1:
        return -p.coeff(0) / p.coeff(1)
    lead = _integer_lead(p)
    if lead > _RATIONAL_DETECTION_LIMIT:
        return None
    while (hi - lo) * lead >= 1:
        m = (lo + hi) / 2
        if p(m) == 0:
            return m
        if _count_open(seq, lo, m) == 1:
            hi = m
        else:
            lo = m
    for q in _divisors(lead):
        num = math.floor(lo * q) + 1
        cand = Fraction(num, q)
        if lo < cand < hi and p(cand) == 0:
            return cand
    return None


def _isolate_squarefree(s: Poly) -> list:
    """Isolate every real root of square-free ``s``, ascending.

    Returns Fractions for roots found exactly and (lo, hi) pairs otherwise;
    each pair has non-root endpoints and contains exactly one root.
    """
    if s.degree < 1:
        return []
    seq = sturm_sequence(s)
    b = root_bound(s)
    out = []
    # LIFO work list; "root" items are exact midpoints hit during bisection
    stack = [("iv", -b, b)]
    while stack:
        item = stack.pop()
        if item[0] == "root":
            out.append(item[1])
            continue
        _, lo, hi = item
        n = _count_open(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten(s, seq, lo, hi))
            continue
        m = (lo + hi) / 2
        stack.append(("iv", m, hi))
        if s(m) == 0:
            stack.append(("root", m))
        stack.append(("iv", lo, m))
    return out


def _tighten(s: Poly, seq, lo: Fraction, hi: Fraction):
    """Shrink (lo, hi) until both endpoints are non-roots; may hit the root."""
    while s(lo) == 0 or s(hi) == 0:
        m = (lo + hi) / 2
        if s(m) == 0:
            return m
        if _count_open(seq, lo, m) == 1:
            hi = m
        else:
            lo = m
    q = _rational_root_in(s, seq, lo, hi)
    return q if q is not None else (lo, hi)


# real algebraic numbers

@total_ordering
class AlgReal:
    """A real algebraic number: root of a square-free polynomial in an interval.

    Irrational-looking values keep an open interval ``(lo, hi)`` whose
    endpoints are not roots and which contains exactly one root of
    ``poly``.  Exact rationals use ``lo == hi`` and ``poly = x - q``.
    Instances are immutable; refinement returns a new instance.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: Poly, lo, hi, *, check: bool = True):
        lo, hi = as_rat(lo), as_rat(hi)
        if lo == hi:
            if check and poly(lo) != 0:
                raise ValueError(f"{lo} is not a root of {poly}")
            poly = Poly([-lo, 1])
        elif check:
            if not poly or lo > hi:
                raise ValueError("need a nonzero polynomial and lo < hi")
            if poly.squarefree_part().degree != poly.degree:
                raise ValueError(f"{poly} is not square-free")
            if sturm_count(poly, lo, hi) != 1:
                raise ValueError(f"({lo}, {hi}) does not isolate one root of {poly}")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("AlgReal is immutable")

    @classmethod
    def rational(cls, q) -> AlgReal:
        q = as_rat(q)
        return cls(Poly([-q, 1]), q, q, check=False)

    @property
    def is_rational(self) -> bool:
        """True when the value is stored as an exact rational."""
        return self.lo == self.hi

    def exact_rational(self):
        """The value as a Fraction if it is rational, else None."""
        if self.is_rational:
            return self.lo
        return _rational_root_in(self.poly, sturm_sequence(self.poly), self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self) -> AlgReal:
        """Halve the isolating interval (or land exactly on the root)."""
        if self.is_rational:
            return self
        m = (self.lo + self.hi) / 2
        vm = self.poly(m)
        if vm == 0:
            return AlgReal.rational(m)
        # the root is simple, so the sign flips exactly once inside
        if _sign(vm) == _sign(self.poly(self.lo)):
            return AlgReal(self.poly, m, self.hi, check=False)
        return AlgReal(self.poly, self.lo, m, check=False)

    def refine_to(self, width) -> AlgReal:
        width = as_rat(width)
        a = self
        while a.width >= width:
            a = a.refine()
        return a

    def _cmp_rat(self, q: Fraction) -> int:
        if self.is_rational:
            return _sign(self.lo - q)
        if q <= self.lo:
            return 1
        if q >= self.hi:
            return -1
        vq = self.poly(q)
        if vq == 0:
            return 0
        return 1 if _sign(vq) == _sign(self.poly(self.lo)) else -1

    def __eq__(self, other):
        try:
            return algreal_compare(self, other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return algreal_compare(self, other) < 0

    __hash__ = None

    def __neg__(self):
        return _reflect(self)

    def __float__(self):
        a = self.refine_to(Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def decimal(self, digits: int = 12) -> str:
        """Round-half-even decimal rendering with ``digits`` fractional digits."""
        if self.is_rational:
            return format_decimal(self.lo, digits)
        a = self
        for _ in range(4 * digits + 200):
            lo_s, hi_s = format_decimal(a.lo, digits), format_decimal(a.hi, digits)
            if lo_s == hi_s:
                return lo_s
            a = a.refine()
            if a.is_rational:
                return format_decimal(a.lo, digits)
        return format_decimal((a.lo + a.hi) / 2, digits)

    def __repr__(self):
        if self.is_rational:
            return f"AlgReal.rational({self.lo})"
        return f"AlgReal({self.poly!r}, {self.lo}, {self.hi})"

    def __str__(self):
        if self.is_rational:
            return str(self.lo)
        return f"root of {self.poly} in ({self.lo}, {self.hi}) ~ {self.decimal(6)}"


def to_algreal(x) -> AlgReal:
    if isinstance(x, AlgReal):
        return x
    return AlgReal.rational(as_rat(x))


def algreal_compare(a, b) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if not isinstance(a, AlgReal) and not isinstance(b, AlgReal):
        return _sign(as_rat(a) - as_rat(b))
    if not isinstance(a, AlgReal):
        return -algreal_compare(b, a)
    if not isinstance(b, AlgReal):
        return a._cmp_rat(as_rat(b))
    if b.is_rational:
        return a._cmp_rat(b.lo)
    if a.is_rational:
        return -b._cmp_rat(a.lo)
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo < hi:
        g = poly_gcd(a.poly, b.poly)
        if g.degree > 0 and _count_open(sturm_sequence(g), lo, hi) > 0:
            return 0
    # distinct values: refine until the intervals separate
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if a.is_rational or b.is_rational:
            return algreal_compare(a, b)
        if a.width >= b.width:
            a = a.refine()
        else:
            b = b.refine()


def rational_between(a, b) -> Fraction:
    """A rational strictly between ``a < b`` (either may be None for +-infinity)."""
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        b = to_algreal(b)
        return math.floor(b.lo) - 1
    if b is None:
        a = to_algreal(a)
        return math.ceil(a.hi) + 1
    a, b = to_algreal(a), to_algreal(b)
    if algreal_compare(a, b) >= 0:
        raise ValueError("need a < b")
    while not a.hi < b.lo:
        if a.width >= b.width and not a.is_rational:
            a = a.refine()
        elif not b.is_rational:
            b = b.refine()
        else:
            a = a.refine()
    return (a.hi + b.lo) / 2


def is_root(p: Poly, a: AlgReal) -> bool:
    """Exact test p(a) == 0."""
    if not p:
        return True
    if a.is_rational:
        return p(a.lo) == 0
    g = poly_gcd(a.poly, p)
    if g.degree < 1:
        return False
    # endpoints of a's interval are non-roots of a.poly, hence of g
    return _variations(sturm_sequence(g), a.lo) - _variations(sturm_sequence(g), a.hi) > 0


def sign_at(p: Poly, a: AlgReal) -> int:
    """Exact sign of p(a)."""
    if a.is_rational:
        return _sign(p(a.lo))
    if is_root(p, a):
        return 0
    s = p.squarefree_part()
    while True:
        if s(a.lo) != 0 and s(a.hi) != 0 and sturm_count(s, a.lo, a.hi) == 0:
            return _sign(p(a.lo))
        a = a.refine()
        if a.is_rational:
            return _sign(p(a.lo))


def order_at_algebraic(p: Poly, a: AlgReal):
    """Vanishing order of p at an algebraic point, via successive derivatives."""
    if not p:
        return math.inf
    if a.is_rational:
        return p.order_at(a.lo)
    k = 0
    while is_root(p, a):
        p = p.derivative()
        k += 1
    return k


def mobius(a: AlgReal, p: RatLike, q: RatLike, r: RatLike, s: RatLike) -> AlgReal:
    """Image of ``a`` under t = (p x + q) / (r x + s).

    Requires r*a + s > 0; with p*s - q*r > 0 the map is increasing there, so
    the isolating interval maps to an isolating interval.  The negation
    x -> -x (p = -1, s = 1) is handled as a decreasing special case.
    """
    p, q, r, s = map(as_rat, (p, q, r, s))
    det = p * s - q * r
    if det == 0:
        raise ValueError("degenerate Mobius map")
    if a.is_rational:
        den = r * a.lo + s
        if den == 0:
            raise ZeroDivisionError("point maps to infinity")
        return AlgReal.rational((p * a.lo + q) / den)
    if r == 0 and det < 0:
        # decreasing affine map: reflect, then apply the increasing part
        return mobius(_reflect(a), -p, q, 0, s)
    if det < 0:
        raise ValueError("only orientation-preserving maps are supported")
    if r:
        c = algreal_compare(a, -s / r)
        if c == 0:
            raise ZeroDivisionError("point maps to infinity")
        if c * _sign(r) < 0:
            raise ValueError("denominator r*x + s must be positive at the point")
    elif s <= 0:
        raise ValueError("denominator r*x + s must be positive at the point")
    while r * a.lo + s <= 0 or r * a.hi + s <= 0:
        a = a.refine()
        if a.is_rational:
            return mobius(a, p, q, r, s)
    # x = (s t - q) / (p - r t); clear the denominator
    n = a.poly.degree
    num, den = Poly([-q, s]), Poly([p, -r])
    out = Poly()
    for k, c in enumerate(a.poly.coeffs):
        if c:
            out = out + c * num**k * den ** (n - k)
    f = lambda x: (p * x + q) / (r * x + s)
    return AlgReal(out.monic(), f(a.lo), f(a.hi), check=False)


def _reflect(a: AlgReal) -> AlgReal:
    if a.is_rational:
        return AlgReal.rational(-a.lo)
    return AlgReal(a.poly.scale_arg(-1).monic(), -a.hi, -a.lo, check=False)


def isolate_real_roots(p: Poly) -> list[tuple[AlgReal, int]]:
    """All distinct real roots with multiplicities, largest first.

    Intervals are pairwise disjoint and each one isolates its root among
    the roots of the square-free part of ``p``.  The defining polynomial of
    each root is the square-free factor carrying its multiplicity.
    """
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    factors = squarefree_decomposition(p)
    if not factors:
        return []
    s = p.squarefree_part()
    out = []
    for item in _isolate_squarefree(s):
        if isinstance(item, Fraction):
            mult = next(m for f, m in factors if f(item) == 0)
            out.append((AlgReal.rational(item), mult))
            continue
        lo, hi = item
        for f, m in factors:
            if f.degree < 1 or f(lo) == 0 or f(hi) == 0:
                continue
            if _count_open(sturm_sequence(f), lo, hi) == 1:
                out.append((AlgReal(f, lo, hi, check=False), m))
                break
    out.reverse()
    return out


def is_real_rooted(p: Poly) -> bool:
    if not p:
        raise ValueError("the zero polynomial is excluded")
    return sum(m for _, m in isolate_real_roots(p)) == p.degree


def format_decimal(q, digits: int = 12) -> str:
    """Fixed-point rendering of an exact rational, rounding half to even."""
    q = as_rat(q)
    n = round(q * 10**digits)
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    ip, fp = divmod(n, 10**digits)
    return f"{sign}{ip}.{fp:0{digits}d}"


def format_rat(q) -> str:
    return str(as_rat(q))
