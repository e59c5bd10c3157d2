"""Independent reference formulas used to cross-check the library.

Nothing here imports cohrank.  Values are computed straight from the
closed forms with Fraction arithmetic, point by point.
"""

from fractions import Fraction as F
from math import comb


def ev(coeffs, x):
    return sum(F(c) * F(x) ** k for k, c in enumerate(coeffs))


def gv_chi(g, d, x):
    return sum(comb(g, i) * (F(x) - 1) ** i for i in range(d + 1))


def gv_h0(g, d, x):
    x = F(x)
    if x <= 0:
        return F(0)
    if x <= 1:
        return x**g
    return gv_chi(g, d, x)


def gv_hd(g, d, x):
    """h^d for x > 0 (and x <= 0 under the duality extension)."""
    x = F(x)
    if x >= 1:
        return F(0)
    if x > 0:
        return (-1) ** d * (gv_chi(g, d, x) - x**g)
    return (-1) ** d * gv_chi(g, d, x)


def product_be_h0(g, x):
    x = F(x)
    return F(0) if x <= 0 else x * (1 + x) ** (g - 1)


def abel_jacobi(g, i, x):
    x = F(x)
    if i == 0:
        return g * x if x > 0 else F(0)
    if i == 1:
        return -g * x if x < 0 else F(0)
    return F(0)


def theta_sum(g, i, x):
    x = F(x)
    if i == 0:
        return (1 + x) ** g if x >= -1 else F(0)
    if x >= 0:
        return F(0)
    if i == g:
        return (-x) ** g
    if i == g - 1:
        if x >= -1:
            return (-x) ** g
        return (-1) ** (g - 1) * ((1 + x) ** g - x**g)
    return F(0)


def line_bundle(coeffs, roots_with_mult, i, x):
    """Index rule by brute force: the index at x counts roots above x with multiplicity."""
    x = F(x)
    a = sum(m for r, m in roots_with_mult if r > x)
    return (-1) ** a * ev(coeffs, x) if a == i else F(0)


def invert_neg_at(q, g, chi, x):
    x = F(x)
    return (-x) ** g / chi * ev(q, -1 / x)


def invert_pos_at(q, g, chi, x):
    x = F(x)
    return x**g / chi * ev(q, 1 / x)


def mobius_at(fn, g, chi, x):
    x = F(x)
    return chi * (1 + x) ** g * fn(x / (1 + x))


def sqrt2_bracket_ok(lo, hi):
    """lo < sqrt(2) < hi, decided by squaring."""
    lo, hi = F(lo), F(hi)
    return (lo < 0 or lo * lo < 2) and hi > 0 and hi * hi > 2
