"""Reading and writing model files.

A model file is UTF-8 text made of ``key = value`` lines.  Blank lines
and anything after ``#`` are ignored.  Example::

    kind = line_bundle
    g = 2
    chi_l = 1
    poly = [-2, 0, 1]      # x^2 - 2, ascending coefficients

Germ models list ``minus.i`` / ``plus.i`` polynomials for the degrees
that are nonzero.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .errors import CohRankError, ModelSyntaxError, ModelValidationError
from .exact import Poly
from .models import (
    AbelJacobiSpec,
    GermSpec,
    GvSubschemeSpec,
    LineBundleSpec,
    ProductBESpec,
    ThetaSumSpec,
)
from .transform import TransformGerm

# required keys per kind; germ files may add minus.i / plus.i
_KEYS = {
    "line_bundle": {"g", "chi_l", "poly"},
    "gv_subscheme": {"g", "d"},
    "product_be": {"g"},
    "abel_jacobi": {"g"},
    "theta_sum": {"g"},
    "germ": {"g", "chi_l"},
}

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_INT = re.compile(r"^[+-]?\d+$")
_GERM_KEY = re.compile(r"^(minus|plus)\.(\d+)$")


def parse_rat(text: str, lineno=None) -> Fraction:
    t = text.strip()
    if not _RAT.match(t):
        raise ModelSyntaxError(f"not a rational: {text.strip()!r}", lineno)
    try:
        return Fraction(t)
    except ZeroDivisionError:
        raise ModelSyntaxError(f"zero denominator in {t!r}", lineno) from None


def parse_poly(text: str, lineno=None) -> Poly:
    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ModelSyntaxError(f"polynomial must be a bracketed coefficient list, got {t!r}", lineno)
    body = t[1:-1].strip()
    if not body:
        return Poly()
    return Poly(parse_rat(part, lineno) for part in body.split(","))


def format_poly(p: Poly) -> str:
    return "[" + ", ".join(str(c) for c in p.coeffs) + "]"


def _int(value: str, key: str, lineno) -> int:
    if not _INT.match(value.strip()):
        raise ModelSyntaxError(f"{key} must be an integer, got {value.strip()!r}", lineno)
    return int(value)


def parse_model(text: str, name: str | None = None):
    """Parse model-file text into a validated spec.

    Raises :class:`ModelSyntaxError` for malformed lines and
    :class:`ModelValidationError` for well-formed but invalid models.
    """
    entries = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ModelSyntaxError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ModelSyntaxError(f"empty key or value in {line!r}", lineno)
        if key in entries:
            raise ModelSyntaxError(f"duplicate key {key!r}", lineno)
        entries[key] = value
        lines[key] = lineno
    if "kind" not in entries:
        raise ModelValidationError("missing key 'kind'")
    kind = entries.pop("kind")
    if kind not in _KEYS:
        raise ModelValidationError(f"unknown kind {kind!r}", lines["kind"])
    required = _KEYS[kind]
    for key in entries:
        ok = key in required or (kind == "germ" and _GERM_KEY.match(key))
        if not ok:
            raise ModelValidationError(f"key {key!r} not allowed for kind {kind}", lines[key])
    missing = sorted(required - set(entries))
    if missing:
        raise ModelValidationError(f"kind {kind} requires {', '.join(missing)}")

    g = _int(entries["g"], "g", lines["g"])
    try:
        if kind == "line_bundle":
            chi = _int(entries["chi_l"], "chi_l", lines["chi_l"])
            P = parse_poly(entries["poly"], lines["poly"])
            spec = LineBundleSpec(P, g, chi, label=name)
        elif kind == "gv_subscheme":
            spec = GvSubschemeSpec(g, _int(entries["d"], "d", lines["d"]), label=name)
        elif kind == "product_be":
            spec = ProductBESpec(g, label=name)
        elif kind == "abel_jacobi":
            spec = AbelJacobiSpec(g, label=name)
        elif kind == "theta_sum":
            spec = ThetaSumSpec(g, label=name)
        else:
            chi = _int(entries["chi_l"], "chi_l", lines["chi_l"])
            minus, plus = {}, {}
            for key, value in entries.items():
                m = _GERM_KEY.match(key)
                if m:
                    side = minus if m.group(1) == "minus" else plus
                    side[int(m.group(2))] = parse_poly(value, lines[key])
            spec = GermSpec(TransformGerm(g, chi, minus, plus), label=name)
        # building is the validation step (real-rootedness, ranges, leading terms)
        spec.build()
    except ModelSyntaxError:
        raise
    except (CohRankError, ValueError) as exc:
        raise ModelValidationError(str(exc)) from exc
    return spec


def load_model(path) -> object:
    p = Path(path)
    name = p.name.split(".")[0]
    return parse_model(p.read_text(encoding="utf-8"), name=name)


def serialize(spec) -> str:
    """Model-file text for a spec; :func:`parse_model` reads it back to an equal spec."""
    out = [f"kind = {spec.kind}", f"g = {spec.g}"]
    if isinstance(spec, LineBundleSpec):
        out += [f"chi_l = {spec.chi_l}", f"poly = {format_poly(spec.P)}"]
    elif isinstance(spec, GvSubschemeSpec):
        out.append(f"d = {spec.d}")
    elif isinstance(spec, GermSpec):
        tg = spec.tg
        out.append(f"chi_l = {tg.chi_l}")
        for i in sorted(tg.minus):
            if tg.minus[i]:
                out.append(f"minus.{i} = {format_poly(tg.minus[i])}")
        for i in sorted(tg.plus):
            if tg.plus[i]:
                out.append(f"plus.{i} = {format_poly(tg.plus[i])}")
    return "\n".join(out) + "\n"
