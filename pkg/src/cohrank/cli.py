"""Command-line interface, verification driver and sample export.

Exit codes: 0 success, 1 a verification failed (or a value was
requested where the function is unknown), 2 usage or model-file error.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CohRankError, ModelFileError, UnknownRegion
from .exact import AlgReal, as_rat, format_decimal
from .modelfile import load_model, parse_rat
from .models import GermSpec, catalog, catalog_by_name
from .rank import (
    Check,
    RankFamily,
    Report,
    continuity_report,
    critical_points,
    euler_check,
    evaluate,
    integrality_check,
    known_sample_points,
    nonnegativity_check,
)
from .regularity import NOT_GV, classify, hierarchy_holds, jump_consistency
from .transform import double_inversion_identity_check

CSV_HEADER = ("x_exact", "x_decimal", "h_exact", "h_decimal")


# verification

def _classifiable_points(fam: RankFamily, rng, want: int) -> list[Fraction]:
    pool = []
    for f in fam.functions.values():
        pool += known_sample_points(f, rng, 10)
        pool += [b.lo for b in f.breakpoints if b.is_rational]
    pool = sorted(set(pool))
    rng.shuffle(pool)
    out = []
    for x in pool:
        try:
            classify(fam, x)
        except UnknownRegion:
            continue
        out.append(x)
        if len(out) == want:
            break
    return sorted(out)


def _regularity_checks(fam: RankFamily, rng) -> Report:
    rep = Report()
    pts = _classifiable_points(fam, rng, 50)
    bad = [x for x in pts if not hierarchy_holds(fam, x)]
    rep.add("regularity hierarchy", not bad,
            f"{len(pts)} points" + (f", violated at {[str(x) for x in bad[:3]]}" if bad else ""),
            model=fam.name)
    tested, failures = 0, []
    for x0 in pts:
        if classify(fam, x0) is NOT_GV:
            continue
        for _ in range(5):
            s = x0 + Fraction(rng.randint(1, 4000), 1000)
            try:
                c = classify(fam, s)
            except UnknownRegion:
                continue
            tested += 1
            if c.value != "IT0":
                failures.append((x0, s, c))
    rep.add("generic vanishing monotonicity", not failures,
            f"{tested} samples" + (f", not IT0 at {[(str(a), str(b)) for a, b, _ in failures[:3]]}" if failures else ""),
            model=fam.name)
    return rep


def _inversion_check(fam: RankFamily, spec) -> Report:
    rep = Report()
    polys = []
    if isinstance(spec, GermSpec):
        polys += list(spec.tg.minus.values()) + list(spec.tg.plus.values())
    if fam.hilbert is not None and fam.hilbert.degree <= fam.g:
        polys.append(fam.hilbert)
    if polys:
        ok = all(double_inversion_identity_check(q, fam.g, fam.chi_l) for q in polys)
        rep.add("double inversion", ok, f"{len(polys)} polynomials", model=fam.name)
    return rep


def verify_family(fam: RankFamily, spec=None, seed: int = 0) -> Report:
    """Run every applicable suite on one family."""
    rng = random.Random(f"{seed}:{fam.name}")
    rep = Report()
    rep.extend(continuity_report(fam))
    if fam.complete:
        rep.extend(euler_check(fam))
    rep.extend(integrality_check(fam))
    rep.extend(nonnegativity_check(fam, rng))
    rep.extend(_regularity_checks(fam, rng))
    if fam.jump_data:
        rep.extend(jump_consistency(fam))
    rep.extend(_inversion_check(fam, spec))
    return rep


def run_verify(specs, seed: int = 0) -> tuple[int, str]:
    """Verify specs (or ready-made families); return ``(exit status, report text)``."""
    checks = []
    for spec in specs:
        if isinstance(spec, RankFamily):
            fam, spec = spec, None
        else:
            try:
                fam = spec.build()
            except CohRankError as exc:
                checks.append(Check("build", False, str(exc), model=spec.name))
                continue
        for c in verify_family(fam, spec, seed):
            checks.append(Check(c.name, c.ok, c.detail, c.source, c.model or fam.name))
    checks.sort(key=lambda c: (c.model, c.name))
    rep = Report(checks)
    text = rep.text()
    if checks:
        n_fail = len(rep.failures)
        text += f"\n{len(checks) - n_fail} passed, {n_fail} failed\n"
    return (0 if rep.ok else 1), text


# sample export

@dataclass(frozen=True)
class SampleTable:
    rows: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(self.rows)
        return buf.getvalue()


def export_samples(spec, i: int, lo, hi, steps: int, digits: int = 12) -> SampleTable:
    """``steps + 1`` evenly spaced points on ``[lo, hi]`` with exact and decimal values."""
    lo, hi = as_rat(lo), as_rat(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if steps < 1:
        raise ValueError("steps must be positive")
    fam = spec if isinstance(spec, RankFamily) else spec.build()
    rows = []
    for k in range(steps + 1):
        x = lo + (hi - lo) * k / steps
        try:
            v = evaluate(fam, i, x)
            val = (str(v), format_decimal(v, digits))
        except UnknownRegion:
            val = ("unknown", "unknown")
        rows.append((str(x), format_decimal(x, digits)) + val)
    return SampleTable(tuple(rows))


# command line

class _UsageError(Exception):
    pass


def resolve_model(arg: str):
    p = Path(arg)
    if p.is_file():
        return load_model(p)
    specs = catalog_by_name()
    if arg in specs:
        return specs[arg]
    raise _UsageError(f"no model file or catalog model named {arg!r} (see list-models)")


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ModelFileError:
        raise argparse.ArgumentTypeError(f"expected an integer or a/b rational, got {text!r}") from None


def _point(x, digits: int) -> str:
    if isinstance(x, AlgReal):
        if x.is_rational:
            return str(x.lo)
        return f"{x.decimal(digits)} (root of {x.poly} in ({x.lo}, {x.hi}))"
    return str(x)


def _cmd_verify(args) -> int:
    specs = [resolve_model(m) for m in args.model] if args.model else catalog()
    code, text = run_verify(specs)
    sys.stdout.write(text)
    return code


def _cmd_eval(args) -> int:
    fam = resolve_model(args.model).build()
    try:
        v = evaluate(fam, args.i, args.x)
    except UnknownRegion as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 1
    print(f"h^{args.i}({args.x}) = {v} ~ {format_decimal(v, args.digits)}")
    return 0


def _cmd_critical(args) -> int:
    fam = resolve_model(args.model).build()
    cps = critical_points(fam)
    for cp in cps:
        print(f"x = {_point(cp.location, args.digits)}  h^{cp.degree}  index {cp.index}")
    if not cps:
        print("no critical points")
    return 0


def _cmd_classify(args) -> int:
    fam = resolve_model(args.model).build()
    try:
        c = classify(fam, args.x)
    except UnknownRegion as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 1
    print(c)
    return 0


def _cmd_sample(args) -> int:
    table = export_samples(resolve_model(args.model), args.i, args.lo, args.hi, args.steps, args.digits)
    sys.stdout.write(table.to_csv())
    return 0


def _cmd_list(args) -> int:
    for spec in catalog():
        print(f"{spec.name}\t{spec.kind}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cohrank", description="Exact cohomological rank functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def model_arg(p, many=False):
        if many:
            p.add_argument("--model", action="append", help="model file or catalog name (repeatable)")
        else:
            p.add_argument("--model", required=True, help="model file or catalog name")

    def digits_arg(p):
        p.add_argument("--digits", type=int, default=12, help="decimal digits (default 12)")

    p = sub.add_parser("verify", help="run the verification suites")
    model_arg(p, many=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="evaluate h^i at a rational point")
    model_arg(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--x", type=_rat_arg, required=True)
    digits_arg(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("critical", help="list critical points and indices")
    model_arg(p)
    digits_arg(p)
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("classify", help="IT0 / MRegular / GV / NotGV at a point")
    model_arg(p)
    p.add_argument("--x", type=_rat_arg, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("sample", help="CSV table of h^i on a grid")
    model_arg(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--from", dest="lo", type=_rat_arg, required=True)
    p.add_argument("--to", dest="hi", type=_rat_arg, required=True)
    p.add_argument("--steps", type=int, default=10)
    digits_arg(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("list-models", help="names of the built-in models")
    p.set_defaults(func=_cmd_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "digits", 0) < 0:
            raise _UsageError("--digits must be non-negative")
        if getattr(args, "i", 0) < 0:
            raise _UsageError("--i must be non-negative")
        return args.func(args)
    except (_UsageError, ModelFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # bad degree, empty range and similar argument problems
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
