"""Command-line interface.

Exit status: 0 = completed, 1 = usage or input error, 2 = an oracle
cross-check disagreed.  All output has a stable line format and identical
invocations (including seeds) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import random
import sys as _sys
from fractions import Fraction
from typing import Optional

from . import membership, model, oracle, unbounded
from .exact import Q, Vector
from .model import (FIRST_CLASS, ORDINARY, ParsedSystem, QuantifierAssignment,
                    SystemFormatError, parse_rational, parse_system)


class UsageError(Exception):
    pass


def _load(path: str) -> ParsedSystem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_system(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except SystemFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _vector(text: str, n: int, what: str) -> Vector:
    try:
        v = [parse_rational(t) for t in text.split(",")]
    except SystemFormatError as exc:
        raise UsageError(f"bad {what} vector: {exc}") from None
    if len(v) != n:
        raise UsageError(f"{what} vector must have {n} entries, got {len(v)}")
    return v


def _fmt(v) -> str:
    return ",".join(str(x) for x in v)


def cmd_check(args) -> int:
    parsed = _load(args.file)
    sys = parsed.system
    x = _vector(args.point, sys.n, "point")
    which = args.set
    if which == "auto":
        if parsed.tolerable is not None:
            which = "tolerable"
        elif parsed.quant.forall_set:
            which = "ae"
        else:
            which = "united"
    if which == "united":
        ok, cert = membership.member_united(sys, x)
    elif which == "ae":
        ok, cert = membership.member_ae(sys, parsed.quant, x)
    elif which == "tolerable":
        if parsed.tolerable is None:
            raise UsageError("system has no tolerable form "
                             "(existential parameters touch the matrix)")
        ok, cert = membership.member_tolerable(parsed.tolerable, x)
    else:
        raise UsageError(f"unknown set {which!r}")
    if ok:
        names = [p.name for p in sys.params]
        if which == "tolerable":
            combined, _ = parsed.tolerable.combined()
            names = [p.name for p in combined.params]
        pairs = " ".join(f"{nm} = {pv}" for nm, pv in zip(names, cert.witness_p))
        print(f"MEMBER (witness {pairs})" if pairs else "MEMBER (no parameters)")
    else:
        print(f"NOT A MEMBER (separator w = {_fmt(cert.separator.w)})")
    return 0


def cmd_kernel(args) -> int:
    parsed = _load(args.file)
    sys = parsed.system
    y = _vector(args.dir, sys.n, "direction")
    if parsed.quant.forall_set:
        ok, cert = membership.member_ae_kernel(sys, parsed.quant, y)
    else:
        ok, cert = membership.member_kernel(sys, y)
    if ok:
        print(f"IN KERNEL (witness p = {_fmt(cert.witness_p)})")
    else:
        print(f"NOT IN KERNEL (separator w = {_fmt(cert.separator.w)})")
    if args.strict:
        if parsed.quant.forall_set:
            strict, eps = membership.strict_kernel_member_ae(sys, parsed.quant, y)
        else:
            strict, eps = membership.strict_kernel_member(sys, y)
        print(f"STRICT: {'yes' if strict else 'no'} (eps = {eps})")
    return 0


def cmd_unbounded(args) -> int:
    parsed = _load(args.file)
    sys = parsed.system
    y = _vector(args.dir, sys.n, "direction")
    quant = parsed.quant if parsed.quant.forall_set else None
    verdict = unbounded.decide_unbounded(sys, quant, y, budget=args.budget,
                                         seed=args.seed)
    print(f"{verdict.status.value} by {verdict.rule.value}: {verdict.detail}")
    ev = verdict.evidence
    if isinstance(ev, unbounded.ProbeReport):
        exit_str = "none" if ev.first_exit is None else str(ev.first_exit)
        print(f"probe: base = {_fmt(ev.base_point)}, alphas tested = "
              f"{len(ev.alphas_tested)}, first exit = {exit_str}")
    elif isinstance(ev, list) and ev and isinstance(ev[0], unbounded.ProbeReport):
        for rep in ev:
            exit_str = "none" if rep.first_exit is None else str(rep.first_exit)
            print(f"probe: base = {_fmt(rep.base_point)}, first exit = {exit_str}")
    return 0


def cmd_classify(args) -> int:
    parsed = _load(args.file)
    flags = model.classify(parsed.system, parsed.quant)
    print(str(flags))
    if args.decompose:
        from . import cones
        try:
            dec = cones.decompose(parsed.system)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(f"decomposition: {dec.mode}, {len(dec.pieces)} pieces")
        for piece in dec.pieces:
            print(f"piece {piece.sign}: "
                  f"{'nonempty' if piece.nonempty else 'empty'}, "
                  f"{len(piece.solution_piece.C)} solution rows, "
                  f"{len(piece.kernel_piece.C)} kernel rows")
    return 0


def cmd_raster(args) -> int:
    parsed = _load(args.file)
    sys = parsed.system
    parts = args.window.split(",")
    if len(parts) != 4:
        raise UsageError("--window must be x_lo,x_hi,y_lo,y_hi")
    window = tuple(parse_rational(t) for t in parts)
    which = args.set.upper()
    try:
        csv = oracle.raster_csv(sys, parsed.quant, window, args.res, which,
                                parsed.tolerable)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(csv)
    print(f"wrote {args.res}x{args.res} raster to {args.out}")
    return 0


def cmd_verify(args) -> int:
    parsed = _load(args.file)
    sys = parsed.system
    rng = random.Random(args.seed)
    flags = model.classify(sys, parsed.quant)

    points: list[Vector] = []
    if sys.m == sys.n:
        points.extend(oracle.sample_solution_cloud(sys, grid_per_param=3))
    while len(points) < args.samples:
        points.append([Q(rng.randint(-6, 6), rng.randint(1, 3))
                       for _ in range(sys.n)])
    points = points[: args.samples]

    disagreements = 0
    lines = []
    for x in points:
        got = membership.member_united(sys, x)[0]
        want = oracle.fm_member_oracle(sys, x)
        checks = [("fm", want)]
        if ORDINARY in flags:
            from .cones import oettli_prager_member
            checks.append(("oettli-prager", oettli_prager_member(sys, x)))
        if FIRST_CLASS in flags:
            checks.append(("first-class", membership.member_first_class(sys, x)))
        if parsed.quant.forall_set:
            ae = membership.member_ae(sys, parsed.quant, x)[0]
            ae_want = oracle.ae_vertex_oracle(sys, parsed.quant, x)
            checks.append(("ae-vertex-vs-ae", ae == ae_want))
            status = "ok" if ae == ae_want else "DISAGREE"
        bad = [name for name, val in checks if val != got and name != "ae-vertex-vs-ae"]
        bad += [name for name, val in checks if name == "ae-vertex-vs-ae" and not val]
        if bad:
            disagreements += 1
            lines.append(f"point {_fmt(x)}: member_united = {got}, "
                         f"disagree: {', '.join(bad)}")
        else:
            lines.append(f"point {_fmt(x)}: member_united = {got}, all oracles agree")
    for line in lines:
        print(line)
    print(f"verify: {len(points)} points, {disagreements} disagreements")
    return 2 if disagreements else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pilsys",
        description="Exact analyzer for linear interval parametric systems")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="membership of a point")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.add_argument("--set", default="auto",
                   choices=["auto", "united", "ae", "tolerable"])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kernel", help="kernel membership of a direction")
    p.add_argument("file")
    p.add_argument("--dir", required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("unbounded", help="unbounded-direction verdict")
    p.add_argument("file")
    p.add_argument("--dir", required=True)
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_unbounded)

    p = sub.add_parser("classify", help="structural class flags")
    p.add_argument("file")
    p.add_argument("--decompose", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("raster", help="rasterize a 2-D solution set to CSV")
    p.add_argument("file")
    p.add_argument("--window", required=True)
    p.add_argument("--res", type=int, required=True)
    p.add_argument("--set", default="UNITED",
                   choices=["UNITED", "AE", "TOLERABLE", "KERNEL"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_raster)

    p = sub.add_parser("verify", help="oracle cross-check report")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
