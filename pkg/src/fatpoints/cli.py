"""Command-line entry point.

Exit codes: 0 means the containment holds or every claim matched, 1 means a
containment fails or a claim was refuted, 2 means an operational error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .arith import QQ, QQW, CycloElement, format_coefficient
from .ideal import Ideal, containment_witness, graded_dim, ideal_power
from .points import (
    Configuration,
    PointFileError,
    ProjectivePoint,
    dual_hesse_config,
    format_points,
    parse_points_text,
    radical_ideal,
    random_rational_config,
    star_configuration,
    symbolic_power,
)
from .poly import ParseError, Polynomial, RingDescriptor, is_cyclotomic_text, order_from_name
from .verify import DEFAULT_T_VALUES, RunOptions, Status, VerificationReport, run_all

log = logging.getLogger("fatpoints")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- parsing ---------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("degrees must be non-negative")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="Containment of symbolic and ordinary powers of ideals of points in P^2.",
    )
    parser.add_argument("--threads", type=_positive, default=1, help="worker threads for batch reductions")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("verify-hesse", help="reproduce the dual Hesse counterexample")
    p.add_argument("--skip-graded", action="store_true", help="omit the graded-piece claims")
    p.add_argument("--t", type=_int_list, default=list(DEFAULT_T_VALUES), metavar="LIST",
                   help="degrees sampled by the graded claims (default 10,11,12)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--points", type=Path, help="replace the 12-point table (negative controls)")
    p.add_argument("--no-timing", action="store_true", help="omit timings from the output")

    p = sub.add_parser("check", help="decide whether I^(m) is contained in I^r")
    p.add_argument("--points", type=Path, required=True)
    p.add_argument("--m", type=_positive, required=True, help="symbolic power")
    p.add_argument("--r", type=_positive, required=True, help="ordinary power")

    p = sub.add_parser("gb", help="reduced Groebner basis of an ideal file")
    p.add_argument("--ideal", type=Path, required=True)
    p.add_argument("--order", default="grevlex", choices=("lex", "grevlex"))
    p.add_argument("--vars", default="x,y,z", help="comma-separated ring variables")

    p = sub.add_parser("hilbert", help="graded dimensions of a power of a point ideal")
    p.add_argument("--points", type=Path, required=True)
    p.add_argument("--symbolic", action="store_true", help="use the symbolic power I^(M)")
    p.add_argument("--power", type=_positive, default=1, metavar="M")
    p.add_argument("--t", type=_int_list, required=True, metavar="LIST")

    p = sub.add_parser("gen", help="write a point file")
    gen = p.add_subparsers(dest="family", required=True, metavar="FAMILY")
    g = gen.add_parser("star", help="pairwise intersections of S general lines")
    g.add_argument("--lines", type=_positive, required=True, metavar="S")
    g = gen.add_parser("random", help="random rational points")
    g.add_argument("--count", type=_positive, required=True, metavar="K")
    g.add_argument("--seed", type=_nonnegative, required=True, metavar="N")
    gen.add_parser("hesse", help="the 12 points of the dual Hesse configuration")
    for g in gen.choices.values():
        g.add_argument("--out", type=Path, required=True)
        g.add_argument("--force", action="store_true", help="overwrite an existing file")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse and validate; raises ``UsageError`` for problems argparse cannot see."""
    args = build_parser().parse_args(argv)
    for name in ("points", "ideal"):
        path = getattr(args, name, None)
        if path is not None and not path.is_file():
            raise UsageError(f"--{name}: no such file: {path}")
    if args.command == "verify-hesse" and any(t < 10 for t in args.t):
        raise UsageError("--t values must be >= 10")
    if args.command == "gen" and args.family == "star" and args.lines < 2:
        raise UsageError("--lines must be at least 2")
    return args


def parse_points_file(path: Path) -> Configuration:
    return parse_points_text(Path(path).read_text(encoding="utf-8"))


def parse_ideal_file(path: Path, variables: Sequence[str]) -> Ideal:
    """One generator per line; ``#`` comments; blank lines ignored; ``w`` selects QQ(w)."""
    lines = [line.split("#", 1)[0].strip() for line in Path(path).read_text(encoding="utf-8").splitlines()]
    field_ = QQW if any(is_cyclotomic_text(line) for line in lines) else QQ
    ring = RingDescriptor(tuple(variables), field_)
    gens = []
    for lineno, line in enumerate(lines, 1):
        if not line:
            continue
        try:
            gens.append(ring.parse(line))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    return Ideal(ring, gens)


# -- reports ---------------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, Polynomial):
        return value.format()
    if isinstance(value, CycloElement) or type(value).__name__ == "mpq":
        return format_coefficient(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def report_to_dict(report: VerificationReport, timing: bool = True) -> dict:
    claims = []
    for c in report.claims:
        rec = {
            "claim_id": c.claim_id,
            "status": c.status.value,
            "expected": c.expected.value,
            "certificate": _jsonable(c.certificate),
            "detail": c.detail,
        }
        if timing:
            rec["elapsed_ms"] = round(c.elapsed * 1000, 1)
        claims.append(rec)
    return {
        "overall": report.overall,
        "vacuous": not report.claims,
        "claims": claims,
        "notes": list(report.notes),
    }


def _cert_lines(cert) -> list[str]:
    if cert is None:
        return []
    if isinstance(cert, Polynomial):
        return [cert.format()]
    if isinstance(cert, (list, tuple)) and all(isinstance(p, Polynomial) for p in cert):
        return [p.format() for p in cert]
    if isinstance(cert, dict):
        return [f"{k}: {json.dumps(_jsonable(v))}" for k, v in cert.items()]
    return [str(_jsonable(cert))]


def emit_report(report: VerificationReport, fmt: str = "text", timing: bool = True) -> str:
    if fmt == "structured":
        return json.dumps(report_to_dict(report, timing), indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    out = []
    for c in report.claims:
        line = f"[{c.status.value}] {c.claim_id}"
        if c.expected != Status.VERIFIED:
            line += f" (expected {c.expected.value})"
        if timing:
            line += f"  [{c.elapsed * 1000:.0f} ms]"
        out.append(line)
        if c.detail:
            out.append(f"    {c.detail}")
        for cl in _cert_lines(c.certificate):
            out.append(f"    certificate: {cl}")
    for note in report.notes:
        out.append(f"note: {note}")
    if not report.claims:
        out.append("WARNING: no claims were run")
        out.append("OVERALL: VERIFIED (vacuous)")
    else:
        out.append(f"OVERALL: {'VERIFIED' if report.overall else 'REFUTED'}")
    return "\n".join(out) + "\n"


# -- commands --------------------------------------------------------------------

def run_verify(args) -> int:
    config = parse_points_file(args.points) if args.points else None
    if config is not None and config.field != QQW:
        config = Configuration(tuple(ProjectivePoint(p.coords, QQW) for p in config), QQW)
    options = RunOptions(skip_graded=args.skip_graded, t_values=args.t, config=config)
    report = run_all(options)
    sys.stdout.write(emit_report(report, args.format, timing=not args.no_timing))
    return EXIT_OK if report.overall else EXIT_FAIL


def run_check(args) -> int:
    config = parse_points_file(args.points)
    sym = symbolic_power(config, args.m)
    ordinary = ideal_power(radical_ideal(config), args.r)
    witness = containment_witness(ordinary, sym, threads=args.threads)
    print(f"points: {len(config)} over {config.field!r}")
    print(f"I^({args.m}) generators: {len(sym.generators)}; I^{args.r} generators: {len(ordinary.generators)}")
    if witness is None:
        print(f"HOLDS: I^({args.m}) is contained in I^{args.r}")
        return EXIT_OK
    g, r = witness
    print(f"FAILS: I^({args.m}) is not contained in I^{args.r}")
    print(f"witness: {g.format()}")
    print(f"remainder: {r.format()}")
    return EXIT_FAIL


def run_gb(args) -> int:
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    ideal = parse_ideal_file(args.ideal, variables)
    gb = ideal.groebner(order_from_name(args.order))
    for g in gb:
        print(g.format(gb.order))
    return EXIT_OK


def run_hilbert(args) -> int:
    config = parse_points_file(args.points)
    if args.symbolic:
        ideal = symbolic_power(config, args.power)
        label = f"I^({args.power})"
    else:
        ideal = ideal_power(radical_ideal(config), args.power)
        label = f"I^{args.power}"
    for t in args.t:
        print(f"dim {label}_{t} = {graded_dim(ideal, t)}")
    return EXIT_OK


def run_gen(args) -> int:
    out: Path = args.out
    if out.exists() and not args.force:
        raise UsageError(f"{out} exists; pass --force to overwrite")
    if args.family == "star":
        config = star_configuration(args.lines)
        header = [f"star configuration of {args.lines} lines x + i*y + i^2*z, i = 1..{args.lines}"]
    elif args.family == "random":
        config = random_rational_config(args.count, args.seed)
        header = [f"{args.count} random rational points, seed {args.seed}"]
    else:
        config = dual_hesse_config()
        header = ["dual Hesse configuration, w a primitive cube root of unity"]
    out.write_text(format_points(config, header), encoding="utf-8")
    print(f"wrote {len(config)} points to {out}")
    return EXIT_OK


COMMANDS = {
    "verify-hesse": run_verify,
    "check": run_check,
    "gb": run_gb,
    "hilbert": run_hilbert,
    "gen": run_gen,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    except UsageError as exc:
        print(f"fatpoints: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PointFileError, ParseError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"fatpoints: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # keep the exit-code contract total
        log.debug("unexpected failure", exc_info=True)
        print(f"fatpoints: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
