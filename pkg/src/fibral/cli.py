"""Command-line front end.

Exit status: 0 success, 1 semantic failure (validation, verification,
hypothesis violations), 2 I/O or usage errors (including unreadable
documents).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .avoidance import AvoidanceError, ProjectivePoint, all_points, find_avoiding_form
from .clearing import DEFAULT_MAX_WIDTH, ClearingError, prove_theorem
from .exact import format_rational
from .fibers import FiberTypeError, make_fiber, surface_from_fibers
from .model import SurfaceFormatError, fiber_to_dict, load_surface, serialize_surface
from .replay import replay_certificate
from .validation import validate_surface
from .witness import WitnessError, synthesize_witness, verify_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror or exc}") from None


def _surface(path: str):
    text = _read(path)
    try:
        return load_surface(text)
    except SurfaceFormatError as exc:
        raise _Usage(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise _Usage(f"cannot write {out}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


def run_validate(args) -> int:
    s = _surface(args.surface)
    report = validate_surface(s)
    print(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_choices(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise _Usage(f"--choice expects place=component, got {item!r}")
        v, c = item.split("=", 1)
        out[v.strip()] = c.strip()
    return out


def run_synthesize(args) -> int:
    s = _surface(args.surface)
    report = validate_surface(s)
    if not report.ok:
        print(report.format(), file=sys.stderr)
        return EXIT_FAIL
    choice = {v: s.fiber(v).component_ids[0] for v in s.reducible_places}
    given = _parse_choices(args.choice)
    unknown = set(given) - set(choice)
    if unknown:
        print(f"error: --choice names non-reducible or unknown places {sorted(unknown)}", file=sys.stderr)
        return EXIT_FAIL
    choice.update(given)
    try:
        w = synthesize_witness(s, choice, args.n)
    except WitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    check = verify_witness(s, w)
    print(check.format(), file=sys.stderr)
    _emit(json.dumps(w.to_dict(s), indent=2) + "\n", args.out)
    return EXIT_OK if check.ok else EXIT_FAIL


def run_clear(args) -> int:
    s = _surface(args.surface)
    try:
        cert = prove_theorem(s, max_width=args.max_width)
    except ClearingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(cert.to_json(s), args.out)
    print(
        f"surface {s.name}: final degree {format_rational(cert.degree)}, "
        f"recursion width {cert.recursion_width}, places cleared {list(cert.places_cleared)}",
        file=sys.stderr,
    )
    return EXIT_OK


def run_verify(args) -> int:
    s = _surface(args.surface)
    try:
        cert = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise _Usage(f"{args.certificate}: line {exc.lineno}: {exc.msg}") from None
    report = replay_certificate(s, cert)
    if report.ok:
        print("OK " + "; ".join(report.messages))
        return EXIT_OK
    print(f"FAIL at {report.divergence}")
    return EXIT_FAIL


def run_gen_fiber(args) -> int:
    try:
        f = make_fiber(args.type, args.n, args.place_id)
    except FiberTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.surface:
        text = serialize_surface(surface_from_fibers(args.name or f"{args.type}-surface", [f]))
    else:
        text = json.dumps(fiber_to_dict(f), indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def run_avoid(args) -> int:
    try:
        if args.points:
            raw = json.loads(_read(args.points))
            pts = [ProjectivePoint(args.q, tuple(int(x) for x in p)) for p in raw]
        else:
            pts = all_points(args.q, args.m)
        f = find_avoiding_form(args.q, args.m, pts)
    except json.JSONDecodeError as exc:
        raise _Usage(f"{args.points}: {exc.msg}") from None
    except AvoidanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {
        "q": args.q,
        "m": args.m,
        "degree": f.degree,
        "form": str(f),
        "coefficients": [[list(e), c] for e, c in sorted(f.coefficients.items(), reverse=True)],
    }
    print(json.dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibral", description="Exact divisor clearing on fibered arithmetic surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a surface document")
    p.add_argument("surface")
    p.set_defaults(func=run_validate)

    p = sub.add_parser("synthesize", help="build and check one witness")
    p.add_argument("surface")
    p.add_argument("--choice", action="append", metavar="PLACE=COMPONENT")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=run_synthesize)

    p = sub.add_parser("clear", help="clear all vertical parts and write a certificate")
    p.add_argument("surface")
    p.add_argument("--out")
    p.add_argument("--max-width", type=int, default=DEFAULT_MAX_WIDTH)
    p.set_defaults(func=run_clear)

    p = sub.add_parser("verify", help="replay a certificate against its surface")
    p.add_argument("surface")
    p.add_argument("certificate")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("gen-fiber", help="emit a standard fiber (I_n or I0*)")
    p.add_argument("--type", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--place-id", default="v")
    p.add_argument("--surface", action="store_true", help="wrap the fiber in a full surface document")
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=run_gen_fiber)

    p = sub.add_parser("avoid", help="find a form avoiding points of P^m(F_q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--points", help="JSON list of coordinate lists (default: all points)")
    p.set_defaults(func=run_avoid)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
