"""Command-line interface: ``net <command> ...``.

Exit codes: 0 success (or every verification check passed), 1 verification
failure, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import NetworkError
from .graph import generate
from .io import read_network, write_network
from .potential import KernelMatrix, green_kernel, kirchhoff_index, resistance_matrix
from .subdivision import green_context, green_subdivision, kirchhoff_subdivision, subdivide
from .verify import verify_network
from .wheel import (
    WheelSpec,
    generic_label_map,
    wheel_green,
    wheel_subdivision_green,
    wheel_subdivision_kirchhoff,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

WHEEL_CHECK_TOL = 1e-8


class VerificationFailed(Exception):
    pass


def format_scalar(x: float) -> str:
    """12 significant digits, trailing zeros kept."""
    return format(x, "#.12g")


def format_matrix(K: KernelMatrix, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "vertices": list(K.labels),
            "matrix": [[float(format_scalar(v)) for v in row] for row in K.matrix],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex", *K.labels])
    for label, row in zip(K.labels, K.matrix):
        writer.writerow([label, *(format_scalar(v) for v in row)])
    return buf.getvalue()


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def cmd_validate(args) -> int:
    net, _ = read_network(args.file)
    print(f"ok: n={net.n} m={net.m}")
    return EXIT_OK


def cmd_green(args) -> int:
    net, _ = read_network(args.file)
    sys.stdout.write(format_matrix(green_kernel(net), args.format))
    return EXIT_OK


def cmd_resistance(args) -> int:
    net, _ = read_network(args.file)
    sys.stdout.write(format_matrix(resistance_matrix(green_kernel(net)), args.format))
    return EXIT_OK


def cmd_kirchhoff(args) -> int:
    net, _ = read_network(args.file)
    print(format_scalar(kirchhoff_index(green_kernel(net))))
    return EXIT_OK


def cmd_subdivide(args) -> int:
    net, splits = read_network(args.file)
    text = write_network(subdivide(net, splits).derived)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return EXIT_OK


def cmd_subdiv_green(args) -> int:
    net, splits = read_network(args.file)
    sub = subdivide(net, splits)
    G = green_kernel(net)
    sys.stdout.write(format_matrix(green_subdivision(sub, G, green_context(sub, G)), args.format))
    return EXIT_OK


def cmd_subdiv_kirchhoff(args) -> int:
    net, splits = read_network(args.file)
    sub = subdivide(net, splits)
    print(format_scalar(kirchhoff_subdivision(sub, green_kernel(net))))
    return EXIT_OK


def cmd_verify(args) -> int:
    net, splits = read_network(args.file)
    report = verify_network(net, splits, tol=args.tol)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(report.text())
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_wheel(args) -> int:
    spec = WheelSpec(args.n, args.a, args.c)
    net = generate("wheel", spec.n, spec.a, spec.c)
    G = green_kernel(net)
    if not args.subdivide:
        K = wheel_green(spec)
        dev = K.max_abs_diff(G)
    else:
        K = wheel_subdivision_green(spec)
        mapping = generic_label_map(spec.n)
        oracle = green_kernel(subdivide(net).derived)
        dev = KernelMatrix([mapping[x] for x in K.labels], K.matrix).max_abs_diff(oracle)
        kirchhoff = wheel_subdivision_kirchhoff(spec)
        k_oracle = kirchhoff_index(oracle)
        dev = max(dev, abs(kirchhoff - k_oracle) / abs(k_oracle))
    if not dev <= WHEEL_CHECK_TOL:
        raise VerificationFailed(
            f"closed form deviates from the direct computation by {dev:.3e} "
            f"(limit {WHEEL_CHECK_TOL:.0e})"
        )
    out = format_matrix(K, args.format)
    if args.subdivide:
        if args.format == "json":
            doc = json.loads(out)
            doc["kirchhoff"] = float(format_scalar(kirchhoff))
            out = json.dumps(doc, indent=2) + "\n"
        else:
            out += f"kirchhoff,{format_scalar(kirchhoff)}\n"
    sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="net",
        description="Green kernels, effective resistances and Kirchhoff indices "
        "of networks and their subdivisions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that a network document is valid")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("green", help="Green kernel of the network")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("resistance", help="all-pairs effective resistances")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("kirchhoff", help="Kirchhoff index")
    p.add_argument("file")
    p.set_defaults(func=cmd_kirchhoff)

    p = sub.add_parser("subdivide", help="write the subdivided network as a document")
    p.add_argument("file")
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("subdiv-green", help="closed-form Green kernel of the subdivision")
    p.add_argument("file")
    _add_format(p)
    p.set_defaults(func=cmd_subdiv_green)

    p = sub.add_parser("subdiv-kirchhoff", help="closed-form Kirchhoff index of the subdivision")
    p.add_argument("file")
    p.set_defaults(func=cmd_subdiv_kirchhoff)

    p = sub.add_parser("verify", help="check every closed form against direct computation")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wheel", help="closed-form kernels of the wheel W_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=1.0, help="spoke conductance")
    p.add_argument("--c", type=float, default=1.0, help="rim conductance")
    p.add_argument("--subdivide", action="store_true",
                   help="standard subdivision kernel plus its Kirchhoff index")
    _add_format(p)
    p.set_defaults(func=cmd_wheel)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NetworkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
