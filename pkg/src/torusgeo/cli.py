"""Command-line front end.

Subcommands:
  analyze    norms + search bound + extremal geodesic, report as JSON
  verify     run every proof sub-claim check; exit 1 on any failure
  sweep      sine-family scaling table (CSV)
  enumerate  canonical coprime directions up to a radius (CSV + density)

Reports are JSON with a fixed key order and shortest round-trip float
formatting, so identical configurations produce byte-identical output.
Exit codes: 0 success / all checks passed, 1 verification failure,
2 I/O error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .extremizer import ExtremalResult, SearchBound, find_extremal, search_bound
from .geodesic import enumerate_directions
from .oracle import run_all_checks
from .spectrum import FieldError, NormReport, SpectralField, norms, parse_field, preset_random, preset_sine

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_IO = 2
EXIT_INVALID_INPUT = 3


class UsageError(Exception):
    """Configuration problems (not input-content problems); exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torusgeo", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"torusgeo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_options(p):
        p.add_argument("-i", "--input", help="field JSON file (exclusive with --preset)")
        p.add_argument("--preset", choices=["sine", "random"], help="built-in test field")
        p.add_argument("--ell", type=int, default=1, help="sine preset frequency (default 1)")
        p.add_argument("--n", type=int, default=6, help="random preset bandlimit (default 6)")
        p.add_argument("--decay", type=float, default=1.0, help="random preset decay (default 1)")
        p.add_argument("--seed", type=int, default=0, help="random preset seed (default 0)")

    def add_common_options(p):
        p.add_argument("--s", type=int, default=2, help="smoothness order (default 2)")
        p.add_argument("-o", "--output", default="-", help="output path ('-' = stdout)")

    p_analyze = sub.add_parser("analyze", help="search bound + extremal geodesic")
    add_input_options(p_analyze)
    add_common_options(p_analyze)
    p_analyze.add_argument("--constant", type=float, default=1.0, help="length-bound prefactor")
    p_analyze.add_argument("--radius", type=float, default=None, help="override the scan radius")
    p_analyze.add_argument(
        "--keep-table", action="store_true", help="write per-direction CSV next to the report"
    )

    p_verify = sub.add_parser("verify", help="run all proof sub-claim checks")
    add_input_options(p_verify)
    add_common_options(p_verify)

    p_sweep = sub.add_parser("sweep", help="sine-family scaling table")
    p_sweep.add_argument("--ell-min", type=int, default=1)
    p_sweep.add_argument("--ell-max", type=int, default=12)
    p_sweep.add_argument("--s", type=int, default=2)
    p_sweep.add_argument("--constant", type=float, default=1.0)
    p_sweep.add_argument("-o", "--output", default="-")

    p_enum = sub.add_parser("enumerate", help="coprime directions up to a radius")
    p_enum.add_argument("--radius", type=float, required=True)
    p_enum.add_argument("-o", "--output", default="-")
    return parser


def _load_field(args) -> tuple[SpectralField, str]:
    """Resolve the single input source; returns (field, source descriptor)."""
    if args.input is not None and args.preset is not None:
        raise UsageError("give exactly one of --input and --preset")
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
        return parse_field(text), args.input
    if args.preset == "sine":
        return preset_sine(args.ell), f"preset:sine(ell={args.ell})"
    if args.preset == "random":
        return (
            preset_random(args.n, args.decay, args.seed),
            f"preset:random(n={args.n},decay={args.decay},seed={args.seed})",
        )
    raise UsageError("no input source: give --input FILE or --preset NAME")


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _input_block(field: SpectralField, source: str) -> dict:
    return {
        "source": source,
        "coefficients": len(field),
        "bandlimit": field.bandlimit,
    }


def _norms_block(nr: NormReport) -> dict:
    return {
        "l2": nr.l2,
        "grad_l2": nr.grad_l2,
        "ratio_n": nr.ratio_n,
        "deriv_l1": {str(s): v for s, v in sorted(nr.deriv_l1.items())},
    }


def _bound_block(bound: SearchBound | None) -> dict | None:
    if bound is None:
        return None
    return {
        "s": bound.s,
        "constant": bound.constant,
        "theorem_radius": bound.theorem_radius,
        "cutoff_radius": bound.cutoff_radius,
        "effective_radius": bound.effective_radius,
    }


def _extremal_block(res: ExtremalResult) -> dict:
    return {
        "direction": [res.geodesic.direction.a, res.geodesic.direction.b],
        "theta": res.geodesic.theta,
        "offset_point": list(res.geodesic.offset_point),
        "value": res.value,
        "length": res.length,
        "scanned": res.scanned,
    }


def _meta_block(config: dict) -> dict:
    return {"version": __version__, "config": config}


def _directions_csv(res: ExtremalResult) -> str:
    lines = ["a,b,length,theta_star,value"]
    for direction, theta, value in res.per_direction or []:
        lines.append(f"{direction.a},{direction.b},{direction.length()!r},{theta!r},{value!r}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    field, source = _load_field(args)
    nr = norms(field, s_max=args.s) if len(field) else NormReport(0.0, 0.0, {}, 0.0)
    bound = None
    if len(field):
        bound = search_bound(field, s=args.s, constant=args.constant, norm_report=nr)
        if args.radius is not None:
            bound = bound.with_radius(args.radius)
    res = find_extremal(field, bound, keep_table=args.keep_table)
    report = {
        "input": _input_block(field, source),
        "norms": _norms_block(nr),
        "bound": _bound_block(bound),
        "extremal": _extremal_block(res),
        "meta": _meta_block(
            {
                "command": "analyze",
                "source": source,
                "s": args.s,
                "constant": args.constant,
                "radius_override": args.radius,
                "keep_table": args.keep_table,
            }
        ),
    }
    _write_text(args.output, json.dumps(report, indent=2) + "\n")
    if args.keep_table:
        if args.output == "-":
            raise UsageError("--keep-table needs -o FILE to place the CSV next to the report")
        csv_path = args.output.rsplit(".", 1)[0] + "_directions.csv"
        _write_text(csv_path, _directions_csv(res))
    return EXIT_OK


def cmd_verify(args) -> int:
    field, source = _load_field(args)
    if len(field) == 0:
        raise FieldError("verification needs a nonempty field")
    report_obj = run_all_checks(field, s=args.s)
    nr = norms(field, s_max=args.s)
    report = {
        "input": _input_block(field, source),
        "norms": _norms_block(nr),
        "verification": {
            "passed": report_obj.all_passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "threshold": c.threshold,
                    "detail": c.detail,
                }
                for c in report_obj.checks
            ],
        },
        "meta": _meta_block({"command": "verify", "source": source, "s": args.s}),
    }
    _write_text(args.output, json.dumps(report, indent=2) + "\n")
    return EXIT_OK if report_obj.all_passed else EXIT_VERIFY_FAILED


def cmd_sweep(args) -> int:
    rows = ["ell,extremal_length,theorem_radius,cutoff_radius,deriv_l1_s,grad_l2,l2"]
    for ell in range(args.ell_min, args.ell_max + 1):
        field = preset_sine(ell)
        nr = norms(field, s_max=args.s)
        bound = search_bound(field, s=args.s, constant=args.constant, norm_report=nr)
        res = find_extremal(field, bound)
        rows.append(
            f"{ell},{res.length!r},{bound.theorem_radius!r},{bound.cutoff_radius!r},"
            f"{nr.deriv_l1[args.s]!r},{nr.grad_l2!r},{nr.l2!r}"
        )
    _write_text(args.output, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    directions = enumerate_directions(args.radius)
    rows = ["a,b,length"]
    for d in directions:
        rows.append(f"{d.a},{d.b},{d.length()!r}")
    # density of coprime pairs among all nonzero lattice points in the
    # canonical half disk (a > 0, or a == 0 and b > 0)
    r2 = int(args.radius * args.radius + 1e-9)
    half_disk = 0
    for a in range(0, math.isqrt(r2) + 1):
        bmax = math.isqrt(r2 - a * a)
        half_disk += bmax if a == 0 else 2 * bmax + 1
    density = len(directions) / half_disk if half_disk else 0.0
    rows.append(f"# coprime_density={density!r} coprime={len(directions)} half_disk={half_disk}")
    _write_text(args.output, "\n".join(rows) + "\n")
    return EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "enumerate": cmd_enumerate,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
