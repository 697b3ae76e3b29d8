"""Command-line front end.

Subcommands: bound, property-d, ratio, color, witness.  Exit codes:
0 = certificate matches the expected value, 1 = mismatch, 2 = usage error,
3 = budget exhausted / witness not found.  Reports are byte-identical for
identical configuration and seed regardless of the thread setting.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .coloring import chromatic_witness_search, coset_coloring, verify_coloring
from .constructions import gauge_an, gauge_dn, hexagon_pattern
from .density import verify_an_bound, verify_dn_bound, verify_hexagon_bound
from .geometry import DegenerateCell, Vec, reduce_planar_basis
from .graphs import (
    an_cayley_graph,
    check_property_d,
    dn_cayley_graph,
    hex_pattern_graph,
    hex_step_extent,
    hex_unit_distance_graph,
)
from .independence import (
    counterexample_density_gap,
    cube_certificate,
    ratio_sequence_an,
    ratio_sequence_cube,
)
from . import reports

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from e


def _parse_radii(s: str) -> list:
    return [_parse_fraction(p) for p in s.split(",") if p]


def _parse_basis(s: str):
    parts = [_parse_fraction(p) for p in s.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("basis must be four rationals: b0x,b0y,b1x,b1y")
    return Vec(parts[:2]), Vec(parts[2:])


def _thread_count(args) -> int:
    # accepted for interface compatibility; all computations are sequential,
    # so results never depend on it
    env = os.environ.get("VORONORM_THREADS")
    if args.threads is not None:
        return args.threads
    if env:
        return int(env)
    return os.cpu_count() or 1


def _emit(args, payload: dict, csv_text: str = None) -> None:
    if args.format == "json":
        text = reports.to_json(payload)
    elif args.format == "csv":
        text = csv_text if csv_text is not None else reports.to_text(payload)
    else:
        text = reports.to_text(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pattern_from_args(args):
    b0, b1 = args.basis
    return hexagon_pattern(reduce_planar_basis(b0, b1))


def cmd_bound(args) -> int:
    if args.family == "an":
        cert = verify_an_bound(args.dim)
        payload, csv_text = reports.certificate_dict(cert), reports.certificate_csv(cert)
        ok = cert.matches_expected
    elif args.family == "dn":
        cert = verify_dn_bound(args.dim)
        payload, csv_text = reports.certificate_dict(cert), reports.certificate_csv(cert)
        ok = cert.matches_expected
    elif args.family == "hexagon":
        cert = verify_hexagon_bound(_pattern_from_args(args))
        payload, csv_text = reports.certificate_dict(cert), reports.certificate_csv(cert)
        ok = cert.matches_expected
    else:
        cert = cube_certificate(args.dim)
        payload, csv_text = reports.cube_certificate_dict(cert), None
        ok = cert.matches_expected
    _emit(args, payload, csv_text)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_property_d(args) -> int:
    # default radii: 3/2 suffices for the Cayley graphs (generator extent
    # < 1/2); the hexagon pattern lives at the scale of its basis, so its
    # default derives from the edge step extent
    if args.family == "an":
        g = an_cayley_graph(args.dim, args.radius or Fraction(3, 2))
        gauge = gauge_an(args.dim)
        dim = args.dim
    elif args.family == "dn":
        g = dn_cayley_graph(args.dim, args.radius or Fraction(3, 2))
        gauge = gauge_dn(args.dim)
        dim = args.dim
    else:
        pattern = _pattern_from_args(args)
        radius = args.radius or 7 * hex_step_extent(pattern)
        g = hex_pattern_graph(pattern, radius)
        gauge = pattern.gauge
        dim = 2
    rep = check_property_d(g, gauge, args.mode)
    _emit(args, reports.property_d_dict(rep, args.family, dim))
    return EXIT_OK


def cmd_ratio(args) -> int:
    if args.family == "an":
        if not args.radii:
            raise SystemExit(EXIT_USAGE)
        seq = ratio_sequence_an(args.dim, args.radii, args.budget)
        _emit(args, reports.ratio_sequence_dict(seq), reports.ratio_sequence_csv(seq))
        return EXIT_BUDGET if seq.any_timed_out else EXIT_OK
    if args.family == "cube":
        seq = ratio_sequence_cube(args.dim, args.budget)
        _emit(args, reports.ratio_sequence_dict(seq), reports.ratio_sequence_csv(seq))
        return EXIT_BUDGET if seq.any_timed_out else EXIT_OK
    # counterexample line graph
    rep = counterexample_density_gap(args.n, node_budget=args.budget)
    _emit(args, reports.counterexample_dict(rep))
    return EXIT_OK if rep.proven else EXIT_BUDGET


def cmd_color(args) -> int:
    if args.family == "hexagon":
        coloring = coset_coloring("hexagon", pattern=_pattern_from_args(args))
    else:
        coloring = coset_coloring(args.family, args.dim)
    rep = verify_coloring(coloring, args.samples, args.seed)
    _emit(args, reports.coloring_report_dict(rep))
    return EXIT_OK if rep.holds else EXIT_MISMATCH


def cmd_witness(args) -> int:
    pattern = _pattern_from_args(args)
    g = hex_unit_distance_graph(pattern, args.radius)
    res = chromatic_witness_search(g, pattern.gauge, args.k, node_budget=args.budget or 2_000_000)
    payload = reports.witness_dict(res, g)
    if res.found and args.edges_out:
        with open(args.edges_out, "w", encoding="utf-8") as fh:
            fh.write(reports.witness_edge_list(res, g))
    _emit(args, payload)
    return EXIT_OK if res.found else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="voronorm",
        description="Certificates for density bounds of distance-1-avoiding sets "
        "under parallelohedron norms (cube, A_n, D_n, planar hexagons).",
    )
    p.add_argument("--threads", type=int, default=None, help="worker threads (results never depend on this)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, basis=False, dim=False):
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--threads", type=int, default=None)
        if dim:
            sp.add_argument("--dim", type=int, required=False)
        if basis:
            sp.add_argument("--basis", type=_parse_basis, help="b0x,b0y,b1x,b1y")

    sp = sub.add_parser("bound", help="density bound certificate")
    sp.add_argument("family", choices=("an", "dn", "hexagon", "cube"))
    common(sp, basis=True, dim=True)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("property-d", help="distance-2 implies gauge-1 check")
    sp.add_argument("family", choices=("an", "dn", "hexagon"))
    common(sp, basis=True, dim=True)
    sp.add_argument("--radius", type=_parse_fraction, default=None, help="box radius (family-specific default)")
    sp.add_argument("--mode", choices=("strong", "weak"), default="strong")
    sp.set_defaults(func=cmd_property_d)

    sp = sub.add_parser("ratio", help="independence ratio tables")
    sp.add_argument("family", choices=("an", "cube", "counterexample"))
    common(sp, dim=True)
    sp.add_argument("--radii", type=_parse_radii, default=None)
    sp.add_argument("--n", type=int, default=20, help="counterexample truncation")
    sp.add_argument("--budget", type=int, default=None, help="solver node budget")
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("color", help="coset coloring properness verification")
    sp.add_argument("family", choices=("an", "dn", "hexagon", "cube"))
    common(sp, basis=True, dim=True)
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("witness", help="finite chromatic witness search (hexagon)")
    common(sp, basis=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--radius", type=_parse_fraction, default=Fraction(3))
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--edges-out", help="also write the witness edge list here")
    sp.set_defaults(func=cmd_witness)

    return p


def _validate(args) -> None:
    needs_dim = {"an", "dn", "cube"}
    fam = getattr(args, "family", None)
    if fam in needs_dim and getattr(args, "dim", None) is None:
        raise SystemExit(EXIT_USAGE)
    if fam == "hexagon" and getattr(args, "basis", None) is None:
        raise SystemExit(EXIT_USAGE)
    if getattr(args, "func", None) is cmd_witness and getattr(args, "basis", None) is None:
        raise SystemExit(EXIT_USAGE)
    if fam == "an" and args.dim is not None and args.dim < 2:
        raise SystemExit(EXIT_USAGE)
    if fam == "dn" and args.dim is not None and args.dim < 4:
        raise SystemExit(EXIT_USAGE)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args)
    _thread_count(args)
    try:
        return args.func(args)
    except DegenerateCell as e:
        print(f"error: degenerate basis: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
