"""Command-line front end: ``spinring <subcommand> [options]``.

Subcommands: spectrum, scan, crossing, jump, surface, table1, correlators.
Couplings come from ``--config FILE`` (``key = value`` lines with keys
n_sites, j0, j1, j2 or j) overridden by flags. Floats are written with 12
significant digits; JSON documents carry ``"schema": 1``.

CSV headers:
  scan         J,E_g,E_1st,momentum,C1..C{N/2},C_T
  surface      theta,phi,d_alpha1..d_alpha{N/2},d_total
  correlators  alpha,sigma_dot_sigma,concurrence
  table1       n_sites,j_c,quantity,computed,reference,deviation
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from .concurrence import CONVENTIONS, DEFAULT_CONVENTION, alpha_concurrences, concurrence_from_correlator, jump_between_sectors
from .errors import SpinRingError
from .hamiltonian import CouplingParams
from .mg_analytics import difference_surface, mg_ground_states
from .observables import bond_sums, correlator_report
from .spectra import default_threads, lowest_levels, sector_ground
from .sweep import (
    B_BRACKET,
    REFERENCE_JUMPS,
    grid_from_spec,
    locate_crossing,
    locate_point_b,
    scan,
    table1,
)

SCHEMA = 1
SIG_DIGITS = 12
log = logging.getLogger("spinring")


def fmt(x) -> str:
    return format(float(x), f".{SIG_DIGITS}g")


def _round(obj):
    """Floats -> 12 significant digits, recursively, for JSON output."""
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_round(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def to_json(command: str, payload: dict) -> str:
    doc = {"schema": SCHEMA, "command": command}
    doc.update(payload)
    return json.dumps(_round(doc), indent=2) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" in line:
                key, value = line.split("=", 1)
            else:
                parts = line.split(None, 1)
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value'")
                key, value = parts
            key = key.strip().replace("-", "_")
            if key not in ("n_sites", "j0", "j1", "j2", "j"):
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = int(value) if key == "n_sites" else float(value)
    return out


def _pair(text: str):
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return a, b


def _grid_arg(text: str):
    try:
        return grid_from_spec(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")


def _shape_arg(text: str):
    try:
        a, b = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NTHETAxNPHI, got {text!r}")
    if a < 2 or b < 2:
        raise argparse.ArgumentTypeError("surface grid needs at least 2x2 points")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with n_sites, j0, j1, j2 or j")
    common.add_argument("--n-sites", type=int, help="ring length N (even, 4..32)")
    common.add_argument("--j0", type=float, help="nearest-neighbour coupling (default 1.0)")
    common.add_argument("--j", type=float, help="next-nearest-neighbour coupling, sets j1 = j2")
    common.add_argument("--j1", type=float, help="NNN coupling on bonds starting at even sites")
    common.add_argument("--j2", type=float, help="NNN coupling on bonds starting at odd sites")
    common.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION,
                        help=f"C[alpha] summation convention (default {DEFAULT_CONVENTION})")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--out", help="write to PATH instead of stdout")
    common.add_argument("--threads", type=int,
                        help="worker threads (default: $SPINRING_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="spinring", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="lowest levels by sector (JSON)")
    p.add_argument("--levels", type=int, default=4, help="number of levels (default 4)")

    p = sub.add_parser("scan", parents=[common], help="energies, momentum, concurrences vs J/J0")
    p.add_argument("--grid", type=_grid_arg, default=grid_from_spec("0:2:0.01"),
                   help="J/J0 grid lo:hi:step, inclusive (default 0:2:0.01)")

    p = sub.add_parser("crossing", parents=[common], help="bisect a ground-momentum switch (JSON)")
    p.add_argument("--bracket", type=_pair,
                   help="J/J0 bracket lo,hi; default: first switch in %s,%s" % B_BRACKET)

    p = sub.add_parser("jump", parents=[common], help="concurrence jump across a crossing (JSON)")
    p.add_argument("--bracket", type=_pair,
                   help="J/J0 bracket lo,hi; default: first switch in %s,%s" % B_BRACKET)
    p.add_argument("--at-j", type=float,
                   help="evaluate both competing sectors at this J/J0 instead of J_c -/+ eps")

    p = sub.add_parser("surface", parents=[common], help="concurrence-difference surface (CSV)")
    p.add_argument("--point", choices=("A", "B"), default="A")
    p.add_argument("--grid", type=_shape_arg, default=(101, 101),
                   help="NTHETAxNPHI (default 101x101)")

    sub.add_parser("table1", parents=[common],
                   help="point-B jumps for N = 8, 10, 12 against the reference table")

    sub.add_parser("correlators", parents=[common], help="ground-state correlators (CSV)")
    return parser


def resolve_params(args, parser, need_n=True, need_j=True) -> CouplingParams | None:
    cfg = read_config(args.config) if args.config else {}
    n = args.n_sites if args.n_sites is not None else cfg.get("n_sites")
    j0 = args.j0 if args.j0 is not None else cfg.get("j0", 1.0)
    if args.j is not None and (args.j1 is not None or args.j2 is not None):
        parser.error("--j cannot be combined with --j1/--j2")
    if args.j is not None:
        j1 = j2 = args.j
    elif args.j1 is not None or args.j2 is not None:
        j1 = args.j1 if args.j1 is not None else cfg.get("j1", cfg.get("j"))
        j2 = args.j2 if args.j2 is not None else cfg.get("j2", cfg.get("j"))
        if j1 is None or j2 is None:
            parser.error("give both --j1 and --j2")
    elif "j" in cfg:
        j1 = j2 = cfg["j"]
    else:
        j1, j2 = cfg.get("j1"), cfg.get("j2")
    if n is None:
        if need_n:
            parser.error("--n-sites is required")
        return None
    if need_j and (j1 is None or j2 is None):
        parser.error("a coupling is required: --j or --j1/--j2")
    try:
        return CouplingParams(n, j0, 0.0 if j1 is None else j1, 0.0 if j2 is None else j2)
    except (SpinRingError, ValueError) as exc:
        parser.error(str(exc))


def cmd_spectrum(args, params):
    res = lowest_levels(params, args.levels, threads=args.threads)
    levels = [
        {
            "energy": lv.energy,
            "sz": lv.sz_twice / 2,
            "momentum_index": lv.momentum_index,
            "degeneracy_group": lv.degeneracy_group,
        }
        for lv in res.levels
    ]
    if args.format == "csv":
        return to_csv(["energy", "sz", "momentum_index", "degeneracy_group"],
                      [[d["energy"], d["sz"], d["momentum_index"], d["degeneracy_group"]] for d in levels])
    return to_json("spectrum", {"params": _params_dict(params), "levels": levels})


def _params_dict(p: CouplingParams) -> dict:
    return {"n_sites": p.n_sites, "j0": p.j0, "j1": p.j1, "j2": p.j2}


def cmd_scan(args, params):
    pts = scan(params, args.grid, args.convention, threads=args.threads)
    half = params.n_sites // 2
    if args.format == "json":
        return to_json("scan", {
            "params": _params_dict(params),
            "convention": args.convention,
            "points": [
                {
                    "j": p.j_over_j0,
                    "e_ground": p.e_ground,
                    "e_first_excited": p.e_first_excited,
                    "momentum_index": p.ground_momentum,
                    "c_alpha": p.concurrences.per_alpha,
                    "c_total": p.concurrences.total,
                }
                for p in pts
            ],
        })
    header = ["J", "E_g", "E_1st", "momentum"] + [f"C{a}" for a in range(1, half + 1)] + ["C_T"]
    rows = [
        [p.j_over_j0, p.e_ground, p.e_first_excited, p.ground_momentum,
         *map(float, p.concurrences.per_alpha), p.concurrences.total]
        for p in pts
    ]
    return to_csv(header, rows)


def _crossing(args, params, with_jump=True):
    if args.bracket is None:
        return locate_point_b(params, B_BRACKET, args.convention, with_jump=with_jump)
    return locate_crossing(params, args.bracket, args.convention, with_jump=with_jump)


def _jump_dict(jump) -> dict:
    return {
        "j_left": jump.j_left,
        "j_right": jump.j_right,
        "left_momentum": jump.left_momentum,
        "right_momentum": jump.right_momentum,
        "delta_alpha": jump.delta_per_alpha,
        "delta_total": jump.delta_total,
        "left_c_alpha": jump.left.per_alpha,
        "right_c_alpha": jump.right.per_alpha,
        "convention": jump.left.convention,
    }


def _crossing_dict(c) -> dict:
    out = {
        "label": c.label,
        "j_c": c.j_c,
        "left_momentum": c.left_sector.momentum_index,
        "right_momentum": c.right_sector.momentum_index,
        "gap": c.gap,
        "iterations": c.iterations,
    }
    if c.jump is not None:
        out["jump"] = _jump_dict(c.jump)
    return out


def cmd_crossing(args, params):
    c = _crossing(args, params)
    if args.format == "csv":
        return to_csv(["label", "j_c", "left_momentum", "right_momentum", "gap"],
                      [[c.label, c.j_c, c.left_sector.momentum_index, c.right_sector.momentum_index, c.gap]])
    return to_json("crossing", {"params": _params_dict(params), "crossing": _crossing_dict(c)})


def cmd_jump(args, params):
    if args.at_j is None:
        c = _crossing(args, params)
        payload = {"j_c": c.j_c, **_jump_dict(c.jump)}
    else:
        c = _crossing(args, params, with_jump=False)
        jump = jump_between_sectors(params.with_j(args.at_j * params.j0), c.left_sector,
                                    c.right_sector, args.convention)
        payload = {"j_c": c.j_c, "evaluated_at": args.at_j, **_jump_dict(jump)}
    if args.format == "csv":
        half = params.n_sites // 2
        header = ["j_c"] + [f"delta_alpha{a}" for a in range(1, half + 1)] + ["delta_total"]
        return to_csv(header, [[payload["j_c"], *map(float, payload["delta_alpha"]), payload["delta_total"]]])
    return to_json("jump", {"params": _params_dict(params), **payload})


def cmd_surface(args, params):
    n = params.n_sites
    if args.point == "A":
        p = params.with_j(0.5 * params.j0)
        psi1, psi2 = mg_ground_states(n)
    else:
        c = locate_point_b(params, B_BRACKET, args.convention, with_jump=False)
        p = params.with_j(c.j_c)
        psi1 = sector_ground(p, c.left_sector).vector.normalized()
        psi2 = sector_ground(p, c.right_sector).vector.normalized()
    s = difference_surface(psi1, psi2, p, args.grid, args.convention)
    half = n // 2
    if args.format == "json":
        return to_json("surface", {
            "params": _params_dict(p), "point": args.point, "convention": args.convention,
            "theta": s.theta, "phi": s.phi,
            "d_alpha": s.per_alpha, "d_total": s.total,
        })
    header = ["theta", "phi"] + [f"d_alpha{a}" for a in range(1, half + 1)] + ["d_total"]
    rows = []
    for it, t in enumerate(s.theta):
        for ip, ph in enumerate(s.phi):
            rows.append([float(t), float(ph), *map(float, s.per_alpha[:, it, ip]), float(s.total[it, ip])])
    return to_csv(header, rows)


def cmd_table1(args, params):
    sizes = (params.n_sites,) if params is not None else tuple(REFERENCE_JUMPS)
    j0 = params.j0 if params is not None else 1.0
    rows = table1(sizes, args.convention, j0)
    if args.format == "csv":
        out = []
        for r in rows:
            for key, dev in r.deviations().items():
                name = "delta_total" if key == "total" else f"delta_alpha{key}"
                ref = r.reference[key]
                out.append([r.n_sites, r.crossing.j_c, name, ref + dev, ref, dev])
        return to_csv(["n_sites", "j_c", "quantity", "computed", "reference", "deviation"], out)
    payload = []
    for r in rows:
        d = {"n_sites": r.n_sites, "j_c": r.crossing.j_c,
             "left_momentum": r.jump.left_momentum, "right_momentum": r.jump.right_momentum}
        for a, v in enumerate(r.jump.delta_per_alpha, 1):
            d[f"delta_alpha{a}"] = float(v)
        d["delta_total"] = r.jump.delta_total
        d["reference"] = {("delta_total" if k == "total" else f"delta_alpha{k}"): v for k, v in r.reference.items()}
        d["matches_reference"] = [("delta_total" if k == "total" else f"delta_alpha{k}") for k in r.matches_reference()]
        payload.append(d)
    return to_json("table1", {"convention": args.convention, "rows": payload})


def cmd_correlators(args, params):
    g = lowest_levels(params, 1, threads=args.threads).ground
    rep = correlator_report(g.vector)
    conc = alpha_concurrences(g.vector, "site-average")
    if args.format == "json":
        h0, h = bond_sums(g.vector)
        return to_json("correlators", {
            "params": _params_dict(params), "energy": g.energy,
            "momentum_index": g.momentum_index,
            "sigma_dot_sigma": rep.g_dot, "concurrence": conc.per_alpha,
            "h0": h0, "h": h, "pair_sum": rep.pair_sum,
        })
    rows = [
        [int(a), float(x), float(concurrence_from_correlator(x))]
        for a, x in zip(rep.alphas, rep.g_dot)
    ]
    return to_csv(["alpha", "sigma_dot_sigma", "concurrence"], rows)


COMMANDS = {
    "spectrum": (cmd_spectrum, "json", True),
    "scan": (cmd_scan, "csv", False),
    "crossing": (cmd_crossing, "json", False),
    "jump": (cmd_jump, "json", False),
    "surface": (cmd_surface, "csv", False),
    "table1": (cmd_table1, "json", False),
    "correlators": (cmd_correlators, "csv", True),
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func, default_format, need_j = COMMANDS[args.command]
    args.format = args.format or default_format
    if args.threads is None:
        args.threads = default_threads()
    elif args.threads < 1:
        parser.error("--threads must be >= 1")
    if getattr(args, "levels", 1) < 1:
        parser.error("--levels must be >= 1")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        params = resolve_params(args, parser, need_n=args.command != "table1", need_j=need_j)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    try:
        log.info("running %s", args.command)
        text = func(args, params)
    except (SpinRingError, ValueError, ArithmeticError) as exc:
        print(f"spinring {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
