"""Command-line entry point: exact checks, enumerations, and the sampler.

Subcommands: tau, series verify, eliminate, enumerate, verify tutte|cases|
bijections, sample voronoi, moments dirichlet, selftest.  Reports are echoed
to stdout in JSON (default) or CSV; exact rationals are serialised as "p/q"
strings so nothing passes through floating point.  Exit status: 0 on success
and all-checks-pass, 1 on a failed check, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .rationals import rational_str

SCHEMA_VERSION = 1
SEED_ENV_VAR = "MAPCELLS_SEED"


def _emit(report: dict, fmt: str, out_path: str | None = None) -> None:
    report.setdefault("schema_version", SCHEMA_VERSION)
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        rows = report.get("rows") or report.get("values") or []
        if rows and isinstance(rows[0], dict):
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(row.values())
        else:
            for row in rows:
                writer.writerow(row if isinstance(row, (list, tuple)) else [row])
        text = buf.getvalue().rstrip("\n")
    print(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")


def cmd_tau(args) -> int:
    from .constants import t_constant, tau_sequence

    tau = tau_sequence(args.max_g)
    rows = [
        {
            "g": g,
            "tau": rational_str(tau[g]),
            "t": t_constant(g).to_json(),
        }
        for g in range(args.max_g + 1)
    ]
    _emit({"command": "tau", "max_g": args.max_g, "rows": rows}, args.format)
    return 0


def cmd_series_verify(args) -> int:
    from .series import kernel_check, verify_eliminate_identity, verify_tau_ode

    checks = {
        "ode": verify_tau_ode,
        "eliminate": verify_eliminate_identity,
        "kernel": kernel_check,
    }
    residual = checks[args.which](args.order)
    first = residual.first_nonzero()
    report = {
        "command": "series verify",
        "which": args.which,
        "order": args.order,
        "residual_zero": first is None,
    }
    if first is not None:
        report["first_nonzero"] = {"power": first[0], "coefficient": rational_str(first[1])}
    _emit(report, "json")
    return 0 if first is None else 1


def cmd_eliminate(args) -> int:
    from .diffalg import derive_rhs_identity, triangular_solve

    solutions = triangular_solve()
    residual = derive_rhs_identity(solutions)
    report = {
        "command": "eliminate",
        "residual": residual.to_text(),
        "residual_zero": residual.is_zero(),
        "solved": {f"U{i}": sol.to_text() for i, sol in sorted(solutions.items())},
    }
    if args.dump_terms:
        with open(args.dump_terms, "w") as fh:
            for i, sol in sorted(solutions.items()):
                fh.write(f"U{i} = {sol.to_text()}\n")
            fh.write(f"residual = {residual.to_text()}\n")
    print(f"residual: {report['residual']}")
    _emit(report, "json")
    return 0 if residual.is_zero() else 1


def cmd_enumerate(args) -> int:
    from .maps import (
        brute_force_A,
        brute_force_L,
        enumerate_two_face,
        enumerate_unicellular,
        unicellular_genus_counts,
    )

    if args.two_face:
        total = brute_force_A(args.edges, args.genus, None)
        split = {eps: brute_force_A(args.edges, args.genus, eps) for eps in (-1, 0, 1)}
        report = {
            "command": "enumerate",
            "edges": args.edges,
            "genus": args.genus,
            "two_face_marked_count": total,
            "by_label_difference": {str(k): v for k, v in split.items()},
        }
    elif args.labelled:
        report = {
            "command": "enumerate",
            "edges": args.edges,
            "genus": args.genus,
            "labelled_one_face_count": brute_force_L(args.edges, args.genus),
        }
    else:
        counts = unicellular_genus_counts(args.edges)
        count_g = counts[args.genus] if args.genus < len(counts) else 0
        report = {
            "command": "enumerate",
            "edges": args.edges,
            "genus": args.genus,
            "one_face_count": int(count_g),
            "all_genera": [int(c) for c in counts],
        }
    _emit(report, args.format)
    return 0


def cmd_verify_tutte(args) -> int:
    from .maps import verify_tutte_equation

    report = verify_tutte_equation(args.max_edges, args.genus_target)
    report["command"] = "verify tutte"
    _diagnose_cell_ratio(report, args.genus_target - 1)
    _emit(report, "json")
    return 0 if report["ok"] else 1


def _diagnose_cell_ratio(report: dict, g: int) -> None:
    """Float-only diagnostic: A_g(n) / (3/2 n^3 m_g(n)) against 1/6."""
    from .maps import rooted_map_counts

    diag = []
    for row in report["rows"]:
        n = row["n"] - 1
        if n < 1 or n > 4:
            continue
        m = rooted_map_counts(n).get(g, 0)
        if m:
            diag.append({"n": n, "ratio": row["a_term"] / (1.5 * n**3 * m), "limit": 1 / 6})
    report["cell_mass_diagnostic"] = diag


def cmd_verify_cases(args) -> int:
    from .maps import rooted_map_counts
    from .skeletons import verify_case_decomposition

    report = verify_case_decomposition(args.max_edges, genus=2)
    report["command"] = "verify cases"
    diag = []
    for row in report["rows"]:
        n = row["n"]
        if n <= 4 and row["case_iii"]:
            m0 = rooted_map_counts(n).get(0, 0)
            if m0:
                diag.append(
                    {"n": n, "ratio": row["case_iii"] / (n**5 / 4 * 0.25 * m0), "limit": 1 / 60}
                )
    report["three_point_diagnostic"] = diag
    _emit(report, "json")
    return 0 if report["ok"] else 1


def cmd_verify_bijections(args) -> int:
    from .bijections import m3_vs_m3prime_audit, ms_count_check
    from .maps import LabelledMap, enumerate_two_face
    from .bijections import (
        crossed_inequalities,
        leftmost_geodesic,
        miermont_forward,
        source_labels,
    )

    ok = True
    report: dict = {"command": "verify bijections", "genus": args.genus}
    which = args.which or "all"
    if which in ("ms", "all"):
        rows = [ms_count_check(n, args.genus) for n in range(1, args.max_edges + 1)]
        report["marcus_schaeffer"] = rows
        ok &= all(r["ok"] for r in rows)
    if which in ("miermont", "all") and args.genus == 0:
        checked = failures = 0
        for n in range(1, args.max_edges + 1):
            for cmap, c2, labels in enumerate_two_face(n, 0):
                eps = labels[cmap.vertex_of[c2]] - labels[cmap.vertex_of[cmap.root]]
                if abs(eps) > 1:
                    continue
                lm = LabelledMap(cmap, labels)
                q = miermont_forward(lm, [cmap.root, c2])
                try:
                    q.validate(expect_genus=0, expect_faces=n)
                    assert leftmost_geodesic(q, q.marked_edges[0]) == q.sources[0]
                    assert leftmost_geodesic(q, q.marked_edges[1]) == q.sources[1]
                    assert crossed_inequalities(q)
                except AssertionError:
                    failures += 1
                checked += 1
        report["miermont"] = {"checked": checked, "failures": failures}
        ok &= failures == 0
    if which in ("audit", "all") and args.genus == 0:
        rows = [m3_vs_m3prime_audit(n, 0) for n in range(1, min(args.max_edges, 3) + 1)]
        report["m3_audit"] = rows
        ok &= all(r["ok"] for r in rows)
    report["ok"] = bool(ok)
    _emit(report, "json")
    return 0 if ok else 1


def cmd_sample_voronoi(args) -> int:
    from .montecarlo import estimate_moments, per_trial_rows

    report = estimate_moments(
        genus=args.genus,
        n=args.faces,
        k=args.points,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
    )
    payload = report.to_json()
    payload["command"] = "sample voronoi"
    _emit(payload, "json", args.out)
    if args.csv_per_trial:
        rows = per_trial_rows(args.genus, args.faces, args.points, args.trials, args.seed)
        with open(args.csv_per_trial, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["trial", "n_vertices"]
                + [f"count_{i + 1}" for i in range(args.points)]
                + ["ties"]
            )
            for row in rows:
                writer.writerow(
                    [row["trial"], row["n_vertices"], *row["counts"], row["ties"]]
                )
    return 0


def cmd_moments_dirichlet(args) -> int:
    from .montecarlo import dirichlet_moment

    exponents = [int(x) for x in args.exponents.split(",")]
    value = dirichlet_moment(args.points, exponents)
    _emit(
        {
            "command": "moments dirichlet",
            "points": args.points,
            "exponents": exponents,
            "value": rational_str(value),
        },
        "json",
    )
    return 0


def cmd_selftest(args) -> int:
    """Desk-scale acceptance checks; --slow adds the full Monte-Carlo run."""
    from . import selftest

    results = selftest.run(slow=args.slow, threads=args.threads)
    for line in results["lines"]:
        print(line)
    _emit({"command": "selftest", **results}, "json")
    return 0 if results["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mapcells",
        description="exact map combinatorics and random-quadrangulation cell masses",
    )
    default_seed = int(os.environ.get(SEED_ENV_VAR, "1"))
    parser.add_argument(
        "--config",
        help="JSON file with default values for the subcommand flags (flags win)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="the quadratic recurrence constants, exactly")
    p.add_argument("--max-g", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("series", help="truncated-series identity checks")
    series_sub = p.add_subparsers(dest="subcommand", required=True)
    pv = series_sub.add_parser("verify")
    pv.add_argument("--which", choices=("ode", "eliminate", "kernel"), required=True)
    pv.add_argument("--order", type=int, required=True)
    pv.set_defaults(func=cmd_series_verify)

    p = sub.add_parser("eliminate", help="run the differential elimination proof")
    p.add_argument("--derive", action="store_true", default=True)
    p.add_argument("--dump-terms", metavar="FILE")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("enumerate", help="exhaustive map counts")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--labelled", action="store_true")
    p.add_argument("--two-face", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="exact identity audits")
    verify_sub = p.add_subparsers(dest="subcommand", required=True)
    pt = verify_sub.add_parser("tutte")
    pt.add_argument("--max-edges", type=int, required=True)
    pt.add_argument("--genus-target", type=int, required=True)
    pt.set_defaults(func=cmd_verify_tutte)
    pc = verify_sub.add_parser("cases")
    pc.add_argument("--max-edges", type=int, required=True)
    pc.set_defaults(func=cmd_verify_cases)
    pb = verify_sub.add_parser("bijections")
    pb.add_argument("--max-edges", type=int, required=True)
    pb.add_argument("--genus", type=int, default=0)
    pb.add_argument("--which", choices=("ms", "miermont", "audit"))
    pb.set_defaults(func=cmd_verify_bijections)

    p = sub.add_parser("sample", help="Monte-Carlo sampling")
    sample_sub = p.add_subparsers(dest="subcommand", required=True)
    ps = sample_sub.add_parser("voronoi")
    ps.add_argument("--genus", type=int, default=0)
    ps.add_argument("--faces", type=int, required=True)
    ps.add_argument("--trials", type=int, required=True)
    ps.add_argument("--points", type=int, default=2)
    ps.add_argument("--seed", type=int, default=default_seed)
    ps.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ps.add_argument("--out", metavar="FILE.json")
    ps.add_argument("--csv-per-trial", metavar="FILE.csv")
    ps.set_defaults(func=cmd_sample_voronoi)

    p = sub.add_parser("moments", help="exact reference moments")
    moments_sub = p.add_subparsers(dest="subcommand", required=True)
    pm = moments_sub.add_parser("dirichlet")
    pm.add_argument("--points", type=int, required=True)
    pm.add_argument("--exponents", required=True, help="comma-separated, one per point")
    pm.set_defaults(func=cmd_moments_dirichlet)

    p = sub.add_parser("selftest", help="run the desk-scale acceptance suite")
    p.add_argument("--slow", action="store_true", help="include the 1e6-face Monte Carlo")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_selftest)
    return parser


def _apply_config(argv: list[str]) -> list[str]:
    """Inject config-file values right after the subcommand tokens.

    Explicit flags appear later on the line and therefore win (argparse keeps
    the last occurrence for plain store actions).
    """
    idx = argv.index("--config")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2 :]
    with open(path) as fh:
        config = json.load(fh)
    cut = 0
    while cut < len(rest) and not rest[cut].startswith("-"):
        cut += 1
    extra: list[str] = []
    for key, value in config.items():
        flag = "--" + str(key).replace("_", "-")
        if isinstance(value, bool):
            if value:
                extra.append(flag)
        else:
            extra += [flag, str(value)]
    return rest[:cut] + extra + rest[cut:]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if "--config" in argv:
            argv = _apply_config(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)


if __name__ == "__main__":
    raise SystemExit(main())
