"""Command line interface: run tests on CSV data, simulate grids, calibrate boxes.

Exit codes: 0 success, 2 input/data error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .descriptive import GroupedSample
from .dirichlet import DirichletParams, calibrate_box
from .distributions import Distribution
from .errors import NumericError
from .homogeneity import ALL_METHODS, BootstrapConfig, TestResult, run_all
from .rng import stream
from .simulation import CellEstimate, ExperimentConfig, run_grid

__all__ = ["main"]

_CONFIG_KEYS = {"distribution", "sizes", "variances", "alpha", "replications", "bootstrap_b", "seed", "tests"}
_CONFIG_REQUIRED = ("distribution", "sizes", "variances")


def _read_grouped_csv(path: str) -> tuple[list[str], GroupedSample]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["group", "value"]:
            raise ValueError(f"{path}: expected header 'group,value', got {header}")
        values: dict[str, list[float]] = {}
        order: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            label = row[0].strip()
            try:
                value = float(row[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: value {row[1]!r} is not a number") from None
            if not math.isfinite(value):
                raise ValueError(f"{path}:{lineno}: value {row[1]!r} is not finite")
            if label not in values:
                values[label] = []
                order.append(label)
            values[label].append(value)
    if len(order) < 2:
        raise ValueError(f"{path}: need at least two distinct groups, found {len(order)}")
    for label in order:
        if len(values[label]) < 2:
            raise ValueError(f"{path}: group {label!r} has fewer than two values")
    return order, GroupedSample([values[label] for label in order])


def _fmt_stat(stat) -> str:
    if hasattr(stat, "__len__"):
        return ";".join(f"{float(v):.6g}" for v in stat)
    return f"{float(stat):.6g}"


def _print_result_table(results: list[TestResult]) -> None:
    rows = [("method", "statistic", "critical", "p-value", "reject")]
    for r in results:
        rows.append(
            (
                r.method,
                _fmt_stat(r.statistic),
                "-" if r.critical_value is None else f"{r.critical_value:.6g}",
                "-" if r.p_value is None else f"{r.p_value:.6g}",
                "yes" if r.reject else "no",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _cmd_test(args) -> int:
    _, data = _read_grouped_csv(args.data)
    cfg = BootstrapConfig.from_seed(args.seed, b=args.bootstrap_b, pivot_variant=args.pivot_variant)
    results, errors = run_all(data, args.alpha, cfg)
    for name, msg in errors.items():
        print(f"note: {name} not computed: {msg}", file=sys.stderr)
    if not results:
        print("error: no test could run on this data", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps([r.as_dict() for r in results], indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["method", "statistic", "critical_value", "p_value", "reject"])
        for r in results:
            stat = r.statistic
            stat_text = (
                ";".join(repr(float(v)) for v in stat) if hasattr(stat, "__len__") else repr(float(stat))
            )
            writer.writerow(
                [
                    r.method,
                    stat_text,
                    "" if r.critical_value is None else repr(float(r.critical_value)),
                    "" if r.p_value is None else repr(float(r.p_value)),
                    "true" if r.reject else "false",
                ]
            )
    else:
        _print_result_table(results)
    return 0


def _config_from_json(obj, index: int) -> ExperimentConfig:
    where = f"experiment {index}"
    if not isinstance(obj, dict):
        raise ValueError(f"{where}: expected a JSON object")
    unknown = sorted(set(obj) - _CONFIG_KEYS)
    if unknown:
        raise ValueError(f"{where}: unknown key(s) {unknown}")
    missing = [k for k in _CONFIG_REQUIRED if k not in obj]
    if missing:
        raise ValueError(f"{where}: missing required key(s) {missing}")
    try:
        dist = Distribution(obj["distribution"])
    except ValueError:
        raise ValueError(f"{where}: unknown distribution {obj['distribution']!r}") from None
    return ExperimentConfig(
        distribution=dist,
        sizes=tuple(obj["sizes"]),
        variances=tuple(obj["variances"]),
        alpha=obj.get("alpha", 0.05),
        replications=obj.get("replications", 1000),
        bootstrap_b=obj.get("bootstrap_b", 500),
        master_seed=obj.get("seed", 0),
        tests=tuple(obj.get("tests", ALL_METHODS)),
    )


def _load_configs(path: str) -> list[ExperimentConfig]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    items = raw if isinstance(raw, list) else [raw]
    if not items:
        raise ValueError(f"{path}: config file contains no experiments")
    return [_config_from_json(obj, i) for i, obj in enumerate(items)]


def _grid_csv(estimates: list[CellEstimate]) -> str:
    lines = ["distribution,sizes,variances,test,rate,se,errors,seed"]
    for est in estimates:
        c = est.config
        sizes = ";".join(str(s) for s in c.sizes)
        variances = ";".join(repr(v) for v in c.variances)
        for t in c.tests:
            lines.append(
                f"{c.distribution.value},{sizes},{variances},{t},"
                f"{est.rates[t]!r},{est.standard_errors[t]!r},{est.error_counts[t]},{c.master_seed}"
            )
    return "\n".join(lines) + "\n"


def _pivot_markdown(estimates: list[CellEstimate]) -> str:
    blocks: dict[tuple, list[CellEstimate]] = {}
    order: list[tuple] = []
    for est in estimates:
        key = (est.config.sizes, est.config.variances)
        if key not in blocks:
            blocks[key] = []
            order.append(key)
        blocks[key].append(est)
    out: list[str] = []
    for sizes, variances in order:
        ests = blocks[(sizes, variances)]
        dists: list[str] = []
        tests: list[str] = []
        for e in ests:
            name = e.config.distribution.value
            if name not in dists:
                dists.append(name)
            for t in e.config.tests:
                if t not in tests:
                    tests.append(t)
        by_dist = {e.config.distribution.value: e for e in ests}
        out.append(
            f"**n = {', '.join(map(str, sizes))}; variances = {', '.join(f'{v:g}' for v in variances)}**"
        )
        out.append("")
        out.append("| test | " + " | ".join(dists) + " |")
        out.append("|" + "---|" * (len(dists) + 1))
        for t in tests:
            cells = []
            for d in dists:
                e = by_dist.get(d)
                if e is not None and t in e.rates and not math.isnan(e.rates[t]):
                    cells.append(f"{e.rates[t]:.2f}")
                else:
                    cells.append("-")
            out.append(f"| {t} | " + " | ".join(cells) + " |")
        out.append("")
    return "\n".join(out) + "\n"


def _cmd_simulate(args) -> int:
    configs = _load_configs(args.config)
    if args.threads < 1:
        raise ValueError(f"--threads must be >= 1, got {args.threads}")
    estimates = run_grid(configs, threads=args.threads)
    text = _grid_csv(estimates)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.pivot:
        sys.stdout.write(_pivot_markdown(estimates))
    elif not args.out:
        sys.stdout.write(text)
    return 0


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for token in text.split(","):
        token = token.strip()
        try:
            sizes.append(int(token))
        except ValueError:
            raise ValueError(f"--sizes: {token!r} is not an integer") from None
    return sizes


def _cmd_critical(args) -> int:
    params = DirichletParams.from_group_sizes(_parse_sizes(args.sizes))
    if not 0.0 < args.alpha < 1.0:
        raise ValueError(f"--alpha must lie in (0, 1), got {args.alpha}")
    box = calibrate_box(params, args.alpha, args.draws, stream(args.seed))
    print(f"group sizes : {', '.join(str(int(2 * v + 1)) for v in params.nu)}")
    print(f"shapes      : {', '.join(f'{v:g}' for v in params.nu)}")
    print(f"alpha       : {args.alpha:g}")
    print(f"draws       : {args.draws}")
    print()
    print("coordinate        mean          sd        shape offset")
    for i, (m, s, o) in enumerate(zip(box.mean, box.sd, box.shape_offset), start=1):
        print(f"{i:>10}  {m:>+12.6f}  {s:>10.6f}  {o:>+18.6f}")
    print()
    print(f"half-width c : {box.half_width:.6f}  (se {box.half_width_se:.6f})")
    print(f"coverage     : {box.coverage:.6f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equivar",
        description="Tests for homogeneity of variances and a Monte Carlo study harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="run the four variance tests on a CSV of grouped data")
    t.add_argument("data", help="CSV file with header 'group,value'")
    t.add_argument("--alpha", type=float, default=0.05, help="test level (default 0.05)")
    t.add_argument("--bootstrap-b", dest="bootstrap_b", type=int, default=500,
                   help="bootstrap replicates for the resampling tests (default 500)")
    t.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    t.add_argument("--pivot-variant", action="store_true",
                   help="center box-test replicates at the observed statistics")
    t.add_argument("--format", choices=("table", "csv", "json"), default="table")
    t.set_defaults(func=_cmd_test)

    s = sub.add_parser("simulate", help="estimate size/power over a JSON-configured grid")
    s.add_argument("config", help="JSON experiment object or array of objects")
    s.add_argument("--out", "-o", help="write the long-format CSV here (default: stdout)")
    s.add_argument("--threads", type=int, default=1, help="worker processes for the grid")
    s.add_argument("--pivot", action="store_true",
                   help="print markdown tables pivoted by distribution instead of CSV")
    s.set_defaults(func=_cmd_simulate)

    c = sub.add_parser("critical", help="calibrate the exact-normal acceptance box half-width")
    c.add_argument("--sizes", required=True, help="comma-separated group sizes, e.g. 10,10")
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--draws", type=int, default=200_000)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=_cmd_critical)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
