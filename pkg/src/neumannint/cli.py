"""Command-line front end.

Subcommands
-----------
table {1|2|3}   re-evaluate every row of one embedded reference table
                through the fast path and compare against the certified
                reference values; exit nonzero if any converged row
                deviates from the reference mantissa by more than 1e-13.
sweep           cartesian parameter sweep over (mu, p, sigma, alpha) for L
                or (mu, p, sigma, alpha1, alpha2) for W; divergence of a
                series is recorded as data, never a failure.
bench           time the fast path over a table grid; optionally compare
                against the oracle's cost on a few points.

Reports serialize to JSON or CSV.  The data section of either format is
byte-identical between runs with the same inputs; wall-clock timings live
in a separate timing section (JSON) or a trailing column (CSV) and are the
only fields allowed to differ.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import statistics
import sys
from dataclasses import dataclass, field
from time import perf_counter

from .lmu import l_general, l_large_order
from .oracle import oracle_L, oracle_W, oracle_w_float
from .refdata import load_table
from .series import ExpansionSettings
from .wmu import WParams, w_large_order, w_sigma

# Matching digits are -log10 of the relative deviation; a deviation of
# exactly zero is reported as this cap (float64 cannot resolve more).
MATCHING_DIGITS_CAP = 330.0

TABLE_EXIT_TOL = 1e-13

_PARAM_KEYS = ("quantity", "table", "p", "sigma", "alpha", "alpha1", "alpha2", "mu")
_FIELD_KEYS = ("value", "oracle_value", "matching_digits", "terms_used", "converged")


def bracket_format(x: float) -> str:
    """15 significant digits with a bracketed signed exponent."""
    if not math.isfinite(x):
        return str(x)
    if x == 0.0:
        return "0"
    mant, _, exp = f"{x:.14e}".partition("e")
    return f"{mant}[{int(exp):+03d}]"


def matching_digits(value: float, reference: float) -> float:
    """-log10 of the relative deviation from `reference`, floored at 0."""
    if not (math.isfinite(value) and math.isfinite(reference)):
        return 0.0
    if reference == 0.0:
        return MATCHING_DIGITS_CAP if value == 0.0 else 0.0
    rel = abs(value - reference) / abs(reference)
    if rel == 0.0:
        return MATCHING_DIGITS_CAP
    return max(0.0, min(-math.log10(rel), MATCHING_DIGITS_CAP))


def _feq(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return a == b or (math.isnan(a) and math.isnan(b))
    return a == b


@dataclass
class ReportRow:
    """One evaluated parameter point."""

    params: dict
    value: float
    oracle_value: float | None
    matching_digits: float | None
    terms_used: int
    converged: bool
    wall_time: float

    def __eq__(self, other):
        if not isinstance(other, ReportRow):
            return NotImplemented
        if set(self.params) != set(other.params):
            return False
        if not all(_feq(self.params[k], other.params[k]) for k in self.params):
            return False
        return all(
            _feq(getattr(self, f), getattr(other, f))
            for f in (*_FIELD_KEYS, "wall_time")
        )


@dataclass
class RunReport:
    """An ordered collection of evaluated rows for one command."""

    command: str
    rows: list[ReportRow] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, RunReport):
            return NotImplemented
        return self.command == other.command and self.rows == other.rows

    # -- JSON ----------------------------------------------------------
    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "rows": [
                {"params": r.params, **{k: getattr(r, k) for k in _FIELD_KEYS}}
                for r in self.rows
            ],
            "timing": {"wall_times": [r.wall_time for r in self.rows]},
        }
        return json.dumps(payload, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        payload = json.loads(text)
        times = payload.get("timing", {}).get("wall_times", [])
        rows = []
        for i, raw in enumerate(payload["rows"]):
            rows.append(
                ReportRow(
                    params=raw["params"],
                    value=raw["value"],
                    oracle_value=raw["oracle_value"],
                    matching_digits=raw["matching_digits"],
                    terms_used=raw["terms_used"],
                    converged=raw["converged"],
                    wall_time=times[i] if i < len(times) else 0.0,
                )
            )
        return cls(command=payload["command"], rows=rows)

    # -- CSV -----------------------------------------------------------
    def _param_columns(self) -> list[str]:
        cols = [k for k in _PARAM_KEYS if any(k in r.params for r in self.rows)]
        extra = sorted(
            {k for r in self.rows for k in r.params} - set(cols)
        )
        return cols + extra

    def to_csv(self) -> str:
        def cell(v) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return repr(v)
            return str(v)

        buf = io.StringIO()
        buf.write(f"# neumannint {self.command}\n")
        cols = self._param_columns()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols + list(_FIELD_KEYS) + ["wall_time"])
        for r in self.rows:
            writer.writerow(
                [cell(r.params.get(k)) for k in cols]
                + [cell(getattr(r, k)) for k in _FIELD_KEYS]
                + [cell(r.wall_time)]
            )
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "RunReport":
        def parse(v: str):
            try:
                return int(v)
            except ValueError:
                pass
            try:
                return float(v)
            except ValueError:
                return v

        lines = text.splitlines()
        command = ""
        if lines and lines[0].startswith("#"):
            command = lines[0].lstrip("# ").removeprefix("neumannint ").strip()
            lines = lines[1:]
        reader = csv.reader(lines)
        header = next(reader)
        n_fields = len(_FIELD_KEYS) + 1
        param_cols = header[:-n_fields]
        rows = []
        for rec in reader:
            params = {
                k: parse(v) for k, v in zip(param_cols, rec) if v != ""
            }
            value, oracle_value, digits, terms, conv, wall = rec[-n_fields:]
            rows.append(
                ReportRow(
                    params=params,
                    value=float(value),
                    oracle_value=None if oracle_value == "" else float(oracle_value),
                    matching_digits=None if digits == "" else float(digits),
                    terms_used=int(terms),
                    converged=conv == "true",
                    wall_time=float(wall),
                )
            )
        return cls(command=command, rows=rows)

    def serialize(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format: {fmt}")


# ---------------------------------------------------------------------------
# table command
# ---------------------------------------------------------------------------

def cmd_table(
    which: int,
    settings: ExpansionSettings | None = None,
    live_oracle: bool = False,
) -> tuple[RunReport, int]:
    """Evaluate every row of a reference table through the fast path.

    The oracle-value column is filled from the embedded certified values
    unless `live_oracle` recomputes them on the spot.  The exit code is
    nonzero when any converged row deviates from the reference mantissa by
    more than 1e-13 relative.
    """
    settings = settings or ExpansionSettings()
    report = RunReport(command=f"table {which}")
    deviations = 0
    for ref in load_table(which):
        t0 = perf_counter()
        if which == 1:
            out = l_large_order(ref.mu, float(ref.alpha), settings)
            params = {"quantity": "L", "table": 1, "alpha": float(ref.alpha), "mu": ref.mu}
        else:
            out = w_large_order(ref.p, ref.alpha1, ref.alpha2, ref.mu, settings)
            params = {
                "quantity": "W",
                "table": which,
                "p": ref.p,
                "alpha1": ref.alpha1,
                "alpha2": ref.alpha2,
                "mu": ref.mu,
            }
        wall = perf_counter() - t0
        if live_oracle:
            if which == 1:
                oracle_value = float(oracle_L(ref.mu, 0, 0, ref.alpha))
            else:
                oracle_value = float(
                    oracle_W(
                        WParams(
                            p1=ref.p,
                            p2=0,
                            sigma=0,
                            alpha1=ref.alpha1,
                            alpha2=ref.alpha2,
                            mu=ref.mu,
                        )
                    )
                )
        else:
            oracle_value = ref.certified_float
        digits = matching_digits(out.value, oracle_value) if out.converged else 0.0
        report.rows.append(
            ReportRow(
                params=params,
                value=out.value,
                oracle_value=oracle_value,
                matching_digits=digits,
                terms_used=out.terms_used,
                converged=out.converged,
                wall_time=wall,
            )
        )
        if out.converged:
            rel = abs(out.value - ref.certified_float) / abs(ref.certified_float)
            if rel > TABLE_EXIT_TOL:
                deviations += 1
    return report, (1 if deviations else 0)


def print_table(report: RunReport, which: int, stream=None) -> None:
    stream = stream or sys.stdout
    refs = {r.key(): r for r in load_table(which)}
    if which == 1:
        print("table 1: L(mu, alpha), large-order fast path", file=stream)
        print(f"{'alpha':>8} {'mu':>4}  {'value':<24} {'terms':>5} {'digits':>7}  status", file=stream)
    else:
        p = 0 if which == 2 else 8
        print(f"table {which}: W(mu, p={p}, alpha1, alpha2), large-order fast path", file=stream)
        print(
            f"{'alpha1':>7} {'alpha2':>7} {'mu':>4}  {'value':<24} {'terms':>5} {'digits':>7}  status",
            file=stream,
        )
    for row in report.rows:
        pr = row.params
        if which == 1:
            ref = refs[(1, f"{pr['alpha']:.1f}", pr["mu"])]
            lead = f"{pr['alpha']:>8} {pr['mu']:>4}"
        else:
            ref = refs[(which, pr["p"], pr["alpha1"], pr["alpha2"], pr["mu"])]
            lead = f"{pr['alpha1']:>7g} {pr['alpha2']:>7g} {pr['mu']:>4}"
        if row.converged:
            rel = abs(row.value - ref.certified_float) / abs(ref.certified_float)
            status = "ok" if rel <= TABLE_EXIT_TOL else "DEVIATES"
            if ref.flag != "ok":
                status += f" [{ref.flag}]"
            body = f"{bracket_format(row.value):<24} {row.terms_used:>5} {row.matching_digits:>7.1f}"
        else:
            status = "divergent" + (
                " (expected)" if ref.expect_divergent else " (UNEXPECTED)"
            )
            body = f"{'divergent':<24} {row.terms_used:>5} {'':>7}"
        print(f"{lead}  {body}  {status}", file=stream)


# ---------------------------------------------------------------------------
# sweep command
# ---------------------------------------------------------------------------

def parse_axis(spec: str, cast=float) -> list:
    """Parse one grid axis: 'a..b', 'a..b..step', or a comma list."""
    if ".." in spec:
        parts = spec.split("..")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad range: {spec!r}")
        a, b = cast(parts[0]), cast(parts[1])
        step = cast(parts[2]) if len(parts) == 3 else cast(1)
        if step <= 0:
            raise ValueError(f"step must be positive: {spec!r}")
        if cast is int:
            return list(range(a, b + 1, step))
        vals = []
        i = 0
        v = a
        while v <= b + abs(b) * 1e-12 + 1e-12:
            vals.append(v)
            i += 1
            v = a + i * step
        return vals
    return [cast(tok) for tok in spec.split(",") if tok != ""]


def cmd_sweep(
    grid: dict,
    settings: ExpansionSettings | None = None,
    mu_switch: int = 25,
    live_oracle: bool = False,
) -> RunReport:
    """Cartesian sweep.  grid keys: mu, p, sigma, and alpha (L) or
    alpha1+alpha2 (W).  Row order follows the grid index order; a series
    that diverges is recorded with converged=False and kept."""
    settings = settings or ExpansionSettings()
    quantity = "L" if "alpha" in grid else "W"
    report = RunReport(command="sweep")
    axes_mu = grid.get("mu", [])
    axes_p = grid.get("p", [0])
    axes_sig = grid.get("sigma", [0])

    def eval_L(mu, p, sig, alpha):
        if mu < mu_switch:
            return float(oracle_L(mu, sig, p, alpha)), 0, True
        if p == 0 and sig == 0:
            out = l_large_order(mu, alpha, settings)
            return out.value, out.terms_used, out.converged
        try:
            return l_general(mu, p, sig, alpha, settings), 0, True
        except ArithmeticError:
            return math.nan, 0, False

    def eval_W(mu, p, sig, a1, a2):
        if mu < mu_switch:
            return oracle_w_float(mu, sig, p, 0, a1, a2), 0, True
        out = w_sigma(mu, sig, p, 0, a1, a2, settings)
        return out.value, out.terms_used, out.converged

    if quantity == "L":
        points = [
            ((mu, p, sig, a), {"quantity": "L", "p": p, "sigma": sig, "alpha": a, "mu": mu})
            for mu in axes_mu
            for p in axes_p
            for sig in axes_sig
            for a in grid["alpha"]
        ]
    else:
        points = [
            (
                (mu, p, sig, a1, a2),
                {
                    "quantity": "W",
                    "p": p,
                    "sigma": sig,
                    "alpha1": a1,
                    "alpha2": a2,
                    "mu": mu,
                },
            )
            for mu in axes_mu
            for p in axes_p
            for sig in axes_sig
            for a1 in grid["alpha1"]
            for a2 in grid["alpha2"]
        ]

    for args, params in points:
        t0 = perf_counter()
        if quantity == "L":
            value, terms, conv = eval_L(*args)
        else:
            value, terms, conv = eval_W(*args)
        wall = perf_counter() - t0
        oracle_value = None
        digits = None
        if live_oracle:
            if quantity == "L":
                mu, p, sig, a = args
                oracle_value = float(oracle_L(mu, sig, p, a))
            else:
                mu, p, sig, a1, a2 = args
                oracle_value = float(
                    oracle_W(WParams(p1=p, p2=0, sigma=sig, alpha1=a1, alpha2=a2, mu=mu))
                )
            digits = matching_digits(value, oracle_value)
        report.rows.append(
            ReportRow(
                params=params,
                value=value,
                oracle_value=oracle_value,
                matching_digits=digits,
                terms_used=terms,
                converged=conv,
                wall_time=wall,
            )
        )
    return report


# ---------------------------------------------------------------------------
# bench command
# ---------------------------------------------------------------------------

def cmd_bench(
    reps: int,
    which: int = 1,
    settings: ExpansionSettings | None = None,
    oracle_points: int = 0,
) -> dict:
    """Time fast-path reproduction of one table.

    Returns per-value wall-time mean/stddev over `reps` repetitions of the
    full grid, plus an oracle-vs-fast factor measured on the first
    `oracle_points` rows when requested.
    """
    if reps <= 0:
        raise ValueError(f"invalid repetitions: {reps}")
    settings = settings or ExpansionSettings()
    refs = load_table(which)
    times = []
    for _ in range(reps):
        for ref in refs:
            t0 = perf_counter()
            if which == 1:
                l_large_order(ref.mu, float(ref.alpha), settings)
            else:
                w_large_order(ref.p, ref.alpha1, ref.alpha2, ref.mu, settings)
            times.append(perf_counter() - t0)
    result = {
        "table": which,
        "reps": reps,
        "values_per_rep": len(refs),
        "mean": statistics.fmean(times),
        "stddev": statistics.stdev(times) if len(times) > 1 else 0.0,
    }
    if oracle_points:
        otimes = []
        for ref in refs[:oracle_points]:
            t0 = perf_counter()
            if which == 1:
                oracle_L(ref.mu, 0, 0, ref.alpha)
            else:
                oracle_W(
                    WParams(
                        p1=ref.p, p2=0, sigma=0,
                        alpha1=ref.alpha1, alpha2=ref.alpha2, mu=ref.mu,
                    )
                )
            otimes.append(perf_counter() - t0)
        result["oracle_mean"] = statistics.fmean(otimes)
        result["oracle_points"] = oracle_points
        result["oracle_slowdown"] = result["oracle_mean"] / result["mean"]
    return result


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _resolve_out(path: str) -> str:
    base = os.environ.get("NEUMANNINT_OUT")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neumannint",
        description="Large-order two-centre integral engine: reference "
        "tables, parameter sweeps, and benchmarks.",
    )
    parser.add_argument("--tol", type=float, default=2e-16,
                        help="series relative tolerance (default 2e-16)")
    parser.add_argument("--max-terms", type=int, default=200,
                        help="series term cap (default 200)")
    parser.add_argument("--mu-switch", type=int, default=25,
                        help="mu below which sweeps use the quadrature path")
    parser.add_argument("--oracle", action="store_true",
                        help="fill oracle columns by live arbitrary-precision "
                        "evaluation instead of embedded reference values")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="reproduce one reference table")
    t.add_argument("which", type=int, choices=(1, 2, 3))

    s = sub.add_parser("sweep", help="cartesian parameter sweep")
    s.add_argument("--mu", required=True, help="range a..b[..step] or comma list")
    s.add_argument("--alpha", help="L sweep: alpha values")
    s.add_argument("--alpha1", help="W sweep: alpha1 values")
    s.add_argument("--alpha2", help="W sweep: alpha2 values")
    s.add_argument("--p", default="0", help="power index values (default 0)")
    s.add_argument("--sigma", default="0", help="order index values (default 0)")
    s.add_argument("--out", help="output file (default: stdout)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    b = sub.add_parser("bench", help="time the fast path")
    b.add_argument("--reps", type=int, required=True)
    b.add_argument("--table", type=int, choices=(1, 2, 3), default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = ExpansionSettings(rel_tol=args.tol, max_terms=args.max_terms)
    except ValueError as exc:
        parser.error(str(exc))

    if args.command == "table":
        report, code = cmd_table(args.which, settings, live_oracle=args.oracle)
        print_table(report, args.which)
        return code

    if args.command == "sweep":
        if (args.alpha is None) == (args.alpha1 is None and args.alpha2 is None):
            parser.error("give either --alpha (L sweep) or --alpha1/--alpha2 (W sweep)")
        if args.alpha is None and (args.alpha1 is None or args.alpha2 is None):
            parser.error("a W sweep needs both --alpha1 and --alpha2")
        try:
            grid = {
                "mu": parse_axis(args.mu, int),
                "p": parse_axis(args.p, int),
                "sigma": parse_axis(args.sigma, int),
            }
            if args.alpha is not None:
                grid["alpha"] = parse_axis(args.alpha, float)
            else:
                grid["alpha1"] = parse_axis(args.alpha1, float)
                grid["alpha2"] = parse_axis(args.alpha2, float)
        except ValueError as exc:
            parser.error(str(exc))
        report = cmd_sweep(
            grid, settings, mu_switch=args.mu_switch, live_oracle=args.oracle
        )
        text = report.serialize(args.format)
        if args.out:
            path = _resolve_out(args.out)
            try:
                with open(path, "w", encoding="utf-8", newline="") as f:
                    f.write(text)
            except OSError as exc:
                print(f"error: cannot write {path}: {exc}", file=sys.stderr)
                return 1
            print(f"wrote {len(report.rows)} rows to {path}", file=sys.stderr)
        else:
            sys.stdout.write(text)
        return 0

    if args.command == "bench":
        if args.reps <= 0:
            parser.error(f"invalid repetitions: {args.reps}")
        result = cmd_bench(
            args.reps, args.table, settings,
            oracle_points=4 if args.oracle else 0,
        )
        print(f"table {result['table']}: {result['values_per_rep']} values x "
              f"{result['reps']} reps")
        print(f"fast path per value: mean {result['mean']:.3e} s, "
              f"stddev {result['stddev']:.3e} s")
        if "oracle_mean" in result:
            print(f"oracle per value ({result['oracle_points']} points): "
                  f"mean {result['oracle_mean']:.3e} s "
                  f"({result['oracle_slowdown']:.0f}x slower)")
        return 0

    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
