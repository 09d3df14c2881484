"""Command-line interface.

Subcommands: describe, fit, simulate, evaluate, synth. All randomized
commands take an explicit --seed (default 0, never wall-clock). Exit
codes: 0 success, 2 input error, 3 estimation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import pipeline, simulate, stats
from .errors import EstimationError, InputError
from .seasonal import SeasonalMeanParams
from .series import parse_csv, serialize_csv, strip_leap_days
from .volatility import VolatilityModelParams

# Reference parameter set used by `synth` when no report is supplied.
DEFAULT_SEASONAL = SeasonalMeanParams(a_t=26.4, b_t=-7.58e-5, c_t=1.75,
                                      psi=0.531, r_squared_fit=0.5062)
DEFAULT_KAPPA_T = 0.1872
DEFAULT_VOL = VolatilityModelParams(sigma_bar=0.877, sigma_sigma=0.419,
                                    kappa_sigma=0.989)


def _load_series(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        raw = parse_csv(fh.read())
    stripped = strip_leap_days(raw)
    return stripped, len(raw) - len(stripped)


def _try_normality(values) -> stats.NormalityTestResult | None:
    try:
        return stats.anderson_darling_normal(values)
    except InputError:
        return None


def _normality_dict(nt: stats.NormalityTestResult | None) -> dict | None:
    if nt is None:
        return None
    return {"a_squared": nt.a_squared, "p_value": nt.p_value,
            "reject_at_5pct": nt.reject_at_5pct}


def _describe_lines(name: str, d: stats.DescriptiveSummary,
                    nt: stats.NormalityTestResult | None) -> list[str]:
    fmt = lambda v: "undefined" if v is None else f"{v:.4g}"
    a2 = "n/a" if nt is None else f"{nt.a_squared:.4g}"
    p = "n/a" if nt is None else stats.format_p_value(nt.p_value)
    return [
        f"{name}",
        f"  Mean      {d.mean:10.4g}    Max        {d.max:10.4g}",
        f"  Median    {d.median:10.4g}    Min        {d.min:10.4g}",
        f"  SD        {d.sd:10.4g}    Skew       {fmt(d.skewness):>10}",
        f"  Kurtosis  {fmt(d.excess_kurtosis):>10}    A2 statistic {a2:>8}",
        f"  p-value (5%)  {p}",
    ]


def run_describe(args) -> int:
    series, _ = _load_series(args.input)
    d_temp = stats.describe(series.temps)
    n_temp = _try_normality(series.temps)
    lines = [f"n_obs: {len(series)}  span: {series.dates[0]} .. {series.dates[-1]}"]
    lines += _describe_lines("Temperature (degC)", d_temp, n_temp)
    payload = {
        "n_obs": len(series),
        "temperature": pipeline._describe_to_dict(d_temp),
        "temperature_normality": _normality_dict(n_temp),
        "precipitation": None,
        "precipitation_normality": None,
    }
    if series.precip is not None:
        d_pre = stats.describe(series.precip)
        n_pre = _try_normality(series.precip)
        lines += _describe_lines("Precipitation (mm)", d_pre, n_pre)
        payload["precipitation"] = pipeline._describe_to_dict(d_pre)
        payload["precipitation_normality"] = _normality_dict(n_pre)
    print("\n".join(lines))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    return 0


def run_fit(args) -> int:
    series, removed = _load_series(args.input)
    report = pipeline.fit_full_model(series, leap_days_removed=removed)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(pipeline.report_to_dict(report), fh, indent=2)
    if args.vols_csv:
        with open(args.vols_csv, "w", encoding="utf-8") as fh:
            fh.write("year,month,sigma\n")
            for e in report.monthly_vols.entries:
                fh.write(f"{e.year},{e.month},{e.sigma!r}\n")
    s = report.seasonal
    print("Seasonal mean function")
    print(f"  a_T    {s.a_t:.6g}")
    print(f"  b_T    {s.b_t:.6g}")
    print(f"  c_T    {s.c_t:.6g}")
    print(f"  psi    {s.psi:.6g}")
    print(f"  R^2    {s.r_squared_fit:.4f}")
    print("Volatility process")
    print(f"  sigma_bar    {report.vol.sigma_bar:.6g}")
    print(f"  sigma_sigma  {report.vol.sigma_sigma:.6g}")
    print(f"  kappa_sigma  {report.vol.kappa_sigma:.6g}")
    print("Mean reversion")
    print(f"  kappa_T                    {report.kappa.kappa_t:.6g}")
    print(f"  daily adjustment fraction  {report.kappa.daily_adjustment_fraction:.4f}")
    return 0


def _load_report(path: str) -> pipeline.FitReport:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid report JSON: {exc}") from None
    return pipeline.report_from_dict(payload)


def run_simulate(args) -> int:
    report = _load_report(args.report)
    config = simulate.SimulationConfig(
        n_paths=args.paths,
        n_days=args.days,
        master_seed=args.seed,
        t0_temp=simulate.evaluate_seasonal_mean(report.seasonal, 0),
        sigma0=report.vol.sigma_bar,
    )
    ens = simulate.simulate_paths(report.seasonal, report.kappa, report.vol,
                                  config)
    p05 = np.percentile(ens.paths, 5, axis=0)
    p95 = np.percentile(ens.paths, 95, axis=0)
    sd = (ens.cross_path_sd if ens.cross_path_sd is not None
          else np.zeros(args.days))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("day,mean,sd,p05,p95\n")
        for day in range(args.days):
            fh.write(f"{day},{ens.mean_path[day]!r},{sd[day]!r},"
                     f"{p05[day]!r},{p95[day]!r}\n")
    if args.full_paths:
        cols = ",".join(f"path_{p}" for p in range(args.paths))
        with open(args.full_paths, "w", encoding="utf-8") as fh:
            fh.write(f"day,{cols}\n")
            for day in range(args.days):
                row = ",".join(repr(float(v)) for v in ens.paths[:, day])
                fh.write(f"{day},{row}\n")
    return 0


def run_evaluate(args) -> int:
    series, removed = _load_series(args.input)
    report = pipeline.fit_full_model(series, leap_days_removed=removed)
    metrics = pipeline.evaluate_model(series, report, n_paths=args.paths,
                                      seed=args.seed)
    print(json.dumps({"rmse": metrics.rmse, "mape_pct": metrics.mape_pct,
                      "r2": metrics.r_squared}, indent=2))
    return 0


def run_synth(args) -> int:
    if args.report:
        report = _load_report(args.report)
        seasonal, kappa_t, vol = report.seasonal, report.kappa.kappa_t, report.vol
    else:
        seasonal, kappa_t, vol = DEFAULT_SEASONAL, DEFAULT_KAPPA_T, DEFAULT_VOL
    series = simulate.generate_synthetic_series(
        seasonal, kappa_t, vol, start_year=args.start_year,
        n_years=args.years, seed=args.seed,
        constant_vol_override=args.sigma_override)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_csv(series))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outemp",
        description="Mean-reverting daily temperature model: fit, simulate, "
                    "evaluate.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="descriptive statistics + normality test")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="optional JSON output path")
    p.set_defaults(func=run_describe)

    p = sub.add_parser("fit", help="fit the full model, write a report JSON")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--vols-csv", help="optional monthly volatility CSV path")
    p.set_defaults(func=run_fit)

    p = sub.add_parser("simulate", help="Monte Carlo ensemble from a report")
    p.add_argument("--report", required=True)
    p.add_argument("--paths", type=int, default=1000)
    p.add_argument("--days", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--full-paths", help="also write the full path matrix CSV here")
    p.set_defaults(func=run_simulate)

    p = sub.add_parser("evaluate", help="fit + score against the mean simulated path")
    p.add_argument("--input", required=True)
    p.add_argument("--paths", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=run_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic daily series CSV")
    p.add_argument("--report", help="report JSON to take parameters from")
    p.add_argument("--years", type=int, default=24)
    p.add_argument("--start-year", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma-override", type=float, default=None,
                   help="constant volatility override (0 disables noise)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=run_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except EstimationError as exc:
        print(f"estimation failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
