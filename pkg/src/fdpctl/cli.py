"""Command-line front end: constants tables, testing, simulation grids, verify.

All tabular output is CSV with a manifest embedded as leading '#' comment
lines (subcommand, parameter echo, seed, version, timestamp) so every file
records how to reproduce it.  Numeric fields use round-trip decimal
formatting with '.' as the separator regardless of locale.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numeric
failure (calibration non-convergence).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from . import constants as cmod
from . import oracle, simlab, svg
from .core import CriticalConstants, Gamma
from .engine import step_down, step_up
from .pairdist import EquicorrelatedPairs, IndependentPairs

__all__ = ["main"]

_FAMILIES = ("lr", "thm32", "thm33", "thm34", "thm35", "thm36", "thm37", "thm38")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _timestamp() -> str:
    # overridable so pipelines (and tests) can produce byte-identical files
    env = os.environ.get("FDPCTL_TIMESTAMP")
    if env:
        return env
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _manifest(subcommand: str, params: dict) -> list:
    lines = [f"# fdpctl {__version__} {subcommand}"]
    lines += [f"# {key}={_fmt(val)}" for key, val in params.items()]
    lines.append(f"# timestamp={_timestamp()}")
    return lines


def _emit(lines, path):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_gamma(text: str) -> Gamma:
    gamma = Gamma.parse(text)
    if "/" not in text:
        print(f"note: --gamma {text} interpreted as exact fraction {gamma}",
              file=sys.stderr)
    return gamma


def _parse_floats(text: str) -> list:
    return [float(tok) for tok in text.split(",") if tok]


def _pairwise_from_flags(args):
    if getattr(args, "f", None):
        if args.f != "independence":
            raise UsageError(f"unknown pairwise model {args.f!r}")
        return IndependentPairs()
    if getattr(args, "rho", None) is not None:
        return EquicorrelatedPairs(args.rho)
    return None


# ---------------------------------------------------------------------------
# constants

def _family_report(args, family: str, gamma: Gamma):
    n, k, alpha = args.n, args.k, args.alpha
    if family == "lr":
        return cmod.lr_constants(n, gamma, alpha)
    if family in ("thm32", "thm33", "thm35", "thm36"):
        tpl = cmod.make_template(args.template, n, gamma=gamma).values(alpha)
        fn = {"thm32": cmod.posdep_sd_report, "thm33": cmod.posdep_su_report,
              "thm35": cmod.arbdep_sd_report, "thm36": cmod.arbdep_su_report}[family]
        return fn(tpl, gamma, k, alpha, n0_max=args.n0_max)
    F = _pairwise_from_flags(args)
    if F is None:
        raise UsageError(f"family {family} needs --rho or --f independence")
    if family == "thm34":
        if k < 2:
            raise UsageError("family thm34 is defined for k >= 2 only")
        return cmod.pairwise_lr_report(n, gamma, k, alpha, F, n0_max=args.n0_max)
    template = cmod.make_template(args.template, n, gamma=gamma)
    direction = "sd" if family == "thm37" else "su"
    return cmod.calibrate_pair_scale(direction, template, gamma, k, alpha, F,
                                     n0_max=args.n0_max)


def cmd_constants(args) -> int:
    gamma = _parse_gamma(args.gamma)
    report = _family_report(args, args.family, gamma)
    params = dict(family=args.family, n=args.n, gamma=str(gamma), alpha=args.alpha,
                  k=args.k, template=args.template, rho=getattr(args, "rho", None),
                  f=getattr(args, "f", None), n0_max=args.n0_max)
    lines = _manifest("constants", params)
    lines.append("i,alpha_i")
    for i, value in enumerate(report.constants.values, start=1):
        lines.append(f"{i},{_fmt(float(value))}")
    if report.scale is not None:
        lines.append(f"C,{_fmt(report.scale)}")
    if report.beta_star is not None:
        lines.append(f"beta_star,{_fmt(report.beta_star)}")
    _emit(lines, args.output)
    return 0


# ---------------------------------------------------------------------------
# test

def _read_pvalues(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = [ln.strip() for ln in fh]
    except OSError as exc:
        raise UsageError(f"cannot read p-value file: {exc}")
    vals = []
    for ln in raw:
        if not ln or ln.startswith("#"):
            continue
        try:
            vals.append(float(ln))
        except ValueError:
            raise UsageError(f"not a p-value: {ln!r}")
    if not vals:
        raise UsageError(f"no p-values found in {path}")
    arr = np.asarray(vals)
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise UsageError("p-values must lie in [0, 1]")
    return arr


def cmd_test(args) -> int:
    p = _read_pvalues(args.pvalues)
    if args.constants:
        vals = np.asarray(_parse_floats(args.constants))
        if vals.size != p.size:
            raise UsageError(f"{vals.size} constants for {p.size} p-values")
        constants = CriticalConstants(values=vals, k=args.k)
        gamma_txt = args.gamma or "0"
    elif args.family:
        if args.gamma is None:
            raise UsageError("family-based constants need --gamma")
        gamma = _parse_gamma(args.gamma)
        saved_n = args.n
        args.n = p.size
        try:
            constants = _family_report(args, args.family, gamma).constants
        finally:
            args.n = saved_n
        gamma_txt = str(gamma)
    else:
        raise UsageError("test needs either --constants or --family")
    run = step_down if args.direction == "sd" else step_up
    result = run(p, constants)
    rejected = set(result.rejected)
    params = dict(direction=args.direction, family=args.family, n=p.size,
                  gamma=gamma_txt, alpha=args.alpha, k=args.k,
                  template=args.template, constants=args.constants,
                  pvalues=args.pvalues)
    lines = _manifest("test", params)
    lines.append("index,p,critical,rejected")
    order = np.argsort(p, kind="stable")
    rank_of = np.empty(p.size, dtype=int)
    rank_of[order] = np.arange(p.size)
    for idx in range(p.size):
        crit = constants.values[rank_of[idx]]
        lines.append(f"{idx + 1},{_fmt(float(p[idx]))},{_fmt(float(crit))},"
                     f"{1 if idx in rejected else 0}")
    lines.append(f"R,{result.r}")
    _emit(lines, args.output)
    return 0


# ---------------------------------------------------------------------------
# simulate

def cmd_simulate(args) -> int:
    gamma = _parse_gamma(args.gamma)
    tokens = [tok for tok in args.procedures.split(",") if tok]
    if not tokens:
        raise UsageError("empty --procedures list")
    procedures = [simlab.build_procedure(tok, k=args.k, template=args.template)
                  for tok in tokens]
    model = simlab.DependenceModel.parse(args.dependence)
    rhos = _parse_floats(args.rho)
    pi0s = _parse_floats(args.pi0)
    if not rhos or not pi0s:
        raise UsageError("empty sweep axis")
    base = simlab.MonteCarloConfig(
        n=args.n, pi0=pi0s[0], gamma=gamma, k=args.k, alpha=args.alpha,
        effect=args.effect, reps=args.reps, seed=args.seed,
        model=replace(model, rho=rhos[0]),
    )
    reports = simlab.run_grid(base, procedures, rhos=rhos, pi0s=pi0s,
                              threads=args.threads)
    # threads deliberately omitted: the results do not depend on it
    params = dict(procedures=args.procedures, n=args.n, pi0=args.pi0,
                  rho=args.rho, gamma=str(gamma), k=args.k, alpha=args.alpha,
                  effect=args.effect, reps=args.reps, seed=args.seed,
                  dependence=args.dependence)
    lines = _manifest("simulate", params)
    lines.append("procedure,rho,pi0,gamma,k,exceedance,exceedance_se,power,power_se")
    for rep in reports:
        cfg = rep.config
        se = "" if rep.reps < 2 else _fmt(rep.exceedance_se)
        pw_se = "" if (rep.power_se is None or rep.reps < 2) else _fmt(rep.power_se)
        lines.append(
            f"{rep.procedure},{_fmt(cfg.model.rho)},{_fmt(cfg.pi0)},{cfg.gamma},"
            f"{cfg.k},{_fmt(rep.exceedance)},{se},{_fmt(rep.power)},{pw_se}"
        )
    _emit(lines, args.output)
    if args.svg:
        _write_svg(args, reports, rhos, tokens, lines[: len(params) + 2])
    return 0


def _write_svg(args, reports, rhos, tokens, manifest_lines):
    by_proc_exc = {tok: [] for tok in tokens}
    by_proc_pow = {tok: [] for tok in tokens}
    for rho in rhos:
        for tok in tokens:
            cell = [r for r in reports
                    if r.procedure == tok and r.config.model.rho == rho]
            by_proc_exc[tok].append(float(np.mean([r.exceedance for r in cell])))
            powers = [r.power for r in cell if r.power is not None]
            by_proc_pow[tok].append(float(np.mean(powers)) if powers else float("nan"))
    doc = svg.line_panels_svg(
        [
            ("Exceedance rate", "Pr(FDP exceedance)", rhos, by_proc_exc, args.alpha),
            ("Average power", "E[S / n1]", rhos, by_proc_pow, None),
        ],
        x_label="rho",
        comment="\n".join(manifest_lines),
    )
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(doc)


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    if args.suite == "all":
        suites = ("lemmas", "constants", "pairdist")
    else:
        suites = (args.suite,)
    report = oracle.run_suite(suites=suites, fuzz_count=args.fuzz_count,
                              seed=args.seed)
    name_w = max(len(row.name) for row in report.rows)
    print(f"{'check'.ljust(name_w)}  instances  violations  status")
    for row in report.rows:
        status = "PASS" if row.violations == 0 else "FAIL"
        print(f"{row.name.ljust(name_w)}  {row.instances:9d}  "
              f"{row.violations:10d}  {status}")
        if row.first_failure:
            print(f"  first failure: {row.first_failure}")
    return 0 if report.ok else 2


# ---------------------------------------------------------------------------
# wiring

def _add_constant_flags(sub, family_required=True):
    sub.add_argument("--family", required=family_required, choices=_FAMILIES)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--gamma", required=family_required,
                     help="exceedance threshold, e.g. 1/10 or 0.1")
    sub.add_argument("--alpha", type=float, default=0.05)
    sub.add_argument("--k", type=int, default=1)
    sub.add_argument("--template", choices=("lr", "bh", "gbs"), default="lr")
    sub.add_argument("--rho", type=float, default=None,
                     help="equicorrelation of the pairwise null model")
    sub.add_argument("--f", choices=("independence",), default=None,
                     help="named pairwise null model")
    sub.add_argument("--n0-max", dest="n0_max", type=int, default=None,
                     help="optional cap on the enumerated number of true nulls")
    sub.add_argument("-o", "--output", default=None, help="CSV output path")


def _build_parser() -> _Parser:
    parser = _Parser(prog="fdpctl", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_const = sub.add_parser("constants", help="print a critical-constant table")
    _add_constant_flags(p_const)

    p_test = sub.add_parser("test", help="apply a procedure to a p-value file")
    p_test.add_argument("--pvalues", required=True)
    p_test.add_argument("--direction", required=True, choices=("su", "sd"))
    p_test.add_argument("--constants", default=None,
                        help="explicit comma list of critical constants")
    _add_constant_flags(p_test, family_required=False)

    p_sim = sub.add_parser("simulate", help="run a Monte Carlo grid")
    p_sim.add_argument("--procedures", required=True,
                       help="comma list, e.g. lr-sd,lr-su,thm34-su")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--pi0", default="0.5", help="comma list of pi0 values")
    p_sim.add_argument("--rho", default="0", help="comma list of correlations")
    p_sim.add_argument("--gamma", required=True)
    p_sim.add_argument("--k", type=int, default=1)
    p_sim.add_argument("--alpha", type=float, default=0.05)
    p_sim.add_argument("--effect", type=float, default=simlab.DEFAULT_EFFECT)
    p_sim.add_argument("--reps", type=int, default=2000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--dependence", default="uniform",
                       help="uniform | block:<size> | ar1")
    p_sim.add_argument("--template", choices=("lr", "bh", "gbs"), default="lr")
    p_sim.add_argument("--threads", type=int,
                       default=int(os.environ.get("FDPCTL_THREADS", "1")))
    p_sim.add_argument("--svg", default=None, help="also plot the grid to SVG")
    p_sim.add_argument("-o", "--output", default=None)

    p_ver = sub.add_parser("verify", help="run the brute-force oracle suite")
    p_ver.add_argument("--suite", default="all",
                       choices=("lemmas", "constants", "pairdist", "all"))
    p_ver.add_argument("--fuzz-count", dest="fuzz_count", type=int, default=100_000)
    p_ver.add_argument("--seed", type=int, default=20240901)
    return parser


_COMMANDS = {
    "constants": cmd_constants,
    "test": cmd_test,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand == "constants" and args.n is None:
            raise UsageError("constants requires --n")
        return _COMMANDS[args.subcommand](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except cmod.CalibrationError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
