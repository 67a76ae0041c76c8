"""Monte Carlo harness: correlated normal data, two-sided tests, error rates.

Data model: n dependent N(mu_i, 1) variables with pi0*n of the means zero
and the rest equal to the effect size d, under one of three correlation
structures (uniform pairwise, block, AR(1)), each generated by its O(n)
factor/recursive construction rather than a dense Cholesky; a general
Cholesky path exists for user-supplied correlation matrices and is
cross-checked against the factor path in the tests.

Reproducibility contract: replication r draws from a generator seeded by
(seed, r) only, so results are bit-identical regardless of execution order
or worker count.  Within a grid cell every procedure sees the same sample
per replication (common random numbers), which makes stepup-vs-stepdown
power comparisons pointwise rather than merely in distribution.

Conventions (the data model leaves them open): the signal means occupy the
last (1-pi0)n positions, which matters only under AR(1); two-sided
p-values are the equal-tailed 2(1 - Phi(|z|)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import ndtr

from .core import CriticalConstants, Gamma, TruthLabels
from .engine import annotate_truth, step_down, step_up
from . import constants as cmod
from .pairdist import EquicorrelatedPairs, IndependentPairs, PairwiseNull

__all__ = [
    "DependenceModel",
    "ProcedureSpec",
    "PROCEDURE_TOKENS",
    "build_procedure",
    "MonteCarloConfig",
    "MonteCarloReport",
    "generate_sample",
    "generate_sample_cholesky",
    "two_sided_pvalues",
    "run_monte_carlo",
    "run_cell",
    "run_grid",
]

DEFAULT_EFFECT = math.sqrt(10.0)


@dataclass(frozen=True)
class DependenceModel:
    """Correlation structure: uniform(rho), block(rho, s with s | n), ar1(rho)."""

    kind: str
    rho: float
    block_size: int | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "block", "ar1"):
            raise ValueError(f"unknown dependence kind {self.kind!r}")
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        if self.kind == "block" and (self.block_size is None or self.block_size < 1):
            raise ValueError("block dependence needs a positive block size")

    @classmethod
    def parse(cls, text: str) -> "DependenceModel":
        """'uniform', 'ar1', or 'block:<size>' (rho supplied separately)."""
        kind, _, arg = text.partition(":")
        if kind == "block":
            return cls(kind="block", rho=0.0, block_size=int(arg))
        if arg:
            raise ValueError(f"unexpected argument in dependence {text!r}")
        return cls(kind=kind, rho=0.0)


def generate_sample(model: DependenceModel, mu, rng) -> np.ndarray:
    """One draw of n correlated N(mu_i, 1) variables via the O(n) paths."""
    mu = np.asarray(mu, dtype=float)
    n = mu.size
    rho = model.rho
    if model.kind == "uniform":
        shared = rng.standard_normal()
        eps = rng.standard_normal(n)
        z = math.sqrt(rho) * shared + math.sqrt(1.0 - rho) * eps
    elif model.kind == "block":
        s = model.block_size
        if n % s:
            raise ValueError(f"block size {s} does not divide n={n}")
        shared = np.repeat(rng.standard_normal(n // s), s)
        eps = rng.standard_normal(n)
        z = math.sqrt(rho) * shared + math.sqrt(1.0 - rho) * eps
    else:  # ar1
        eps = rng.standard_normal(n)
        z = np.empty(n)
        z[0] = eps[0]
        c = math.sqrt(1.0 - rho * rho)
        for i in range(1, n):
            z[i] = rho * z[i - 1] + c * eps[i]
    return z + mu


def generate_sample_cholesky(corr, mu, rng) -> np.ndarray:
    """General path for an arbitrary correlation matrix (O(n^2) per draw)."""
    mu = np.asarray(mu, dtype=float)
    chol = np.linalg.cholesky(np.asarray(corr, dtype=float))
    return chol @ rng.standard_normal(mu.size) + mu


def two_sided_pvalues(z) -> np.ndarray:
    """Equal-tailed two-sided p-values 2(1 - Phi(|z|))."""
    return 2.0 * ndtr(-np.abs(np.asarray(z, dtype=float)))


# ---------------------------------------------------------------------------
# procedures

@dataclass(frozen=True)
class ProcedureSpec:
    """Direction + constant family + (k, gamma, alpha) + optional pairwise F.

    ``family`` is one of lr | posdep | arbdep | pairwise-lr | pair, where the
    last two consume the pairwise null CDF; ``template`` picks the base
    constants for the rescaled families.
    """

    name: str
    direction: str            # 'su' | 'sd'
    family: str
    k: int = 1
    template: str = "lr"
    uses_pairwise: bool = False

    def __post_init__(self):
        if self.direction not in ("su", "sd"):
            raise ValueError(f"direction must be su or sd, got {self.direction!r}")


# CLI tokens for --procedures, mapped to (family, direction, uses_pairwise).
PROCEDURE_TOKENS = {
    "lr-sd": ("lr", "sd", False),
    "lr-su": ("lr", "su", False),
    "thm32": ("posdep", "sd", False),
    "thm33": ("posdep", "su", False),
    "thm34-sd": ("pairwise-lr", "sd", True),
    "thm34-su": ("pairwise-lr", "su", True),
    "thm35": ("arbdep", "sd", False),
    "thm36": ("arbdep", "su", False),
    "thm37": ("pair", "sd", True),
    "thm38": ("pair", "su", True),
}


def build_procedure(token: str, k: int = 1, template: str = "lr") -> ProcedureSpec:
    if token not in PROCEDURE_TOKENS:
        raise ValueError(f"unknown procedure token {token!r}; "
                         f"known: {', '.join(sorted(PROCEDURE_TOKENS))}")
    family, direction, pairwise = PROCEDURE_TOKENS[token]
    return ProcedureSpec(name=token, direction=direction, family=family,
                         k=k, template=template, uses_pairwise=pairwise)


def procedure_constants(spec: ProcedureSpec, n: int, gamma: Gamma, alpha: float,
                        F: PairwiseNull | None = None) -> CriticalConstants:
    """Resolve a procedure's critical constants (data-independent)."""
    if spec.uses_pairwise and F is None:
        raise ValueError(f"procedure {spec.name} needs a pairwise null model")
    if spec.family == "lr":
        return cmod.lr_constants(n, gamma, alpha).constants
    if spec.family == "posdep":
        tpl = cmod.make_template(spec.template, n, gamma=gamma).values(alpha)
        fn = cmod.posdep_sd_report if spec.direction == "sd" else cmod.posdep_su_report
        return fn(tpl, gamma, spec.k, alpha).constants
    if spec.family == "arbdep":
        tpl = cmod.make_template(spec.template, n, gamma=gamma).values(alpha)
        fn = cmod.arbdep_sd_report if spec.direction == "sd" else cmod.arbdep_su_report
        return fn(tpl, gamma, spec.k, alpha).constants
    if spec.family == "pairwise-lr":
        return cmod.pairwise_lr_report(n, gamma, spec.k, alpha, F).constants
    if spec.family == "pair":
        template = cmod.make_template(spec.template, n, gamma=gamma)
        return cmod.calibrate_pair_scale(
            spec.direction, template, gamma, spec.k, alpha, F
        ).constants
    raise ValueError(f"unknown constant family {spec.family!r}")


# ---------------------------------------------------------------------------
# configuration and reports

@dataclass(frozen=True)
class MonteCarloConfig:
    n: int
    pi0: float
    gamma: Gamma
    k: int = 1
    alpha: float = 0.05
    effect: float = DEFAULT_EFFECT
    reps: int = 2000
    seed: int = 0
    model: DependenceModel = DependenceModel(kind="uniform", rho=0.0)
    procedure: ProcedureSpec = ProcedureSpec(name="lr-sd", direction="sd", family="lr")

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        n0 = self.pi0 * self.n
        if abs(n0 - round(n0)) > 1e-9:
            raise ValueError(f"pi0*n must be integral, got {n0}")

    @property
    def n0(self) -> int:
        return round(self.pi0 * self.n)


@dataclass(frozen=True)
class MonteCarloReport:
    """Estimated exceedance rate and average power with standard errors."""

    procedure: str
    exceedance: float
    exceedance_se: float
    power: float | None
    power_se: float | None
    reps: int
    config: MonteCarloConfig | None = None


def _pairwise_for(model: DependenceModel) -> PairwiseNull:
    if model.rho == 0.0:
        return IndependentPairs()
    if model.kind != "uniform":
        raise ValueError(
            "pairwise-aware procedures need a common pairwise correlation; "
            f"dependence kind {model.kind!r} is not equicorrelated"
        )
    return EquicorrelatedPairs(model.rho)


def run_cell(config: MonteCarloConfig, procedures) -> dict:
    """Run the replication loop once, applying every procedure to each draw.

    Returns {procedure name: (exceed indicators, power per rep)} with power
    entries NaN when there are no false nulls.  Constants are resolved once
    per procedure; the per-rep RNG depends only on (seed, rep).  Each
    procedure's exceedance indicator uses its own generalization order
    spec.k (config.k is only the sweep default), so mixed-k cells estimate
    each procedure's own error rate.
    """
    n, n0 = config.n, config.n0
    n1 = n - n0
    labels = TruthLabels.nulls_first(n, n0)
    is_null = labels.as_array()
    mu = np.where(is_null, 0.0, config.effect)
    gamma = config.gamma

    resolved = []
    for spec in procedures:
        F = _pairwise_for(config.model) if spec.uses_pairwise else None
        constants = procedure_constants(spec, n, gamma, config.alpha, F)
        runner = step_down if spec.direction == "sd" else step_up
        resolved.append((spec, constants, runner))

    exceed = {spec.name: np.zeros(config.reps, dtype=bool) for spec, _, _ in resolved}
    power = {spec.name: np.full(config.reps, np.nan) for spec, _, _ in resolved}
    for rep in range(config.reps):
        rng = np.random.default_rng((config.seed, rep))
        z = generate_sample(config.model, mu, rng)
        p = two_sided_pvalues(z)
        for spec, constants, runner in resolved:
            res = annotate_truth(runner(p, constants), labels)
            # exact rational exceedance test: V/R > gamma and V >= k
            exceed[spec.name][rep] = (
                res.v >= spec.k and res.v * gamma.den > res.r * gamma.num
            )
            if n1 > 0:
                power[spec.name][rep] = res.s / n1
    return {name: (exceed[name], power[name]) for name in exceed}


def _summarize(name: str, exceed: np.ndarray, power: np.ndarray,
               config: MonteCarloConfig) -> MonteCarloReport:
    reps = exceed.size
    rate = float(exceed.mean())
    rate_se = math.sqrt(rate * (1.0 - rate) / reps) if reps > 1 else 0.0
    if np.isnan(power).all():
        pw, pw_se = None, None
    else:
        pw = float(np.mean(power))
        pw_se = float(np.std(power, ddof=1) / math.sqrt(reps)) if reps > 1 else 0.0
    return MonteCarloReport(procedure=name, exceedance=rate, exceedance_se=rate_se,
                            power=pw, power_se=pw_se, reps=reps, config=config)


def run_monte_carlo(config: MonteCarloConfig) -> MonteCarloReport:
    """Estimate the exceedance probability and average power of one procedure."""
    out = run_cell(config, [config.procedure])
    exceed, power = out[config.procedure.name]
    return _summarize(config.procedure.name, exceed, power, config)


def run_grid(base: MonteCarloConfig, procedures, rhos=(0.0,), pi0s=None,
             gammas=None, ks=None, threads: int = 1) -> list:
    """Cartesian sweep; one report per (procedure, cell), coupled within cells.

    With threads > 1 the cells run on a thread pool; per-cell work is pure
    and reports are collected in sweep order, so the output does not depend
    on the worker count.
    """
    procedures = list(procedures)
    if not procedures:
        raise ValueError("empty procedure list")
    pi0s = [base.pi0] if pi0s is None else list(pi0s)
    gammas = [base.gamma] if gammas is None else [Gamma.parse(g) for g in gammas]
    ks = [base.k] if ks is None else list(ks)
    if not (list(rhos) and pi0s and gammas and ks):
        raise ValueError("empty sweep axis")
    cells = []
    for gamma in gammas:
        for k in ks:
            for rho in rhos:
                for pi0 in pi0s:
                    cfg = replace(
                        base, pi0=pi0, gamma=gamma, k=k,
                        model=replace(base.model, rho=float(rho)),
                    )
                    cells.append((cfg, [replace(s, k=k) for s in procedures]))

    def work(cell):
        cfg, specs = cell
        out = run_cell(cfg, specs)
        return [_summarize(s.name, *out[s.name], cfg) for s in specs]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(work, cells))
    else:
        chunks = [work(cell) for cell in cells]
    return [report for chunk in chunks for report in chunk]
