"""Generic stepdown/stepup execution over a p-value vector.

Both procedures sort the p-values once (stable, so ties break by original
index) and scan the ordered values against the critical constants:

* stepdown rejects the i* smallest p-values where i* is the largest i such
  that P_(j) <= alpha_j for every j <= i (nothing if P_(1) > alpha_1);
* stepup rejects the i* smallest where i* is the largest i with
  P_(i) <= alpha_i (nothing if no such i).

Comparisons are exact <=; the constants are exact decimals produced by the
constants module, so no epsilon slop is wanted here.
"""

from __future__ import annotations

import numpy as np

from .core import CriticalConstants, RejectionResult, TruthLabels

__all__ = ["step_down", "step_up", "annotate_truth"]


def _ordered(p, constants: CriticalConstants):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError("p-values must form a 1-d vector")
    if p.size != constants.n:
        raise ValueError(
            f"{p.size} p-values but {constants.n} critical constants"
        )
    if p.size and (np.min(p) < 0.0 or np.max(p) > 1.0 or not np.all(np.isfinite(p))):
        raise ValueError("p-values must lie in [0, 1]")
    order = np.argsort(p, kind="stable")
    return p, order


def step_down(p, constants: CriticalConstants) -> RejectionResult:
    """Run the stepdown procedure; returns the rejected original indices."""
    p, order = _ordered(p, constants)
    ok = p[order] <= constants.values
    count = int(ok.size if ok.all() else np.argmin(ok))
    return RejectionResult(rejected=tuple(order[:count]), n=p.size)


def step_up(p, constants: CriticalConstants) -> RejectionResult:
    """Run the stepup procedure; returns the rejected original indices."""
    p, order = _ordered(p, constants)
    ok = np.nonzero(p[order] <= constants.values)[0]
    count = int(ok[-1] + 1) if ok.size else 0
    return RejectionResult(rejected=tuple(order[:count]), n=p.size)


def annotate_truth(result: RejectionResult, labels: TruthLabels) -> RejectionResult:
    """Fill in the false/true rejection counts V and S from truth labels."""
    if labels.n != result.n:
        raise ValueError(f"{labels.n} labels for {result.n} hypotheses")
    v = sum(1 for i in result.rejected if labels.is_null[i])
    return RejectionResult(
        rejected=result.rejected, n=result.n, v=v, s=result.r - v
    )
