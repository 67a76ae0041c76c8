"""Critical-constant families for exceedance control of the generalized FDP.

Every family here produces a nondecreasing vector alpha_1 <= ... <= alpha_n
from a template of base constants.  The marginal-only families rescale the
template by a worst-case constant obtained by enumerating the unknown
number of true nulls n0; the pairwise-aware families additionally consume
the common joint CDF F(u, v) of two null p-values, either to inflate the
Lehmann-Romano constants directly or through a scale calibration that
solves bound(beta) = alpha by bisection.

Combinatorial index maps
------------------------
For gamma = num/den, n1 = n - n0 and generalization order k, the bounds are
driven by integer maps evaluated in exact arithmetic:

* n_levels      M = min(n0, floor(gamma n1 / (1-gamma)) + 1)
* sd_slack      m(i)  = max{0 <= j <= n1 : floor(gamma j / (1-gamma)) + 1 = i}
* sd_rank       mbar(i) = (i v k) + m(i), mbar(0) = 0
* su_rank_raw   m*(i) = max{1 <= j <= n : floor(gamma j) + 1 <= i}, m*(0) = 0
* su_rank       mt(i) = min(m*(i), i + n1)

m(i) exists for every i in [1, M] exactly when gamma <= 1/2 (the scan
f(j) = floor(gamma j/(1-gamma)) + 1 then advances in unit steps); larger
gamma would skip levels, which the stepdown families do not support.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import CriticalConstants, Gamma
from .pairdist import PairwiseNull

__all__ = [
    "Template",
    "make_template",
    "lr_template",
    "bh_template",
    "gbs_template",
    "IndexMaps",
    "index_maps",
    "ConstantsReport",
    "BoundValue",
    "CalibrationError",
    "lr_constants",
    "posdep_sd_report",
    "posdep_su_report",
    "arbdep_sd_report",
    "arbdep_su_report",
    "pairwise_lr_report",
    "pair_sd_bound",
    "pair_su_bound",
    "bisect_scale",
    "calibrate_pair_scale",
    "sd_marginal_bound",
    "su_marginal_bound",
]


class CalibrationError(RuntimeError):
    """Scale calibration failed: unattainable target or non-monotone bound."""


# ---------------------------------------------------------------------------
# templates

def lr_template(n: int, gamma: Gamma, beta: float) -> np.ndarray:
    """Lehmann-Romano base constants (floor(g i)+1) beta / (n+floor(g i)+1-i).

    Returned with a leading 0 entry so that integer ranks 0..n index
    directly; gamma = 0 reduces to the Holm constants beta/(n+1-i).
    """
    i = np.arange(n + 1)
    g = np.array([gamma.floor_mul(int(j)) for j in i], dtype=np.int64)
    denom = n + g + 1 - i
    assert np.all(denom[1:] >= 1), "denominator cannot drop below 1 for i <= n"
    vals = (g + 1) * beta / denom
    vals[0] = 0.0
    return vals


def bh_template(n: int, beta: float) -> np.ndarray:
    """Benjamini-Hochberg base constants i beta / n, with leading 0."""
    return np.arange(n + 1) * beta / n


def gbs_template(n: int, beta: float) -> np.ndarray:
    """GBS stepdown base constants i beta / (n - i (1-beta) + 1), leading 0."""
    i = np.arange(n + 1)
    return i * beta / (n - i * (1.0 - beta) + 1.0)


@dataclass(frozen=True)
class Template:
    """Base-constant family evaluated at a scale beta in (0, 1).

    ``custom`` vectors are taken at unit scale and multiplied by beta, so
    every kind is nondecreasing in the rank and strictly increasing in beta.
    """

    kind: str
    n: int
    gamma: Gamma | None = None
    custom: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("lr", "bh", "gbs", "custom"):
            raise ValueError(f"unknown template kind {self.kind!r}")
        if self.kind == "lr" and self.gamma is None:
            raise ValueError("lr template needs a gamma threshold")
        if self.kind == "custom":
            if self.custom is None or len(self.custom) != self.n:
                raise ValueError("custom template needs n base values")
            base = np.asarray(self.custom, dtype=float)
            if base[0] <= 0 or np.any(np.diff(base) < 0):
                raise ValueError("custom base values must be positive nondecreasing")
            object.__setattr__(self, "custom", tuple(float(v) for v in base))

    def values(self, beta: float) -> np.ndarray:
        """Template vector at scale beta, length n+1 with entry 0 at rank 0."""
        if not 0.0 < beta < 1.0:
            raise ValueError(f"scale beta must lie in (0, 1), got {beta}")
        if self.kind == "lr":
            return lr_template(self.n, self.gamma, beta)
        if self.kind == "bh":
            return bh_template(self.n, beta)
        if self.kind == "gbs":
            return gbs_template(self.n, beta)
        return np.concatenate([[0.0], beta * np.asarray(self.custom)])


def make_template(kind: str, n: int, gamma: Gamma | None = None,
                  custom=None) -> Template:
    return Template(kind=kind, n=n, gamma=gamma,
                    custom=None if custom is None else tuple(custom))


def _check_template_vector(tpl: np.ndarray) -> int:
    tpl = np.asarray(tpl, dtype=float)
    n = tpl.size - 1
    if n < 1:
        raise ValueError("template vector must cover ranks 0..n with n >= 1")
    if tpl[0] != 0.0:
        raise ValueError("template vector must start with 0 at rank 0")
    if np.any(np.diff(tpl) < 0):
        raise ValueError("template vector must be nondecreasing")
    if tpl[-1] <= 0.0:
        raise ValueError("degenerate template: all base constants are zero")
    return n


# ---------------------------------------------------------------------------
# index maps

@lru_cache(maxsize=1024)
def _floor_odds_plus1(n: int, gamma: Gamma) -> np.ndarray:
    """f(j) = floor(gamma j / (1-gamma)) + 1 for j = 0..n, exact."""
    out = np.array([gamma.floor_odds_mul(j) + 1 for j in range(n + 1)],
                   dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=1024)
def _su_rank_raw(n: int, gamma: Gamma) -> np.ndarray:
    """m*(i) for i = 0..n: count of j in [1, n] with floor(gamma j) + 1 <= i."""
    g = np.array([gamma.floor_mul(j) + 1 for j in range(1, n + 1)],
                 dtype=np.int64)
    out = np.concatenate(
        [[0], np.searchsorted(g, np.arange(1, n + 1), side="right")]
    ).astype(np.int64)
    out.setflags(write=False)
    return out


def _sd_slack(n0: int, n1: int, gamma: Gamma, f_all: np.ndarray):
    """(M, m(1..M)) for one n0; raises if a level in [1, M] is skipped."""
    f = f_all[: n1 + 1]
    m_cap = min(n0, int(f[-1]))
    levels = np.arange(1, m_cap + 1)
    slack = np.searchsorted(f, levels, side="right") - 1
    if np.any(slack < 0) or np.any(f[slack] != levels):
        raise ValueError(
            "stepdown index map skips exceedance levels; this family "
            "requires gamma <= 1/2"
        )
    return m_cap, slack


@dataclass(frozen=True)
class IndexMaps:
    """All integer maps for one (n, n0, gamma, k); arrays indexed 0..len-1."""

    n: int
    n0: int
    k: int
    n_levels: int
    sd_slack: np.ndarray    # m(0..M)
    sd_rank: np.ndarray     # mbar(0..M)
    su_rank_raw: np.ndarray  # m*(0..n0)
    su_rank: np.ndarray     # mt(0..n0)


def index_maps(n: int, n0: int, gamma: Gamma, k: int) -> IndexMaps:
    """Evaluate every combinatorial map exactly for one parameter point."""
    if not 1 <= k <= n0 <= n:
        raise ValueError(f"need 1 <= k <= n0 <= n, got k={k}, n0={n0}, n={n}")
    n1 = n - n0
    m_cap, slack = _sd_slack(n0, n1, gamma, _floor_odds_plus1(n, gamma))
    sd_slack = np.concatenate([[0], slack]).astype(np.int64)
    levels = np.arange(1, m_cap + 1)
    sd_rank = np.concatenate([[0], np.maximum(levels, k) + slack]).astype(np.int64)
    raw_full = _su_rank_raw(n, gamma)
    i = np.arange(n0 + 1)
    su_rank_raw = raw_full[: n0 + 1].copy()
    su_rank = np.minimum(su_rank_raw, i + n1)
    su_rank[0] = 0
    for arr in (sd_slack, sd_rank, su_rank_raw, su_rank):
        arr.setflags(write=False)
    return IndexMaps(n=n, n0=n0, k=k, n_levels=m_cap, sd_slack=sd_slack,
                     sd_rank=sd_rank, su_rank_raw=su_rank_raw, su_rank=su_rank)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class ConstantsReport:
    """Constants plus the enumeration evidence that produced them."""

    family: str
    constants: CriticalConstants
    scale: float | None = None      # worst-case rescaling constant
    worst_n0: int | None = None     # n0 attaining the maximum
    beta_star: float | None = None  # calibrated template scale
    split_by_n0: dict | None = None  # chosen split point K per n0


@dataclass(frozen=True)
class BoundValue:
    """One evaluation of a pairwise exceedance bound at a fixed scale."""

    value: float
    worst_n0: int
    split_by_n0: dict


def _n0_range(n: int, k: int, n0_max: int | None):
    hi = n if n0_max is None else min(n, n0_max)
    if hi < k:
        raise ValueError(f"empty n0 range: k={k}, n0_max={hi}")
    return range(k, hi + 1)


def _rescaled(tpl: np.ndarray, k: int, alpha: float, scale: float) -> CriticalConstants:
    n = tpl.size - 1
    ranks = np.maximum(np.arange(1, n + 1), k)
    values = alpha * tpl[ranks] / scale
    if values[-1] >= 1.0:
        raise ValueError(
            f"rescaled constants reach {values[-1]:.6g} >= 1; lower alpha"
        )
    return CriticalConstants(values=values, k=k)


# ---------------------------------------------------------------------------
# marginal-only families

def posdep_sd_report(tpl, gamma: Gamma, k: int, alpha: float,
                     n0_max: int | None = None) -> ConstantsReport:
    """Stepdown constants valid under positive dependence (marginal-only).

    Rescales the template by C = max over n0 and levels i of
    n0 * tpl[mbar(i)] / (i v k).
    """
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    f_all = _floor_odds_plus1(n, gamma)
    best, best_n0 = -np.inf, -1
    for n0 in _n0_range(n, k, n0_max):
        m_cap, slack = _sd_slack(n0, n - n0, gamma, f_all)
        iok = np.maximum(np.arange(1, m_cap + 1), k)
        val = float(np.max(n0 * tpl[iok + slack] / iok))
        if val > best:
            best, best_n0 = val, n0
    return ConstantsReport(family="posdep-sd", scale=best, worst_n0=best_n0,
                           constants=_rescaled(tpl, k, alpha, best))


def posdep_su_report(tpl, gamma: Gamma, k: int, alpha: float,
                     n0_max: int | None = None) -> ConstantsReport:
    """Stepup analog of ``posdep_sd_report``: C = max n0 * tpl[mt(i)] / i."""
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    raw = _su_rank_raw(n, gamma)
    best, best_n0 = -np.inf, -1
    for n0 in _n0_range(n, k, n0_max):
        i = np.arange(k, n0 + 1)
        mt = np.minimum(raw[i], i + (n - n0))
        val = float(np.max(n0 * tpl[mt] / i))
        if val > best:
            best, best_n0 = val, n0
    return ConstantsReport(family="posdep-su", scale=best, worst_n0=best_n0,
                           constants=_rescaled(tpl, k, alpha, best))


def _sd_marginal_prefix(av: np.ndarray, k: int, n0: int) -> np.ndarray:
    """Prefix sums A[K] = sum_{i<=K} n0 (av[i]-av[i-1]) / (i v k), K = 0..M."""
    m_cap = av.size - 1
    iok = np.maximum(np.arange(1, m_cap + 1), k)
    return np.concatenate([[0.0], np.cumsum(n0 * np.diff(av) / iok)])


def arbdep_sd_report(tpl, gamma: Gamma, k: int, alpha: float,
                     n0_max: int | None = None) -> ConstantsReport:
    """Stepdown constants valid under arbitrary dependence (marginal-only).

    C = max over n0 of the telescoping sum
    n0 * sum_i (tpl[mbar(i)] - tpl[mbar(i-1)]) / (i v k).
    """
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    f_all = _floor_odds_plus1(n, gamma)
    best, best_n0 = -np.inf, -1
    for n0 in _n0_range(n, k, n0_max):
        m_cap, slack = _sd_slack(n0, n - n0, gamma, f_all)
        mbar = np.concatenate(
            [[0], np.maximum(np.arange(1, m_cap + 1), k) + slack]
        )
        val = float(_sd_marginal_prefix(tpl[mbar], k, n0)[-1])
        if val > best:
            best, best_n0 = val, n0
    return ConstantsReport(family="arbdep-sd", scale=best, worst_n0=best_n0,
                           constants=_rescaled(tpl, k, alpha, best))


def _su_marginal_value(av: np.ndarray, k: int, n0: int) -> float:
    """n0 * (av[k]/k + sum_{i=k+1}^{n0} (av[i]-av[i-1]) / i)."""
    i = np.arange(k + 1, n0 + 1)
    return float(n0 * (av[k] / k + np.sum((av[k + 1:] - av[k:-1]) / i)))


def arbdep_su_report(tpl, gamma: Gamma, k: int, alpha: float,
                     n0_max: int | None = None) -> ConstantsReport:
    """Stepup analog of ``arbdep_sd_report`` built on the mt(i) ranks."""
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    raw = _su_rank_raw(n, gamma)
    best, best_n0 = -np.inf, -1
    for n0 in _n0_range(n, k, n0_max):
        i = np.arange(n0 + 1)
        mt = np.minimum(raw[: n0 + 1], i + (n - n0))
        mt[0] = 0
        val = _su_marginal_value(tpl[mt], k, n0)
        if val > best:
            best, best_n0 = val, n0
    return ConstantsReport(family="arbdep-su", scale=best, worst_n0=best_n0,
                           constants=_rescaled(tpl, k, alpha, best))


def sd_marginal_bound(tpl, gamma: Gamma) -> float:
    """Worst-case stepdown exceedance bound of a constants vector (k = 1).

    max over n0 in [1, n] of n0 * sum_i (v[mbar(i)] - v[mbar(i-1)]) / i,
    the quantity the pairwise stepdown bound can only improve on.
    """
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    f_all = _floor_odds_plus1(n, gamma)
    best = -np.inf
    for n0 in range(1, n + 1):
        m_cap, slack = _sd_slack(n0, n - n0, gamma, f_all)
        mbar = np.concatenate([[0], np.arange(1, m_cap + 1) + slack])
        best = max(best, float(_sd_marginal_prefix(tpl[mbar], 1, n0)[-1]))
    return best


def su_marginal_bound(tpl, gamma: Gamma) -> float:
    """Stepup analog of ``sd_marginal_bound`` (k = 1)."""
    tpl = np.asarray(tpl, dtype=float)
    n = _check_template_vector(tpl)
    raw = _su_rank_raw(n, gamma)
    best = -np.inf
    for n0 in range(1, n + 1):
        i = np.arange(n0 + 1)
        mt = np.minimum(raw[: n0 + 1], i + (n - n0))
        mt[0] = 0
        best = max(best, _su_marginal_value(tpl[mt], 1, n0))
    return best


# ---------------------------------------------------------------------------
# Lehmann-Romano family and its pairwise-aware generalization

def lr_constants(n: int, gamma: Gamma, alpha: float) -> ConstantsReport:
    """The Lehmann-Romano critical constants at level alpha (k = 1 family)."""
    vals = lr_template(n, gamma, alpha)[1:]
    return ConstantsReport(family="lr",
                           constants=CriticalConstants(values=vals, k=1))


def pairwise_lr_report(n: int, gamma: Gamma, k: int, alpha: float,
                       F: PairwiseNull,
                       n0_max: int | None = None) -> ConstantsReport:
    """Lehmann-Romano constants inflated by pairwise-correlation information.

    For k >= 2 the exceedance bound of the plain constants is at most
    C = max over n0 of (n0-1) [ F(b_k | b_k)/(k-1)
        + sum_{l=k}^{n0-1} (F(b_{l+1} | b_k) - F(b_l | b_k)) / l ],
    with b_i = i alpha / n0 and F(u | v) = F(u, v)/v, so dividing the
    constants by min(C, 1) keeps control while enlarging every threshold
    whenever C < 1.
    """
    if k < 2:
        raise ValueError("the pairwise generalization needs k >= 2")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    best, best_n0 = -np.inf, -1
    for n0 in _n0_range(n, k, n0_max):
        b = np.arange(n0 + 1) * (alpha / n0)
        cond = np.clip(np.asarray(F.cdf(b[k:], b[k]), dtype=float) / b[k], 0.0, 1.0)
        inner = cond[0] / (k - 1)
        if n0 > k:
            inner += float(np.sum(np.diff(cond) / np.arange(k, n0)))
        val = (n0 - 1) * inner
        if val > best:
            best, best_n0 = val, n0
    scale = min(best, 1.0)
    base = lr_template(n, gamma, alpha)
    ranks = np.maximum(np.arange(1, n + 1), k)
    values = base[ranks] / scale
    if values[-1] >= 1.0:
        raise ValueError(
            f"inflated constants reach {values[-1]:.6g} >= 1; lower alpha"
        )
    return ConstantsReport(family="pairwise-lr", scale=best, worst_n0=best_n0,
                           constants=CriticalConstants(values=values, k=k))


# ---------------------------------------------------------------------------
# pairwise-aware bounds under arbitrary dependence, and their calibration

class _PairGrid:
    """F evaluated on all pairs of one template vector, chunked and cached."""

    def __init__(self, F: PairwiseNull, tpl: np.ndarray, chunk: int = 65536):
        u = tpl[:, None]
        v = tpl[None, :]
        flat_u = np.broadcast_to(u, (tpl.size, tpl.size)).ravel()
        flat_v = np.broadcast_to(v, (tpl.size, tpl.size)).ravel()
        out = np.empty(flat_u.size)
        for lo in range(0, flat_u.size, chunk):
            hi = lo + chunk
            out[lo:hi] = np.asarray(F.cdf(flat_u[lo:hi], flat_v[lo:hi]))
        self.matrix = out.reshape(tpl.size, tpl.size)


def pair_sd_bound(template: Template, gamma: Gamma, k: int, F: PairwiseNull,
                  beta: float, n0_max: int | None = None) -> BoundValue:
    """Stepdown exceedance bound mixing marginal and pairwise information.

    For each n0 the bound splits the level sum at K: levels i <= K use the
    marginal telescope, levels i >= K+2 use the pairwise diagonal telescope,
    and two boundary terms (one additive, one subtractive) join the parts
    when M >= K+1.  The reported value is max over n0 of min over K.
    """
    n = template.n
    tpl = template.values(beta)
    grid = _PairGrid(F, tpl)
    f_all = _floor_odds_plus1(n, gamma)
    best, best_n0, split = -np.inf, -1, {}
    for n0 in _n0_range(n, k, n0_max):
        m_cap, slack = _sd_slack(n0, n - n0, gamma, f_all)
        mbar = np.concatenate(
            [[0], np.maximum(np.arange(1, m_cap + 1), k) + slack]
        )
        av = tpl[mbar]
        prefix = _sd_marginal_prefix(av, k, n0)          # A[0..M]
        iok = np.maximum(np.arange(1, m_cap + 1), k)
        fdiag = grid.matrix[mbar, mbar]                  # F(av_i, av_i), 0..M
        denom = np.where(iok >= 2, iok * (iok - 1), 1)
        pd = np.where(iok >= 2,
                      n0 * (n0 - 1) * np.diff(fdiag) / denom, 0.0)
        suffix = np.concatenate([np.cumsum(pd[::-1])[::-1], [0.0, 0.0]])
        # expr(K) = A[K] + sum_{i >= K+2} pd_i + boundary terms if M >= K+1
        kk = np.arange(1, m_cap + 1)
        expr = prefix[1:] + suffix[np.minimum(kk + 1, m_cap + 1)]
        if m_cap >= 2:
            kb = kk[:-1]                                  # K = 1..M-1
            k1 = np.maximum(kb + 1, k)
            expr[:-1] += (
                n0 * (n0 - 1) * fdiag[kb + 1] / (k1 * (k1 - 1))
                - n0 * grid.matrix[mbar[kb], mbar[kb + 1]] / k1
            )
        j = int(np.argmin(expr))
        val = float(expr[j])
        split[n0] = j + 1
        if val > best:
            best, best_n0 = val, n0
    return BoundValue(value=best, worst_n0=best_n0, split_by_n0=split)


def pair_su_bound(template: Template, gamma: Gamma, k: int, F: PairwiseNull,
                  beta: float, n0_max: int | None = None) -> BoundValue:
    """Stepup exceedance bound mixing marginal and pairwise information.

    Ranks r <= K contribute the marginal telescope; ranks r > K contribute
    an r^-2 marginal term, the diagonal pairwise increment, and the
    rectangle masses G over consecutive threshold pairs (r, s), s > r.
    The reported value is max over n0 of min over K in [k, n0].
    """
    n = template.n
    tpl = template.values(beta)
    grid = _PairGrid(F, tpl)
    raw = _su_rank_raw(n, gamma)
    best, best_n0, split = -np.inf, -1, {}
    for n0 in _n0_range(n, k, n0_max):
        i = np.arange(n0 + 1)
        mt = np.minimum(raw[: n0 + 1], i + (n - n0))
        mt[0] = 0
        av = tpl[mt]
        d = np.diff(av)
        r = np.arange(1, n0 + 1)
        head = n0 * d / r
        pref = np.concatenate([[0.0], np.cumsum(head)])  # pref[j] = sum_{r<=j}
        fmm = grid.matrix[np.ix_(mt, mt)]
        rect = fmm[1:, 1:] - fmm[:-1, 1:] - fmm[1:, :-1] + fmm[:-1, :-1]
        w = rect / r[None, :]
        tail_w = np.concatenate(
            [np.cumsum(w[:, ::-1], axis=1)[:, ::-1], np.zeros((n0, 1))], axis=1
        )
        cross = (n0 * (n0 - 1) / r) * tail_w[np.arange(n0), r]
        pdiag = n0 * (n0 - 1) * (np.diagonal(fmm)[1:] - fmm[1:, :-1].diagonal()) / r**2
        row = n0 * d / r**2 + pdiag + cross
        tail = np.concatenate([np.cumsum(row[::-1])[::-1], [0.0]])
        kk = np.arange(k, n0 + 1)
        expr = n0 * av[k - 1] / k + (pref[kk] - pref[k - 1]) + tail[kk]
        j = int(np.argmin(expr))
        val = float(expr[j])
        split[n0] = k + j
        if val > best:
            best, best_n0 = val, n0
    return BoundValue(value=best, worst_n0=best_n0, split_by_n0=split)


def bisect_scale(value_fn, target: float, value_tol: float = 1e-9,
                 width_tol: float = 1e-12) -> float:
    """Find beta in (0, 1) with value_fn(beta) = target by bisection.

    Stops when |value - target| <= value_tol or the bracket width falls
    below width_tol.  value_fn is assumed increasing; that is checked on
    the trajectory of evaluated points and a violation aborts with
    ``CalibrationError`` rather than silently picking a root.
    """
    trace = []

    def value(beta: float) -> float:
        v = value_fn(beta)
        trace.append((beta, v))
        return v

    lo, hi = 1e-12, 1.0 - 1e-12
    v_lo, v_hi = value(lo), value(hi)
    if not (v_lo - target) * (v_hi - target) < 0:
        raise CalibrationError(
            f"target {target} unattainable: values span [{v_lo:.3g}, {v_hi:.3g}]"
        )
    beta_mid = 0.5 * (lo + hi)
    while hi - lo > width_tol:
        beta_mid = 0.5 * (lo + hi)
        v_mid = value(beta_mid)
        if abs(v_mid - target) <= value_tol:
            break
        if (v_mid - target) * (v_lo - target) > 0:
            lo, v_lo = beta_mid, v_mid
        else:
            hi, v_hi = beta_mid, v_mid

    trace.sort()
    vals = [t[1] for t in trace]
    if any(b - a < -1e-12 for a, b in zip(vals[:-1], vals[1:])):
        raise CalibrationError(
            "value function is not monotone on the bisection trajectory; "
            f"evaluated points: {trace}"
        )
    return beta_mid


def calibrate_pair_scale(direction: str, template: Template, gamma: Gamma,
                         k: int, alpha: float, F: PairwiseNull,
                         n0_max: int | None = None,
                         value_tol: float = 1e-9,
                         width_tol: float = 1e-12) -> ConstantsReport:
    """Solve bound(beta) = alpha for the template scale by bisection.

    Returns the calibrated constants tpl(beta*) flattened at rank k.  The
    residual |bound(beta*) - alpha| is at most value_tol, so dominance
    comparisons against other families should allow slack of that order.
    """
    if direction not in ("sd", "su"):
        raise ValueError(f"direction must be 'sd' or 'su', got {direction!r}")
    bound = pair_sd_bound if direction == "sd" else pair_su_bound
    beta_star = bisect_scale(
        lambda beta: bound(template, gamma, k, F, beta, n0_max=n0_max).value,
        alpha, value_tol=value_tol, width_tol=width_tol,
    )
    final = bound(template, gamma, k, F, beta_star, n0_max=n0_max)
    tpl_star = template.values(beta_star)
    ranks = np.maximum(np.arange(1, template.n + 1), k)
    constants = CriticalConstants(values=tpl_star[ranks], k=k)
    return ConstantsReport(family=f"pair-{direction}", constants=constants,
                           scale=final.value, worst_n0=final.worst_n0,
                           beta_star=beta_star, split_by_n0=final.split_by_n0)
