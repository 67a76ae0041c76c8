import math

import numpy as np
import pytest

from fdpctl.core import Gamma
from fdpctl.simlab import (DependenceModel, MonteCarloConfig, build_procedure,
                           generate_sample, generate_sample_cholesky,
                           procedure_constants, run_cell, run_grid,
                           run_monte_carlo, two_sided_pvalues)

G10 = Gamma(1, 10)


def draws(model, n, count, seed=9):
    return np.array([
        generate_sample(model, np.zeros(n), np.random.default_rng((seed, r)))
        for r in range(count)
    ])


class TestGenerators:
    def test_independent_case(self):
        z = draws(DependenceModel("uniform", 0.0), 10, 40000)
        c = np.corrcoef(z.T)
        assert abs(np.mean(z)) < 0.01
        assert abs(np.std(z) - 1.0) < 0.01
        assert np.max(np.abs(c[np.triu_indices(10, 1)])) < 0.03

    def test_uniform_pairwise_correlation(self):
        z = draws(DependenceModel("uniform", 0.5), 20, 100000)
        off = np.corrcoef(z.T)[np.triu_indices(20, 1)]
        assert abs(off.mean() - 0.5) < 0.01

    def test_ar1_lag_two_correlation(self):
        z = draws(DependenceModel("ar1", 0.8), 30, 100000)
        lag2 = np.mean([np.corrcoef(z[:, i], z[:, i + 2])[0, 1]
                        for i in range(28)])
        assert abs(lag2 - 0.64) < 0.01

    def test_block_structure(self):
        z = draws(DependenceModel("block", 0.6, block_size=3), 6, 60000)
        c = np.corrcoef(z.T)
        assert abs(c[0, 1] - 0.6) < 0.02    # same block
        assert abs(c[0, 3]) < 0.02          # across blocks

    def test_block_size_must_divide_n(self):
        with pytest.raises(ValueError, match="divide"):
            generate_sample(DependenceModel("block", 0.5, block_size=4),
                            np.zeros(6), np.random.default_rng(0))

    def test_cholesky_path_agrees_with_factor_path(self):
        n = 6
        for rho in (0.3, 0.7):
            corr = (1 - rho) * np.eye(n) + rho * np.ones((n, n))
            zc = np.array([
                generate_sample_cholesky(corr, np.zeros(n),
                                         np.random.default_rng((1, r)))
                for r in range(60000)
            ])
            zf = draws(DependenceModel("uniform", rho), n, 60000, seed=2)
            cc = np.corrcoef(zc.T)[np.triu_indices(n, 1)].mean()
            cf = np.corrcoef(zf.T)[np.triu_indices(n, 1)].mean()
            assert abs(cc - rho) < 0.02 and abs(cf - rho) < 0.02

    def test_mean_shift(self):
        mu = np.array([0.0, 3.0])
        z = np.array([generate_sample(DependenceModel("uniform", 0.2), mu,
                                      np.random.default_rng((3, r)))
                      for r in range(20000)])
        assert np.allclose(z.mean(axis=0), mu, atol=0.05)


class TestTwoSidedPvalues:
    def test_zero_stat(self):
        assert two_sided_pvalues(np.array([0.0]))[0] == 1.0

    def test_alpha_quantile(self):
        assert two_sided_pvalues(np.array([1.959964]))[0] == \
            pytest.approx(0.05, abs=1e-6)

    def test_sign_symmetry(self):
        z = np.array([0.7, -0.7, 2.3, -2.3])
        p = two_sided_pvalues(z)
        assert p[0] == p[1] and p[2] == p[3]


class TestRunMonteCarlo:
    def test_level_under_complete_null(self):
        for token in ("lr-sd", "lr-su"):
            cfg = MonteCarloConfig(n=100, pi0=1.0, gamma=G10, reps=2000, seed=11,
                                   procedure=build_procedure(token))
            rep = run_monte_carlo(cfg)
            assert rep.exceedance <= 0.05 + 3 * rep.exceedance_se
            assert rep.power is None and rep.power_se is None

    def test_tiny_constants_reject_nothing(self):
        cfg = MonteCarloConfig(n=20, pi0=0.5, gamma=G10, alpha=1e-12,
                               reps=200, seed=5,
                               procedure=build_procedure("lr-su"))
        rep = run_monte_carlo(cfg)
        assert rep.exceedance == 0.0
        assert rep.power == 0.0

    def test_stepup_power_dominates_stepdown_pointwise(self):
        cfg = MonteCarloConfig(n=100, pi0=0.5, gamma=G10, reps=500, seed=17,
                               model=DependenceModel("uniform", 0.8))
        out = run_cell(cfg, [build_procedure("lr-sd"), build_procedure("lr-su")])
        _, power_sd = out["lr-sd"]
        _, power_su = out["lr-su"]
        assert np.all(power_su >= power_sd)

    def test_pairwise_aware_families_dominate_marginal_only(self):
        # within a coupled cell the calibrated pairwise procedures' larger
        # constants reject supersets, so the power ordering is pointwise;
        # at rho = 0.5 the stepdown bound coincides with the marginal one
        # (zero gap) while the stepup gains outright
        cfg = MonteCarloConfig(n=50, pi0=0.5, gamma=G10, reps=500, seed=29,
                               model=DependenceModel("uniform", 0.5))
        out = run_cell(cfg, [build_procedure(t) for t in
                             ("thm35", "thm36", "thm37", "thm38")])
        assert np.all(out["thm37"][1] >= out["thm35"][1])
        assert np.all(out["thm38"][1] >= out["thm36"][1])
        assert out["thm38"][1].mean() > out["thm36"][1].mean()

    def test_seed_determinism(self):
        cfg = MonteCarloConfig(n=50, pi0=0.5, gamma=G10, reps=100, seed=23,
                               model=DependenceModel("uniform", 0.4),
                               procedure=build_procedure("lr-su"))
        a = run_monte_carlo(cfg)
        b = run_monte_carlo(cfg)
        assert a.exceedance == b.exceedance and a.power == b.power

    def test_pi0_must_make_n0_integral(self):
        with pytest.raises(ValueError, match="integral"):
            MonteCarloConfig(n=10, pi0=0.55, gamma=G10)

    def test_all_families_control_level_under_independence(self):
        # pi0 = 1, rho = 0: every family's guarantee applies
        tokens = ("lr-sd", "lr-su", "thm32", "thm33", "thm34-sd", "thm34-su",
                  "thm35", "thm36", "thm37", "thm38")
        cfg = MonteCarloConfig(n=20, pi0=1.0, gamma=G10, reps=400, seed=31)
        procs = [build_procedure(t, k=2 if t.startswith("thm34") else 1)
                 for t in tokens]
        out = run_cell(cfg, procs)
        for name, (exceed, _) in out.items():
            rate = exceed.mean()
            se = math.sqrt(max(rate * (1 - rate), 1e-12) / exceed.size)
            assert rate <= 0.05 + 3 * se, name


class TestExpectationBounds:
    # The exceedance bounds are expectation-level statements, not pointwise
    # ones, so they are validated here as Monte Carlo upper bounds:
    # estimated rate <= bound + 3 se under a model where the bound applies.
    @pytest.mark.parametrize("rho", [0.0, 0.5])
    @pytest.mark.parametrize("k", [1, 2])
    def test_rate_below_pairwise_bound_functionals(self, rho, k):
        from fdpctl import constants as cmod
        from fdpctl.core import CriticalConstants, TruthLabels
        from fdpctl.engine import annotate_truth, step_down, step_up
        from fdpctl.pairdist import EquicorrelatedPairs, IndependentPairs

        n, beta, reps = 20, 0.02, 2000
        tmpl = cmod.make_template("lr", n, gamma=G10)
        F = IndependentPairs() if rho == 0.0 else EquicorrelatedPairs(rho)
        vals = tmpl.values(beta)
        constants = CriticalConstants(
            values=vals[np.maximum(np.arange(1, n + 1), k)], k=k)
        labels = TruthLabels.nulls_first(n, n)  # complete null
        model = DependenceModel("uniform", rho)
        bounds = {
            step_down: min(cmod.pair_sd_bound(tmpl, G10, k, F, beta).value, 1.0),
            step_up: min(cmod.pair_su_bound(tmpl, G10, k, F, beta).value, 1.0),
        }
        hits = {step_down: 0, step_up: 0}
        for rep in range(reps):
            rng = np.random.default_rng((4040, rep))
            p = two_sided_pvalues(generate_sample(model, np.zeros(n), rng))
            for proc in (step_down, step_up):
                res = annotate_truth(proc(p, constants), labels)
                if res.v >= k and res.v * G10.den > res.r * G10.num:
                    hits[proc] += 1
        for proc, bound in bounds.items():
            rate = hits[proc] / reps
            se = math.sqrt(max(rate * (1 - rate), 1e-12) / reps)
            assert rate <= bound + 3 * se, (proc.__name__, rate, bound)

    def test_rate_below_marginal_bound_functionals(self):
        from fdpctl import constants as cmod
        from fdpctl.core import CriticalConstants, TruthLabels
        from fdpctl.engine import annotate_truth, step_down, step_up

        n, beta, reps = 20, 0.02, 2000
        vals = cmod.make_template("lr", n, gamma=G10).values(beta)
        constants = CriticalConstants(values=vals[1:])
        labels = TruthLabels.nulls_first(n, n)
        model = DependenceModel("uniform", 0.5)
        bounds = {step_down: min(cmod.sd_marginal_bound(vals, G10), 1.0),
                  step_up: min(cmod.su_marginal_bound(vals, G10), 1.0)}
        hits = {step_down: 0, step_up: 0}
        for rep in range(reps):
            rng = np.random.default_rng((5050, rep))
            p = two_sided_pvalues(generate_sample(model, np.zeros(n), rng))
            for proc in (step_down, step_up):
                res = annotate_truth(proc(p, constants), labels)
                if res.v >= 1 and res.v * G10.den > res.r * G10.num:
                    hits[proc] += 1
        for proc, bound in bounds.items():
            rate = hits[proc] / reps
            se = math.sqrt(max(rate * (1 - rate), 1e-12) / reps)
            assert rate <= bound + 3 * se, (proc.__name__, rate, bound)


class TestRunGrid:
    def test_single_cell_matches_run_monte_carlo(self):
        proc = build_procedure("lr-sd")
        base = MonteCarloConfig(n=40, pi0=0.5, gamma=G10, reps=300, seed=3,
                                procedure=proc)
        grid = run_grid(base, [proc], rhos=[0.2])
        single = run_monte_carlo(
            MonteCarloConfig(n=40, pi0=0.5, gamma=G10, reps=300, seed=3,
                             model=DependenceModel("uniform", 0.2),
                             procedure=proc))
        assert len(grid) == 1
        assert grid[0].exceedance == single.exceedance
        assert grid[0].power == single.power

    def test_thread_count_does_not_change_results(self):
        base = MonteCarloConfig(n=30, pi0=0.5, gamma=G10, reps=200, seed=19)
        procs = [build_procedure("lr-sd"), build_procedure("lr-su")]
        serial = run_grid(base, procs, rhos=[0.0, 0.5], pi0s=[0.2, 0.5])
        threaded = run_grid(base, procs, rhos=[0.0, 0.5], pi0s=[0.2, 0.5],
                            threads=4)
        assert [(r.procedure, r.exceedance, r.power) for r in serial] == \
            [(r.procedure, r.exceedance, r.power) for r in threaded]

    def test_empty_sweep_rejected(self):
        base = MonteCarloConfig(n=10, pi0=0.5, gamma=G10, reps=10, seed=1)
        with pytest.raises(ValueError):
            run_grid(base, [], rhos=[0.1])
        with pytest.raises(ValueError):
            run_grid(base, [build_procedure("lr-sd")], rhos=[])


class TestProcedureResolution:
    def test_pairwise_procedures_need_model(self):
        spec = build_procedure("thm34-su", k=2)
        with pytest.raises(ValueError, match="pairwise"):
            procedure_constants(spec, 10, G10, 0.05, F=None)

    def test_non_equicorrelated_dependence_rejected_for_pairwise(self):
        cfg = MonteCarloConfig(n=12, pi0=0.5, gamma=G10, reps=10, seed=1,
                               model=DependenceModel("ar1", 0.5))
        with pytest.raises(ValueError, match="equicorrelated"):
            run_cell(cfg, [build_procedure("thm34-su", k=2)])

    def test_unknown_token(self):
        with pytest.raises(ValueError, match="unknown procedure"):
            build_procedure("thm99")

    def test_constants_cover_all_tokens(self):
        from fdpctl.pairdist import EquicorrelatedPairs
        for token in ("lr-sd", "lr-su", "thm32", "thm33", "thm34-sd",
                      "thm34-su", "thm35", "thm36", "thm37", "thm38"):
            spec = build_procedure(token, k=2 if "34" in token else 1)
            cc = procedure_constants(spec, 12, G10, 0.05,
                                     F=EquicorrelatedPairs(0.3))
            assert cc.n == 12
