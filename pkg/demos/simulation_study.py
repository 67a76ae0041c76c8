"""A small level-and-power study with coupled procedures.

Draws equicorrelated normal data (effect sqrt(10) on the signal means),
runs the stepdown procedure and its stepup analogue on the same samples,
and estimates the exceedance probability Pr(FDP > gamma) and the average
power across a correlation sweep.  With common random numbers the stepup
procedure's rejections contain the stepdown ones replication by
replication, so the power ordering is exact, not statistical.

Writes demo_grid.csv and demo_grid.svg next to this script.
"""

import pathlib

from fdpctl import Gamma
from fdpctl.simlab import (DependenceModel, MonteCarloConfig, build_procedure,
                           run_grid)
from fdpctl.svg import line_panels_svg

here = pathlib.Path(__file__).resolve().parent
rhos = [0.0, 0.2, 0.4, 0.6, 0.8]
procedures = [build_procedure("lr-sd"), build_procedure("lr-su")]
base = MonteCarloConfig(n=100, pi0=0.5, gamma=Gamma.parse("1/10"),
                        reps=1000, seed=2024,
                        model=DependenceModel("uniform", 0.0))

reports = run_grid(base, procedures, rhos=rhos)

print(f"{'procedure':>10s} {'rho':>5s} {'exceedance':>11s} {'power':>8s}")
rows = ["procedure,rho,exceedance,exceedance_se,power,power_se"]
series_exc = {p.name: [] for p in procedures}
series_pow = {p.name: [] for p in procedures}
for rep in reports:
    rho = rep.config.model.rho
    print(f"{rep.procedure:>10s} {rho:5.2f} {rep.exceedance:11.4f} "
          f"{rep.power:8.4f}")
    rows.append(f"{rep.procedure},{rho!r},{rep.exceedance!r},"
                f"{rep.exceedance_se!r},{rep.power!r},{rep.power_se!r}")
    series_exc[rep.procedure].append(rep.exceedance)
    series_pow[rep.procedure].append(rep.power)

(here / "demo_grid.csv").write_text("\n".join(rows) + "\n")
doc = line_panels_svg(
    [("Exceedance rate", "Pr(FDP > gamma)", rhos, series_exc, base.alpha),
     ("Average power", "E[S / n1]", rhos, series_pow, None)],
    x_label="rho",
)
(here / "demo_grid.svg").write_text(doc)
print(f"\nwrote {here / 'demo_grid.csv'} and {here / 'demo_grid.svg'}")
print("The dashed rule in the first panel marks the target level; both "
      "procedures stay below it, and the stepup curve in the second panel "
      "sits on or above the stepdown one, with the gap widening as the "
      "correlation grows.")
