"""Tabulate invariants across block shapes and compare with brute force.

For each shape the reduction number, postulation number and regularity
of I^s come from closed formulas; the brute-force columns recompute the
reduction number and the stabilisation of reg(I^s) by explicit ranks.

    python3 demos/invariants_by_shape.py
"""

import numpy as np

from scrollrees import invariant_report, random_presentation
from scrollrees.algebra import Field
from scrollrees.invariants import fit_resolution
from scrollrees.oracle import PowerOracle

F = Field(32003)
n = 4
print(f"n = {n}")
print(f"{'shape':>8} {'rho':>3} {'CM fiber':>8} {'r(I)':>4} {'brute':>5} {'post':>4}  reg(I^s) s=1..4 (formula / brute)")
for sigma, tau in [(1, 0), (2, 0), (4, 0), (1, 1), (2, 1), (3, 1), (2, 2)]:
    pd = random_presentation(sigma, tau, n, F, np.random.default_rng([sigma, tau]))
    rep = invariant_report((sigma, tau), n, max_s=4)
    oracle = PowerOracle(pd)
    brute_r = oracle.reduction_number(np.random.default_rng(1))
    regs = [rep.regularity[s] for s in range(1, 5)]
    fitted = [fit_resolution(lambda z, s=s: oracle.dim(s, z), s * pd.d, 2 * n + 2, s).regularity
              for s in range(1, 5)]
    print(f"{str((sigma, tau)):>8} {rep.rho:>3} {str(rep.depths.fiber_cm):>8} {rep.reduction:>4} "
          f"{brute_r:>5} {rep.postulation:>4}  {regs} / {fitted}")
