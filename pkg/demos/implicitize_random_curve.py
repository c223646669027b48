"""Implicitize a random rational curve whose syzygy matrix is almost linear.

A random presentation with hidden block structure (sigma, tau) is drawn,
its linear part is brought to normal form, and the implicit equations are
checked by plugging the parametrization back in.

    python3 demos/implicitize_random_curve.py [sigma tau n]
"""

import sys

import numpy as np

from scrollrees import canonicalize, fiber_equations, random_presentation, rees_ideal
from scrollrees.algebra import Field, substitute

sigma, tau, n = (int(v) for v in sys.argv[1:4]) if len(sys.argv) > 3 else (2, 1, 3)
F = Field(32003)
pd = random_presentation(sigma, tau, n, F, np.random.default_rng(2026))
print(f"m = {pd.m}, n = {n}, parametrization by forms of degree d = {pd.d}")

cf = canonicalize(pd.linear, F)
print(f"hidden block sizes recovered: sigma={cf.sigma}, tau={cf.tau} (rho={cf.rho})")

rg = rees_ideal(pd)
eqs = fiber_equations(rg)
R = pd.ring
assign = {f"T{i + 1}": dl for i, dl in enumerate(pd.deltas)}
assign.update({"x": R.var("x"), "y": R.var("y")})
print(f"{len(eqs)} implicit equations:")
for gen in eqs:
    ok = substitute(gen.poly, assign, R).is_zero
    print(f"  [{gen.name()}] degree {gen.bidegree[1]}, {len(gen.poly)} terms, "
          f"vanishes on the curve: {ok}")
