"""Brute-force checks by exact rank over a prime field.

Every dimension here comes from an explicit coefficient matrix: generators
times all monomials of the complementary bidegree, one row each, reduced
with numpy modulo p.  Nothing in this module uses the closed formulas it
is meant to test.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from .algebra import (DEFAULT_PRIME, EchelonBasis, Poly, PolyRing,
                      graded_piece_dim, substitute)
from .presentation import PresentationData, validate
from .rees import ReesGenerators, fiber_equations


def _mod(c, p: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def _prime(ring: PolyRing) -> int:
    return ring.field.p if ring.field.p else DEFAULT_PRIME


@lru_cache(maxsize=512)
def _basis(ring: PolyRing, u: int, s: int):
    monos = ring.monomials_of_bidegree(u, s)
    return monos, {k: i for i, k in enumerate(monos)}


class GradedSpan:
    """Row space of the (u, s) piece of an ideal, kept in reduced echelon form."""

    def __init__(self, ring: PolyRing, u: int, s: int, p: int | None = None):
        self.ring = ring
        self.u, self.s = u, s
        self.p = p or _prime(ring)
        self.monos, self.cols = _basis(ring, u, s)
        self.E = EchelonBasis(max(len(self.monos), 1), self.p)

    @property
    def ambient(self) -> int:
        return len(self.monos)

    @property
    def dim(self) -> int:
        return self.E.rank if self.monos else 0

    def rows(self, gens: Iterable[Poly]) -> np.ndarray:
        blocks = []
        p, cols = self.p, self.cols
        for gen in gens:
            if gen.is_zero:
                continue
            gu, gs = gen.bidegree()
            if gu > self.u or gs > self.s:
                continue
            keys = list(gen.terms_.keys())
            coeffs = np.array([_mod(c, p) for c in gen.terms_.values()], dtype=np.int64)
            mus = _basis(self.ring, self.u - gu, self.s - gs)[0]
            idx = np.array([[cols[k + mu] for k in keys] for mu in mus], dtype=np.int64)
            block = np.zeros((len(mus), len(self.monos)), dtype=np.int64)
            block[np.arange(len(mus))[:, None], idx] = coeffs
            blocks.append(block)
        if not blocks:
            return np.zeros((0, len(self.monos)), dtype=np.int64)
        return np.vstack(blocks)

    def add(self, gens: Iterable[Poly], block: int = 256) -> int:
        if not self.monos:
            return 0
        M = self.rows(gens)
        for start in range(0, M.shape[0], block):
            if self.E.full:
                break
            self.E.add_rows(M[start:start + block])
        return self.dim

    def copy(self) -> "GradedSpan":
        new = GradedSpan.__new__(GradedSpan)
        new.__dict__.update(self.__dict__)
        E = EchelonBasis(self.E.ncols, self.p)
        E.E = self.E.E.copy()
        E.pivots = list(self.E.pivots)
        new.E = E
        return new


def span_dim(gens: Sequence[Poly], u: int, s: int, ring: PolyRing | None = None) -> int:
    """Dimension of the (u, s) piece of the ideal generated by gens."""
    gens = list(gens)
    if ring is None:
        if not gens:
            return 0
        ring = gens[0].ring
    sp = GradedSpan(ring, u, s)
    return sp.add(gens)


# -- powers of I -------------------------------------------------------------

class PowerOracle:
    """Dimensions of I^s in each degree from explicit products of the delta_i."""

    def __init__(self, pd: PresentationData):
        self.pd = pd
        self.deltas = list(validate(pd).deltas)
        self.R = pd.ring
        self._products: dict[int, list[Poly]] = {}
        self._dims: dict[tuple[int, int], int] = {}

    def products(self, s: int) -> list[Poly]:
        if s not in self._products:
            if s == 0:
                self._products[0] = [self.R.one()]
            else:
                out = []
                for combo in combinations_with_replacement(range(len(self.deltas)), s):
                    q = self.R.one()
                    for i in combo:
                        q = q * self.deltas[i]
                    out.append(q)
                self._products[s] = out
        return self._products[s]

    def dim(self, s: int, z: int) -> int:
        if s < 0:
            raise ValueError("s must be non-negative")
        if z < s * self.pd.d:
            return 0
        if (s, z) not in self._dims:
            self._dims[(s, z)] = span_dim(self.products(s), z, 0, self.R)
        return self._dims[(s, z)]

    def reduction_number(self, rng=None, max_r: int = 12) -> int:
        """Least r with I^(r+1) = J I^r for a random two-generated J inside I_d."""
        rng = rng if rng is not None else np.random.default_rng(0)
        F, R = self.R.field, self.R
        J = []
        for _ in range(2):
            ell = R.zero()
            for dl in self.deltas:
                ell = ell + dl.scale(F.random(rng))
            J.append(ell)
        d = self.pd.d
        for r in range(max_r + 1):
            z = (r + 1) * d
            full = self.dim(r + 1, z)
            gens = [j * q for j in J for q in self.products(r)]
            if span_dim(gens, z, 0, R) == full:
                return r
        raise RuntimeError("reduction number exceeds the search bound")


def power_dim(pd: PresentationData, s: int, z: int) -> int:
    return PowerOracle(pd).dim(s, z)


# -- Rees substitution -------------------------------------------------------

class ReesMap:
    """T_i -> delta_i t with x, y fixed."""

    def __init__(self, pd: PresentationData):
        deltas = validate(pd).deltas
        self.m = pd.m
        self.target = PolyRing(pd.field, ["x", "y", "t"], [(1, 0), (1, 0), (0, 1)])
        P = self.target
        lift = {"x": P.var("x"), "y": P.var("y")}
        self.assign = dict(lift)
        for i, dl in enumerate(deltas):
            self.assign[f"T{i + 1}"] = substitute(dl, lift, P) * P.var("t") if dl else P.zero()

    def __call__(self, p: Poly) -> Poly:
        return substitute(p, self.assign, self.target)


def kernel_membership(p: Poly, pd: PresentationData, rmap: ReesMap | None = None) -> bool:
    rmap = rmap or ReesMap(pd)
    return rmap(p).is_zero


# -- fiber ring ----------------------------------------------------------------

def fiber_hilbert_brute(rg: ReesGenerators, s: int) -> int:
    """dim of k[T]_s modulo the fiber equations (minors of truncated psi and x,y-free G's)."""
    S = rg.st.S
    if s < 0:
        return 0
    total = graded_piece_dim(0, s, rg.st.m)
    eqs = [gen.poly for gen in fiber_equations(rg)]
    return total - span_dim(eqs, 0, s, S)


def kn_fiber_hilbert_brute(rg: ReesGenerators, s: int) -> int:
    """dim of the degree-s part of K^(n) in k[T]/I2(psi_tr)."""
    st = rg.st
    base = GradedSpan(st.S, 0, s)
    base.add(st.H_tr)
    before = base.dim
    base.add(st.fiber_kn_generators())
    return base.dim - before


# -- window checks ---------------------------------------------------------------

def ideal_equality_cell(rg: ReesGenerators, power: PowerOracle, u: int, s: int) -> tuple[int, int]:
    """(dim of the generated ideal at (u,s), dim of S_(u,s) minus dim I^s_(u+sd))."""
    S = rg.st.S
    lhs = span_dim(rg.polys(), u, s, S)
    rhs = graded_piece_dim(u, s, rg.st.m) - power.dim(s, u + s * rg.pd.d)
    return lhs, rhs


def yn_gk_cell(rg: ReesGenerators, u: int, s: int) -> tuple[int, int, int]:
    """Ranks of H + y^n L, H + g K^(n) and their sum in bidegree (u, s)."""
    st = rg.st
    S = st.S
    yn = S.var("y") ** st.n
    base = GradedSpan(S, u, s)
    base.add(st.H)
    # y^n times a minor already lies in the span of H, so only the G's are added
    gk = [rg.g * p for _, _, p in st.symbolic_power_generators()]
    right = base.copy()
    right.add(gk)
    base.add([yn * gen.canonical for gen in rg.G])
    left = base.dim
    base.add(gk)
    return left, right.dim, base.dim


def verify(pd: PresentationData, rg: ReesGenerators, window: tuple[int, int] | None = None,
           rng=None) -> dict:
    """Run the brute-force comparisons and return a JSON-ready report."""
    from . import invariants as inv
    from .rees import pi_substitution_check

    n, d = pd.n, pd.d
    umax, smax = window or (2 * n, 3)
    checks = []

    def record(name, ok, window=None, counterexample=None, detail=None):
        entry = {"name": name, "pass": bool(ok)}
        if window is not None:
            entry["window"] = window
        if counterexample is not None and not ok:
            entry["counterexample"] = counterexample
        if detail is not None:
            entry["detail"] = detail
        checks.append(entry)

    rmap = ReesMap(pd)
    bad = [gen.name() for gen in rg.all if not kernel_membership(gen.poly, pd, rmap)]
    record("kernel_membership", not bad, detail={"failed": bad} if bad else None)

    power = PowerOracle(pd)
    ce = None
    for s in range(smax + 1):
        for u in range(umax + 1):
            lhs, rhs = ideal_equality_cell(rg, power, u, s)
            if lhs != rhs and ce is None:
                ce = [u, s]
    record("ideal_equality", ce is None, {"u": umax, "s": smax}, ce)

    bad = [[list(t.a), j] for t in rg.st.tuples for j in range(1, t.r + 1)
           if not pi_substitution_check(rg, t, j)]
    record("pi_identity", not bad, detail={"failed": bad} if bad else None)

    ce = None
    for s in range(1, smax + 1):
        for z in range(s * d, s * d + 2 * n + 1):
            if inv.hilbert_power(s, z, rg.st) != power.dim(s, z) and ce is None:
                ce = [s, z]
    record("hilbert_power", ce is None, {"s": smax, "z": "sd..sd+2n"}, ce)

    ce = None
    for s in range(1, smax + 1):
        fitted = inv.fit_resolution(lambda z: power.dim(s, z), s * d, 2 * n + 2, s)
        table = inv.betti_table(s, rg.cf, n)
        reg = inv.regularity_power(s, rg.cf.sigma, rg.cf.tau, n)
        if not table.same_resolution(fitted) or fitted.regularity != reg:
            ce = ce or [s]
    record("betti_and_regularity", ce is None, {"s": smax}, ce)

    red, _ = inv.reduction_number(rg.cf, n, rg.st)
    brute = power.reduction_number(rng)
    record("reduction_number", red == brute, detail={"formula": red, "brute": brute})

    p = inv.postulation(rg.cf, n)
    diffs = [s for s in range(0, p + 4)
             if fiber_hilbert_brute(rg, s) != inv.fiber_hilbert_polynomial(s, rg.cf, n)]
    record("postulation", bool(diffs) and max(diffs) == p,
           detail={"formula": p, "brute": max(diffs) if diffs else None})

    ce = None
    for s in range(smax + 1):
        for u in range(umax + 1):
            a, b, c = yn_gk_cell(rg, u, s)
            if not (a == b == c) and ce is None:
                ce = [u, s]
    record("yn_gk_window", ce is None, {"u": umax, "s": smax}, ce)

    return {"ok": all(c["pass"] for c in checks), "checks": checks}
