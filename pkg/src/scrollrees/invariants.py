"""Closed-form invariants of I and its powers.

Twists are recorded as positive integers t standing for R(-t).  Every
quantity depends only on (sigma, tau, n), except hilbert_power which runs
through the Hilbert-function lengths of the scroll data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .algebra import binomial
from .presentation import CanonicalForm
from .scroll import ScrollStructure, ceil_div, lam


class NoFit(ValueError):
    pass


def _shape(cf) -> tuple[int, int]:
    if isinstance(cf, CanonicalForm):
        return cf.sigma, cf.tau
    sigma, tau = cf
    return sigma, tau


@dataclass
class BettiTable:
    """0 -> R(-sd-1)^b + F -> R(-D)^b0 -> I^s -> 0, with F listed in `twists`."""

    s: int
    D: int
    a: int
    b: int
    b0: int
    twists: list = field(default_factory=list)

    @property
    def all_twists(self) -> list[int]:
        return sorted([self.D + 1] * self.b + list(self.twists))

    @property
    def regularity(self) -> int:
        return max(self.all_twists) - 1 if self.all_twists else self.D

    def hilbert(self, z: int) -> int:
        return self.b0 * lam(self.D, z) - sum(lam(t, z) for t in self.all_twists)

    def same_resolution(self, other: "BettiTable") -> bool:
        return (self.D == other.D and self.b0 == other.b0
                and Counter(self.all_twists) == Counter(other.all_twists))

    def to_json(self):
        return {"s": self.s, "degree": self.D, "a": self.a, "b": self.b, "b0": self.b0,
                "twists": sorted(self.twists), "linear_twist": self.D + 1}


def regularity_power(s: int, sigma: int, tau: int, n: int) -> int:
    if s < 1:
        raise ValueError("s must be at least 1")
    d = n + sigma + tau
    return max(s * d, s * d - (s - 1) * tau + n - 1)


def betti_table(s: int, cf, n: int) -> BettiTable:
    """Graded Betti numbers of I^s."""
    if s < 1:
        raise ValueError("s must be at least 1")
    s1, s2 = _shape(cf)
    d = n + s1 + s2
    sd = s * d
    if s2 == 0:
        a = min(s, ceil_div(n - 1, s1))
        twists = [sd - u * s1 + n for u in range(a)]
        b = sd + binomial(a, 2) * s1 - a * n
    else:
        if (s - 1) * s2 <= n - 2:
            if s1 > s2:
                a = min(s, ceil_div(n - (s - 1) * s2 - 1, s1 - s2))
            else:
                a = s
        else:
            a = 0
        twists = [sd - u * (s1 - s2) - (s - 1) * s2 + n for u in range(a)]
        b = s * (d + a * s2) + binomial(a, 2) * (s1 - s2) - a * (n + s2)
    return BettiTable(s, sd, a, b, b + a + 1, twists)


def hilbert_power(s: int, z: int, st: ScrollStructure) -> int:
    """dim of I^s in degree z, from the bigraded lengths of S/H and K^(n)."""
    if s < 1:
        raise ValueError("s must be at least 1")
    d = st.n + st.m - 2
    u = z - d * s
    return st.length_SH(u, s) - st.length_kn(u, s - 1)


def fit_resolution(hilbert: Callable[[int], int], D: int, bound: int, s: int = 0) -> BettiTable:
    """Recover b0 and the syzygy twists of a module generated in degree D.

    hilbert(z) must be available for D <= z <= D + bound.  Twists are
    peeled in increasing degree.
    """
    b0 = hilbert(D)
    if hilbert(D - 1) != 0:
        raise NoFit(f"module is not generated in degree {D}")
    twists: list[int] = []
    for z in range(D + 1, D + bound + 1):
        predicted = b0 * lam(D, z) - sum(lam(t, z) for t in twists)
        deficit = predicted - hilbert(z)
        if deficit < 0:
            raise NoFit(f"Hilbert function exceeds the fitted value at degree {z}")
        twists += [z] * deficit
    b = sum(1 for t in twists if t == D + 1)
    nonlinear = [t for t in twists if t > D + 1]
    return BettiTable(s, D, len(nonlinear), b, b0, nonlinear)


def reduction_number(cf, n: int, st: ScrollStructure | None = None) -> tuple[int, dict]:
    """r(I) with the evidence used to pick it."""
    s1, s2 = _shape(cf)
    m = s1 + s2 + 2
    low, high = ceil_div(n, s1), ceil_div(n - 1, s1) + 1
    if s2 == 0:
        return high, {"rule": "rho=1 closed form", "value": high}
    if st is None:
        from .scroll import build_scroll
        st = build_scroll((s1, s2), m, n)
    hval = st.hilbert_kn_fiber_formula()
    value = low if hval >= m - 2 else high
    return value, {"rule": "rho=2 Hilbert criterion", "degree": low, "hilbert_value": hval,
                   "threshold": m - 2, "bounds": [low, high],
                   "divisibility_branch": (n - 1) % s1 == 0, "value": value}


@dataclass
class DepthReport:
    rho: int
    depth_rees: int
    depth_fiber: int
    depth_gr: int
    reg_fiber: int
    fiber_cm: bool

    def to_json(self):
        return {"depth_rees": self.depth_rees, "depth_fiber": self.depth_fiber,
                "depth_gr": self.depth_gr, "reg_fiber": self.reg_fiber,
                "fiber_cohen_macaulay": self.fiber_cm}


def depth_and_fiber_report(cf, n: int) -> DepthReport:
    s1, s2 = _shape(cf)
    rho = 1 if s2 == 0 else 2
    depth = 2 if rho == 1 else 1
    sig_rho = s1 if rho == 1 else s2
    return DepthReport(rho, depth, depth, depth - 1, ceil_div(n - 1, sig_rho) + 1, rho == 1)


def postulation(cf, n: int) -> int:
    s1, s2 = _shape(cf)
    if s2 == 0:
        return ceil_div(n - 1, s1) - 1
    return ceil_div(n - 1, s2)


def fiber_hilbert(s: int, cf, n: int) -> int:
    """Hilbert function of the special fiber ring: b0 of I^s."""
    if s < 0:
        return 0
    if s == 0:
        return 1
    return betti_table(s, cf, n).b0


def fiber_hilbert_polynomial(s: int, cf, n: int) -> int:
    s1, s2 = _shape(cf)
    d = n + s1 + s2
    if s2 == 0:
        a = ceil_div(n - 1, s1)
        return s * d + binomial(a, 2) * s1 - a * n + a + 1
    return s * d + 1


@dataclass
class InvariantReport:
    rho: int
    sigma: tuple
    n: int
    d: int
    regularity: dict
    betti: dict
    reduction: int
    reduction_evidence: dict
    depths: DepthReport
    postulation: int

    def to_json(self):
        return {"rho": self.rho, "sigma": list(self.sigma), "n": self.n, "d": self.d,
                "reg": {"formula": "max(sd, sd-(s-1)tau+n-1)",
                        "values": {str(s): v for s, v in self.regularity.items()}},
                "betti": {str(s): t.to_json() for s, t in self.betti.items()},
                "r_I": self.reduction, "r_I_evidence": self.reduction_evidence,
                "depths": self.depths.to_json(), "postulation": self.postulation}


def invariant_report(cf, n: int, max_s: int = 3, st: ScrollStructure | None = None) -> InvariantReport:
    s1, s2 = _shape(cf)
    r, ev = reduction_number(cf, n, st)
    return InvariantReport(
        rho=1 if s2 == 0 else 2,
        sigma=(s1,) if s2 == 0 else (s1, s2),
        n=n, d=n + s1 + s2,
        regularity={s: regularity_power(s, s1, s2, n) for s in range(1, max_s + 1)},
        betti={s: betti_table(s, cf, n) for s in range(1, max_s + 1)},
        reduction=r, reduction_evidence=ev,
        depths=depth_and_fiber_report(cf, n),
        postulation=postulation(cf, n))
