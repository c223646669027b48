"""Scroll data attached to a canonical presentation.

Given the block sizes sigma = (sigma_1[, sigma_2]) of the canonical linear
part, the T-variables get double indices T[i, j] (block i, position j) and
the 2 x (m-1) matrix psi is the concatenation of generic scroll blocks
followed by the column [y; x].  Block rho+1 is that last column, so
T[rho+1, 1] = y and T[rho+1, 2] = x.

Everything here is pure combinatorics on (sigma, n, m): eligible tuples,
monomial generators of the symbolic power K^(n), and Hilbert-function
lengths of the graded pieces used to count dimensions of powers of I.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .algebra import Field, Poly, PolyRing, binomial
from .presentation import CanonicalForm


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def lam(a: int, u: int) -> int:
    """Length of R(-a)_u for R = k[x, y]."""
    return max(u - a + 1, 0)


@dataclass(frozen=True)
class EligibleTuple:
    a: tuple
    f: int
    r: int

    @property
    def k(self) -> int:
        return len(self.a)

    def to_json(self):
        return {"a": list(self.a), "f": self.f, "r": self.r}


@dataclass
class ScrollStructure:
    m: int
    n: int
    sigma: tuple  # (sigma_1,) or (sigma_1, sigma_2)
    S: PolyRing
    tuples: list = field(default_factory=list)

    @property
    def rho(self) -> int:
        return len(self.sigma)

    @property
    def ell(self) -> int:
        return self.rho + 1

    @property
    def field(self) -> Field:
        return self.S.field

    def sig(self, i: int) -> int:
        """sigma_i, with sigma_{rho+1} = 1."""
        if i == self.ell:
            return 1
        if 1 <= i <= self.rho:
            return self.sigma[i - 1]
        raise IndexError(f"no block {i}")

    def index(self, i: int, j: int) -> int:
        """Position (1-based) of T[i, j] among T1..Tm, for i <= rho."""
        if not (1 <= i <= self.rho and 1 <= j <= self.sig(i) + 1):
            raise IndexError(f"T[{i},{j}] is not a scroll variable")
        return j if i == 1 else self.sigma[0] + 1 + j

    def T(self, i: int, j: int) -> Poly:
        if i == self.ell:
            if j == 1:
                return self.S.var("y")
            if j == 2:
                return self.S.var("x")
            raise IndexError(f"T[{i},{j}] out of range")
        return self.S.var(f"T{self.index(i, j)}")

    def Tm(self, i: int) -> Poly:
        return self.S.var(f"T{i}")

    def naming(self) -> dict:
        """Map 'T[i,j]' -> 'T<index>' (or x, y for the last block)."""
        out = {}
        for i in range(1, self.ell + 1):
            for j in range(1, self.sig(i) + 2):
                out[f"T[{i},{j}]"] = str(self.T(i, j))
        return out

    @cached_property
    def psi(self) -> list[list[Poly]]:
        top, bot = [], []
        for i in range(1, self.ell + 1):
            for j in range(1, self.sig(i) + 1):
                top.append(self.T(i, j))
                bot.append(self.T(i, j + 1))
        return [top, bot]

    @cached_property
    def psi_tr(self) -> list[list[Poly]]:
        """psi without its last column [y; x]."""
        return [self.psi[0][:-1], self.psi[1][:-1]]

    @staticmethod
    def _minors(mat) -> list[Poly]:
        top, bot = mat
        return [top[a] * bot[b] - top[b] * bot[a] for a, b in combinations(range(len(top)), 2)]

    @cached_property
    def H(self) -> list[Poly]:
        """2 x 2 minors of psi, C(m-1, 2) of them."""
        return self._minors(self.psi)

    @cached_property
    def H_tr(self) -> list[Poly]:
        return self._minors(self.psi_tr)

    @cached_property
    def K(self) -> list[Poly]:
        return list(self.psi[0])

    def tuple_named(self, a) -> EligibleTuple:
        a = tuple(a)
        for t in self.tuples:
            if t.a == a:
                return t
        raise ValueError(f"tuple {a} is not eligible for sigma={self.sigma}, n={self.n}")

    def T_power(self, t: EligibleTuple) -> Poly:
        """T^a = prod T[u,1]^a_u."""
        out = self.S.one()
        for u, au in enumerate(t.a, start=1):
            if au:
                out = out * self.T(u, 1) ** au
        return out

    def kn_generator(self, t: EligibleTuple, j: int) -> Poly:
        if not 1 <= j <= t.r:
            raise IndexError(f"j={j} outside 1..{t.r}")
        k = t.k
        return self.T_power(t) * self.T(k + 1, 1) ** t.f * self.T(k + 1, j)

    def symbolic_power_generators(self) -> list[tuple[EligibleTuple, int, Poly]]:
        return [(t, j, self.kn_generator(t, j)) for t in self.tuples for j in range(1, t.r + 1)]

    def fiber_kn_generators(self) -> list[Poly]:
        """Generators of K^(n) free of x and y: tuples of length below rho."""
        return [p for t, j, p in self.symbolic_power_generators() if t.k + 1 <= self.rho]

    def hilbert_kn_fiber_formula(self) -> int:
        """Count of degree-ceil(n/sigma_1) generators of K^(n) in the fiber ring."""
        n, s1 = self.n, self.sigma[0]
        top = ceil_div(n, s1)
        value = s1 * top - n + 1
        if self.rho == 1:
            return value
        s2 = self.sigma[1]
        count = 0
        for i in range(top):
            j = top - 1 - i
            if s1 * i + s2 * j < n:
                upper = s1 * i + s2 * (j + 1) + 1 - n
                count += max(upper, 0)
        return value + count

    # -- Hilbert function bricks ------------------------------------------
    def length_SH(self, u: int, s: int) -> int:
        """Length of (S/H) in bidegree (u, s)."""
        c = self.m - 2
        return (lam(0, u) * (binomial(s + 1, s) + c * binomial(s + 1, s - 1))
                - lam(1, u) * c * binomial(s + 1, s - 1))

    def length_factor(self, t: EligibleTuple, u: int, s: int) -> int:
        """Length of the filtration factor indexed by t in bidegree (u, s)."""
        if t not in self.tuples:
            raise ValueError(f"{t} is not eligible")
        n, m = self.n, self.m
        if t.k == 0:
            f, r = t.f, t.r
            b1 = binomial(s - f, s - f - 1)
            b2 = binomial(s - f, s - f - 2)
            return (lam(0, u) * (r * b1 + (m - 2) * b2)
                    - lam(1, u) * ((r - 1) * b1 + (m - 2) * b2))
        s1 = self.sigma[0]
        if t.k == 1:
            (a1,) = t.a
            if self.rho == 1:
                return lam(n - a1 * s1, u) if a1 <= s else 0
            s2 = self.sigma[1]
            if a1 + t.f + 1 > s:
                return 0
            return (lam(0, u) * (a1 * s1 - n + 1 + s2 * (s - a1))
                    - lam(1, u) * (a1 * s1 - n + s2 * (s - a1)))
        a1, a2 = t.a
        s2 = self.sigma[1]
        return lam(n - a1 * s1 - a2 * s2, u) if s == a1 + a2 else 0

    def piece_length(self, which, u: int, s: int) -> int:
        """which = 'S/H' or an eligible tuple (EligibleTuple or tuple of ints)."""
        if isinstance(which, str):
            if which != "S/H":
                raise ValueError(f"unknown piece {which!r}")
            return self.length_SH(u, s)
        if not isinstance(which, EligibleTuple):
            which = self.tuple_named(which)
        return self.length_factor(which, u, s)

    def length_kn(self, u: int, s: int) -> int:
        """Length of K^(n) (inside S/H) in bidegree (u, s), summed over the filtration."""
        return sum(self.length_factor(t, u, s) for t in self.tuples)

    def to_json(self):
        return {"m": self.m, "n": self.n, "rho": self.rho, "sigma": list(self.sigma),
                "naming": self.naming(),
                "psi": [[str(e) for e in row] for row in self.psi],
                "tuples": [t.to_json() for t in self.tuples]}


def eligible_tuples(sigma: tuple, n: int) -> list[EligibleTuple]:
    """All eligible tuples in length-lexicographic order."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rho = len(sigma)
    sig = list(sigma) + [1]
    out = []

    def rec(prefix, total):
        k = len(prefix)
        nxt = sig[k]
        f = ceil_div(n - total, nxt) - 1
        if not (total + f * nxt < n <= total + (f + 1) * nxt):
            raise AssertionError("f does not satisfy its defining inequalities")
        r = total + (f + 1) * nxt - n + 1
        out.append(EligibleTuple(tuple(prefix), f, r))

    def extend(prefix, total, length):
        if len(prefix) == length:
            rec(prefix, total)
            return
        s = sig[len(prefix)]
        a = 0
        while total + a * s < n:
            extend(prefix + [a], total + a * s, length)
            a += 1

    for length in range(rho + 1):
        extend([], 0, length)
    return out


def build_scroll(cf: CanonicalForm | tuple, m: int, n: int, field: Field | None = None) -> ScrollStructure:
    """Scroll structure for a canonical form (or an explicit partition)."""
    if isinstance(cf, CanonicalForm):
        sigma = cf.partition
        F = field or cf.U.field
    else:
        sigma = tuple(cf)
        F = field or Field()
    if sum(sigma) != m - 2 or any(s < 1 for s in sigma) or len(sigma) not in (1, 2):
        raise ValueError(f"partition {sigma} does not fit m={m}")
    if len(sigma) == 2 and sigma[0] < sigma[1]:
        raise ValueError("partition must be non-increasing")
    S = PolyRing.standard(F, m)
    st = ScrollStructure(m, n, tuple(sigma), S)
    st.tuples = eligible_tuples(st.sigma, n)
    return st
