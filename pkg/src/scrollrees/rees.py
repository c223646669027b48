"""Explicit generators of the defining ideal of the Rees algebra.

The generators are built in the canonical frame, where the linear part of
the presentation is block diagonal with x on the diagonal and -y below it.
In that frame T * phi'' = g = sum c_i x^(n-i) y^i, and every non-determinantal
generator is a combination of the Delta and pi polynomials in the c_i.
A change of variables carries everything back to the caller's T1..Tm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import AlgebraError, DenseMatrix, Poly, PolyRing, substitute
from .presentation import (CanonicalForm, PresentationData, apply_scalar,
                           canonicalize, sign_adjusted, validate)
from .scroll import EligibleTuple, ScrollStructure, build_scroll


class IndexBoundsError(AlgebraError):
    pass


@dataclass
class Frame:
    """Scalar base change taking the input presentation to its canonical one."""

    U: DenseMatrix  # rows: phi~ = U phi diag(V, 1)
    V: DenseMatrix
    Uinv: DenseMatrix
    linear: list
    nonlinear: list

    def to_original(self, p: Poly) -> Poly:
        """Rewrite a polynomial in canonical T~ as one in the input T."""
        S = p.ring
        m = self.U.nrows
        assign = {"x": S.var("x"), "y": S.var("y")}
        for j in range(m):
            img = S.zero()
            for i in range(m):
                c = self.Uinv.rows[i][j]
                if c:
                    img = img + S.var(f"T{i + 1}").scale(c)
            assign[f"T{j + 1}"] = img
        return substitute(p, assign, S)


def canonical_frame(pd: PresentationData, cf: CanonicalForm | None = None) -> tuple[CanonicalForm, Frame]:
    validate(pd)
    cf = cf or canonicalize(pd.linear)
    U, V = sign_adjusted(cf)
    R = pd.ring
    lin = apply_scalar(R, U, pd.linear, V)
    col = [row[0] for row in apply_scalar(R, U, [[e] for e in pd.nonlinear])]
    return cf, Frame(U, V, U.inverse(), lin, col)


def extract_c(nonlinear: list, S: PolyRing, n: int) -> list[Poly]:
    """c_0..c_n with T * phi'' = sum c_i x^(n-i) y^i."""
    F = S.field
    coeffs = [[F.zero()] * len(nonlinear) for _ in range(n + 1)]
    for i, e in enumerate(nonlinear):
        if e.is_zero:
            continue
        if not e.is_homogeneous() or e.total_degree() != n:
            raise AlgebraError(f"entry {e} is not a form of degree {n}")
        for (ex, ey), coef in e.terms():
            coeffs[ey][i] = coef
    out = []
    for k in range(n + 1):
        p = S.zero()
        for i, coef in enumerate(coeffs[k]):
            if coef:
                p = p + S.var(f"T{i + 1}").scale(coef)
        out.append(p)
    return out


def g_from_column(nonlinear: list, S: PolyRing) -> Poly:
    """T * phi'' computed directly in S."""
    out = S.zero()
    for i, e in enumerate(nonlinear):
        for (ex, ey), coef in e.terms():
            out = out + S.monomial({"x": ex, "y": ey, f"T{i + 1}": 1}, coef)
    return out


class Families:
    """Delta, pi and G polynomials for fixed scroll data and c_0..c_n."""

    def __init__(self, st: ScrollStructure, c: list[Poly]):
        self.st = st
        self.c = c
        self.n = st.n
        self.S = st.S

    # Delta_{a,b} = sum_k c_{a+k} x^{b-k} y^k
    def delta(self, a: int, b: int | None = None) -> Poly:
        n, S = self.n, self.S
        if b is None:
            b = n - a
        if a < 0 or a + b > n:
            raise IndexBoundsError(f"Delta_({a},{b}) needs 0 <= a and a + b <= n = {n}")
        if b < 0:
            return S.zero()
        out = S.zero()
        for k in range(b + 1):
            out = out + self.c[a + k] * S.monomial({"x": b - k, "y": k})
        return out

    def pi(self, i: int, a: int, b: int, gamma: int) -> Poly:
        st = self.st
        if not (1 <= i <= 2 and i <= st.ell):
            raise IndexBoundsError(f"block {i} out of range")
        if not (0 <= a and 0 <= b and b + 1 <= gamma <= st.sig(i) + 1 and a + b <= self.n):
            raise IndexBoundsError(f"pi_({i},{a},{b},{gamma}) out of range")
        out = self.S.zero()
        for k in range(b + 1):
            out = out + self.c[a + k] * st.T(i, gamma - k)
        return out

    def pi_short(self, i: int, a: int) -> Poly:
        s = self.st.sig(i)
        return self.pi(i, a, s - 1, s + 1)

    def pi_prime(self, i: int, s: int, j: int) -> Poly:
        return self.pi(i, self.n - s, s, s + j)

    def _ladder(self, N: int, A: Poly, B: Poly, term: Callable[[int], Poly]) -> Poly:
        """sum over p + q = N of A^p B^q term(p); zero when N < 0."""
        out = self.S.zero()
        for p in range(N + 1):
            out = out + A ** p * B ** (N - p) * term(p)
        return out

    def G(self, t: EligibleTuple, j: int) -> Poly:
        st, n = self.st, self.n
        if not 1 <= j <= t.r:
            raise IndexBoundsError(f"j = {j} outside 1..{t.r}")
        T = st.T
        s1 = st.sig(1)
        T11, T1top = T(1, 1), T(1, s1 + 1)
        if t.k == 0:
            f, r = t.f, t.r
            first = T(1, j + s1 + 1 - r) * self._ladder(
                f - 1, T11, T1top, lambda p: self.pi_short(1, p * s1))
            return first + T11 ** f * self.pi_prime(1, s1 + 1 - r, j)
        s2 = st.sig(2)
        T21, T2top = T(2, 1), T(2, s2 + 1)
        if t.k == 1:
            (a1,) = t.a
            f, r = t.f, t.r
            lead = T(2, j + s2 + 1 - r)
            part1 = lead * T2top ** f * self._ladder(
                a1 - 1, T11, T1top, lambda p: self.pi_short(1, p * s1))
            part2 = T11 ** a1 * lead * self._ladder(
                f - 1, T21, T2top, lambda p: self.pi_short(2, a1 * s1 + p * s2))
            part3 = T11 ** a1 * T21 ** f * self.pi_prime(2, s2 + 1 - r, j)
            return part1 + part2 + part3
        a1, a2 = t.a
        total = a1 * s1 + a2 * s2
        xp = self.S.var("x") ** (n - total)
        part1 = xp * T2top ** a2 * self._ladder(
            a1 - 1, T11, T1top, lambda p: self.pi_short(1, p * s1))
        part2 = xp * T11 ** a1 * self._ladder(
            a2 - 1, T21, T2top, lambda p: self.pi_short(2, a1 * s1 + p * s2))
        part3 = T11 ** a1 * T21 ** a2 * self.delta(total)
        return part1 + part2 + part3

    def expected_bidegree(self, t: EligibleTuple) -> tuple[int, int]:
        if t.k == 0:
            return (0, t.f + 2)
        if t.k == 1:
            (a1,) = t.a
            return (0, a1 + t.f + 2) if self.st.rho == 2 else (t.f + 1, a1 + 1)
        return (t.f + 1, sum(t.a) + 1)


@dataclass
class Generator:
    label: str  # 'H', 'f', 'g' or 'h'
    index: tuple  # minor columns for H, (a, j) otherwise
    poly: Poly  # in the input frame
    canonical: Poly  # in the canonical frame
    bidegree: tuple

    def name(self) -> str:
        if self.label == "H":
            return f"minor{self.index}"
        a, j = self.index
        if self.label == "f":
            return f"f_{j}"
        if self.label == "g":
            return f"g_{a[0]},{j}"
        return f"h_{a[0]},{a[1]}"

    def to_json(self):
        out = {"label": self.label, "name": self.name(), "bidegree": list(self.bidegree),
               "poly": str(self.poly)}
        if self.label != "H":
            out["tuple"] = list(self.index[0])
            out["j"] = self.index[1]
        return out


@dataclass
class ReesGenerators:
    pd: PresentationData
    cf: CanonicalForm
    frame: Frame
    st: ScrollStructure
    c: list
    g: Poly  # canonical frame
    families: Families
    minors: list = field(default_factory=list)
    G: list = field(default_factory=list)

    @property
    def all(self) -> list[Generator]:
        return self.minors + self.G

    def polys(self, canonical: bool = False) -> list[Poly]:
        return [gen.canonical if canonical else gen.poly for gen in self.all]

    def g_original(self) -> Poly:
        return g_from_column(self.pd.nonlinear, self.st.S)

    def to_json(self):
        return {"rho": self.st.rho, "sigma": list(self.st.sigma), "m": self.st.m,
                "n": self.st.n, "d": self.pd.d,
                "c": [str(p) for p in self.c],
                "g": str(self.g_original()),
                "tuples": [t.to_json() for t in self.st.tuples],
                "generators": [gen.to_json() for gen in self.all]}


def _label(st: ScrollStructure, t: EligibleTuple) -> str:
    return {0: "f", 1: "g", 2: "h"}[t.k]


def rees_ideal(pd: PresentationData, cf: CanonicalForm | None = None) -> ReesGenerators:
    """Minors of psi together with every G_(a,j), in both frames."""
    cf, frame = canonical_frame(pd, cf)
    st = build_scroll(cf, pd.m, pd.n, pd.field)
    S = st.S
    c = extract_c(frame.nonlinear, S, pd.n)
    g = g_from_column(frame.nonlinear, S)
    if sum((c[i] * S.monomial({"x": pd.n - i, "y": i}) for i in range(pd.n + 1)), S.zero()) != g:
        raise AssertionError("c_i do not reassemble T * phi''")
    fam = Families(st, c)
    rg = ReesGenerators(pd, cf, frame, st, c, g, fam)
    top, bot = st.psi
    cols = len(top)
    for a in range(cols):
        for b in range(a + 1, cols):
            p = top[a] * bot[b] - top[b] * bot[a]
            rg.minors.append(Generator("H", (a + 1, b + 1), frame.to_original(p), p, p.bidegree()))
    for t in st.tuples:
        for j in range(1, t.r + 1):
            p = fam.G(t, j)
            bd = p.bidegree()
            if bd != fam.expected_bidegree(t):
                raise AssertionError(f"G{t.a},{j} has bidegree {bd}")
            rg.G.append(Generator(_label(st, t), (t.a, j), frame.to_original(p), p, bd))
    return rg


def fiber_equations(rg: ReesGenerators, canonical: bool = False) -> list[Generator]:
    """Implicit equations of the curve: minors of the truncated psi plus G's free of x, y."""
    st = rg.st
    out = []
    top, bot = st.psi_tr
    for a in range(len(top)):
        for b in range(a + 1, len(top)):
            p = top[a] * bot[b] - top[b] * bot[a]
            out.append(Generator("H", (a + 1, b + 1), rg.frame.to_original(p), p, p.bidegree()))
    out += [gen for gen in rg.G if gen.bidegree[0] == 0]
    return out


# -- the verification map pi -------------------------------------------------

class PiMap:
    """T[i,j] -> x^(j-1) y^(sigma_i-j+1) t_i with t_{rho+1} = 1 (and T_m fixed if rho = 1)."""

    def __init__(self, st: ScrollStructure):
        self.st = st
        extra = "t2" if st.rho == 2 else f"T{st.m}"
        self.P = PolyRing(st.field, ["x", "y", "t1", extra])
        P = self.P
        self.assign = {"x": P.var("x"), "y": P.var("y")}
        for i in range(1, st.rho + 1):
            for j in range(1, st.sig(i) + 2):
                self.assign[f"T{st.index(i, j)}"] = P.monomial(
                    {"x": j - 1, "y": st.sig(i) - j + 1, f"t{i}": 1})
        if st.rho == 1:
            self.assign[f"T{st.m}"] = P.var(f"T{st.m}")

    def __call__(self, p: Poly) -> Poly:
        return substitute(p, self.assign, self.P)

    def congruent(self, p: Poly, q: Poly) -> bool:
        """p = q modulo H, tested through pi (whose kernel is H)."""
        return self(p - q).is_zero


def pi_closed_form(pm: PiMap, fam: Families, t: EligibleTuple, j: int) -> Poly:
    st, P, n = pm.st, pm.P, fam.n
    tpow = {}
    for u, au in enumerate(t.a, start=1):
        tpow[f"t{u}"] = tpow.get(f"t{u}", 0) + au
    if t.k + 1 <= st.rho:
        tpow[f"t{t.k + 1}"] = tpow.get(f"t{t.k + 1}", 0) + t.f + 1
    out = P.zero()
    for s in range(n + 1):
        mono = P.monomial({"x": n - s + j - 1, "y": s + t.r - j, **tpow})
        out = out + mono * pm(fam.c[s])
    return out


def pi_substitution_check(rg: ReesGenerators, t: EligibleTuple, j: int,
                          G: Poly | None = None) -> bool:
    """pi(g T^a T_{k+1,1}^f T_{k+1,j}) == y^n pi(G) and the closed form of pi(G)."""
    st, fam = rg.st, rg.families
    pm = PiMap(st)
    G = fam.G(t, j) if G is None else G
    lhs = pm(rg.g * st.kn_generator(t, j))
    piG = pm(G)
    rhs = pm.P.var("y") ** st.n * piG
    return lhs == rhs and piG == pi_closed_form(pm, fam, t, j)
