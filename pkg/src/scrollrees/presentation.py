"""Input presentations of height-two ideals in k[x, y].

A presentation is an m x (m-1) matrix whose first m-2 columns are linear
forms and whose last column has forms of degree n >= 2.  This module reads
and validates such matrices, builds them from a pair of forms, and brings
the linear part to a block normal form by scalar row and column operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import (AlgebraError, DenseMatrix, Field, Poly, PolyRing,
                      form_gcd)


class PresentationError(AlgebraError):
    pass


class WrongColumnDegrees(PresentationError):
    pass


class HeightNotTwo(PresentationError):
    pass


class DegreeMismatch(PresentationError):
    pass


class CommonFactor(PresentationError):
    pass


class HypothesisViolated(PresentationError):
    pass


def binary_ring(field: Field) -> PolyRing:
    return PolyRing(field, ["x", "y"])


def maximal_minors(rows: Sequence[Sequence[Poly]], ring: PolyRing) -> list[Poly]:
    """Minors of an m x (m-1) matrix, the i-th one omitting row i.

    Laplace expansion along the last column of each column prefix, with
    row subsets stored as bitmasks.
    """
    m = len(rows)
    k = len(rows[0]) if m else 0
    if k != m - 1:
        raise PresentationError(f"expected an {m}x{m - 1} matrix, got {m}x{k}")
    table = {0: ring.one()}
    for c in range(k):
        nxt = {}
        for mask, det in table.items():
            if det.is_zero:
                continue
            for r in range(m):
                if mask >> r & 1:
                    continue
                entry = rows[r][c]
                if entry.is_zero:
                    continue
                new = mask | (1 << r)
                # sign from the position of r among the rows of the new subset
                pos = bin(new & ((1 << r) - 1)).count("1")
                term = entry * det
                if (pos + c) % 2:
                    term = -term
                nxt[new] = nxt.get(new, ring.zero()) + term
        table = nxt
    full = (1 << m) - 1
    return [table.get(full & ~(1 << i), ring.zero()) for i in range(m)]


@dataclass(frozen=True)
class ValidationReport:
    m: int
    n: int
    d: int
    deltas: tuple
    gcd: Poly

    def to_json(self):
        return {"m": self.m, "n": self.n, "d": self.d,
                "deltas": [str(p) for p in self.deltas], "gcd": str(self.gcd)}


@dataclass
class PresentationData:
    """The matrix [phi' | phi''] presenting I = (delta_1, ..., delta_m)."""

    field: Field
    linear: list  # m rows of m-2 linear forms
    nonlinear: list  # m forms of degree n
    n: int = -1
    _report: ValidationReport | None = dc_field(default=None, repr=False)

    @property
    def ring(self) -> PolyRing:
        return binary_ring(self.field)

    @property
    def m(self) -> int:
        return len(self.nonlinear)

    @property
    def d(self) -> int:
        return self.n + self.m - 2

    def matrix(self) -> list[list[Poly]]:
        return [list(r) + [c] for r, c in zip(self.linear, self.nonlinear)]

    @property
    def deltas(self) -> tuple:
        return validate(self).deltas

    def to_json(self):
        return {"field": field_to_json(self.field),
                "input": {"matrix": [[str(e) for e in row] for row in self.matrix()]}}


def field_to_json(F: Field):
    return "rational" if F.p is None else {"prime": F.p}


def from_matrix(field: Field, matrix: Sequence[Sequence], n: int | None = None) -> PresentationData:
    """Build presentation data from a matrix of polynomials or strings."""
    R = binary_ring(field)
    rows = []
    for r, row in enumerate(matrix):
        out = []
        for c, e in enumerate(row):
            if isinstance(e, Poly):
                p = e if e.ring == R else _to_binary(e, R)
            else:
                try:
                    p = R.parse(str(e))
                except AlgebraError as err:
                    raise PresentationError(f"entry ({r + 1},{c + 1}): {err}") from err
            out.append(p)
        rows.append(out)
    m = len(rows)
    if m < 3:
        raise PresentationError(f"need at least 3 generators, got {m}")
    for r, row in enumerate(rows):
        if len(row) != m - 1:
            raise PresentationError(f"row {r + 1} has {len(row)} entries, expected {m - 1}")
    pd = PresentationData(field, [row[:-1] for row in rows], [row[-1] for row in rows])
    if n is not None:
        pd.n = n
    validate(pd)
    return pd


def _to_binary(p: Poly, R: PolyRing) -> Poly:
    extra = p.variables() - {"x", "y"}
    if extra:
        raise PresentationError(f"entry {p} uses variables {sorted(extra)}")
    out = R.zero()
    for exps, c in p.terms():
        e = dict(zip(p.ring.names, exps))
        out = out + R.monomial({"x": e.get("x", 0), "y": e.get("y", 0)}, c)
    return out


def validate(pd: PresentationData) -> ValidationReport:
    """Check degrees and the height-two condition; cache the signed minors."""
    if pd._report is not None:
        return pd._report
    m = pd.m
    if m < 3:
        raise PresentationError("need m >= 3")
    for r, row in enumerate(pd.linear):
        if len(row) != m - 2:
            raise PresentationError(f"linear part row {r + 1} has wrong length")
        for c, e in enumerate(row):
            if e.is_zero:
                continue
            if not e.is_homogeneous() or e.total_degree() != 1:
                raise WrongColumnDegrees(
                    f"entry ({r + 1},{c + 1}) = {e} is not a linear form")
    degs = set()
    for r, e in enumerate(pd.nonlinear):
        if e.is_zero:
            continue
        if not e.is_homogeneous():
            raise WrongColumnDegrees(f"last column entry {r + 1} = {e} is not homogeneous")
        degs.add(e.total_degree())
    if len(degs) > 1:
        raise WrongColumnDegrees(f"last column mixes degrees {sorted(degs)}")
    if degs:
        n = degs.pop()
        if pd.n >= 0 and pd.n != n:
            raise WrongColumnDegrees(f"last column has degree {n}, expected {pd.n}")
        pd.n = n
    R = pd.ring
    raw = maximal_minors(pd.matrix(), R)
    deltas = tuple(p if i % 2 == 0 else -p for i, p in enumerate(raw))
    g = R.zero()
    for p in deltas:
        g = form_gcd(g, p)
        if not g.is_zero and g.total_degree() == 0:
            break
    if g.is_zero:
        raise HeightNotTwo("all maximal minors vanish")
    if g.total_degree() > 0:
        raise HeightNotTwo(f"maximal minors share the factor {g}")
    if pd.n < 2:
        if pd.n == 1:
            raise WrongColumnDegrees(
                "n = 1 is excluded: the ideal would be a power of (x, y)")
        raise WrongColumnDegrees("last column has degree 0")
    pd._report = ValidationReport(m, pd.n, pd.d, deltas, g)
    return pd._report


# -- construction from a pair of forms ---------------------------------------

def d_block(R: PolyRing, size: int, sign: int = 1) -> list[list[Poly]]:
    """(size+1) x size matrix with x on the diagonal and sign*y below it."""
    x, y = R.var("x"), R.var("y")
    rows = [[R.zero()] * size for _ in range(size + 1)]
    for j in range(size):
        rows[j][j] = x
        rows[j + 1][j] = y if sign > 0 else -y
    return rows


def block_diag(R: PolyRing, a: list, b: list, acols: int, bcols: int) -> list[list[Poly]]:
    z = R.zero()
    return ([list(r) + [z] * bcols for r in a] + [[z] * acols + list(r) for r in b])


def split_form(F: Poly, k: int) -> list[Poly]:
    """alpha_0..alpha_k with F = sum alpha_i x^(k-i) y^i; x^a y^b goes to i = min(b, k)."""
    R = F.ring
    out = [R.zero()] * (k + 1)
    for (ex, ey), c in F.terms():
        i = min(ey, k)
        out[i] = out[i] + R.monomial([ex - (k - i), ey - i], c)
    return out


def _det(rows: list[list[Poly]], R: PolyRing) -> Poly:
    if not rows:
        return R.one()
    total = R.zero()
    for j, e in enumerate(rows[0]):
        if e.is_zero:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        t = e * _det(minor, R)
        total = total + (t if j % 2 == 0 else -t)
    return total


def build_from_pair(sigma: int, tau: int, F1: Poly, F2: Poly) -> PresentationData:
    """Presentation whose minors generate (x,y)^tau F1 + (x,y)^sigma F2."""
    if not (0 <= tau <= sigma):
        raise DegreeMismatch(f"need 0 <= tau <= sigma, got sigma={sigma}, tau={tau}")
    R = F1.ring
    if F1.is_zero or F2.is_zero:
        raise DegreeMismatch("F1 and F2 must be nonzero")
    for F in (F1, F2):
        if not F.is_homogeneous():
            raise DegreeMismatch(f"{F} is not homogeneous")
    n = F1.total_degree() - sigma
    if F2.total_degree() - tau != n:
        raise DegreeMismatch(
            f"deg F1 - sigma = {n} but deg F2 - tau = {F2.total_degree() - tau}")
    if n < 2:
        raise DegreeMismatch(f"n = {n}; need n >= 2")
    g = form_gcd(F1, F2)
    if g.total_degree() > 0:
        raise CommonFactor(f"F1 and F2 share the factor {g}")
    alpha = split_form(F1, sigma)[::-1]
    beta = split_form(F2, tau)[::-1]
    Ds, Dt = d_block(R, sigma, -1), d_block(R, tau, -1)
    lin = block_diag(R, Ds, Dt, sigma, tau)
    if _det([r + [a] for r, a in zip(Ds, alpha)], R) != F1:
        raise AssertionError("block determinant does not reproduce F1")
    if _det([r + [b] for r, b in zip(Dt, beta)], R) != F2:
        raise AssertionError("block determinant does not reproduce F2")
    pd = PresentationData(F1.ring.field, lin, alpha + beta)
    validate(pd)
    return pd


def monomial_example(n: int, sigma: int, tau: int, field: Field | None = None) -> list[Poly]:
    """Generators (x,y)^tau y^(n+sigma) + (x,y)^sigma x^(n+tau)."""
    if n < 2 or not (0 <= tau <= sigma):
        raise PresentationError("need n >= 2 and 0 <= tau <= sigma")
    R = binary_ring(field or Field())
    d = n + sigma + tau
    exps = list(range(tau + 1)) + list(range(d - sigma, d + 1))
    return [R.monomial([i, d - i]) for i in exps]


def example_pair(n: int, sigma: int, tau: int, field: Field | None = None):
    R = binary_ring(field or Field())
    return R.monomial([0, n + sigma]), R.monomial([n + tau, 0])


# -- canonical form -----------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """U M V = diag(D(sigma), D(tau)) with x on the diagonal and +y below it."""

    U: DenseMatrix
    V: DenseMatrix
    sigma: int
    tau: int

    @property
    def rho(self) -> int:
        return 1 if self.tau == 0 else 2

    @property
    def partition(self) -> tuple:
        return (self.sigma,) if self.tau == 0 else (self.sigma, self.tau)

    def to_json(self):
        F = self.U.field
        sg = lambda M: [[int(F.signed(v)) if F.p else str(v) for v in r] for r in M.rows]
        return {"sigma": self.sigma, "tau": self.tau, "rho": self.rho,
                "partition": list(self.partition), "U": sg(self.U), "V": sg(self.V)}


def linear_coefficients(M: Sequence[Sequence[Poly]], field: Field):
    """Split a matrix of linear forms as x*A + y*B with scalar A, B."""
    A, B = [], []
    for r, row in enumerate(M):
        ar, br = [], []
        for c, e in enumerate(row):
            a = b = field.zero()
            for exps, coef in e.terms():
                names = dict(zip(e.ring.names, exps))
                if sum(exps) != 1 or names.get("x", 0) + names.get("y", 0) != 1:
                    raise WrongColumnDegrees(f"entry ({r + 1},{c + 1}) = {e} is not linear")
                if names.get("x", 0):
                    a = coef
                else:
                    b = coef
            ar.append(a)
            br.append(b)
        A.append(ar)
        B.append(br)
    return A, B


class _Tracker:
    """x*A + y*B together with the accumulated U (rows) and V (columns)."""

    def __init__(self, F: Field, A, B):
        self.F = F
        self.A = [list(r) for r in A]
        self.B = [list(r) for r in B]
        self.m = len(A)
        self.k = len(A[0]) if A else 0
        self.U = [[F.one() if i == j else F.zero() for j in range(self.m)] for i in range(self.m)]
        self.V = [[F.one() if i == j else F.zero() for j in range(self.k)] for i in range(self.k)]

    def row_transform(self, idx: list[int], T: list[list]):
        """Replace rows idx by T applied to them (U as well)."""
        F = self.F
        for mat in (self.A, self.B, self.U):
            old = [mat[i] for i in idx]
            width = len(old[0]) if old else 0
            for a, i in enumerate(idx):
                new = [F.zero()] * width
                for b, coef in enumerate(T[a]):
                    if coef:
                        new = [F.add(v, F.mul(coef, w)) for v, w in zip(new, old[b])]
                mat[i] = new

    def col_transform(self, idx: list[int], W: list[list]):
        """Replace columns idx by their combinations W (V as well)."""
        F = self.F
        for mat in (self.A, self.B, self.V):
            for row in mat:
                old = [row[j] for j in idx]
                for a, j in enumerate(idx):
                    acc = F.zero()
                    for b in range(len(idx)):
                        if W[b][a] and old[b]:
                            acc = F.add(acc, F.mul(old[b], W[b][a]))
                    row[j] = acc

    def row_add(self, i, j, c):
        F = self.F
        for mat in (self.A, self.B, self.U):
            mat[i] = [F.add(a, F.mul(c, b)) for a, b in zip(mat[i], mat[j])]

    def col_add(self, j, i, c):
        F = self.F
        for mat in (self.A, self.B, self.V):
            for row in mat:
                row[j] = F.add(row[j], F.mul(c, row[i]))

    def row_scale(self, i, c):
        F = self.F
        for mat in (self.A, self.B, self.U):
            mat[i] = [F.mul(c, a) for a in mat[i]]

    def col_scale(self, j, c):
        F = self.F
        for mat in (self.A, self.B, self.V):
            for row in mat:
                row[j] = F.mul(c, row[j])

    def row_permute(self, order: list[int]):
        """New row at position order[0] is the old row order[0] etc., over sorted(order)."""
        slots = sorted(order)
        for mat in (self.A, self.B, self.U):
            old = [mat[i] for i in order]
            for s, r in zip(slots, old):
                mat[s] = r

    def col_permute(self, order: list[int]):
        slots = sorted(order)
        for mat in (self.A, self.B, self.V):
            for row in mat:
                old = [row[j] for j in order]
                for s, v in zip(slots, old):
                    row[s] = v


def _rref_transform(F: Field, rows: list[list]) -> list[list]:
    """Invertible T with T*rows in reduced echelon form (zero rows last)."""
    n = len(rows)
    width = len(rows[0]) if rows else 0
    aug = [list(r) + [F.one() if i == j else F.zero() for j in range(n)] for i, r in enumerate(rows)]
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = F.inv(aug[r][c])
        aug[r] = [F.mul(v, inv) for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(aug[i], aug[r])]
        r += 1
    return [row[width:] for row in aug]


def _canon(t: _Tracker, k: int) -> tuple[int, int]:
    """Normalise rows 0..k+1 and columns 0..k-1; returns (sigma, tau)."""
    F = t.F
    rows = list(range(k + 2))
    cols = list(range(k))
    if k == 1:
        a = [t.A[i][0] for i in rows]
        b = [t.B[i][0] for i in rows]
        basis = [a, b]
        for e in range(3):
            cand = [F.one() if i == e else F.zero() for i in range(3)]
            if DenseMatrix(F, basis + [cand]).rank() == len(basis) + 1:
                basis.append(cand)
                break
        if DenseMatrix(F, basis).rank() < 3:
            raise HypothesisViolated("a column of the linear part is a multiple of x or y")
        # columns of the inverse of T are a, b, w
        Tinv = DenseMatrix(F, basis).transpose()
        t.row_transform(rows, Tinv.inverse().rows)
        return 1, 0

    P = _rref_transform(F, [[t.A[i][j] for j in cols] for i in rows])
    t.row_transform(rows, P)
    last = k + 1
    choice = next((i for i in (last, k) if any(t.B[i][j] for j in cols)), None)
    if choice is None:
        raise HypothesisViolated("the linear part has a 2 x (m-2) block of zeros")
    if any(t.A[i][j] for i in (k, last) for j in cols):
        raise AssertionError("x-part of the bottom rows did not vanish")
    if choice != last:
        t.row_permute([i for i in rows[:k]] + [last, k])
    b = [t.B[last][j] for j in cols]
    p = next(j for j in range(k) if b[j])
    Winv = [[F.one() if c == j else F.zero() for c in range(k)] for j in range(k) if j != p] + [b]
    W = DenseMatrix(F, Winv).inverse().rows
    t.col_transform(cols, W)

    s1, s2 = _canon(t, k - 1)
    lc = k - 1
    blocks = [(0, 0, s1), (s1 + 1, s1, s2)]  # (row offset, column offset, size)
    for ro, co, size in blocks:
        for j in range(size):
            alpha = t.A[ro + j][lc]
            if alpha:
                t.col_add(lc, co + j, F.neg(alpha))
    for r in range(k + 1):
        beta = t.B[r][lc]
        if beta:
            t.row_add(r, last, F.neg(beta))
    cs = []
    for ro, co, size in blocks:
        for r in range(ro, ro + size):
            if t.A[r][lc] or t.B[r][lc]:
                raise AssertionError("column clearing left a stray entry")
        cs.append(t.A[ro + size][lc])
    for (ro, co, size), c in zip(blocks, cs):
        if c:
            inv = F.inv(c)
            for r in range(ro, ro + size + 1):
                t.row_scale(r, inv)
            for j in range(co, co + size):
                t.col_scale(j, c)
    c1, c2 = bool(cs[0]), bool(cs[1])
    if not c1 and not c2:
        raise HypothesisViolated("the linear part has a forbidden block of zeros")
    if c1 and c2:
        for i in range(s2 + 1):
            t.row_add(s1 - s2 + i, s1 + 1 + i, F.neg(F.one()))
        for i in range(s2):
            t.col_add(s1 + i, s1 - s2 + i, F.one())
        c1 = False
    if c1:
        t.row_permute(list(range(s1 + 1)) + [last] + list(range(s1 + 1, k + 1)))
        t.col_permute(list(range(s1)) + [lc] + list(range(s1, k - 1)))
        return s1 + 1, s2
    sigma, tau = s1, s2 + 1
    if tau > sigma:
        t.row_permute(list(range(s1 + 1, k + 2)) + list(range(s1 + 1)))
        t.col_permute(list(range(s1, k)) + list(range(s1)))
        sigma, tau = tau, sigma
    return sigma, tau


def canonical_target(R: PolyRing, sigma: int, tau: int, sign: int = 1) -> list[list[Poly]]:
    return block_diag(R, d_block(R, sigma, sign), d_block(R, tau, sign), sigma, tau)


def apply_scalar(R: PolyRing, U: DenseMatrix, M: Sequence[Sequence[Poly]], V: DenseMatrix | None = None):
    """U * M * V for scalar U, V and a polynomial matrix M."""
    rows = []
    for urow in U.rows:
        row = []
        for j in range(len(M[0]) if M else 0):
            acc = R.zero()
            for i, u in enumerate(urow):
                if u and not M[i][j].is_zero:
                    acc = acc + M[i][j].scale(u)
            row.append(acc)
        rows.append(row)
    if V is None:
        return rows
    out = []
    for row in rows:
        new = []
        for j in range(V.ncols):
            acc = R.zero()
            for i, e in enumerate(row):
                if V.rows[i][j] and not e.is_zero:
                    acc = acc + e.scale(V.rows[i][j])
            new.append(acc)
        out.append(new)
    return out


def canonicalize(M: Sequence[Sequence[Poly]], field: Field | None = None) -> CanonicalForm:
    """Scalar U, V and (sigma, tau) with U M V = diag(D(sigma), D(tau))."""
    if not M:
        raise PresentationError("empty matrix")
    m = len(M)
    k = len(M[0])
    if k != m - 2 or m < 3:
        raise PresentationError(f"expected an m x (m-2) matrix with m >= 3, got {m}x{k}")
    R = M[0][0].ring
    F = field or R.field
    A, B = linear_coefficients(M, F)
    t = _Tracker(F, A, B)
    sigma, tau = _canon(t, k)
    U, V = DenseMatrix(F, t.U), DenseMatrix(F, t.V)
    if apply_scalar(R, U, M, V) != canonical_target(R, sigma, tau):
        raise AssertionError("canonical form verification failed")
    return CanonicalForm(U, V, sigma, tau)


def sign_adjusted(cf: CanonicalForm) -> tuple[DenseMatrix, DenseMatrix]:
    """U', V' with U' M V' = diag(D_sigma, D_tau) using -y below the diagonal."""
    F = cf.U.field
    rs, cs = [], []
    for size in (cf.sigma, cf.tau):
        rs += [(-1) ** i for i in range(size + 1)]
        cs += [(-1) ** j for j in range(size)]
    E = DenseMatrix(F, [[rs[i] if i == j else 0 for j in range(len(rs))] for i in range(len(rs))])
    H = DenseMatrix(F, [[cs[i] if i == j else 0 for j in range(len(cs))] for i in range(len(cs))])
    return E @ cf.U, cf.V @ H


# -- random instances -----------------------------------------------------------

def random_invertible(F: Field, n: int, rng) -> DenseMatrix:
    while True:
        M = DenseMatrix(F, [[F.random(rng) for _ in range(n)] for _ in range(n)])
        if M.rank() == n:
            return M


def random_form(R: PolyRing, deg: int, rng) -> Poly:
    out = R.zero()
    for i in range(deg + 1):
        out = out + R.monomial([deg - i, i], R.field.random(rng))
    return out


def random_presentation(sigma: int, tau: int, n: int, field: Field | None = None,
                        rng=None, disguise: bool = True, max_tries: int = 100) -> PresentationData:
    """Random instance with linear part conjugate to diag(D(sigma), D(tau))."""
    F = field or Field()
    rng = rng if rng is not None else np.random.default_rng(0)
    R = binary_ring(F)
    m = sigma + tau + 2
    base = canonical_target(R, sigma, tau)
    for _ in range(max_tries):
        if disguise:
            P, Q = random_invertible(F, m, rng), random_invertible(F, m - 2, rng)
            lin = apply_scalar(R, P, base, Q)
        else:
            lin = [list(r) for r in base]
        col = [random_form(R, n, rng) for _ in range(m)]
        pd = PresentationData(F, lin, col, n)
        try:
            validate(pd)
        except HeightNotTwo:
            continue
        return pd
    raise HeightNotTwo(f"no height-two instance found in {max_tries} draws")
