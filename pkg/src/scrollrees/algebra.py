"""Exact scalars, sparse bigraded polynomials and dense linear algebra.

Polynomials live in a :class:`PolyRing`, a fixed ordered list of variable
names with a bigrading.  Exponent vectors are packed into a single Python
int (16 bits per variable) so that monomial multiplication is integer
addition.  Coefficients are ints reduced mod ``p`` or :class:`Fraction`.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_PRIME = 32003
_BITS = 16
_MASK = (1 << _BITS) - 1


class AlgebraError(ValueError):
    pass


class FieldMismatch(AlgebraError):
    pass


class NotBihomogeneous(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class MissingAssignment(AlgebraError):
    pass


class PolyParseError(AlgebraError):
    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def default_prime() -> int:
    env = os.environ.get("SCROLL_REES_FIELD")
    return int(env) if env else DEFAULT_PRIME


class Field:
    """The prime field F_p, or the rationals when ``p`` is None."""

    def __init__(self, p: int | None = DEFAULT_PRIME):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise AlgebraError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def __call__(self, value) -> int | Fraction:
        """Coerce an int, Fraction or 'a/b' string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise AlgebraError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def signed(self, a) -> int | Fraction:
        """Representative in (-p/2, p/2] for printing."""
        if self.p is None:
            return a
        return a - self.p if a > self.p // 2 else a

    def random(self, rng, nonzero=False):
        if self.p is None:
            lo = 1 if nonzero else 0
            v = int(rng.integers(lo, 10))
            return Fraction(v if not nonzero or rng.integers(2) else -v)
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.p))


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise AlgebraError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


class PolyRing:
    """k[v_1, ..., v_N] with a fixed variable order and a bigrading.

    ``weights`` gives the bidegree of each variable; by default ``x`` and
    ``y`` (and any name not starting with ``T``) have degree (1,0) and the
    ``T`` variables degree (0,1).
    """

    def __init__(self, field: Field, names: Sequence[str], weights=None):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("repeated variable name")
        self.nvars = len(self.names)
        self.index = {v: i for i, v in enumerate(self.names)}
        if weights is None:
            weights = [(0, 1) if v.startswith("T") else (1, 0) for v in self.names]
        self.weights = tuple(tuple(w) for w in weights)
        # precedence for grevlex: T_m > ... > T_1 > x > y > others
        self._rank = sorted(range(self.nvars), key=self._precedence)

    @classmethod
    def standard(cls, field: Field, m: int) -> "PolyRing":
        """S = k[x, y, T1..Tm]."""
        return cls(field, ["x", "y"] + [f"T{i}" for i in range(1, m + 1)])

    def _precedence(self, i):
        v = self.names[i]
        if v.startswith("T") and v[1:].isdigit():
            return (0, -int(v[1:]))
        if v == "x":
            return (1, 0)
        if v == "y":
            return (2, 0)
        return (3, i)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self):
        return hash((self.field, self.names, self.weights))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)})"

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (_BITS * i)) & _MASK for i in range(self.nvars))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {0: c} if c != 0 else {})

    def var(self, name: str) -> "Poly":
        if name not in self.index:
            raise AlgebraError(f"unknown variable {name!r} in {self.names}")
        return Poly(self, {1 << (_BITS * self.index[name]): self.field.one()})

    def gens(self) -> list["Poly"]:
        return [self.var(v) for v in self.names]

    def monomial(self, exps: Mapping[str, int] | Sequence[int], coeff=1) -> "Poly":
        if isinstance(exps, Mapping):
            vec = [0] * self.nvars
            for v, e in exps.items():
                vec[self.index[v]] += e
        else:
            vec = list(exps)
        c = self.field(coeff)
        return Poly(self, {pack(vec): c} if c != 0 else {})

    def monomials_of_bidegree(self, u: int, s: int) -> list[int]:
        """All packed monomials of bidegree (u, s), in a fixed order."""
        if u < 0 or s < 0:
            return []
        out = []
        vec = [0] * self.nvars

        def rec(i, du, ds):
            if i == self.nvars:
                if du == 0 and ds == 0:
                    out.append(pack(vec))
                return
            wu, ws = self.weights[i]
            emax = min(du // wu if wu else 10 ** 9, ds // ws if ws else 10 ** 9)
            if wu == 0 and ws == 0:
                emax = 0
            for e in range(emax + 1):
                vec[i] = e
                rec(i + 1, du - e * wu, ds - e * ws)
            vec[i] = 0

        rec(0, u, s)
        return out

    def sort_key(self, key: int):
        """Sort key for the graded reverse lexicographic order (descending)."""
        e = self.unpack(key)
        ordered = [e[i] for i in self._rank]
        return (sum(e), tuple(-x for x in reversed(ordered)))

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("ring", "terms_", "_hash", "_bideg")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms_ = terms
        self._hash = None
        self._bideg = None

    # -- basic protocol -------------------------------------------------
    def __bool__(self):
        return bool(self.terms_)

    @property
    def is_zero(self) -> bool:
        return not self.terms_

    def __len__(self):
        return len(self.terms_)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms_ == other.terms_
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms_.items()))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring.field != self.ring.field:
                raise FieldMismatch(f"{self.ring.field} vs {other.ring.field}")
            if other.ring != self.ring:
                raise AlgebraError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms_)
        for k, c in other.terms_.items():
            v = F.add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {k: F.neg(c) for k, c in self.terms_.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if len(self.terms_) < len(other.terms_):
            a, b = other.terms_, self.terms_
        else:
            a, b = self.terms_, other.terms_
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        if p:
            for kb, cb in b.items():
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = (get(k, 0) + ca * cb) % p
        else:
            for kb, cb in b.items():
                for ka, ca in a.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
        return Poly(self.ring, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c) if not (F.p and isinstance(c, int)) else c % F.p
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {k: F.mul(v, c) for k, v in self.terms_.items()})

    def shift(self, key: int, coeff=None) -> "Poly":
        """Multiply by the packed monomial ``key`` (times ``coeff``)."""
        if coeff is None:
            return Poly(self.ring, {k + key: c for k, c in self.terms_.items()})
        return Poly(self.ring, {k + key: c for k, c in self.scale(coeff).terms_.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise AlgebraError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- inspection ------------------------------------------------------
    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        """(exponent tuple, coefficient) pairs in canonical (grevlex, descending) order."""
        R = self.ring
        keys = sorted(self.terms_, key=R.sort_key, reverse=True)
        return [(R.unpack(k), self.terms_[k]) for k in keys]

    def coefficient(self, exps: Mapping[str, int] | Sequence[int]):
        key = self.ring.monomial(exps).terms_
        (k,) = key
        return self.terms_.get(k, self.ring.field.zero())

    def variables(self) -> set[str]:
        used = 0
        for k in self.terms_:
            used |= k
        return {v for i, v in enumerate(self.ring.names) if (used >> (_BITS * i)) & _MASK}

    def _monomial_bidegree(self, key):
        e = self.ring.unpack(key)
        u = s = 0
        for ei, (wu, ws) in zip(e, self.ring.weights):
            u += ei * wu
            s += ei * ws
        return u, s

    def bidegree(self) -> tuple[int, int]:
        """(x,y-degree, T-degree); raises unless every monomial agrees."""
        if not self.terms_:
            raise ZeroPolynomial("bidegree of the zero polynomial")
        if self._bideg is not None:
            return self._bideg
        first = None
        first_key = None
        for k in self.terms_:
            bd = self._monomial_bidegree(k)
            if first is None:
                first, first_key = bd, k
            elif bd != first:
                raise NotBihomogeneous(
                    f"monomials {_fmt_monomial(self.ring, first_key)} and "
                    f"{_fmt_monomial(self.ring, k)} have bidegrees {first} and {bd}")
        self._bideg = first
        return first

    def is_bihomogeneous(self) -> bool:
        try:
            self.bidegree()
        except NotBihomogeneous:
            return False
        return True

    def total_degree(self) -> int:
        if not self.terms_:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(sum(self.ring.unpack(k)) for k in self.terms_)

    def is_homogeneous(self) -> bool:
        return len({sum(self.ring.unpack(k)) for k in self.terms_}) <= 1

    def constant_value(self):
        """The coefficient if this is a constant, else None."""
        if not self.terms_:
            return self.ring.field.zero()
        if len(self.terms_) == 1 and 0 in self.terms_:
            return self.terms_[0]
        return None

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


# -- text grammar ---------------------------------------------------------

def _fmt_monomial(ring: PolyRing, key: int) -> str:
    e = ring.unpack(key)
    parts = []
    for i in ring._rank:
        if e[i]:
            v = ring.names[i]
            parts.append(v if e[i] == 1 else f"{v}^{e[i]}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Poly) -> str:
    if not p.terms_:
        return "0"
    R = p.ring
    out = []
    for key in sorted(p.terms_, key=R.sort_key, reverse=True):
        c = R.field.signed(p.terms_[key])
        neg = c < 0
        c = -c if neg else c
        mono = _fmt_monomial(R, key)
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]\w*)|(?P<op>[-+*^()]))")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``3*x^2*T1 - T2*y^2 + 5/2`` style strings (``*`` optional)."""
    tokens = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                                 len(text[:pos]) + len(text[pos:]) - len(text[pos:].lstrip()) + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial", 1)

    i = 0
    F = ring.field

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, len(text) + 1)

    def parse_factor():
        nonlocal i
        kind, val, col = peek()
        if kind == "num":
            i += 1
            base = ring.const(F(Fraction(val)))
        elif kind == "var":
            if val not in ring.index:
                raise PolyParseError(f"unknown variable {val!r}", col)
            i += 1
            base = ring.var(val)
        elif val == "(":
            i += 1
            base = parse_sum()
            k2, v2, c2 = peek()
            if v2 != ")":
                raise PolyParseError("expected ')'", c2)
            i += 1
        else:
            raise PolyParseError(f"unexpected token {val!r}" if val else "unexpected end", col)
        k2, v2, c2 = peek()
        if v2 == "^":
            i += 1
            k3, v3, c3 = peek()
            if k3 != "num" or "/" in v3:
                raise PolyParseError("expected integer exponent", c3)
            i += 1
            base = base ** int(v3)
        return base

    def parse_term():
        nonlocal i
        result = parse_factor()
        while True:
            kind, val, col = peek()
            if val == "*":
                i += 1
                result = result * parse_factor()
            elif kind in ("num", "var") or val == "(":
                result = result * parse_factor()
            else:
                return result

    def parse_sum():
        nonlocal i
        kind, val, col = peek()
        sign = 1
        if val in ("+", "-"):
            i += 1
            sign = -1 if val == "-" else 1
        total = parse_term() * sign
        while True:
            kind, val, col = peek()
            if val in ("+", "-"):
                i += 1
                t = parse_term()
                total = total + t if val == "+" else total - t
            else:
                return total

    result = parse_sum()
    if i != len(tokens):
        raise PolyParseError(f"unexpected token {tokens[i][1]!r}", tokens[i][2])
    return result


# -- substitution ------------------------------------------------------------

def substitute(p: Poly, assignment: Mapping[str, Poly], target: PolyRing | None = None) -> Poly:
    """Image of ``p`` under the ring map sending each variable to a polynomial.

    Every variable occurring in ``p`` must be assigned.  Images must share a
    ring, which is also the ring of the result.
    """
    if target is None:
        if assignment:
            target = next(iter(assignment.values())).ring
        else:
            target = p.ring
    names = p.ring.names
    nv = p.ring.nvars
    used = p.variables()
    missing = sorted(used - set(assignment))
    if missing:
        raise MissingAssignment(f"no image given for {', '.join(missing)}")
    for v in used:
        if assignment[v].ring != target:
            raise FieldMismatch(f"image of {v} lies in {assignment[v].ring}, expected {target}")
    powers: dict[tuple[int, int], Poly] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            if e == 1:
                powers[key] = assignment[names[i]]
            else:
                half = power(i, e // 2)
                sq = half * half
                powers[key] = sq * assignment[names[i]] if e % 2 else sq
        return powers[key]

    F = target.field
    out: dict = {}
    for key, c in p.terms_.items():
        term = None
        for i in range(nv):
            e = (key >> (_BITS * i)) & _MASK
            if e:
                f = power(i, e)
                term = f if term is None else term * f
        if term is None:
            term = target.one()
        for k2, c2 in term.terms_.items():
            v = F.add(out.get(k2, F.zero()), F.mul(c, c2))
            out[k2] = v
    return Poly(target, {k: c for k, c in out.items() if c != 0})


def change_ring(p: Poly, target: PolyRing) -> Poly:
    """Reinterpret ``p`` in a ring containing all of its variables."""
    return substitute(p, {v: target.var(v) for v in p.variables()}, target) if p else target.zero()


# -- graded dimensions -------------------------------------------------------

def graded_piece_dim(u: int, s: int, m: int) -> int:
    """Number of monomials of bidegree (u, s) in k[x, y, T1..Tm]."""
    if m < 1:
        raise AlgebraError("m must be positive")
    if u < 0 or s < 0:
        return 0
    return (u + 1) * comb(s + m - 1, m - 1)


# -- dense linear algebra ----------------------------------------------------

class DenseMatrix:
    """Rectangular matrix of field elements (rows of Python scalars)."""

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        self.field = field
        self.rows = [[field(v) for v in r] for r in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise AlgebraError("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else 0

    @classmethod
    def identity(cls, field: Field, n: int) -> "DenseMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "DenseMatrix":
        return cls(field, [[0] * c for _ in range(r)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, DenseMatrix) and self.field == other.field and self.rows == other.rows

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.ncols != other.nrows:
            raise AlgebraError("shape mismatch")
        F = self.field
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = F.zero()
                for k, a in enumerate(r):
                    if a:
                        acc = F.add(acc, F.mul(a, other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return DenseMatrix(F, out)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.field, [list(c) for c in zip(*self.rows)]) if self.rows else self

    def copy(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.rows)

    def rank(self) -> int:
        return rank(self.rows, self.field)

    def inverse(self) -> "DenseMatrix":
        F = self.field
        n = self.nrows
        if n != self.ncols:
            raise AlgebraError("inverse of a non-square matrix")
        aug = [list(r) + [F.one() if i == j else F.zero() for j in range(n)]
               for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if piv is None:
                raise AlgebraError("singular matrix")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = F.inv(aug[c][c])
            aug[c] = [F.mul(v, inv) for v in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(aug[r], aug[c])]
        return DenseMatrix(F, [r[n:] for r in aug])

    def __repr__(self):
        return f"DenseMatrix({self.field!r}, {[[self.field.signed(v) for v in r] for r in self.rows]})"


def rank(rows, field: Field) -> int:
    """Exact rank over ``field``.

    Over F_p the rows are reduced in blocks with float64 matrix products,
    which stay exact while ``ncols * p**2 < 2**53``.
    """
    if isinstance(rows, DenseMatrix):
        rows = rows.rows
    if field.p is None:
        return _rank_rational(rows)
    M = np.asarray(rows, dtype=np.int64)
    if M.size == 0:
        return 0
    return rank_mod_p(M, field.p)


def _rank_rational(rows) -> int:
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def _rref_small(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a small int64 block mod p; returns (nonzero RREF rows, pivots)."""
    B = B.copy() % p
    nrows, ncols = B.shape
    pivots = []
    r = c = 0
    while r < nrows and c < ncols:
        live = np.flatnonzero(B[r:, c:].any(axis=0))
        if live.size == 0:
            break
        c += int(live[0])
        piv = r + int(np.flatnonzero(B[r:, c])[0])
        if piv != r:
            B[[r, piv]] = B[[piv, r]]
        B[r, c:] = B[r, c:] * pow(int(B[r, c]), -1, p) % p
        col = B[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            # columns left of c are already zero in row r
            B[nzr, c:] = (B[nzr, c:] - np.outer(col[nzr], B[r, c:])) % p
        pivots.append(c)
        r += 1
        c += 1
    return B[:r], pivots


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a row span mod p."""

    def __init__(self, ncols: int, p: int):
        if ncols * (p - 1) ** 2 >= 2 ** 53:
            raise AlgebraError("matrix too wide for exact float reduction")
        self.ncols = ncols
        self.p = p
        self.E = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def reduce(self, B: np.ndarray) -> np.ndarray:
        p = self.p
        B = np.asarray(B, dtype=np.int64) % p
        if self.pivots and B.shape[0]:
            coeffs = B[:, self.pivots].astype(np.float64)
            prod = coeffs @ self.E.astype(np.float64)
            B = (B - np.fmod(prod, p).astype(np.int64)) % p
        return B

    def add_rows(self, B: np.ndarray) -> int:
        """Add rows to the span; returns how many new pivots appeared."""
        if self.full or len(B) == 0:
            return 0
        p = self.p
        B = self.reduce(B)
        B = B[np.any(B != 0, axis=1)]
        if B.shape[0] == 0:
            return 0
        Bred, newp = _rref_small(B, p)
        if not newp:
            return 0
        if self.pivots:
            coeffs = self.E[:, newp].astype(np.float64)
            prod = coeffs @ Bred.astype(np.float64)
            self.E = (self.E - np.fmod(prod, p).astype(np.int64)) % p
        self.E = np.vstack([self.E, Bred])
        self.pivots = self.pivots + newp
        return len(newp)

    def contains(self, B: np.ndarray) -> bool:
        return not np.any(self.reduce(B))


def rank_mod_p(M: np.ndarray, p: int, block: int = 128) -> int:
    M = np.asarray(M, dtype=np.int64) % p
    nrows, ncols = M.shape
    if ncols > nrows:
        M = M.T
        nrows, ncols = ncols, nrows
    E = EchelonBasis(ncols, p)
    for start in range(0, nrows, block):
        E.add_rows(M[start:start + block])
        if E.full:
            break
    return E.rank


# -- univariate / binary form gcd ------------------------------------------

def _uni_trim(a, F):
    while a and a[-1] == 0:
        a.pop()
    return a


def _uni_mod(a, b, F):
    a = list(a)
    inv = F.inv(b[-1])
    while len(a) >= len(b) and a:
        f = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(f, bc))
        _uni_trim(a, F)
    return a


def uni_gcd(a: list, b: list, F: Field) -> list:
    """Monic gcd of coefficient lists (index = power)."""
    a = _uni_trim(list(a), F)
    b = _uni_trim(list(b), F)
    while b:
        a, b = b, _uni_mod(a, b, F)
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def form_gcd(f: Poly, g: Poly, xvar: str = "x", yvar: str = "y") -> Poly:
    """gcd of two binary forms in ``xvar``, ``yvar`` (up to a scalar).

    Dehomogenise at y=1 after splitting off the pure x- and y-power content.
    """
    R = f.ring
    F = R.field
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    ix, iy = R.index[xvar], R.index[yvar]

    def split(p):
        if not p.is_homogeneous():
            raise AlgebraError(f"{p} is not homogeneous")
        exps = [R.unpack(k) for k in p.terms_]
        for e in exps:
            if sum(e) != e[ix] + e[iy]:
                raise AlgebraError(f"{p} involves variables other than {xvar}, {yvar}")
        ax = min(e[ix] for e in exps)
        ay = min(e[iy] for e in exps)
        deg = sum(exps[0])
        coeffs = [F.zero()] * (deg - ax - ay + 1)
        for k, c in p.terms_.items():
            e = R.unpack(k)
            coeffs[e[ix] - ax] = c
        return ax, ay, coeffs

    fx, fy, fc = split(f)
    gx, gy, gc = split(g)
    h = uni_gcd(fc, gc, F)
    e = len(h) - 1
    exps = [0] * R.nvars
    out = R.zero()
    for i, c in enumerate(h):
        if c != 0:
            exps[ix] = i + min(fx, gx)
            exps[iy] = e - i + min(fy, gy)
            out = out + R.monomial(exps, c)
    return out


def binomial(j: int, i: int) -> int:
    """Extended binomial: product formula for i>0, 1 for i=0, 0 for i<0."""
    if i < 0:
        return 0
    if i == 0:
        return 1
    num = 1
    for t in range(i):
        num *= j - t
    den = 1
    for t in range(2, i + 1):
        den *= t
    return num // den
