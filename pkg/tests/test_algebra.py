from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scrollrees.algebra import (DenseMatrix, EchelonBasis, Field, MissingAssignment, NotBihomogeneous,
                                PolyParseError, PolyRing, binomial, form_gcd,
                                graded_piece_dim, parse_poly, rank, rank_mod_p,
                                substitute)

F = Field(32003)
S3 = PolyRing.standard(F, 3)
S4 = PolyRing.standard(F, 4)


def P(text, ring=S3):
    return ring.parse(text)


def test_arithmetic_basics():
    assert P("x+y") * P("x-y") == P("x^2-y^2")
    p = P("T1*x - T2*y")
    assert p + S3.zero() == p
    assert p * P("y") == P("T1*x*y - T2*y^2")


def test_bidegree():
    assert P("x^2*T1 + x*y*T3").bidegree() == (2, 1)
    with pytest.raises(NotBihomogeneous):
        P("x + T1").bidegree()


def test_graded_piece_dim():
    assert graded_piece_dim(0, 1, 4) == 4
    assert graded_piece_dim(2, 0, 7) == 3
    assert graded_piece_dim(1, 1, 3) == 6
    assert graded_piece_dim(-1, 2, 3) == 0
    assert graded_piece_dim(1, 1, 3) == len(S3.monomials_of_bidegree(1, 1))


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]], F) == 3
    assert rank([[0, 0], [0, 0]], F) == 0
    assert rank([[1, 2], [2, 4]], F) == 1
    Q = Field.rational()
    assert rank([[Fraction(1, 2), 1], [1, 2]], Q) == 1


def _identity_except(**images):
    out = {v: S3.var(v) for v in S3.names}
    out.update({k: P(v) for k, v in images.items()})
    return out


def test_substitute():
    assert substitute(P("T1*y"), _identity_except(T1="x")) == P("x*y")
    got = substitute(P("x*T1 + T2*T3"), _identity_except(x="0", y="0"))
    assert got == P("T2*T3")


def test_substitute_requires_every_variable():
    with pytest.raises(MissingAssignment):
        substitute(P("T1*y"), {"T1": P("x")})


def test_substitute_composes():
    p = P("T1*x^2 - T2*T3*y + 4")
    a = _identity_except(T1="T2 + x", T3="y*T1")
    b = _identity_except(x="x + y", T2="T3")
    composed = {v: substitute(img, b) for v, img in a.items()}
    assert substitute(substitute(p, a), b) == substitute(p, composed)


def test_binomial_convention():
    assert binomial(-1, 2) == 1
    assert binomial(3, -1) == 0
    assert binomial(5, 2) == 10
    assert binomial(-1, 0) == 1


def test_parse_errors_report_column():
    with pytest.raises(PolyParseError) as err:
        P("x^2 + * y")
    assert err.value.column >= 1


def test_parse_roundtrip_simple():
    for text in ["0", "1", "-T3*x^2 + 5*T1*y^2", "x*y - 7"]:
        p = P(text)
        assert P(str(p)) == p


def test_rational_field_parse():
    Q = Field.rational()
    R = PolyRing(Q, ["x", "y"])
    p = parse_poly(R, "1/2*x + 3*y")
    assert p.coefficient([1, 0]) == Fraction(1, 2)


def test_form_gcd():
    R = PolyRing(F, ["x", "y"])
    g = form_gcd(R.parse("x^3"), R.parse("x^2*y"))
    assert g.total_degree() == 2
    assert form_gcd(R.parse("y^3"), R.parse("x^3")).total_degree() == 0


def test_dense_matrix_inverse():
    rng = np.random.default_rng(3)
    M = DenseMatrix(F, [[F.random(rng) for _ in range(4)] for _ in range(4)])
    if M.rank() == 4:
        I = M @ M.inverse()
        assert I.rows == DenseMatrix.identity(F, 4).rows


def _ring_elements(draw_terms):
    out = S4.zero()
    for (a, b, t, c) in draw_terms:
        out = out + S4.monomial({"x": a, "y": b, f"T{t}": 1}, c)
    return out


terms = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(1, 4),
                           st.integers(-5, 5)), max_size=5)


@settings(max_examples=50, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    p, q, r = _ring_elements(a), _ring_elements(b), _ring_elements(c)
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == S4.zero()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_bidegree_is_additive(u1, s1, u2, s2):
    p = S4.monomial({"x": u1, "T1": s1}) + S4.monomial({"y": u1, "T2": s1})
    q = S4.monomial({"y": u2, "T3": s2})
    assert (p * q).bidegree() == (u1 + u2, s1 + s2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 10**6))
def test_mod_p_rank_matches_rational_rank(r, c, seed):
    rng = np.random.default_rng(seed)
    # low-rank integer matrix with small entries: rank is the same over Q and F_p
    k = int(rng.integers(0, min(r, c) + 1))
    A = rng.integers(-3, 4, size=(r, k)) @ rng.integers(-3, 4, size=(k, c))
    q = rank([[Fraction(int(v)) for v in row] for row in A], Field.rational())
    assert rank_mod_p(A, 32003) == q


def test_echelon_incremental_matches_batch():
    rng = np.random.default_rng(11)
    A = rng.integers(0, 7, size=(40, 30)) @ rng.integers(0, 7, size=(30, 35)) % 32003
    E = EchelonBasis(35, 32003)
    for start in range(0, 40, 7):
        E.add_rows(A[start:start + 7])
    assert E.rank == rank_mod_p(A, 32003)
    assert E.contains(A[:5])
