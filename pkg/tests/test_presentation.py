import numpy as np
import pytest

from scrollrees.algebra import Field
from scrollrees.presentation import (CommonFactor, HeightNotTwo, apply_scalar,
                                     binary_ring, build_from_pair, canonical_target,
                                     canonicalize, from_matrix, monomial_example,
                                     random_invertible, random_presentation, validate)

F = Field(32003)
R = binary_ring(F)


def test_build_from_pair_monomial_example():
    pd = build_from_pair(1, 1, R.parse("y^3"), R.parse("x^3"))
    assert (pd.m, pd.n, pd.d) == (4, 2, 4)
    want = {R.parse(t) for t in ["y^4", "x*y^3", "x^3*y", "x^4"]}
    deltas = validate(pd).deltas
    assert len(deltas) == 4
    # equal up to sign
    assert {p if p in want else -p for p in deltas} == want


def test_monomial_example_sets():
    assert set(monomial_example(2, 1, 1, F)) == {R.parse(t) for t in ["y^4", "x*y^3", "x^3*y", "x^4"]}
    assert set(monomial_example(2, 1, 0, F)) == {R.parse(t) for t in ["y^3", "x^2*y", "x^3"]}


def test_common_factor_rejected():
    with pytest.raises(CommonFactor):
        build_from_pair(1, 1, R.parse("x^3"), R.parse("x^3"))


def test_zero_nonlinear_column_rejected():
    with pytest.raises(HeightNotTwo):
        from_matrix(F, [["x", "0"], ["-y", "0"], ["0", "0"]], n=2)


def test_repeated_linear_column_rejected():
    with pytest.raises(HeightNotTwo):
        from_matrix(F, [["x", "x", "y^2"], ["-y", "-y", "0"], ["0", "0", "x^2"], ["0", "0", "x*y"]])


def test_canonical_identity_case():
    M = canonical_target(R, 1, 1)
    cf = canonicalize(M, F)
    assert (cf.sigma, cf.tau) == (1, 1)
    assert apply_scalar(R, cf.U, M, cf.V) == M


def test_canonical_disguised_two_one():
    rng = np.random.default_rng(0)
    target = canonical_target(R, 2, 1)
    M = apply_scalar(R, random_invertible(F, 5, rng), target, random_invertible(F, 3, rng))
    cf = canonicalize(M, F)
    assert (cf.sigma, cf.tau) == (2, 1)
    assert apply_scalar(R, cf.U, M, cf.V) == target


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_zero_last_row_gives_rho_one(m):
    M = canonical_target(R, m - 2, 0)
    assert all(e.is_zero for e in M[-1])
    cf = canonicalize(M, F)
    assert (cf.sigma, cf.tau, cf.rho) == (m - 2, 0, 1)


@pytest.mark.parametrize("sigma,tau", [(1, 0), (2, 1), (2, 2), (3, 1)])
def test_random_presentations_validate(sigma, tau):
    rng = np.random.default_rng([sigma, tau])
    pd = random_presentation(sigma, tau, 3, F, rng)
    rep = validate(pd)
    assert rep.d == 3 + sigma + tau
    assert all(p.total_degree() == rep.d for p in rep.deltas if not p.is_zero)
    assert canonicalize(pd.linear, F).partition == ((sigma,) if tau == 0 else (sigma, tau))
