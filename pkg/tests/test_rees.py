import numpy as np
import pytest

from scrollrees.algebra import Field, substitute
from scrollrees.oracle import ReesMap, kernel_membership
from scrollrees.presentation import from_matrix, random_presentation, validate
from scrollrees.rees import (IndexBoundsError, PiMap, extract_c, fiber_equations,
                             pi_substitution_check, rees_ideal)

F = Field(32003)
SHAPES = [(1, 0), (2, 0), (1, 1), (2, 1), (3, 1), (2, 2)]


def _instance(sigma, tau, n, seed=0):
    return random_presentation(sigma, tau, n, F, np.random.default_rng([seed, sigma, tau, n]))


def test_extract_c_example():
    pd = from_matrix(F, [["x", "0", "y^2"], ["-y", "0", "0"], ["0", "x", "0"], ["0", "-y", "x^2"]])
    rg = rees_ideal(pd)
    S = rg.st.S
    c = extract_c(pd.nonlinear, S, 2)
    assert c == [S.var("T4"), S.zero(), S.var("T1")]


@pytest.mark.parametrize("sigma,tau", SHAPES)
@pytest.mark.parametrize("n", [2, 3])
def test_delta_family(sigma, tau, n):
    rg = rees_ideal(_instance(sigma, tau, n))
    fam, S = rg.families, rg.st.S
    assert fam.delta(0, n) == rg.g
    assert fam.delta(1, -1).is_zero
    x, y = S.var("x"), S.var("y")
    for a in range(n + 1):
        b = n - a
        assert fam.delta(a, b).is_zero or fam.delta(a, b).bidegree() == (b, 1)
        for gamma in range(1, b + 1):
            split = x ** (b - gamma + 1) * fam.delta(a, gamma - 1) + y ** gamma * fam.delta(a + gamma, b - gamma)
            assert split == fam.delta(a, b)
    with pytest.raises(IndexBoundsError):
        fam.delta(0, n + 1)


@pytest.mark.parametrize("sigma,tau", SHAPES)
def test_pi_family_shapes(sigma, tau):
    n = 3
    rg = rees_ideal(_instance(sigma, tau, n))
    fam, st = rg.families, rg.st
    for a in range(n - st.sig(1) + 2):
        p = fam.pi_short(1, a)
        assert p.is_zero or p.bidegree() == (0, 2)
    # reversed form of pi'
    s1 = st.sig(1)
    for s in range(min(n, s1) + 1):
        for j in range(1, s1 + 2 - s):
            rev = sum((fam.c[n - k] * st.T(1, j + k) for k in range(s + 1)), st.S.zero())
            assert fam.pi_prime(1, s, j) == rev
    if st.rho == 1:
        for a in range(n + 1):
            assert fam.pi_short(2, a) == fam.c[a] * st.S.var("x")


@pytest.mark.parametrize("sigma,tau", SHAPES)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_first_generator_is_g(sigma, tau, n):
    rg = rees_ideal(_instance(sigma, tau, n))
    zero = tuple([0] * rg.st.rho)
    (gen,) = [g for g in rg.G if g.index == (zero, 1)]
    assert gen.canonical == rg.g
    assert gen.poly == rg.g_original()
    for g in rg.G:
        if g.label == "f":
            assert g.bidegree == (0, rg.st.tuples[0].f + 2)


@pytest.mark.parametrize("sigma,tau", SHAPES)
@pytest.mark.parametrize("n", [2, 3])
def test_generators_in_kernel(sigma, tau, n):
    pd = _instance(sigma, tau, n)
    rg = rees_ideal(pd)
    rmap = ReesMap(pd)
    assert all(kernel_membership(p, pd, rmap) for p in rg.polys())
    assert not kernel_membership(rg.st.S.var("T1"), pd, rmap)
    assert kernel_membership(rg.g_original(), pd, rmap)


@pytest.mark.parametrize("sigma,tau", SHAPES)
@pytest.mark.parametrize("n", [2, 3])
def test_fiber_equations_vanish_at_deltas(sigma, tau, n):
    pd = _instance(sigma, tau, n)
    rg = rees_ideal(pd)
    R = pd.ring
    deltas = validate(pd).deltas
    assign = {f"T{i + 1}": dl for i, dl in enumerate(deltas)}
    assign.update({"x": R.var("x"), "y": R.var("y")})
    eqs = fiber_equations(rg)
    for gen in eqs:
        assert gen.bidegree[0] == 0
        assert substitute(gen.poly, assign, R).is_zero
    if rg.st.rho == 1:
        assert not any(gen.label == "g" for gen in eqs)


def test_fiber_m3_single_equation():
    for n in (2, 3, 4):
        pd = _instance(1, 0, n)
        eqs = fiber_equations(rees_ideal(pd))
        assert len(eqs) == 1
        assert eqs[0].bidegree == (0, pd.d)


@pytest.mark.parametrize("sigma,tau", SHAPES)
def test_pi_kills_minors_and_identity_holds(sigma, tau):
    rg = rees_ideal(_instance(sigma, tau, 3))
    pm = PiMap(rg.st)
    assert all(pm(p).is_zero for p in rg.st.H)
    for gen in rg.G:
        a, j = gen.index
        assert pi_substitution_check(rg, rg.st.tuple_named(a), j)


def test_pi_check_detects_perturbation():
    rg = rees_ideal(_instance(2, 1, 3))
    gen = rg.G[-1]
    a, j = gen.index
    t = rg.st.tuple_named(a)
    bumped = gen.canonical + rg.st.S.monomial(gen.canonical.terms()[0][0])
    assert not pi_substitution_check(rg, t, j, bumped)
