import pytest

from scrollrees.scroll import build_scroll, ceil_div, eligible_tuples


def test_m3_scroll():
    st = build_scroll((1,), 3, 2)
    S = st.S
    assert [[str(e) for e in row] for row in st.psi] == [["T1", "y"], ["T2", "x"]]
    assert st.H == [S.parse("T1*x - T2*y")]


def test_rho_one_never_uses_last_variable():
    for m in (3, 4, 5, 6):
        st = build_scroll((m - 2,), m, 3)
        used = set().union(*(p.variables() for p in st.H))
        assert f"T{m}" not in used


def test_eligible_tuples_one_one():
    got = [t.a for t in eligible_tuples((1, 1), 2)]
    assert got == [(), (0,), (1,), (0, 0), (0, 1), (1, 0)]


@pytest.mark.parametrize("sigma", [(1,), (2,), (3,), (1, 1), (2, 1), (3, 1), (2, 2)])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_empty_tuple_parameters(sigma, n):
    t = eligible_tuples(sigma, n)[0]
    assert t.a == ()
    assert t.f == ceil_div(n, sigma[0]) - 1
    assert t.r == sigma[0] * ceil_div(n, sigma[0]) - n + 1


def test_tuple_two_one_n3():
    st = build_scroll((2, 1), 5, 3)
    t = st.tuple_named((1,))
    assert (t.f, t.r) == (0, 1)


def test_symbolic_power_generators_m3():
    st = build_scroll((1,), 3, 2)
    S = st.S
    got = {p for _, _, p in st.symbolic_power_generators()}
    assert got == {S.parse("T1^2"), S.parse("T1*y"), S.parse("y^2")}


@pytest.mark.parametrize("sigma,m", [((1,), 3), ((2,), 4), ((1, 1), 4), ((2, 1), 5), ((2, 2), 6)])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_fiber_generators_start_in_degree_ceil(sigma, m, n):
    st = build_scroll(sigma, m, n)
    gens = st.fiber_kn_generators()
    assert gens
    assert min(p.bidegree()[1] for p in gens) >= ceil_div(n, sigma[0])
    assert all(p.bidegree()[0] == 0 for p in gens)


def test_length_bricks():
    st = build_scroll((1, 1), 4, 2)
    assert st.length_SH(0, 1) == 4
    assert st.piece_length((0, 0), 2, 0) == 1
    empty = st.tuples[0]
    assert all(st.length_factor(empty, u, s) == 0 for u in range(4) for s in range(empty.f))


def test_bad_partition():
    with pytest.raises(ValueError):
        build_scroll((1, 2), 5, 2)
    with pytest.raises(ValueError):
        build_scroll((2,), 5, 2)
