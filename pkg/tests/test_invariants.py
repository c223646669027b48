import pytest
from hypothesis import given, settings, strategies as st

from scrollrees import invariants as inv
from scrollrees.scroll import build_scroll, ceil_div, lam


def shapes():
    return st.one_of(
        st.integers(1, 6).map(lambda s: (s, 0)),
        st.integers(1, 5).flatmap(lambda t: st.integers(t, 6).map(lambda s: (s, t))))


def test_regularity_examples():
    assert inv.regularity_power(2, 1, 1, 2) == 8
    for s in range(1, 5):
        assert inv.regularity_power(s, 3, 0, 4) == s * 7 + 3


@settings(max_examples=80, deadline=None)
@given(shapes(), st.integers(2, 8))
def test_regularity_first_power(shape, n):
    d = n + sum(shape)
    assert inv.regularity_power(1, *shape, n) == d + n - 1


@settings(max_examples=80, deadline=None)
@given(shapes(), st.integers(2, 8))
def test_first_power_matches_input_resolution(shape, n):
    t = inv.betti_table(1, shape, n)
    d = n + sum(shape)
    assert (t.b, t.a, t.b0, t.twists) == (sum(shape), 1, sum(shape) + 2, [d + n])


@settings(max_examples=80, deadline=None)
@given(shapes(), st.integers(2, 8), st.integers(1, 5))
def test_betti_table_is_consistent(shape, n, s):
    # rank of the syzygy module is b0 - 1 and the table regularity matches
    t = inv.betti_table(s, shape, n)
    assert t.b + t.a == t.b0 - 1
    assert t.regularity == inv.regularity_power(s, *shape, n)
    assert t.hilbert(s * (n + sum(shape)) - 1) == 0


def test_betti_examples():
    t1 = inv.betti_table(1, (1, 1), 2)
    assert (t1.a, t1.b, t1.b0, t1.twists) == (1, 2, 4, [6])
    t2 = inv.betti_table(2, (1, 1), 2)
    assert (t2.a, t2.b, t2.b0) == (0, 8, 9)


def test_hilbert_power_examples():
    st_ = build_scroll((1, 1), 4, 2)
    d = 4
    assert inv.hilbert_power(1, d, st_) == 4
    assert inv.hilbert_power(2, 2 * d, st_) == 9
    assert inv.hilbert_power(2, 2 * d - 1, st_) == 0


def test_fit_resolution_square_of_maximal_ideal():
    t = inv.fit_resolution(lambda z: max(z + 1, 0) if z >= 2 else 0, 2, 6)
    assert t.b0 == 3 and t.all_twists == [3, 3]


def test_fit_resolution_rejects_wrong_degree():
    with pytest.raises(inv.NoFit):
        inv.fit_resolution(lambda z: z + 1, 2, 4)


def test_reduction_number_examples():
    for n in (2, 3, 5):
        assert inv.reduction_number((1, 0), n)[0] == n
    value, ev = inv.reduction_number((1, 1), 2)
    assert value == 2 and ev["divisibility_branch"]


def test_depths_and_postulation():
    r1 = inv.depth_and_fiber_report((3, 0), 4)
    assert (r1.depth_rees, r1.depth_fiber, r1.depth_gr, r1.fiber_cm) == (2, 2, 1, True)
    r2 = inv.depth_and_fiber_report((2, 1), 3)
    assert (r2.depth_rees, r2.depth_fiber, r2.depth_gr, r2.fiber_cm) == (1, 1, 0, False)
    assert r2.reg_fiber == 3
    assert inv.postulation((1, 1), 2) == 1
    assert inv.postulation((1, 0), 3) == 1


def test_fiber_hilbert_small_values():
    for shape in [(1, 0), (2, 1)]:
        assert inv.fiber_hilbert(0, shape, 3) == 1
        assert inv.fiber_hilbert(1, shape, 3) == sum(shape) + 2


def test_invariant_report_json():
    rep = inv.invariant_report((2, 1), 3, max_s=2).to_json()
    assert rep["rho"] == 2 and set(rep["betti"]) == {"1", "2"}
    low, high = rep["r_I_evidence"]["bounds"]
    assert low <= rep["r_I"] <= high


def test_lam():
    assert lam(3, 2) == 0 and lam(3, 3) == 1 and lam(0, 4) == 5
    assert ceil_div(7, 2) == 4 and ceil_div(-1, 3) == 0
