import pytest

from ktflag.errors import IndexRangeError
from ktflag.gkm import euler_char, structure_constants, xi_class
from ktflag.lattice import LaurentPoly, epsilon, exp_weight, wsub
from ktflag.projective import (
    PnIndex,
    TruncatedSeries,
    all_indices,
    default_weights,
    hyperplane_class,
    longest_type_a,
    p_tilde_recur,
    pn_b,
    pn_b_gkm,
    pn_constant,
    pn_p_closed,
    pn_p_gkm,
    pn_p_recur,
    pn_point,
    pn_q,
    pn_q_closed,
    pn_q_recur,
    pn_r_closed,
    pn_r_recur,
    pn_space,
    pn_xi_linebundle,
    render_epsilon,
    series_coeff,
)
from ktflag.roots import build_root_system


def eps_diff(n, i, j):
    """e^{epsilon_i - epsilon_j}"""
    return exp_weight(wsub(epsilon(n, i), epsilon(n, j)))


def test_index_validation():
    with pytest.raises(IndexRangeError):
        PnIndex(2, 3, 0, 0)
    with pytest.raises(IndexRangeError):
        PnIndex(0, 0, 0, 0)
    assert PnIndex(3, 1, 2, 3).bar() == PnIndex(3, 2, 1, 0)
    assert PnIndex(3, 1, 1, 1).sign == -1
    assert len(all_indices(3)) == 64


def test_series_coeff():
    e1 = epsilon(1, 1)
    assert series_coeff([], [e1], 1, 1) == exp_weight(e1)
    assert series_coeff([], [e1], 3, 1) == exp_weight((3,))
    for p in (1, 2, 3):
        assert series_coeff([e1], [e1], p, 1) == 0
    assert series_coeff([], [], 0, 1) == 1
    assert series_coeff([], [], 2, 1) == 0
    assert series_coeff([], [], -1, 1) == 0


def test_truncated_series_inverse():
    s = TruncatedSeries.one(4, 1).mul_linear((1,)).mul_linear((-1,))
    inv = s.inverse()
    product = s * inv
    assert product.coeff(0) == 1
    assert all(product.coeff(k) == 0 for k in range(1, 5))
    assert inv.coeff(1) == TruncatedSeries.one(4, 1).div_linear((1,)).div_linear((-1,)).coeff(1)

    with pytest.raises(ValueError):
        TruncatedSeries([LaurentPoly.const(2, 1)], 2, 1).inverse()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_p_boundary_values(n):
    for w in range(n + 1):
        assert pn_p_closed(PnIndex(n, w, 0, w)) == eps_diff(n, w + 1, 1)
        if w >= 1:
            assert pn_p_closed(PnIndex(n, w - 1, 0, w)) == -eps_diff(n, w + 1, 1)
        for u in range(n + 1):
            if u not in (w, w - 1):
                assert pn_p_closed(PnIndex(n, u, 0, w)) == 0


def test_p_on_p1():
    assert -pn_p_closed(PnIndex(1, 1, 1, 1)) == eps_diff(1, 2, 1) - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_p_top_corner(n):
    expected = LaurentPoly.one(n)
    for i in range(1, n + 1):
        expected = expected * (eps_diff(n, n + 1, i) - 1)
    assert pn_p_closed(PnIndex(n, n, n, n)) * (-1) ** n == expected
    for w in range(n):
        assert pn_p_closed(PnIndex(n, n, n, w)) == 0


def _closed_equals_recurrence(n):
    for idx in all_indices(n):
        assert pn_p_closed(idx) == pn_p_recur(idx)
        assert pn_r_closed(idx) == pn_r_recur(idx)
        assert pn_q_closed(idx) == pn_q_recur(idx)
        assert pn_b(idx) == pn_b(idx, "recur")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_equals_recurrence(n):
    _closed_equals_recurrence(n)


@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_closed_equals_recurrence_slow(n):
    _closed_equals_recurrence(n)


def test_negative_indices_vanish():
    mu = default_weights(3)
    assert p_tilde_recur(-1, 0, 0, mu) == 0
    assert p_tilde_recur(0, -1, 0, mu) == 0
    assert p_tilde_recur(0, 0, -1, mu) == 0


def _closed_equals_gkm(n):
    space = pn_space(n)
    for idx in all_indices(n):
        u, v, w = (pn_point(n, k) for k in (idx.u, idx.v, idx.w))
        assert pn_p_closed(idx) == pn_p_gkm(idx)
        assert pn_b(idx) == pn_b_gkm(idx)
        assert pn_r_closed(idx) == structure_constants(space, u, v, "c")[w]
        assert pn_q_closed(idx) == pn_q(idx)


@pytest.mark.parametrize("n", [1, 2])
def test_closed_equals_gkm(n):
    _closed_equals_gkm(n)


@pytest.mark.slow
def test_closed_equals_gkm_p3():
    _closed_equals_gkm(3)


@pytest.mark.parametrize("n", [1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_p_is_a_difference_of_euler_characteristics(n):
    for idx in all_indices(n):
        nxt = pn_q(PnIndex(n, idx.u + 1, idx.v, idx.w)) if idx.u < n else 0
        assert pn_p_gkm(idx) == pn_q(idx) - nxt


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_support_bounds_and_symmetry(n):
    for idx in all_indices(n):
        u, v, w = idx.u, idx.v, idx.w
        p = pn_p_closed(idx)
        if p:
            assert u <= w and v <= w and w <= u + v + 1
        if pn_r_closed(idx):
            assert u <= w and v <= w and w <= u + v
        assert p == pn_p_closed(PnIndex(n, v, u, w))


@pytest.mark.parametrize("n", [1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_support_from_localization(n):
    # the closed forms short-circuit outside u, v <= w, so read the support off the GKM model
    space = pn_space(n)
    for idx in all_indices(n):
        u, v, w = idx.u, idx.v, idx.w
        p = pn_p_gkm(idx)
        r = structure_constants(space, pn_point(n, u), pn_point(n, v), "c")[pn_point(n, w)]
        if u > w or v > w or w > u + v + 1:
            assert not p
        if u > w or v > w or w > u + v:
            assert not r
        if w == u + v + 1 and w <= n:
            assert p


def test_r_with_point_class():
    for n in (2, 3):
        for u in range(n + 1):
            for w in range(n + 1):
                assert pn_r_closed(PnIndex(n, u, 0, w)) == (1 if u == w else 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_forgetful_values(n):
    for idx in all_indices(n):
        f = pn_p_closed(idx).forgetful()
        if idx.v == idx.w - idx.u:
            assert f == 1
        elif idx.v == idx.w - idx.u - 1:
            assert f == -1
        else:
            assert f == 0


def test_stability_in_n():
    m = 6
    big = default_weights(m)
    for n in (1, 2, 3, 4, 5):
        for idx in all_indices(n):
            wide = PnIndex(m, idx.u, idx.v, idx.w)
            assert pn_p_closed(idx, big[: n + 1]) == pn_p_closed(wide)
            assert pn_p_recur(idx, big[: n + 1]) == pn_p_closed(wide)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_xi_from_line_bundles(n):
    space = pn_space(n)
    for v in range(n + 1):
        assert pn_xi_linebundle(v, n) == xi_class(space, pn_point(n, v))
    for i in range(1, n + 2):
        assert euler_char(hyperplane_class(n, i)) == 1


def test_longest_element_in_type_a():
    for n in (1, 2, 3):
        rs = build_root_system(f"A{n}")
        for weight in [epsilon(n, i) for i in range(1, n + 2)] + [rs.rho]:
            assert longest_type_a(n, weight) == rs.longest.apply(weight)
        # w_o(epsilon_i) = epsilon_{n+2-i}
        assert longest_type_a(n, epsilon(n, 1)) == epsilon(n, n + 1)


def test_dispatch_and_rendering():
    idx = PnIndex(2, 1, 1, 2)
    assert pn_constant(idx, "p") == pn_p_closed(idx)
    assert pn_constant(idx, "q", "recur") == pn_q_recur(idx)
    assert pn_constant(idx, "b") == pn_b(idx)
    with pytest.raises(ValueError):
        pn_constant(idx, "z")
    assert render_epsilon(1, eps_diff(1, 2, 1) - 1) == "y12^-1 - 1"
