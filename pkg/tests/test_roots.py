import pytest

from ktflag.errors import UnsupportedTypeError
from ktflag.lattice import exp_weight
from ktflag.roots import (
    SUPPORTED_TYPES,
    build_root_system,
    bruhat_leq,
    cartan_matrix,
    min_coset_reps,
    mobius,
    parse_parabolic,
    parse_word,
    render_in_roots,
    weyl_character,
)


@pytest.mark.parametrize(
    "type_tag,order,positive",
    [("A1", 2, 1), ("A2", 6, 3), ("A1xA1", 4, 2), ("B2", 8, 4), ("G2", 12, 6), ("A3", 24, 6)],
)
def test_classification(type_tag, order, positive):
    rs = build_root_system(type_tag)
    assert len(rs.elements) == order
    assert len(rs.positive_roots) == positive
    assert rs.longest.length == positive


def test_lengths_are_inversion_counts():
    for type_tag in ("A2", "B2", "G2", "A3"):
        rs = build_root_system(type_tag)
        for w in rs.elements:
            assert rs.inversion_count(w) == w.length
            assert len(rs.inversions(w)) == w.length


def test_unsupported_type():
    with pytest.raises(UnsupportedTypeError):
        build_root_system("E8")
    with pytest.raises(UnsupportedTypeError):
        cartan_matrix("A7")
    assert "G2" in SUPPORTED_TYPES


def test_cartan_columns_are_simple_roots():
    rs = build_root_system("B2")
    assert rs.simple_root(1) == (2, -1)
    assert rs.simple_root(2) == (-2, 2)
    assert rs.rho == (1, 1)


def test_highest_root_of_a2():
    rs = build_root_system("A2")
    assert rs.positive_roots[-1] == (1, 1)
    assert [rs.height(b) for b in rs.positive_roots] == [1, 1, 2]


def test_bruhat_order():
    rs = build_root_system("A2")
    s1, s2 = rs.s(1), rs.s(2)
    for w in rs.elements:
        assert bruhat_leq(rs.identity, w)
    assert not bruhat_leq(s1, s2)
    assert bruhat_leq(rs.element([1, 2]), rs.longest)

    pairs = [(v, w) for v in rs.elements for w in rs.elements if rs.bruhat_leq(v, w)]
    assert len(pairs) == 19


def test_bruhat_order_matches_subwords_in_b2():
    rs = build_root_system("B2")
    for v in rs.elements:
        for w in rs.elements:
            subwords = {
                rs.element([i for k, i in enumerate(w.word) if mask >> k & 1]).id
                for mask in range(2 ** w.length)
            }
            assert rs.bruhat_leq(v, w) == (v.id in subwords)


def test_mobius():
    rs = build_root_system("A2")
    for w in rs.elements:
        assert mobius(w, w) == 1
    assert mobius(rs.identity, rs.s(1)) == -1
    assert mobius(rs.s(1), rs.s(2)) == 0
    # sum over an interval vanishes
    for v in rs.elements:
        for w in rs.elements:
            if v.id != w.id and rs.bruhat_leq(v, w):
                assert sum(rs.mobius(v, x) for x in rs.interval(v, w)) == 0


def test_parabolic_mobius_is_a_mobius_function():
    rs = build_root_system("A3")
    S = frozenset({2})
    reps = rs.min_coset_reps(S)
    for v in reps:
        for w in reps:
            if v.id == w.id or not rs.bruhat_leq(v, w):
                continue
            inside = [x for x in reps if rs.bruhat_leq(v, x) and rs.bruhat_leq(x, w)]
            assert sum(rs.poset_mobius(v, x, S) for x in inside) == 0


def test_min_coset_reps():
    rs = build_root_system("A2")
    assert len(min_coset_reps(rs)) == 6
    assert [w.word for w in min_coset_reps(rs, rs.simple_indices)] == [()]
    assert sorted(w.word for w in min_coset_reps(rs, {2})) == [(), (1,), (2, 1)]

    a3 = build_root_system("A3")
    assert len(a3.min_coset_reps(frozenset({2, 3}))) == 4
    assert len(a3.min_coset_reps(frozenset({1, 3}))) == 6


def test_coset_representatives():
    rs = build_root_system("A3")
    S = frozenset({1, 3})
    for w in rs.elements:
        low, high = rs.coset_rep(w, S), rs.max_coset_rep(w, S)
        assert rs.is_min_coset_rep(low, S)
        assert high.length == low.length + rs.longest_element(S).length
        assert w.id in {x.id for x in rs.coset(low, S)}


def test_reflections():
    rs = build_root_system("G2")
    for beta in rs.positive_roots:
        r = rs.reflection(beta)
        assert r.apply(beta) == tuple(-x for x in beta)
        assert rs.mul(r, r).id == rs.identity.id


def test_weyl_character():
    a1 = build_root_system("A1")
    assert weyl_character(a1, (1,)) == exp_weight((1,)) + exp_weight((-1,))
    assert weyl_character(a1, (0,)) == 1

    a2 = build_root_system("A2")
    assert weyl_character(a2, (1, 1)).forgetful() == 8
    assert weyl_character(a2, (1, 0)).forgetful() == 3
    g2 = build_root_system("G2")
    assert weyl_character(g2, (0, 1)).forgetful() == 7
    assert weyl_character(g2, (1, 0)).forgetful() == 14

    with pytest.raises(ValueError):
        weyl_character(a1, (-1,))


def test_parse_parabolic():
    assert parse_parabolic("1,2") == frozenset({1, 2})
    assert parse_parabolic(" 2 ") == frozenset({2})
    assert parse_parabolic("") == frozenset()
    assert parse_parabolic(None) == frozenset()


def test_parse_word():
    rs = build_root_system("A2")
    for w in rs.elements:
        assert parse_word(rs, str(w)).id == w.id
    assert parse_word(rs, "1.2").id == rs.element([1, 2]).id
    with pytest.raises(ValueError):
        parse_word(rs, "s")


def test_render_in_roots():
    rs = build_root_system("A2")
    alpha1 = rs.simple_root(1)
    assert render_in_roots(rs, exp_weight(alpha1) - 1) == "-1 + x1"
    assert render_in_roots(rs, exp_weight((1, 0))) == "z1"
