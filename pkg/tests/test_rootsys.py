"""Unit tests for the rank-two root systems."""

from fractions import Fraction

import pytest

from rank2go.rootsys import (
    FAMILIES,
    build_root_system,
    cartan_int,
    chain_down_length,
    inner,
    parse_root,
    root_add,
    root_label,
    root_neg,
)


def test_family_construction_and_counts():
    assert FAMILIES == ("a2", "a1a1", "c2", "g2")
    counts = {"a2": 3, "a1a1": 2, "c2": 4, "g2": 6}
    for fam, n in counts.items():
        rs = build_root_system(fam)
        assert len(rs.positive_roots) == n
        assert len(rs.roots) == 2 * n
        assert rs.positive_roots[0] == (1, 0)
        assert rs.positive_roots[1] == (0, 1)
    assert build_root_system("A1xA1").family == "a1a1"
    assert build_root_system("G2").family == "g2"
    with pytest.raises(ValueError):
        build_root_system("b3")


def test_closure_under_negation_and_membership():
    for fam in FAMILIES:
        rs = build_root_system(fam)
        for g in rs.roots:
            assert rs.is_root(g)
            assert rs.is_root(root_neg(g))
        assert not rs.is_root((0, 0))
        assert not rs.is_root((5, 5))


def test_cartan_matrices():
    a2 = build_root_system("a2")
    assert cartan_int(a2, (1, 0), (1, 0)) == 2
    assert cartan_int(a2, (1, 0), (0, 1)) == -1
    assert cartan_int(a2, (0, 1), (1, 0)) == -1

    a1a1 = build_root_system("a1a1")
    assert cartan_int(a1a1, (1, 0), (0, 1)) == 0
    assert cartan_int(a1a1, (0, 1), (1, 0)) == 0

    c2 = build_root_system("c2")
    assert cartan_int(c2, (1, 0), (0, 1)) == -2
    assert cartan_int(c2, (0, 1), (1, 0)) == -1

    g2 = build_root_system("g2")
    assert cartan_int(g2, (1, 0), (0, 1)) == -1
    assert cartan_int(g2, (0, 1), (1, 0)) == -3


def test_root_lengths():
    c2 = build_root_system("c2")
    # alpha and alpha+2beta are long; beta and alpha+beta are short.
    assert inner(c2, (1, 0), (1, 0)) == 1
    assert inner(c2, (1, 2), (1, 2)) == 1
    assert inner(c2, (0, 1), (0, 1)) == Fraction(1, 2)
    assert inner(c2, (1, 1), (1, 1)) == Fraction(1, 2)

    g2 = build_root_system("g2")
    # alpha, alpha+beta, 2alpha+beta short (length^2 = 1); rest long (= 3).
    for g in ((1, 0), (1, 1), (2, 1)):
        assert inner(g2, g, g) == 1
    for g in ((0, 1), (3, 1), (3, 2)):
        assert inner(g2, g, g) == 3


def test_inner_is_symmetric_bilinear():
    for fam in FAMILIES:
        rs = build_root_system(fam)
        for g in rs.roots:
            for d in rs.roots:
                assert inner(rs, g, d) == inner(rs, d, g)
                assert inner(rs, root_add(g, d), d) == inner(rs, g, d) + inner(
                    rs, d, d
                )


def test_cartan_integrality_on_all_pairs():
    for fam in FAMILIES:
        rs = build_root_system(fam)
        for g in rs.roots:
            for d in rs.roots:
                n = cartan_int(rs, g, d)
                assert isinstance(n, int)
                assert abs(n) <= 3


def test_sum_of_roots_membership():
    # Spot checks of root addition facts used by structure constants.
    a2 = build_root_system("a2")
    assert a2.is_root(root_add((1, 0), (0, 1)))
    assert not a2.is_root(root_add((1, 0), (1, 1)))
    g2 = build_root_system("g2")
    assert g2.is_root(root_add((1, 0), (2, 1)))  # 3a+b
    assert g2.is_root(root_add((0, 1), (3, 1)))  # 3a+2b
    assert not g2.is_root(root_add((3, 1), (3, 2)))


def test_chain_down_lengths():
    g2 = build_root_system("g2")
    # The alpha-string through beta: beta - k*alpha is never a root.
    assert chain_down_length(g2, (1, 0), (0, 1)) == 0
    # alpha-string through alpha+beta reaches back to beta: p = 1.
    assert chain_down_length(g2, (1, 0), (1, 1)) == 1
    # alpha-string through 3alpha+beta: back through 2a+b, a+b, b: p = 3.
    assert chain_down_length(g2, (1, 0), (3, 1)) == 3
    c2 = build_root_system("c2")
    assert chain_down_length(c2, (0, 1), (1, 2)) == 2
    assert chain_down_length(c2, (0, 1), (1, 1)) == 1


def test_labels_round_trip():
    for fam in FAMILIES:
        rs = build_root_system(fam)
        for g in rs.roots:
            assert parse_root(root_label(g)) == g
    assert root_label((1, 1)) == "a+b"
    assert root_label((3, 2)) == "3a+2b"
    assert root_label((-1, -1)) == "-(a+b)"
    assert root_label((1, 0)) == "a"
    with pytest.raises(ValueError):
        parse_root("2c")
