from fractions import Fraction
from math import factorial, prod

import pytest

from bunmotive.errors import ValidationError
from bunmotive.linalg import dot
from bunmotive.rootsys import (
    build_root_system,
    cartan_determinant,
    cartan_matrix,
    dim_group,
    exponents_from_heights,
    fundamental_degrees,
    fundamental_group_order,
    implemented_types,
    reflect,
    weyl_group_order,
)
from oracles import cofactor_det, explicit_positive_roots, heights_partition_exponents, weyl_group_by_enumeration

# Cross-check table only; the library derives degrees from root heights.
KNOWN_DEGREES = {
    ("A", 1): (2,),
    ("A", 3): (2, 3, 4),
    ("B", 3): (2, 4, 6),
    ("C", 4): (2, 4, 6, 8),
    ("D", 3): (2, 3, 4),
    ("D", 4): (2, 4, 4, 6),
    ("D", 5): (2, 4, 5, 6, 8),
    ("G", 2): (2, 6),
    ("F", 4): (2, 6, 8, 12),
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
}

SMALL = implemented_types(4)


def test_a1_smallest():
    rs = build_root_system("A", 1)
    assert rs.positive_roots == ((Fraction(1), Fraction(-1)),)
    assert len(rs.all_roots) == 2


@pytest.mark.parametrize("family,n,count", [("A", 2, 3), ("B", 2, 4)])
def test_positive_root_counts_examples(family, n, count):
    assert len(build_root_system(family, n).positive_roots) == count


@pytest.mark.parametrize("family,n", [t for t in implemented_types(7) if t[0] in "ABCD"])
def test_positive_roots_match_textbook_lists(family, n):
    rs = build_root_system(family, n)
    assert set(rs.positive_roots) == explicit_positive_roots(family, n)
    expected = {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[family]
    assert len(rs.positive_roots) == expected


@pytest.mark.parametrize("family,n", implemented_types())
def test_root_system_invariants(family, n):
    rs = build_root_system(family, n)
    roots = set(rs.all_roots)
    assert len(roots) == 2 * len(rs.positive_roots)
    assert not set(rs.positive_roots) & {tuple(-c for c in r) for r in rs.positive_roots}
    # reduced: the only multiples of a root that are roots are +-1
    for r in rs.positive_roots:
        for c in (2, Fraction(1, 2)):
            assert tuple(c * a for a in r) not in roots
    assert all(min(c) >= 0 for c in rs.positive_coords)


@pytest.mark.parametrize("family,n", SMALL + [("E", 6)])
def test_reflection_closure_and_integrality(family, n):
    rs = build_root_system(family, n)
    roots = set(rs.all_roots)
    for b in rs.all_roots:
        for a in rs.all_roots:
            assert reflect(a, b) in roots
            assert (2 * dot(a, b) / dot(b, b)).denominator == 1


def test_simple_root_ordering_follows_standard_models():
    d4 = build_root_system("D", 4)
    assert d4.simple_roots[-1] == (0, 0, 1, 1)
    assert build_root_system("C", 3).simple_roots[-1] == (0, 0, 2)
    assert build_root_system("B", 3).simple_roots[0] == (1, -1, 0)


def test_deterministic_construction():
    build_root_system.cache_clear()
    first = repr(build_root_system("D", 5))
    build_root_system.cache_clear()
    assert repr(build_root_system("D", 5)) == first


@pytest.mark.parametrize("family,n", [("H", 2), ("A", 0), ("B", 1), ("D", 2), ("E", 5), ("G", 3), ("A", True)])
def test_invalid_family_rank(family, n):
    with pytest.raises(ValidationError):
        build_root_system(family, n)


def test_cartan_examples():
    assert cartan_matrix(build_root_system("A", 1)) == [[2]]
    assert cartan_matrix(build_root_system("A", 2)) == [[2, -1], [-1, 2]]
    b2 = cartan_matrix(build_root_system("B", 2))
    assert b2 == [[2, -2], [-1, 2]]


@pytest.mark.parametrize("n", range(1, 9))
def test_cartan_det_type_a(n):
    c = cartan_matrix(build_root_system("A", n))
    assert cofactor_det(c) == n + 1
    assert cartan_determinant(build_root_system("A", n)) == n + 1


@pytest.mark.parametrize("family,n", implemented_types(6))
def test_cartan_det_bareiss_vs_cofactor(family, n):
    rs = build_root_system(family, n)
    c = cartan_matrix(rs)
    assert all(c[i][i] == 2 for i in range(n))
    assert cartan_determinant(rs) == cofactor_det(c)


def test_weyl_examples():
    assert weyl_group_order(build_root_system("A", 1)) == 2
    assert weyl_group_order(build_root_system("A", 2)) == factorial(3)
    assert weyl_group_order(build_root_system("B", 3)) == 2 ** 3 * factorial(3)


@pytest.mark.parametrize("family,n", SMALL)
def test_weyl_order_vs_full_group_enumeration(family, n):
    rs = build_root_system(family, n)
    assert weyl_group_order(rs) == weyl_group_by_enumeration(rs.all_roots, rs.simple_roots)


@pytest.mark.parametrize(
    "family,n,expected",
    [("A", 1, (2,)), ("B", 3, (2, 4, 6)), ("D", 4, (2, 4, 4, 6))]
    + [(f, n, d) for (f, n), d in KNOWN_DEGREES.items()],
)
def test_fundamental_degrees(family, n, expected):
    deg = fundamental_degrees(build_root_system(family, n))
    assert deg.degrees == expected


@pytest.mark.parametrize("family,n", implemented_types())
def test_degree_identities(family, n):
    rs = build_root_system(family, n)
    deg = fundamental_degrees(rs)
    assert prod(deg.degrees) == weyl_group_order(rs)
    assert sum(2 * d - 1 for d in deg.degrees) == dim_group(rs) == len(rs.all_roots) + n
    assert all(2 * d > 2 for d in deg.degrees)
    assert sum(deg.graded_span_dims.values()) == n
    assert list(exponents_from_heights(rs.heights())) == heights_partition_exponents(rs.heights())


def test_exceptional_isomorphism_a3_d3():
    a3 = fundamental_degrees(build_root_system("A", 3))
    d3 = fundamental_degrees(build_root_system("D", 3))
    assert sorted(a3.degrees) == sorted(d3.degrees) == [2, 3, 4]


@pytest.mark.parametrize("family,n,dim", [("A", 1, 3), ("A", 2, 8), ("B", 3, 21)])
def test_dim_group(family, n, dim):
    assert dim_group(build_root_system(family, n)) == dim


def test_fundamental_group_order():
    a1 = build_root_system("A", 1)
    assert fundamental_group_order(a1, "simply_connected").pi1_order == 1
    assert fundamental_group_order(a1, "adjoint").pi1_order == 2
    assert fundamental_group_order(build_root_system("D", 4), "adjoint").pi1_order == 4
    a5 = build_root_system("A", 5)
    assert fundamental_group_order(a5, "custom", 3).pi1_order == 3
    with pytest.raises(ValidationError):
        fundamental_group_order(a5, "custom", 4)
    with pytest.raises(ValidationError):
        fundamental_group_order(a5, "spin")
