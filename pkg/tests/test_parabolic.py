from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from bunmotive.errors import ValidationError
from bunmotive.parabolic import (
    audit_radical_polynomials,
    audit_table,
    closed_form_d,
    dim_bun,
    exhaustive_min,
    instability_codim_bruteforce,
    maximal_parabolic_dims,
    paper_radical_polynomial,
    parabolic_subset,
    unipotent_radical_dim,
)
from bunmotive.rootsys import build_root_system, implemented_types
from oracles import all_subsets, explicit_positive_roots


def levi_count_oracle(family, n, I):
    """Positive roots of the Levi factor, counted from the textbook root lists.

    A root e_i - e_j (or similar) lies in the Levi of I when its expansion in
    simple roots avoids the removed ones; for type A_n with simple roots
    e_k - e_{k+1} that means i and j are in one block of consecutive kept indices.
    """
    assert family == "A"
    kept = set(I)
    count = 0
    for r in explicit_positive_roots("A", n):
        i = next(k for k, c in enumerate(r) if c == 1)
        j = next(k for k, c in enumerate(r) if c == -1)
        if all(k + 1 in kept for k in range(i, j)):
            count += 1
    return count


def test_unipotent_examples():
    a3 = build_root_system("A", 3)
    assert unipotent_radical_dim(a3, {1, 2, 3}) == 0
    assert unipotent_radical_dim(a3, {1, 3}) == 4
    assert unipotent_radical_dim(build_root_system("B", 3), {2, 3}) == 5


def test_subset_validation():
    with pytest.raises(ValidationError):
        unipotent_radical_dim(build_root_system("A", 3), {0})
    with pytest.raises(ValidationError):
        unipotent_radical_dim(build_root_system("A", 3), {4})


@pytest.mark.parametrize("family,n", [t for t in implemented_types(5)])
def test_radical_partition_and_monotonicity(family, n):
    rs = build_root_system(family, n)
    total = len(rs.positive_roots)
    dims = {I: unipotent_radical_dim(rs, I) for I in all_subsets(n)}
    assert dims[()] == total
    assert dims[tuple(range(1, n + 1))] == 0
    for I, v in dims.items():
        p = parabolic_subset(rs, I)
        assert p.unipotent_dim + p.levi_positive_count == total
        for J in all_subsets(n):
            if set(I) <= set(J):
                assert dims[J] <= v
    assert exhaustive_min(rs) == min(maximal_parabolic_dims(rs).values())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
def test_type_a_levi_count_vs_textbook(case):
    n, I = case
    rs = build_root_system("A", n)
    assert parabolic_subset(rs, I).levi_positive_count == levi_count_oracle("A", n, I)


@pytest.mark.parametrize("n", range(2, 10))
def test_type_a_maximal_is_block_product(n):
    # A_{n-1}: removing a_m leaves a Levi of type A_{m-1} x A_{n-m-1}
    rs = build_root_system("A", n - 1)
    assert maximal_parabolic_dims(rs) == {m: m * (n - m) for m in range(1, n)}


@pytest.mark.parametrize("family", "BC")
def test_printed_bc_polynomials_agree(family):
    checks = audit_radical_polynomials(family, range(2, 9))
    assert len(checks) == sum(range(2, 9))
    assert all(c.integral and c.agree for c in checks)


def test_printed_polynomial_examples():
    assert paper_radical_polynomial("B", 3, 1) == 5
    assert paper_radical_polynomial("C", 2, 2) == 3
    d4 = paper_radical_polynomial("D", 4, 1)
    assert d4 == 3
    assert maximal_parabolic_dims(build_root_system("D", 4))[1] == 6
    with pytest.raises(ValidationError):
        paper_radical_polynomial("B", 3, 4)
    with pytest.raises(ValidationError):
        paper_radical_polynomial("G", 2, 1)


def test_d_polynomial_reports_disagreements():
    checks = audit_radical_polynomials("D", range(3, 9))
    bad = [c for c in checks if not c.agree]
    assert bad
    assert (4, 1) in {(c.n, c.m) for c in bad}
    d = bad[0].to_dict()
    assert set(d) == {"family", "n", "m", "printed", "enumerated", "integral", "agree"}


def test_non_integral_printed_values_are_fractions():
    # every printed value is either an int or an explicit Fraction, never a float
    for f in "BCD":
        for n in range(3, 9):
            for m in range(1, n + 1):
                v = paper_radical_polynomial(f, n, m)
                assert isinstance(v, (int, Fraction))


def test_instability_examples():
    b = instability_codim_bruteforce(build_root_system("A", 4), 3)
    assert (b.d, b.source, b.stable_range) == (8, "brute_force", 16)
    assert b.witnesses == (1, 4)
    assert instability_codim_bruteforce(build_root_system("A", 1), 2).d == 1
    b3 = build_root_system("B", 3)
    assert maximal_parabolic_dims(b3) == {1: 5, 2: 7, 3: 6}
    assert instability_codim_bruteforce(b3, 2).d == 5
    with pytest.raises(ValidationError):
        instability_codim_bruteforce(b3, 1)


@pytest.mark.parametrize("family,n", implemented_types(6))
def test_bruteforce_linear_in_genus(family, n):
    rs = build_root_system(family, n)
    base = instability_codim_bruteforce(rs, 2).d
    for g in range(2, 7):
        assert instability_codim_bruteforce(rs, g).d == base * (g - 1)


@pytest.mark.parametrize("g", range(2, 6))
def test_d3_equals_a3(g):
    assert instability_codim_bruteforce(build_root_system("D", 3), g).d == \
        instability_codim_bruteforce(build_root_system("A", 3), g).d


def test_closed_form_examples():
    assert closed_form_d("A", 4, 3).d == 8
    assert closed_form_d("D", 4, 2).d == 6
    cf = closed_form_d("B", 3, 2)
    assert (cf.d, cf.source) == (4, "closed_form")
    with pytest.raises(ValidationError):
        closed_form_d("E", 6, 2)


def test_audit_examples():
    assert not audit_table("A", range(1, 9), range(2, 5)).disagreements
    assert not audit_table("D", range(4, 9), range(2, 5)).disagreements
    b = audit_table("B", range(2, 9), [2])
    assert len(b.disagreements) == len(b.records) == 7
    for r in b.records:
        assert r.brute_force == r.closed_form + (r.genus - 1)
        assert r.brute_force == (2 * r.n - 1) * (r.genus - 1)


def test_audit_determinism_and_order():
    one = audit_table("DCBA", range(1, 5), [3, 2]).to_dict()
    two = audit_table(["A", "B", "C", "D"], [4, 3, 2, 1], [2, 3]).to_dict()
    assert one == two
    fams = [r["family"] for r in one["records"]]
    assert fams == sorted(fams)
    with pytest.raises(ValidationError):
        audit_table("E", [6], [2])


def test_dim_bun():
    assert dim_bun(build_root_system("A", 1), 2) == 3
    assert dim_bun(build_root_system("A", 2), 3) == 16
    assert dim_bun(build_root_system("B", 3), 2) == 21
