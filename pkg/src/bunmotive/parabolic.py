"""Parabolic subsets, unipotent radicals and the instability codimension bound.

For a subset ``I`` of simple-root indices, ``R_I`` is the set of roots in
the integer span of ``{a_i : i in I}`` and ``Lambda_I = R_+ minus R_I``;
``|Lambda_I|`` is the dimension of the unipotent radical of ``P_I``. The
bound on the codimension of the unstable locus in ``Bun_G`` over a genus-g
curve is

    d_G = min over maximal proper I of |Lambda_I| (g - 1).

Brute-force values (from enumeration) and the closed-form table values are
kept apart: a ``StabilityBound`` always records which one it is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import ValidationError
from .rootsys import CLASSICAL, RootSystem, build_root_system, check_family_rank, dim_group

BRUTE_FORCE = "brute_force"
CLOSED_FORM = "closed_form"


def _check_genus(g) -> int:
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise ValidationError(f"genus must be an integer >= 2, got {g!r}", field="genus")
    return g


def _check_subset(rs: RootSystem, indices: Iterable[int]) -> frozenset[int]:
    out = frozenset(indices)
    bad = sorted(i for i in out if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= rs.rank)
    if bad:
        raise ValidationError(f"simple-root indices {bad} out of range 1..{rs.rank} for {rs.name}", field="I")
    return out


@dataclass(frozen=True)
class ParabolicSubset:
    base: RootSystem = field(repr=False)
    I: frozenset[int]
    R_I_plus: tuple = field(repr=False)
    Lambda_I: tuple = field(repr=False)

    @property
    def unipotent_dim(self) -> int:
        return len(self.Lambda_I)

    @property
    def levi_positive_count(self) -> int:
        return len(self.R_I_plus)


def parabolic_subset(rs: RootSystem, indices: Iterable[int]) -> ParabolicSubset:
    """Split the positive roots into those of the Levi factor and the rest.

    A positive root lies in the span of ``{a_i : i in I}`` exactly when its
    simple-root coefficients vanish outside ``I`` (the base is linearly
    independent, so the expansion is unique).
    """
    I = _check_subset(rs, indices)
    inside, outside = [], []
    for root, coords in zip(rs.positive_roots, rs.positive_coords):
        if all(c == 0 for k, c in enumerate(coords, start=1) if k not in I):
            inside.append(root)
        else:
            outside.append(root)
    return ParabolicSubset(rs, I, tuple(inside), tuple(outside))


def unipotent_radical_dim(rs: RootSystem, indices: Iterable[int]) -> int:
    return parabolic_subset(rs, indices).unipotent_dim


def maximal_parabolic_dims(rs: RootSystem) -> dict[int, int]:
    """``{m: |Lambda_I|}`` for ``I`` = all simple roots except ``a_m``."""
    full = set(range(1, rs.rank + 1))
    return {m: unipotent_radical_dim(rs, full - {m}) for m in range(1, rs.rank + 1)}


def paper_radical_polynomial(family: str, n: int, m: int) -> Fraction | int:
    """Evaluate the printed per-family formula for dim R_u(P_I), I = Delta - {a_m}.

    ``A_n`` has no printed polynomial; its direct count m(n + 1 - m) is used.
    A non-integral value is returned as a ``Fraction`` so callers can flag it.
    """
    family, n = check_family_rank(family, n)
    if family not in CLASSICAL:
        raise ValidationError(f"no closed-form radical polynomial for {family}", field="family")
    if isinstance(m, bool) or not isinstance(m, int) or not 1 <= m <= n:
        raise ValidationError(f"removed index m must lie in 1..{n}, got {m!r}", field="m")
    half_m = Fraction(m, 2)
    if family == "A":
        value = Fraction(m * (n + 1 - m))
    elif family == "B":
        value = m + m * (n - m) + half_m * (2 * n - m - 1)
    elif family == "C":
        value = m * (n - m) + half_m * (2 * n - m - 1) + m
    else:
        value = (m - 1) * (n - m) + m + half_m * (2 * n - m - 3)
    return int(value) if value.denominator == 1 else value


@dataclass(frozen=True)
class RadicalCheck:
    family: str
    n: int
    m: int
    printed: Fraction | int
    enumerated: int

    @property
    def integral(self) -> bool:
        return Fraction(self.printed).denominator == 1

    @property
    def agree(self) -> bool:
        return self.printed == self.enumerated

    def to_dict(self) -> dict:
        printed = self.printed if self.integral else f"{self.printed.numerator}/{self.printed.denominator}"
        return {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "printed": printed,
            "enumerated": self.enumerated,
            "integral": self.integral,
            "agree": self.agree,
        }


def audit_radical_polynomials(family: str, ranks: Iterable[int]) -> list[RadicalCheck]:
    out = []
    for n in ranks:
        rs = build_root_system(family, n)
        for m, dim in maximal_parabolic_dims(rs).items():
            out.append(RadicalCheck(rs.family, n, m, paper_radical_polynomial(family, n, m), dim))
    return out


@dataclass(frozen=True)
class StabilityBound:
    d: int
    genus: int
    source: str
    family: str
    rank: int
    witnesses: tuple[int, ...] = ()

    @property
    def stable_range(self) -> int:
        """Cohomological degrees i < 2d are where the comparison holds."""
        return 2 * self.d

    @property
    def witness(self) -> int | None:
        return self.witnesses[0] if self.witnesses else None


def instability_codim_bruteforce(rs: RootSystem, g: int) -> StabilityBound:
    """min |Lambda_I| (g - 1) over maximal proper I, by enumeration.

    Witnesses are the removed simple-root indices achieving the minimum,
    ascending.
    """
    g = _check_genus(g)
    dims = maximal_parabolic_dims(rs)
    low = min(dims.values())
    witnesses = tuple(m for m in sorted(dims) if dims[m] == low)
    return StabilityBound(low * (g - 1), g, BRUTE_FORCE, rs.family, rs.rank, witnesses)


_TABLE_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def closed_form_d(family: str, n: int, g: int) -> StabilityBound:
    """The tabulated d_G: n(g-1) for A_n, 2(n-1)(g-1) for B_n, C_n, D_n."""
    if not isinstance(family, str) or family.upper() not in _TABLE_MIN_RANK:
        raise ValidationError(
            f"no closed form for family {family!r}; use instability_codim_bruteforce", field="family"
        )
    family, n = check_family_rank(family, n)
    g = _check_genus(g)
    d = n * (g - 1) if family == "A" else 2 * (n - 1) * (g - 1)
    return StabilityBound(d, g, CLOSED_FORM, family, n)


def dim_bun(rs: RootSystem, g: int) -> int:
    """dim Bun_G = dim G (g - 1)."""
    return dim_group(rs) * (_check_genus(g) - 1)


def exhaustive_min(rs: RootSystem) -> int:
    """Minimum of |Lambda_I| over every proper subset I (exponential in rank)."""
    best = None
    for size in range(rs.rank):
        for I in combinations(range(1, rs.rank + 1), size):
            v = unipotent_radical_dim(rs, I)
            best = v if best is None else min(best, v)
    return best


@dataclass(frozen=True)
class AuditRecord:
    family: str
    n: int
    genus: int
    closed_form: int | None
    brute_force: int
    witnesses: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.closed_form == self.brute_force

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "genus": self.genus,
            "closed_form": self.closed_form,
            "brute_force": self.brute_force,
            "agree": self.agree,
            "witness": self.witnesses[0],
            "witnesses": list(self.witnesses),
        }


@dataclass(frozen=True)
class AuditReport:
    records: tuple[AuditRecord, ...]

    @property
    def disagreements(self) -> tuple[AuditRecord, ...]:
        return tuple(r for r in self.records if not r.agree)

    def families(self) -> list[str]:
        present = {r.family for r in self.records}
        return [f for f in CLASSICAL if f in present]

    def to_dict(self) -> dict:
        return {
            "schema": "audit/v1",
            "cells": len(self.records),
            "disagreements": len(self.disagreements),
            "records": [r.to_dict() for r in self.records],
        }


def audit_table(families: Iterable[str], ranks: Iterable[int] | dict, genera: Iterable[int]) -> AuditReport:
    """Compare closed-form and brute-force d_G cell by cell.

    ``ranks`` is either one range used for every family or a mapping
    family -> ranks. Ranks below a family's minimum are skipped. Records are
    ordered by family (A, B, C, D), rank, genus.
    """
    families = [f.upper() for f in families]
    unknown = [f for f in families if f not in CLASSICAL]
    if unknown:
        raise ValidationError(f"audit supports families A, B, C, D only, got {unknown}", field="families")
    genera = [_check_genus(g) for g in genera]
    records = []
    for family in CLASSICAL:
        if family not in families:
            continue
        fam_ranks = ranks[family] if isinstance(ranks, dict) else ranks
        for n in sorted(set(fam_ranks)):
            if n < _TABLE_MIN_RANK[family]:
                continue
            rs = build_root_system(family, n)
            for g in sorted(set(genera)):
                brute = instability_codim_bruteforce(rs, g)
                closed = closed_form_d(family, n, g)
                records.append(AuditRecord(family, n, g, closed.d, brute.d, brute.witnesses))
    return AuditReport(tuple(records))
