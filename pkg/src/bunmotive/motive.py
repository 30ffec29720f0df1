"""Term-by-term motive of the moduli stack of G-bundles over a genus-g curve.

The motive is the tensor product of three free algebras per invariant
degree n_i, with V = h^1(C):

    h^*(BG)        one generator in degree 2 n_i, Tate twist n_i
    exterior part  Lambda^k (V(-(n_i - 1))), degree k (2 n_i - 1), 0 <= k <= 2g
    Sym part       one generator in degree 2(n_i - 1), twist n_i - 1

(the dual h^1(C)^* is identified with h^1(C)(1)). Each product of choices is
one ``MotiveTerm``: the exterior powers used, the total twist, and how many
times the same term arises. The expansion enumerates exponent choices
directly and never multiplies series, so it is an independent route to the
numbers in :mod:`bunmotive.series`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb

from .errors import ValidationError
from .parabolic import StabilityBound, instability_codim_bruteforce
from .rootsys import SIMPLY_CONNECTED, InvariantDegrees, IsogenyDatum, RootSystem, fundamental_degrees
from .series import TruncatedSeries


@dataclass(frozen=True)
class MotiveTerm:
    """(Lambda^{k_1} V x ... x Lambda^{k_r} V)(-twist), repeated ``multiplicity`` times."""

    word: tuple[int, ...]
    twist: int
    multiplicity: int = 1

    @property
    def weight(self) -> int:
        return sum(self.word) + 2 * self.twist

    def to_dict(self) -> dict:
        return {"word": list(self.word), "twist": self.twist, "mult": self.multiplicity}


@dataclass(frozen=True)
class MotiveClass:
    genus: int
    degrees: InvariantDegrees
    max_degree: int
    per_degree: dict[int, tuple[MotiveTerm, ...]]
    pi1_order: int = 1

    def terms(self, i: int) -> tuple[MotiveTerm, ...]:
        return self.per_degree.get(i, ())

    def truncated(self, max_degree: int) -> "MotiveClass":
        keep = {i: ts for i, ts in self.per_degree.items() if i <= max_degree}
        return MotiveClass(self.genus, self.degrees, min(max_degree, self.max_degree), keep, self.pi1_order)

    def to_dict(self) -> dict:
        return {
            "schema": "motive/v1",
            "genus": self.genus,
            "degrees": list(self.degrees.degrees),
            "pi1_order": self.pi1_order,
            "max_degree": self.max_degree,
            "per_degree": [
                {"degree": i, "terms": [t.to_dict() for t in self.terms(i)]} for i in range(self.max_degree + 1)
            ],
        }


def unit_class(genus: int = 2, degrees: InvariantDegrees = InvariantDegrees(())) -> MotiveClass:
    return MotiveClass(genus, degrees, 0, {0: (MotiveTerm((), 0, 1),)})


def bun_motive(degrees: InvariantDegrees, isogeny: IsogenyDatum = SIMPLY_CONNECTED, g: int = 2,
               max_degree: int = 6) -> MotiveClass:
    """Expand the motive of Bun_G through cohomological degree ``max_degree``."""
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise ValidationError(f"genus must be an integer >= 2, got {g!r}", field="genus")
    if isinstance(max_degree, bool) or not isinstance(max_degree, int) or max_degree < 0:
        raise ValidationError(f"max_degree must be >= 0, got {max_degree!r}", field="max_degree")
    # state: (degree, word, twist) -> multiplicity
    states: dict[tuple[int, tuple[int, ...], int], int] = {(0, (), 0): 1}
    for n in degrees:
        nxt: dict = defaultdict(int)
        for (deg, word, twist), mult in states.items():
            for e in range((max_degree - deg) // (2 * n) + 1):
                d1, b1 = deg + 2 * n * e, twist + n * e
                for k in range(2 * g + 1):
                    d2 = d1 + k * (2 * n - 1)
                    if d2 > max_degree:
                        break
                    w2 = tuple(sorted(word + (k,))) if k else word
                    b2 = b1 + k * (n - 1)
                    for f in range((max_degree - d2) // (2 * n - 2) + 1):
                        nxt[(d2 + 2 * (n - 1) * f, w2, b2 + (n - 1) * f)] += mult
        states = nxt
    per_degree: dict[int, list[MotiveTerm]] = defaultdict(list)
    for (deg, word, twist), mult in states.items():
        per_degree[deg].append(MotiveTerm(word, twist, mult * isogeny.pi1_order))
    canonical = {i: tuple(sorted(per_degree[i], key=_term_key)) for i in sorted(per_degree)}
    return MotiveClass(g, degrees, max_degree, canonical, isogeny.pi1_order)


def _term_key(t: MotiveTerm):
    return (t.word, t.twist)


def _exterior_dim(g: int, k: int) -> int:
    return comb(2 * g, k)


def _exterior_E(g: int, k: int) -> dict[tuple[int, int], int]:
    # V = H^1(C) has h^{1,0} = h^{0,1} = g
    return {(j, k - j): comb(g, j) * comb(g, k - j) for j in range(k + 1) if comb(g, j) * comb(g, k - j)}


def realize_dim(mc: MotiveClass) -> TruncatedSeries:
    """Dimension realization: sum_i t^i sum_terms mult * prod_j C(2g, k_j)."""
    out = {}
    for i, terms in mc.per_degree.items():
        total = 0
        for term in terms:
            dim = term.multiplicity
            for k in term.word:
                dim *= _exterior_dim(mc.genus, k)
            total += dim
        out[(i, 0, 0)] = total
    return TruncatedSeries(out, mc.max_degree)


def realize_E(mc: MotiveClass) -> TruncatedSeries:
    """Hodge-Deligne realization, with E(L) = xy and E(Lambda^k V) = sum_j C(g,j) C(g,k-j) x^j y^(k-j)."""
    out: dict = defaultdict(int)
    for i, terms in mc.per_degree.items():
        for term in terms:
            poly = {(term.twist, term.twist): term.multiplicity}
            for k in term.word:
                factor = _exterior_E(mc.genus, k)
                new: dict = defaultdict(int)
                for (a, b), u in poly.items():
                    for (c, d), v in factor.items():
                        new[(a + c, b + d)] += u * v
                poly = new
            for (a, b), c in poly.items():
                out[(i, a, b)] += c
    return TruncatedSeries(out, mc.max_degree)


def purity_violations(mc: MotiveClass) -> list[tuple[int, MotiveTerm]]:
    return [(i, t) for i, terms in sorted(mc.per_degree.items()) for t in terms if t.weight != i]


NO_CLAIM = "no claim"


@dataclass(frozen=True)
class CoarseMotive:
    """The stack's motive restricted to the range where it agrees with the coarse space."""

    motive: MotiveClass
    bound: StabilityBound

    @property
    def stable_range(self) -> int:
        return self.bound.stable_range

    def claims(self, i: int) -> bool:
        return 0 <= i < self.stable_range

    def h(self, i: int):
        """Terms of h^i, or ``NO_CLAIM`` for i >= 2d."""
        if not self.claims(i):
            return NO_CLAIM
        return self.motive.terms(i)

    def to_dict(self) -> dict:
        return {
            "schema": "coarse/v1",
            "genus": self.motive.genus,
            "d": self.bound.d,
            "stable_range": self.stable_range,
            "witness": self.bound.witness,
            "witnesses": list(self.bound.witnesses),
            "no_claim_from": self.stable_range,
            "per_degree": [
                {"degree": i, "terms": [t.to_dict() for t in self.motive.terms(i)]}
                for i in range(self.stable_range)
            ],
        }


def coarse_motive(degrees: InvariantDegrees | None, isogeny: IsogenyDatum, g: int, rs: RootSystem) -> CoarseMotive:
    """bun_motive in degrees i < 2d, d the brute-force codimension bound."""
    bound = instability_codim_bruteforce(rs, g)
    if degrees is None:
        degrees = fundamental_degrees(rs)
    # d >= g - 1 >= 1, so the range is never empty
    mc = bun_motive(degrees, isogeny, g, bound.stable_range - 1)
    return CoarseMotive(mc, bound)


@dataclass(frozen=True)
class Footprint:
    words: tuple[tuple[int, ...], ...]
    twists: tuple[int, ...]
    violations: tuple[tuple[int, MotiveTerm], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def tannakian_footprint(mc: MotiveClass) -> Footprint:
    """Distinct exterior words and twists used; any entry outside 1..2g or negative twist is a violation."""
    words, twists, bad = set(), set(), []
    for i, terms in sorted(mc.per_degree.items()):
        for t in terms:
            words.add(t.word)
            twists.add(t.twist)
            if t.twist < 0 or any(not 1 <= k <= 2 * mc.genus for k in t.word):
                bad.append((i, t))
    return Footprint(tuple(sorted(words)), tuple(sorted(twists)), tuple(bad))


def _term_latex(t: MotiveTerm) -> str:
    if t.word:
        body = r" \otimes ".join(rf"\Lambda^{{{k}}} h^1(C)" for k in t.word)
        if len(t.word) > 1 and t.twist:
            body = f"({body})"
    else:
        body = r"\mathbb{Q}"
    if t.twist:
        body += f"(-{t.twist})"
    if t.multiplicity != 1:
        body = f"{t.multiplicity}\\," + body
    return body


def motive_latex(mc: MotiveClass) -> str:
    lines = [r"$\begin{aligned}"]
    for i in range(mc.max_degree + 1):
        terms = mc.terms(i)
        rhs = " + ".join(_term_latex(t) for t in terms) if terms else "0"
        lines.append(rf"h^{{{i}}} &= {rhs} \\")
    lines.append(r"\end{aligned}$")
    return "\n".join(lines)


def motive_text(mc: MotiveClass) -> str:
    out = []
    for i in range(mc.max_degree + 1):
        terms = mc.terms(i)
        body = " + ".join(
            (f"{t.multiplicity}*" if t.multiplicity != 1 else "")
            + ("x".join(f"L{k}V" for k in t.word) or "Q")
            + (f"(-{t.twist})" if t.twist else "")
            for t in terms
        )
        out.append(f"h^{i} = {body or '0'}")
    return "\n".join(out)
