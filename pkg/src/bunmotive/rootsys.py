"""Root systems with exact rational coordinates.

Classical types use the usual coordinate models: ``A_n`` sits in the
hyperplane ``sum x_i = 0`` of Q^(n+1), the others in Q^n, with simple roots

    A_n  a_i = e_i - e_{i+1}
    B_n  a_i = e_i - e_{i+1} (i < n),  a_n = e_n
    C_n  a_i = e_i - e_{i+1} (i < n),  a_n = 2 e_n
    D_n  a_i = e_i - e_{i+1} (i < n),  a_n = e_{n-1} + e_n

Exceptional types follow Bourbaki's tables. Simple-root indices are
1-based everywhere in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import prod

from .errors import ConsistencyError, ValidationError
from .linalg import determinant, dot, solve

Vector = tuple[Fraction, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
CLASSICAL = ("A", "B", "C", "D")

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _unit(i: int, dim: int, scale=1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(scale)
    return v


def _add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _neg(v) -> Vector:
    return tuple(-a for a in v)


def reflect(v: Vector, alpha: Vector) -> Vector:
    """The reflection s_alpha(v) = v - 2 (v, alpha)/(alpha, alpha) alpha."""
    c = 2 * dot(v, alpha) / dot(alpha, alpha)
    if c == 0:
        return tuple(v)
    return tuple(a - c * b for a, b in zip(v, alpha))


def valid_ranks(family: str) -> str:
    family = family.upper()
    if family in _MIN_RANK:
        return f"{family}_n needs n >= {_MIN_RANK[family]}"
    if family in _EXCEPTIONAL_RANKS:
        return f"{family} exists only in rank " + ", ".join(map(str, _EXCEPTIONAL_RANKS[family]))
    return "family must be one of " + ", ".join(FAMILIES)


def check_family_rank(family, rank) -> tuple[str, int]:
    if not isinstance(family, str) or family.upper() not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; " + valid_ranks("?"), field="family")
    family = family.upper()
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise ValidationError(f"rank must be an integer, got {rank!r}", field="rank")
    ok = rank >= _MIN_RANK[family] if family in _MIN_RANK else rank in _EXCEPTIONAL_RANKS[family]
    if not ok:
        raise ValidationError(f"invalid rank {rank} for {family}: {valid_ranks(family)}", field="rank")
    return family, rank


def _simple_roots(family: str, n: int) -> tuple[int, list[Vector]]:
    if family == "A":
        d = n + 1
        return d, [_add(_unit(i, d), _unit(i + 1, d, -1)) for i in range(n)]
    if family in ("B", "C", "D"):
        d = n
        chain = [_add(_unit(i, d), _unit(i + 1, d, -1)) for i in range(n - 1)]
        if family == "B":
            last = tuple(_unit(n - 1, d))
        elif family == "C":
            last = tuple(_unit(n - 1, d, 2))
        else:
            last = _add(_unit(n - 2, d), _unit(n - 1, d))
        return d, chain + [last]
    if family == "G":
        return 3, [_vec(1, -1, 0), _vec(-2, 1, 1)]
    if family == "F":
        h = Fraction(1, 2)
        return 4, [_vec(0, 1, -1, 0), _vec(0, 0, 1, -1), _vec(0, 0, 0, 1), _vec(h, -h, -h, -h)]
    # E_6, E_7, E_8 as the first n Bourbaki simple roots of E_8 in Q^8
    h = Fraction(1, 2)
    e8 = [
        _vec(h, -h, -h, -h, -h, -h, -h, h),
        _vec(1, 1, 0, 0, 0, 0, 0, 0),
        _vec(-1, 1, 0, 0, 0, 0, 0, 0),
        _vec(0, -1, 1, 0, 0, 0, 0, 0),
        _vec(0, 0, -1, 1, 0, 0, 0, 0),
        _vec(0, 0, 0, -1, 1, 0, 0, 0),
        _vec(0, 0, 0, 0, -1, 1, 0, 0),
        _vec(0, 0, 0, 0, 0, -1, 1, 0),
    ]
    return 8, e8[:n]


@dataclass(frozen=True)
class RootSystem:
    """A reduced crystallographic root system with a chosen base.

    ``positive_coords[k]`` holds the coefficients of ``positive_roots[k]``
    in the simple roots; positive roots are ordered by height, then by
    those coefficients.
    """

    family: str
    rank: int
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    positive_coords: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def all_roots(self) -> tuple[Vector, ...]:
        return self.positive_roots + tuple(_neg(r) for r in self.positive_roots)

    def heights(self) -> list[int]:
        return [sum(c) for c in self.positive_coords]

    def simple_coordinates(self, v: Vector) -> tuple[Fraction, ...]:
        gram = [[dot(a, b) for b in self.simple_roots] for a in self.simple_roots]
        return tuple(solve(gram, [dot(v, a) for a in self.simple_roots]))


def _close_under_reflections(simple: list[Vector]) -> set[Vector]:
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for a in simple:
                s = reflect(r, a)
                if s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    return roots


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of the given type.

    All roots are obtained by closing the simple roots under the simple
    reflections; the positive ones are those with non-negative simple-root
    coordinates.
    """
    family, rank = check_family_rank(family, rank)
    dim, simple = _simple_roots(family, rank)
    roots = _close_under_reflections(simple)
    gram = [[dot(a, b) for b in simple] for a in simple]
    positive = []
    for r in roots:
        coords = solve(gram, [dot(r, a) for a in simple])
        if any(c.denominator != 1 for c in coords):
            raise ConsistencyError(f"root {r} is not an integer combination of the base", coords, None)
        coords = tuple(int(c) for c in coords)
        if all(c >= 0 for c in coords):
            positive.append((sum(coords), coords, r))
        elif not all(c <= 0 for c in coords):
            raise ConsistencyError(f"root {r} has coordinates of mixed sign", coords, None)
    positive.sort(key=lambda item: (item[0], tuple(-c for c in item[1])))
    return RootSystem(
        family=family,
        rank=rank,
        ambient_dim=dim,
        simple_roots=tuple(simple),
        positive_roots=tuple(r for _, _, r in positive),
        positive_coords=tuple(c for _, c, _ in positive),
    )


def cartan_matrix(rs: RootSystem) -> list[list[int]]:
    """C[i][j] = 2 (a_i, a_j) / (a_j, a_j) over the simple roots."""
    out = []
    for a in rs.simple_roots:
        row = []
        for b in rs.simple_roots:
            c = 2 * dot(a, b) / dot(b, b)
            if c.denominator != 1:
                raise ConsistencyError("non-integral Cartan entry", c, None)
            row.append(int(c))
        out.append(row)
    return out


def cartan_determinant(rs: RootSystem) -> int:
    return determinant(cartan_matrix(rs))


def dim_group(rs: RootSystem) -> int:
    return 2 * len(rs.positive_roots) + rs.rank


def _orbit_size(start: tuple[int, ...], cartan: list[list[int]], cap: int | None) -> int | None:
    # Weights in Dynkin labels: s_i(l) = l - l_i * (row i of the Cartan matrix).
    seen = {start}
    frontier = [start]
    rank = len(cartan)
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(rank):
                li = lam[i]
                if li == 0:
                    continue
                row = cartan[i]
                w = tuple(lam[k] - li * row[k] for k in range(rank))
                if w not in seen:
                    seen.add(w)
                    if cap is not None and len(seen) > cap:
                        return None
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def _subgroup_order(cartan: list[list[int]]) -> int:
    # |W| = |W . w_j| * |W_{S - {j}}| for the fundamental weight w_j: the
    # stabilizer of a dominant weight is generated by the simple reflections
    # fixing it (Chevalley). The node with the smallest orbit is used.
    rank = len(cartan)
    if rank == 0:
        return 1
    degree = [sum(1 for k in range(rank) if k != i and cartan[i][k]) for i in range(rank)]
    best = None
    for j in sorted(range(rank), key=lambda i: (degree[i] > 1, i)):
        start = tuple(int(i == j) for i in range(rank))
        size = _orbit_size(start, cartan, None if best is None else best[0])
        if size is not None and (best is None or size < best[0]):
            best = (size, j)
    size, j = best
    keep = [i for i in range(rank) if i != j]
    return size * _subgroup_order([[cartan[a][b] for b in keep] for a in keep])


def weyl_group_order(rs: RootSystem) -> int:
    """|W| by orbit enumeration along a chain of parabolic stabilizers."""
    return _weyl_order_cached(rs.family, rs.rank)


@lru_cache(maxsize=None)
def _weyl_order_cached(family: str, rank: int) -> int:
    return _subgroup_order(cartan_matrix(build_root_system(family, rank)))


@dataclass(frozen=True)
class InvariantDegrees:
    degrees: tuple[int, ...]

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(n - 1 for n in self.degrees)

    @property
    def graded_span_dims(self) -> dict[int, int]:
        """Map cohomological degree 2 n_i to its multiplicity in N."""
        out: dict[int, int] = {}
        for n in self.degrees:
            out[2 * n] = out.get(2 * n, 0) + 1
        return out

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)


def exponents_from_heights(heights: list[int]) -> list[int]:
    """Conjugate of the partition (#roots of height 1, #roots of height 2, ...)."""
    counts = []
    for h in heights:
        while len(counts) < h:
            counts.append(0)
        counts[h - 1] += 1
    if not counts:
        return []
    return sorted(sum(1 for c in counts if c >= j) for j in range(1, counts[0] + 1))


def fundamental_degrees(rs: RootSystem) -> InvariantDegrees:
    """Degrees of the basic W-invariants via height-partition duality.

    Raises ConsistencyError unless prod(n_i) = |W| and
    sum(2 n_i - 1) = dim G.
    """
    exps = exponents_from_heights(rs.heights())
    if len(exps) != rs.rank:
        raise ConsistencyError("number of exponents differs from rank", len(exps), rs.rank)
    degrees = tuple(m + 1 for m in exps)
    w = weyl_group_order(rs)
    if prod(degrees) != w:
        raise ConsistencyError(f"{rs.name}: product of degrees vs |W|", prod(degrees), w)
    total = sum(2 * n - 1 for n in degrees)
    if total != dim_group(rs):
        raise ConsistencyError(f"{rs.name}: sum(2n_i - 1) vs dim G", total, dim_group(rs))
    return InvariantDegrees(degrees)


ISOGENY_KINDS = ("simply_connected", "adjoint", "custom")


@dataclass(frozen=True)
class IsogenyDatum:
    kind: str
    pi1_order: int


SIMPLY_CONNECTED = IsogenyDatum("simply_connected", 1)


def fundamental_group_order(rs: RootSystem, kind: str = "simply_connected", m: int | None = None) -> IsogenyDatum:
    """|pi_1(G)| for the simply connected form, the adjoint form, or a custom quotient.

    A custom order ``m`` must divide det(Cartan) = |Z(G_sc)|.
    """
    det = cartan_determinant(rs)
    if kind == "simply_connected":
        return IsogenyDatum(kind, 1)
    if kind == "adjoint":
        return IsogenyDatum(kind, det)
    if kind == "custom":
        if isinstance(m, bool) or not isinstance(m, int) or m < 1 or det % m:
            raise ValidationError(
                f"custom |pi_1| = {m!r} must be a positive divisor of det(Cartan) = {det} for {rs.name}",
                field="isogeny",
            )
        return IsogenyDatum(kind, m)
    raise ValidationError(f"isogeny kind must be one of {', '.join(ISOGENY_KINDS)}", field="isogeny")


def implemented_types(max_rank: int = 8) -> list[tuple[str, int]]:
    out = [(f, n) for f in CLASSICAL for n in range(_MIN_RANK[f], max_rank + 1)]
    out += [(f, n) for f, ranks in _EXCEPTIONAL_RANKS.items() for n in ranks if n <= max_rank]
    return out
