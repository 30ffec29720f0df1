"""Weight-graded cohomology of X - D from normal-crossing boundary data.

A ``LogPairDatum`` lists the strata D_I (with their Betti numbers) and the
Gysin maps H^m(D_I) -> H^{m+2}(D_{I_k}) along each inclusion
D_I -> D_{I_k}, I_k = I - {i_k}. The complex

    H(D^(n))(-n) -> ... -> H(D^(1))(-1) -> H(D^(0))

sits in positions -n..0; the differential is the alternating sum of the
Gysin maps with sign (-1)^k for the k-th index of I (ascending, 1-based).
A class of internal degree m at position -l has weight j = m + 2l and
contributes to Gr_W^j H^{j - l}(U).

Everything here is exact linear algebra; no geometry is computed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .errors import ValidationError
from .linalg import Matrix, fraction_str, is_zero, matmul, rank, to_fraction, zeros


class ComplexError(ValidationError):
    """The assembled differential does not square to zero."""


@dataclass(frozen=True)
class Stratum:
    id: str
    level: int
    components: tuple[int, ...]
    betti: tuple[int, ...]

    def dim(self, m: int) -> int:
        return self.betti[m] if 0 <= m < len(self.betti) else 0


@dataclass(frozen=True)
class Incidence:
    """Inclusion ``source -> target`` with its Gysin matrices, keyed by source degree m."""

    source: str
    target: str
    gysin: Mapping[int, Matrix] = field(default_factory=dict)


def _matrix(raw, rows: int, cols: int, where: str) -> Matrix:
    try:
        mat = [[to_fraction(x) for x in row] for row in raw]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{where}: bad matrix entry ({exc})", field=where) from None
    if rows == 0:
        if any(row for row in mat):
            raise ValidationError(f"{where}: expected a 0 x {cols} matrix", field=where)
        return []
    if len(mat) != rows or any(len(row) != cols for row in mat):
        got = f"{len(mat)} x {len(mat[0]) if mat else 0}"
        raise ValidationError(f"{where}: expected a {rows} x {cols} matrix, got {got}", field=where)
    return mat


@dataclass(frozen=True)
class LogPairDatum:
    strata: tuple[Stratum, ...]
    incidences: tuple[Incidence, ...] = ()

    def __post_init__(self):
        ids = [s.id for s in self.strata]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate stratum ids", field="strata")
        if not any(s.level == 0 for s in self.strata):
            raise ValidationError("level 0 (the ambient variety) has no strata", field="strata")
        for s in self.strata:
            if s.level < 0 or len(s.components) != s.level or len(set(s.components)) != s.level:
                raise ValidationError(
                    f"stratum {s.id!r}: level {s.level} needs that many distinct components", field="strata"
                )
            if any(b < 0 for b in s.betti):
                raise ValidationError(f"stratum {s.id!r}: negative Betti number", field="betti")
        if sorted({s.level for s in self.strata}) != list(range(self.max_level + 1)):
            raise ValidationError("strata levels must be consecutive from 0", field="strata")
        by_id = self.by_id
        clean = []
        for inc in self.incidences:
            where = f"incidence {inc.source}->{inc.target}"
            if inc.source not in by_id or inc.target not in by_id:
                raise ValidationError(f"{where}: unknown stratum", field="incidences")
            src, tgt = by_id[inc.source], by_id[inc.target]
            if src.level != tgt.level + 1:
                raise ValidationError(f"{where}: must go from level l to level l-1", field="incidences")
            if not set(tgt.components) < set(src.components):
                raise ValidationError(f"{where}: target components must be source components minus one",
                                      field="incidences")
            gysin = {}
            for m, raw in inc.gysin.items():
                m = int(m)
                if not 0 <= m < len(src.betti):
                    raise ValidationError(f"{where}: no source degree {m}", field="gysin")
                gysin[m] = _matrix(raw, tgt.dim(m + 2), src.dim(m), f"{where} degree {m}")
            clean.append(Incidence(inc.source, inc.target, gysin))
        object.__setattr__(self, "incidences", tuple(clean))

    @property
    def by_id(self) -> dict[str, Stratum]:
        return {s.id: s for s in self.strata}

    @property
    def max_level(self) -> int:
        return max(s.level for s in self.strata)

    def level(self, l: int) -> list[Stratum]:
        return [s for s in self.strata if s.level == l]

    def sign(self, inc: Incidence) -> int:
        src, tgt = self.by_id[inc.source], self.by_id[inc.target]
        removed = (set(src.components) - set(tgt.components)).pop()
        k = sorted(src.components).index(removed) + 1
        return -1 if k % 2 else 1

    def to_dict(self) -> dict:
        return {
            "schema": "logpair/v1",
            "strata": [
                {"id": s.id, "level": s.level, "components": list(s.components), "betti": list(s.betti)}
                for s in self.strata
            ],
            "incidences": [
                {
                    "source": inc.source,
                    "target": inc.target,
                    "gysin": {str(m): [[fraction_str(x) for x in row] for row in mat]
                              for m, mat in sorted(inc.gysin.items())},
                }
                for inc in self.incidences
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LogPairDatum":
        """Parse the JSON form; any structural problem raises ValidationError naming the field."""
        if not isinstance(data, dict):
            raise ValidationError("datum must be a JSON object", field="datum")
        try:
            strata = tuple(
                Stratum(str(s["id"]), _int(s["level"], "level"), tuple(_int(c, "components") for c in s["components"]),
                        tuple(_int(b, "betti") for b in s["betti"]))
                for s in data["strata"]
            )
            incidences = tuple(
                Incidence(str(i["source"]), str(i["target"]), {_int(m, "gysin"): mat for m, mat in i.get("gysin", {}).items()})
                for i in data.get("incidences", [])
            )
        except KeyError as exc:
            raise ValidationError(f"missing field {exc.args[0]!r}", field=str(exc.args[0])) from None
        except (TypeError, AttributeError):
            raise ValidationError("malformed datum structure", field="datum") from None
        return cls(strata, incidences)


def _int(value, name: str) -> int:
    if isinstance(value, (bool, float)):
        raise ValidationError(f"{name} must be an integer, got {value!r}", field=name)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be an integer, got {value!r}", field=name) from None


@dataclass(frozen=True)
class TwistedComplex:
    """Graded spaces at positions -n..0; the space at position -l carries twist (-l).

    ``spaces[(p, m)]`` is the dimension in internal degree m at position p;
    ``differentials[(p, m)]`` maps it to ``(p + 1, m + 2)``.
    """

    spaces: dict[tuple[int, int], int]
    differentials: dict[tuple[int, int], Matrix]

    def dim(self, p: int, m: int) -> int:
        return self.spaces.get((p, m), 0)

    def matrix(self, p: int, m: int) -> Matrix:
        mat = self.differentials.get((p, m))
        if mat is None:
            return zeros(self.dim(p + 1, m + 2), self.dim(p, m))
        return mat

    def check_d_squared(self) -> None:
        for p, m in sorted(self.spaces):
            first = self.matrix(p, m)
            second = self.matrix(p + 1, m + 2)
            prod = matmul(second, first, self.dim(p, m))
            if not is_zero(prod):
                raise ComplexError(
                    f"d o d != 0 from position {p}, degree {m} (d[{p},{m}] then d[{p + 1},{m + 2}])",
                    field="incidences",
                )

    def with_signs(self, sign: Callable[[int], int]) -> "TwistedComplex":
        """Multiply the differential leaving position p by ``sign(p)``."""
        return TwistedComplex(
            dict(self.spaces),
            {k: [[x * sign(k[0]) for x in row] for row in mat] for k, mat in self.differentials.items()},
        )


def build_pair_complex(datum: LogPairDatum) -> TwistedComplex:
    spaces: dict[tuple[int, int], int] = defaultdict(int)
    offsets: dict[tuple[str, int], int] = {}
    for s in datum.strata:
        for m, b in enumerate(s.betti):
            if b:
                offsets[(s.id, m)] = spaces[(-s.level, m)]
                spaces[(-s.level, m)] += b
    spaces = dict(spaces)
    diffs: dict[tuple[int, int], Matrix] = {}
    by_id = datum.by_id
    for inc in datum.incidences:
        src, tgt = by_id[inc.source], by_id[inc.target]
        sign = datum.sign(inc)
        for m, mat in inc.gysin.items():
            if not src.dim(m) or not tgt.dim(m + 2):
                continue
            key = (-src.level, m)
            big = diffs.setdefault(key, zeros(spaces[(-tgt.level, m + 2)], spaces[key]))
            r0, c0 = offsets[(tgt.id, m + 2)], offsets[(src.id, m)]
            for i, row in enumerate(mat):
                for j, x in enumerate(row):
                    big[r0 + i][c0 + j] += sign * x
    cx = TwistedComplex(spaces, diffs)
    cx.check_d_squared()
    return cx


def cohomology(cx: TwistedComplex) -> dict[tuple[int, int, int], int]:
    """``{(position, internal degree, twist): dim}`` where twist l means Q(-l)."""
    out = {}
    for p, m in sorted(cx.spaces):
        out_rank = rank(cx.matrix(p, m))
        in_rank = rank(cx.matrix(p - 1, m - 2)) if cx.dim(p - 1, m - 2) else 0
        out[(p, m, -p)] = cx.dim(p, m) - out_rank - in_rank
    return out


@dataclass(frozen=True)
class WeightTable:
    """dim Gr_W^j H^k(U) as ``entries[(j, k)]``; missing entries are zero."""

    entries: dict[tuple[int, int], int]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def betti(self, k: int) -> int:
        return sum(v for (j, kk), v in self.entries.items() if kk == k)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * v for (_, k), v in self.entries.items())

    def to_dict(self) -> dict:
        return {
            "schema": "weightcx/v1",
            "entries": [{"weight": j, "degree": k, "dim": v} for (j, k), v in sorted(self.nonzero().items(),
                                                                                   key=lambda kv: (kv[0][1], kv[0][0]))],
        }

    def to_text(self) -> str:
        nz = self.nonzero()
        if not nz:
            return "(all zero)"
        ks = range(max(k for _, k in nz) + 1)
        js = range(max(j for j, _ in nz) + 1)
        width = max(3, *(len(str(v)) for v in nz.values()))
        head = "j\\k " + " ".join(f"{k:>{width}}" for k in ks)
        rows = [head]
        for j in js:
            rows.append(f"{j:>3} " + " ".join(f"{self[(j, k)]:>{width}}" for k in ks))
        return "\n".join(rows)


def gr_w_cohomology(datum: LogPairDatum) -> WeightTable:
    table: dict[tuple[int, int], int] = defaultdict(int)
    for (p, m, l), dim in cohomology(build_pair_complex(datum)).items():
        j = m + 2 * l
        table[(j, j + p)] += dim
    return WeightTable(dict(table))


def complex_euler_characteristic(datum: LogPairDatum) -> int:
    """Alternating sum over the input: a degree-m class at level l sits in H^{m+l}."""
    return sum((-1) ** (m + s.level) * b for s in datum.strata for m, b in enumerate(s.betti))


def curve_minus_points(g: int, k: int) -> LogPairDatum:
    """A genus-g curve with k marked points removed."""
    if g < 0 or k < 0:
        raise ValidationError("need g >= 0 and k >= 0", field="g" if g < 0 else "k")
    strata = [Stratum("C", 0, (), (1, 2 * g, 1))]
    strata += [Stratum(f"p{i}", 1, (i,), (1,)) for i in range(1, k + 1)]
    incs = [Incidence(f"p{i}", "C", {0: [[Fraction(1)]]}) for i in range(1, k + 1)]
    return LogPairDatum(tuple(strata), tuple(incs))


def plane_minus_lines(r: int) -> LogPairDatum:
    """P^2 minus r >= 0 lines in general position (points p_ij = L_i n L_j)."""
    if r < 0:
        raise ValidationError("need r >= 0", field="r")
    one = [[Fraction(1)]]
    strata = [Stratum("P2", 0, (), (1, 0, 1, 0, 1))]
    strata += [Stratum(f"L{i}", 1, (i,), (1, 0, 1)) for i in range(1, r + 1)]
    strata += [Stratum(f"p{i}{j}", 2, (i, j), (1,)) for i, j in combinations(range(1, r + 1), 2)]
    incs = [Incidence(f"L{i}", "P2", {0: one, 2: one}) for i in range(1, r + 1)]
    for i, j in combinations(range(1, r + 1), 2):
        incs.append(Incidence(f"p{i}{j}", f"L{i}", {0: one}))
        incs.append(Incidence(f"p{i}{j}", f"L{j}", {0: one}))
    return LogPairDatum(tuple(strata), tuple(incs))


def smooth_projective(betti) -> LogPairDatum:
    return LogPairDatum((Stratum("X", 0, (), tuple(betti)),))


# Simplicial pairs -------------------------------------------------------


@dataclass(frozen=True)
class SimplicialLogPair:
    """A truncated simplicial pair (X_p, D_p), p = 0..P.

    ``cofaces[p]`` lists the maps induced by the face maps X_{p+1} -> X_p on
    the pair complexes, i = 0..p+1; each is ``{(src_id, tgt_id): {m: matrix}}``
    with src a stratum of X_p and tgt one of X_{p+1} at the same level.
    The horizontal differential is their alternating sum.
    """

    levels: tuple[LogPairDatum, ...]
    cofaces: tuple[tuple[dict, ...], ...]

    def __post_init__(self):
        if len(self.cofaces) != len(self.levels) - 1:
            raise ValidationError("need one coface family per consecutive pair of levels", field="cofaces")
        for p, maps in enumerate(self.cofaces):
            if len(maps) != p + 2:
                raise ValidationError(f"level {p} needs {p + 2} coface maps", field="cofaces")


def _pair_basis(datum: LogPairDatum):
    offsets, spaces = {}, defaultdict(int)
    for s in datum.strata:
        for m, b in enumerate(s.betti):
            if b:
                offsets[(s.id, m)] = spaces[(-s.level, m)]
                spaces[(-s.level, m)] += b
    return offsets, dict(spaces)


@dataclass(frozen=True)
class TotalComplex:
    """``spaces[(q, j)]``: total degree q, weight j; ``differentials[(q, j)]`` maps to (q + 1, j)."""

    spaces: dict[tuple[int, int], int]
    differentials: dict[tuple[int, int], Matrix]


def total_complex(sp: SimplicialLogPair) -> TotalComplex:
    """Total complex of the double complex with vertical signs (-1)^p."""
    pair = [build_pair_complex(d) for d in sp.levels]
    bases = [_pair_basis(d) for d in sp.levels]
    # block layout inside each (q, j): ordered by (p, position)
    layout: dict[tuple[int, int], dict[tuple[int, int, int], int]] = defaultdict(dict)
    sizes: dict[tuple[int, int], int] = defaultdict(int)
    for p, cx in enumerate(pair):
        for (pos, m), dim in sorted(cx.spaces.items()):
            q, j = p + pos, m - 2 * pos
            layout[(q, j)][(p, pos, m)] = sizes[(q, j)]
            sizes[(q, j)] += dim
    diffs: dict[tuple[int, int], Matrix] = {}

    def block(q, j):
        return diffs.setdefault((q, j), zeros(sizes.get((q + 1, j), 0), sizes[(q, j)]))

    for p, cx in enumerate(pair):
        sign = -1 if p % 2 else 1
        for (pos, m), mat in cx.differentials.items():
            q, j = p + pos, m - 2 * pos
            big = block(q, j)
            r0, c0 = layout[(q + 1, j)][(p, pos + 1, m + 2)], layout[(q, j)][(p, pos, m)]
            for a, row in enumerate(mat):
                for b, x in enumerate(row):
                    big[r0 + a][c0 + b] += sign * x
    for p, maps in enumerate(sp.cofaces):
        src_off, _ = bases[p]
        tgt_off, _ = bases[p + 1]
        src_by, tgt_by = sp.levels[p].by_id, sp.levels[p + 1].by_id
        for i, face in enumerate(maps):
            fsign = -1 if i % 2 else 1
            for (sid, tid), mats in face.items():
                s, t = src_by[sid], tgt_by[tid]
                if s.level != t.level:
                    raise ValidationError(f"coface {sid}->{tid} changes level", field="cofaces")
                pos = -s.level
                for m, raw in mats.items():
                    if not s.dim(m) or not t.dim(m):
                        continue
                    mat = _matrix(raw, t.dim(m), s.dim(m), f"coface {sid}->{tid} degree {m}")
                    q, j = p + pos, m - 2 * pos
                    big = block(q, j)
                    r0 = layout[(q + 1, j)][(p + 1, pos, m)] + tgt_off[(tid, m)]
                    c0 = layout[(q, j)][(p, pos, m)] + src_off[(sid, m)]
                    for a, row in enumerate(mat):
                        for b, x in enumerate(row):
                            big[r0 + a][c0 + b] += fsign * x
    cx = TotalComplex(dict(sizes), diffs)
    for (q, j) in sorted(cx.spaces):
        first = cx.differentials.get((q, j))
        second = cx.differentials.get((q + 1, j))
        if first is not None and second is not None and not is_zero(matmul(second, first, sizes[(q, j)])):
            raise ComplexError(f"total differential does not square to zero at degree {q}, weight {j}",
                               field="cofaces")
    return cx


def gr_w_cohomology_simplicial(sp: SimplicialLogPair) -> WeightTable:
    """Weight j part of total cohomology in degree q contributes to Gr_W^j H^{q+j}."""
    cx = total_complex(sp)
    table: dict[tuple[int, int], int] = defaultdict(int)
    for (q, j), dim in sorted(cx.spaces.items()):
        out = cx.differentials.get((q, j))
        inc = cx.differentials.get((q - 1, j))
        h = dim - (rank(out) if out else 0) - (rank(inc) if inc else 0)
        table[(j, q + j)] += h
    return WeightTable(dict(table))


def constant_simplicial(datum: LogPairDatum, length: int = 2) -> SimplicialLogPair:
    """The constant simplicial pair truncated at an even ``length``; all faces are identities."""
    if length < 0 or length % 2:
        raise ValidationError("constant truncation length must be even and >= 0", field="length")
    ident = {}
    for s in datum.strata:
        ident[(s.id, s.id)] = {
            m: [[Fraction(int(a == b)) for b in range(dim)] for a in range(dim)]
            for m, dim in enumerate(s.betti) if dim
        }
    cofaces = tuple(tuple(ident for _ in range(p + 2)) for p in range(length))
    return SimplicialLogPair(tuple(datum for _ in range(length + 1)), cofaces)
