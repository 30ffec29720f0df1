"""Truncated power series in t with polynomial coefficients in x, y.

``t`` tracks cohomological degree and ``(x, y)`` the Hodge bidegree. Terms
are stored as ``{(t_deg, x_deg, y_deg): int}``; anything above
``trunc`` in t is discarded. A series with no x or y is the ordinary
Poincare series.
"""

from __future__ import annotations

from collections import defaultdict
from math import comb
from typing import Iterable, NamedTuple

from .rootsys import SIMPLY_CONNECTED, InvariantDegrees, IsogenyDatum

Key = tuple[int, int, int]


class TruncatedSeries:
    __slots__ = ("trunc", "_terms")

    def __init__(self, terms: dict[Key, int] | None = None, trunc: int = 0):
        if isinstance(trunc, bool) or not isinstance(trunc, int) or trunc < 0:
            raise ValueError(f"truncation order must be a non-negative integer, got {trunc!r}")
        self.trunc = trunc
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(k) for k in key)
            if len(key) != 3 or min(key) < 0:
                raise ValueError(f"bad exponent triple {key}")
            if c and key[0] <= trunc:
                clean[key] = clean.get(key, 0) + int(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def one(cls, trunc: int) -> "TruncatedSeries":
        return cls({(0, 0, 0): 1}, trunc)

    @classmethod
    def monomial(cls, t: int, x: int = 0, y: int = 0, coeff: int = 1, trunc: int = 0) -> "TruncatedSeries":
        return cls({(t, x, y): coeff}, trunc)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int], trunc: int | None = None) -> "TruncatedSeries":
        coeffs = list(coeffs)
        trunc = len(coeffs) - 1 if trunc is None else trunc
        return cls({(i, 0, 0): c for i, c in enumerate(coeffs)}, max(trunc, 0))

    @property
    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __getitem__(self, key: Key) -> int:
        return self._terms.get(tuple(key), 0)

    def coefficient(self, t: int) -> dict[tuple[int, int], int]:
        """The (x, y)-polynomial multiplying t^t, as ``{(x_deg, y_deg): c}``."""
        return {(k[1], k[2]): c for k, c in sorted(self._terms.items()) if k[0] == t}

    def _common(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError("can only combine with another TruncatedSeries")
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries({(0, 0, 0): other}, self.trunc)
        trunc = self._common(other)
        out = defaultdict(int, {k: v for k, v in self._terms.items() if k[0] <= trunc})
        for k, v in other._terms.items():
            if k[0] <= trunc:
                out[k] += v
        return TruncatedSeries(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({k: -v for k, v in self._terms.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries({k: v * other for k, v in self._terms.items()}, self.trunc)
        trunc = self._common(other)
        out: dict[Key, int] = defaultdict(int)
        right = sorted(other._terms.items())
        for (a, b, c), u in self._terms.items():
            if a > trunc:
                continue
            for (d, e, f), v in right:
                if a + d > trunc:
                    break
                out[(a + d, b + e, c + f)] += u * v
        return TruncatedSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        """1/s for s = c0 - u with c0 = +-1 and u of positive t-valuation."""
        c0 = self._terms.get((0, 0, 0), 0)
        rest = {k: v for k, v in self._terms.items() if k != (0, 0, 0)}
        if c0 not in (1, -1) or any(k[0] == 0 for k in rest):
            raise ValueError("only series with unit constant term and positive-valuation rest are invertible")
        # s = c0 (1 - u) with u = -c0 * rest
        u = TruncatedSeries({k: -c0 * v for k, v in rest.items()}, self.trunc)
        return geometric(u) * c0

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.trunc == other.trunc and self._terms == other._terms
        return NotImplemented

    def truncate(self, trunc: int) -> "TruncatedSeries":
        return TruncatedSeries(self._terms, min(trunc, self.trunc))

    def specialize(self) -> "TruncatedSeries":
        """Set x = y = 1."""
        out: dict[Key, int] = defaultdict(int)
        for (a, _, _), v in self._terms.items():
            out[(a, 0, 0)] += v
        return TruncatedSeries(out, self.trunc)

    def coefficients(self) -> list[int]:
        """Univariate coefficient list [c_0, ..., c_trunc] after x = y = 1."""
        out = [0] * (self.trunc + 1)
        for (a, _, _), v in self._terms.items():
            out[a] += v
        return out

    def is_univariate(self) -> bool:
        return all(b == 0 and c == 0 for _, b, c in self._terms)

    def to_records(self) -> list[dict]:
        return [{"t": a, "x": b, "y": c, "coeff": v} for (a, b, c), v in self.items()]

    def to_text(self) -> str:
        return format_series(self)

    def __repr__(self):
        return f"TruncatedSeries({self.to_text()}, trunc={self.trunc})"


def geometric(u: TruncatedSeries) -> TruncatedSeries:
    """1/(1 - u) = 1 + u + u^2 + ... for u with positive t-valuation."""
    if any(k[0] == 0 for k in u.terms):
        raise ValueError("geometric series needs a positive t-valuation")
    result = TruncatedSeries.one(u.trunc)
    power = TruncatedSeries.one(u.trunc)
    for _ in range(u.trunc):
        power = power * u
        if not power.terms:
            break
        result = result + power
    return result


def _xy_monomial(x: int, y: int) -> str:
    parts = []
    for var, e in (("x", x), ("y", y)):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return " ".join(parts)


def _t_power(t: int) -> str:
    return "" if t == 0 else ("t" if t == 1 else f"t^{t}")


def format_series(s: TruncatedSeries) -> str:
    """Human-readable form, e.g. ``1 + t^2 + 4t^3`` or ``(2x^2 y + 2x y^2)t^3``."""
    chunks = []
    for t in sorted({k[0] for k in s.terms}):
        poly = s.coefficient(t)
        tp = _t_power(t)
        if list(poly) == [(0, 0)]:
            c = poly[(0, 0)]
            body = str(abs(c)) if (abs(c) != 1 or not tp) else ""
            chunks.append((c < 0, body + tp))
            continue
        inner = []
        for (x, y), c in sorted(poly.items(), key=lambda kv: (-(kv[0][0]), kv[0][1])):
            mono = _xy_monomial(x, y)
            mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
            inner.append(("- " if c < 0 else "+ ") + mag + mono)
        text = " ".join(inner)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        if len(inner) == 1 and not text.startswith("-"):
            chunks.append((False, text + (" " + tp if tp else "")))
        else:
            chunks.append((False, f"({text})" + tp))
    if not chunks:
        return "0"
    out = ("-" if chunks[0][0] else "") + chunks[0][1]
    for neg, body in chunks[1:]:
        out += (" - " if neg else " + ") + body
    return out


def poincare_BT(rank: int, trunc: int) -> TruncatedSeries:
    """sum_i C(rank + i - 1, i) t^{2i}."""
    return TruncatedSeries({(2 * i, 0, 0): comb(rank + i - 1, i) for i in range(trunc // 2 + 1)}, trunc)


def _t(deg: int, trunc: int, x: int = 0, y: int = 0) -> TruncatedSeries:
    return TruncatedSeries.monomial(deg, x, y, trunc=trunc)


def poincare_BG(degrees: InvariantDegrees, trunc: int) -> TruncatedSeries:
    """prod_i 1/(1 - t^{2 n_i}): a polynomial ring on generators of degree 2 n_i."""
    out = TruncatedSeries.one(trunc)
    for n in degrees:
        out = out * geometric(_t(2 * n, trunc))
    return out


def poincare_G(degrees: InvariantDegrees, trunc: int) -> TruncatedSeries:
    """prod_i (1 + t^{2 n_i - 1}): an exterior algebra on N[1]."""
    out = TruncatedSeries.one(trunc)
    for n in degrees:
        out = out * (TruncatedSeries.one(trunc) + _t(2 * n - 1, trunc))
    return out


def poincare_loopG(degrees: InvariantDegrees, trunc: int) -> TruncatedSeries:
    """prod_i 1/(1 - t^{2 n_i - 2}) for one component of Omega G."""
    out = TruncatedSeries.one(trunc)
    for n in degrees:
        out = out * geometric(_t(2 * n - 2, trunc))
    return out


def poincare_bun(degrees: InvariantDegrees, isogeny: IsogenyDatum = SIMPLY_CONNECTED, g: int = 2,
                 trunc: int = 10) -> TruncatedSeries:
    """|pi_1| prod_i (1 + t^{2n_i-1})^{2g} / ((1 - t^{2n_i})(1 - t^{2n_i-2}))."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    one = TruncatedSeries.one(trunc)
    out = one
    for n in degrees:
        odd = (one + _t(2 * n - 1, trunc)) ** (2 * g)
        out = out * odd / ((one - _t(2 * n, trunc)) * (one - _t(2 * n - 2, trunc)))
    return out * isogeny.pi1_order


def e_polynomial_bun(degrees: InvariantDegrees, isogeny: IsogenyDatum = SIMPLY_CONNECTED, g: int = 2,
                     trunc: int = 10) -> TruncatedSeries:
    """Hodge-Deligne series of Bun_G.

    BG generators carry (xy)^{n_i}, Omega G generators (xy)^{n_i - 1}, and
    each odd generator comes in g copies of type (n_i, n_i - 1) and g of
    type (n_i - 1, n_i), the Hodge types of H^1(C) twisted by n_i - 1.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    one = TruncatedSeries.one(trunc)
    out = one
    for n in degrees:
        holo = (one + _t(2 * n - 1, trunc, n, n - 1)) ** g
        anti = (one + _t(2 * n - 1, trunc, n - 1, n)) ** g
        bg = one - _t(2 * n, trunc, n, n)
        loop = one - _t(2 * n - 2, trunc, n - 1, n - 1)
        out = out * holo * anti / (bg * loop)
    return out * isogeny.pi1_order


class PurityResult(NamedTuple):
    pure: bool
    violation: Key | None

    def __bool__(self):
        return self.pure


def purity_check(s: TruncatedSeries) -> PurityResult:
    """Every nonzero term must have x_deg + y_deg = t_deg."""
    for (a, b, c), _ in s.items():
        if b + c != a:
            return PurityResult(False, (a, b, c))
    return PurityResult(True, None)


def default_trunc(max_degree: int) -> int:
    return 2 * max_degree + 1
