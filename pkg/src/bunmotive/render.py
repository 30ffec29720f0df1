"""Text and LaTeX renderings of audit reports and series.

LaTeX output uses only printable ASCII from the set accepted by
``LATEX_ALPHABET`` (letters, digits, space, newline and ``\\ { } $ ( ) - + =
& | , : ^ _ ;``).
"""

from __future__ import annotations

import re
from math import gcd

from .parabolic import AuditReport

LATEX_ALPHABET = re.compile(r"^[A-Za-z0-9 \n\\{}$()\-+=&|,:^_;]*$")

_TABLE_FORMULA = {"A": (1, 0), "B": (2, -2), "C": (2, -2), "D": (2, -2)}


def linear_in_n(a: int, b: int) -> str:
    """Format a n + b the way the table prints it: ``n``, ``2(n-1)``, ``(2n-1)``."""
    if a == 0:
        return str(b)
    c = gcd(a, b) if b else abs(a)
    if a < 0:
        c = -c
    a1, b1 = a // c, b // c
    inner = ("" if a1 == 1 else str(a1)) + "n"
    if b1:
        inner = f"({inner}{'+' if b1 > 0 else '-'}{abs(b1)})"
    if c == 1:
        return inner
    return f"{c}{inner}"


def times_genus(expr: str) -> str:
    if expr == "0":
        return "0"
    return "(g-1)" if expr == "1" else f"{expr}(g-1)"


def _per_rank_slopes(report: AuditReport, family: str) -> dict[int, int]:
    """d / (g - 1) per rank; the brute-force bound is linear in g - 1."""
    out: dict[int, int] = {}
    for r in report.records:
        if r.family != family:
            continue
        q, rem = divmod(r.brute_force, r.genus - 1)
        if rem or out.get(r.n, q) != q:
            raise ValueError(f"{family}{r.n}: brute-force bound is not linear in g - 1")
        out[r.n] = q
    return out


def fit_family(slopes: dict[int, int]) -> tuple[tuple[int, int] | None, dict[int, int]]:
    """Line a n + b through the two largest ranks, plus the ranks off that line.

    Returns ``(None, slopes)`` when no integer line fits.
    """
    ranks = sorted(slopes)
    if len(ranks) == 1:
        return (0, slopes[ranks[0]]), {}
    n1, n2 = ranks[-2], ranks[-1]
    a, rem = divmod(slopes[n2] - slopes[n1], n2 - n1)
    if rem:
        return None, dict(slopes)
    b = slopes[n2] - a * n2
    return (a, b), {n: v for n, v in slopes.items() if v != a * n + b}


def brute_force_formula(report: AuditReport, family: str) -> str:
    line, exceptions = fit_family(_per_rank_slopes(report, family))
    listed = ", ".join(f"$n={n}$: ${times_genus(str(v))}$" for n, v in sorted(exceptions.items()))
    if line is None:
        return listed
    text = f"${times_genus(linear_in_n(*line))}$"
    return f"{text}; {listed}" if exceptions else text


def render_latex_table(report: AuditReport) -> str:
    """The closed-form table with an extra row of enumerated values, columns A, B, C, D."""
    families = report.families()
    if not families:
        raise ValueError("empty audit report")
    cols = "|c||" + "c|" * len(families)
    header = ["$G$"]
    tabulated = ["$d_G$ (table)"]
    brute = ["$d_G$ (enumerated)"]
    for f in families:
        ranks = sorted({r.n for r in report.records if r.family == f})
        header.append(f"${f}_n$ (${ranks[0]} \\le n \\le {ranks[-1]}$)")
        tabulated.append(f"${times_genus(linear_in_n(*_TABLE_FORMULA[f]))}$")
        brute.append(brute_force_formula(report, f))
    lines = [
        f"\\begin{{tabular}}{{{cols}}} \\hline",
        " & ".join(header) + " \\\\ \\hline",
        " & ".join(tabulated) + " \\\\ \\hline",
        " & ".join(brute) + " \\\\ \\hline",
        "\\end{tabular}",
    ]
    out = "\n".join(lines)
    if not LATEX_ALPHABET.match(out):
        raise RuntimeError("rendered table left the LaTeX alphabet")
    return out


def audit_text(report: AuditReport) -> str:
    rows = [f"{'G':<5} {'g':>3} {'table':>7} {'enum':>7}  agree  witnesses"]
    for r in report.records:
        rows.append(
            f"{r.family + str(r.n):<5} {r.genus:>3} {r.closed_form:>7} {r.brute_force:>7}  "
            f"{'yes' if r.agree else 'NO':<5}  {','.join(map(str, r.witnesses))}"
        )
    rows.append(f"disagreements: {len(report.disagreements)} of {len(report.records)}")
    return "\n".join(rows)


def series_latex(text: str) -> str:
    """``1 + 4t^3 + (2x^2 y)t^5`` -> LaTeX with braced exponents."""
    body = re.sub(r"\^(\d+)", r"^{\1}", text)
    return f"${body}$"


def key_value_latex(pairs: list[tuple[str, object]]) -> str:
    lines = ["\\begin{tabular}{|l|l|} \\hline"]
    for k, v in pairs:
        k = k.replace("_", "\\_")
        if isinstance(v, (list, tuple)):
            v = ", ".join(map(str, v))
        v = str(v).replace("_", "\\_")
        lines.append(f"{k} & {v} \\\\ \\hline")
    lines.append("\\end{tabular}")
    return "\n".join(lines)
