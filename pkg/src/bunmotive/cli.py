"""Command-line front end.

    bunmotive roots B3
    bunmotive dmin A4 --genus 3
    bunmotive poincare A1 --genus 2 --trunc 6 --format text
    bunmotive weightcx --input gm.json
    bunmotive audit --families ABCD --ranks 1-8 --genera 2-6 --format latex

The output format defaults to ``$BUNMOTIVE_FORMAT`` or ``json``. Exit status
is 0 on success and 2 on any validation error (one diagnostic line on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import motive as mot
from . import parabolic as par
from . import render
from . import rootsys as rsys
from . import series as ser
from . import weightcx as wcx
from .errors import ValidationError
from .linalg import fraction_str

FORMATS = ("json", "text", "latex")
ENV_FORMAT = "BUNMOTIVE_FORMAT"

_GROUP_RE = re.compile(r"([A-Za-z])([0-9]+)")


def parse_group_spec(text: str) -> tuple[str, int]:
    """``"A4"`` -> ``("A", 4)``; case-insensitive, no whitespace allowed."""
    m = _GROUP_RE.fullmatch(text or "")
    if not m:
        raise ValidationError(f"malformed group spec {text!r}; expected e.g. A4 or d3", field="group")
    family, rank = m.group(1).upper(), int(m.group(2))
    return rsys.check_family_rank(family, rank)


def parse_int_range(text: str, name: str) -> list[int]:
    """``"2-8"``, ``"2..8"``, ``"3"`` or ``"2,4,6"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            m = re.fullmatch(r"(\d+)\s*(?:-|\.\.)\s*(\d+)", part)
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if lo > hi:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ValidationError(f"bad {name} range {text!r}", field=name) from None
    return sorted(set(out))


def parse_isogeny(rs: rsys.RootSystem, text: str) -> rsys.IsogenyDatum:
    key = text.lower()
    if key in ("sc", "simply_connected"):
        return rsys.fundamental_group_order(rs, "simply_connected")
    if key in ("ad", "adjoint"):
        return rsys.fundamental_group_order(rs, "adjoint")
    if key.isdigit():
        return rsys.fundamental_group_order(rs, "custom", int(key))
    raise ValidationError(f"isogeny must be sc, adjoint or a divisor of det(Cartan), got {text!r}",
                          field="isogeny")


def _check_genus(g: int) -> int:
    if g < 2:
        raise ValidationError(f"genus must be >= 2, got {g}", field="genus")
    return g


def _check_nonneg(value: int, name: str) -> int:
    if value < 0:
        raise ValidationError(f"{name} must be >= 0, got {value}", field=name)
    return value


def _vec(v) -> list[str]:
    return [fraction_str(x) for x in v]


# subcommands: each returns (payload, text, latex)


def cmd_roots(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    cartan = rsys.cartan_matrix(rs)
    payload = {
        "schema": "roots/v1",
        "group": rs.name,
        "family": rs.family,
        "rank": rs.rank,
        "ambient_dim": rs.ambient_dim,
        "simple_roots": [_vec(a) for a in rs.simple_roots],
        "positive_roots": [_vec(a) for a in rs.positive_roots],
        "num_positive": len(rs.positive_roots),
        "num_roots": len(rs.all_roots),
        "cartan_matrix": cartan,
        "cartan_determinant": rsys.cartan_determinant(rs),
        "weyl_group_order": rsys.weyl_group_order(rs),
        "dim_group": rsys.dim_group(rs),
    }
    lines = [f"{rs.name}: rank {rs.rank}, ambient dimension {rs.ambient_dim}"]
    lines += [f"  a{i} = ({', '.join(_vec(a))})" for i, a in enumerate(rs.simple_roots, 1)]
    lines.append(f"  |R+| = {payload['num_positive']}, |R| = {payload['num_roots']}, |W| = {payload['weyl_group_order']}")
    lines.append(f"  dim G = {payload['dim_group']}, det(Cartan) = {payload['cartan_determinant']}")
    lines += ["  Cartan: " + " ".join(f"{x:>2}" for x in row) for row in cartan]
    kv = [(k, payload[k]) for k in ("group", "num_positive", "num_roots", "weyl_group_order", "dim_group",
                                     "cartan_determinant")]
    return payload, "\n".join(lines), render.key_value_latex(kv)


def cmd_degrees(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    deg = rsys.fundamental_degrees(rs)
    payload = {
        "schema": "degrees/v1",
        "group": rs.name,
        "degrees": list(deg.degrees),
        "exponents": list(deg.exponents),
        "graded_span_dims": [{"degree": d, "mult": m} for d, m in sorted(deg.graded_span_dims.items())],
        "weyl_group_order": rsys.weyl_group_order(rs),
        "dim_group": rsys.dim_group(rs),
    }
    text = f"{rs.name}: degrees {list(deg.degrees)}, |W| = {payload['weyl_group_order']}, dim G = {payload['dim_group']}"
    kv = [("group", rs.name), ("degrees", deg.degrees), ("weyl_group_order", payload["weyl_group_order"]),
          ("dim_group", payload["dim_group"])]
    return payload, text, render.key_value_latex(kv)


def cmd_parabolics(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    rows = []
    for m in range(1, rs.rank + 1):
        ps = par.parabolic_subset(rs, set(range(1, rs.rank + 1)) - {m})
        printed = par.paper_radical_polynomial(family, rank, m) if family in rsys.CLASSICAL else None
        rows.append({
            "removed": m,
            "levi_positive": ps.levi_positive_count,
            "unipotent_dim": ps.unipotent_dim,
            "printed": printed if printed is None or isinstance(printed, int) else fraction_str(printed),
            "agree": None if printed is None else printed == ps.unipotent_dim,
        })
    payload = {
        "schema": "parabolics/v1",
        "group": rs.name,
        "maximal": rows,
        "disagreements": sum(1 for r in rows if r["agree"] is False),
    }
    text = "\n".join(
        f"{rs.name} minus a{r['removed']}: |Lambda| = {r['unipotent_dim']}, printed = {r['printed']}, "
        f"agree = {r['agree']}" for r in rows
    )
    latex = ["\\begin{tabular}{|c|c|c|c|} \\hline", "$m$ & $|R_{I,+}|$ & $|\\Lambda_I|$ & printed \\\\ \\hline"]
    latex += [f"{r['removed']} & {r['levi_positive']} & {r['unipotent_dim']} & {r['printed']} \\\\ \\hline" for r in rows]
    latex.append("\\end{tabular}")
    return payload, text, "\n".join(latex)


def cmd_dmin(args):
    family, rank = parse_group_spec(args.group)
    g = _check_genus(args.genus)
    rs = rsys.build_root_system(family, rank)
    brute = par.instability_codim_bruteforce(rs, g)
    closed = par.closed_form_d(family, rank, g).d if family in rsys.CLASSICAL else None
    payload = {
        "schema": "dmin/v1",
        "group": rs.name,
        "genus": g,
        "closed_form": closed,
        "brute_force": brute.d,
        "agree": None if closed is None else closed == brute.d,
        "witness": brute.witness,
        "witnesses": list(brute.witnesses),
    }
    text = (f"{rs.name}, g={g}: brute force d = {brute.d} (witnesses {list(brute.witnesses)}), "
            f"closed form {closed}, agree = {payload['agree']}")
    kv = [(k, payload[k]) for k in ("group", "genus", "closed_form", "brute_force", "agree", "witnesses")]
    return payload, text, render.key_value_latex(kv)


def cmd_range(args):
    family, rank = parse_group_spec(args.group)
    g = _check_genus(args.genus)
    rs = rsys.build_root_system(family, rank)
    brute = par.instability_codim_bruteforce(rs, g)
    payload = {
        "schema": "range/v1",
        "group": rs.name,
        "genus": g,
        "d": brute.d,
        "stable_range": brute.stable_range,
        "witness": brute.witness,
        "dim_group": rsys.dim_group(rs),
        "dim_bun": par.dim_bun(rs, g),
    }
    text = f"{rs.name}, g={g}: comparison holds for degrees i < {brute.stable_range} (d = {brute.d})"
    kv = [(k, payload[k]) for k in ("group", "genus", "d", "stable_range", "dim_bun")]
    return payload, text, render.key_value_latex(kv)


def _series_setup(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    g = _check_nonneg(args.genus, "genus")
    if args.trunc is not None:
        trunc = _check_nonneg(args.trunc, "trunc")
    elif args.max_degree is not None:
        trunc = ser.default_trunc(_check_nonneg(args.max_degree, "max_degree"))
    else:
        trunc = 10
    return rs, rsys.fundamental_degrees(rs), parse_isogeny(rs, args.isogeny), g, trunc


def _series_payload(kind, rs, iso, g, s):
    return {
        "schema": "series/v1",
        "kind": kind,
        "group": rs.name,
        "genus": g,
        "pi1_order": iso.pi1_order,
        "trunc": s.trunc,
        "text": s.to_text(),
        "terms": s.to_records(),
    }


def cmd_poincare(args):
    rs, deg, iso, g, trunc = _series_setup(args)
    s = ser.poincare_bun(deg, iso, g, trunc)
    payload = _series_payload("poincare", rs, iso, g, s)
    payload["coefficients"] = s.coefficients()
    return payload, s.to_text(), render.series_latex(s.to_text())


def cmd_epoly(args):
    rs, deg, iso, g, trunc = _series_setup(args)
    s = ser.e_polynomial_bun(deg, iso, g, trunc)
    payload = _series_payload("epoly", rs, iso, g, s)
    purity = ser.purity_check(s)
    payload["pure"] = purity.pure
    return payload, s.to_text(), render.series_latex(s.to_text())


def cmd_motive(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    g = _check_genus(args.genus)
    max_degree = _check_nonneg(args.max_degree, "max_degree")
    mc = mot.bun_motive(rsys.fundamental_degrees(rs), parse_isogeny(rs, args.isogeny), g, max_degree)
    payload = {"group": rs.name, **mc.to_dict()}
    payload = {"schema": payload.pop("schema"), **payload}
    return payload, mot.motive_text(mc), mot.motive_latex(mc)


def cmd_coarse(args):
    family, rank = parse_group_spec(args.group)
    rs = rsys.build_root_system(family, rank)
    g = _check_genus(args.genus)
    cm = mot.coarse_motive(None, parse_isogeny(rs, args.isogeny), g, rs)
    body = cm.to_dict()
    payload = {"schema": body.pop("schema"), "group": rs.name, **body}
    text = mot.motive_text(cm.motive) + f"\nh^i for i >= {cm.stable_range}: {mot.NO_CLAIM}"
    latex = mot.motive_latex(cm.motive)
    return payload, text, latex


def cmd_weightcx(args):
    path = Path(args.input)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", field="input") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON (line {exc.lineno})", field="input") from None
    datum = wcx.LogPairDatum.from_dict(raw)
    table = wcx.gr_w_cohomology(datum)
    payload = table.to_dict()
    payload["euler_characteristic"] = table.euler_characteristic()
    latex = ["\\begin{tabular}{|c|c|c|} \\hline", "$j$ & $k$ & $\\dim Gr_W^j H^k$ \\\\ \\hline"]
    latex += [f"{e['weight']} & {e['degree']} & {e['dim']} \\\\ \\hline" for e in payload["entries"]]
    latex.append("\\end{tabular}")
    return payload, table.to_text(), "\n".join(latex)


def cmd_audit(args):
    families = [f for f in args.families.upper() if not f.isspace()]
    ranks = parse_int_range(args.ranks, "ranks")
    genera = parse_int_range(args.genera, "genera")
    for g in genera:
        _check_genus(g)
    report = par.audit_table(families, ranks, genera)
    payload = report.to_dict()
    checks = []
    for f in report.families():
        fam_ranks = sorted({r.n for r in report.records if r.family == f})
        checks += par.audit_radical_polynomials(f, fam_ranks)
    payload["radical_checks"] = [c.to_dict() for c in checks]
    payload["radical_disagreements"] = sum(1 for c in checks if not c.agree)
    if not report.records:
        raise ValidationError("audit sweep is empty", field="ranks")
    return payload, render.audit_text(report), render.render_latex_table(report)


COMMANDS = {
    "roots": cmd_roots,
    "degrees": cmd_degrees,
    "parabolics": cmd_parabolics,
    "dmin": cmd_dmin,
    "range": cmd_range,
    "poincare": cmd_poincare,
    "epoly": cmd_epoly,
    "motive": cmd_motive,
    "coarse": cmd_coarse,
    "weightcx": cmd_weightcx,
    "audit": cmd_audit,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message.replace("\n", " "), field="arguments")


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(ENV_FORMAT, "json")
    p = _Parser(prog="bunmotive", description="Root-system, series and motive computations for Bun_G.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, group=True, genus=None):
        sp = sub.add_parser(name, help=help)
        if group:
            sp.add_argument("group", help='group spec such as "B3"')
        if genus is not None:
            sp.add_argument("--genus", "-g", type=int, default=genus)
        sp.add_argument("--format", "-f", choices=FORMATS, default=default_format)
        return sp

    add("roots", "positive roots, Cartan matrix, |W|")
    add("degrees", "fundamental degrees")
    add("parabolics", "unipotent radical dimensions of maximal parabolics")
    add("dmin", "instability codimension bound d_G", genus=2)
    add("range", "comparison range i < 2d", genus=2)
    for name, help in (("poincare", "Poincare series of Bun_G"), ("epoly", "E-polynomial of Bun_G")):
        sp = add(name, help, genus=2)
        sp.add_argument("--trunc", "-t", type=int)
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--isogeny", default="sc")
    sp = add("motive", "term-by-term motive of Bun_G", genus=2)
    sp.add_argument("--max-degree", "-m", type=int, default=6)
    sp.add_argument("--isogeny", default="sc")
    sp = add("coarse", "motive in the range where stack and coarse space agree", genus=2)
    sp.add_argument("--isogeny", default="sc")
    sp = add("weightcx", "Gr_W cohomology of X - D from a JSON datum", group=False)
    sp.add_argument("--input", "-i", required=True)
    sp = add("audit", "sweep the closed-form d_G table against enumeration", group=False)
    sp.add_argument("--families", default="ABCD")
    sp.add_argument("--ranks", default="1-8")
    sp.add_argument("--genera", default="2-6")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if os.environ.get(ENV_FORMAT, "json") not in FORMATS:
            raise ValidationError(f"${ENV_FORMAT} must be one of {', '.join(FORMATS)}", field=ENV_FORMAT)
        args = build_parser().parse_args(argv)
        payload, text, latex = COMMANDS[args.command](args)
    except ValidationError as exc:
        field = f" [{exc.field}]" if exc.field else ""
        print(f"error{field}: {str(exc).splitlines()[0]}", file=stderr)
        return 2
    if args.format == "json":
        stdout.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "text":
        stdout.write(text + "\n")
    else:
        stdout.write(latex + "\n")
    return 0


def main():
    sys.exit(run())
