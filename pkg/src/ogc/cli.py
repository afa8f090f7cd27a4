"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 cap too low or another diagnostic abort.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from .module_pres import CapTooLow

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DIAG = 0, 1, 2, 3


def parse_range(text: str) -> list[int]:
    """``"12"``, ``"10..32"`` or ``"10,12,14"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise click.BadParameter(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise click.BadParameter("empty range")
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit(ctx: click.Context, obj, text: str, ok: bool = True) -> None:
    fmt = ctx.obj["format"]
    body = dumps(obj) if fmt == "json" else text.rstrip("\n") + "\n"
    out: Optional[Path] = ctx.obj["out"]
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(body)
    else:
        click.echo(body, nl=False)
    ctx.exit(EXIT_OK if ok else EXIT_FAIL)


def _check_kn(k: int, n: int) -> None:
    if k < 2 or n <= k:
        raise click.UsageError(f"need 2 <= k < n, got k={k}, n={n}")


def _set_obj(ctx: click.Context, param: click.Parameter, value):
    if value is not None:
        ctx.ensure_object(dict)[param.name] = value
    return value


def output_options(f):
    """--format/--out/--jobs, accepted both before and after the subcommand."""
    f = click.option("--jobs", type=click.IntRange(min=1), default=None, expose_value=False,
                     callback=_set_obj, help="Worker processes (default 1).")(f)
    f = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     expose_value=False, callback=_set_obj, help="Write to a file.")(f)
    f = click.option("--format", "format", type=click.Choice(["text", "json"]), default=None,
                     expose_value=False, callback=_set_obj, help="Output format (default text).")(f)
    return f


@click.group()
@output_options
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Mod-2 cohomology of oriented Grassmannians: C, K, Ext and tables."""
    obj = ctx.ensure_object(dict)
    obj.setdefault("format", "text")
    obj.setdefault("out", None)
    obj.setdefault("jobs", 1)


# --------------------------------------------------------------------------


@cli.command()
@output_options
@click.option("--k", type=int, required=True)
@click.option("--j", "jrange", default="0..10", show_default=True, help="Index range, e.g. 0..10.")
@click.option("--family", type=click.Choice(["q", "Q", "p", "P", "r"]), default="q", show_default=True)
@click.pass_context
def classes(ctx, k, jrange, family):
    """Characteristic-class polynomials q_j, Q_j, p_j, P_j or r_j."""
    from .char_classes import context

    if k < 2:
        raise click.UsageError("k must be at least 2")
    if family == "r" and k != 3:
        raise click.UsageError("r_j is defined for k = 3 only")
    c = context(k)
    fn = {"q": c.q, "Q": c.Q, "p": c.p, "P": c.P, "r": c.r}[family]
    rows = [{"j": j, "poly": str(fn(j))} for j in parse_range(jrange)]
    text = "\n".join(f"{family}_{r['j']} = {r['poly']}" for r in rows)
    emit(ctx, {"k": k, "family": family, "rows": rows}, text)


@cli.command()
@output_options
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.pass_context
def koszul(ctx, k, n):
    """Koszul homology dimensions of the q-sequence, by internal degree."""
    from .koszul import build

    _check_kn(k, n)
    K = build(k, n)
    top = sum(K.q_degrees)
    rows = []
    for D in range(0, top + 1):
        h = [K.homology_dim(i, D) for i in range(0, k + 1)]
        if any(h):
            rows.append({"degree": D, "homology": h})
    text = "\n".join(f"D={r['degree']:>3}  H = {r['homology']}" for r in rows)
    emit(ctx, {"k": k, "n": n, "q_degrees": K.q_degrees, "rows": rows}, text)


@cli.command()
@output_options
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--module", "module", type=click.Choice(["C", "K", "ker_d1"]), default="K", show_default=True)
@click.option("--grading", type=click.Choice(["cohomological", "koszul"]), default="cohomological", show_default=True)
@click.option("--route", type=click.Choice(["dual", "koszul"]), default="dual", show_default=True)
@click.option("--cap", type=int, default=None, help="Degree cap for ker(d_1) (default N + k + 1).")
@click.pass_context
def present(ctx, k, n, module, grading, route, cap):
    """Minimal presentation of C, K or ker(d_1)."""
    from .koszul import build
    from .module_pres import min_gens_ker_d1, present_C, present_K

    _check_kn(k, n)
    if module == "C":
        data = present_C(k, n).to_json()
    elif module == "K":
        data = present_K(k, n, route=route).to_json(grading)
    else:
        gens = min_gens_ker_d1(build(k, n), cap)
        data = {"k": k, "n": n, "module": "ker_d1", "grading": "koszul",
                "generators": [{"degree": D} for D, _ in gens]}
    lines = [f"{data['module']} for (k, n) = ({k}, {n})"]
    if "grading" in data:
        lines[0] += f", {data['grading']} degrees"
    lines.append("generators: " + ", ".join(str(g["degree"]) for g in data["generators"]))
    for r in data.get("relations", []):
        lines.append(f"  relation in degree {r['degree']}: [" + ", ".join(r["coeffs"]) + "]")
    emit(ctx, data, "\n".join(lines))


@cli.command()
@output_options
@click.option("--k", type=int, required=True)
@click.option("--n", "nrange", required=True, help="n or a range such as 10..32.")
@click.pass_context
def charrank(ctx, k, nrange):
    """Characteristic rank (least K-generator degree minus one)."""
    from .reports import charrank_cached

    rows = []
    for n in parse_range(nrange):
        _check_kn(k, n)
        rows.append({"k": k, "n": n, "charrank": charrank_cached(k, n)})
    obj = rows[0] if len(rows) == 1 else {"rows": rows}
    text = "\n".join(str(r["charrank"]) if len(rows) == 1 else f"n={r['n']}: {r['charrank']}" for r in rows)
    emit(ctx, obj, text)


@cli.command()
@output_options
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--route", type=click.Choice(["dual", "koszul"]), default="dual", show_default=True)
@click.pass_context
def ext(ctx, k, n, route):
    """Rank of Ext^1_C(K, C) in degree 0 with normal-form cocycles."""
    from .ext_c import ext1_rank

    _check_kn(k, n)
    rep = ext1_rank(k, n, route=route)
    lines = [
        f"Ext^1 rank {rep.rank}",
        f"  K generators {rep.generator_degrees}, relations {rep.relation_degrees}, syzygies {rep.syzygy_degrees}",
        f"  d0: rank {rep.d0_rank} into dimension {rep.d0_target_dim}; d1 rank {rep.d1_rank}; cocycles {rep.z1_dim}",
    ]
    for idx, cyc in enumerate(rep.cocycles):
        body = ", ".join(f"R{e['relation']}(deg {e['degree']}) -> {e['value']}" for e in cyc)
        lines.append(f"  class {idx}: {body}")
    emit(ctx, rep.to_json(), "\n".join(lines))


def _suite_text(rep: dict) -> str:
    return "\n".join(f"{'PASS' if c['pass'] else 'FAIL'}  {c['check']}" + (f"  ({c['detail']})" if c["detail"] else "")
                     for c in rep["checks"])


def _tables_text(rep: dict) -> str:
    lines = []
    for t in rep["tables"]:
        nbad = sum(not r["match"] for r in t["rows"])
        lines.append(f"{'PASS' if t['pass'] else 'FAIL'}  {t['table_id']} ({len(t['rows'])} rows, {nbad} mismatched)")
        for r in t["rows"]:
            if not r["match"]:
                lines.append(f"      k={t['k']} n={r['n']}: expected {r['expected']}, got {r['got']}")
    return "\n".join(lines)


def _scan_text(rep: dict) -> str:
    lines = []
    for r in rep["rows"]:
        flag = "ok" if r["match"] else ("--" if r["match"] is None else "DIFF")
        conj = "-" if r["conjecture"] is None else r["conjecture"]
        lines.append(f"k={r['k']} n={r['n']:>2}  crk={r['charrank']:>3}  formula={conj!s:>3}  {flag} {r['note']}".rstrip())
    lines.append("PASS" if rep["pass"] else f"FAIL unexpected: {rep['unexpected']}")
    return "\n".join(lines)


@cli.command()
@output_options
@click.option("--table", "table", default="all", show_default=True, help="Table id or 'all'.")
@click.pass_context
def tables(ctx, table):
    """Reproduce the reference tables and diff them row by row."""
    from .reports import TABLE_IDS, reproduce_tables

    if table != "all" and table not in TABLE_IDS:
        raise click.UsageError(f"unknown table {table!r}; choose from all, {', '.join(TABLE_IDS)}")
    rep = reproduce_tables(table, ctx.obj["jobs"])
    emit(ctx, rep, _tables_text(rep), rep["pass"])


@cli.command()
@output_options
@click.option("--k", "krange", default=None, help="k values, e.g. 5..6 (default: 5 and 6 over their verified ranges).")
@click.option("--n", "nrange", default=None, help="n values, e.g. 9..32.")
@click.pass_context
def scan(ctx, krange, nrange):
    """Compare the characteristic rank with the closed formula."""
    from .reports import scan_conjecture

    pairs = None
    if krange or nrange:
        if not (krange and nrange):
            raise click.UsageError("give both --k and --n, or neither")
        pairs = [(k, n) for k in parse_range(krange) for n in parse_range(nrange) if n > k]
        if any(k < 5 for k, _ in pairs):
            raise click.UsageError("the formula concerns k >= 5")
        if not pairs:
            raise click.UsageError("no (k, n) with n > k in the given ranges")
    rep = scan_conjecture(pairs, ctx.obj["jobs"])
    emit(ctx, rep, _scan_text(rep), rep["pass"])


@cli.command()
@output_options
@click.option("--suite", type=click.Choice(["k3", "tables", "scan", "structure"]), required=True)
@click.pass_context
def verify(ctx, suite):
    """Run a verification battery and print a pass/fail table."""
    from . import reports

    if suite == "k3":
        rep = reports.k3_suite()
        text = _suite_text(rep)
    elif suite == "structure":
        rep = reports.structure_suite()
        text = _suite_text(rep)
    elif suite == "tables":
        rep = reports.reproduce_tables("all", ctx.obj["jobs"])
        text = _tables_text(rep)
    else:
        rep = reports.scan_conjecture(None, ctx.obj["jobs"])
        text = _scan_text(rep)
    emit(ctx, rep, text, rep["pass"])


def main(argv=None) -> None:
    try:
        rc = cli.main(args=argv, prog_name="ogc", standalone_mode=False)
    except click.exceptions.Exit as e:
        rc = e.exit_code
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.Abort:
        click.echo("aborted", err=True)
        sys.exit(EXIT_DIAG)
    except CapTooLow as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_DIAG)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(rc if isinstance(rc, int) else EXIT_OK)


if __name__ == "__main__":
    main()
