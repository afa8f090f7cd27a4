"""Reference-table reproduction, the characteristic-rank scan and check suites.

Every report is a plain dict that serializes deterministically; run
metadata (timings, host) is never put inside a report body.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from typing import Callable, Iterable, Optional

from .cache import cached
from .ext_c import ext1_rank
from .module_pres import (
    charrank,
    check_free_cyclic,
    check_poincare,
    conjecture_t,
    conjecture_value,
    ker_d1_degrees,
    present_K,
)

TABLE_IDS = ("k5_K_gens", "k6_K_gens", "k4_K_gens", "k4_kerd1", "k4_K_rels", "ext_k4", "ext_k5", "ext_k6")

# exceptions to the characteristic-rank formula among n >= 2k
LISTED_EXCEPTIONS = {(5, 10): 10, (5, 11): 13, (6, 12): 13}


def load_golden(table_id: str) -> dict:
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    text = resources.files("ogc").joinpath("golden", f"{table_id}.json").read_text()
    return json.loads(text)


# --------------------------------------------------------------------------
# row producers (module level so they pickle for --jobs)


def k_generators(k: int, n: int) -> list[int]:
    return cached("kgens", k, n, lambda: present_K(k, n, with_relations=False).generator_degrees)


def k_relations(k: int, n: int) -> list[int]:
    return cached("krels", k, n, lambda: sorted(present_K(k, n).relation_degrees))


def kerd1(k: int, n: int) -> list[int]:
    return cached("kerd1", k, n, lambda: ker_d1_degrees(k, n))


def ext_rank(k: int, n: int) -> int:
    return cached("ext1", k, n, lambda: ext1_rank(k, n, normal_form=False).rank)


def charrank_cached(k: int, n: int) -> int:
    return cached("charrank", k, n, lambda: charrank(k, n))


def _row_value(kind: str, grading: str, k: int, n: int):
    shift = 1 if grading == "koszul" else 0
    if kind == "K_generators":
        return sorted(a + shift for a in k_generators(k, n))
    if kind == "K_relations":
        return sorted(b + shift for b in k_relations(k, n))
    if kind == "kerd1_generators":
        # ker(d_1) lives in the Koszul complex; its degrees are Koszul degrees already
        return sorted(kerd1(k, n))
    if kind == "ext1_rank":
        return ext_rank(k, n)
    raise ValueError(f"unknown table kind {kind!r}")


def _row_job(args):
    kind, grading, k, n = args
    return _row_value(kind, grading, k, n)


def pmap(fn: Callable, items: list, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def reproduce_table(table_id: str, jobs: int = 1, ns: Optional[Iterable[int]] = None) -> dict:
    gold = load_golden(table_id)
    k, kind, grading = gold["k"], gold["kind"], gold["grading"]
    wanted = [int(n) for n in gold["rows"]]
    if ns is not None:
        keep = set(ns)
        wanted = [n for n in wanted if n in keep]
    got = pmap(_row_job, [(kind, grading, k, n) for n in wanted], jobs)
    rows = []
    for n, g in zip(wanted, got):
        exp = gold["rows"][str(n)]
        rows.append({"n": n, "expected": exp, "got": g, "match": exp == g})
    return {
        "table_id": table_id,
        "k": k,
        "grading": grading,
        "kind": kind,
        "rows": rows,
        "pass": all(r["match"] for r in rows),
    }


def reproduce_tables(which: str = "all", jobs: int = 1) -> dict:
    ids = TABLE_IDS if which == "all" else (which,)
    tables = [reproduce_table(t, jobs) for t in ids]
    return {"tables": tables, "pass": all(t["pass"] for t in tables)}


# --------------------------------------------------------------------------
# characteristic-rank scan


def scan_row(k: int, n: int) -> dict:
    crk = charrank_cached(k, n)
    row = {"k": k, "n": n, "charrank": crk, "conjecture": None, "match": None, "note": ""}
    try:
        row["conjecture"] = conjecture_value(k, n)
    except ValueError:
        row["note"] = "outside formula range"
        return row
    row["match"] = crk == row["conjecture"]
    if (k, n) in LISTED_EXCEPTIONS:
        row["note"] = "listed exception"
    elif n < 2 * k:
        row["note"] = f"dual to k={n - k}"
    elif conjecture_t(n) < 5:
        row["note"] = "t = 4"
    return row


def _scan_job(args):
    return scan_row(*args)


def default_scan_ranges() -> list[tuple[int, int]]:
    pairs = [(5, n) for n in range(9, 33)] + [(6, n) for n in range(9, 24)]
    return pairs


def scan_conjecture(pairs: Optional[list[tuple[int, int]]] = None, jobs: int = 1) -> dict:
    """Compare charrank with the closed formula and classify disagreements.

    The report passes when every disagreement with ``n >= 2k`` is one of the
    three listed exceptions with its listed value, every listed exception is
    hit, and every row with ``t >= 5`` agrees.  Rows with ``n < 2k`` are
    reduced by duality to rank ``n - k <= 4`` and are reported, not judged.
    """
    if pairs is None:
        pairs = default_scan_ranges()
    rows = pmap(_scan_job, list(pairs), jobs)
    bad = []
    seen = set()
    for r in rows:
        key = (r["k"], r["n"])
        if r["match"] is None:
            continue
        if key in LISTED_EXCEPTIONS:
            seen.add(key)
            if r["charrank"] != LISTED_EXCEPTIONS[key] or r["match"]:
                bad.append(key)
        elif r["n"] >= 2 * r["k"] and not r["match"]:
            bad.append(key)
    covered = {p for p in LISTED_EXCEPTIONS if p in {(r["k"], r["n"]) for r in rows}}
    ok = not bad and seen == covered
    return {"rows": rows, "unexpected": [list(b) for b in bad], "pass": ok}


def two_power_bound(pairs: Iterable[tuple[int, int]]) -> dict:
    """charrank(k, 2^t) <= 2^t - 2 whenever 5 <= k <= 2^t - 5."""
    rows = []
    for k, n in pairs:
        if not (5 <= k <= n - 5 and n & (n - 1) == 0):
            raise ValueError(f"bound needs n = 2^t and 5 <= k <= n - 5, got k={k}, n={n}")
        crk = charrank_cached(k, n)
        rows.append({"k": k, "n": n, "charrank": crk, "bound": n - 2, "ok": crk <= n - 2})
    return {"rows": rows, "pass": all(r["ok"] for r in rows)}


# --------------------------------------------------------------------------
# check suites


def _check(name: str, fn: Callable[[], bool]) -> dict:
    try:
        ok = bool(fn())
        return {"check": name, "pass": ok, "detail": ""}
    except Exception as exc:  # a crash is a failed check, reported with its message
        return {"check": name, "pass": False, "detail": f"{type(exc).__name__}: {exc}"}


def k3_suite() -> dict:
    from . import syzygy_family as sf
    from .graded import c_algebra
    from .koszul import build
    from .module_pres import presented_hilbert

    def recursions():
        for t in (4, 5, 6):
            for i in range(0, 2 ** t - 5):
                if sf.descend(3, sf.descend_start(3, t), i) != sf.k3_descended_closed(t, i):
                    return False
            for j in range(0, 41):
                if sf.ascend(3, sf.ascend_start(3, t), j) != sf.k3_ascended_closed(t, j):
                    return False
        return True

    def k3_range(ts=(4, 5)):
        return [n for t in ts for n in range(2 ** (t - 1) + 1, 2 ** t - 3)]

    def equivalence():
        for n in k3_range():
            P = sf.k3_closed_presentation(n)
            K = present_K(3, n)
            h = presented_hilbert(c_algebra(3, n), P.generator_degrees, sf.k3_closed_relation_rows(n))
            if sorted(P.generator_degrees) != sorted(K.generator_degrees):
                return False
            if sorted(P.relation_degrees) != sorted(K.relation_degrees) or h != K.hilbert:
                return False
        return True

    def boundaries():
        for t in (4, 5):
            n = 2 ** (t - 1)
            d = sf.descend(3, sf.descend_start(3, t), 2 ** t - 3 - n)
            if not sf.boundary_membership(build(3, n), d):
                return False
            n = 2 ** t - 3
            a = sf.ascend(3, sf.ascend_start(3, t - 1), n - (2 ** (t - 1) - 1))
            if not sf.boundary_membership(build(3, n), a, drop_vanishing=True):
                return False
        d = sf.descend(3, sf.descend_start(3, 4), 1)
        return not sf.boundary_membership(build(3, 12), d)

    def images():
        return all(
            sf.boundary_membership(build(3, n), r)
            for n in k3_range()
            for r in sf.closed_relation_images(n)
        )

    def squares():
        for t in (4, 5):
            for n in range(2 ** (t - 1) + 1, 2 ** t - 2):
                if not sf.square_in_ideal(n, "D"):
                    return False
            for n in range(2 ** (t - 1), 2 ** t - 3):
                if not sf.square_in_ideal(n, "A"):
                    return False
        return True

    def thresholds():
        for n in k3_range():
            top = c_algebra(3, n).top
            a, d = sf.k3_generator_degrees(n)
            if not (2 * n - 4 > top and 2 * a > top and 2 * d > top):
                return False
        return True

    checks = [
        _check("descend/ascend match the closed forms, t=4..6", recursions),
        _check("three linear equations, t<=6", lambda: all(
            sf.lemma_linear_eqs(n, t) for t in range(3, 7) for n in range(2 ** (t - 1) - 1, 2 ** t - 2))),
        _check("r/q identities, t<=6", lambda: all(sf.rq_lemma(t) for t in range(2, 7))),
        _check("kernel basis and 2x2 minors", lambda: all(sf.determinant_identities(n) for n in k3_range())),
        _check("closed presentation equals the engine's, t=4,5", equivalence),
        _check("boundary membership at the interval ends", boundaries),
        _check("closed relations map into im(d_2)", images),
        _check("A, D are killed by w_1 modulo (Q)", lambda: all(sf.ad_kernel_check(n) for n in k3_range())),
        _check("A^2, D^2 lie in (Q_{n-2}, Q_{n-1}, Q_n), t=4,5", squares),
        _check("relation and square degrees exceed top(C)", thresholds),
        _check("Ext^1 = 0 for k=3, 9<=n<=28", lambda: all(ext_rank(3, n) == 0 for n in range(9, 29))),
    ]
    return {"suite": "k3", "checks": checks, "pass": all(c["pass"] for c in checks)}


def structure_suite(pairs: Optional[list[tuple[int, int]]] = None) -> dict:
    from .koszul import build

    if pairs is None:
        pairs = [(3, n) for n in range(5, 17)] + [(4, n) for n in range(6, 19)] + [(5, 10), (5, 16), (6, 12)]

    def dd_zero(k, n):
        K = build(k, n)
        for D in range(0, K.N + sum(K.q_degrees) + 1, 3):
            for i in range(2, k + 1):
                A, B = K.differential(i, D), K.differential(i - 1, D)
                if A.nrows and B.ncols and not (A @ B).is_zero():
                    return False
        return True

    def higher_vanish(k, n):
        K = build(k, n)
        top = sum(K.q_degrees)
        return all(K.homology_dim(i, D) == 0 for i in range(2, k + 1) for D in range(0, top + 1))

    checks = []
    for k, n in pairs:
        checks.append(_check(f"({k},{n}) d.d = 0", lambda k=k, n=n: dd_zero(k, n)))
        if k <= 4 and n <= 12:
            checks.append(_check(f"({k},{n}) H_i = 0 for i >= 2", lambda k=k, n=n: higher_vanish(k, n)))
        checks.append(_check(f"({k},{n}) Poincare duality", lambda k=k, n=n: check_poincare(k, n, route="koszul")))
        checks.append(_check(f"({k},{n}) one generator => no relations", lambda k=k, n=n: check_free_cyclic(k, n)))
    return {"suite": "structure", "checks": checks, "pass": all(c["pass"] for c in checks)}
