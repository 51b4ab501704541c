"""Bound tables for the De Caen and Sidelnikov families and their reference values."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .bounds import bound_report
from .errors import DomainError
from .families import (
    de_caen_parameters,
    de_caen_spectrum,
    sidelnikov,
    sidelnikov_separation,
    spherical_embedding,
    sum_of_distances,
)

TABLES = ("decaen", "sidelnikov")
COLUMNS = ("ulb", "tau", "uub")
REFERENCE_RANGE = {"decaen": (3, 7), "sidelnikov": (1, 5)}
COMPARE_RTOL = 5e-6


@dataclass(frozen=True)
class TableRow:
    table: str
    r: int
    n: int
    N: int
    s: float
    ulb: float
    tau: float
    uub: float
    in_range: bool
    flags: tuple[str, ...]


@dataclass(frozen=True)
class CellComparison:
    table: str
    r: int
    column: str
    value: float
    reference: float
    rel_err: float
    passed: bool


def table_row(table: str, r: int) -> TableRow:
    if table == "decaen":
        n, N, s = de_caen_parameters(r)
        tau = sum_of_distances(de_caen_spectrum(r))
    elif table == "sidelnikov":
        d = sidelnikov(r)
        n, N, s = d.n, d.N, sidelnikov_separation(r)
        tau = sum_of_distances(spherical_embedding(d))
    else:
        raise DomainError(f"unknown table {table!r}; choose from {TABLES}")
    rep = bound_report(n, N, s)
    return TableRow(table, r, n, N, s, rep.ulb, tau, rep.uub, rep.in_range, rep.flags)


def table_rows(table: str, rmin: int, rmax: int) -> list[TableRow]:
    if rmin > rmax:
        raise DomainError(f"empty range r = {rmin}..{rmax}")
    return [table_row(table, r) for r in range(rmin, rmax + 1)]


def load_reference() -> dict:
    text = resources.files("sumdist").joinpath("data/reference_tables.json").read_text()
    return json.loads(text)


def reference_rows(table: str) -> dict[int, dict]:
    return {row["r"]: row for row in load_reference()["tables"][table]["rows"]}


def compare_rows(rows: list[TableRow], rtol: float = COMPARE_RTOL) -> list[CellComparison]:
    """Per-cell comparison against the stored reference; rows without a reference are skipped."""
    out = []
    refs = {t: reference_rows(t) for t in {row.table for row in rows}}
    for row in rows:
        ref = refs[row.table].get(row.r)
        if ref is None:
            continue
        if (ref["n"], ref["N"]) != (row.n, row.N):
            raise DomainError(f"reference row r={row.r} has (n, N) = {(ref['n'], ref['N'])}, computed {(row.n, row.N)}")
        for col in COLUMNS:
            value = getattr(row, col)
            target = ref[col]["value"]
            rel = abs(value - target) / abs(target)
            out.append(CellComparison(row.table, row.r, col, value, target, rel, rel <= rtol))
    return out
