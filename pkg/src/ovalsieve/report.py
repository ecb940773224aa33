"""Serialisation of classification rows (table, TSV, JSON) and report validation."""

from __future__ import annotations

import json
from importlib import resources
from typing import IO, Iterable

from .congruence import Row
from .errors import InputError

SCHEMA_VERSION = 1
TSV_HEADER = ("scheme", "l", "chi0", "chi1", "status", "verdicts")


def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def row_to_tsv(row: Row) -> str:
    name = row.scheme if row.instance is None else f"{row.instance}={row.scheme}"
    return "\t".join([name, str(row.l), str(row.chi0), str(row.chi1), row.status.value, _compact(row.verdict.to_json())])


def _clauses(row: Row) -> str:
    return ",".join(f"{r.clause}:{r.status.value}" for r in row.verdict.reasons) or "-"


def write_rows(rows: Iterable[Row], fmt: str, out: IO[str], header: dict | None = None) -> int:
    """Stream ``rows`` to ``out``; returns the number written."""
    count = 0
    if fmt == "tsv":
        out.write("\t".join(TSV_HEADER) + "\n")
        for row in rows:
            out.write(row_to_tsv(row) + "\n")
            count += 1
    elif fmt == "json":
        head = {"schema_version": SCHEMA_VERSION, **(header or {})}
        out.write(_compact(head)[:-1] + ',"rows":[')
        for row in rows:
            out.write(("," if count else "") + "\n" + _compact(row.to_json()))
            count += 1
        out.write("\n]}\n")
    elif fmt == "table":
        out.write(f"{'scheme':<32} {'l':>3} {'chi0':>5} {'chi1':>5}  {'status':<22} clauses\n")
        for row in rows:
            name = row.scheme if row.instance is None else f"{row.instance} ({row.scheme})"
            out.write(f"{name:<32} {row.l:>3} {row.chi0:>5} {row.chi1:>5}  {row.status.value:<22} {_clauses(row)}\n")
            count += 1
    else:
        raise InputError(f"unknown format {fmt!r}")
    return count


def _schema() -> dict:
    return json.loads(resources.files("ovalsieve").joinpath("report.schema.json").read_text(encoding="utf-8"))


def validate_report(data: dict) -> dict:
    import jsonschema

    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise InputError(f"report invalid at {where}: {exc.message}") from None
    for row in data["rows"]:
        if row["chi0"] + row["chi1"] != 2:
            raise InputError(f"row {row['scheme']}: chi0 + chi1 != 2")
    return data


def load_report(text: str) -> dict:
    return validate_report(json.loads(text))
