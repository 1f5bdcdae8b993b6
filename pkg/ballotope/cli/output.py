"""Output envelope and its json / tsv / table renderings."""

from __future__ import annotations

import json
from typing import Any

from prettytable import PrettyTable

from ballotope.infra.settings import settings

FORMATS = ("json", "tsv", "table")


def envelope(
    command: str, params: dict[str, Any], result: Any, timing_ms: int
) -> dict[str, Any]:
    """{schema_version, command, params, result, timing_ms}."""
    return {
        "schema_version": str(settings.get("schemaversion", "1.0")),
        "command": command,
        "params": params,
        "result": result,
        "timing_ms": timing_ms,
    }


def to_json(env: dict[str, Any]) -> str:
    return json.dumps(env, ensure_ascii=False, indent=2, sort_keys=True)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict | list):
        return json.dumps(value, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return str(value)


def _table_rows(result: Any, rows: list[dict[str, Any]] | None) -> tuple[list[str], list[list[str]]]:
    if rows is None:
        # non-tabular payloads become key/value pairs
        items = sorted(result.items()) if isinstance(result, dict) else [("result", result)]
        return ["key", "value"], [[k, _cell(v)] for k, v in items]
    if not rows:
        return [], []
    columns = list(rows[0])
    return columns, [[_cell(r.get(c)) for c in columns] for r in rows]


def to_tsv(result: Any, rows: list[dict[str, Any]] | None) -> str:
    """Header line plus one tab-separated line per row."""
    columns, body = _table_rows(result, rows)
    lines = ["\t".join(columns)] if columns else []
    lines += ["\t".join(cells) for cells in body]
    return "\n".join(lines)


def to_table(result: Any, rows: list[dict[str, Any]] | None) -> str:
    columns, body = _table_rows(result, rows)
    t = PrettyTable()
    if columns:
        t.field_names = columns
    for cells in body:
        t.add_row(cells)
    return t.get_string()


def render(
    fmt: str, env: dict[str, Any], rows: list[dict[str, Any]] | None = None
) -> str:
    match fmt:
        case "tsv":
            return to_tsv(env["result"], rows)
        case "table":
            return to_table(env["result"], rows)
        case _:
            return to_json(env)
