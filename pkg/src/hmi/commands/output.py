"""Report serialisation shared by the sub-commands."""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable, List

from hmi.errors import HmiError
from hmi.schemas.claims import ClaimReport

REPORT_FIELDS = [
    "claim_id",
    "status",
    "kind",
    "domain",
    "grid",
    "min_margin",
    "argmin_x",
    "paper_ref",
    "notes",
]
DISCLAIMER = "high-confidence numerical verification on finite grids; not a proof"


def fmt(x: float) -> str:
    """17 significant digits; reparsing and reformatting gives the same text."""
    return f"{x:.17g}"


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or (isinstance(obj, float) and not math.isfinite(obj)):
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}"
            for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, 17-digit floats, non-finite as null."""
    return _encode(obj, indent, 0) + "\n"


def report_rows(reports: Iterable[ClaimReport]) -> List[dict]:
    return [r.model_dump(include=set(REPORT_FIELDS)) for r in reports]


def to_csv(reports: Iterable[ClaimReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in report_rows(reports):
        row["domain"] = dumps(row["domain"], indent=0).replace("\n", "")
        row["grid"] = dumps(row["grid"], indent=0).replace("\n", "")
        for key in ("min_margin", "argmin_x"):
            if isinstance(row[key], float):
                row[key] = fmt(row[key])
        writer.writerow(row)
    return buf.getvalue()


def to_markdown(reports: Iterable[ClaimReport]) -> str:
    lines = [
        "| claim | status | kind | domain | min margin | argmin x | reference |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in reports:
        domain = ", ".join(f"{v:.6g}" for v in r.domain)
        argmin = "" if r.argmin_x is None else f"{r.argmin_x:.6g}"
        ref = r.paper_ref.replace("|", "\\|")
        lines.append(
            f"| {r.claim_id} | {r.status} | {r.kind} | [{domain}] "
            f"| {r.min_margin:.3e} | {argmin} | {ref} |"
        )
    lines += ["", f"_{DISCLAIMER}_", ""]
    return "\n".join(lines)


def render(reports: List[ClaimReport], fmt_name: str) -> str:
    if fmt_name == "json":
        return dumps(report_rows(reports))
    if fmt_name == "csv":
        return to_csv(reports)
    return to_markdown(reports)


def check_writable(path: Path) -> None:
    """Fail before any work when the report directory is missing."""
    if not path.parent.is_dir():
        raise HmiError(f"cannot write {path}: no such directory", {"path": str(path)})


def write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise HmiError(f"cannot write {path}: {exc.strerror}", {"path": str(path)}) from exc
