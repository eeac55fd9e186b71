"""Report rows for the word families and their CSV / Markdown / JSON forms.

Families:

* ``Y``: I(g,k), the word I(g) after k daisy substitutions of type g-1
  (k = 0 is I(g) itself).
* ``H``: k = 0, 1, 2 stand for H(g), H(g,1) and H(g,2).
* ``G``: k = 0 is G(g), k = g is G_daisy(g).
"""
from __future__ import annotations

import csv
import io
import json

from .invariants import InvariantReport, SubstitutionRecord, invariant_report
from .library import build_word, derive

SCHEMA_VERSION = 1

REMARK_NOTE = ("the closing Remark calls this total space CP2 # (3g+5)CP2bar; the blowdown deltas give "
               "e = 3g+10, i.e. b2- = 3g+7 (reported here)")


def _report(word_id: str, base_id: str | None, g: int, k: int, sections: int = 0) -> InvariantReport:
    if base_id is None:
        return invariant_report(build_word(word_id), k=k, sections=sections)
    w, trace = derive(word_id)
    return invariant_report(w, build_word(base_id), SubstitutionRecord.from_trace(trace), k=k, sections=sections)


def family_row(family: str, g: int, k: int) -> InvariantReport:
    if family == "Y":
        if k == 0:
            return _report(f"I@g={g}", None, g, 0)
        return _report(f"I@g={g},k={k}", f"I@g={g}", g, k)
    if family == "H":
        if k == 0:
            # the lift in Lemma 5.2 has one boundary twist: one (-1)-section
            return _report(f"H@g={g}", None, g, 0, sections=1)
        if k == 1:
            r = _report(f"H1@g={g}", f"H@g={g}", g, 1, sections=2 * g + 6)
            r.notes.append(REMARK_NOTE)
            return r
        if k == 2:
            return _report(f"H2@g={g}", f"H@g={g}", g, 2, sections=8)
        raise ValueError("family H has k in {0, 1, 2}")
    if family == "G":
        if k == 0:
            return _report(f"G@g={g}", None, g, 0)
        if k == g:
            return _report(f"G_daisy@g={g}", f"G@g={g}", g, g)
        raise ValueError("family G has k in {0, g}")
    raise ValueError(f"unknown family {family!r}")


def default_ks(family: str, g: int) -> list[int]:
    return {"Y": list(range(2, g + 2)), "H": [0, 1, 2], "G": [0, g]}[family]


def family_rows(family: str, genera, ks=None) -> list[InvariantReport]:
    rows = []
    for g in genera:
        for k in (default_ks(family, g) if ks is None else ks):
            if family == "Y" and not 0 <= k <= g + 1:
                continue
            rows.append(family_row(family, g, k))
    return rows


# ---------------------------------------------------------------------------
# formats


def _cell(v) -> str:
    return "" if v is None else str(v)


def to_csv(reports: list[InvariantReport]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(InvariantReport.COLUMNS)
    for r in reports:
        row = r.row()
        out.writerow([_cell(row[c]) for c in InvariantReport.COLUMNS])
    return buf.getvalue()


def to_markdown(reports: list[InvariantReport]) -> str:
    cols = InvariantReport.COLUMNS
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    notes = []
    for r in reports:
        row = r.row()
        cells = [_cell(row[c]).replace("|", "/") for c in cols]
        for n in r.notes:
            notes.append(n)
            cells[-1] += f" [{len(notes)}]"
        lines.append("| " + " | ".join(cells) + " |")
    for i, n in enumerate(notes, start=1):
        lines.append(f"\n[{i}] {n}")
    return "\n".join(lines) + "\n"


def to_json(reports: list[InvariantReport]) -> str:
    rows = []
    for r in reports:
        d = r.row()
        d["sigma_source"] = r.sigma_source
        d["notes"] = list(r.notes)
        rows.append(d)
    return json.dumps({"schema": SCHEMA_VERSION, "columns": list(InvariantReport.COLUMNS), "rows": rows},
                      indent=2) + "\n"


FORMATS = {"csv": to_csv, "md": to_markdown, "json": to_json}
