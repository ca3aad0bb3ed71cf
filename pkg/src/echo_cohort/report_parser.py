"""Sectioned-report ingest.

Renders synthetic reports to plain text and parses raw text back into
sections and atomic statements.  This is the path that would accept real
reports in place of generated ones, so the parser assumes nothing beyond
uppercase section headers ending in a colon; everything else is body text.
Reports lacking a left ventricle section (or a summary) raise
ReportExcluded, a filtering signal rather than a failure.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .catalog import ConditionCatalog
from .corpus import SyntheticReport
from .errors import CorpusError, ReportExcluded
from .quantity import QuantityGrammar, extract_lvef
from .text import split_statements

LV_SECTION_ALIASES = ("LEFT VENTRICLE", "LV", "LEFT VENTRICULAR FINDINGS")
SUMMARY_SECTION_ALIASES = ("SUMMARY", "IMPRESSION")
ID_SECTION = "REPORT ID"

# A header is an all-caps line fragment before a colon; the remainder of the
# line, if any, is the first piece of that section's body.
_HEADER_RE = re.compile(r"^([A-Z][A-Z0-9 /\-]*):\s*(.*)$")

_TERMINAL_RE = re.compile(r"[\s.;:!?,]+$")


@dataclass(frozen=True)
class ParsedReport:
    report_id: str
    sections: Mapping[str, str]
    lv_statements: tuple[str, ...]
    summary_sentences: tuple[str, ...]


def _strip_terminal(s: str) -> str:
    return _TERMINAL_RE.sub("", s)


def _terminated(s: str) -> str:
    stripped = s.rstrip()
    if stripped.endswith((".", "!", "?")):
        return stripped
    return stripped + "."


def render_report(report: SyntheticReport) -> str:
    lines = [f"{ID_SECTION}: {report.report_id}", ""]
    lines.append(f"{LV_SECTION_ALIASES[0]}:")
    lines.extend(_terminated(s) for s in report.findings)
    lines.append("")
    lines.append(f"{SUMMARY_SECTION_ALIASES[0]}:")
    lines.append(report.summary)
    return "\n".join(lines) + "\n"


def split_sections(raw: str) -> dict[str, str]:
    """Order-preserving map of header name to body text.

    Text before the first header is dropped; a repeated header appends to
    the earlier body, keeping the parse total on messy input.
    """
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line in raw.split("\n"):
        m = _HEADER_RE.match(line)
        if m:
            name = m.group(1).strip()
            current = sections.setdefault(name, [])
            if m.group(2).strip():
                current.append(m.group(2).strip())
        elif current is not None:
            current.append(line)
    return {name: "\n".join(body).strip() for name, body in sections.items()}


def _pick_section(
    sections: Mapping[str, str], aliases: Sequence[str]
) -> str | None:
    for alias in aliases:
        if alias in sections:
            return alias
    return None


def parse_report(
    raw: str,
    lv_aliases: Sequence[str] = LV_SECTION_ALIASES,
    summary_aliases: Sequence[str] = SUMMARY_SECTION_ALIASES,
) -> ParsedReport:
    """Split raw report text into sections and atomic statements.

    Raises ReportExcluded when the left ventricle section or the summary is
    absent or empty; callers ingesting a stream catch it and move on.
    """
    sections = split_sections(raw)
    report_id = sections.get(ID_SECTION, "").split("\n")[0].strip()
    label = report_id or "<unidentified>"

    lv_name = _pick_section(sections, lv_aliases)
    if lv_name is None:
        raise ReportExcluded(f"report {label}: no left ventricle section")
    lv_statements = tuple(split_statements(sections[lv_name]))
    if not lv_statements:
        raise ReportExcluded(f"report {label}: left ventricle section is empty")

    summary_name = _pick_section(sections, summary_aliases)
    if summary_name is None:
        raise ReportExcluded(f"report {label}: no summary section")
    summary_sentences = tuple(split_statements(sections[summary_name]))
    if not summary_sentences:
        raise ReportExcluded(f"report {label}: summary section is empty")

    return ParsedReport(
        report_id=report_id,
        sections=sections,
        lv_statements=lv_statements,
        summary_sentences=summary_sentences,
    )


def _band_labels(
    catalog: ConditionCatalog, interval: tuple[float, float]
) -> tuple[str, ...]:
    # Attribute a numeric mention to its catalog band only when containment
    # is unambiguous; shared band endpoints (e.g. a point value of exactly
    # 70) stay unattributed instead of guessing.
    lo, hi = interval
    hits = [
        sub.id
        for sub in catalog.iter_subcategories()
        if sub.lvef_template is not None
        and sub.lvef_template.lo <= lo
        and hi <= sub.lvef_template.hi
    ]
    return (hits[0],) if len(hits) == 1 else ()


def report_record(
    raw: str,
    catalog: ConditionCatalog,
    grammar: QuantityGrammar | None = None,
) -> dict:
    """Parse raw text and emit one corpus-file record.

    Labels cover the statements the catalog knows about plus an LVEF band
    id when a numeric mention sits inside exactly one band; statements
    outside the catalog contribute no labels but stay in the record.
    """
    parsed = parse_report(raw)
    findings = [_strip_terminal(s) for s in parsed.lv_statements]
    summary_name = _pick_section(parsed.sections, SUMMARY_SECTION_ALIASES)
    summary = parsed.sections[summary_name]

    labels: set[str] = set()
    for statement in findings:
        labels.update(catalog.categorize(statement))
    for sentence in parsed.summary_sentences:
        labels.update(catalog.categorize(sentence))

    lvef: tuple[float, float] | None = None
    for text in (*findings, summary):
        mentions = extract_lvef(text, grammar)
        if mentions:
            lvef = (mentions[0].lo, mentions[0].hi)
            break
    if lvef is not None:
        labels.update(_band_labels(catalog, lvef))

    report_id = parsed.report_id
    if not report_id:
        report_id = "x" + hashlib.sha256(raw.encode("utf-8")).hexdigest()[:10]
    return {
        "report_id": report_id,
        "findings": findings,
        "summary": summary,
        "labels": sorted(labels),
        "lvef": list(lvef) if lvef is not None else None,
    }


def write_report_stream(texts: Iterable[str], path: str | Path) -> int:
    """Write reports as a length-prefixed stream: ascii byte count, newline,
    then exactly that many utf-8 bytes, repeated."""
    n = 0
    with open(path, "wb") as fh:
        for text in texts:
            data = text.encode("utf-8")
            fh.write(f"{len(data)}\n".encode("ascii"))
            fh.write(data)
            n += 1
    return n


def read_report_stream(path: str | Path) -> list[str]:
    data = Path(path).read_bytes()
    out: list[str] = []
    pos = 0
    while pos < len(data):
        nl = data.find(b"\n", pos)
        if nl < 0:
            raise CorpusError("truncated report stream: unterminated length prefix")
        prefix = data[pos:nl]
        try:
            length = int(prefix)
        except ValueError:
            raise CorpusError(
                f"bad report stream length prefix: {prefix[:20]!r}"
            ) from None
        if length < 0:
            raise CorpusError(f"negative report stream length: {length}")
        start, end = nl + 1, nl + 1 + length
        if end > len(data):
            raise CorpusError(
                f"truncated report stream: expected {length} bytes, "
                f"found {len(data) - start}"
            )
        out.append(data[start:end].decode("utf-8"))
        pos = end
    return out
