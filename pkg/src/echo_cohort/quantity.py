"""Numeric LVEF handling: extraction from passage text, query parsing, and
interval matching.

Every ejection-fraction mention is normalized to a closed interval [lo, hi]
with 0 <= lo <= hi <= 100.  A point value renders as a degenerate interval,
a reported range keeps its endpoints, and comparator surfaces such as
">55%" widen to the closed interval they bound ([55, 100] here).  Queries
keep their comparator because the match rule differs per relation; see
`matches` for the exact semantics of strict and overlap modes.

The surface grammar (cue words, comparator phrases, range connectors) lives
in a versioned data file so the service can hand it to clients for span
highlighting without duplicating the tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

import numpy as np
import yaml

from .errors import EvalError, QuantityError

GRAMMAR_HEADER = "echo-grammar v1"

RELATIONS = ("lt", "le", "gt", "ge", "eq", "range")

# Comparator groups that force widening when they appear in passage text.
# EQ phrases ("of", "measured at") do not widen, so a mention like
# "LVEF of 55%" flows through the plain point path instead.
_INEQ_RELATIONS = ("gt", "lt", "ge", "le")

_NUM = r"\d{1,3}(?:\.\d+)?"


@dataclass(frozen=True)
class QuantityGrammar:
    """Surface tables for LVEF expressions, loaded from the data file.

    All fields are tuples (comparators as relation/surfaces pairs) so the
    grammar stays hashable and compiled patterns can be cached per grammar.
    """

    cues: tuple[str, ...]
    comparators: tuple[tuple[str, tuple[str, ...]], ...]
    range_connectors: tuple[str, ...]
    range_prefixes: tuple[str, ...]

    def comparator_phrases(self, relation: str) -> tuple[str, ...]:
        for rel, phrases in self.comparators:
            if rel == relation:
                return phrases
        raise QuantityError(f"no surfaces for relation: {relation!r}")

    def comparator_relation(self, surface: str) -> str:
        key = " ".join(surface.lower().split())
        for relation, phrases in self.comparators:
            if key in phrases:
                return relation
        raise QuantityError(f"unknown comparator surface: {surface!r}")

    def as_payload(self) -> dict:
        """Plain-dict form for the HTTP conditions endpoint."""
        return {
            "cues": list(self.cues),
            "comparators": {rel: list(ph) for rel, ph in self.comparators},
            "range_connectors": list(self.range_connectors),
            "range_prefixes": list(self.range_prefixes),
        }


@dataclass(frozen=True)
class QuantityQuery:
    """Parsed comparator query. `b` is set only for the range relation."""

    relation: str
    a: float
    b: float | None = None

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise QuantityError(f"unknown relation: {self.relation!r}")
        if self.relation == "range":
            if self.b is None:
                raise QuantityError("range query needs both endpoints")
            if not 0.0 <= self.a <= self.b <= 100.0:
                raise QuantityError(
                    f"range endpoints out of order or bounds: [{self.a}, {self.b}]"
                )
        else:
            if self.b is not None:
                raise QuantityError(f"{self.relation} query takes a single value")
            if not 0.0 <= self.a <= 100.0:
                raise QuantityError(f"value out of bounds: {self.a}")


@dataclass(frozen=True)
class Mention:
    """One extracted LVEF interval with its source span (character offsets)."""

    lo: float
    hi: float
    start: int
    end: int
    text: str


def _phrase_pattern(phrase: str) -> str:
    # Multi-word phrases tolerate any run of whitespace between words.
    words = [re.escape(w) for w in phrase.split()]
    return r"\s+".join(words)


def _word_bounded(pattern: str, phrase: str) -> str:
    # Symbols like ">=" must not get \b glued onto them.
    left = r"\b" if phrase[0].isalnum() else ""
    right = r"\b" if phrase[-1].isalnum() else ""
    return f"{left}{pattern}{right}"


def _alternation(phrases: Iterable[str]) -> str:
    ordered = sorted(set(phrases), key=len, reverse=True)
    return "|".join(_word_bounded(_phrase_pattern(p), p) for p in ordered)


@lru_cache(maxsize=8)
def _compiled(grammar: QuantityGrammar) -> tuple[re.Pattern, re.Pattern]:
    cue = _alternation(grammar.cues)
    conn = _alternation(grammar.range_connectors)
    prefix = _alternation(grammar.range_prefixes)
    ineq_phrases = [
        p for r in _INEQ_RELATIONS for p in grammar.comparator_phrases(r)
    ]
    ineq = _alternation(ineq_phrases)
    all_comp = _alternation([p for _, ph in grammar.comparators for p in ph])

    # Gap words bridge the cue and the value ("is estimated at ...").  A gap
    # word must not swallow an inequality phrase that binds the value, or a
    # comparator mention would silently collapse to a point.  The lookahead
    # only fires when the phrase is directly followed by a percent value, so
    # ordinary uses ("at", "over the study") still pass as gap words.
    def gap(limit: int, comp: str) -> str:
        return rf"(?:(?!(?:{comp})\s*{_NUM}\s*%)[a-z]+\s+){{0,{limit}}}?"

    body_range = (
        rf"(?:(?:{prefix})\s+)?(?P<rlo>{_NUM})\s*%?\s*(?:{conn})\s*(?P<rhi>{_NUM})\s*%"
    )
    mention_re = re.compile(
        rf"\b(?:{cue})\b[\s:]*{gap(6, ineq)}"
        rf"(?:{body_range}"
        rf"|(?P<comp>[<>]=?|{ineq})\s*(?P<cv>{_NUM})\s*%"
        rf"|(?P<pv>{_NUM})\s*%)",
        re.IGNORECASE,
    )
    query_re = re.compile(
        rf"\b(?:{cue})\b[\s:]*{gap(4, all_comp)}"
        rf"(?:{body_range}"
        rf"|(?P<comp>[<>]=?|{all_comp})\s*(?P<cv>{_NUM})\s*%"
        rf"|(?P<pv>{_NUM})\s*%)",
        re.IGNORECASE,
    )
    return mention_re, query_re


def parse_grammar(text: str) -> QuantityGrammar:
    lines = text.split("\n", 1)
    if not lines or lines[0].strip() != GRAMMAR_HEADER:
        raise QuantityError(
            f"bad grammar header: expected {GRAMMAR_HEADER!r}, got {lines[0][:40]!r}"
        )
    try:
        body = yaml.safe_load(lines[1] if len(lines) > 1 else "")
    except yaml.YAMLError as exc:
        raise QuantityError(f"grammar body is not valid YAML: {exc}") from exc
    if not isinstance(body, dict):
        raise QuantityError("grammar body must be a mapping")
    if body.get("kind") != "lvef_grammar":
        raise QuantityError(f"unexpected grammar kind: {body.get('kind')!r}")
    known = {"kind", "cues", "comparators", "range_connectors", "range_prefixes"}
    for field in body:
        if field not in known:
            raise QuantityError(f"unknown grammar field: {field!r}")
    for field in known - {"kind"}:
        if field not in body:
            raise QuantityError(f"grammar missing field: {field!r}")
    comparators = body["comparators"]
    if not isinstance(comparators, dict):
        raise QuantityError("comparators must map relation to surfaces")
    table: dict[str, tuple[str, ...]] = {}
    for rel, phrases in comparators.items():
        key = str(rel).lower()
        if key not in RELATIONS or key == "range":
            raise QuantityError(f"unknown comparator relation: {rel!r}")
        if not isinstance(phrases, list) or not phrases:
            raise QuantityError(f"comparator {rel!r} needs a non-empty list")
        table[key] = tuple(" ".join(str(p).lower().split()) for p in phrases)
    for field in ("cues", "range_connectors", "range_prefixes"):
        if not isinstance(body[field], list) or not body[field]:
            raise QuantityError(f"grammar field {field!r} needs a non-empty list")
    return QuantityGrammar(
        cues=tuple(str(c).lower() for c in body["cues"]),
        comparators=tuple(sorted(table.items())),
        range_connectors=tuple(str(c).lower() for c in body["range_connectors"]),
        range_prefixes=tuple(str(p).lower() for p in body["range_prefixes"]),
    )


@lru_cache(maxsize=1)
def default_grammar() -> QuantityGrammar:
    text = (
        resources.files("echo_cohort").joinpath("data/lvef_grammar.txt").read_text()
    )
    return parse_grammar(text)


def _interval_from_match(m: re.Match, grammar: QuantityGrammar) -> tuple[float, float] | None:
    if m.group("rlo") is not None:
        lo, hi = float(m.group("rlo")), float(m.group("rhi"))
    elif m.group("comp") is not None:
        value = float(m.group("cv"))
        relation = grammar.comparator_relation(m.group("comp"))
        if relation in ("gt", "ge"):
            lo, hi = value, 100.0
        elif relation in ("lt", "le"):
            lo, hi = 0.0, value
        else:
            lo, hi = value, value
    else:
        value = float(m.group("pv"))
        lo, hi = value, value
    if not 0.0 <= lo <= hi <= 100.0:
        return None
    return lo, hi


def extract_lvef(text: str, grammar: QuantityGrammar | None = None) -> list[Mention]:
    """Find every LVEF mention in `text` as a closed interval.

    Requires both a cue word and a percent sign, so stray numerics
    ("gradient of 28 mmHg") can never produce an interval.  Mentions whose
    interval would leave [0, 100] are dropped rather than clipped.
    """
    grammar = grammar or default_grammar()
    mention_re, _ = _compiled(grammar)
    out: list[Mention] = []
    for m in mention_re.finditer(text):
        interval = _interval_from_match(m, grammar)
        if interval is None:
            continue
        out.append(
            Mention(
                lo=interval[0],
                hi=interval[1],
                start=m.start(),
                end=m.end(),
                text=text[m.start() : m.end()],
            )
        )
    return out


def parse_quantity_query(
    text: str, grammar: QuantityGrammar | None = None
) -> QuantityQuery | None:
    """Parse a comparator query like "LVEF > 50%" or "EF between 40-45%".

    Returns None when the text is not quantity-shaped (no cue or no digits),
    which routes it to the text retrievers.  A cue together with digits that
    still fail to parse raises, because guessing at comparator semantics
    would return confidently wrong cohorts.
    """
    grammar = grammar or default_grammar()
    _, query_re = _compiled(grammar)
    cue_re = re.compile(rf"\b(?:{_alternation(grammar.cues)})\b", re.IGNORECASE)
    if not cue_re.search(text):
        return None
    if not any(ch.isdigit() for ch in text):
        return None
    m = query_re.search(text)
    if m is None:
        raise QuantityError(
            f"could not parse quantity expression in {text!r}; "
            "expected a comparator or range followed by a percent value"
        )
    if m.group("rlo") is not None:
        lo, hi = float(m.group("rlo")), float(m.group("rhi"))
        if lo > hi:
            raise QuantityError(f"range endpoints out of order in {text!r}")
        return QuantityQuery("range", lo, hi)
    if m.group("comp") is not None:
        relation = grammar.comparator_relation(m.group("comp"))
        return QuantityQuery(relation, float(m.group("cv")))
    return QuantityQuery("eq", float(m.group("pv")))


def matches(lo: float, hi: float, query: QuantityQuery, mode: str = "strict") -> bool:
    """Decide whether the interval [lo, hi] satisfies `query`.

    Strict mode demands that every value in the interval satisfies the
    comparator; overlap mode accepts when any value does.  The two coincide
    for degenerate intervals and for the eq relation.
    """
    if mode not in ("strict", "overlap"):
        raise QuantityError(f"unknown match mode: {mode!r}")
    r, a, b = query.relation, query.a, query.b
    if r == "eq":
        return lo <= a <= hi
    if mode == "strict":
        if r == "lt":
            return hi < a
        if r == "le":
            return hi <= a
        if r == "gt":
            return lo > a
        if r == "ge":
            return lo >= a
        return a <= lo and hi <= b  # range containment
    if r == "lt":
        return lo < a
    if r == "le":
        return lo <= a
    if r == "gt":
        return hi > a
    if r == "ge":
        return hi >= a
    return lo <= b and a <= hi  # range overlap


class LvefDatabase:
    """Per-passage mention table supporting comparator search."""

    def __init__(self, mentions: Mapping[str, Sequence[Mention]]):
        self._mentions = {
            pid: tuple(ms) for pid, ms in mentions.items() if len(ms) > 0
        }

    @classmethod
    def from_passages(
        cls, passages: Mapping[str, str], grammar: QuantityGrammar | None = None
    ) -> "LvefDatabase":
        grammar = grammar or default_grammar()
        return cls(
            {pid: extract_lvef(text, grammar) for pid, text in passages.items()}
        )

    def __len__(self) -> int:
        return len(self._mentions)

    def __contains__(self, pid: str) -> bool:
        return pid in self._mentions

    def mentions(self, pid: str) -> tuple[Mention, ...]:
        return self._mentions.get(pid, ())

    def passage_ids(self) -> list[str]:
        return sorted(self._mentions)

    def search(self, query: QuantityQuery, mode: str = "strict") -> list[str]:
        """Passage ids with at least one satisfying mention, ascending."""
        return sorted(
            pid
            for pid, ms in self._mentions.items()
            if any(matches(m.lo, m.hi, query, mode) for m in ms)
        )


_SIGN_SURFACES = {"gt": ">", "lt": "<", "ge": ">=", "le": "<=", "eq": "="}

_POINT_QUERY_TEMPLATES = (
    "LVEF {c} {v}%",
    "EF {c} {v}%",
    "Ejection fraction {c} {v}%",
    "Documented LVEF {c} {v}%",
)

_RANGE_QUERY_TEMPLATES = (
    "LVEF between {a} and {b}%",
    "LVEF between {a}-{b}%",
    "LVEF measured at {a}-{b}%",
    "Expected LVEF in range of {a}-{b}%",
    "EF {a} to {b}%",
)


def _anchor_values(rng: np.random.Generator, m: Mention, relation: str) -> float | None:
    """Pick a threshold the anchor mention strictly satisfies, or None."""
    slack = int(rng.integers(1, 11))
    if relation == "gt":
        v = int(np.floor(m.lo)) - slack
        return float(v) if v >= 0 else None
    if relation == "lt":
        v = int(np.ceil(m.hi)) + slack
        return float(v) if v <= 100 else None
    if relation == "ge":
        v = int(np.floor(m.lo)) - int(rng.integers(0, 11))
        return float(v) if v >= 0 else None
    if relation == "le":
        v = int(np.ceil(m.hi)) + int(rng.integers(0, 11))
        return float(v) if v <= 100 else None
    lo, hi = int(np.ceil(m.lo)), int(np.floor(m.hi))
    if lo > hi:
        return None
    return float(rng.integers(lo, hi + 1))


def gen_lvef_eval_set(
    db: LvefDatabase,
    universe: Sequence[str],
    n_queries: int = 100,
    seed: int = 0,
    grammar: QuantityGrammar | None = None,
    mode: str = "strict",
) -> list[tuple[str, QuantityQuery, tuple[str, ...]]]:
    """Sample distinct comparator queries, each with at least one judged hit.

    Thresholds are anchored on real mentions inside `universe` so relevance
    is never vacuously empty; the rendered surface is re-parsed through the
    grammar, which turns any template drift into a loud failure instead of a
    silently mislabeled suite.
    """
    grammar = grammar or default_grammar()
    rng = np.random.default_rng(seed)
    in_universe = [pid for pid in sorted(set(universe)) if pid in db]
    if not in_universe:
        raise EvalError("no passages with LVEF mentions inside the universe")
    universe_set = set(universe)
    out: list[tuple[str, QuantityQuery, tuple[str, ...]]] = []
    seen: set[str] = set()
    attempts = 0
    max_attempts = 200 * n_queries
    while len(out) < n_queries:
        attempts += 1
        if attempts > max_attempts:
            raise EvalError(
                f"only sampled {len(out)} of {n_queries} quantity queries "
                f"after {max_attempts} attempts"
            )
        pid = in_universe[int(rng.integers(0, len(in_universe)))]
        ms = db.mentions(pid)
        m = ms[int(rng.integers(0, len(ms)))]
        if rng.random() < 0.3:
            d1 = int(rng.integers(0, 11))
            d2 = int(rng.integers(0, 11))
            a = max(0, int(np.floor(m.lo)) - d1)
            b = min(100, int(np.ceil(m.hi)) + d2)
            template = _RANGE_QUERY_TEMPLATES[
                int(rng.integers(0, len(_RANGE_QUERY_TEMPLATES)))
            ]
            text = template.format(a=a, b=b)
        else:
            relation = ("gt", "lt", "ge", "le", "eq")[int(rng.integers(0, 5))]
            v = _anchor_values(rng, m, relation)
            if v is None:
                continue
            value = int(v)
            if rng.random() < 0.3 and relation != "eq":
                phrases = grammar.comparator_phrases(relation)
                surface = phrases[int(rng.integers(0, len(phrases)))]
                if surface in ("<", ">", "<=", ">="):
                    surface = {
                        "gt": "greater than",
                        "lt": "less than",
                        "ge": "at least",
                        "le": "at most",
                    }[relation]
                comp = surface
            else:
                comp = _SIGN_SURFACES[relation]
            template = _POINT_QUERY_TEMPLATES[
                int(rng.integers(0, len(_POINT_QUERY_TEMPLATES)))
            ]
            text = template.format(c=comp, v=value)
        if text in seen:
            continue
        query = parse_quantity_query(text, grammar)
        if query is None:
            raise EvalError(f"generated query failed to parse: {text!r}")
        judged = tuple(p for p in db.search(query, mode) if p in universe_set)
        if not judged:
            continue
        seen.add(text)
        out.append((text, query, judged))
    return out
