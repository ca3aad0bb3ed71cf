"""Rule-based paraphrasing of query statements.

Paraphrases rewrite surface form while leaving the judgment set alone:
callers carry the original query's judgments over to the paraphrase.
Rules live in a versioned table with two tiers.  Statement rules replace a
whole (normalized) statement with one of several hand-written rewrites
(synonym swaps, double negations, clause reorders); term rules substitute
a single phrase anywhere it occurs.  Neither tier ever touches numeric
tokens, so "LVEF > 40%" paraphrases keep "> 40%" intact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np
import yaml

from .errors import CatalogError
from .text import normalize_statement

RULES_HEADER = "echo-rules v1"


@dataclass(frozen=True)
class ParaphraseRules:
    statement_rules: tuple[tuple[str, tuple[str, ...]], ...]
    term_rules: tuple[tuple[str, tuple[str, ...]], ...]

    def statement_options(self, norm: str) -> tuple[str, ...] | None:
        for key, options in self.statement_rules:
            if key == norm:
                return options
        return None


def parse_rules(text: str) -> ParaphraseRules:
    lines = text.split("\n", 1)
    if not lines or lines[0].strip() != RULES_HEADER:
        raise CatalogError(
            f"bad rules header: expected {RULES_HEADER!r}, got {lines[0][:40]!r}"
        )
    try:
        body = yaml.safe_load(lines[1] if len(lines) > 1 else "")
    except yaml.YAMLError as exc:
        raise CatalogError(f"rules body is not valid YAML: {exc}") from exc
    if not isinstance(body, dict) or body.get("kind") != "paraphrase_rules":
        raise CatalogError(f"unexpected rules kind: {body.get('kind')!r}")
    unknown = set(body) - {"kind", "statement_rules", "term_rules"}
    if unknown:
        raise CatalogError(f"unknown rules field: {sorted(unknown)[0]!r}")

    def load_tier(name: str) -> tuple[tuple[str, tuple[str, ...]], ...]:
        tier = body.get(name)
        if not isinstance(tier, dict) or not tier:
            raise CatalogError(f"rules field {name!r} must be a non-empty mapping")
        out = []
        for key, options in tier.items():
            if not isinstance(options, list) or not options:
                raise CatalogError(f"rule {key!r} needs a non-empty option list")
            out.append(
                (
                    normalize_statement(str(key)),
                    tuple(normalize_statement(str(o)) for o in options),
                )
            )
        return tuple(sorted(out))

    return ParaphraseRules(
        statement_rules=load_tier("statement_rules"),
        term_rules=load_tier("term_rules"),
    )


@lru_cache(maxsize=1)
def default_rules() -> ParaphraseRules:
    text = (
        resources.files("echo_cohort")
        .joinpath("data/paraphrase_rules.txt")
        .read_text()
    )
    return parse_rules(text)


def _whole_phrase_re(phrase: str) -> re.Pattern:
    return re.compile(rf"(?<![a-z0-9]){re.escape(phrase)}(?![a-z0-9])")


def augment_paraphrase(
    query: str,
    rules: ParaphraseRules | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[str, str | None]:
    """Paraphrase one query; returns (text, rule applied or None).

    A statement rule wins when the whole normalized query has an entry;
    otherwise one applicable term rule is drawn and substituted at every
    occurrence.  With no applicable rule the query comes back unchanged
    and the rule slot is None, which callers treat as the skip flag.
    """
    rules = rules or default_rules()
    rng = rng if rng is not None else np.random.default_rng(0)
    norm = normalize_statement(query)

    options = rules.statement_options(norm)
    if options is not None:
        return options[int(rng.integers(len(options)))], "statement"

    applicable = [
        (src, opts)
        for src, opts in rules.term_rules
        if _whole_phrase_re(src).search(norm)
    ]
    if applicable:
        src, opts = applicable[int(rng.integers(len(applicable)))]
        replacement = opts[int(rng.integers(len(opts)))]
        return _whole_phrase_re(src).sub(replacement, norm), f"term:{src}"
    return query, None
