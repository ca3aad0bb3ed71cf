"""Ground-truth machinery: the subcategory inverted index, query resolution,
report-level splits with OOD quarantine, and the versioned index container.

Relevance here is exact by construction.  A passage is relevant to a
statement iff the statement's subcategory ids all appear in the passage's
labels; compound statements therefore judge to the intersection of their
subcategories' postings.  All linguistic fuzziness belongs to the
retrievers under test, never to the ground truth.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .catalog import ConditionCatalog
from .corpus import Corpus
from .errors import IndexError_, UnknownQueryError
from .quantity import LvefDatabase, QuantityGrammar, parse_quantity_query
from .text import normalize_statement

INDEX_HEADER = "echo-index v1"

# Subcategories reserved for evaluation queries in the default catalog.
# Their statements never take the anchor or positive role in training.
DEFAULT_EVAL_ONLY_SUBCATEGORIES = (
    "apical-intracavitary-gradient",
    "hypokinesis-mild-moderate",
    "mural-thrombus",
    "no-apical-intracavitary-gradient",
)

DEFAULT_HELDOUT_FRACTION = 0.21


@dataclass(frozen=True)
class InvertedIndex:
    """Postings from subcategory id to sorted passage ids, plus the map
    from normalized statement text to the subcategory ids it asserts."""

    postings: Mapping[str, tuple[str, ...]]
    query_map: Mapping[str, tuple[str, ...]]
    catalog_hash: str

    def passage_ids(self) -> list[str]:
        out: set[str] = set()
        for pids in self.postings.values():
            out.update(pids)
        return sorted(out)

    def labels_for(self, passage_id: str) -> tuple[str, ...]:
        return tuple(
            sub for sub in sorted(self.postings) if passage_id in set(self.postings[sub])
        )

    def resolve(self, query: str) -> tuple[str, ...]:
        """Subcategory ids for a statement query; raises when unknown."""
        ids = self.query_map.get(normalize_statement(query))
        if not ids:
            raise UnknownQueryError(f"query resolves to no subcategory: {query!r}")
        return ids


def build_inverted_index(corpus: Corpus, catalog: ConditionCatalog) -> InvertedIndex:
    """Build postings directly from report labels.

    The corpus must have been generated from this exact catalog; a label the
    catalog does not know, or a hash mismatch, is an integrity error rather
    than something to paper over.
    """
    if corpus.catalog_hash != catalog.content_hash():
        raise IndexError_(
            "corpus was generated from a different catalog "
            f"(corpus hash {corpus.catalog_hash[:12]}..., "
            f"catalog hash {catalog.content_hash()[:12]}...)"
        )
    known = set(catalog.subcategory_ids())
    postings: dict[str, list[str]] = {}
    for report in corpus.reports:
        for label in report.labels:
            if label not in known:
                raise IndexError_(
                    f"report {report.report_id} carries unknown label {label!r}"
                )
            postings.setdefault(label, []).append(report.report_id)
    query_map = {
        normalize_statement(variant): catalog.categorize(variant)
        for sub in catalog.iter_subcategories()
        for variant in sub.variants
    }
    return InvertedIndex(
        postings={sub: tuple(sorted(set(pids))) for sub, pids in sorted(postings.items())},
        query_map=query_map,
        catalog_hash=corpus.catalog_hash,
    )


@dataclass(frozen=True)
class SplitPlan:
    train_passages: tuple[str, ...]
    heldout_passages: tuple[str, ...]
    ood_passages: tuple[str, ...]
    eval_only_subcategories: tuple[str, ...]
    ood_conditions: tuple[str, ...]
    heldout_fraction: float
    seed: int

    def __post_init__(self) -> None:
        overlap = set(self.train_passages) & set(self.heldout_passages)
        if overlap:
            raise IndexError_(f"split pools overlap: {sorted(overlap)[:3]}")
        quarantine = set(self.ood_passages)
        leaked = quarantine & (set(self.train_passages) | set(self.heldout_passages))
        if leaked:
            raise IndexError_(f"OOD passages leaked into splits: {sorted(leaked)[:3]}")


def make_splits(
    index: InvertedIndex,
    catalog: ConditionCatalog,
    heldout_fraction: float = DEFAULT_HELDOUT_FRACTION,
    seed: int = 0,
    eval_only_subcategories: Sequence[str] | None = None,
) -> SplitPlan:
    """Partition passages into train / held-out, quarantining OOD entirely.

    The unit is the report (each passage id is one report's summary), so
    related text can never straddle the boundary.  Explicit eval-only ids
    are validated; the defaults are filtered to whatever the catalog
    actually defines so reduced test catalogs still split.
    """
    if not 0.0 < heldout_fraction < 1.0:
        raise IndexError_(
            f"heldout_fraction must lie strictly inside (0, 1), got {heldout_fraction}"
        )
    known = set(catalog.subcategory_ids())
    if eval_only_subcategories is None:
        eval_only = tuple(
            s for s in DEFAULT_EVAL_ONLY_SUBCATEGORIES if s in known
        )
    else:
        unknown = set(eval_only_subcategories) - known
        if unknown:
            raise IndexError_(
                f"eval-only subcategory not in catalog: {sorted(unknown)[0]!r}"
            )
        eval_only = tuple(sorted(set(eval_only_subcategories)))

    ood_subs = set(catalog.ood_subcategory_ids())
    quarantined: set[str] = set()
    for sub in ood_subs:
        quarantined.update(index.postings.get(sub, ()))

    rest = [pid for pid in index.passage_ids() if pid not in quarantined]
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(rest))
    n_heldout = int(round(heldout_fraction * len(rest)))
    heldout = {rest[int(i)] for i in order[:n_heldout]}
    train = [pid for pid in rest if pid not in heldout]
    return SplitPlan(
        train_passages=tuple(sorted(train)),
        heldout_passages=tuple(sorted(heldout)),
        ood_passages=tuple(sorted(quarantined)),
        eval_only_subcategories=eval_only,
        ood_conditions=tuple(sorted(catalog.ood_condition_names())),
        heldout_fraction=heldout_fraction,
        seed=seed,
    )


def judgments_for(
    queries: Sequence[str],
    index: InvertedIndex,
    universe: Sequence[str],
    lvef_db: LvefDatabase | None = None,
    grammar: QuantityGrammar | None = None,
    quantity_mode: str = "strict",
) -> dict[str, tuple[str, ...]]:
    """Relevant passages per query, restricted to `universe`.

    Statement queries resolve through the query map; the intersection over
    their subcategory postings handles compounds.  Quantity-shaped queries
    fall through to the mention database when one is supplied.  R = 0 is a
    legitimate outcome here; only unresolvable queries raise.
    """
    universe_set = set(universe)
    out: dict[str, tuple[str, ...]] = {}
    for query in queries:
        ids = index.query_map.get(normalize_statement(query))
        if ids:
            relevant = set(index.postings.get(ids[0], ()))
            for sub in ids[1:]:
                relevant &= set(index.postings.get(sub, ()))
        else:
            quantity = (
                parse_quantity_query(query, grammar) if lvef_db is not None else None
            )
            if quantity is None:
                raise UnknownQueryError(
                    f"query resolves to no subcategory and is not a quantity: {query!r}"
                )
            relevant = set(lvef_db.search(quantity, quantity_mode))
        out[query] = tuple(sorted(relevant & universe_set))
    return out


def _canonical_payload(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")


@dataclass(frozen=True)
class IndexFile:
    """Everything a retriever needs, bound to one catalog hash."""

    index: InvertedIndex
    split: SplitPlan
    bm25: dict | None = None
    extras: dict = field(default_factory=dict)


def dump_index(bundle: IndexFile) -> bytes:
    payload = {
        "catalog_hash": bundle.index.catalog_hash,
        "postings": {s: list(p) for s, p in bundle.index.postings.items()},
        "query_map": {q: list(ids) for q, ids in bundle.index.query_map.items()},
        "split": {
            "train_passages": list(bundle.split.train_passages),
            "heldout_passages": list(bundle.split.heldout_passages),
            "ood_passages": list(bundle.split.ood_passages),
            "eval_only_subcategories": list(bundle.split.eval_only_subcategories),
            "ood_conditions": list(bundle.split.ood_conditions),
            "heldout_fraction": bundle.split.heldout_fraction,
            "seed": bundle.split.seed,
        },
        "bm25": bundle.bm25,
        "extras": bundle.extras,
    }
    body = _canonical_payload(payload)
    digest = hashlib.sha256(body).hexdigest()
    return (
        INDEX_HEADER.encode("ascii")
        + b"\n"
        + f"sha256={digest}\n".encode("ascii")
        + body
        + b"\n"
    )


def parse_index(data: bytes) -> IndexFile:
    header, _, rest = data.partition(b"\n")
    if header.decode("ascii", errors="replace") != INDEX_HEADER:
        raise IndexError_(
            f"bad index header: expected {INDEX_HEADER!r}, got {header[:40]!r}"
        )
    checksum_line, _, body = rest.partition(b"\n")
    if not checksum_line.startswith(b"sha256="):
        raise IndexError_("index file missing checksum line")
    stated = checksum_line[len(b"sha256=") :].decode("ascii", errors="replace")
    body = body.rstrip(b"\n")
    actual = hashlib.sha256(body).hexdigest()
    if stated != actual:
        raise IndexError_(
            f"index checksum mismatch: stated {stated[:12]}..., actual {actual[:12]}..."
        )
    try:
        payload = json.loads(body)
    except json.JSONDecodeError as exc:
        raise IndexError_(f"index payload is not valid JSON: {exc}") from exc
    try:
        index = InvertedIndex(
            postings={s: tuple(p) for s, p in payload["postings"].items()},
            query_map={q: tuple(ids) for q, ids in payload["query_map"].items()},
            catalog_hash=payload["catalog_hash"],
        )
        raw_split = payload["split"]
        split = SplitPlan(
            train_passages=tuple(raw_split["train_passages"]),
            heldout_passages=tuple(raw_split["heldout_passages"]),
            ood_passages=tuple(raw_split["ood_passages"]),
            eval_only_subcategories=tuple(raw_split["eval_only_subcategories"]),
            ood_conditions=tuple(raw_split["ood_conditions"]),
            heldout_fraction=float(raw_split["heldout_fraction"]),
            seed=int(raw_split["seed"]),
        )
    except (KeyError, TypeError) as exc:
        raise IndexError_(f"index payload missing field: {exc}") from exc
    return IndexFile(
        index=index,
        split=split,
        bm25=payload.get("bm25"),
        extras=payload.get("extras", {}),
    )


def save_index(bundle: IndexFile, path: str | Path) -> None:
    Path(path).write_bytes(dump_index(bundle))


def load_index(path: str | Path) -> IndexFile:
    return parse_index(Path(path).read_bytes())
