"""Evaluation harness: relevance metrics, the four task suites, retriever
adapters, and the model-by-suite comparison table.

Metrics are relevance metrics only (P@10, P@100, R-Precision); rank-aware
metrics are deliberately absent because cohort retrieval cares about which
passages surface, not their ordering depth.  Queries with an empty judged
set are excluded from averages and surfaced in the result, never silently
scored as zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .catalog import ConditionCatalog
from .encoder import EncoderModel, encode, encode_batch
from .errors import EvalError
from .index import InvertedIndex, SplitPlan, judgments_for
from .paraphrase import ParaphraseRules, augment_paraphrase, default_rules
from .quantity import (
    LvefDatabase,
    QuantityGrammar,
    gen_lvef_eval_set,
    parse_quantity_query,
)
from .text import normalize_statement

SUITE_NAMES = ("heldout", "paraphrased", "numerical", "ood")

METRIC_NAMES = ("p_at_10", "p_at_100", "r_precision")


def precision_at_k(ranked: Sequence[str], judged: Sequence[str], k: int) -> float:
    """|top-k hits| / k; short result lists keep the denominator at k."""
    if k < 1:
        raise EvalError(f"k must be at least 1, got {k}")
    judged_set = set(judged)
    hits = sum(1 for pid in ranked[:k] if pid in judged_set)
    return hits / k


def r_precision(ranked: Sequence[str], judged: Sequence[str]) -> float:
    r = len(set(judged))
    if r == 0:
        raise EvalError("r_precision undefined for an empty judged set")
    return precision_at_k(ranked, judged, r)


@dataclass(frozen=True)
class EvalQuery:
    text: str
    judged: tuple[str, ...]
    origin: str | None = None


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    queries: tuple[EvalQuery, ...]
    universe: tuple[str, ...]

    def __post_init__(self) -> None:
        universe = set(self.universe)
        for q in self.queries:
            stray = set(q.judged) - universe
            if stray:
                raise EvalError(
                    f"suite {self.name}: query {q.text!r} judges passages "
                    f"outside the universe: {sorted(stray)[:3]}"
                )


@dataclass(frozen=True)
class QueryResult:
    text: str
    n_relevant: int
    p_at_10: float
    p_at_100: float
    r_precision: float


@dataclass(frozen=True)
class SuiteResult:
    name: str
    rows: tuple[QueryResult, ...]
    averages: Mapping[str, float]
    excluded: tuple[str, ...]

    @property
    def n_scored(self) -> int:
        return len(self.rows)


def run_suite(retriever, suite: SuiteSpec, k_max: int = 100) -> SuiteResult:
    """Evaluate one retriever over one suite.

    The retriever must be indexed over exactly the suite universe; each
    query asks for max(k_max, R) results so R-Precision always has the
    depth it needs.  R = 0 queries are excluded and reported.
    """
    if set(retriever.passage_ids()) != set(suite.universe):
        raise EvalError(
            f"retriever universe does not match suite {suite.name!r} "
            f"({len(retriever.passage_ids())} vs {len(suite.universe)} passages)"
        )
    rows: list[QueryResult] = []
    excluded: list[str] = []
    for q in suite.queries:
        r = len(q.judged)
        if r == 0:
            excluded.append(q.text)
            continue
        ranked = [pid for pid, _ in retriever.search(q.text, max(k_max, r))]
        rows.append(
            QueryResult(
                text=q.text,
                n_relevant=r,
                p_at_10=precision_at_k(ranked, q.judged, 10),
                p_at_100=precision_at_k(ranked, q.judged, 100),
                r_precision=r_precision(ranked, q.judged),
            )
        )
    if not rows:
        raise EvalError(f"suite {suite.name!r} has no queries with relevant passages")
    averages = {
        "p_at_10": float(np.mean([row.p_at_10 for row in rows])),
        "p_at_100": float(np.mean([row.p_at_100 for row in rows])),
        "r_precision": float(np.mean([row.r_precision for row in rows])),
    }
    return SuiteResult(
        name=suite.name,
        rows=tuple(rows),
        averages=averages,
        excluded=tuple(excluded),
    )


class DenseRetriever:
    """Bi-encoder retrieval over a fixed passage set.

    Passage vectors are precomputed at construction; search encodes the
    query and ranks by the model's similarity, ties broken by ascending id.
    """

    def __init__(self, model: EncoderModel, passages: Mapping[str, str]):
        if not passages:
            raise EvalError("dense retriever needs at least one passage")
        self._model = model
        self._ids = sorted(passages)
        self._mat = encode_batch([passages[p] for p in self._ids], model)
        self._norms = np.linalg.norm(self._mat, axis=1)

    def passage_ids(self) -> list[str]:
        return list(self._ids)

    def search(self, query: str, k: int = 10) -> list[tuple[str, float]]:
        q = encode(query, self._model)
        if self._model.config.sim_kind == "dot":
            scores = self._mat @ q
        else:
            qn = float(np.linalg.norm(q))
            if qn == 0.0:
                return []
            scores = np.full(len(self._ids), -np.inf)
            ok = self._norms > 0.0
            scores[ok] = (self._mat[ok] @ q) / (self._norms[ok] * qn)
        order = sorted(range(len(self._ids)), key=lambda i: (-scores[i], self._ids[i]))
        return [(self._ids[i], float(scores[i])) for i in order[:k]]


class QuantityRetriever:
    """Comparator retrieval straight off the mention database.

    Matching passages all score 1.0 (the predicate is boolean); ranking
    within matches is by ascending id.  Non-quantity queries return [].
    """

    def __init__(
        self,
        db: LvefDatabase,
        universe: Sequence[str],
        mode: str = "strict",
        grammar: QuantityGrammar | None = None,
    ):
        self._db = db
        self._universe = sorted(set(universe))
        self._universe_set = set(universe)
        self._mode = mode
        self._grammar = grammar

    def passage_ids(self) -> list[str]:
        return list(self._universe)

    def search(self, query: str, k: int = 10) -> list[tuple[str, float]]:
        parsed = parse_quantity_query(query, self._grammar)
        if parsed is None:
            return []
        matches = [
            pid
            for pid in self._db.search(parsed, self._mode)
            if pid in self._universe_set
        ]
        return [(pid, 1.0) for pid in matches[:k]]


def _heldout_queries(
    catalog: ConditionCatalog, index: InvertedIndex, universe: Sequence[str]
) -> tuple[EvalQuery, ...]:
    seen: set[str] = set()
    texts: list[str] = []
    for cond in catalog.conditions:
        if cond.ood:
            continue
        for sub in cond.subcategories:
            for variant in sub.variants:
                norm = normalize_statement(variant)
                if norm not in seen:
                    seen.add(norm)
                    texts.append(variant)
    judged = judgments_for(texts, index, universe)
    return tuple(EvalQuery(text=t, judged=judged[t]) for t in texts)


def build_suites(
    corpus_passages: Mapping[str, str],
    catalog: ConditionCatalog,
    index: InvertedIndex,
    split: SplitPlan,
    rules: ParaphraseRules | None = None,
    grammar: QuantityGrammar | None = None,
    seed: int = 0,
    n_paraphrased: int = 60,
    n_numerical: int = 100,
    quantity_mode: str = "strict",
) -> dict[str, SuiteSpec]:
    """Assemble the four evaluation suites.

    heldout, paraphrased, and numerical share the held-out universe; the
    ood suite evaluates OOD-condition queries over the held-out universe
    with the quarantined passages injected.
    """
    rules = rules or default_rules()
    heldout_universe = tuple(sorted(split.heldout_passages))
    if not heldout_universe:
        raise EvalError("held-out universe is empty; rebuild splits first")

    for sub_id in split.eval_only_subcategories:
        in_heldout = set(index.postings.get(sub_id, ())) & set(heldout_universe)
        if not in_heldout:
            raise EvalError(
                f"eval-only subcategory {sub_id!r} has no held-out passages; "
                "regenerate with more reports or another split seed"
            )

    heldout_q = _heldout_queries(catalog, index, heldout_universe)
    heldout = SuiteSpec(name="heldout", queries=heldout_q, universe=heldout_universe)

    rng = np.random.default_rng(seed)
    catalog_norms = set(index.query_map)
    para_queries: list[EvalQuery] = []
    seen_para: set[str] = set()
    for q in heldout_q:
        if len(para_queries) >= n_paraphrased:
            break
        out, rule = augment_paraphrase(q.text, rules, rng)
        norm_out = normalize_statement(out)
        if rule is None or norm_out == normalize_statement(q.text):
            continue
        if norm_out in catalog_norms or norm_out in seen_para:
            continue
        seen_para.add(norm_out)
        para_queries.append(EvalQuery(text=out, judged=q.judged, origin=q.text))
    if len(para_queries) < n_paraphrased:
        raise EvalError(
            f"only {len(para_queries)} of {n_paraphrased} paraphrased queries "
            "could be generated; extend the rules table"
        )
    paraphrased = SuiteSpec(
        name="paraphrased", queries=tuple(para_queries), universe=heldout_universe
    )

    heldout_texts = {pid: corpus_passages[pid] for pid in heldout_universe}
    db = LvefDatabase.from_passages(heldout_texts, grammar)
    numerical_set = gen_lvef_eval_set(
        db,
        heldout_universe,
        n_queries=n_numerical,
        seed=seed,
        grammar=grammar,
        mode=quantity_mode,
    )
    numerical = SuiteSpec(
        name="numerical",
        queries=tuple(
            EvalQuery(text=t, judged=j) for t, _, j in numerical_set
        ),
        universe=heldout_universe,
    )

    ood_universe = tuple(sorted(set(heldout_universe) | set(split.ood_passages)))
    ood_texts: list[str] = []
    seen_ood: set[str] = set()
    for cond in catalog.conditions:
        if not cond.ood:
            continue
        for sub in cond.subcategories:
            for variant in sub.variants:
                norm = normalize_statement(variant)
                if norm not in seen_ood:
                    seen_ood.add(norm)
                    ood_texts.append(variant)
    ood_judged = judgments_for(ood_texts, index, ood_universe)
    ood = SuiteSpec(
        name="ood",
        queries=tuple(EvalQuery(text=t, judged=ood_judged[t]) for t in ood_texts),
        universe=ood_universe,
    )
    return {"heldout": heldout, "paraphrased": paraphrased, "numerical": numerical, "ood": ood}


@dataclass(frozen=True)
class ResultsTable:
    """Model-by-suite metric grid with run metadata."""

    models: tuple[str, ...]
    suites: tuple[str, ...]
    cells: Mapping[tuple[str, str], Mapping[str, float]]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def to_records(self) -> list[dict]:
        out = []
        for model in self.models:
            for suite in self.suites:
                cell = self.cells[(model, suite)]
                out.append(
                    {
                        "model": model,
                        "suite": suite,
                        **{m: cell[m] for m in METRIC_NAMES},
                    }
                )
        return out

    def render_text(self) -> str:
        header = ["model"]
        for suite in self.suites:
            for metric in ("P@10", "P@100", "R-Prec"):
                header.append(f"{suite}/{metric}")
        lines = [header]
        for model in self.models:
            row = [model]
            for suite in self.suites:
                cell = self.cells[(model, suite)]
                row.extend(f"{cell[m]:.3f}" for m in METRIC_NAMES)
            lines.append(row)
        widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
        rendered = []
        for line in lines:
            rendered.append("  ".join(val.ljust(w) for val, w in zip(line, widths)))
        return "\n".join(rendered)


def compare(
    results: Mapping[str, Mapping[str, SuiteResult]],
    metadata: Mapping[str, object] | None = None,
) -> ResultsTable:
    if not results:
        raise EvalError("compare needs at least one model")
    models = tuple(results)
    suites: tuple[str, ...] | None = None
    cells: dict[tuple[str, str], dict[str, float]] = {}
    for model, per_suite in results.items():
        names = tuple(per_suite)
        if suites is None:
            suites = names
        elif set(names) != set(suites):
            raise EvalError(
                f"model {model!r} evaluated on suites {names}, expected {suites}"
            )
        for suite, res in per_suite.items():
            cells[(model, suite)] = dict(res.averages)
    return ResultsTable(
        models=models,
        suites=tuple(suites or ()),
        cells=cells,
        metadata=dict(metadata or {}),
    )
