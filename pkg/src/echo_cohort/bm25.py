"""Okapi BM25 over passage text, the lexical baseline retriever.

Tokenization is shared with the dense encoder so the two retrievers see
the same surface (percent signs, comparators, and decimal numbers survive
as tokens).  Scores use the non-negative IDF variant
ln((N - df + 0.5) / (df + 0.5) + 1) with an explicit floor at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import IndexError_
from .text import tokenize

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75


@dataclass(frozen=True)
class Bm25Index:
    """Immutable term statistics; concurrent searches are safe."""

    k1: float
    b: float
    passage_ids: tuple[str, ...]
    doc_len: tuple[int, ...]
    avgdl: float
    postings: Mapping[str, Mapping[str, int]]

    def df(self, term: str) -> int:
        return len(self.postings.get(term, {}))

    def idf(self, term: str) -> float:
        n = len(self.passage_ids)
        df = self.df(term)
        return max(0.0, math.log((n - df + 0.5) / (df + 0.5) + 1.0))

    def search(self, query: str, k: int = 10) -> list[tuple[str, float]]:
        """Top-k passages by BM25 score, ties broken by ascending id.

        Every passage is ranked (zero scores included) as soon as any query
        token is indexed; a query with no indexed tokens returns [].
        Repeated query tokens contribute once per occurrence.
        """
        if k < 1:
            raise IndexError_(f"k must be at least 1, got {k}")
        tokens = [t for t in tokenize(query) if t in self.postings]
        if not tokens:
            return []
        row = {pid: i for i, pid in enumerate(self.passage_ids)}
        lengths = np.asarray(self.doc_len, dtype=np.float64)
        norm = self.k1 * (1.0 - self.b + self.b * lengths / self.avgdl)
        scores = np.zeros(len(self.passage_ids), dtype=np.float64)
        for term in tokens:
            idf = self.idf(term)
            for pid, tf in self.postings[term].items():
                i = row[pid]
                scores[i] += idf * (tf * (self.k1 + 1.0)) / (tf + norm[i])
        order = sorted(range(len(scores)), key=lambda i: (-scores[i], self.passage_ids[i]))
        return [(self.passage_ids[i], float(scores[i])) for i in order[:k]]

    def to_payload(self) -> dict:
        """JSON-safe form for embedding in the index container."""
        return {
            "k1": self.k1,
            "b": self.b,
            "passage_ids": list(self.passage_ids),
            "doc_len": list(self.doc_len),
            "avgdl": self.avgdl,
            "postings": {t: dict(p) for t, p in self.postings.items()},
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Bm25Index":
        try:
            return cls(
                k1=float(payload["k1"]),
                b=float(payload["b"]),
                passage_ids=tuple(payload["passage_ids"]),
                doc_len=tuple(int(x) for x in payload["doc_len"]),
                avgdl=float(payload["avgdl"]),
                postings={
                    t: {pid: int(tf) for pid, tf in p.items()}
                    for t, p in payload["postings"].items()
                },
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise IndexError_(f"bad bm25 payload: {exc}") from exc


def build_bm25(
    passages: Mapping[str, str], k1: float = DEFAULT_K1, b: float = DEFAULT_B
) -> Bm25Index:
    if not passages:
        raise IndexError_("cannot build a bm25 index over zero passages")
    if k1 < 0:
        raise IndexError_(f"k1 must be non-negative, got {k1}")
    if not 0.0 <= b <= 1.0:
        raise IndexError_(f"b must lie in [0, 1], got {b}")
    ids = tuple(sorted(passages))
    doc_len: list[int] = []
    postings: dict[str, dict[str, int]] = {}
    for pid in ids:
        tokens = tokenize(passages[pid])
        doc_len.append(len(tokens))
        for t in tokens:
            bucket = postings.setdefault(t, {})
            bucket[pid] = bucket.get(pid, 0) + 1
    avgdl = float(np.mean(doc_len))
    if avgdl == 0.0:
        raise IndexError_("all passages tokenized to nothing")
    return Bm25Index(
        k1=float(k1),
        b=float(b),
        passage_ids=ids,
        doc_len=tuple(doc_len),
        avgdl=avgdl,
        postings={t: dict(sorted(p.items())) for t, p in sorted(postings.items())},
    )
