from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class RankedEntry:
    doc_id: str
    score: float
    rank: int


def ranking_key(doc_id: str, score: float) -> Tuple[float, str]:
    """
    Sort key of every ranking: descending score, ties broken by ascending doc_id.
    """
    return (-score, doc_id)


@dataclass(frozen=True)
class RankedList:
    """
    The ranked list of a query: scores are non-increasing with the 1-based rank,
    equal scores are ordered by ascending doc_id.
    """

    query_id: str
    entries: Tuple[RankedEntry, ...]

    def __post_init__(self):
        seen = set()
        for i, entry in enumerate(self.entries):
            if entry.rank != i + 1:
                raise ValueError(f"Entry {entry.doc_id} has rank {entry.rank}, expected {i + 1}")
            if entry.doc_id in seen:
                raise ValueError(f"Duplicate document {entry.doc_id} in ranked list")
            seen.add(entry.doc_id)
            if i > 0:
                previous = self.entries[i - 1]
                if ranking_key(previous.doc_id, previous.score) > ranking_key(
                    entry.doc_id, entry.score
                ):
                    raise ValueError(f"Ranked list of {self.query_id} is not sorted")

    @classmethod
    def from_scores(cls, query_id: str, scores: Iterable[Tuple[str, float]]) -> "RankedList":
        ordered = sorted(scores, key=lambda x: ranking_key(x[0], x[1]))
        return cls(
            query_id,
            tuple(
                RankedEntry(doc_id, float(score), rank)
                for rank, (doc_id, score) in enumerate(ordered, start=1)
            ),
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[RankedEntry]:
        return iter(self.entries)

    def __contains__(self, doc_id: object) -> bool:
        return any(entry.doc_id == doc_id for entry in self.entries)

    def entry(self, doc_id: str) -> RankedEntry:
        for entry in self.entries:
            if entry.doc_id == doc_id:
                return entry
        raise ValueError(f"Document {doc_id} is not in the ranked list of {self.query_id}")

    def rank_of(self, doc_id: str) -> int:
        return self.entry(doc_id).rank

    def score_of(self, doc_id: str) -> float:
        return self.entry(doc_id).score

    def competitor_scores(self, doc_id: str, top_m: Optional[int] = None) -> np.ndarray:
        """
        Scores of every other document of the list, or of the top-m of them.
        """
        self.entry(doc_id)
        scores = [entry.score for entry in self.entries if entry.doc_id != doc_id]
        if top_m is not None:
            scores = scores[:top_m]
        return np.array(scores, dtype=np.float64)

    def rescored(self, doc_id: str, score: float) -> "RankedList":
        """
        Returns the list re-sorted after replacing the score of one document.
        """
        self.entry(doc_id)
        return RankedList.from_scores(
            self.query_id,
            ((e.doc_id, score if e.doc_id == doc_id else e.score) for e in self.entries),
        )
