from dataclasses import dataclass
from typing import List, Optional
import logging

from rankattack.attack.edit import Edit
from rankattack.core.embeddings.semantics import document_similarity
from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.errors import DataError, DegenerateInputError
from rankattack.core.text.document import Document, Query
from rankattack.core.utils.jsonl import stream_jsonl_lines
from rankattack.rank.ranked_list import RankedList
from rankattack.rank.ranker import Ranker

ATTEMPTED = "attempted"
SKIPPED = "skipped"


@dataclass(frozen=True)
class AttackResult:
    """
    Outcome of one attack on one document of a ranked list.

    Skipped attacks (no query center, no substitution candidate) keep their original
    rank and score and leave the other fields empty.
    """

    query_id: str
    doc_id: str
    strategy: str
    status: str
    orig_rank: int
    orig_score: float
    new_rank: Optional[int] = None
    new_score: Optional[float] = None
    edit: Optional[Edit] = None
    ss: Optional[float] = None
    pp: Optional[float] = None
    skip_reason: Optional[str] = None

    def __post_init__(self):
        if self.status not in (ATTEMPTED, SKIPPED):
            raise ValueError(f"Unknown attack status {self.status}")
        if self.status == ATTEMPTED and (
            self.new_rank is None or self.new_score is None or self.edit is None or self.pp is None
        ):
            raise ValueError(f"Attempted attack on {self.doc_id} has missing fields")
        if self.status == ATTEMPTED and self.pp is not None and self.pp <= 0:
            raise ValueError(f"Attempted attack on {self.doc_id} has a non-positive PP")

    @classmethod
    def skipped(
        cls,
        query_id: str,
        doc_id: str,
        strategy: str,
        orig_rank: int,
        orig_score: float,
        reason: str,
    ) -> "AttackResult":
        return cls(
            query_id, doc_id, strategy, SKIPPED, orig_rank, orig_score, skip_reason=reason
        )

    @property
    def attempted(self) -> bool:
        return self.status == ATTEMPTED

    @property
    def success(self) -> bool:
        return self.attempted and self.new_rank is not None and self.new_rank < self.orig_rank

    @property
    def rank_boost(self) -> Optional[int]:
        return None if self.new_rank is None else self.orig_rank - self.new_rank

    @property
    def score_boost(self) -> Optional[float]:
        return None if self.new_score is None else self.new_score - self.orig_score

    def to_dict(self) -> dict:
        return {
            "query_id": self.query_id,
            "doc_id": self.doc_id,
            "strategy": self.strategy,
            "status": self.status,
            "orig_rank": self.orig_rank,
            "orig_score": self.orig_score,
            "new_rank": self.new_rank,
            "new_score": self.new_score,
            "success": self.success,
            "rb": self.rank_boost,
            "sb": self.score_boost,
            "edit": None if self.edit is None else self.edit.to_dict(),
            "ss": self.ss,
            "pp": self.pp,
            "skip_reason": self.skip_reason,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AttackResult":
        edit = data.get("edit")
        return cls(
            query_id=data["query_id"],
            doc_id=data["doc_id"],
            strategy=data["strategy"],
            status=data["status"],
            orig_rank=int(data["orig_rank"]),
            orig_score=float(data["orig_score"]),
            new_rank=None if data.get("new_rank") is None else int(data["new_rank"]),
            new_score=None if data.get("new_score") is None else float(data["new_score"]),
            edit=None if edit is None else Edit.from_dict(edit),
            ss=data.get("ss"),
            pp=data.get("pp"),
            skip_reason=data.get("skip_reason"),
        )


def perturbation_pct(d: Document, edit: Edit) -> float:
    """
    Percentage of the original document's tokens modified by the edit.
    A single-word edit always modifies exactly one token.
    """
    if len(d) == 0:
        raise DegenerateInputError(f"Document {d.doc_id} is empty, PP is undefined")
    return 100.0 * 1 / len(d)


def evaluate_attack(
    q: Query,
    ranked_list: RankedList,
    d: Document,
    perturbed: Document,
    edit: Edit,
    ranker: Ranker,
    store: EmbeddingStore,
    strategy: str,
) -> AttackResult:
    """
    Replaces the score of `d` in the ranked list by f(q, perturbed), re-sorts the list
    and reads the new rank of the document. The attack succeeds iff the rank strictly
    improves.
    """
    orig = ranked_list.entry(d.doc_id)
    new_score = ranker.score(q, perturbed)
    new_rank = ranked_list.rescored(d.doc_id, new_score).rank_of(d.doc_id)

    try:
        ss: Optional[float] = document_similarity(d, perturbed, store)
    except DegenerateInputError:
        logging.warning(f"Similarity of {d.doc_id} is undefined for query {q.query_id}")
        ss = None

    return AttackResult(
        query_id=q.query_id,
        doc_id=d.doc_id,
        strategy=strategy,
        status=ATTEMPTED,
        orig_rank=orig.rank,
        orig_score=orig.score,
        new_rank=new_rank,
        new_score=new_score,
        edit=edit,
        ss=ss,
        pp=perturbation_pct(d, edit),
    )


def load_results(path: str) -> List[AttackResult]:
    """
    Reads back an AttackResult JSONL file.
    """
    results = []
    for lineno, record in stream_jsonl_lines(path):
        try:
            results.append(AttackResult.from_dict(record))
        except (KeyError, TypeError, ValueError) as e:
            raise DataError(f"{path}:{lineno}: malformed attack result ({e})") from e
    return results
