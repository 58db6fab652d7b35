from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence, final

import numpy as np

from rankattack.core.text.document import Document, Query
from rankattack.rank.ranked_list import RankedList


@dataclass(frozen=True)
class RankerParams:
    """
    :param lambda_pos: Position-decay strength, the weight of position i is 1 / (1 + lambda_pos * i).
    :param beta: Margin of the pairwise hinge loss.
    :param seed: Seed of any randomized initialization.
    :param loss_top_m: Restricts the hinge loss to the top-m competitors (None for the full list).
    """

    lambda_pos: float = 0.01
    beta: float = 1.0
    seed: int = 0
    loss_top_m: Optional[int] = None

    def __post_init__(self):
        if self.lambda_pos < 0:
            raise ValueError(f"lambda_pos must be non-negative, got {self.lambda_pos}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.loss_top_m is not None and self.loss_top_m < 1:
            raise ValueError(f"loss_top_m must be at least 1, got {self.loss_top_m}")


@dataclass(frozen=True)
class TokenGradient:
    """
    Gradient of the hinge loss with respect to the input embedding of the token at
    `position`, and its importance (squared Euclidean norm).
    """

    position: int
    grad: np.ndarray
    importance: float


def hinge_loss_value(score: float, competitor_scores: np.ndarray, beta: float) -> float:
    """
    sum over competitors d' of max(0, beta - f(q, d) + f(q, d'))
    """
    return float(np.maximum(0.0, beta - score + competitor_scores).sum())


def active_hinges(score: float, competitor_scores: np.ndarray, beta: float) -> int:
    """
    Number of competitors whose hinge term is strictly positive.
    """
    return int(np.count_nonzero(beta - score + competitor_scores > 0.0))


class Ranker(ABC):
    """
    Scoring interface f(q, d) of a ranker that reranks first-stage candidates.
    """

    name: str = "ranker"

    def __init__(self, params: Optional[RankerParams] = None, **kwargs) -> None:
        self.params = params if params is not None else RankerParams()

    @property
    def supports_gradients(self) -> bool:
        return False

    @abstractmethod
    def score(self, q: Query, d: Document) -> float:
        """
        Returns the relevance score f(q, d).
        """
        pass

    @final
    def rerank(self, q: Query, candidates: Sequence[Document]) -> RankedList:
        """
        Scores every candidate and sorts them by descending score, ties by ascending doc_id.
        """
        if len(candidates) == 0:
            raise ValueError(f"No candidates to rerank for query {q.query_id}")
        return RankedList.from_scores(
            q.query_id, ((d.doc_id, self.score(q, d)) for d in candidates)
        )

    def hinge_loss(self, q: Query, d: Document, ranked_list: RankedList) -> float:
        """
        Pairwise hinge loss of `d` against the other documents of the ranked list.
        Competitor scores are read from the list; only f(q, d) is computed.
        """
        competitors = ranked_list.competitor_scores(d.doc_id, self.params.loss_top_m)
        return hinge_loss_value(self.score(q, d), competitors, self.params.beta)


class GradientRanker(Ranker):
    """
    A ranker exposing the gradient of its hinge loss with respect to the token embeddings.
    """

    @property
    def supports_gradients(self) -> bool:
        return True

    @abstractmethod
    def token_gradients(
        self, q: Query, d: Document, ranked_list: RankedList
    ) -> List[TokenGradient]:
        """
        Returns one TokenGradient per token of `d`, in position order.
        """
        pass
