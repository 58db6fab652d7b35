from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.errors import DegenerateInputError
from rankattack.core.text.document import Document, Query
from rankattack.rank.ranked_list import RankedList
from rankattack.rank.ranker import (
    GradientRanker,
    RankerParams,
    TokenGradient,
    active_hinges,
)


@dataclass(frozen=True)
class SoftMatch:
    """
    Intermediate values of a soft term-matching score.

    :param score: f(q, d).
    :param argmax: For every query row, the column (in-vocabulary document token) attaining the max.
    :param cosines: Cosine matrix between query rows and document columns.
    :param weights: Position weight of every column.
    """

    score: float
    argmax: np.ndarray
    cosines: np.ndarray
    weights: np.ndarray


class SoftMatchRanker(GradientRanker):
    """
    Reference ranker scoring a document by soft term matching in the embedding space:

        f(q, d) = sum_j max_i w(i) * cos(v(q_j), e_{t_i}),  w(i) = 1 / (1 + lambda_pos * i)

    where j ranges over the in-vocabulary query tokens and i over the in-vocabulary
    document positions. Its input embeddings are the store vectors, so gradients are
    taken in the same space the query center lives in.
    """

    name = "soft-match"

    def __init__(
        self, store: EmbeddingStore, params: Optional[RankerParams] = None, **kwargs
    ) -> None:
        super().__init__(params)
        self.store = store

    def query_vectors(self, q: Query) -> np.ndarray:
        """
        Unit-normalized vectors of the in-vocabulary query tokens, one row per token.
        """
        rows = [self.store.get_index(norm) for norm in q.norms()]
        rows = [row for row in rows if row is not None]
        if not rows:
            raise DegenerateInputError(f"Query {q.query_id} has no in-vocabulary token")
        return self.store.vectors_norm[rows]

    def document_embeddings(self, d: Document):
        """
        Returns the positions of the in-vocabulary tokens of `d` and their input embeddings.
        """
        positions = []
        rows = []
        for i, norm in enumerate(d.norms()):
            row = self.store.get_index(norm)
            if row is not None:
                positions.append(i)
                rows.append(row)
        embeddings = self.store.vectors[rows] if rows else np.zeros((0, self.store.dim))
        return np.array(positions, dtype=np.int64), np.array(embeddings, dtype=np.float64)

    def score_embeddings(
        self, query_vectors: np.ndarray, positions: np.ndarray, embeddings: np.ndarray
    ) -> SoftMatch:
        weights = 1.0 / (1.0 + self.params.lambda_pos * positions.astype(np.float64))
        if len(positions) == 0:
            return SoftMatch(
                0.0,
                np.zeros(len(query_vectors), dtype=np.int64),
                np.zeros((len(query_vectors), 0)),
                weights,
            )
        unit = embeddings / np.linalg.norm(embeddings, axis=1, keepdims=True)
        cosines = np.clip(query_vectors @ unit.T, -1.0, 1.0)
        weighted = cosines * weights[None, :]
        # np.argmax returns the first maximum, i.e. the smallest position
        argmax = np.argmax(weighted, axis=1)
        score = float(weighted[np.arange(len(argmax)), argmax].sum())
        return SoftMatch(score, argmax, cosines, weights)

    def score(self, q: Query, d: Document) -> float:
        positions, embeddings = self.document_embeddings(d)
        return self.score_embeddings(self.query_vectors(q), positions, embeddings).score

    def token_gradients(
        self, q: Query, d: Document, ranked_list: RankedList
    ) -> List[TokenGradient]:
        """
        Analytic gradient of the hinge loss with respect to each token embedding.

        Only f(q, d) depends on the embeddings of `d`, so the gradient is -A times the
        gradient of the score, A being the number of active hinge terms. The score only
        depends on the embeddings selected by some query token's max.
        """
        competitors = ranked_list.competitor_scores(d.doc_id, self.params.loss_top_m)
        query_vectors = self.query_vectors(q)
        positions, embeddings = self.document_embeddings(d)
        match = self.score_embeddings(query_vectors, positions, embeddings)

        grads = np.zeros((len(d), self.store.dim))
        n_active = active_hinges(match.score, competitors, self.params.beta)
        if n_active > 0 and len(positions) > 0:
            for j, column in enumerate(match.argmax):
                e = embeddings[column]
                e_norm = np.linalg.norm(e)
                # d cos(u, e) / de = (u/|u| - cos * e/|e|) / |e|
                grad_cos = (query_vectors[j] - match.cosines[j, column] * e / e_norm) / e_norm
                grads[positions[column]] -= n_active * match.weights[column] * grad_cos

        return [
            TokenGradient(i, grads[i], float(np.dot(grads[i], grads[i])))
            for i in range(len(d))
        ]
