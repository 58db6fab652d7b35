from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from rankattack.core.embeddings.store import EmbeddingStore, cosine
from rankattack.core.errors import DegenerateInputError, NoQueryCenterError
from rankattack.core.text.document import Document, Query, Token

# Cosines this close to the maximum count as tied
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class QueryCenter:
    """
    The vocabulary token closest (cosine) to the centroid of a query.
    """

    token: str
    centroid: np.ndarray
    similarity: float

    def as_token(self) -> Token:
        return Token(self.token, self.token)

    def to_dict(self) -> dict:
        return {"token": self.token, "similarity": self.similarity}


def first_maximum(values: np.ndarray) -> int:
    """
    Index of the first value within TIE_TOLERANCE of the maximum.
    """
    return int(np.flatnonzero(values >= values.max() - TIE_TOLERANCE)[0])


def centroid(tokens: Sequence[Token], store: EmbeddingStore) -> Optional[np.ndarray]:
    """
    Arithmetic mean of the raw vectors of the in-vocabulary tokens.
    Out-of-vocabulary tokens are ignored; returns None when no token is in vocabulary.
    """
    vectors = store.get_vectors(token.norm for token in tokens)
    if len(vectors) == 0:
        return None
    return vectors.mean(axis=0)


def nearest_token(v: np.ndarray, store: EmbeddingStore) -> Tuple[str, float]:
    """
    Exhaustive scan for the vocabulary token maximizing cosine similarity to `v`.
    Ties go to the lexicographically smallest token.
    """
    if len(store) == 0:
        raise ValueError("Cannot search an empty embedding store")
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (store.dim,):
        raise ValueError(f"Expected a vector of length {store.dim}, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("Cannot search for the nearest token of a zero vector")

    similarities = store.vectors_norm @ (v / norm)
    # vocabulary is sorted, so the first maximum is the smallest token
    best = first_maximum(similarities)
    token = store.tokens[best]
    return token, cosine(store.get_vector(token), v)


def query_center(q: Query, store: EmbeddingStore) -> QueryCenter:
    """
    Computes the centroid of the query's in-vocabulary tokens and returns the vocabulary
    token nearest to it. Query tokens are not excluded: a query term may be its own center.

    :raises NoQueryCenterError: if every query token is out of vocabulary.
    """
    v = centroid(q.tokens, store)
    if v is None:
        raise NoQueryCenterError(f"Query {q.query_id} has no in-vocabulary token")
    if np.linalg.norm(v) == 0.0:
        raise NoQueryCenterError(f"Query {q.query_id} has a zero centroid")
    token, similarity = nearest_token(v, store)
    return QueryCenter(token, v, similarity)


def document_similarity(d: Document, perturbed: Document, store: EmbeddingStore) -> float:
    """
    Similarity score of a document and its perturbation: the cosine of the mean word
    embeddings of both documents, clamped below at 0.

    :raises DegenerateInputError: if a document has no in-vocabulary token.
    """
    mean = centroid(d.tokens, store)
    mean_perturbed = centroid(perturbed.tokens, store)
    if mean is None or mean_perturbed is None:
        raise DegenerateInputError(
            f"Document {d.doc_id} has no in-vocabulary token, similarity is undefined"
        )
    if np.linalg.norm(mean) == 0.0 or np.linalg.norm(mean_perturbed) == 0.0:
        return 0.0
    return max(0.0, cosine(mean, mean_perturbed))
