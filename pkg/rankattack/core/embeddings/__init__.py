from .store import EmbeddingStore, load_embeddings, cosine
from .semantics import (
    QueryCenter,
    centroid,
    nearest_token,
    query_center,
    document_similarity,
)

__all__ = [
    "EmbeddingStore",
    "load_embeddings",
    "cosine",
    "QueryCenter",
    "centroid",
    "nearest_token",
    "query_center",
    "document_similarity",
]
