from .bm25 import (
    Bm25Index,
    build_index,
    retrieve,
    score_tokens,
    save_index,
    load_index,
    load_stopwords,
)

__all__ = [
    "Bm25Index",
    "build_index",
    "retrieve",
    "score_tokens",
    "save_index",
    "load_index",
    "load_stopwords",
]
