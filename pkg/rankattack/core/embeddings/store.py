from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from rankattack.core.errors import DataError
from rankattack.core.utils.jsonl import open_text


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """
    Cosine similarity of two non-zero vectors of equal length, clamped to [-1, 1].
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"Cannot compare vectors of shapes {a.shape} and {b.shape}")
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("Cosine similarity is undefined for a zero vector")
    return float(np.clip(np.dot(a, b) / (norm_a * norm_b), -1.0, 1.0))


class EmbeddingStore:
    """
    Immutable mapping from normalized tokens to real vectors of a fixed dimensionality.

    The vocabulary is kept in lexicographic order, so that the first maximum of an
    exhaustive scan is also the lexicographically smallest token.
    """

    def __init__(self, entries: Dict[str, Sequence[float]]) -> None:
        tokens = sorted(entries)
        if not tokens:
            self.dim = 0
            self.tokens: Tuple[str, ...] = ()
            self.vectors = np.zeros((0, 0))
            self.vectors_norm = np.zeros((0, 0))
            self.index: Dict[str, int] = {}
            return

        vectors = np.array([entries[t] for t in tokens], dtype=np.float64)
        if vectors.ndim != 2:
            raise ValueError("All vectors must have the same dimensionality")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("Embedding vectors must have finite components")
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            zero = tokens[int(np.argmin(norms))]
            raise ValueError(f"Zero vector for token {zero}")

        self.dim = vectors.shape[1]
        self.tokens = tuple(tokens)
        self.vectors = vectors
        self.vectors.setflags(write=False)
        self.vectors_norm = vectors / norms[:, None]
        self.vectors_norm.setflags(write=False)
        self.index = {t: i for i, t in enumerate(tokens)}

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def __repr__(self) -> str:
        return f"EmbeddingStore(dim={self.dim}, entries={len(self)})"

    def get_index(self, token: str, default: Optional[int] = None) -> Optional[int]:
        return self.index.get(token, default)

    def get_vector(self, token: str, norm: bool = False) -> np.ndarray:
        """
        Returns the vector of the token, unit-normalized if `norm` is set.

        :raises KeyError: if the token is out of vocabulary.
        """
        i = self.index[token]
        return self.vectors_norm[i] if norm else self.vectors[i]

    def get_vectors(self, tokens: Iterable[str]) -> np.ndarray:
        """
        Stacks the raw vectors of the in-vocabulary tokens, skipping the others.
        """
        rows = [self.index[t] for t in tokens if t in self.index]
        return self.vectors[rows] if rows else np.zeros((0, self.dim))


def load_embeddings(path: str) -> EmbeddingStore:
    """
    Loads a text embedding file with one `token v1 v2 ... vdim` entry per line.

    The dimensionality is inferred from the first line; every later line must match it.
    """
    entries: Dict[str, List[float]] = {}
    dim = None

    try:
        fp = open_text(path)
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e}") from e

    with fp:
        for lineno, line in enumerate(fp, start=1):
            parts = line.split()
            if not parts:
                continue
            token, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise DataError(f"{path}:{lineno}: entry {token} has no components")
            if len(values) != dim:
                raise DataError(
                    f"{path}:{lineno}: expected {dim} components for {token}, found {len(values)}"
                )
            if token in entries:
                raise DataError(f"{path}:{lineno}: duplicate token {token}")
            try:
                vector = [float(v) for v in values]
            except ValueError as e:
                raise DataError(f"{path}:{lineno}: {e}") from e
            if not all(np.isfinite(vector)):
                raise DataError(f"{path}:{lineno}: non-finite component for {token}")
            if not any(vector):
                raise DataError(f"{path}:{lineno}: zero vector for {token}")
            entries[token] = vector

    if not entries:
        raise DataError(f"{path}: no embeddings found")

    store = EmbeddingStore(entries)
    logging.info(f"Loaded {len(store)} embeddings of dimension {store.dim} from {path}")
    return store
