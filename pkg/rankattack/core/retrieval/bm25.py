from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple
import json
import logging
import math

import tqdm

from rankattack.core.errors import DataError
from rankattack.core.text.document import Document, Query, Token
from rankattack.core.utils.jsonl import open_text

DEFAULT_K1 = 0.9
DEFAULT_B = 0.4


@dataclass(frozen=True)
class Bm25Index:
    """
    Inverted index over a corpus with the statistics needed by Okapi BM25.

    Postings list the documents of each term in corpus order, with their term frequency.
    """

    postings: Dict[str, List[Tuple[str, int]]]
    doc_lengths: Dict[str, int]
    avg_doc_len: float
    doc_count: int
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B
    stopwords: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.k1 <= 0:
            raise ValueError(f"k1 must be positive, got {self.k1}")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError(f"b must be in [0, 1], got {self.b}")

    def document_frequency(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def idf(self, term: str) -> float:
        df = self.document_frequency(term)
        return math.log(1.0 + (self.doc_count - df + 0.5) / (df + 0.5))

    def term_score(self, term: str, tf: int, doc_len: int) -> float:
        """
        Okapi BM25 contribution of one query term occurring `tf` times in a document.
        """
        if tf == 0:
            return 0.0
        norm = self.k1 * ((1.0 - self.b) + self.b * doc_len / self.avg_doc_len)
        return self.idf(term) * tf * (self.k1 + 1.0) / (tf + norm)

    def query_terms(self, query: Query) -> List[str]:
        return [norm for norm in query.norms() if norm not in self.stopwords]


def build_index(
    corpus: Sequence[Document],
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
    stopwords: Iterable[str] = (),
) -> Bm25Index:
    """
    Builds the inverted index of a corpus. Stopwords, if any, are neither indexed
    nor counted in the document lengths.
    """
    if len(corpus) == 0:
        raise DataError("Cannot index an empty corpus")

    stopwords = frozenset(stopwords)
    postings: Dict[str, List[Tuple[str, int]]] = defaultdict(list)
    doc_lengths: Dict[str, int] = {}

    for document in tqdm.tqdm(corpus, "Indexing documents...", disable=len(corpus) < 1000):
        if document.doc_id in doc_lengths:
            raise DataError(f"Duplicate document id {document.doc_id}")
        terms = [norm for norm in document.norms() if norm not in stopwords]
        doc_lengths[document.doc_id] = len(terms)
        for term, tf in Counter(terms).items():
            postings[term].append((document.doc_id, tf))

    avg_doc_len = sum(doc_lengths.values()) / len(doc_lengths)
    if avg_doc_len == 0:
        raise DataError("Cannot index a corpus where every document is empty")

    return Bm25Index(
        postings=dict(postings),
        doc_lengths=doc_lengths,
        avg_doc_len=avg_doc_len,
        doc_count=len(doc_lengths),
        k1=k1,
        b=b,
        stopwords=stopwords,
    )


def retrieve(q: Query, index: Bm25Index, k: int = 100) -> List[Tuple[str, float]]:
    """
    Returns the top-k documents for the query by Okapi BM25 score, in descending score
    order with ties broken by ascending doc_id. Documents scoring 0 are excluded.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")

    scores: Dict[str, float] = defaultdict(float)
    for term in index.query_terms(q):
        for doc_id, tf in index.postings.get(term, ()):
            scores[doc_id] += index.term_score(term, tf, index.doc_lengths[doc_id])

    ranked = sorted(
        ((doc_id, score) for doc_id, score in scores.items() if score > 0.0),
        key=lambda x: (-x[1], x[0]),
    )
    return ranked[:k]


def score_tokens(q: Query, tokens: Sequence[Token], index: Bm25Index) -> float:
    """
    Okapi BM25 score of an arbitrary token sequence (e.g. a perturbed document) against
    the collection statistics of the index.
    """
    terms = [token.norm for token in tokens if token.norm not in index.stopwords]
    tf = Counter(terms)
    return sum(index.term_score(term, tf[term], len(terms)) for term in index.query_terms(q))


def save_index(index: Bm25Index, path: str) -> None:
    """
    Persists the index as a JSON document (gzip-compressed if the path ends in `.gz`).
    """
    payload = {
        "k1": index.k1,
        "b": index.b,
        "avg_doc_len": index.avg_doc_len,
        "doc_count": index.doc_count,
        "stopwords": sorted(index.stopwords),
        "doc_lengths": index.doc_lengths,
        "postings": {term: [list(p) for p in plist] for term, plist in index.postings.items()},
    }
    with open_text(path, "w") as fp:
        json.dump(payload, fp, sort_keys=True)
    logging.info(f"Saved BM25 index of {index.doc_count} documents to {path}")


def load_index(path: str) -> Bm25Index:
    try:
        with open_text(path) as fp:
            payload = json.load(fp)
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise DataError(f"{path}: malformed index ({e.msg})") from e

    try:
        return Bm25Index(
            postings={
                term: [(doc_id, int(tf)) for doc_id, tf in plist]
                for term, plist in payload["postings"].items()
            },
            doc_lengths={doc_id: int(n) for doc_id, n in payload["doc_lengths"].items()},
            avg_doc_len=float(payload["avg_doc_len"]),
            doc_count=int(payload["doc_count"]),
            k1=float(payload["k1"]),
            b=float(payload["b"]),
            stopwords=frozenset(payload.get("stopwords", ())),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"{path}: malformed index ({e})") from e


def load_stopwords(path: str) -> FrozenSet[str]:
    """
    Reads a stopword list, one term per line; terms are lowercased.
    """
    try:
        with open_text(path) as fp:
            return frozenset(line.strip().lower() for line in fp if line.strip())
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e}") from e
