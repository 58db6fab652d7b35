from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple
import logging

import numpy as np

from rankattack.core.text.document import Document, Query
from rankattack.core.text.tokenizer import tokenize
from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.utils.jsonl import open_text


@dataclass(frozen=True)
class SyntheticCollection:
    """
    A seeded topic-structured collection: documents mix the words of one topic with
    common words, a few off-topic words and out-of-vocabulary rare words; queries are
    drawn from the head of one topic.
    """

    corpus: List[Document]
    queries: List[Query]
    embeddings: Dict[str, np.ndarray]

    def store(self) -> EmbeddingStore:
        return EmbeddingStore(self.embeddings)


def _topic_word(topic: int, i: int) -> str:
    return f"topic{topic}word{i}"


def generate_collection(
    n_docs: int = 2000,
    n_queries: int = 50,
    n_topics: int = 25,
    words_per_topic: int = 30,
    n_common: int = 300,
    n_rare: int = 500,
    dim: int = 50,
    doc_len: Tuple[int, int] = (40, 90),
    query_len: Tuple[int, int] = (2, 4),
    topic_ratio: float = 0.3,
    off_topic_ratio: float = 0.08,
    rare_ratio: float = 0.04,
    topic_noise: float = 0.6,
    seed: int = 0,
) -> SyntheticCollection:
    rng = np.random.default_rng(seed)

    embeddings: Dict[str, np.ndarray] = {}
    centers = rng.normal(size=(n_topics, dim))
    centers /= np.linalg.norm(centers, axis=1, keepdims=True)
    for t in range(n_topics):
        noise = rng.normal(scale=topic_noise / np.sqrt(dim), size=(words_per_topic, dim))
        for i in range(words_per_topic):
            embeddings[_topic_word(t, i)] = centers[t] + noise[i]
    common_words = [f"common{i}" for i in range(n_common)]
    for word in common_words:
        embeddings[word] = rng.normal(size=dim) / np.sqrt(dim)
    # rare words never get a vector
    rare_words = [f"rare{i}" for i in range(n_rare)]

    # Zipf-like preference for the head of each topic
    topic_weights = 1.0 / np.arange(1, words_per_topic + 1)
    topic_weights /= topic_weights.sum()

    corpus = []
    for n in range(n_docs):
        topic = int(rng.integers(n_topics))
        length = int(rng.integers(doc_len[0], doc_len[1] + 1))
        draws = rng.random(length)
        on_topic = rng.choice(words_per_topic, size=length, p=topic_weights)
        other_topics = rng.integers(n_topics, size=length)
        other_words = rng.integers(words_per_topic, size=length)
        rares = rng.integers(n_rare, size=length)
        commons = rng.integers(n_common, size=length)

        words = []
        for i, u in enumerate(draws):
            if u < topic_ratio:
                words.append(_topic_word(topic, int(on_topic[i])))
            elif u < topic_ratio + off_topic_ratio:
                words.append(_topic_word(int(other_topics[i]), int(other_words[i])))
            elif u < topic_ratio + off_topic_ratio + rare_ratio:
                words.append(rare_words[int(rares[i])])
            else:
                words.append(common_words[int(commons[i])])
        corpus.append(Document(f"D{n:05d}", tuple(tokenize(" ".join(words)))))

    queries = []
    head = max(2, words_per_topic // 3)
    for n in range(n_queries):
        topic = int(rng.integers(n_topics))
        length = int(rng.integers(query_len[0], query_len[1] + 1))
        picks = rng.choice(head, size=min(length, head), replace=False)
        text = " ".join(_topic_word(topic, int(i)) for i in picks)
        queries.append(Query(f"Q{n:03d}", tuple(tokenize(text))))

    return SyntheticCollection(corpus, queries, embeddings)


def write_collection(collection: SyntheticCollection, output_dir: str) -> Dict[str, str]:
    """
    Writes corpus.tsv, queries.tsv and embeddings.txt in the ingestion formats.
    """
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "corpus": str(out / "corpus.tsv"),
        "queries": str(out / "queries.tsv"),
        "embeddings": str(out / "embeddings.txt"),
    }

    with open_text(paths["corpus"], "w") as fp:
        for document in collection.corpus:
            fp.write(f"{document.doc_id}\t{document.text()}\n")
    with open_text(paths["queries"], "w") as fp:
        for query in collection.queries:
            fp.write(f"{query.query_id}\t{query.text()}\n")
    with open_text(paths["embeddings"], "w") as fp:
        for token in sorted(collection.embeddings):
            values = " ".join(f"{x:.6f}" for x in collection.embeddings[token])
            fp.write(f"{token} {values}\n")

    logging.info(
        f"Wrote {len(collection.corpus)} documents and {len(collection.queries)} queries to {out}"
    )
    return paths
