from typing import List, Tuple

import numpy as np

from rankattack.attack.edit import INSERT, SUBSTITUTE, Edit
from rankattack.core.embeddings.semantics import QueryCenter, first_maximum
from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.errors import CapabilityError, DegenerateInputError, NoCandidateError
from rankattack.core.text.document import Document, Query
from rankattack.rank.ranked_list import RankedList
from rankattack.rank.ranker import GradientRanker, Ranker

DEFAULT_TOP_K = 20


def attack_start(center: QueryCenter, d: Document) -> Tuple[Document, Edit]:
    """
    Inserts the query center at the beginning of the document.
    """
    edit = Edit(INSERT, 0, center.as_token())
    return edit.apply(d), edit


def attack_sim(center: QueryCenter, d: Document, store: EmbeddingStore) -> Tuple[Document, Edit]:
    """
    Substitutes the in-vocabulary token most similar to the query center (but not
    identical to it) by the query center. Ties go to the smallest position.

    :raises NoCandidateError: if every token is out of vocabulary or equal to the center.
    """
    positions = []
    rows = []
    for i, norm in enumerate(d.norms()):
        row = store.get_index(norm)
        if row is not None and norm != center.token:
            positions.append(i)
            rows.append(row)
    if not positions:
        raise NoCandidateError(
            f"Document {d.doc_id} has no in-vocabulary token different from {center.token}"
        )

    similarities = store.vectors_norm[rows] @ store.get_vector(center.token, norm=True)
    position = positions[first_maximum(similarities)]
    edit = Edit(SUBSTITUTE, position, center.as_token(), d.tokens[position])
    return edit.apply(d), edit


def select_positions(importances: np.ndarray, k: int) -> List[int]:
    """
    Positions of the min(k, n) largest importances, ties broken by the smaller position.
    """
    order = sorted(range(len(importances)), key=lambda i: (-importances[i], i))
    return order[: min(k, len(order))]


def score_insertions(
    q: Query,
    center: QueryCenter,
    d: Document,
    ranked_list: RankedList,
    ranker: Ranker,
    k: int = DEFAULT_TOP_K,
) -> List[Tuple[int, float]]:
    """
    Selects the top-k token positions by gradient importance and scores the document
    obtained by inserting the query center right before each of them.

    :return: (insertion position, score) of every evaluated candidate, in selection order.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not isinstance(ranker, GradientRanker):
        raise CapabilityError(f"Ranker {ranker.name} does not expose gradients")
    if len(d) == 0:
        raise DegenerateInputError(f"Document {d.doc_id} is empty, there is no position to rank")

    gradients = ranker.token_gradients(q, d, ranked_list)
    importances = np.array([g.importance for g in gradients])

    token = center.as_token()
    scored = []
    for position in select_positions(importances, k):
        candidate = Edit(INSERT, position, token).apply(d)
        scored.append((position, ranker.score(q, candidate)))
    return scored


def attack_best_grad(
    q: Query,
    center: QueryCenter,
    d: Document,
    ranked_list: RankedList,
    ranker: Ranker,
    k: int = DEFAULT_TOP_K,
) -> Tuple[Document, Edit]:
    """
    Gradient-guided insertion: among the top-k positions by importance, inserts the
    query center before the token whose insertion yields the highest score.
    Score ties go to the smallest insertion position.
    """
    scored = score_insertions(q, center, d, ranked_list, ranker, k)
    position, _ = min(scored, key=lambda x: (-x[1], x[0]))
    edit = Edit(INSERT, position, center.as_token())
    return edit.apply(d), edit
