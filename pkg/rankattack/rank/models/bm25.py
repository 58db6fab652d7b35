from typing import Optional

from rankattack.core.retrieval.bm25 import Bm25Index, score_tokens
from rankattack.core.text.document import Document, Query
from rankattack.rank.ranker import Ranker, RankerParams


class Bm25Ranker(Ranker):
    """
    Black-box lexical ranker: f(q, d) is the Okapi BM25 score of the (possibly
    perturbed) document against the statistics of the first-stage index.
    It exposes no gradients.
    """

    name = "bm25"

    def __init__(self, index: Bm25Index, params: Optional[RankerParams] = None, **kwargs) -> None:
        super().__init__(params)
        self.index = index

    def score(self, q: Query, d: Document) -> float:
        return score_tokens(q, d.tokens, self.index)
