from .ranked_list import RankedEntry, RankedList
from .ranker import Ranker, GradientRanker, RankerParams, TokenGradient
from .models.soft_match import SoftMatchRanker
from .models.bm25 import Bm25Ranker
from .registry import RankerRegistry

__all__ = [
    "RankedEntry",
    "RankedList",
    "Ranker",
    "GradientRanker",
    "RankerParams",
    "TokenGradient",
    "SoftMatchRanker",
    "Bm25Ranker",
    "RankerRegistry",
]
