from typing import Tuple

from rankattack.rank.ranker import Ranker
from rankattack.rank.models.soft_match import SoftMatchRanker
from rankattack.rank.models.bm25 import Bm25Ranker


class RankerRegistry:
    """
    Class for storing and retrieving rankers based on their name.
    """

    # The registry is a dict of ranker names to a tuple of class and mandatory arguments to init the class
    __RANKERS: dict[str, Tuple[type, Tuple[str, ...]]] = {
        "soft-match": (SoftMatchRanker, ("store",)),
        "bm25": (Bm25Ranker, ("index",)),
    }

    @classmethod
    def names(cls) -> Tuple[str, ...]:
        return tuple(cls.__RANKERS)

    @classmethod
    def get_ranker(cls, name: str, **kwargs) -> Ranker:
        if name.lower().strip() not in cls.__RANKERS:
            raise ValueError(f"Unknown ranker {name}")

        ranker_class, ranker_args = cls.__RANKERS[name.lower().strip()]
        for ranker_arg in ranker_args:
            if ranker_arg not in kwargs:
                raise ValueError(f"Missing argument {ranker_arg} for ranker {name}")
        return ranker_class(**kwargs)
