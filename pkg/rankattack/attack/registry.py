from typing import Tuple

from .strategy import AttackStrategy
from .strategies.start import OneWordStart
from .strategies.sim import OneWordSim
from .strategies.best_grad import OneWordBestGrad


class AttackStrategyRegistry:
    """
    Class for storing and retrieving attack strategies based on their name.
    """

    # strategy name -> (class, mandatory constructor arguments)
    __STRATEGIES: dict[str, Tuple[type, Tuple[str, ...]]] = {
        "one_word_start": (OneWordStart, ()),
        "one_word_sim": (OneWordSim, ("store",)),
        "one_word_best_grad": (OneWordBestGrad, ("ranker",)),
    }

    @classmethod
    def names(cls) -> Tuple[str, ...]:
        return tuple(cls.__STRATEGIES)

    @classmethod
    def get_strategy(cls, name: str, **kwargs) -> AttackStrategy:
        if name.lower().strip() not in cls.__STRATEGIES:
            raise ValueError(f"Unknown attack strategy {name}")

        strategy_class, strategy_args = cls.__STRATEGIES[name.lower().strip()]
        for strategy_arg in strategy_args:
            if strategy_arg not in kwargs:
                raise ValueError(f"Missing argument {strategy_arg} for strategy {name}")
        return strategy_class(**kwargs)
