from typing import Tuple

from rankattack.attack.edit import Edit
from rankattack.attack.perturbations import DEFAULT_TOP_K, attack_best_grad
from rankattack.attack.strategy import AttackStrategy, AttackTarget
from rankattack.core.errors import CapabilityError
from rankattack.core.text.document import Document
from rankattack.rank.ranker import Ranker


class OneWordBestGrad(AttackStrategy):
    """
    White-box insertion of the query center before the most influential token,
    searching the top-k positions by hinge-loss gradient norm.
    """

    def __init__(self, ranker: Ranker, k: int = DEFAULT_TOP_K, **kwargs):
        super().__init__("one_word_best_grad")
        if not ranker.supports_gradients:
            raise CapabilityError(
                f"one_word_best_grad needs gradients, ranker {ranker.name} does not expose them"
            )
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        self.ranker = ranker
        self.k = k

    def _attack_impl(self, target: AttackTarget) -> Tuple[Document, Edit]:
        return attack_best_grad(
            target.query,
            target.center,
            target.document,
            target.ranked_list,
            self.ranker,
            self.k,
        )
