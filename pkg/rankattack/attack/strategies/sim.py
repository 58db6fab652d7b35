from typing import Tuple

from rankattack.attack.edit import Edit
from rankattack.attack.perturbations import attack_sim
from rankattack.attack.strategy import AttackStrategy, AttackTarget
from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.text.document import Document


class OneWordSim(AttackStrategy):
    """
    Substitutes the document token most similar to the query center by the query center.
    """

    def __init__(self, store: EmbeddingStore, **kwargs):
        super().__init__("one_word_sim")
        self.store = store

    def _attack_impl(self, target: AttackTarget) -> Tuple[Document, Edit]:
        return attack_sim(target.center, target.document, self.store)
