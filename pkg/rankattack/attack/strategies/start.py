from typing import Tuple

from rankattack.attack.edit import Edit
from rankattack.attack.perturbations import attack_start
from rankattack.attack.strategy import AttackStrategy, AttackTarget
from rankattack.core.text.document import Document


class OneWordStart(AttackStrategy):
    """
    Inserts the query center at the beginning of the target document.
    """

    def __init__(self, **kwargs):
        super().__init__("one_word_start")

    def _attack_impl(self, target: AttackTarget) -> Tuple[Document, Edit]:
        return attack_start(target.center, target.document)
