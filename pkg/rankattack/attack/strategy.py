from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple, final

from rankattack.attack.edit import INSERT, Edit
from rankattack.core.embeddings.semantics import QueryCenter
from rankattack.core.text.document import Document, Query
from rankattack.rank.ranked_list import RankedList


@dataclass(frozen=True)
class AttackTarget:
    """
    A document to promote in the ranked list of a query.
    """

    query: Query
    center: QueryCenter
    document: Document
    ranked_list: RankedList


class AttackStrategy(ABC):
    def __init__(self, strategy_name: str, **kwargs):
        self.strategy_name = strategy_name

    @abstractmethod
    def _attack_impl(self, target: AttackTarget) -> Tuple[Document, Edit]:
        """
        Implementation method for the attack strategy.
        """
        pass

    @final
    def attack(self, target: AttackTarget) -> Tuple[Document, Edit]:
        """
        Returns the perturbed document and the single edit that produced it.

        :param target: The document to promote and its ranking context.
        """
        perturbed, edit = self._attack_impl(target)

        # exactly one edit separates the two documents
        expected = len(target.document) + (1 if edit.kind == INSERT else 0)
        assert len(perturbed) == expected, f"{self.strategy_name} produced more than one edit"
        return perturbed, edit
