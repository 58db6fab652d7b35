from .edit import Edit, INSERT, SUBSTITUTE
from .perturbations import attack_start, attack_sim, attack_best_grad, score_insertions
from .strategy import AttackStrategy, AttackTarget
from .registry import AttackStrategyRegistry

__all__ = [
    "Edit",
    "INSERT",
    "SUBSTITUTE",
    "attack_start",
    "attack_sim",
    "attack_best_grad",
    "score_insertions",
    "AttackStrategy",
    "AttackTarget",
    "AttackStrategyRegistry",
]
