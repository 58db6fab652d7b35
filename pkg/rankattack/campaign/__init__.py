from .config import CampaignConfig
from .runner import run_campaign, attack_query, prepare_campaign

__all__ = ["CampaignConfig", "run_campaign", "attack_query", "prepare_campaign"]
