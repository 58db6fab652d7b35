from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, Optional, Sequence, Tuple, Union
import tomllib

from rankattack.attack.registry import AttackStrategyRegistry
from rankattack.core.errors import ConfigurationError
from rankattack.core.retrieval.bm25 import DEFAULT_B, DEFAULT_K1
from rankattack.rank.registry import RankerRegistry

ALL_STRATEGIES = ("one_word_start", "one_word_sim", "one_word_best_grad")


def parse_strategies(value: Union[str, Sequence[str]]) -> Tuple[str, ...]:
    """
    Accepts a comma-separated string or a sequence of strategy names.
    """
    if isinstance(value, str):
        names = value.split(",")
    else:
        names = [str(v) for v in value]
    return tuple(name.strip().lower() for name in names if name.strip())


@dataclass(frozen=True)
class CampaignConfig:
    """
    Configuration of an attack campaign: which documents of which ranked lists are
    attacked, by which strategies, against which ranker.

    The target rank range [rank_lo, rank_hi] defaults to 11..100, the top-10 being
    unlikely to be promoted further.
    """

    corpus: str = ""
    queries: str = ""
    embeddings: str = ""
    index: Optional[str] = None
    corpus_format: Optional[str] = None
    stopwords: Optional[str] = None
    strategies: Tuple[str, ...] = ALL_STRATEGIES
    ranker: str = "soft-match"
    topk: int = 100
    rank_lo: int = 11
    rank_hi: int = 100
    k: int = 20
    beta: float = 1.0
    lambda_pos: float = 0.01
    # None: DEFAULT_K1 / DEFAULT_B, or the values a loaded index was built with
    k1: Optional[float] = None
    b: Optional[float] = None
    loss_top_m: Optional[int] = None
    output_dir: str = "runs/oneword"
    seed: int = 0
    n_workers: int = 1

    def validate(self) -> "CampaignConfig":
        for name in ("corpus", "queries", "embeddings"):
            if not getattr(self, name):
                raise ConfigurationError(f"Missing required path {name}")
        if not self.strategies:
            raise ConfigurationError("No attack strategy configured")
        for strategy in self.strategies:
            if strategy not in AttackStrategyRegistry.names():
                raise ConfigurationError(f"Unknown attack strategy {strategy}")
        if len(set(self.strategies)) != len(self.strategies):
            raise ConfigurationError(f"Duplicate strategies in {list(self.strategies)}")
        if self.ranker not in RankerRegistry.names():
            raise ConfigurationError(f"Unknown ranker {self.ranker}")
        if self.topk < 1:
            raise ConfigurationError(f"topk must be at least 1, got {self.topk}")
        if not 1 <= self.rank_lo <= self.rank_hi <= self.topk:
            raise ConfigurationError(
                f"Rank range [{self.rank_lo}, {self.rank_hi}] must satisfy 1 <= lo <= hi <= topk ({self.topk})"
            )
        if self.k < 1:
            raise ConfigurationError(f"k must be at least 1, got {self.k}")
        if self.beta <= 0:
            raise ConfigurationError(f"beta must be positive, got {self.beta}")
        if self.lambda_pos < 0:
            raise ConfigurationError(f"lambda_pos must be non-negative, got {self.lambda_pos}")
        if self.k1 is not None and self.k1 <= 0:
            raise ConfigurationError(f"k1 must be positive, got {self.k1}")
        if self.b is not None and not 0.0 <= self.b <= 1.0:
            raise ConfigurationError(f"b must be in [0, 1], got {self.b}")
        if self.loss_top_m is not None and self.loss_top_m < 1:
            raise ConfigurationError(f"loss_top_m must be at least 1, got {self.loss_top_m}")
        if self.n_workers < 1:
            raise ConfigurationError(f"n_workers must be at least 1, got {self.n_workers}")
        return self

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "CampaignConfig":
        unknown = sorted(set(values) - set(cls.field_names()))
        if unknown:
            raise ConfigurationError(f"Unknown configuration keys {unknown}")
        values = dict(values)
        try:
            if "strategies" in values:
                values["strategies"] = parse_strategies(values["strategies"])
            if "ranker" in values:
                values["ranker"] = str(values["ranker"]).lower().strip()
            config = cls(**values)
            # fire and TOML may hand over ints for floats and vice versa
            config = cls(
                **{
                    **asdict(config),
                    "topk": int(config.topk),
                    "rank_lo": int(config.rank_lo),
                    "rank_hi": int(config.rank_hi),
                    "k": int(config.k),
                    "beta": float(config.beta),
                    "lambda_pos": float(config.lambda_pos),
                    "k1": None if config.k1 is None else float(config.k1),
                    "b": None if config.b is None else float(config.b),
                    "loss_top_m": None if config.loss_top_m is None else int(config.loss_top_m),
                    "seed": int(config.seed),
                    "n_workers": int(config.n_workers),
                }
            )
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid configuration: {e}") from e
        return config.validate()

    def bm25_params(self) -> Tuple[float, float]:
        """
        The (k1, b) an index built for this campaign uses.
        """
        return (
            DEFAULT_K1 if self.k1 is None else self.k1,
            DEFAULT_B if self.b is None else self.b,
        )

    @classmethod
    def from_sources(cls, config_path: Optional[str] = None, **flags) -> "CampaignConfig":
        """
        Builds the configuration from the defaults, then the TOML file, then the flags.
        Flags left to None do not override anything.
        """
        values: Dict[str, Any] = {}
        if config_path is not None:
            values.update(load_toml(config_path))
        values.update({key: value for key, value in flags.items() if value is not None})
        return cls.from_dict(values)

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["strategies"] = list(self.strategies)
        return values


def load_toml(path: str) -> Dict[str, Any]:
    """
    Reads flat campaign keys from a TOML file; keys may also live under a [campaign] table.
    """
    try:
        with open(path, "rb") as fp:
            document = tomllib.load(fp)
    except OSError as e:
        raise ConfigurationError(f"Cannot read configuration {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"Malformed configuration {path}: {e}") from e

    values = dict(document.pop("campaign", {}))
    values.update(document)
    return values
