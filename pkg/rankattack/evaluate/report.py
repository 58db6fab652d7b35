from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from rankattack.evaluate.metrics import AttackResult

# nine rank decades, the top-10 is excluded
ISR_INTERVALS: Tuple[Tuple[int, int], ...] = tuple((lo, lo + 9) for lo in range(11, 101, 10))


@dataclass(frozen=True)
class IsrBucket:
    lo: int
    hi: int
    attempts: int
    successes: int

    @property
    def rate(self) -> Optional[float]:
        """
        Success percentage of the bucket, None when the bucket is empty.
        """
        if self.attempts == 0:
            return None
        return 100.0 * self.successes / self.attempts

    def contains(self, rank: int) -> bool:
        return self.lo <= rank <= self.hi

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "attempts": self.attempts,
            "successes": self.successes,
            "isr": self.rate,
        }


@dataclass(frozen=True)
class MetricsReport:
    """
    Aggregated metrics of a batch of attacks. SR and ISR are percentages, RB and SB are
    absolute means over every attempted attack (failures included).
    """

    sr: float
    ss_mean: float
    pp_mean: float
    rb_mean: float
    sb_mean: float
    isr: Tuple[IsrBucket, ...]
    skipped_count: int
    attempted_count: int = 0
    success_count: int = 0
    rb_success_mean: float = 0.0
    sb_success_mean: float = 0.0
    strategy: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "sr": self.sr,
            "ss_mean": self.ss_mean,
            "pp_mean": self.pp_mean,
            "rb_mean": self.rb_mean,
            "sb_mean": self.sb_mean,
            "rb_success_mean": self.rb_success_mean,
            "sb_success_mean": self.sb_success_mean,
            "attempted_count": self.attempted_count,
            "success_count": self.success_count,
            "skipped_count": self.skipped_count,
            "isr": [bucket.to_dict() for bucket in self.isr],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        return cls(
            sr=data["sr"],
            ss_mean=data["ss_mean"],
            pp_mean=data["pp_mean"],
            rb_mean=data["rb_mean"],
            sb_mean=data["sb_mean"],
            isr=tuple(
                IsrBucket(b["lo"], b["hi"], b["attempts"], b["successes"]) for b in data["isr"]
            ),
            skipped_count=data["skipped_count"],
            attempted_count=data["attempted_count"],
            success_count=data["success_count"],
            rb_success_mean=data["rb_success_mean"],
            sb_success_mean=data["sb_success_mean"],
            strategy=data.get("strategy"),
        )


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) > 0 else 0.0


def interval_success(
    results: Iterable[AttackResult],
    intervals: Sequence[Tuple[int, int]] = ISR_INTERVALS,
) -> Tuple[IsrBucket, ...]:
    """
    Buckets the attempted attacks by the original rank of their document.
    """
    attempts = [0] * len(intervals)
    successes = [0] * len(intervals)
    for result in results:
        if not result.attempted:
            continue
        for i, (lo, hi) in enumerate(intervals):
            if lo <= result.orig_rank <= hi:
                attempts[i] += 1
                successes[i] += int(result.success)
                break
    return tuple(
        IsrBucket(lo, hi, attempts[i], successes[i]) for i, (lo, hi) in enumerate(intervals)
    )


def aggregate(results: Sequence[AttackResult], strategy: Optional[str] = None) -> MetricsReport:
    """
    Folds attack results into SR, SS, PP, RB, SB and ISR. Skipped attacks are only counted.
    """
    attempted = [r for r in results if r.attempted]
    succeeded = [r for r in attempted if r.success]

    return MetricsReport(
        sr=100.0 * len(succeeded) / len(attempted) if attempted else 0.0,
        ss_mean=_mean([r.ss for r in attempted if r.ss is not None]),
        pp_mean=_mean([r.pp for r in attempted if r.pp is not None]),
        rb_mean=_mean([r.rank_boost for r in attempted if r.rank_boost is not None]),
        sb_mean=_mean([r.score_boost for r in attempted if r.score_boost is not None]),
        isr=interval_success(attempted),
        skipped_count=len(results) - len(attempted),
        attempted_count=len(attempted),
        success_count=len(succeeded),
        rb_success_mean=_mean([r.rank_boost for r in succeeded if r.rank_boost is not None]),
        sb_success_mean=_mean([r.score_boost for r in succeeded if r.score_boost is not None]),
        strategy=strategy,
    )


def aggregate_by_strategy(
    results: Sequence[AttackResult], strategies: Optional[Sequence[str]] = None
) -> List[MetricsReport]:
    """
    One report per strategy, in the given order (first appearance order by default).
    """
    groups: Dict[str, List[AttackResult]] = {}
    for result in results:
        groups.setdefault(result.strategy, []).append(result)
    names = list(strategies) if strategies is not None else list(groups)
    return [aggregate(groups.get(name, []), strategy=name) for name in names]
