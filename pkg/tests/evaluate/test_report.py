from rankattack.attack.edit import INSERT, Edit
from rankattack.core.text.document import Token
from rankattack.evaluate.metrics import ATTEMPTED, AttackResult
from rankattack.evaluate.report import (
    ISR_INTERVALS,
    aggregate,
    aggregate_by_strategy,
    interval_success,
)

import numpy as np
import pytest


def result(orig_rank, new_rank, strategy="one_word_start", ss=1.0, pp=1.0, doc_id=None):
    return AttackResult(
        query_id="q",
        doc_id=doc_id or f"d{orig_rank}",
        strategy=strategy,
        status=ATTEMPTED,
        orig_rank=orig_rank,
        orig_score=1.0,
        new_rank=new_rank,
        new_score=1.0 + (orig_rank - new_rank) * 0.5,
        edit=Edit(INSERT, 0, Token.of("c")),
        ss=ss,
        pp=pp,
    )


class TestAggregate:
    def test_success_rate(self):
        report = aggregate([result(20, 10), result(30, 25), result(40, 39), result(50, 55)])
        assert report.sr == 75.0
        assert report.attempted_count == 4
        assert report.success_count == 3
        assert report.rb_mean == pytest.approx((10 + 5 + 1 - 5) / 4)
        assert report.rb_success_mean == pytest.approx((10 + 5 + 1) / 3)
        assert report.sb_mean == pytest.approx(0.5 * (10 + 5 + 1 - 5) / 4)

    def test_empty(self):
        report = aggregate([])
        assert report.sr == 0.0
        assert report.skipped_count == 0
        assert len(report.isr) == 9
        assert all(bucket.attempts == 0 and bucket.rate is None for bucket in report.isr)

    def test_skipped_are_only_counted(self):
        skipped = AttackResult.skipped("q", "d9", "one_word_sim", 15, 1.0, "no_candidate")
        report = aggregate([result(20, 10), skipped])
        assert report.sr == 100.0
        assert report.skipped_count == 1
        assert report.attempted_count == 1

    def test_undefined_similarity_is_ignored(self):
        report = aggregate([result(20, 10, ss=None), result(30, 25, ss=0.5)])
        assert report.ss_mean == 0.5

    def test_single_bucket(self):
        report = aggregate([result(15, 10), result(15, 16, doc_id="x")])
        rates = [bucket.rate for bucket in report.isr]
        assert rates[0] == 50.0
        assert all(rate is None for rate in rates[1:])

    def test_by_strategy(self):
        results = [result(20, 10, "one_word_sim"), result(20, 30, "one_word_start")]
        reports = aggregate_by_strategy(results, ["one_word_start", "one_word_sim", "one_word_best_grad"])
        assert [r.strategy for r in reports] == ["one_word_start", "one_word_sim", "one_word_best_grad"]
        assert [r.sr for r in reports] == [0.0, 100.0, 0.0]


class TestIntervalSuccess:
    @staticmethod
    def random_batch(rng, n):
        batch = []
        for i in range(n):
            orig_rank = int(rng.integers(11, 101))
            new_rank = int(rng.integers(1, 101))
            batch.append(result(orig_rank, new_rank, doc_id=f"d{i}"))
        return batch

    def test_intervals(self):
        assert ISR_INTERVALS[0] == (11, 20)
        assert ISR_INTERVALS[-1] == (91, 100)
        assert len(ISR_INTERVALS) == 9

    def test_weighted_mean_equals_success_rate(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            batch = self.random_batch(rng, 600)
            report = aggregate(batch)
            buckets = [b for b in report.isr if b.attempts > 0]
            weighted = sum(b.rate * b.attempts for b in buckets) / sum(b.attempts for b in buckets)
            assert weighted == pytest.approx(report.sr, abs=1e-9)

    def test_against_second_pass(self):
        rng = np.random.default_rng(1)
        batch = self.random_batch(rng, 500)
        for bucket in interval_success(batch):
            members = [r for r in batch if bucket.lo <= r.orig_rank <= bucket.hi]
            assert bucket.attempts == len(members)
            assert bucket.successes == sum(r.new_rank < r.orig_rank for r in members)
