from rankattack.attack.edit import INSERT, SUBSTITUTE, Edit
from rankattack.core.embeddings.store import EmbeddingStore
from rankattack.core.errors import DegenerateInputError
from rankattack.core.text.document import Document, Query, Token
from rankattack.evaluate.metrics import (
    ATTEMPTED,
    AttackResult,
    evaluate_attack,
    load_results,
    perturbation_pct,
)
from rankattack.core.utils.jsonl import write_jsonl
from rankattack.rank.ranked_list import RankedList
from rankattack.rank.models.soft_match import SoftMatchRanker
from rankattack.rank.ranker import Ranker, RankerParams

import numpy as np
import pytest


class FixedScoreRanker(Ranker):
    """
    Scores every document with a fixed value, whatever its content.
    """

    name = "fixed"

    def __init__(self, value: float):
        super().__init__()
        self.value = value

    def score(self, q, d):
        return self.value


STORE = EmbeddingStore({"a": [1.0, 0.0], "b": [0.0, 1.0], "c": [1.0, 1.0]})
Q = Query("q", (Token.of("a"),))


def document(n, doc_id="target"):
    return Document(doc_id, tuple(Token.of("a") for _ in range(n)))


def attempted(orig_rank, new_rank, strategy="one_word_start", ss=1.0, pp=1.0):
    return AttackResult(
        query_id="q",
        doc_id=f"d{orig_rank}",
        strategy=strategy,
        status=ATTEMPTED,
        orig_rank=orig_rank,
        orig_score=1.0,
        new_rank=new_rank,
        new_score=1.0 + (orig_rank - new_rank) * 0.01,
        edit=Edit(INSERT, 0, Token.of("c")),
        ss=ss,
        pp=pp,
    )


class TestAttackResult:
    def test_success(self):
        result = attempted(50, 40)
        assert result.success
        assert result.rank_boost == 10

    def test_unchanged_rank_is_not_a_success(self):
        result = attempted(50, 50)
        assert not result.success
        assert result.rank_boost == 0

    def test_skipped(self):
        result = AttackResult.skipped("q", "d1", "one_word_sim", 12, 0.5, "no_candidate")
        assert not result.attempted
        assert not result.success
        assert result.rank_boost is None

    def test_incomplete_attempt(self):
        with pytest.raises(ValueError):
            AttackResult("q", "d", "one_word_start", ATTEMPTED, 12, 0.5)

    def test_load_results(self, tmp_path):
        results = [
            attempted(50, 40),
            AttackResult.skipped("q", "d1", "one_word_sim", 12, 0.5, "no_candidate"),
        ]
        path = str(tmp_path / "results.jsonl")
        write_jsonl(path, (r.to_dict() for r in results))
        assert load_results(path) == results


class TestPerturbationPct:
    def test_insertion(self):
        assert perturbation_pct(document(100), Edit(INSERT, 0, Token.of("c"))) == 1.0

    def test_substitution(self):
        edit = Edit(SUBSTITUTE, 0, Token.of("c"), Token.of("a"))
        assert perturbation_pct(document(50), edit) == 2.0

    def test_mean(self):
        edit = Edit(INSERT, 0, Token.of("c"))
        values = [perturbation_pct(document(100), edit), perturbation_pct(document(50), edit)]
        assert np.mean(values) == 1.5

    @pytest.mark.parametrize("n", [1, 3, 7, 13, 99])
    def test_exact(self, n):
        assert perturbation_pct(document(n), Edit(INSERT, 0, Token.of("c"))) == 100 / n

    def test_empty_document(self):
        with pytest.raises(DegenerateInputError):
            perturbation_pct(Document("d", ()), Edit(INSERT, 0, Token.of("c")))


class TestEvaluateAttack:
    def test_promotion(self):
        ranked = RankedList.from_scores(
            "q", [("d1", 5.0), ("d2", 4.0), ("d3", 3.0), ("d4", 2.0), ("target", 1.0)]
        )
        d = document(4)
        edit = Edit(INSERT, 0, Token.of("c"))

        result = evaluate_attack(Q, ranked, d, edit.apply(d), edit, FixedScoreRanker(3.5), STORE, "s")
        assert result.orig_rank == 5
        assert result.new_rank == 3
        assert result.success
        assert result.rank_boost == 2
        assert result.score_boost == pytest.approx(2.5)
        assert result.pp == 25.0
        # means (1, 0) and (1, 0.2)
        assert result.ss == pytest.approx(1 / np.sqrt(1.04))

    def test_tie_does_not_promote_past_smaller_ids(self):
        ranked = RankedList.from_scores("q", [("a1", 2.0), ("target", 1.0)])
        d = document(2)
        edit = Edit(INSERT, 0, Token.of("c"))

        result = evaluate_attack(Q, ranked, d, edit.apply(d), edit, FixedScoreRanker(2.0), STORE, "s")
        assert result.new_rank == 2
        assert not result.success

    def test_unchanged_document(self):
        rng = np.random.default_rng(31)
        vocabulary = {f"w{i:02d}": rng.normal(size=4) for i in range(12)}
        store = EmbeddingStore(vocabulary)
        ranker = SoftMatchRanker(store, RankerParams(lambda_pos=0.01))
        words = sorted(vocabulary)

        for _ in range(20):
            q = Query("q", tuple(Token.of(str(w)) for w in rng.choice(words, size=2)))
            docs = [
                Document(f"d{i:02d}", tuple(Token.of(str(w)) for w in rng.choice(words, size=6)))
                for i in range(10)
            ]
            ranked = ranker.rerank(q, docs)
            for d in docs:
                edit = Edit(SUBSTITUTE, 0, d.tokens[0], d.tokens[0])
                result = evaluate_attack(q, ranked, d, d, edit, ranker, store, "s")
                assert result.rank_boost == 0
                assert result.score_boost == pytest.approx(0.0, abs=1e-12)
                assert not result.success
                assert result.ss == pytest.approx(1.0, abs=1e-9)

    def test_undefined_similarity(self):
        ranked = RankedList.from_scores("q", [("d1", 2.0), ("target", 1.0)])
        d = Document("target", (Token.of("oov"),))
        edit = Edit(INSERT, 0, Token.of("c"))

        result = evaluate_attack(Q, ranked, d, edit.apply(d), edit, FixedScoreRanker(3.0), STORE, "s")
        assert result.ss is None
        assert result.success

    def test_document_not_in_list(self):
        ranked = RankedList.from_scores("q", [("d1", 2.0)])
        d = document(2)
        edit = Edit(INSERT, 0, Token.of("c"))
        with pytest.raises(ValueError):
            evaluate_attack(Q, ranked, d, edit.apply(d), edit, FixedScoreRanker(3.0), STORE, "s")

    def test_against_full_resort(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            scores = np.round(rng.normal(size=100), 2)
            ranked = RankedList.from_scores("q", [(f"d{i:03d}", s) for i, s in enumerate(scores)])
            target = ranked.entries[int(rng.integers(100))]
            new_score = float(np.round(rng.normal(), 2))

            d = document(5, target.doc_id)
            edit = Edit(INSERT, 0, Token.of("c"))
            result = evaluate_attack(
                Q, ranked, d, edit.apply(d), edit, FixedScoreRanker(new_score), STORE, "s"
            )

            resorted = sorted(
                ((e.doc_id, new_score if e.doc_id == target.doc_id else e.score) for e in ranked),
                key=lambda x: (-x[1], x[0]),
            )
            expected = [doc_id for doc_id, _ in resorted].index(target.doc_id) + 1
            assert result.new_rank == expected
