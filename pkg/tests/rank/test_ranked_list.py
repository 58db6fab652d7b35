from rankattack.rank.ranked_list import RankedEntry, RankedList

import numpy as np
import pytest


class TestRankedList:
    def test_from_scores(self):
        ranked = RankedList.from_scores("q", [("d2", 0.3), ("d1", 0.9), ("d3", 0.3)])
        assert [e.doc_id for e in ranked] == ["d1", "d2", "d3"]
        assert [e.rank for e in ranked] == [1, 2, 3]
        assert ranked.rank_of("d3") == 3
        assert ranked.score_of("d1") == 0.9
        assert "d2" in ranked and "d4" not in ranked

    def test_unsorted_entries(self):
        with pytest.raises(ValueError):
            RankedList("q", (RankedEntry("d1", 0.1, 1), RankedEntry("d2", 0.5, 2)))

    def test_bad_ranks(self):
        with pytest.raises(ValueError):
            RankedList("q", (RankedEntry("d1", 0.5, 2),))

    def test_duplicate_documents(self):
        with pytest.raises(ValueError):
            RankedList("q", (RankedEntry("d1", 0.5, 1), RankedEntry("d1", 0.5, 2)))

    def test_missing_document(self):
        ranked = RankedList.from_scores("q", [("d1", 1.0)])
        with pytest.raises(ValueError):
            ranked.entry("d2")
        with pytest.raises(ValueError):
            ranked.rescored("d2", 3.0)

    def test_competitor_scores(self):
        ranked = RankedList.from_scores("q", [("d1", 4.0), ("d2", 3.0), ("d3", 2.0), ("d4", 1.0)])
        assert np.array_equal(ranked.competitor_scores("d3"), [4.0, 3.0, 1.0])
        assert np.array_equal(ranked.competitor_scores("d3", top_m=2), [4.0, 3.0])

    def test_rescored(self):
        ranked = RankedList.from_scores("q", [("d1", 4.0), ("d2", 3.0), ("d3", 2.0)])
        promoted = ranked.rescored("d3", 3.5)
        assert [e.doc_id for e in promoted] == ["d1", "d3", "d2"]
        # a tie with a smaller doc_id does not promote
        assert ranked.rescored("d3", 3.0).rank_of("d3") == 3
