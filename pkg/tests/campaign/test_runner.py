from rankattack.campaign.config import CampaignConfig
from rankattack.campaign.runner import (
    ISR_FILE,
    QUERIES_FILE,
    REPORT_CSV_FILE,
    prepare_campaign,
    run_campaign,
)
from rankattack.core.errors import ConfigurationError, DataError
from rankattack.core.retrieval.bm25 import build_index, save_index
from rankattack.core.text.loaders import load_corpus
from rankattack.core.utils.jsonl import stream_jsonl
from rankattack.core.utils.synthetic import generate_collection, write_collection
from rankattack.evaluate.metrics import load_results
from rankattack.export.report import load_isr_plotdata, load_report_json

from pathlib import Path
import pytest


@pytest.fixture(scope="module")
def toy_collection(tmp_path_factory):
    """
    5 queries over 200 documents with 2-dimensional embeddings.
    """
    collection = generate_collection(
        n_docs=200, n_queries=5, n_topics=4, n_common=40, n_rare=30, dim=2, seed=4
    )
    return write_collection(collection, str(tmp_path_factory.mktemp("toy")))


def toy_config(paths, output_dir, **kwargs):
    values = {**paths, "output_dir": str(output_dir), "topk": 30, "rank_lo": 3, "rank_hi": 30}
    values.update(kwargs)
    return CampaignConfig.from_sources(None, **values)


class TestRunCampaign:
    def test_outputs(self, toy_collection, tmp_path):
        config = toy_config(toy_collection, tmp_path)
        results_path, report_path = run_campaign(config)

        results = load_results(results_path)
        assert results
        keys = [(r.query_id, r.doc_id, r.strategy) for r in results]
        assert keys == sorted(keys)
        assert all(config.rank_lo <= r.orig_rank <= config.rank_hi for r in results)
        assert all(r.pp is not None and 0 < r.pp < 3 for r in results if r.attempted)

        reports, metadata = load_report_json(report_path)
        assert [r.strategy for r in reports] == list(config.strategies)
        assert metadata["seed"] == 0

        assert (tmp_path / REPORT_CSV_FILE).exists()
        assert len(load_isr_plotdata(str(tmp_path / ISR_FILE))) == 27

        summaries = list(stream_jsonl(str(tmp_path / QUERIES_FILE)))
        assert [s["query_id"] for s in summaries] == [f"Q{i:03d}" for i in range(5)]
        assert all(s["center"] is not None for s in summaries)
        assert all(set(s["center"]) == {"token", "similarity"} for s in summaries)

    def test_byte_identical_runs(self, toy_collection, tmp_path):
        outputs = []
        for n_workers in (1, 3, 1):
            run_campaign(toy_config(toy_collection, tmp_path, n_workers=n_workers))
            outputs.append(
                {
                    name: (tmp_path / name).read_bytes()
                    for name in ("results.jsonl", "queries.jsonl", "report.csv", "isr.csv")
                }
            )
        assert outputs[0] == outputs[1] == outputs[2]

        report = (tmp_path / "report.json").read_bytes()
        run_campaign(toy_config(toy_collection, tmp_path))
        assert (tmp_path / "report.json").read_bytes() == report

    def test_top_ranks(self, toy_collection, tmp_path):
        config = toy_config(toy_collection, tmp_path, rank_lo=1, rank_hi=10, strategies="one_word_start")
        results = load_results(run_campaign(config)[0])
        assert {r.orig_rank for r in results} == set(range(1, 11))

    def test_oov_query_is_skipped(self, toy_collection, tmp_path):
        queries = tmp_path / "queries.tsv"
        queries.write_text(Path(toy_collection["queries"]).read_text() + "Q999\trare1 rare2 rare3\n")
        config = toy_config({**toy_collection, "queries": str(queries)}, tmp_path / "out")
        results = load_results(run_campaign(config)[0])

        oov = [r for r in results if r.query_id == "Q999"]
        assert oov
        assert all(r.skip_reason == "no_query_center" for r in oov)

    def test_bm25_ranker(self, toy_collection, tmp_path):
        config = toy_config(
            toy_collection, tmp_path, ranker="bm25", strategies="one_word_start,one_word_sim"
        )
        reports, _ = load_report_json(run_campaign(config)[1])
        assert [r.strategy for r in reports] == ["one_word_start", "one_word_sim"]

    def test_gradients_required(self, toy_collection, tmp_path):
        with pytest.raises(ConfigurationError):
            run_campaign(toy_config(toy_collection, tmp_path, ranker="bm25"))

    def test_missing_file(self, toy_collection, tmp_path):
        with pytest.raises(DataError, match="missing.tsv"):
            run_campaign(toy_config({**toy_collection, "corpus": str(tmp_path / "missing.tsv")}, tmp_path))



class TestPrepareCampaign:
    @pytest.fixture
    def saved_index(self, toy_collection, tmp_path):
        path = tmp_path / "index.json"
        save_index(build_index(load_corpus(toy_collection["corpus"]), k1=1.2, b=0.75), str(path))
        return str(path)

    def test_loaded_index(self, toy_collection, tmp_path, saved_index):
        campaign = prepare_campaign(toy_config(toy_collection, tmp_path, index=saved_index))
        assert (campaign.index.k1, campaign.index.b) == (1.2, 0.75)

        campaign = prepare_campaign(
            toy_config(toy_collection, tmp_path, index=saved_index, k1=1.2, b=0.75)
        )
        assert campaign.index.doc_count == 200

    def test_index_of_another_corpus(self, toy_collection, tmp_path):
        lines = Path(toy_collection["corpus"]).read_text().splitlines()
        other = tmp_path / "other.tsv"
        other.write_text("\n".join(lines[:150]) + "\n")
        stale = tmp_path / "stale.json"
        save_index(build_index(load_corpus(str(other))), str(stale))

        with pytest.raises(DataError, match="stale.json") as e:
            prepare_campaign(toy_config(toy_collection, tmp_path, index=str(stale)))
        assert toy_collection["corpus"] in str(e.value)

    @pytest.mark.parametrize("flags", [{"k1": 0.9}, {"b": 0.4}, {"k1": 1.2, "b": 0.5}])
    def test_bm25_settings_conflict(self, toy_collection, tmp_path, saved_index, flags):
        with pytest.raises(ConfigurationError, match="index.json"):
            prepare_campaign(toy_config(toy_collection, tmp_path, index=saved_index, **flags))

    def test_stopwords_conflict(self, toy_collection, tmp_path, saved_index):
        stopwords = tmp_path / "stopwords.txt"
        stopwords.write_text("the\n")
        with pytest.raises(ConfigurationError, match="stopwords"):
            prepare_campaign(
                toy_config(toy_collection, tmp_path, index=saved_index, stopwords=str(stopwords))
            )

    @pytest.mark.parametrize("content", ["", "d1\t!!!\n"])
    def test_corpus_without_tokens(self, toy_collection, tmp_path, content):
        corpus = tmp_path / "empty.tsv"
        corpus.write_text(content)
        with pytest.raises(DataError, match="empty.tsv"):
            prepare_campaign(toy_config({**toy_collection, "corpus": str(corpus)}, tmp_path))


class TestDeskScale:
    def test_directional_results(self, tmp_path):
        paths = write_collection(generate_collection(seed=0), str(tmp_path / "collection"))
        config = CampaignConfig.from_sources(None, **paths, output_dir=str(tmp_path / "run"), n_workers=4)
        reports, _ = load_report_json(run_campaign(config)[1])
        by_strategy = {report.strategy: report for report in reports}

        assert by_strategy["one_word_best_grad"].sr > by_strategy["one_word_sim"].sr
        assert all(report.pp_mean < 3.0 for report in reports)

        spreads = []
        for report in reports:
            rates = [bucket.rate for bucket in report.isr if bucket.rate is not None]
            spreads.append(max(rates) - min(rates))
        assert max(spreads) >= 5.0
