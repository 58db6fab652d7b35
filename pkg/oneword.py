from pathlib import Path
from typing import Optional

from rankattack.campaign.config import CampaignConfig, parse_strategies
from rankattack.campaign.runner import (
    ISR_FILE,
    REPORT_CSV_FILE,
    REPORT_FILE,
    run_campaign,
)
from rankattack.core.errors import ConfigurationError, DataError
from rankattack.core.retrieval.bm25 import (
    DEFAULT_B,
    DEFAULT_K1,
    build_index,
    load_stopwords,
    save_index,
)
from rankattack.core.text.loaders import load_corpus
from rankattack.core.utils.synthetic import generate_collection, write_collection
from rankattack.evaluate.metrics import load_results
from rankattack.evaluate.report import aggregate_by_strategy
from rankattack.export.plot import plot_isr
from rankattack.export.report import (
    emit_isr_plotdata,
    load_isr_plotdata,
    write_report_csv,
    write_report_json,
)

import fire
import sys
import logging

ISR_PLOT_FILE = "isr.png"


def index(
    corpus: str,
    output: str,
    corpus_format: Optional[str] = None,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
    stopwords: Optional[str] = None,
):
    """
    Builds the BM25 index of a corpus and writes it to `output` (gzip if it ends in .gz).
    """
    logging.info(f"Loading corpus from {corpus}...")
    documents = load_corpus(corpus, corpus_format)
    stopword_set = load_stopwords(stopwords) if stopwords else frozenset()
    try:
        bm25_index = build_index(documents, float(k1), float(b), stopword_set)
    except DataError as e:
        raise DataError(f"{corpus}: {e}") from e
    save_index(bm25_index, output)


def attack(
    config: Optional[str] = None,
    corpus: Optional[str] = None,
    queries: Optional[str] = None,
    embeddings: Optional[str] = None,
    index: Optional[str] = None,
    corpus_format: Optional[str] = None,
    stopwords: Optional[str] = None,
    strategies=None,
    ranker: Optional[str] = None,
    topk: Optional[int] = None,
    rank_lo: Optional[int] = None,
    rank_hi: Optional[int] = None,
    k: Optional[int] = None,
    beta: Optional[float] = None,
    lambda_pos: Optional[float] = None,
    k1: Optional[float] = None,
    b: Optional[float] = None,
    loss_top_m: Optional[int] = None,
    output_dir: Optional[str] = None,
    seed: Optional[int] = None,
    n_workers: Optional[int] = None,
):
    """
    Runs an attack campaign. Settings come from the TOML file given by --config,
    overridden by any flag passed explicitly.
    """
    campaign_config = CampaignConfig.from_sources(
        config,
        corpus=corpus,
        queries=queries,
        embeddings=embeddings,
        index=index,
        corpus_format=corpus_format,
        stopwords=stopwords,
        strategies=strategies,
        ranker=ranker,
        topk=topk,
        rank_lo=rank_lo,
        rank_hi=rank_hi,
        k=k,
        beta=beta,
        lambda_pos=lambda_pos,
        k1=k1,
        b=b,
        loss_top_m=loss_top_m,
        output_dir=output_dir,
        seed=seed,
        n_workers=n_workers,
    )
    results_path, report_path = run_campaign(campaign_config)
    logging.info(f"Wrote results to {results_path} and report to {report_path}")


def report(
    results: str,
    output_dir: Optional[str] = None,
    strategies=None,
    plot: bool = False,
):
    """
    Re-aggregates an existing results file into report.json, report.csv and isr.csv
    (next to the results file by default), and optionally renders isr.png.
    """
    out = Path(output_dir) if output_dir is not None else Path(results).parent
    out.mkdir(parents=True, exist_ok=True)

    logging.info(f"Reading attack results from {results}...")
    attack_results = load_results(results)
    names = parse_strategies(strategies) if strategies is not None else None
    reports = aggregate_by_strategy(attack_results, names)

    write_report_json(reports, str(out / REPORT_FILE), metadata={"results": results})
    write_report_csv(reports, str(out / REPORT_CSV_FILE))
    emit_isr_plotdata(reports, str(out / ISR_FILE))
    if plot:
        plot_isr(load_isr_plotdata(str(out / ISR_FILE)), str(out / ISR_PLOT_FILE))
        logging.info(f"Wrote ISR plot to {out / ISR_PLOT_FILE}")


def synthesize(
    output_dir: str,
    n_docs: int = 2000,
    n_queries: int = 50,
    dim: int = 50,
    seed: int = 0,
):
    """
    Writes a seeded synthetic collection (corpus.tsv, queries.tsv, embeddings.txt).
    """
    collection = generate_collection(
        n_docs=int(n_docs), n_queries=int(n_queries), dim=int(dim), seed=int(seed)
    )
    write_collection(collection, output_dir)


def main():
    logging.getLogger().setLevel(logging.INFO)
    try:
        fire.Fire(
            {
                "index": index,
                "attack": attack,
                "report": report,
                "synthesize": synthesize,
            }
        )
    except ConfigurationError as e:
        logging.error(f"Configuration error: {e}")
        return 1
    except DataError as e:
        logging.error(f"Data error: {e}")
        return 2
    except fire.core.FireExit as e:
        # usage errors such as an unknown flag; --help exits with code 0
        return 1 if e.code else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
