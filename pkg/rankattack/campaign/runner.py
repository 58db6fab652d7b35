from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import logging
import traceback

import tqdm

from rankattack.attack.registry import AttackStrategyRegistry
from rankattack.attack.strategy import AttackStrategy, AttackTarget
from rankattack.campaign.config import CampaignConfig
from rankattack.core.embeddings.semantics import QueryCenter, query_center
from rankattack.core.embeddings.store import EmbeddingStore, load_embeddings
from rankattack.core.errors import (
    CapabilityError,
    ConfigurationError,
    DataError,
    DegenerateInputError,
    NoCandidateError,
    NoQueryCenterError,
)
from rankattack.core.retrieval.bm25 import (
    Bm25Index,
    build_index,
    load_index,
    load_stopwords,
    retrieve,
)
from rankattack.core.text.document import Document, Query
from rankattack.core.text.loaders import load_corpus, load_queries
from rankattack.core.utils.jsonl import write_jsonl
from rankattack.evaluate.metrics import AttackResult, evaluate_attack
from rankattack.evaluate.report import aggregate_by_strategy
from rankattack.export.report import emit_isr_plotdata, write_report_csv, write_report_json
from rankattack.rank.ranked_list import RankedList
from rankattack.rank.ranker import Ranker, RankerParams
from rankattack.rank.registry import RankerRegistry

RESULTS_FILE = "results.jsonl"
QUERIES_FILE = "queries.jsonl"
REPORT_FILE = "report.json"
REPORT_CSV_FILE = "report.csv"
ISR_FILE = "isr.csv"


@dataclass
class Campaign:
    """
    Everything a campaign reads: shared read-only by every worker.
    """

    config: CampaignConfig
    corpus: Dict[str, Document]
    queries: List[Query]
    store: EmbeddingStore
    index: Bm25Index
    ranker: Ranker
    strategies: List[AttackStrategy]


def result_key(result: AttackResult) -> Tuple[str, str, str]:
    return (result.query_id, result.doc_id, result.strategy)


def check_index(config: CampaignConfig, index: Bm25Index, documents: Sequence[Document]) -> None:
    """
    Checks that a loaded index was built from the campaign's corpus with the campaign's
    BM25 settings.

    :raises DataError: if the indexed documents are not those of the corpus.
    :raises ConfigurationError: if k1, b or the stopwords differ from the index's.
    """
    indexed = set(index.doc_lengths)
    loaded = {document.doc_id for document in documents}
    if indexed != loaded:
        missing = sorted(indexed - loaded)[:5]
        unindexed = sorted(loaded - indexed)[:5]
        raise DataError(
            f"Index {config.index} does not match corpus {config.corpus}: "
            f"indexed but not in the corpus {missing}, in the corpus but not indexed {unindexed}"
        )

    conflicts = []
    if config.k1 is not None and config.k1 != index.k1:
        conflicts.append(f"k1 {config.k1} (index: {index.k1})")
    if config.b is not None and config.b != index.b:
        conflicts.append(f"b {config.b} (index: {index.b})")
    if config.stopwords and load_stopwords(config.stopwords) != index.stopwords:
        conflicts.append(f"stopwords {config.stopwords}")
    if conflicts:
        raise ConfigurationError(
            f"Index {config.index} was built with other settings: {', '.join(conflicts)}"
        )


def prepare_campaign(config: CampaignConfig) -> Campaign:
    """
    Loads the collection, the embeddings and the index, and instantiates the ranker
    and the strategies of the campaign.
    """
    config.validate()

    logging.info(f"Loading corpus from {config.corpus}...")
    documents = load_corpus(config.corpus, config.corpus_format)
    logging.info(f"Loading queries from {config.queries}...")
    queries = load_queries(config.queries)
    logging.info(f"Loading embeddings from {config.embeddings}...")
    store = load_embeddings(config.embeddings)

    if config.index is not None:
        logging.info(f"Loading BM25 index from {config.index}...")
        index = load_index(config.index)
        check_index(config, index, documents)
    else:
        stopwords = load_stopwords(config.stopwords) if config.stopwords else frozenset()
        k1, b = config.bm25_params()
        try:
            index = build_index(documents, k1, b, stopwords)
        except DataError as e:
            raise DataError(f"{config.corpus}: {e}") from e

    params = RankerParams(
        lambda_pos=config.lambda_pos,
        beta=config.beta,
        seed=config.seed,
        loss_top_m=config.loss_top_m,
    )
    ranker = RankerRegistry.get_ranker(config.ranker, store=store, index=index, params=params)

    strategies = []
    for name in config.strategies:
        try:
            strategies.append(
                AttackStrategyRegistry.get_strategy(name, store=store, ranker=ranker, k=config.k)
            )
        except CapabilityError as e:
            raise ConfigurationError(str(e)) from e

    return Campaign(
        config=config,
        corpus={document.doc_id: document for document in documents},
        queries=queries,
        store=store,
        index=index,
        ranker=ranker,
        strategies=strategies,
    )


def rank_candidates(campaign: Campaign, q: Query, candidates: Sequence[Document]) -> RankedList:
    """
    Reranks the first-stage candidates. A query the ranker cannot score keeps
    its BM25 order.
    """
    try:
        return campaign.ranker.rerank(q, candidates)
    except DegenerateInputError as e:
        logging.warning(f"Cannot rerank query {q.query_id} ({e}), keeping the BM25 order")
        return RankedList.from_scores(
            q.query_id, retrieve(q, campaign.index, campaign.config.topk)
        )


def attack_query(campaign: Campaign, q: Query) -> Tuple[List[AttackResult], dict]:
    """
    Retrieves, reranks and attacks every document of the query's ranked list whose
    rank lies in the configured range, once per strategy.

    :return: The attack results and a summary of the query.
    """
    config = campaign.config
    retrieved = retrieve(q, campaign.index, config.topk)
    summary: dict = {
        "query_id": q.query_id,
        "query": q.text(),
        "center": None,
        "candidates": len(retrieved),
        "ranked": 0,
    }
    if not retrieved:
        logging.warning(f"Query {q.query_id} retrieves no document")
        return [], summary

    candidates = [campaign.corpus[doc_id] for doc_id, _ in retrieved]
    ranked_list = rank_candidates(campaign, q, candidates)
    summary["ranked"] = len(ranked_list)

    center: Optional[QueryCenter]
    try:
        center = query_center(q, campaign.store)
        summary["center"] = center.to_dict()
    except NoQueryCenterError as e:
        logging.info(f"Skipping query {q.query_id}: {e}")
        center = None

    results = []
    for entry in ranked_list:
        if not config.rank_lo <= entry.rank <= config.rank_hi:
            continue
        document = campaign.corpus[entry.doc_id]
        for strategy in campaign.strategies:
            name = strategy.strategy_name
            if center is None:
                results.append(
                    AttackResult.skipped(
                        q.query_id, entry.doc_id, name, entry.rank, entry.score, "no_query_center"
                    )
                )
                continue
            try:
                perturbed, edit = strategy.attack(
                    AttackTarget(q, center, document, ranked_list)
                )
            except NoCandidateError as e:
                logging.info(f"Skipping {name} on {entry.doc_id}: {e}")
                results.append(
                    AttackResult.skipped(
                        q.query_id, entry.doc_id, name, entry.rank, entry.score, "no_candidate"
                    )
                )
                continue
            except DegenerateInputError as e:
                logging.info(f"Skipping {name} on {entry.doc_id}: {e}")
                results.append(
                    AttackResult.skipped(
                        q.query_id,
                        entry.doc_id,
                        name,
                        entry.rank,
                        entry.score,
                        "degenerate_document",
                    )
                )
                continue
            results.append(
                evaluate_attack(
                    q,
                    ranked_list,
                    document,
                    perturbed,
                    edit,
                    campaign.ranker,
                    campaign.store,
                    name,
                )
            )
    return results, summary


def run_campaign(config: CampaignConfig) -> Tuple[str, str]:
    """
    Runs the attack campaign and writes results.jsonl, queries.jsonl, report.json,
    report.csv and isr.csv to the output directory.

    :return: The paths of the results file and of the report file.
    """
    campaign = prepare_campaign(config)
    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    results: List[AttackResult] = []
    summaries: List[dict] = []
    failures = []
    with ThreadPoolExecutor(max_workers=config.n_workers) as executor:
        futures = {executor.submit(attack_query, campaign, q): q for q in campaign.queries}

        logging.info(f"Attacking {len(futures)} queries...")
        for future in tqdm.tqdm(as_completed(futures), total=len(futures)):
            q = futures[future]
            try:
                query_results, summary = future.result()
            except Exception as e:
                logging.error(
                    f"Attack of query {q.query_id} failed: {traceback.format_exc()}"
                )
                failures.append(e)
                continue
            results.extend(query_results)
            summaries.append(summary)

    if failures:
        raise failures[0]

    # completion order depends on scheduling
    results.sort(key=result_key)
    summaries.sort(key=lambda s: s["query_id"])

    results_path = str(output_dir / RESULTS_FILE)
    report_path = str(output_dir / REPORT_FILE)
    write_jsonl(results_path, (result.to_dict() for result in results))
    write_jsonl(str(output_dir / QUERIES_FILE), summaries)

    reports = aggregate_by_strategy(results, config.strategies)
    write_report_json(reports, report_path, metadata=config.to_dict())
    write_report_csv(reports, str(output_dir / REPORT_CSV_FILE))
    emit_isr_plotdata(reports, str(output_dir / ISR_FILE))

    for report in reports:
        logging.info(
            f"{report.strategy}: SR {report.sr:.2f}% over {report.attempted_count} attacks "
            f"({report.skipped_count} skipped), PP {report.pp_mean:.2f}%, SS {report.ss_mean:.4f}"
        )
    return results_path, report_path
