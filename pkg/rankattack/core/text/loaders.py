from pathlib import Path
from typing import Iterator, List, Optional, Set, Tuple
import logging

from rankattack.core.errors import DataError
from rankattack.core.text.document import Document, Query
from rankattack.core.text.tokenizer import tokenize
from rankattack.core.utils.jsonl import open_text, stream_jsonl_lines

CORPUS_FORMATS = ("tsv", "jsonl")


def infer_format(path: str) -> str:
    """
    Infers the corpus format from the file suffix, ignoring a trailing `.gz`.
    """
    suffixes = [s.lower() for s in Path(path).suffixes]
    if suffixes and suffixes[-1] == ".gz":
        suffixes = suffixes[:-1]
    if suffixes and suffixes[-1].lstrip(".") in CORPUS_FORMATS:
        return suffixes[-1].lstrip(".")
    raise DataError(f"Cannot infer the corpus format of {path}, use tsv or jsonl")


def _stream_tsv(path: str) -> Iterator[Tuple[int, str, str]]:
    """
    Yields (line number, identifier, text) for every non-blank `id<TAB>text` line.
    """
    try:
        fp = open_text(path)
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e}") from e

    with fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            identifier, sep, text = line.partition("\t")
            if not sep or not identifier.strip():
                raise DataError(f"{path}:{lineno}: malformed line, expected id<TAB>text")
            yield lineno, identifier.strip(), text


def _stream_corpus_jsonl(path: str) -> Iterator[Tuple[int, str, str]]:
    for lineno, record in stream_jsonl_lines(path):
        doc_id = record.get("id")
        contents = record.get("contents")
        if not isinstance(doc_id, str) or not doc_id or not isinstance(contents, str):
            raise DataError(
                f"{path}:{lineno}: malformed record, expected string fields 'id' and 'contents'"
            )
        yield lineno, doc_id, contents


def load_corpus(path: str, format: Optional[str] = None) -> List[Document]:
    """
    Loads a corpus, one Document per record, in file order. A corpus without any token
    is an error.

    TSV records are `doc_id<TAB>text`; JSONL records are objects with fields `id` and `contents`.

    :param path: The corpus file, optionally gzip-compressed.
    :param format: One of "tsv" or "jsonl"; inferred from the suffix when omitted.
    """
    format = (format or infer_format(path)).lower().strip()
    if format == "tsv":
        records = _stream_tsv(path)
    elif format == "jsonl":
        records = _stream_corpus_jsonl(path)
    else:
        raise DataError(f"Unknown corpus format {format}")

    documents = []
    seen: Set[str] = set()
    for lineno, doc_id, text in records:
        if doc_id in seen:
            raise DataError(f"{path}:{lineno}: duplicate document id {doc_id}")
        seen.add(doc_id)
        documents.append(Document(doc_id, tuple(tokenize(text))))

    if not documents:
        raise DataError(f"{path}: no documents found")
    if all(len(document) == 0 for document in documents):
        raise DataError(f"{path}: every document is empty")

    logging.info(f"Loaded {len(documents)} documents from {path}")
    return documents


def load_queries(path: str) -> List[Query]:
    """
    Loads `query_id<TAB>text` queries in file order. A query without tokens is an error.
    """
    queries = []
    seen: Set[str] = set()
    for lineno, query_id, text in _stream_tsv(path):
        if query_id in seen:
            raise DataError(f"{path}:{lineno}: duplicate query id {query_id}")
        seen.add(query_id)
        tokens = tuple(tokenize(text))
        if not tokens:
            raise DataError(f"{path}:{lineno}: query {query_id} has no tokens")
        queries.append(Query(query_id, tokens))

    logging.info(f"Loaded {len(queries)} queries from {path}")
    return queries
