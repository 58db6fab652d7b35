from typing import IO, Iterable, Iterator, Dict, Tuple
import gzip
import json
import os

from rankattack.core.errors import DataError


def open_text(filename: str, mode: str = "r") -> IO[str]:
    """
    Opens a UTF-8 text file, transparently decompressing/compressing `.gz` files.
    """
    filename = os.path.expanduser(str(filename))
    if filename.endswith(".gz"):
        return gzip.open(filename, mode + "t", encoding="utf-8")
    return open(filename, mode, encoding="utf-8", newline="\n")


def stream_jsonl_lines(filename: str) -> Iterator[Tuple[int, Dict]]:
    """
    Parses each jsonl line and yields it with its 1-based line number.
    Blank lines are skipped.
    """
    try:
        fp = open_text(filename)
    except OSError as e:
        raise DataError(f"Cannot read {filename}: {e}") from e

    with fp:
        for lineno, line in enumerate(fp, start=1):
            if not any(not x.isspace() for x in line):
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise DataError(f"{filename}:{lineno}: malformed JSON ({e.msg})") from e
            if not isinstance(record, dict):
                raise DataError(f"{filename}:{lineno}: expected a JSON object")
            yield lineno, record


def stream_jsonl(filename: str) -> Iterable[Dict]:
    """
    Parses each jsonl line and yields it as a dictionary
    """
    for _, record in stream_jsonl_lines(filename):
        yield record


def write_jsonl(filename: str, data: Iterable[Dict], append: bool = False):
    """
    Writes an iterable of dictionaries to jsonl, one object per line with sorted keys
    """
    mode = "a" if append else "w"
    with open_text(filename, mode) as fp:
        for x in data:
            fp.write(json.dumps(x, sort_keys=True) + "\n")
