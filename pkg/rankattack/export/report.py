from typing import List, Optional, Sequence, Tuple
import json
import logging

import pandas as pd

from rankattack.core.errors import DataError
from rankattack.core.utils.jsonl import open_text
from rankattack.evaluate.report import MetricsReport

SS_METHOD = "mean-word-embedding"
ISR_PLOTDATA_COLUMNS = ["interval_lo", "interval_hi", "strategy", "isr_pct", "attempts"]


def write_report_json(
    reports: Sequence[MetricsReport], path: str, metadata: Optional[dict] = None
) -> None:
    """
    Writes the per-strategy reports as a single JSON document.
    """
    payload = {
        "ss_method": SS_METHOD,
        "metadata": metadata or {},
        "strategies": [report.to_dict() for report in reports],
    }
    with open_text(path, "w") as fp:
        json.dump(payload, fp, indent=4, sort_keys=True)
        fp.write("\n")


def load_report_json(path: str) -> Tuple[List[MetricsReport], dict]:
    try:
        with open_text(path) as fp:
            payload = json.load(fp)
        return (
            [MetricsReport.from_dict(r) for r in payload["strategies"]],
            payload.get("metadata", {}),
        )
    except OSError as e:
        raise DataError(f"Cannot read {path}: {e}") from e
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise DataError(f"{path}: malformed report ({e})") from e


def report_frame(reports: Sequence[MetricsReport]) -> pd.DataFrame:
    """
    One row per strategy, one column per metric and one column per ISR interval.
    """
    rows = []
    for report in reports:
        row = {
            "strategy": report.strategy,
            "sr": report.sr,
            "ss_mwe": report.ss_mean,
            "pp": report.pp_mean,
            "rb": report.rb_mean,
            "sb": report.sb_mean,
            "rb_success": report.rb_success_mean,
            "sb_success": report.sb_success_mean,
            "attempted": report.attempted_count,
            "successes": report.success_count,
            "skipped": report.skipped_count,
        }
        for bucket in report.isr:
            row[f"isr_{bucket.lo}_{bucket.hi}"] = bucket.rate
        rows.append(row)
    return pd.DataFrame(rows)


def write_report_csv(reports: Sequence[MetricsReport], path: str) -> None:
    report_frame(reports).to_csv(path, index=False)


def emit_isr_plotdata(reports: Sequence[MetricsReport], path: str) -> None:
    """
    Writes the ISR of every strategy as long-format CSV
    (interval_lo, interval_hi, strategy, isr_pct, attempts); empty buckets have no isr_pct.
    """
    rows = [
        {
            "interval_lo": bucket.lo,
            "interval_hi": bucket.hi,
            "strategy": report.strategy,
            "isr_pct": bucket.rate,
            "attempts": bucket.attempts,
        }
        for report in reports
        for bucket in report.isr
    ]
    frame = pd.DataFrame(rows, columns=ISR_PLOTDATA_COLUMNS)
    try:
        frame.to_csv(path, index=False)
    except OSError as e:
        raise DataError(f"Cannot write {path}: {e}") from e
    logging.info(f"Wrote ISR plot data for {len(reports)} strategies to {path}")


def load_isr_plotdata(path: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            path,
            float_precision="round_trip",
            dtype={"strategy": str},
            keep_default_na=False,
            na_values={"isr_pct": [""]},
        )
    except (OSError, pd.errors.ParserError) as e:
        raise DataError(f"Cannot read ISR plot data {path}: {e}") from e
    missing = set(ISR_PLOTDATA_COLUMNS) - set(frame.columns)
    if missing:
        raise DataError(f"{path}: missing columns {sorted(missing)}")
    return frame
