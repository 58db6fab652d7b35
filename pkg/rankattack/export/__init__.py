from .report import (
    write_report_json,
    load_report_json,
    write_report_csv,
    emit_isr_plotdata,
    load_isr_plotdata,
)
from .plot import plot_isr

__all__ = [
    "write_report_json",
    "load_report_json",
    "write_report_csv",
    "emit_isr_plotdata",
    "load_isr_plotdata",
    "plot_isr",
]
