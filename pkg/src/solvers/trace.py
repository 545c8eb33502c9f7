import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

TRACE_COLUMNS = ("iter", "objective", "grad_l2", "gap", "sup_dist", "l2_dist", "pl_ratio")


def format_float(value: Optional[float]) -> str:
    """17 significant digits; None becomes an empty field."""
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


@dataclass
class TraceRow:
    iter: int
    objective: float
    grad_l2: float
    gap: Optional[float] = None
    sup_dist: Optional[float] = None
    l2_dist: Optional[float] = None
    pl_ratio: Optional[float] = None
    # not written to CSV
    eb_ratio: Optional[float] = None
    f_sup_dist: Optional[float] = None
    g_sup_dist: Optional[float] = None

    def csv_fields(self) -> List[str]:
        return [str(self.iter)] + [format_float(getattr(self, c)) for c in TRACE_COLUMNS[1:]]


@dataclass
class ConvergenceTrace:
    """Per-iteration record of one solver run."""

    algorithm: str
    rows: List[TraceRow] = field(default_factory=list)
    step_size: Optional[float] = None
    unsafe: bool = False
    converged: bool = False

    def append(self, row: TraceRow) -> None:
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def last(self) -> Optional[TraceRow]:
        return self.rows[-1] if self.rows else None

    def column(self, name: str) -> List[Optional[float]]:
        return [getattr(row, name) for row in self.rows]

    def gaps(self) -> List[float]:
        return [row.gap for row in self.rows if row.gap is not None]

    # --- CSV output ---------------------------------------------------------------
    @staticmethod
    def write_rows(rows: Iterable[TraceRow], out_path: str) -> None:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for row in rows:
                writer.writerow(row.csv_fields())

    def save_csv(self, out_path: str) -> None:
        self.write_rows(self.rows, out_path)

    # --- Summaries ----------------------------------------------------------------
    def empirical_contraction(self, tail_fraction: float = 0.25, min_tail: int = 10,
                              gap_floor: float = 1e-14) -> Optional[float]:
        """Geometric mean of gap_n+1 / gap_n over the tail of the trace.

        The tail is the last `tail_fraction` of the rows whose gap is above the floor, and at least
        `min_tail` of them when available. None when fewer than two such rows exist.
        """
        usable = [row for row in self.rows if row.gap is not None and row.gap > gap_floor]
        if len(usable) < 2:
            return None
        k = min(len(usable), max(min_tail, int(math.ceil(tail_fraction * len(usable)))))
        tail = usable[-k:]
        steps = tail[-1].iter - tail[0].iter
        if steps <= 0:
            return None
        return (tail[-1].gap / tail[0].gap) ** (1.0 / steps)
