"""Plot-ready CSV writers.

Every file is UTF-8, comma separated, ``#key=value`` metadata lines first,
then a header row. Floats are written with ``repr`` so reruns are
byte-identical and values round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence], meta: dict | None = None) -> str:
    buf = io.StringIO()
    for key, value in (meta or {}).items():
        buf.write(f"# {key}={_fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def write_atomic(path, text: str) -> Path:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return path


def read_csv_rows(text: str) -> tuple[dict[str, str], list[dict[str, str]]]:
    meta: dict[str, str] = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    return meta, list(csv.DictReader(body))


def rc_curve_csv(curve, meta=None) -> str:
    return csv_text(["i", "r_c"], curve, meta)


def energy_report_csv(reports) -> str:
    rows = [
        (r.scheme, r.network, r.seed, r.sleep_units, r.max_active_units, float(r.savings_ratio))
        for r in reports
    ]
    return csv_text(
        ["scheme", "network", "seed", "sleep_units", "max_active_units", "savings_ratio"], rows
    )


def active_curve_csv(curve, meta=None) -> str:
    return csv_text(["load_fraction", "active_fraction"], curve, meta)


def summary_csv(rows) -> str:
    return csv_text(
        ["network", "scheme", "runs", "mean_savings", "std_savings"],
        [(r["network"], r["scheme"], r["runs"], r["mean"], r["std"]) for r in rows],
    )


def mincut_csv(samples) -> str:
    """``samples``: iterable of ``(removal_index, MinCutHistogram)``."""
    rows = []
    for index, hist in samples:
        for m_c, p in hist.distribution():
            rows.append((index, m_c, hist.counts[m_c], float(p)))
    return csv_text(["removal_index", "m_c", "pairs", "probability"], rows)


def sim_stats_csv(stats) -> str:
    rows = [
        (s.rate_R, s.seed, s.created, s.delivered, float(s.order_parameter), s.max_queue)
        for s in stats
    ]
    return csv_text(["R", "seed", "created", "delivered", "order_parameter", "max_queue"], rows)


def gnuplot_script(csv_name: str, xlabel: str, ylabel: str, title: str) -> str:
    return (
        "set datafile separator ','\n"
        f"set title '{title}'\n"
        f"set xlabel '{xlabel}'\n"
        f"set ylabel '{ylabel}'\n"
        "set key off\n"
        f"plot '{csv_name}' every ::1 using 1:2 with lines\n"
    )
