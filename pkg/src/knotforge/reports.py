"""Report files: JSON, CSV tables, and a PNG summary of a probe run."""

from __future__ import annotations

import csv
import io
import json


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows))


def probe_figure(report: dict, path: str) -> None:
    """Bar chart of collections tested per diagram; the certificate's diagram in red."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = report.get("per_diagram") or []
    names = [r[0] for r in rows]
    counts = [r[1] for r in rows]
    cert = (report.get("certificate") or {}).get("diagram")
    colors = ["tab:red" if n == cert else "tab:blue" for n in names]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(names) + 2), 3.2))
    ax.bar(range(len(names)), counts, color=colors)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("collections tested")
    title = f"{report['invariant']}  order {report['order']}"
    if report.get("n") is not None:
        title += f"  n={report['n']} q={report['q']}"
    ax.set_title(f"{title}: {report['status']}", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
