# Static scatter plots of report streams

import os
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional, Tuple

from matplotlib.figure import Figure


def _as_float(value: Any) -> Optional[float]:
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        return None


def _point(index: int, record: Dict[str, Any]) -> Optional[Tuple[float, float]]:
    fingerprint = record.get("fingerprint") or {}
    details = record.get("details") or {}
    if record["check_id"] == "EXPANDER":
        x, y = _as_float(fingerprint.get("n")), _as_float(details.get("exponent"))
    else:
        x = _as_float(fingerprint.get("order", index))
        y = _as_float(record.get("implied_constant"))
    if x is None or y is None:
        return None
    return x, y


def _axis_labels(check_id: str, by_order: bool) -> Tuple[str, str]:
    if check_id == "EXPANDER":
        return "n", "growth exponent"
    return ("|G|" if by_order else "instance"), "implied constant"


def plot_reports(records: Iterable[Dict[str, Any]], out_dir: str) -> List[str]:
    """One PNG scatter per check id with at least one plottable point."""
    points: Dict[str, List[Tuple[float, float]]] = defaultdict(list)
    by_order: Dict[str, bool] = {}
    for index, record in enumerate(records):
        point = _point(index, record)
        if point is None:
            continue
        check_id = record["check_id"]
        points[check_id].append(point)
        by_order[check_id] = "order" in (record.get("fingerprint") or {})

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for check_id, pts in points.items():
        fig = Figure(figsize=(8, 5), dpi=100)
        ax = fig.subplots()
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=12, alpha=0.7)
        xlabel, ylabel = _axis_labels(check_id, by_order[check_id])
        ax.set_title(check_id)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)

        path = os.path.join(out_dir, f"{check_id.lower()}.png")
        fig.savefig(path)
        written.append(path)
    return written
