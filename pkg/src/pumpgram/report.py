"""JSON run reports and CSV growth tables."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Optional

from .grammar import canonicalize
from .lattice import LayerCounts
from .learner import MetaParams, OptimalSet

SCHEMA = 1


def _optimum_json(o) -> dict:
    g = canonicalize(o.grammar)
    return {
        "depth": o.depth,
        "grammar": g.to_text(header=False).splitlines(),
        "fitness": str(o.fitness),
        "gs": list(o.gs.counts),
        "es": list(o.es.counts),
        "parsed": sorted(o.parsed),
    }


def growth_rows(result: OptimalSet, totals: Optional[LayerCounts] = None) -> list[dict]:
    """Per-depth rows; ``total`` is the exact layer count or "-" when not computed."""
    rows = []
    for rec in result.growth_rows():
        total = totals.total(rec.depth) if totals is not None else None
        rows.append(
            {
                "depth": rec.depth,
                "total": total if total is not None else "-",
                "visited": rec.visited,
                "optimal": rec.optimal,
                "evaluated": rec.evaluated,
                "filtered": rec.filtered,
            }
        )
    return rows


def build_report(result: OptimalSet, params: MetaParams, corpus, totals: Optional[LayerCounts] = None, seed: Optional[int] = None) -> dict:
    full = result.corpus_size
    optima = []
    for o in result.optima:
        item = _optimum_json(o)
        item["global"] = full > 0 and len(o.parsed) == full
        optima.append(item)
    return {
        "schema": SCHEMA,
        "params": {
            "m": params.m,
            "k": params.k,
            "t": str(params.t),
            "stop": params.stop,
            "max_depth": params.max_depth,
            "max_frontier": params.max_frontier,
            "linked_steps": params.linked_steps,
            "seed": seed,
        },
        "corpus_size": full,
        "stopped_by": result.stopped_by,
        "growth": growth_rows(result, totals),
        "optima": optima,
        "global_optima": sum(1 for o in optima if o["global"]),
    }


def dumps_report(report: dict) -> str:
    # no timings in the report, so repeated runs give identical bytes
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps_report(report), encoding="utf-8")


def growth_csv(result: OptimalSet, totals: Optional[LayerCounts] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["depth", "total", "visited", "optimal"])
    for row in growth_rows(result, totals):
        w.writerow([row["depth"], row["total"] if row["total"] != "-" else "", row["visited"], row["optimal"]])
    return buf.getvalue()


def emit_growth_table(result: OptimalSet, path, totals: Optional[LayerCounts] = None) -> None:
    Path(path).write_text(growth_csv(result, totals), encoding="utf-8")
