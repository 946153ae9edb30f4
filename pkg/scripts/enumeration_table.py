"""Enumerate every shipped realization and tabulate counts, timings and residuals.

Also reports how many of the enumerated classes share their isometry shape
with an earlier class, i.e. draw the same picture with a different marking.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from orbitile.enumeration import EnumerationConfig, enumerate_classes, shape_signature
from orbitile.realization import load_catalog


@dataclass
class TableConfig:
    count: int = 40
    max_word_length: int = 12
    pure: bool = False
    output: Path | None = None


def tabulate(cfg: TableConfig) -> list[dict]:
    rows = []
    for entry in load_catalog().entries:
        t0 = time.perf_counter()
        res = enumerate_classes(entry.symbol, entry.label,
                                EnumerationConfig(cfg.count, cfg.max_word_length, cfg.pure))
        dt = time.perf_counter() - t0
        orders = [g.order for g in res.classes[0].presentation.generators]
        shapes = {shape_signature(c.points, orders) for c in res.classes}
        rows.append({
            "symbol": entry.symbol,
            "label": entry.label,
            "classes": len(res.classes),
            "status": res.status,
            "word_length": res.explored_length,
            "seconds": round(dt, 3),
            "isometric_repeats": len(res.classes) - len(shapes),
            "max_relation_residual": max(c.relation_residual() for c in res.classes),
        })
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=TableConfig.count)
    ap.add_argument("--max-word-length", type=int, default=TableConfig.max_word_length)
    ap.add_argument("--pure", action="store_true")
    ap.add_argument("--output", type=Path, help="also write the rows as JSON")
    args = ap.parse_args(argv)
    cfg = TableConfig(args.count, args.max_word_length, args.pure, args.output)
    rows = tabulate(cfg)
    print(f"{'symbol':<8}{'label':<9}{'classes':>8}  {'status':<17}{'len':>4}{'time':>8}{'repeats':>9}  residual")
    for r in rows:
        print(f"{r['symbol']:<8}{r['label']:<9}{r['classes']:>8}  {r['status']:<17}{r['word_length']:>4}"
              f"{r['seconds']:>8.2f}{r['isometric_repeats']:>9}  {r['max_relation_residual']:.1e}")
    if cfg.output:
        cfg.output.write_text(json.dumps(rows, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
