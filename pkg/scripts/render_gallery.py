"""Render selected enumerated classes of every shipped realization as SVG files."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from orbitile.enumeration import EnumerationConfig, enumerate_classes
from orbitile.realization import load_catalog
from orbitile.tiling_render import RenderOptions, render_svg


@dataclass
class GalleryConfig:
    indices: tuple[int, ...] = (1, 20, 40)
    output: Path = Path("gallery")
    options: RenderOptions = field(default_factory=lambda: RenderOptions(depth=4, show_dodecagon=True))


def render_gallery(cfg: GalleryConfig) -> list[Path]:
    cfg.output.mkdir(parents=True, exist_ok=True)
    written = []
    for entry in load_catalog().entries:
        res = enumerate_classes(entry.symbol, entry.label, EnumerationConfig(count=max(cfg.indices)))
        for i in cfg.indices:
            if i > len(res.classes):
                continue
            t0 = time.perf_counter()
            path = cfg.output / f"{entry.symbol}_{entry.label}_{i:02d}.svg"
            path.write_text(render_svg(res.classes[i - 1], cfg.options), encoding="utf-8")
            print(f"{path}  {time.perf_counter() - t0:.2f}s  word: {' '.join(res.classes[i - 1].word) or '(empty)'}")
            written.append(path)
    return written


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--indices", default="1,20,40", help="comma separated 1-based class numbers")
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--show-base", action="store_true")
    ap.add_argument("-o", "--output", type=Path, default=GalleryConfig.output)
    args = ap.parse_args(argv)
    options = RenderOptions(depth=args.depth, show_base=args.show_base, show_dodecagon=True)
    cfg = GalleryConfig(tuple(int(x) for x in args.indices.split(",")), args.output, options)
    render_gallery(cfg)


if __name__ == "__main__":
    main()
