"""Command line entry point: ``orbitile <verb> ...``.

Exit status is 0 on success, 1 when the input is well formed but the
mathematics refuses (domain, geometry or catalog errors), and 2 for usage
and symbol syntax errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .enumeration import EnumerationConfig, detect_ambiguity, enumerate_classes, iter_json_lines
from .hyperbolic import GeometryError
from .mcg_generators import (
    HANDLE_KINDS, NONORIENTABLE_KINDS, McgDomainError, generators_for, handle_generator,
    nonorientable_generator,
)
from .orbifold_symbol import (
    OrbifoldDomainError, SymbolParseError, euler_characteristic, parse_symbol, render_symbol,
    signature_to_json, standard_presentation,
)
from .realization import InvalidCatalogEntry, index_in_frame, load_catalog, realize, tile_area, verify
from .tiling_render import RenderOptions, render_svg
from .words import UndecidedError

DOMAIN_ERRORS = (OrbifoldDomainError, McgDomainError, GeometryError, InvalidCatalogEntry, KeyError,
                 UndecidedError)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GlobalOptions:
    json: bool = False
    seed_catalog: str | None = None
    pure: bool = False


def _parse_partition(text: str | None) -> tuple[tuple[int, ...], ...] | None:
    """``"1,3|2,4"`` -> ((1, 3), (2, 4))."""
    if not text:
        return None
    try:
        return tuple(tuple(int(x) for x in block.split(",") if x.strip()) for block in text.split("|"))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}; expected e.g. '1,3|2,4'") from exc


def _entry(args, catalog):
    label = args.realization
    if label == "default" and "default" not in catalog.labels(args.symbol):
        label = None  # first shipped realization
    return catalog.lookup(args.symbol, label)


def _emit(obj, opts: GlobalOptions, text: str, out) -> None:
    print(json.dumps(obj) if opts.json else text, file=out)


# -- verbs ---------------------------------------------------------------------------

def cmd_parse(args, opts, out, err) -> int:
    sig = parse_symbol(args.symbol)
    chi = euler_characteristic(sig)
    kind = "hyperbolic" if chi < 0 else ("euclidean" if chi == 0 else "spherical")
    _emit(signature_to_json(sig), opts, f"{render_symbol(sig)}  chi = {chi}  ({kind})", out)
    return 0


def cmd_present(args, opts, out, err) -> int:
    p = standard_presentation(parse_symbol(args.symbol))
    if opts.json:
        print(p.dumps(), file=out)
        return 0
    labels = ", ".join(g.label for g in p.generators)
    rels = ", ".join(p.format_word(r) for r in p.relators)
    print(f"< {labels} | {rels} >", file=out)
    return 0


def _feature_generators(p):
    gens = []
    for kinds, make in ((HANDLE_KINDS, handle_generator), (NONORIENTABLE_KINDS, nonorientable_generator)):
        for kind in kinds:
            for position in range(1, len(p.features) + 1):
                try:
                    gens.append(make(p, kind, position))
                except McgDomainError:
                    continue
    return gens


def cmd_mcg_gens(args, opts, out, err) -> int:
    sig = parse_symbol(args.symbol)
    p = standard_presentation(sig)
    if sig.is_stellate:
        gens = generators_for(p, pure=opts.pure, partition=_parse_partition(args.partition))
    else:
        gens = _feature_generators(p)
        if not gens:
            raise McgDomainError(f"no generators implemented for {args.symbol!r}")
    for g in gens:
        if opts.json:
            print(json.dumps(g.to_json()), file=out)
        else:
            images = "; ".join(f"{p.generators[i].label} -> {p.format_word(w)}"
                               for i, w in enumerate(g.auto.images))
            print(f"{g.name}: {images}", file=out)
    return 0


def cmd_enumerate(args, opts, out, err) -> int:
    catalog = load_catalog(opts.seed_catalog)
    entry = _entry(args, catalog)
    config = EnumerationConfig(count=args.count, max_word_length=args.max_word_length, pure=opts.pure,
                               partition=_parse_partition(args.partition))
    result = enumerate_classes(entry.symbol, entry.label, config, catalog)
    for line in iter_json_lines(result):
        print(line, file=out)
    print(f"# {result.status}: {len(result.classes)} classes, words up to length {result.explored_length}",
          file=err)
    return 0


def cmd_render(args, opts, out, err) -> int:
    if args.index < 1:
        raise UsageError("--index is 1-based")
    catalog = load_catalog(opts.seed_catalog)
    entry = _entry(args, catalog)
    config = EnumerationConfig(count=args.index, max_word_length=args.max_word_length, pure=opts.pure,
                               partition=_parse_partition(args.partition))
    result = enumerate_classes(entry.symbol, entry.label, config, catalog)
    if len(result.classes) < args.index:
        raise GeometryError(f"only {len(result.classes)} classes reachable ({result.status})")
    options = RenderOptions(depth=args.depth, show_base=args.show_base, show_dodecagon=args.show_dodecagon,
                            show_decoration=not args.no_decoration, clip_radius=args.clip_radius)
    svg = render_svg(result.classes[args.index - 1], options)
    if args.output in (None, "-"):
        out.write(svg)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"wrote {args.output}", file=err)
    return 0


def cmd_verify(args, opts, out, err) -> int:
    catalog = load_catalog(opts.seed_catalog)
    if args.symbol is None:
        entries = list(catalog.entries)
    elif args.realization is None:
        entries = [e for e in catalog.entries if e.symbol == args.symbol]
        if not entries:
            raise KeyError(f"no catalog entry for {args.symbol!r}")
    else:
        entries = [_entry(args, catalog)]
    ok = True
    for e in entries:
        t = realize(e)
        rep = verify(t)
        area = tile_area(t)
        row = {"symbol": e.symbol, "label": e.label, "index": index_in_frame(t), "tile_area": area,
               **rep.to_json()}
        ok &= rep.passed
        text = (f"{e.symbol}/{e.label}: {'ok' if rep.passed else 'FAILED'}  index {row['index']}  "
                f"area {area:.9f}  relator residual {rep.relator_residual:.2e}")
        _emit(row, opts, text, out)
    return 0 if ok else 1


def cmd_detect_ambiguity(args, opts, out, err) -> int:
    catalog = load_catalog(opts.seed_catalog)
    entry = _entry(args, catalog)
    rep = detect_ambiguity(entry.symbol, entry.label, catalog)
    if opts.json:
        print(json.dumps(rep.to_json()), file=out)
        return 0
    print(f"{rep.symbol}/{rep.label}: {'ambiguous' if rep.ambiguous else 'unambiguous'}"
          f"  palindromic={rep.palindromic}  fixes_decoration={rep.fixes_decoration}", file=out)
    for w in rep.witnesses:
        kind = "isometry" if w.geometric else "combinatorial"
        print(f"  {w.cycles()}  {'reversing' if w.reversing else 'preserving'}  ({kind})", file=out)
    return 0


# -- argument parsing -----------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine readable output")
    parser.add_argument("--seed-catalog", metavar="PATH", default=d(None), help="realization catalog JSON")
    parser.add_argument("--pure", action="store_true", default=d(False),
                        help="use pure generators only (never permute cone points)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitile", description="Isotopy classes of tilings of hyperbolic "
                                     "orbifolds: symbols, presentations, mapping classes, enumeration, SVG.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    def verb(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = verb("parse", cmd_parse, "parse an orbifold symbol")
    p.add_argument("symbol")
    p = verb("present", cmd_present, "standard presentation of the orbifold group")
    p.add_argument("symbol")
    p = verb("mcg-gens", cmd_mcg_gens, "mapping class generators as automorphisms")
    p.add_argument("symbol")
    p.add_argument("--partition", help="blocks of gyrations allowed to permute, e.g. '1,2,3|4'")

    def realization_args(p):
        p.add_argument("symbol")
        p.add_argument("--realization", default="default", help="catalog label (default: first shipped)")
        p.add_argument("--max-word-length", type=int, default=12)
        p.add_argument("--partition", help="blocks of gyrations allowed to permute, e.g. '1,2,3|4'")

    p = verb("enumerate", cmd_enumerate, "list tiling classes as JSON lines")
    realization_args(p)
    p.add_argument("--count", type=int, default=40)
    p = verb("render", cmd_render, "draw an enumerated tiling as SVG")
    realization_args(p)
    p.add_argument("--index", type=int, default=1, help="1-based class number")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--show-base", action="store_true")
    p.add_argument("--show-dodecagon", action="store_true")
    p.add_argument("--no-decoration", action="store_true")
    p.add_argument("--clip-radius", type=float, default=RenderOptions.clip_radius)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p = verb("verify", cmd_verify, "check catalog realizations")
    p.add_argument("symbol", nargs="?")
    p.add_argument("--realization", default=None)
    p = verb("detect-ambiguity", cmd_detect_ambiguity, "relabellings that keep the presentation")
    p.add_argument("symbol")
    p.add_argument("--realization", default="default")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    opts = GlobalOptions(json=args.json, seed_catalog=args.seed_catalog, pure=args.pure)
    try:
        return args.func(args, opts, out, err)
    except SymbolParseError as exc:
        print(f"orbitile: {exc}", file=err)
        print("hint: gyration orders above 9 go in parentheses, e.g. '(12)3'", file=err)
        return 2
    except UsageError as exc:
        print(f"orbitile: {exc}", file=err)
        return 2
    except DOMAIN_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"orbitile: {msg}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
