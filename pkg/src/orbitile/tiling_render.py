"""Decorated tilings of the Poincare disc and their SVG rendering.

The decoration joins cyclically consecutive cone points by geodesics. Its
orbit is computed at high precision and each segment is clipped to a disc
of Euclidean radius ``clip_radius`` before conversion to doubles, so tuples
whose cone points are far apart still draw correctly near the centre.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from . import highprec
from . import hyperbolic as hyp
from .hyperbolic import GeodesicSegment, GeometryError, Isometry
from .realization import GeneratorTuple, frame246, genus3_dodecagon

#: edges whose quantized endpoints agree at this step are the same edge
EDGE_QUANTUM = 1e-6
#: a chord passing this close to the origin is drawn as a straight line
LINE_TOL = 1e-6
#: geodesic circles larger than this are drawn as lines too: the arc then
#: strays at most 4 / (8 * LINE_RADIUS) from its chord, while |c|^2 - r^2
#: can no longer be checked to 1e-6 in double precision
LINE_RADIUS = 1e4
#: mesh of the SVG canvas
CANVAS = 1000.0
MARGIN = 0.02
DIGITS = 12

BASE_COLOR = "#9ecae1"
DODECAGON_COLOR = "#2ca02c"
DECORATION_COLOR = "#b2182b"
BOUNDARY_COLOR = "#000000"

_DPS = highprec.FRAME_DPS
_PROBE = mpmath.mpc("0.0123", "0.0456")


@dataclass(frozen=True)
class RenderOptions:
    depth: int = 4
    show_base: bool = False
    show_dodecagon: bool = False
    show_decoration: bool = True
    clip_radius: float = 0.995


@dataclass
class DecoratedTiling:
    """Edge layers ready for drawing; every edge is already clipped to the drawing disc."""

    decoration_edges: list[GeodesicSegment]
    orbit_edges: list[GeodesicSegment]
    layers: dict = field(default_factory=lambda: {"base_246": False, "dodecagon": False, "decoration": True})
    depth: int = 0
    base_edges: list[GeodesicSegment] = field(default_factory=list)
    dodecagon_edges: list[GeodesicSegment] = field(default_factory=list)


# -- cone points -------------------------------------------------------------------

def cone_points(source) -> tuple[tuple, tuple[int, ...]]:
    """High precision cone points and rotation orders of a tuple or enumerated class."""
    orders = tuple(g.order for g in source.presentation.generators)
    if isinstance(source, GeneratorTuple):
        pts = source.fixed_points()
        if any(z is None for z in pts):
            raise GeometryError("every generator must be a rotation")
        with mpmath.workdps(_DPS):
            return tuple(mpmath.mpc(z) for z in pts), orders
    return tuple(source.points), orders


def _edge_key(p: complex, q: complex) -> tuple:
    a = (round(p.real / EDGE_QUANTUM), round(p.imag / EDGE_QUANTUM))
    b = (round(q.real / EDGE_QUANTUM), round(q.imag / EDGE_QUANTUM))
    return (a, b) if a <= b else (b, a)


def decorate(t) -> list[GeodesicSegment]:
    """Geodesics joining consecutive cone points, closing up the cycle."""
    pts, _ = cone_points(t)
    n = len(pts)
    if n < 2:
        return []
    out = []
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        if highprec.distance(p, q) < 1e-12:
            raise GeometryError(f"cone points {i + 1} and {(i + 1) % n + 1} coincide")
        out.append(hyp.geodesic_between(complex(p), complex(q)))
    return out


# -- clipping ----------------------------------------------------------------------

def _lift(z):
    s = 1 - abs(z) ** 2
    return ((1 + abs(z) ** 2) / s, 2 * z.real / s, 2 * z.imag / s)


def _drop(x):
    return mpmath.mpc(x[1], x[2]) / (1 + x[0])


def _clip(p, q, radius: float):
    """Part of the geodesic segment pq inside the Euclidean disc of the given radius, or None.

    On the hyperboloid the segment is ``cosh(s) P + sinh(s) U`` for
    ``0 <= s <= L``, and the disc condition is a bound on the time
    coordinate, so the crossings solve a quadratic in ``e^s``.
    """
    with mpmath.workdps(_DPS):
        r2 = mpmath.mpf(radius) ** 2
        if abs(p) ** 2 <= r2 and abs(q) ** 2 <= r2:
            return p, q
        P, Q = _lift(p), _lift(q)
        ch = P[0] * Q[0] - P[1] * Q[1] - P[2] * Q[2]
        length = mpmath.acosh(max(ch, mpmath.mpf(1)))
        if length == 0:
            return None
        sh = mpmath.sinh(length)
        U = tuple((b - ch * a) / sh for a, b in zip(P, Q))
        bound = (1 + r2) / (1 - r2)  # time coordinate on the circle |z| = radius
        A, B = P[0], U[0]
        # A cosh s + B sinh s = bound  <=>  (A+B) x^2 - 2 bound x + (A-B) = 0 with x = e^s
        disc = bound ** 2 - (A + B) * (A - B)
        if disc <= 0:
            return None
        root = mpmath.sqrt(disc)
        lo = mpmath.log((bound - root) / (A + B)) if bound - root > 0 else -mpmath.inf
        hi = mpmath.log((bound + root) / (A + B))
        s0, s1 = max(lo, mpmath.mpf(0)), min(hi, length)
        if s1 - s0 < mpmath.mpf(10) ** -12:
            return None

        def point(t):
            return _drop(tuple(mpmath.cosh(t) * a + mpmath.sinh(t) * u for a, u in zip(P, U)))

        return (p if s0 == 0 else point(s0)), (q if s1 == length else point(s1))


def _segments(pairs, radius: float) -> list[GeodesicSegment]:
    out, seen = [], set()
    for p, q in pairs:
        clipped = _clip(p, q, radius)
        if clipped is None:
            continue
        a, b = complex(clipped[0]), complex(clipped[1])
        key = _edge_key(a, b)
        if key in seen or abs(a - b) < EDGE_QUANTUM:
            continue
        seen.add(key)
        out.append(hyp.geodesic_between(a, b))
    return out


# -- orbits ------------------------------------------------------------------------

def _group_elements(pts, orders, depth: int) -> list:
    """Distinct elements of word length at most ``depth`` in the rotations, in breadth-first order."""
    with mpmath.workdps(_DPS):
        gens = []
        for z, a in zip(pts, orders):
            m = highprec.rotation(z, a)
            gens.append(m)
            if a > 2:
                gens.append(highprec._inv(m))
        ident = (mpmath.mpc(1), mpmath.mpc(0))
        out = [ident]
        seen = {_probe_key(ident)}
        frontier = [ident]
        for _ in range(depth):
            nxt = []
            for g in frontier:
                for s in gens:
                    h = highprec._mul(g, s)
                    k = _probe_key(h)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(h)
            out.extend(nxt)
            frontier = nxt
        return out


def _probe_key(m) -> tuple[str, str]:
    z = highprec.apply(m, _PROBE)
    return mpmath.nstr(z.real, 30), mpmath.nstr(z.imag, 30)


def orbit(decoration_source, t=None, depth: int = 1, clip_radius: float = 1.0) -> list[GeodesicSegment]:
    """Images of the decoration under all group words of length at most ``depth``.

    ``decoration_source`` is the tuple (or enumerated class) whose decoration
    is propagated; ``t`` may name a different tuple supplying the isometries.
    """
    pts, orders = cone_points(decoration_source)
    gpts, gorders = cone_points(t) if t is not None else (pts, orders)
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)] if n > 1 else []
    radius = min(clip_radius, 1 - 1e-12)
    pairs = []
    for g in _group_elements(gpts, gorders, depth):
        for p, q in edges:
            pairs.append((highprec.apply(g, p), highprec.apply(g, q)))
    return _segments(pairs, radius)


def base_edges(depth: int, clip_radius: float = 1.0) -> list[GeodesicSegment]:
    """Edges of the ⋆246 triangulation reached by reflection words of length at most ``depth``."""
    tri = frame246().triangle
    v = tri.vertices
    sides = [(v["p"], v["q"]), (v["q"], v["r"]), (v["r"], v["p"])]
    words, frontier = [Isometry.identity()], [Isometry.identity()]
    seen = {_float_key(Isometry.identity())}
    for _ in range(depth):
        nxt = []
        for g in frontier:
            for r in tri.reflections:
                h = g @ r
                k = _float_key(h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(h)
        words.extend(nxt)
        frontier = nxt
    with mpmath.workdps(_DPS):
        pairs = [(mpmath.mpc(g(a)), mpmath.mpc(g(b))) for g in words for a, b in sides]
    return _segments(pairs, min(clip_radius, 1 - 1e-12))


def _float_key(m: Isometry) -> tuple:
    z = m(complex(_PROBE))
    return round(z.real, 9), round(z.imag, 9)


def dodecagon_edges() -> list[GeodesicSegment]:
    vs = genus3_dodecagon().vertices
    return [hyp.geodesic_between(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]


def build_tiling(source, options: RenderOptions | None = None) -> DecoratedTiling:
    options = options or RenderOptions()
    deco = []
    if options.show_decoration:
        pts, _ = cone_points(source)
        n = len(pts)
        pairs = [(pts[i], pts[(i + 1) % n]) for i in range(n)] if n > 1 else []
        deco = _segments(pairs, min(options.clip_radius, 1 - 1e-12))
    orb = orbit(source, depth=options.depth, clip_radius=options.clip_radius) if options.show_decoration else []
    return DecoratedTiling(
        decoration_edges=deco,
        orbit_edges=orb,
        layers={"base_246": options.show_base, "dodecagon": options.show_dodecagon,
                "decoration": options.show_decoration},
        depth=options.depth,
        base_edges=base_edges(min(options.depth, 6), options.clip_radius) if options.show_base else [],
        dodecagon_edges=dodecagon_edges() if options.show_dodecagon else [],
    )


# -- SVG -----------------------------------------------------------------------------

_SCALE = CANVAS * (1 - 2 * MARGIN) / 2
_MID = CANVAS / 2


def _fmt(x: float) -> str:
    s = f"{x:.{DIGITS}f}"
    return "0." + "0" * DIGITS if s.lstrip("-") == "0." + "0" * DIGITS else s


def _xy(z: complex) -> tuple[str, str]:
    return _fmt(_MID + _SCALE * z.real), _fmt(_MID - _SCALE * z.imag)


def _is_line(seg: GeodesicSegment) -> bool:
    if seg.is_diameter or seg.radius > LINE_RADIUS:
        return True
    d = seg.q - seg.p
    return abs((seg.p.conjugate() * seg.q).imag) / abs(d) < LINE_TOL


def segment_element(seg: GeodesicSegment) -> str:
    x1, y1 = _xy(seg.p)
    x2, y2 = _xy(seg.q)
    if _is_line(seg):
        return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>'
    c = seg.center
    # counterclockwise about the centre in the disc is clockwise on screen
    sweep = 1 if ((seg.p - c).conjugate() * (seg.q - c)).imag > 0 else 0
    r = _fmt(_SCALE * seg.radius)
    return f'<path d="M {x1} {y1} A {r} {r} 0 0 {sweep} {x2} {y2}"/>'


def _layer(name: str, color: str, width: float, segs: Sequence[GeodesicSegment]) -> list[str]:
    lines = [f'<g id="{name}" fill="none" stroke="{color}" stroke-width="{width}">']
    lines.extend("  " + segment_element(s) for s in segs)
    lines.append("</g>")
    return lines


def emit_svg(tiling: DecoratedTiling) -> str:
    """Deterministic SVG text for the tiling; the unit disc fills the canvas up to a small margin."""
    c = _fmt(_MID)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {int(CANVAS)} {int(CANVAS)}" '
        f'width="{int(CANVAS)}" height="{int(CANVAS)}">',
        f'<circle id="boundary" cx="{c}" cy="{c}" r="{_fmt(_SCALE)}" fill="none" stroke="{BOUNDARY_COLOR}" '
        'stroke-width="1.5"/>',
    ]
    if tiling.layers.get("base_246") and tiling.base_edges:
        out += _layer("base_246", BASE_COLOR, 0.6, tiling.base_edges)
    if tiling.layers.get("dodecagon") and tiling.dodecagon_edges:
        out += _layer("dodecagon", DODECAGON_COLOR, 2.0, tiling.dodecagon_edges)
    if tiling.layers.get("decoration"):
        keys = {_edge_key(s.p, s.q) for s in tiling.decoration_edges}
        rest = [s for s in tiling.orbit_edges if _edge_key(s.p, s.q) not in keys]
        if rest:
            out += _layer("orbit", DECORATION_COLOR, 1.0, rest)
        if tiling.decoration_edges:
            out += _layer("decoration", DECORATION_COLOR, 2.5, tiling.decoration_edges)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(source, options: RenderOptions | None = None) -> str:
    return emit_svg(build_tiling(source, options))


# -- re-parsing --------------------------------------------------------------------

@dataclass(frozen=True)
class ParsedSegment:
    p: complex
    q: complex
    center: complex | None
    radius: float | None


def _to_disc(x: float, y: float) -> complex:
    return complex((x - _MID) / _SCALE, (_MID - y) / _SCALE)


_ARC = re.compile(r"M\s+(\S+)\s+(\S+)\s+A\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)\s+(\S+)")


def _arc_center(p: complex, q: complex, r: float, sweep: int) -> complex:
    """Centre of the minor arc of radius ``r`` from ``p`` to ``q`` drawn with the given sweep flag."""
    m = (p + q) / 2
    half = abs(q - p) / 2
    h = math.sqrt(max(r * r - half * half, 0.0))
    n = (q - p) / abs(q - p) * 1j  # left normal in disc orientation
    # a counterclockwise minor arc has its centre on the left of p -> q
    return m + n * h if sweep == 1 else m - n * h


def parse_svg(text: str) -> list[ParsedSegment]:
    """Geodesic segments drawn in an SVG produced by ``emit_svg``, in disc coordinates."""
    root = ET.fromstring(text)
    out = []
    for el in root.iter():
        tag = el.tag.rsplit("}", 1)[-1]
        if tag == "line":
            p = _to_disc(float(el.get("x1")), float(el.get("y1")))
            q = _to_disc(float(el.get("x2")), float(el.get("y2")))
            out.append(ParsedSegment(p, q, None, None))
        elif tag == "path":
            m = _ARC.match(el.get("d").strip())
            if not m:
                raise ValueError(f"unexpected path data {el.get('d')!r}")
            x1, y1, rx, _, _, _, sweep, x2, y2 = m.groups()
            p = _to_disc(float(x1), float(y1))
            q = _to_disc(float(x2), float(y2))
            r = float(rx) / _SCALE
            out.append(ParsedSegment(p, q, _arc_center(p, q, r, int(sweep)), r))
    return out


def all_segments(tiling: DecoratedTiling) -> list[GeodesicSegment]:
    """Segments in the order ``emit_svg`` writes them."""
    out = []
    if tiling.layers.get("base_246"):
        out += tiling.base_edges
    if tiling.layers.get("dodecagon"):
        out += tiling.dodecagon_edges
    if tiling.layers.get("decoration"):
        keys = {_edge_key(s.p, s.q) for s in tiling.decoration_edges}
        out += [s for s in tiling.orbit_edges if _edge_key(s.p, s.q) not in keys]
        out += tiling.decoration_edges
    return out
