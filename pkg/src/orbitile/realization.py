"""Concrete generator tuples inside the ⋆246 reflection group.

The frame is the (2,4,6) triangle group with its order-6 vertex at the
origin. Its genus-3 translation subgroup ``T`` is the kernel of a map onto
a group of order 96, given below as a degree-8 permutation representation
(found by a low-index subgroup search and checked in the test suite). The
Dirichlet domain of ``T`` about the origin is a regular dodecagon.
"""

from __future__ import annotations

import cmath
import json
import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from typing import Iterable, Sequence

from . import hyperbolic as hyp
from .hyperbolic import GeometryError, Isometry
from .orbifold_symbol import Presentation, euler_characteristic, presentation_for
from .words import Automorphism

CATALOG_ENV = "ORBITILE_CATALOG"
RELATION_TOL = 1e-9
ENTRY_TOL = 1e-6


class InvalidCatalogEntry(ValueError):
    pass


# -- triangle groups ------------------------------------------------------------

@dataclass(frozen=True)
class TriangleGroup:
    """Reflections s0, s1, s2 with s0 s1, s1 s2, s2 s0 of orders p, q, r."""

    orders: tuple[int, int, int]
    reflections: tuple[Isometry, Isometry, Isometry]
    vertices: dict  # "p" -> fixed point of s0 s1, "q" -> of s1 s2, "r" -> of s2 s0
    # for each mirror: (center, radius) of its circle, or (angle, None) for a diameter
    mirrors: tuple

    def interior_point(self) -> complex:
        v = list(self.vertices.values())
        k = [hyp.to_klein(z) for z in v]
        return hyp.from_klein(sum(k) / 3)

    def side_sign(self, i: int, z: complex) -> float:
        """Positive on the side of mirror ``i`` containing the base triangle."""
        return self._raw_sign(i, z) * self._interior_sign[i]

    def _raw_sign(self, i: int, z: complex) -> float:
        c, rad = self.mirrors[i]
        if rad is None:
            return (z * cmath.exp(-1j * c)).imag
        return abs(z - c) - rad

    @cached_property
    def _interior_sign(self) -> tuple[float, float, float]:
        o = self.interior_point()
        return tuple(1.0 if self._raw_sign(i, o) > 0 else -1.0 for i in range(3))

    def reduce_point(self, z: complex, max_steps: int = 10000) -> tuple[str, complex]:
        """Reflect ``z`` into the base triangle; returns (word, image) with word(image) == z."""
        letters = []
        for _ in range(max_steps):
            worst = min(range(3), key=lambda i: self.side_sign(i, z))
            if self.side_sign(worst, z) >= -1e-13:
                return "".join(letters), z
            z = self.reflections[worst](z)
            letters.append(str(worst))
        raise GeometryError("point reduction did not terminate")

    def descent_word(self, z: complex, tol: float = 1e-10, max_steps: int = 10000) -> tuple[str, complex]:
        """Like ``reduce_point`` but always reflecting in the lowest-numbered separating mirror.

        Decisions only depend on which mirrors separate the point from the
        base triangle, so points on mirrors get the same word on every run.
        """
        letters = []
        for _ in range(max_steps):
            for i in range(3):
                if self.side_sign(i, z) < -tol:
                    z = self.reflections[i](z)
                    letters.append(str(i))
                    break
            else:
                return "".join(letters), z
        raise GeometryError("point reduction did not terminate")

    def word_isometry(self, word: str) -> Isometry:
        out = Isometry.identity()
        for ch in word:
            out = out @ self.reflections[int(ch)]
        return out

    def rotation_at_vertex(self, key: str) -> Isometry:
        """Counterclockwise generator of the stabilizer of a base vertex."""
        i, j = {"p": (0, 1), "q": (1, 2), "r": (2, 0)}[key]
        m = self.reflections[i] @ self.reflections[j]
        ang = hyp.classify(m).angle
        return m if ang < math.pi else m.inverse()


def _triangle_at_origin(aO: float, aB: float, aC: float):
    """Vertices O=0, B on the positive real axis, C on the ray at angle aO."""
    def side(opp, x, y):
        return (math.cos(opp) + math.cos(x) * math.cos(y)) / (math.sin(x) * math.sin(y))
    dOB = math.acosh(side(aC, aO, aB))
    dOC = math.acosh(side(aB, aO, aC))
    B = math.tanh(dOB / 2) + 0j
    C = math.tanh(dOC / 2) * cmath.exp(1j * aO)
    return B, C


def triangle_group(p: int, q: int, r: int, center: str = "q") -> TriangleGroup:
    """The (p, q, r) reflection triangle group with the chosen vertex at the origin."""
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        kind = "Euclidean" if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) == 1 else "spherical"
        raise GeometryError(f"({p},{q},{r}) is {kind}, not hyperbolic")
    angle = {"p": math.pi / p, "q": math.pi / q, "r": math.pi / r}
    # mirrors meeting at each vertex, and the next vertex counterclockwise
    pairs = {"p": (0, 1), "q": (1, 2), "r": (2, 0)}
    if center not in pairs:
        raise ValueError("center must be 'p', 'q' or 'r'")
    i, j = pairs[center]
    k = 3 - i - j
    # real axis is mirror i, the ray at angle pi/center is mirror j, mirror k is opposite
    vB = next(v for v, pr in pairs.items() if i in pr and v != center)
    vC = next(v for v, pr in pairs.items() if j in pr and v != center)
    B, C = _triangle_at_origin(angle[center], angle[vB], angle[vC])
    seg = hyp.geodesic_between(B, C)
    mirrors = [None, None, None]
    refl = [None, None, None]
    mirrors[i] = (0.0, None)
    refl[i] = hyp.reflection_in_diameter(0.0)
    mirrors[j] = (angle[center], None)
    refl[j] = hyp.reflection_in_diameter(angle[center])
    mirrors[k] = (seg.center, seg.radius)
    refl[k] = hyp.reflection_in_circle(seg.center, seg.radius)
    vertices = {center: 0j, vB: B, vC: C}
    return TriangleGroup((p, q, r), tuple(refl), vertices, tuple(mirrors))


# -- the ⋆246 frame and its genus-3 subgroup ------------------------------------

# images of s0, s1, s2 in a transitive degree-8 permutation group of order 96
# whose kernel is torsion free (0-based; p[x] is the image of x)
FRAME_PERMUTATIONS = (
    (0, 1, 2, 3, 6, 7, 4, 5),
    (0, 1, 3, 2, 4, 5, 6, 7),
    (1, 0, 4, 5, 2, 3, 6, 7),
)
VERTEX_ORDER = {"p": 2, "q": 4, "r": 6}
ORDER_KEY = {2: "p", 4: "q", 6: "r"}

Perm = tuple


def pmul(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[x] for x in q)


def pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


PERM_ID = tuple(range(8))


def closure(gens: Iterable[Perm]) -> frozenset:
    gens = list(gens)
    seen = {PERM_ID}
    todo = [PERM_ID]
    while todo:
        x = todo.pop()
        for g in gens:
            y = pmul(g, x)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class Dodecagon:
    vertices: tuple[complex, ...]
    side_pairings: tuple[Isometry, ...]  # side k+6 (from vertex k+6 to k+7) onto side k

    def area(self) -> float:
        return hyp.polygon_area(self.vertices)

    def contains(self, z: complex, tol: float = 1e-9) -> bool:
        return all(s >= -tol for s in self._side_values(z))

    def _side_values(self, z: complex) -> list[float]:
        out = []
        k = hyp.to_klein(z)
        kv = [hyp.to_klein(v) for v in self.vertices]
        for a, b in zip(kv, kv[1:] + kv[:1]):
            out.append(((b - a).conjugate() * (k - a)).imag)
        return out

    def reduce(self, z: complex, max_steps: int = 1000) -> tuple[complex, Isometry]:
        """Translate ``z`` into the closed dodecagon; returns (image, translation used)."""
        g = Isometry.identity()
        for _ in range(max_steps):
            vals = self._side_values(z)
            worst = min(range(12), key=lambda i: vals[i])
            if vals[worst] >= -1e-12:
                return z, g
            # the pairing that carries the outside across side ``worst`` back in
            t = self.pairing_onto(worst).inverse()
            z = t(z)
            g = t @ g
        raise GeometryError("dodecagon reduction did not terminate")

    def pairing_onto(self, side: int) -> Isometry:
        """Translation mapping the opposite side onto ``side`` (domain ends up across it)."""
        if side < 6:
            return self.side_pairings[side]
        return self.side_pairings[side - 6].inverse()


def _isometry_from_pairs(p0, q0, p1, q1) -> Isometry:
    """Orientation preserving isometry with p0 -> p1 and q0 -> q1 (equal distances)."""
    t0 = hyp.translation_to(p0).inverse()
    t1 = hyp.translation_to(p1).inverse()
    a0 = cmath.phase(t0(q0))
    a1 = cmath.phase(t1(q1))
    rot = Isometry(cmath.exp(0.5j * (a1 - a0)))
    return t1.inverse() @ rot @ t0


class Frame246:
    """The ⋆246 group with its order-96 quotient and genus-3 subgroup."""

    def __init__(self):
        self.triangle = triangle_group(2, 4, 6, center="r")
        self.perms = FRAME_PERMUTATIONS
        self.origin_probe = self.triangle.interior_point()

    # group elements ---------------------------------------------------------
    def word_isometry(self, word: str) -> Isometry:
        return self.triangle.word_isometry(word)

    def word_perm(self, word: str) -> Perm:
        out = PERM_ID
        for ch in word:
            out = pmul(out, self.perms[int(ch)])
        return out

    def element_word(self, h: Isometry, tol: float = 1e-7) -> str | None:
        """Reflection word equal to ``h`` if ``h`` lies in ⋆246, else None."""
        word, _ = self.triangle.reduce_point(h(self.origin_probe))
        back = self.word_isometry(word).inverse() @ h
        if back.is_identity(tol):
            return word
        return None

    def perm_of(self, h: Isometry) -> Perm:
        word = self.element_word(h)
        if word is None:
            raise GeometryError("isometry is not in the ⋆246 group")
        return self.word_perm(word)

    def rotation_at(self, word: str, key: str, order: int) -> Isometry:
        """Counterclockwise rotation by 2 pi / order about the vertex word(v_key)."""
        m = VERTEX_ORDER[key]
        if m % order:
            raise GeometryError(f"a vertex of order {m} carries no rotation of order {order}")
        base = self.triangle.rotation_at_vertex(key) ** (m // order)
        w = self.word_isometry(word)
        if w.reversing:
            base = base.inverse()
        return w @ base @ w.inverse()

    def vertex_point(self, word: str, key: str) -> complex:
        return self.word_isometry(word)(self.triangle.vertices[key])

    def vertex_of_point(self, z: complex, tol: float = 1e-8) -> tuple[str, str] | None:
        """(word, key) naming ``z`` as a triangulation vertex, if it is one."""
        word, base = self.triangle.reduce_point(z)
        for key, v in self.triangle.vertices.items():
            if abs(base - v) < tol:
                return word, key
        return None

    # the quotient and the translation subgroup --------------------------------
    @cached_property
    def image_group(self) -> frozenset:
        return closure(self.perms)

    @cached_property
    def rotation_image(self) -> frozenset:
        s0, s1, s2 = self.perms
        return closure([pmul(s0, s1), pmul(s1, s2)])

    def in_translation_subgroup(self, h: Isometry) -> bool:
        word = self.element_word(h)
        return word is not None and not h.reversing and self.word_perm(word) == PERM_ID

    def subgroup_class_key(self, H: Iterable[Perm]) -> tuple:
        """Canonical label of the conjugacy class of H inside the order-96 image."""
        H = list(H)
        best = None
        for g in self.image_group:
            gi = pinv(g)
            conj = tuple(sorted(pmul(pmul(g, h), gi) for h in H))
            if best is None or conj < best:
                best = conj
        return best

    @cached_property
    def dodecagon(self) -> Dodecagon:
        rho = math.sqrt(7 / 8)
        theta = math.atan(1 / (3 * math.sqrt(3)))
        verts = []
        for k in range(6):
            base = k * math.pi / 3
            verts.append(rho * cmath.exp(1j * (base - theta)))
            verts.append(rho * cmath.exp(1j * (base + theta)))
        verts = tuple(verts)
        pairings = []
        for k in range(6):
            # side k runs verts[k] -> verts[k+1]; side k+6 is opposite and reversed
            a, b = verts[k], verts[(k + 1) % 12]
            c, d = verts[k + 6], verts[(k + 7) % 12]
            pairings.append(_isometry_from_pairs(c, d, b, a))
        return Dodecagon(verts, tuple(pairings))

    def vertices_in_dodecagon(self, tol: float = 1e-9) -> list[tuple[complex, str, str]]:
        """All triangulation vertices in the closed dodecagon as (point, word, key)."""
        dod = self.dodecagon
        out = {}
        todo = deque(("", k) for k in self.triangle.vertices)
        seen = set()
        while todo:
            word, key = todo.popleft()
            z = self.vertex_point(word, key)
            q = (round(z.real, 8), round(z.imag, 8))
            if q in seen:
                continue
            seen.add(q)
            if not dod.contains(z, tol):
                continue
            out[q] = (z, word, key)
            for i in "012":
                todo.append((i + word, key))
        return sorted(out.values(), key=lambda t: (round(abs(t[0]), 9), round(cmath.phase(t[0]), 9)))


@lru_cache(maxsize=1)
def frame246() -> Frame246:
    return Frame246()


def genus3_dodecagon() -> Dodecagon:
    return frame246().dodecagon


# -- generator tuples --------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorTuple:
    presentation: Presentation
    isometries: tuple[Isometry, ...]
    label: str = ""

    def evaluate(self, word: Sequence[int]) -> Isometry:
        out = Isometry.identity()
        for x in word:
            m = self.isometries[abs(x) - 1]
            out = out @ (m if x > 0 else m.inverse())
        return out

    def fixed_points(self) -> list[complex | None]:
        out = []
        for g, m in zip(self.presentation.generators, self.isometries):
            c = hyp.classify(m)
            out.append(c.fixed_point if isinstance(c, hyp.Elliptic) else None)
        return out

    def circumference(self) -> float:
        """Sum of distances between cyclically consecutive gyration fixed points."""
        pts = [z for z in self.fixed_points() if z is not None]
        if len(pts) < 2:
            return 0.0
        return sum(hyp.distance(a, b) for a, b in zip(pts, pts[1:] + pts[:1]))

    def conjugate(self, h: Isometry) -> GeneratorTuple:
        hi = h.inverse()
        return GeneratorTuple(self.presentation, tuple(h @ m @ hi for m in self.isometries),
                              self.label)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "generators": [g.label for g in self.presentation.generators],
            "isometries": [list(m.as_tuple()) for m in self.isometries],
            "fixed_points": [None if z is None else [z.real, z.imag] for z in self.fixed_points()],
        }


@dataclass(frozen=True)
class VerifyReport:
    order_residual: float
    relator_residual: float
    classifications: tuple
    inside_disc: bool

    @property
    def passed(self) -> bool:
        return (self.order_residual < RELATION_TOL and self.relator_residual < RELATION_TOL
                and self.inside_disc)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "order_residual": self.order_residual,
            "relator_residual": self.relator_residual,
            "inside_disc": self.inside_disc,
            "classifications": [type(c).__name__ for c in self.classifications],
        }


def _residual(m: Isometry) -> float:
    return m.distance_to(Isometry.identity())


def verify(t: GeneratorTuple) -> VerifyReport:
    p = t.presentation
    order_res = 0.0
    rel_res = 0.0
    for r in p.relators:
        res = _residual(t.evaluate(r))
        if len(set(abs(x) for x in r)) == 1:
            order_res = max(order_res, res)
        else:
            rel_res = max(rel_res, res)
    classes = tuple(hyp.classify(m) for m in t.isometries)
    inside = True
    for g, c in zip(p.generators, classes):
        if g.kind == "gyration":
            if not isinstance(c, hyp.Elliptic) or not abs(c.fixed_point) < 1 - hyp.DISC_MARGIN:
                inside = False
    return VerifyReport(order_res, rel_res, classes, inside)


def act_on_tuple(a: Automorphism, t: GeneratorTuple) -> GeneratorTuple:
    """Substitute: the new isometry of generator g is the old tuple evaluated on a(g).

    This is a right action: act(compose(a, b), t) == act(b, act(a, t)).
    """
    if a.rank != t.presentation.rank:
        raise ValueError("automorphism rank does not match the presentation")
    out = GeneratorTuple(t.presentation, tuple(t.evaluate(w) for w in a.images), t.label)
    rep = verify(out)
    if rep.order_residual > ENTRY_TOL or rep.relator_residual > ENTRY_TOL:
        raise GeometryError(f"evaluation residual too large: {rep.to_json()}")
    return out


# -- fundamental tile --------------------------------------------------------------

def fundamental_tile(t: GeneratorTuple) -> list[complex]:
    """Fundamental polygon of a stellate tuple bounded by lifts of the decoration loop.

    The loop through the fixed points p1..pn cuts the orbifold into two discs;
    the first lifts to the polygon p1..pn, the second is glued to it along the
    edge pn p1 and has vertices pn, rn^-1 p(n-1), rn^-1 r(n-1)^-1 p(n-2), ...
    """
    pts = t.fixed_points()
    ms = list(t.isometries)
    n = len(pts)
    if any(z is None for z in pts) or n < 3:
        raise GeometryError("fundamental_tile needs a stellate tuple of at least three gyrations")
    poly = list(pts)
    acc = Isometry.identity()
    for k in range(n - 1, 1, -1):
        acc = acc @ ms[k].inverse()
        poly.append(acc(pts[k - 1]))
    if _signed_area(poly) < 0:
        poly.reverse()
    return poly


def _signed_area(poly: Sequence[complex]) -> float:
    return sum(hyp.signed_triangle_area(poly[0], a, b) for a, b in zip(poly[1:], poly[2:]))


def tile_area(t: GeneratorTuple) -> float:
    return abs(_signed_area(fundamental_tile(t)))


# -- a generic stellate realization --------------------------------------------------

def polygon_with_angles(angles: Sequence[float]) -> list[complex]:
    """A convex counterclockwise polygon with the given interior angles.

    The polygon is circumscribed about a circle centred at the origin: the
    right triangle (origin, foot of the inradius, vertex) with angle a/2 at
    the vertex has angle phi at the origin with cos(a/2) = cosh(r) sin(phi),
    and the inradius r is fixed by requiring the phis to sum to pi.
    """
    n = len(angles)
    if n < 3 or any(not 0 < a < math.pi for a in angles) or sum(angles) >= (n - 2) * math.pi:
        raise GeometryError("angles admit no hyperbolic polygon")

    def phis(r):
        return [math.asin(math.cos(a / 2) / math.cosh(r)) for a in angles]

    lo, hi = 0.0, 1.0
    while sum(phis(hi)) > math.pi:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        if sum(phis(mid)) > math.pi:
            lo = mid
        else:
            hi = mid
    ph = phis((lo + hi) / 2)
    pts = []
    direction = 0.0
    for k, (a, phi) in enumerate(zip(angles, ph)):
        # hypotenuse of the right triangle: cosh c = cot(phi) cot(a/2)
        c = math.acosh(1 / (math.tan(phi) * math.tan(a / 2)))
        pts.append(math.tanh(c / 2) * cmath.exp(1j * direction))
        direction += phi + ph[(k + 1) % n]
    return pts


def stellate_tuple_from_polygon(p: Presentation, pts: Sequence[complex]) -> GeneratorTuple:
    orders = [g.order for g in p.generators]
    ms = tuple(hyp.rotation_about(z, a) for z, a in zip(pts, orders))
    return GeneratorTuple(p, ms, "generic")


def generic_realization(p: Presentation) -> GeneratorTuple:
    """A faithful stellate tuple: rotations about the corners of a polygon with angles pi/A."""
    sig = p.signature
    if sig is None or not sig.is_stellate or not sig.is_hyperbolic:
        raise GeometryError("generic realization needs a hyperbolic stellate signature")
    return _generic_cached(tuple(sig.gyrations))


@lru_cache(maxsize=64)
def _generic_cached(orders: tuple[int, ...]) -> GeneratorTuple:
    p = presentation_for("".join(str(a) if a < 10 else f"({a})" for a in orders))
    pts = polygon_with_angles([math.pi / a for a in orders])
    t = stellate_tuple_from_polygon(p, pts)
    if not verify(t).passed:
        raise GeometryError(f"generic realization failed verification: {verify(t).to_json()}")
    return t


# -- catalog ----------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationCatalogEntry:
    symbol: str
    label: str
    centers: tuple[tuple[str, str], ...]  # (reflection word, base vertex key)
    notes: str = ""
    circumference: float | None = None
    # words in the generators equal to the six dodecagon side pairings
    translation_words: tuple[tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol,
            "label": self.label,
            "centers": [{"word": w, "vertex": k} for w, k in self.centers],
            "notes": self.notes,
            "circumference": self.circumference,
            "translation_words": [list(w) for w in self.translation_words],
        }

    @classmethod
    def from_json(cls, d: dict) -> RealizationCatalogEntry:
        return cls(d["symbol"], d.get("label", "default"),
                   tuple((c["word"], c["vertex"]) for c in d["centers"]),
                   d.get("notes", ""), d.get("circumference"),
                   tuple(tuple(w) for w in d.get("translation_words", ())))


@dataclass(frozen=True)
class Catalog:
    version: int
    entries: tuple[RealizationCatalogEntry, ...]

    def lookup(self, symbol: str, label: str | None = None) -> RealizationCatalogEntry:
        matches = [e for e in self.entries if e.symbol == symbol]
        if label is not None:
            matches = [e for e in matches if e.label == label]
        if not matches:
            raise KeyError(f"no catalog entry for {symbol!r}" + (f" label {label!r}" if label else ""))
        return matches[0]

    def labels(self, symbol: str) -> list[str]:
        return [e.label for e in self.entries if e.symbol == symbol]

    def to_json(self) -> dict:
        return {"version": self.version, "entries": [e.to_json() for e in self.entries]}


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    path = path or os.environ.get(CATALOG_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(resources.files("orbitile").joinpath("data/catalog.json")
                          .read_text(encoding="utf-8"))
    if isinstance(data, list):
        data = {"version": 1, "entries": data}
    return Catalog(int(data.get("version", 1)),
                   tuple(RealizationCatalogEntry.from_json(e) for e in data["entries"]))


def realize(entry: RealizationCatalogEntry, frame: Frame246 | None = None) -> GeneratorTuple:
    frame = frame or frame246()
    p = presentation_for(entry.symbol)
    orders = [g.order for g in p.generators]
    if len(orders) != len(entry.centers) or any(g.kind != "gyration" for g in p.generators):
        raise InvalidCatalogEntry(f"{entry.symbol}: centers do not match a stellate presentation")
    pts = [frame.vertex_point(w, k) for w, k in entry.centers]
    for i in range(len(pts)):
        for j in range(i):
            if abs(pts[i] - pts[j]) < 1e-9:
                raise InvalidCatalogEntry(f"{entry.symbol}: centers {j + 1} and {i + 1} coincide")
    try:
        ms = tuple(frame.rotation_at(w, k, a) for (w, k), a in zip(entry.centers, orders))
    except GeometryError as exc:
        raise InvalidCatalogEntry(str(exc)) from exc
    t = GeneratorTuple(p, ms, entry.label)
    rep = verify(t)
    if rep.relator_residual > ENTRY_TOL or rep.order_residual > ENTRY_TOL:
        raise InvalidCatalogEntry(f"{entry.symbol}/{entry.label}: relation residual "
                                  f"{max(rep.relator_residual, rep.order_residual):.3g}")
    return t


def realize_symbol(symbol: str, label: str | None = None, catalog: Catalog | None = None) -> GeneratorTuple:
    catalog = catalog or load_catalog()
    return realize(catalog.lookup(symbol, label))


# -- subgroup bookkeeping ------------------------------------------------------------

def tuple_image(t: GeneratorTuple, frame: Frame246 | None = None) -> frozenset:
    """Image of the generated group in the order-96 quotient."""
    frame = frame or frame246()
    return closure(frame.perm_of(m) for m in t.isometries)


def index_in_frame(t: GeneratorTuple) -> int:
    """Index of the tuple's group in ⋆246, from its Euler characteristic."""
    chi = euler_characteristic(t.presentation.signature)
    idx = -24 * chi
    if idx.denominator != 1 or idx <= 0:
        raise GeometryError(f"Euler characteristic {chi} is not commensurate with ⋆246")
    return int(idx)


def contains_translation_subgroup(t: GeneratorTuple, frame: Frame246 | None = None) -> bool:
    """True when the image has exactly the size forced by the index, i.e. T lies in the group."""
    frame = frame or frame246()
    return len(tuple_image(t, frame)) * index_in_frame(t) == 96


def group_membership(h: Isometry, t: GeneratorTuple, frame: Frame246 | None = None) -> bool:
    """Whether ``h`` lies in the group generated by ``t`` (which must contain T)."""
    frame = frame or frame246()
    word = frame.element_word(h)
    if word is None:
        return False
    return frame.word_perm(word) in tuple_image(t, frame)


def _iso_key(m: Isometry, digits: int = 6) -> tuple:
    return (round(m.a.real, digits), round(m.a.imag, digits),
            round(m.b.real, digits), round(m.b.imag, digits), m.reversing)


def find_translation_words(t: GeneratorTuple, depth: int = 6,
                           frame: Frame246 | None = None) -> list[tuple[int, ...] | None]:
    """Words in the tuple's generators equal to the dodecagon side pairings.

    Meet in the middle over the ball of words of length <= depth. A full set
    of words certifies that the generated group contains the translation
    subgroup. Missing pairings come back as None.
    """
    frame = frame or frame246()
    gens = []
    for i, (g, m) in enumerate(zip(t.presentation.generators, t.isometries), start=1):
        gens.append((i, m))
        if g.order != 2:
            gens.append((-i, m.inverse()))
    ident = Isometry.identity()
    ball = {_iso_key(ident): ((), ident)}
    frontier = [((), ident)]
    for _ in range(depth):
        nxt = []
        for w, m in frontier:
            for x, s in gens:
                m2 = m @ s
                k = _iso_key(m2)
                if k not in ball:
                    ball[k] = (w + (x,), m2)
                    nxt.append(ball[k])
        frontier = nxt
    out = []
    for g in frame.dodecagon.side_pairings:
        best = None
        for w, m in ball.values():
            hit = ball.get(_iso_key(m.inverse() @ g))
            if hit is not None and (best is None or len(w) + len(hit[0]) < len(best)):
                best = w + hit[0]
        out.append(best)
    return out


def check_translation_words(t: GeneratorTuple, words: Sequence[Sequence[int]],
                            frame: Frame246 | None = None, tol: float = 1e-7) -> bool:
    """Whether the words evaluate to the six side pairings (so T lies in the group)."""
    frame = frame or frame246()
    pairings = frame.dodecagon.side_pairings
    if len(words) != len(pairings) or any(w is None for w in words):
        return False
    return all(t.evaluate(w).distance_to(g) < tol for w, g in zip(words, pairings))
