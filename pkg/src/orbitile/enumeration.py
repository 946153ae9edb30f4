"""Breadth-first enumeration of tilings reachable from a starting realization.

A tiling class is a generator tuple up to conjugation by the group it
generates. Classes are keyed canonically inside the ⋆246 frame: the first
cone point is moved to a fixed representative of its orbit, the remaining
freedom (its cyclic stabilizer) is minimized over, and the resulting
points are quantized on the hyperboloid.
"""

from __future__ import annotations

import hashlib
import json
import math

import mpmath
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from . import highprec
from . import hyperbolic as hyp
from .hyperbolic import GeometryError, Isometry
from .mcg_generators import McgGenerator, generators_for
from .orbifold_symbol import Presentation
from .realization import (
    Catalog, Frame246, GeneratorTuple, PERM_ID, frame246, load_catalog, pinv, pmul,
    realize, tuple_image,
)
from .words import Automorphism, compose, identity

#: a reduced cone point must land this close to a base vertex
SNAP_TOL = 1e-6
#: positions for the isometry-invariant shape signature
SHAPE_QUANTUM = 1e-6

MIRRORS_AT = {"p": "01", "q": "12", "r": "20"}


@dataclass(frozen=True)
class EnumerationConfig:
    count: int = 40
    max_word_length: int = 12
    pure: bool = False
    partition: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class TilingClass:
    """One class found by the enumeration.

    ``points`` are the high precision cone points of the canonical
    representative, whose first point is a vertex of the base triangle;
    ``centred`` is the same tuple moved towards the middle of its cone
    points, which keeps the double precision ``tuple`` usable for longer.
    ``signature`` identifies the tuple up to conjugation by the group itself;
    two classes may still be conjugate by an isometry outside the group (see
    ``shape_signature``), and are then different markings of one picture.
    """

    index: int
    word: tuple[str, ...]
    auto: Automorphism
    points: tuple
    centred: tuple
    presentation: Presentation
    label: str
    signature: bytes

    @cached_property
    def tuple(self) -> GeneratorTuple:
        ms = []
        for z, g in zip(self.centred, self.presentation.generators):
            a, b = highprec.rotation(z, g.order)
            ms.append(Isometry(complex(a), complex(b)))
        return GeneratorTuple(self.presentation, tuple(ms), self.label)

    def relation_residual(self) -> float:
        """Residual of the stellate relations, evaluated at high precision."""
        orders = [g.order for g in self.presentation.generators]
        return highprec.stellate_residual(self.points, orders)

    @property
    def signature_hex(self) -> str:
        return hashlib.sha256(self.signature).hexdigest()

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "word": " ".join(self.word),
            "signature_hex": self.signature_hex,
            "fixed_points": [[round(float(z.real), 12) + 0.0, round(float(z.imag), 12) + 0.0] for z in self.points],
        }


@dataclass
class EnumerationResult:
    symbol: str
    label: str
    classes: list[TilingClass] = field(default_factory=list)
    # "orbit_exhausted": every reachable class found; "count_reached";
    # "budget_exhausted": word length limit hit before reaching the count
    status: str = ""
    explored_length: int = 0

    @property
    def complete(self) -> bool:
        return self.status == "orbit_exhausted"


# -- frame bookkeeping -----------------------------------------------------------

@lru_cache(maxsize=1)
def _perm_words() -> dict:
    """A shortest reflection word for every element of the order-96 quotient."""
    frame = frame246()
    out = {PERM_ID: ""}
    todo = deque([""])
    while todo and len(out) < 96:
        w = todo.popleft()
        for ch in "012":
            nw = w + ch
            p = frame.word_perm(nw)
            if p not in out:
                out[p] = nw
                todo.append(nw)
    return out


@lru_cache(maxsize=3)
def _stabilizer(key: str) -> tuple[tuple[str, Isometry], ...]:
    """The dihedral stabilizer of a base vertex as (word, isometry) pairs."""
    frame = frame246()
    i, j = MIRRORS_AT[key]
    out = {}
    for n in range(2 * 6 + 1):
        for start in (i, j):
            w = "".join(start if k % 2 == 0 else (j if start == i else i) for k in range(n))
            m = frame.word_isometry(w)
            probe = m(0.1 + 0.05j)
            out.setdefault((round(probe.real, 9), round(probe.imag, 9), m.reversing), (w, m))
    return tuple(sorted(out.values(), key=lambda t: (len(t[0]), t[0])))


Points = tuple  # cone points as mpmath complex numbers, one per generator

#: hyperboloid coordinates of canonical cone points are keyed on this grid
KEY_QUANTUM = mpmath.mpf("1e-12")


def _point_key(z) -> tuple[int, int]:
    _, x, y = highprec.hyperboloid(z)
    return int(mpmath.nint(x / KEY_QUANTUM)), int(mpmath.nint(y / KEY_QUANTUM))


class FrameCanonicalizer:
    """Canonical form of stellate tuples up to conjugation by their own group.

    Tuples are handled as lists of cone points at high precision: after a
    few twists the points drift far enough from the origin that double
    precision cannot even tell them from the boundary circle.
    """

    def __init__(self, start: GeneratorTuple, frame: Frame246 | None = None):
        self.frame = frame or frame246()
        self.precise = highprec.precise_frame()
        self.presentation = start.presentation
        self.image = frozenset(tuple_image(start, self.frame))
        self.orders = tuple(g.order for g in start.presentation.generators)

    def lift(self, pts: Sequence[complex]) -> Points:
        """Exact triangulation vertices closest to double precision cone points."""
        out = []
        for z in pts:
            named = self.frame.vertex_of_point(z, tol=SNAP_TOL)
            if named is None:
                raise GeometryError(f"point {z} is not a triangulation vertex")
            out.append(self.precise.vertex_point(*named))
        return tuple(out)

    # substitution ---------------------------------------------------------------
    def substitute(self, a: Automorphism, pts: Points) -> Points:
        """Cone points of the tuple obtained by substituting ``a``."""
        try:
            return highprec.substitute_points(a.images, pts, self.orders)
        except ValueError as exc:
            raise GeometryError(str(exc)) from exc

    # canonical form ---------------------------------------------------------------
    def candidates(self, pts: Points, offset: str = "") -> list[Points]:
        """Images under the group elements moving the first cone point to its orbit representative.

        ``pts`` are the cone points of the tuple of interest moved by the
        orientation preserving ⋆246 element spelled ``offset``.
        """
        frame = self.frame
        word, key = self.precise.descent_word(pts[0])
        g = frame.word_perm(word)
        h = frame.word_perm(offset)
        stab = _stabilizer(key)
        # the orbit of the true point is labelled by the double coset H h^-1 g S
        coset = {pmul(pmul(x, pmul(pinv(h), g)), frame.word_perm(w)) for x in self.image for w, _ in stab}
        words = _perm_words()
        rho = min(coset, key=lambda q: (len(words[q]), words[q]))
        out = []
        for w, s in stab:
            c = words[rho] + w + word[::-1]
            perm = pmul(pmul(pmul(rho, frame.word_perm(w)), pinv(g)), h)
            if len(c) % 2 or perm not in self.image:
                continue
            out.append(tuple(self.precise.apply_word(c, z) for z in pts))
        if len(out) != self.orders[0]:
            raise GeometryError(f"expected {self.orders[0]} canonical conjugates, found {len(out)}")
        return out

    def canonical(self, pts: Points, offset: str = "") -> tuple[bytes, Points]:
        keyed = [(tuple(_point_key(z) for z in c), c) for c in self.candidates(pts, offset)]
        key, cpts = min(keyed, key=lambda kc: kc[0])
        return repr(key).encode(), cpts

    def recentre(self, pts: Points) -> tuple[Points, str]:
        """Move the cone points by a rotation in ⋆246 towards the midpoint of their farthest pair."""
        far = max(((i, j) for i in range(len(pts)) for j in range(i)),
                  key=lambda ij: highprec.distance(pts[ij[0]], pts[ij[1]]), default=(0, 0))
        word, _ = self.precise.reduce_point(highprec.midpoint(pts[far[0]], pts[far[1]]))
        offset = word[::-1]
        if len(offset) % 2:
            offset = "0" + offset  # keep the motion orientation preserving
        return tuple(self.precise.apply_word(offset, z) for z in pts), offset


# -- enumeration -------------------------------------------------------------------

def _alphabet(gens: Sequence[McgGenerator]) -> list[tuple[str, Automorphism]]:
    out = []
    for g in gens:
        out.append((g.name, g.auto))
        out.append((g.inverse_name, g.auto.inverse()))
    return out


def enumerate_classes(symbol: str, label: str | None = None, config: EnumerationConfig | None = None,
                      catalog: Catalog | None = None) -> EnumerationResult:
    """Classes of tilings reachable by the (semi-)pure mapping class group, in shortlex order.

    Words are read left to right as successive substitutions, so the tuple of
    ``w x`` is ``x`` applied to the tuple of ``w``. Only words whose proper
    prefixes name new classes are expanded; each class is reported with the
    shortlex-first word reaching it.
    """
    config = config or EnumerationConfig()
    catalog = catalog or load_catalog()
    entry = catalog.lookup(symbol, label)
    start = realize(entry)
    p = start.presentation
    canon = FrameCanonicalizer(start)
    letters = _alphabet(generators_for(p, pure=config.pure, partition=config.partition))
    result = EnumerationResult(symbol, entry.label)
    if config.count <= 0:
        result.status = "count_reached"
        return result

    def visit(word, auto, key, cpts):
        centred, offset = canon.recentre(cpts)
        result.classes.append(TilingClass(len(result.classes) + 1, word, auto, cpts, centred, p, entry.label, key))
        return word, auto, centred, offset

    key0, c0 = canon.canonical(canon.lift(start.fixed_points()))
    seen = {key0}
    frontier = [visit((), identity(p.rank), key0, c0)]
    length = 0
    result.status = "orbit_exhausted"
    while frontier:
        if len(result.classes) >= config.count:
            result.status = "count_reached"
            break
        if length >= config.max_word_length:
            result.status = "budget_exhausted"
            break
        length += 1
        nxt = []
        for word, auto, pts, offset in frontier:
            for name, a in letters:
                if len(result.classes) >= config.count:
                    break
                key, cpts = canon.canonical(canon.substitute(a, pts), offset)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(visit(word + (name,), compose(auto, a), key, cpts))
        frontier = nxt
    if result.status == "orbit_exhausted" and len(result.classes) >= config.count and frontier:
        result.status = "count_reached"
    result.explored_length = length
    return result


def iter_json_lines(result: EnumerationResult) -> Iterator[str]:
    for c in result.classes:
        yield json.dumps(c.to_json())


# -- isometry-invariant shape signature ----------------------------------------------

@dataclass(frozen=True)
class ShapeSignature:
    orders: tuple[int, ...]
    points: tuple[tuple[int, int], ...]

    def to_bytes(self) -> bytes:
        return repr((self.orders, self.points)).encode()

    def hex(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()


def _normalizing_isometry(p1: complex, p2: complex, reflect: bool = False) -> Isometry:
    """Orientation preserving (or reversing, if ``reflect``) map sending p1 to 0 and p2 to the positive axis."""
    t = hyp.translation_to(p1).inverse()
    w = t(p2)
    rot = Isometry(complex(math.cos(-math.atan2(w.imag, w.real) / 2),
                           math.sin(-math.atan2(w.imag, w.real) / 2)))
    m = rot @ t
    if reflect:
        m = hyp.reflection_in_diameter(0.0) @ m
    return m


def shape_signature(points: Sequence, orders: Sequence[int]) -> ShapeSignature:
    """Cone points after moving the first to 0 and the second onto the positive real axis, quantized.

    Works at high precision, so it also applies to tuples whose points are
    too spread out for double precision.
    """
    with mpmath.workdps(highprec.FRAME_DPS):
        pts = [mpmath.mpc(z) for z in points]
        p0 = pts[0]
        moved = [(z - p0) / (1 - mpmath.conj(p0) * z) for z in pts]
        if len(moved) > 1:
            if abs(moved[1]) < mpmath.mpf(10) ** -12:
                raise GeometryError("first two fixed points coincide")
            turn = abs(moved[1]) / moved[1]
            moved = [turn * z for z in moved]
        q = tuple((int(mpmath.nint(z.real / SHAPE_QUANTUM)), int(mpmath.nint(z.imag / SHAPE_QUANTUM)))
                  for z in moved)
    return ShapeSignature(tuple(orders), q)


def signature_of(t) -> ShapeSignature:
    """Shape of a tuple (or enumerated class) up to orientation preserving isometries.

    Equal for tuples that differ by conjugation by an orientation preserving
    isometry (and by the sign of the matrices).
    """
    if isinstance(t, GeneratorTuple):
        pts = t.fixed_points()
        if any(z is None for z in pts):
            raise GeometryError("signature_of needs every generator to be a rotation")
    else:
        pts = t.points
    return shape_signature(pts, [g.order for g in t.presentation.generators])


# -- ambiguity ---------------------------------------------------------------------

@dataclass(frozen=True)
class AmbiguityWitness:
    permutation: tuple[int, ...]  # 1-based: generator i corresponds to generator permutation[i-1]
    reversing: bool
    # realized by an isometry carrying the starting decoration onto itself
    geometric: bool = False

    def cycles(self) -> str:
        seen, parts = set(), []
        for i in range(1, len(self.permutation) + 1):
            if i in seen or self.permutation[i - 1] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.permutation[j - 1]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


@dataclass(frozen=True)
class AmbiguityReport:
    symbol: str
    label: str
    palindromic: bool
    witnesses: tuple[AmbiguityWitness, ...]

    @property
    def ambiguous(self) -> bool:
        return bool(self.witnesses)

    @property
    def fixes_decoration(self) -> bool:
        return any(w.geometric for w in self.witnesses)

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol,
            "label": self.label,
            "palindromic": self.palindromic,
            "ambiguous": self.ambiguous,
            "fixes_decoration": self.fixes_decoration,
            "witnesses": [{"permutation": w.cycles(), "reversing": w.reversing, "geometric": w.geometric}
                          for w in self.witnesses],
        }


def dihedral_permutations(n: int) -> list[tuple[tuple[int, ...], bool]]:
    """Rotations and reflections of the cyclic order 1..n as (permutation, is_reflection)."""
    out = []
    for k in range(n):
        out.append((tuple((i + k) % n + 1 for i in range(n)), False))
    for k in range(n):
        out.append((tuple((k - i) % n + 1 for i in range(n)), True))
    return out


def is_palindromic(orders: Sequence[int]) -> bool:
    """True when the cyclic order vector read backwards is one of its own rotations."""
    orders = tuple(orders)
    back = orders[::-1]
    return any(back[k:] + back[:k] == orders for k in range(len(orders)))


def detect_ambiguity_of(t: GeneratorTuple, symbol: str = "", label: str = "",
                        tol: float = 1e-9) -> AmbiguityReport:
    """Relabellings of the cone points that keep the presentation, and which of them the decoration cannot see.

    Every dihedral relabelling ``pi`` of the cyclic order that preserves the
    orders yields the same presentation, so it is reported. It is marked
    geometric when some isometry carries each fixed point ``p_pi(i)`` to
    ``p_i``; relabellings that reverse the cyclic order need a reversing
    isometry, since they reverse the decoration loop.
    """
    pts = t.fixed_points()
    orders = [g.order for g in t.presentation.generators]
    n = len(pts)
    witnesses = []
    for perm, refl in dihedral_permutations(n):
        if perm == tuple(range(1, n + 1)):
            continue
        if any(orders[perm[i] - 1] != orders[i] for i in range(n)):
            continue
        src = [pts[perm[i] - 1] for i in range(n)]
        a = _normalizing_isometry(src[0], src[1], reflect=refl)
        b = _normalizing_isometry(pts[0], pts[1])
        h = b.inverse() @ a
        geometric = all(abs(h(s) - q) < tol for s, q in zip(src, pts))
        witnesses.append(AmbiguityWitness(perm, refl, geometric))
    return AmbiguityReport(symbol, label, is_palindromic(orders), tuple(witnesses))


def detect_ambiguity(symbol: str, label: str | None = None, catalog: Catalog | None = None) -> AmbiguityReport:
    catalog = catalog or load_catalog()
    entry = catalog.lookup(symbol, label)
    return detect_ambiguity_of(realize(entry), symbol, entry.label)
