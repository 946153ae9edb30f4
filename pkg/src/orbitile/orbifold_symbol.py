"""Conway orbifold symbols and the standard presentation of their groups.

Accepted spelling (ASCII aliases in brackets)::

    handles* gyrations* ('*' corners*)* crosscaps* handles*

with ``∘`` [``o``] for a handle, ``⋆`` [``*``] opening a mirror boundary,
``×`` [``x``] for a crosscap. Orders are single digits 2-9; larger orders
are parenthesized, e.g. ``(12)``. Whitespace is ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Word = tuple  # tuple of signed 1-based generator indices

HANDLE = {"o", "∘", "○"}
MIRROR = {"*", "⋆", "∗"}
CROSSCAP = {"x", "×"}


class SymbolParseError(ValueError):
    """Malformed orbifold symbol; ``offset`` is the UTF-8 byte offset of the problem."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset} of {text!r}")


class OrbifoldDomainError(ValueError):
    pass


@dataclass(frozen=True)
class OrbifoldSignature:
    handles: int = 0
    gyrations: tuple[int, ...] = ()
    mirror_boundaries: tuple[tuple[int, ...], ...] = ()
    crosscaps: int = 0
    source_text: str = ""
    zip_rewritten: bool = False  # handles were traded for crosscaps while parsing

    def __post_init__(self):
        for a in self.gyrations:
            if a < 2:
                raise OrbifoldDomainError(f"gyration order {a} < 2")
        for boundary in self.mirror_boundaries:
            for a in boundary:
                if a < 2:
                    raise OrbifoldDomainError(f"corner order {a} < 2")
        if self.crosscaps and self.handles:
            raise OrbifoldDomainError("handles must be rewritten as crosscaps when crosscaps are present")

    @property
    def orientable(self) -> bool:
        return self.crosscaps == 0

    @property
    def is_stellate(self) -> bool:
        return not (self.handles or self.mirror_boundaries or self.crosscaps)

    @property
    def is_hyperbolic(self) -> bool:
        return euler_characteristic(self) < 0

    def __str__(self) -> str:
        return render_symbol(self)


def _order_text(a: int) -> str:
    return str(a) if a < 10 else f"({a})"


def render_symbol(sig: OrbifoldSignature, ascii: bool = True) -> str:
    o, star, x = ("o", "*", "x") if ascii else ("∘", "⋆", "×")
    parts = [_order_text(a) for a in sig.gyrations]
    for boundary in sig.mirror_boundaries:
        parts.append(star + "".join(_order_text(a) for a in boundary))
    parts.append(x * sig.crosscaps)
    parts.append(o * sig.handles)
    return "".join(parts)


def parse_symbol(text: str) -> OrbifoldSignature:
    handles = crosscaps = 0
    gyrations: list[int] = []
    boundaries: list[list[int]] = []
    # 0 leading handles, 1 gyrations, 2 mirrors, 3 crosscaps, 4 trailing handles
    stage = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in HANDLE:
            if stage:
                stage = 4
            handles += 1
            i += 1
            continue
        if stage == 4:
            raise SymbolParseError(f"unexpected {ch!r} after trailing handles", text, i)
        if ch.isdigit() or ch == "(":
            if ch == "(":
                m = re.match(r"\((\d+)\)", text[i:])
                if not m:
                    raise SymbolParseError("expected '(' digits ')'", text, i)
                order = int(m.group(1))
                width = m.end()
                if order < 2:
                    raise OrbifoldDomainError(f"order {order} < 2 in {text!r}")
            else:
                order, width = int(ch), 1
                if order < 2:
                    raise SymbolParseError(
                        f"bare digit {ch!r} is not an order; write multi-digit orders as e.g. '(12)'",
                        text, i)
            if stage <= 1:
                stage = 1
                gyrations.append(order)
            elif stage == 2:
                boundaries[-1].append(order)
            else:
                raise SymbolParseError("order after crosscaps", text, i)
            i += width
            continue
        if ch in MIRROR:
            if stage > 2:
                raise SymbolParseError("mirror boundary after crosscaps", text, i)
            stage = 2
            boundaries.append([])
            i += 1
            continue
        if ch in CROSSCAP:
            stage = 3
            crosscaps += 1
            i += 1
            continue
        raise SymbolParseError(f"unexpected character {ch!r}", text, i)
    zipped = False
    if crosscaps and handles:
        crosscaps += 2 * handles
        handles = 0
        zipped = True
    return OrbifoldSignature(handles, tuple(gyrations), tuple(tuple(b) for b in boundaries),
                             crosscaps, text, zipped)


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    chi = Fraction(2 - 2 * sig.handles - sig.crosscaps)
    for a in sig.gyrations:
        chi -= 1 - Fraction(1, a)
    for boundary in sig.mirror_boundaries:
        chi -= 1 + sum((1 - Fraction(1, a) for a in boundary), Fraction(0)) / 2
    return chi


def cyclically_equivalent(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if the gyration order sequences agree up to a cyclic shift."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    return any(a[k:] + a[:k] == b for k in range(len(a) or 1))


@dataclass(frozen=True)
class Generator:
    label: str
    kind: str  # gyration, handle_X, handle_Y, mirror_half_P, mirror, mirror_half_Q, boundary_loop, crosscap_Z
    order: int | None  # None for infinite order
    feature: int = 0  # index into Presentation.features


@dataclass(frozen=True)
class Presentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    global_relator: Word
    # each feature of the global relation: (kind, generator indices, greek word)
    features: tuple[tuple[str, tuple[int, ...], Word], ...] = field(default=())
    signature: OrbifoldSignature | None = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    def orders(self) -> list[int | None]:
        return [g.order for g in self.generators]

    def index(self, label: str) -> int:
        for i, g in enumerate(self.generators, start=1):
            if g.label == label:
                return i
        raise KeyError(label)

    def format_word(self, word: Word) -> str:
        out = []
        for x in word:
            lab = self.generators[abs(x) - 1].label
            out.append(lab if x > 0 else lab + "^-1")
        return " ".join(out) if out else "1"

    def to_json(self) -> dict:
        return {
            "generators": [
                {"label": g.label, "kind": g.kind, "order": g.order} for g in self.generators
            ],
            "relators": [list(r) for r in self.relators],
            "global_relator": list(self.global_relator),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _power(g: int, k: int) -> Word:
    return (g,) * k if k >= 0 else (-g,) * (-k)


def _commutator(x: int, y: int) -> Word:
    return (x, y, -x, -y)


def standard_presentation(sig: OrbifoldSignature) -> Presentation:
    gens: list[Generator] = []
    relators: list[Word] = []
    features: list[tuple[str, tuple[int, ...], Word]] = []

    def add(label, kind, order, feature):
        gens.append(Generator(label, kind, order, feature))
        return len(gens)

    # a lone mirror boundary with nothing else: the boundary loop is trivial,
    # so the presentation collapses to the Coxeter group of the corners
    lone_mirror = (len(sig.mirror_boundaries) == 1 and not sig.gyrations
                   and not sig.handles and not sig.crosscaps)
    if lone_mirror:
        corners = sig.mirror_boundaries[0]
        k = max(len(corners), 1)
        refl = [add(f"c{i + 1}", "mirror", 2, 0) for i in range(k)]
        for r in refl:
            relators.append(_power(r, 2))
        for i, a in enumerate(corners):
            u, v = refl[i], refl[(i + 1) % k]
            relators.append(_power(u, 1) + _power(v, 1) if a == 1 else (u, v) * a)
        features.append(("boundary", tuple(refl), ()))
        return Presentation(tuple(gens), tuple(relators), (), tuple(features), sig)

    greek: list[Word] = []
    for i, a in enumerate(sig.gyrations, start=1):
        f = len(features)
        g = add(f"r{i}", "gyration", a, f)
        relators.append(_power(g, a))
        features.append(("gyration", (g,), (g,)))
        greek.append((g,))
    for j, corners in enumerate(sig.mirror_boundaries, start=1):
        f = len(features)
        k = len(corners)
        refl = []
        for m in range(k + 1):
            kind = "mirror_half_P" if m == 0 else ("mirror_half_Q" if m == k else "mirror")
            label = f"P{j}" if m == 0 else (f"Q{j}" if m == k else f"c{j}_{m}")
            refl.append(add(label, kind, 2, f))
        lam = add(f"L{j}", "boundary_loop", None, f)
        for r in refl:
            relators.append(_power(r, 2))
        for m, a in enumerate(corners, start=1):
            relators.append((refl[m - 1], refl[m]) * a)
        # P = L^-1 Q L
        relators.append((-lam, refl[-1], lam, -refl[0]))
        features.append(("boundary", tuple(refl) + (lam,), (lam,)))
        greek.append((lam,))
    for j in range(1, sig.crosscaps + 1):
        f = len(features)
        z = add(f"Z{j}", "crosscap_Z", None, f)
        features.append(("crosscap", (z,), (z, z)))
        greek.append((z, z))
    for j in range(1, sig.handles + 1):
        f = len(features)
        x = add(f"X{j}", "handle_X", None, f)
        y = add(f"Y{j}", "handle_Y", None, f)
        features.append(("handle", (x, y), _commutator(x, y)))
        greek.append(_commutator(x, y))
    glob = tuple(letter for w in greek for letter in w)
    if glob:
        relators.append(glob)
    return Presentation(tuple(gens), tuple(relators), glob, tuple(features), sig)


def presentation_for(symbol: str) -> Presentation:
    return standard_presentation(parse_symbol(symbol))


def signature_to_json(sig: OrbifoldSignature) -> dict:
    chi = euler_characteristic(sig)
    return {
        "symbol": render_symbol(sig),
        "source_text": sig.source_text,
        "handles": sig.handles,
        "gyrations": list(sig.gyrations),
        "mirror_boundaries": [list(b) for b in sig.mirror_boundaries],
        "crosscaps": sig.crosscaps,
        "zip_rewritten": sig.zip_rewritten,
        "euler_characteristic": str(chi),
        "hyperbolic": chi < 0,
    }
