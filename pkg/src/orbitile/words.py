"""Words over a presentation and automorphisms acting on them by substitution.

A word is a tuple of signed 1-based generator indices, ``-3`` standing for
the inverse of generator 3.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Sequence

from .orbifold_symbol import Presentation

Word = tuple


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("generator index 0 is not allowed")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def concat(*words: Sequence[int]) -> Word:
    return free_reduce([x for w in words for x in w])


def power(word: Sequence[int], k: int) -> Word:
    base = tuple(word) if k >= 0 else inverse(word)
    return free_reduce(base * abs(k))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    i = 0
    while 2 * i + 1 < len(w) and w[i] == -w[len(w) - 1 - i]:
        i += 1
    return w[i:len(w) - i]


def peel_conjugate(word: Sequence[int]) -> tuple[Word, Word]:
    """Split a reduced word as ``u + core + inverse(u)`` with ``u`` as long as possible."""
    w = free_reduce(word)
    i = 0
    while 2 * i + 1 < len(w) and w[i] == -w[len(w) - 1 - i]:
        i += 1
    return w[:i], w[i:len(w) - i]


def format_word(word: Sequence[int], labels: Sequence[str] | None = None) -> str:
    if not word:
        return "1"
    parts = []
    for x in word:
        name = labels[abs(x) - 1] if labels else f"g{abs(x)}"
        parts.append(name if x > 0 else name + "^-1")
    return " ".join(parts)


@dataclass(frozen=True)
class Automorphism:
    """Images of generators, their inverse map, and the induced permutation of cone points."""

    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]
    permutation: tuple[int, ...] | None = None  # 1-based; generator i goes to class of permutation[i-1]
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.images)

    def __call__(self, word: Sequence[int]) -> Word:
        return apply(self, word)

    def inverse(self) -> Automorphism:
        perm = None
        if self.permutation is not None:
            perm = [0] * len(self.permutation)
            for i, j in enumerate(self.permutation, start=1):
                perm[j - 1] = i
            perm = tuple(perm)
        return Automorphism(self.inverse_images, self.images, perm,
                            f"({self.name})^-1" if self.name else "")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "images": [list(w) for w in self.images],
            "inverse_images": [list(w) for w in self.inverse_images],
            "permutation": list(self.permutation) if self.permutation else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> Automorphism:
        perm = data.get("permutation")
        return cls(tuple(tuple(w) for w in data["images"]),
                   tuple(tuple(w) for w in data["inverse_images"]),
                   tuple(perm) if perm else None, data.get("name", ""))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def identity(rank: int) -> Automorphism:
    gens = tuple((i,) for i in range(1, rank + 1))
    return Automorphism(gens, gens, tuple(range(1, rank + 1)), "id")


def _substitute(images: Sequence[Word], word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        img = images[abs(x) - 1] if x > 0 else inverse(images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def apply(a: Automorphism, word: Sequence[int]) -> Word:
    return _substitute(a.images, word)


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    """Functional composition: ``compose(a, b)(w) == a(b(w))``."""
    if a.rank != b.rank:
        raise ValueError("automorphisms of different ranks")
    images = tuple(_substitute(a.images, w) for w in b.images)
    inv = tuple(_substitute(b.inverse_images, w) for w in a.inverse_images)
    perm = None
    if a.permutation is not None and b.permutation is not None:
        perm = tuple(a.permutation[j - 1] for j in b.permutation)
    name = f"{a.name}*{b.name}" if a.name and b.name else ""
    return Automorphism(images, inv, perm, name)


def compose_all(autos: Sequence[Automorphism], rank: int) -> Automorphism:
    out = identity(rank)
    for a in autos:
        out = compose(out, a)
    return out


def conjugation(rank: int, u: Sequence[int]) -> Automorphism:
    """The inner automorphism ``g -> u g u^-1``."""
    u = free_reduce(u)
    ui = inverse(u)
    images = tuple(concat(u, (i,), ui) for i in range(1, rank + 1))
    inv = tuple(concat(ui, (i,), u) for i in range(1, rank + 1))
    return Automorphism(images, inv, tuple(range(1, rank + 1)), "")


def induced_permutation(a: Automorphism, p: Presentation) -> tuple[int, ...] | None:
    """Read off which gyration each gyration image is conjugate to, if visible in the words."""
    perm = []
    for i, g in enumerate(p.generators, start=1):
        if g.kind != "gyration":
            perm.append(i)
            continue
        _, core = peel_conjugate(a.images[i - 1])
        if len(core) != 1 or core[0] <= 0:
            return None
        perm.append(core[0])
    return tuple(perm)


def invert_images(images: Sequence[Word]) -> tuple[Word, ...]:
    """Inverse of a free-group automorphism given by generator images (Nielsen reduction).

    Each image is paired with the word that produced it; length-decreasing
    Nielsen moves are applied until every image is a single letter, at which
    point the tracked words are the inverse images.
    """
    n = len(images)
    cur = [free_reduce(w) for w in images]
    expr = [(i,) for i in range(1, n + 1)]
    progress = True
    while progress:
        progress = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for s in (1, -1):
                    uj = cur[j] if s > 0 else inverse(cur[j])
                    ej = expr[j] if s > 0 else inverse(expr[j])
                    for cand, e in ((concat(cur[i], uj), concat(expr[i], ej)),
                                    (concat(uj, cur[i]), concat(ej, expr[i]))):
                        if len(cand) < len(cur[i]):
                            cur[i], expr[i] = cand, e
                            progress = True
                            break
                    if progress:
                        break
                if progress:
                    break
            if progress:
                break
    out: list[Word | None] = [None] * n
    for u, e in zip(cur, expr):
        if len(u) != 1 or out[abs(u[0]) - 1] is not None:
            raise ValueError("images do not form a basis reachable by length-decreasing Nielsen moves")
        out[abs(u[0]) - 1] = e if u[0] > 0 else inverse(e)
    return tuple(out)


def automorphism(images: Sequence[Sequence[int]], permutation=None, name: str = "",
                 inverse_images: Sequence[Sequence[int]] | None = None) -> Automorphism:
    images = tuple(free_reduce(w) for w in images)
    inv = (tuple(free_reduce(w) for w in inverse_images) if inverse_images is not None
           else invert_images(images))
    return Automorphism(images, inv, tuple(permutation) if permutation else None, name)


# -- symbolic triviality ------------------------------------------------------

def _reduce_powers(word: Word, orders: Sequence[int | None]) -> Word:
    """Rewrite each maximal run g^k of a finite order generator with |k| <= order/2."""
    out: list[int] = []
    changed = True
    w = list(word)
    while changed:
        changed = False
        out = []
        i = 0
        while i < len(w):
            g = abs(w[i])
            j = i
            k = 0
            while j < len(w) and abs(w[j]) == g:
                k += 1 if w[j] > 0 else -1
                j += 1
            order = orders[g - 1]
            if order:
                r = k % order
                if r > order // 2:
                    r -= order
                if r != k or j - i != abs(k):
                    changed = True
                k = r
            elif j - i != abs(k):
                changed = True
            out.extend([g] * k if k > 0 else [-g] * (-k))
            i = j
        w = list(free_reduce(out))
    return tuple(w)


def _relator_rotations(p: Presentation) -> list[Word]:
    rots = set()
    for r in p.relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        for w in (r, inverse(r)):
            for k in range(len(w)):
                rots.add(w[k:] + w[:k])
    return sorted(rots, key=len, reverse=True)


def _dehn_step(w: Word, rots: Sequence[Word]) -> Word | None:
    """Replace more than half of a relator by the inverse of its remainder, if possible."""
    n = len(w)
    if n == 0:
        return None
    ww = w + w
    for r in rots:
        L = len(r)
        for k in range(L, L // 2, -1):
            piece = r[:k]
            if k > n:
                continue
            for start in range(n):
                if ww[start:start + k] == piece:
                    rest = inverse(r[k:])
                    rotated = ww[start:start + n]
                    return cyclic_reduce(rest + rotated[k:])
    return None


def is_trivial(word: Sequence[int], p: Presentation, max_steps: int = 10000) -> bool | None:
    """True if ``word`` is shown trivial in the group of ``p``; None if the rewriting gives up."""
    orders = p.orders()
    rots = _relator_rotations(p)
    w = cyclic_reduce(word)
    for _ in range(max_steps):
        w = cyclic_reduce(_reduce_powers(w, orders))
        if not w:
            return True
        nxt = _dehn_step(w, rots)
        if nxt is None or len(nxt) > len(w):
            return None
        if len(nxt) == len(w) and nxt == w:
            return None
        w = nxt
    return None


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class UndecidedError(RuntimeError):
    pass


def _stellate_orders(p: Presentation) -> tuple[int, ...] | None:
    sig = p.signature
    if sig is not None and sig.is_stellate and sig.is_hyperbolic:
        return tuple(sig.gyrations)
    return None


def _word_checker(p: Presentation, realization=None):
    """A predicate deciding triviality of words numerically, or None.

    Stellate groups use a generic realization at adaptive precision; other
    signatures need an explicit realization evaluated in double precision.
    """
    orders = _stellate_orders(p)
    if orders is not None:
        from .highprec import precise_stellate
        return precise_stellate(orders).is_trivial
    if realization is not None:
        return lambda w: realization.evaluate(w).is_identity(1e-7)
    return None


def check_respects(a: Automorphism, p: Presentation, realization=None) -> bool:
    """Decide whether ``a`` maps every relator to the identity and is invertible.

    Symbolic rewriting is tried first; the remaining words are evaluated on a
    faithful realization, where a nonidentity value is decisive.
    """
    if a.rank != p.rank:
        return False
    pending: list[Word] = []
    for r in p.relators:
        img = apply(a, r)
        if is_trivial(img, p) is not True:
            pending.append(img)
    for i in range(1, p.rank + 1):
        back = concat(apply(a, a.inverse_images[i - 1]), (-i,))
        if is_trivial(back, p) is not True:
            pending.append(back)
    if not pending:
        return True
    trivial = _word_checker(p, realization)
    if trivial is None:
        raise UndecidedError("relator images not reducible symbolically and no realization available")
    return all(trivial(w) for w in pending)


def equal_as_outer(a: Automorphism, b: Automorphism, p: Presentation, realization=None) -> Verdict:
    """Decide whether ``a`` and ``b`` differ by an inner automorphism."""
    pa, pb = induced_permutation(a, p), induced_permutation(b, p)
    if pa is not None and pb is not None and pa != pb:
        return Verdict.NO
    c = compose(a.inverse(), b)
    gy = [i for i, g in enumerate(p.generators, start=1) if g.kind == "gyration"]
    anchor = gy[0] if gy else 1
    u, core = peel_conjugate(c.images[anchor - 1])
    order = p.generators[anchor - 1].order
    if core != (anchor,) or not order:
        return Verdict.UNKNOWN
    # a conjugator w with c(g) = w g w^-1 for all g must carry the anchor's
    # fixed point to that of c(anchor), so it lies in u times the anchor's
    # cyclic stabilizer
    candidates = [concat(u, power((anchor,), k)) for k in range(order)]

    def defect(w, i):
        return concat(c.images[i - 1], w, (-i,), inverse(w))

    for w in candidates:
        if all(is_trivial(defect(w, i), p) for i in range(1, p.rank + 1)):
            return Verdict.YES
    trivial = _word_checker(p, realization)
    if trivial is None:
        return Verdict.UNKNOWN
    for w in candidates:
        if all(trivial(defect(w, i)) for i in range(1, p.rank + 1)):
            return Verdict.YES
    return Verdict.NO
