"""Mapping class generators as automorphisms of the standard presentation.

Feature positions are 1-based indices into ``Presentation.features`` (the
gyrations, then mirror boundaries, crosscaps and handles in symbol order).
Compositions are functional: ``compose(f, g)`` applies ``g`` first when
substituting into words. A braid word written left to right, ``x1 x2 ... xm``,
is evaluated as ``x_m o ... o x_1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .orbifold_symbol import Presentation
from .words import (
    Automorphism, Word, automorphism, compose, concat, identity, inverse,
)


class McgDomainError(ValueError):
    pass


@dataclass(frozen=True)
class McgGenerator:
    name: str
    auto: Automorphism
    inverse_name: str

    def to_json(self) -> dict:
        return {"name": self.name, "inverse_name": self.inverse_name, **self.auto.to_json()}


def _feature(p: Presentation, position: int, kind: str) -> tuple[int, ...]:
    if not 1 <= position <= len(p.features):
        raise McgDomainError(f"feature position {position} out of range 1..{len(p.features)}")
    fkind, gens, _ = p.features[position - 1]
    if fkind != kind:
        raise McgDomainError(f"feature {position} is a {fkind}, expected a {kind}")
    return gens


def _gyration(p: Presentation, position: int) -> int:
    return _feature(p, position, "gyration")[0]


def _substitution(p: Presentation, mapping: dict[int, Word], name: str,
                  inverse_mapping: dict[int, Word] | None = None,
                  swap: tuple[int, int] | None = None) -> Automorphism:
    n = p.rank
    images = [mapping.get(i, (i,)) for i in range(1, n + 1)]
    inv = None
    if inverse_mapping is not None:
        inv = [inverse_mapping.get(i, (i,)) for i in range(1, n + 1)]
    perm = list(range(1, n + 1))
    if swap:
        i, j = swap
        perm[i - 1], perm[j - 1] = j, i
    return automorphism(images, perm, name, inv)


def _gens(a: Automorphism, name: str, inverse_name: str | None = None) -> McgGenerator:
    return McgGenerator(name, Automorphism(a.images, a.inverse_images, a.permutation, name),
                        inverse_name or f"{name}^-1")


def _raw_half_twist(p: Presentation, i: int) -> Automorphism:
    a, b = _gyration(p, i), _gyration(p, i + 1)
    return _substitution(
        p, {a: (a, b, -a), b: (a,)}, f"sigma_{i}",
        {a: (b,), b: (-b, a, b)}, swap=(a, b))


def half_twist(p: Presentation, i: int) -> McgGenerator:
    """Exchange the adjacent gyrations i and i+1 (which must share an order)."""
    a, b = _gyration(p, i), _gyration(p, i + 1)
    oa, ob = p.generators[a - 1].order, p.generators[b - 1].order
    if oa != ob:
        raise McgDomainError(f"half twist needs equal orders, got {oa} and {ob}")
    return _gens(_raw_half_twist(p, i), f"sigma_{i}")


def chain_dehn_twist(p: Presentation, chain: Sequence[int]) -> McgGenerator:
    """Twist along a loop around a run of consecutive features.

    Every generator belonging to the run is conjugated by the product of the
    run's relation words, which the twist leaves fixed.
    """
    chain = sorted(chain)
    if not chain or chain != list(range(chain[0], chain[0] + len(chain))):
        raise McgDomainError(f"chain {chain} is not a run of consecutive features")
    for f in chain:
        if not 1 <= f <= len(p.features):
            raise McgDomainError(f"feature position {f} out of range")
    t: Word = ()
    members: list[int] = []
    for f in chain:
        _, gens, greek = p.features[f - 1]
        t = t + tuple(greek)
        members.extend(gens)
    ti = inverse(t)
    mapping = {g: concat(t, (g,), ti) for g in members}
    inv = {g: concat(ti, (g,), t) for g in members}
    name = "T_{" + ",".join(map(str, chain)) + "}"
    return _gens(_substitution(p, mapping, name, inv), name)


def _half_twist_between(p: Presentation, a: int, b: int) -> Automorphism:
    if b == a + 1:
        return _raw_half_twist(p, a)
    s = _raw_half_twist(p, a)
    return compose(compose(s, _half_twist_between(p, a + 1, b)), s.inverse())


def general_half_twist(p: Presentation, a: int, b: int) -> McgGenerator:
    """Exchange gyrations a < b of equal order along an arc passing over those in between."""
    if not a < b:
        raise McgDomainError("general half twist needs a < b")
    ga, gb = _gyration(p, a), _gyration(p, b)
    if p.generators[ga - 1].order != p.generators[gb - 1].order:
        raise McgDomainError("general half twist needs equal orders")
    name = f"H_{a},{b}"
    return _gens(_half_twist_between(p, a, b), name)


def artin_generator(p: Presentation, i: int, j: int) -> McgGenerator:
    """Pure braid generator A_ij, a twist around gyrations i and j passing behind those between."""
    if not 1 <= i < j:
        raise McgDomainError("Artin generator needs 1 <= i < j")
    _gyration(p, j)
    sq = compose(_raw_half_twist(p, i), _raw_half_twist(p, i))
    out = sq
    for k in range(i + 1, j):
        s = _raw_half_twist(p, k)
        out = compose(compose(s.inverse(), out), s)
    name = f"A_{i},{j}"
    perm = tuple(range(1, p.rank + 1))
    return McgGenerator(name, Automorphism(out.images, out.inverse_images, perm, name), f"{name}^-1")


# -- nonorientable features -------------------------------------------------------

NONORIENTABLE_KINDS = ("crosscap_transposition", "two_sided_twist", "crosscap_slide", "boundary_slide")


def nonorientable_generator(p: Presentation, kind: str, position: int) -> McgGenerator:
    """Generators supported near crosscaps.

    For the first three kinds ``position`` names a crosscap immediately
    followed by another; for ``boundary_slide`` it names a gyration
    immediately followed by a crosscap.
    """
    if kind == "boundary_slide":
        P = _gyration(p, position)
        A = _feature(p, position + 1, "crosscap")[0]
        PA = (P, A)
        mapping = {P: concat(PA, (-P,), inverse(PA)), A: PA}
    else:
        A = _feature(p, position, "crosscap")[0]
        B = _feature(p, position + 1, "crosscap")[0]
        if kind == "crosscap_transposition":
            mapping = {A: (B,), B: (-B, -B, A, B, B)}
        elif kind == "two_sided_twist":
            mapping = {A: (A, -B, -A), B: (A, B, B)}
        elif kind == "crosscap_slide":
            w = (A, B, B)
            mapping = {A: w, B: concat(inverse(w), (-B,), w)}
        else:
            raise McgDomainError(f"unknown nonorientable generator {kind!r}")
    name = f"{kind}_{position}"
    return _gens(_substitution(p, mapping, name), name)


# -- handles -----------------------------------------------------------------------

HANDLE_KINDS = ("twist_a", "twist_b", "cross_handle_twist", "handle_transposition",
                "point_push_X", "point_push_Y")


def _comm(x: Word, y: Word) -> Word:
    return concat(x, y, inverse(x), inverse(y))


def handle_generator(p: Presentation, kind: str, position: int) -> McgGenerator:
    """Generators supported near handles.

    ``twist_a`` and ``twist_b`` act on the handle at ``position``; the cross
    handle twist and the transposition act on it and the next handle; the
    point pushes move the gyration at ``position`` around the loops of the
    handle that follows it.
    """
    if kind in ("point_push_X", "point_push_Y"):
        S = _gyration(p, position)
        X, Y = _feature(p, position + 1, "handle")
        if kind == "point_push_Y":
            mapping = {S: (S, -Y, S, Y, -S), X: (S, -Y, -S, Y, X, -S), Y: (S, Y, -S)}
        else:
            mapping = {S: (-X, S, X), X: (-X, -S, X, S, X), Y: (Y, -X, S, X)}
    elif kind in ("twist_a", "twist_b"):
        a, b = _feature(p, position, "handle")
        mapping = {b: (b, a)} if kind == "twist_a" else {a: (a, -b)}
    elif kind in ("cross_handle_twist", "handle_transposition"):
        a1, b1 = _feature(p, position, "handle")
        a2, b2 = _feature(p, position + 1, "handle")
        if kind == "cross_handle_twist":
            c = (b2, -a1)
            ci = inverse(c)
            mapping = {
                a1: (b2, a1, -b2),
                b1: concat((b2, -a1, -b2, a1, b1), ci),
                a2: concat(c, (-b2, a1, a2), ci),
                b2: concat(c, (b2,), ci),
            }
        else:
            k = _comm((a2,), (b2,))
            ki = inverse(k)
            mapping = {a1: (a2,), b1: (b2,), a2: concat(ki, (a1,), k), b2: concat(ki, (b1,), k)}
    else:
        raise McgDomainError(f"unknown handle generator {kind!r}")
    name = f"{kind}_{position}"
    return _gens(_substitution(p, mapping, name), name)


def forget_generator(a: Automorphism, index: int) -> Automorphism:
    """The automorphism induced on the remaining generators after deleting one.

    Used to check that point pushes become trivial once the pushed point is
    filled in.
    """
    def drop(w: Word) -> Word:
        out = []
        for x in w:
            if abs(x) == index:
                continue
            out.append(x - 1 if x > index else (x + 1 if x < -index else x))
        return concat(out)

    images = [drop(w) for i, w in enumerate(a.images, start=1) if i != index]
    inv = [drop(w) for i, w in enumerate(a.inverse_images, start=1) if i != index]
    return Automorphism(tuple(images), tuple(inv), None, a.name)


# -- generating sets and relations ---------------------------------------------------

def gyration_orders(p: Presentation) -> list[int]:
    return [g.order for g in p.generators if g.kind == "gyration"]


def partition_by_order(p: Presentation) -> list[list[int]]:
    blocks: dict[int, list[int]] = {}
    for i, a in enumerate(gyration_orders(p), start=1):
        blocks.setdefault(a, []).append(i)
    return sorted(blocks.values())


def pure_generating_set(p: Presentation) -> list[McgGenerator]:
    n = len(gyration_orders(p))
    return [artin_generator(p, i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]


def semi_pure_generating_set(p: Presentation,
                             partition: Iterable[Iterable[int]] | None = None) -> list[McgGenerator]:
    """Generators of the braids that permute gyrations only within blocks.

    The pure generators A_ij are joined by a half twist exchanging each pair
    of consecutive members of a block. Blocks must consist of gyrations of a
    single order; by default gyrations are grouped by order.
    """
    orders = gyration_orders(p)
    blocks = [sorted(b) for b in (partition if partition is not None else partition_by_order(p))]
    covered = sorted(i for b in blocks for i in b)
    if covered != list(range(1, len(orders) + 1)):
        raise McgDomainError(f"partition {blocks} does not cover gyrations 1..{len(orders)}")
    for b in blocks:
        if len({orders[i - 1] for i in b}) > 1:
            raise McgDomainError(f"block {b} mixes gyration orders")
    out = pure_generating_set(p)
    for b in blocks:
        for x, y in zip(b, b[1:]):
            out.append(half_twist(p, x) if y == x + 1 else general_half_twist(p, x, y))
    return out


def generators_for(p: Presentation, pure: bool = False,
                   partition: Iterable[Iterable[int]] | None = None) -> list[McgGenerator]:
    sig = p.signature
    if sig is None or not sig.is_stellate:
        raise McgDomainError("generating sets are implemented for gyration-only symbols")
    return pure_generating_set(p) if pure else semi_pure_generating_set(p, partition)


def sigma_alphabet(n: int) -> list[str]:
    return [f"sigma_{i}" for i in range(1, n)]


def pure_alphabet(n: int) -> list[str]:
    return [f"A_{i},{j}" for i, j in itertools.combinations(range(1, n + 1), 2)]


def sphere_relation_words(n: int) -> dict[str, tuple[str, Word]]:
    """Braid words that act trivially on the sphere, as (alphabet, signed indices).

    ``full_twist`` is (sigma_1 ... sigma_{n-1})^n and ``full_twist_pure`` the
    same element over the pure generators. ``X_i`` drags gyration i around
    all the others: A_{i,i+1} ... A_{i,n} followed by A_{1,i} ... A_{i-1,i}.
    ``X_sigma`` is sigma_1 ... sigma_{n-1} sigma_{n-1} ... sigma_1.
    """
    if n < 3:
        raise McgDomainError("sphere relations need n >= 3")
    pure = pure_alphabet(n)
    idx = {name: k for k, name in enumerate(pure, start=1)}

    def A(i, j):
        return idx[f"A_{i},{j}"]

    out: dict[str, tuple[str, Word]] = {}
    out["full_twist"] = ("sigma", tuple(range(1, n)) * n)
    out["full_twist_pure"] = ("pure", tuple(A(i, j) for i in range(1, n) for j in range(i + 1, n + 1)))
    for i in range(1, n + 1):
        w = tuple(A(i, j) for j in range(i + 1, n + 1)) + tuple(A(k, i) for k in range(1, i))
        out[f"X_{i}"] = ("pure", w)
    out["X_sigma"] = ("sigma", tuple(range(1, n)) + tuple(range(n - 1, 0, -1)))
    return out


def alphabet_automorphisms(p: Presentation, alphabet: str) -> list[Automorphism]:
    n = len(gyration_orders(p))
    if alphabet == "sigma":
        return [_raw_half_twist(p, i) for i in range(1, n)]
    if alphabet == "pure":
        return [g.auto for g in pure_generating_set(p)]
    raise ValueError(f"unknown alphabet {alphabet!r}")


def evaluate_word(letters: Sequence[Automorphism], word: Sequence[int], rank: int) -> Automorphism:
    """Automorphism of the braid word ``x1 x2 ... xm`` (left to right), i.e. x_m o ... o x_1."""
    out = identity(rank)
    for x in word:
        a = letters[abs(x) - 1]
        out = compose(a if x > 0 else a.inverse(), out)
    return out


def dumps(gens: Sequence[McgGenerator]) -> str:
    return json.dumps([g.to_json() for g in gens])
