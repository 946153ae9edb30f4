"""Arbitrary precision evaluation of words on a generic stellate realization.

Long words in elliptic generators pass through isometries far from the
identity, so double precision loses every digit before the product comes
back near the identity. Here the working precision is chosen from the word:
each letter can multiply the matrix entries by at most ``|a| + |b|`` of its
generator, so that many extra digits are carried.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import mpmath

from .words import peel_conjugate

#: residual below which a word is declared trivial; nontrivial elements of a
#: discrete group with these generators stay many orders of magnitude above it
TRIVIAL_TOL = 1e-12
GUARD_DIGITS = 30
#: working precision of the reflection frame and of point substitutions
FRAME_DPS = 100


def _polygon(angles: Sequence, dps: int) -> list:
    """Tangential polygon with the given interior angles, at ``dps`` digits."""
    with mpmath.workdps(dps):
        n = len(angles)

        def excess(r):
            return mpmath.fsum(mpmath.asin(mpmath.cos(a / 2) / mpmath.cosh(r)) for a in angles) - mpmath.pi

        lo, hi = mpmath.mpf(0), mpmath.mpf(1)
        while excess(hi) > 0:
            hi *= 2
        for _ in range(60):
            mid = (lo + hi) / 2
            if excess(mid) > 0:
                lo = mid
            else:
                hi = mid
        r = mpmath.findroot(excess, (lo, hi), solver="anderson")
        ph = [mpmath.asin(mpmath.cos(a / 2) / mpmath.cosh(r)) for a in angles]
        pts = []
        direction = mpmath.mpf(0)
        for k, (a, phi) in enumerate(zip(angles, ph)):
            c = mpmath.acosh(1 / (mpmath.tan(phi) * mpmath.tan(a / 2)))
            pts.append(mpmath.tanh(c / 2) * mpmath.expjpi(direction / mpmath.pi))
            direction += phi + ph[(k + 1) % n]
        return pts


def _mul(x, y):
    a1, b1 = x
    a2, b2 = y
    return (a1 * a2 + b1 * mpmath.conj(b2), a1 * b2 + b1 * mpmath.conj(a2))


def _inv(x):
    a, b = x
    return (mpmath.conj(a), -b)


def _rotation(p, order: int):
    s = mpmath.sqrt(1 - abs(p) ** 2)
    t = (1 / s, p / s)
    r = (mpmath.expjpi(mpmath.mpf(1) / order), mpmath.mpc(0))
    return _mul(_mul(t, r), _inv(t))


@lru_cache(maxsize=32)
def _generators(orders: tuple[int, ...], dps: int):
    with mpmath.workdps(dps):
        pts = _polygon([mpmath.pi / a for a in orders], dps)
        return tuple(_rotation(z, a) for z, a in zip(pts, orders))


class PreciseStellate:
    """Generic realization of a stellate group, evaluated at adaptive precision."""

    def __init__(self, orders: Sequence[int]):
        self.orders = tuple(orders)
        base = _generators(self.orders, 40)
        self._growth = [math.log10(float(abs(a) + abs(b))) for a, b in base]

    def digits_for(self, word: Sequence[int]) -> int:
        need = GUARD_DIGITS + sum(self._growth[abs(x) - 1] for x in word)
        return int(math.ceil(need / 50.0) * 50)

    def evaluate(self, word: Sequence[int]):
        dps = self.digits_for(word)
        gens = _generators(self.orders, dps)
        with mpmath.workdps(dps):
            out = (mpmath.mpc(1), mpmath.mpc(0))
            for x in word:
                g = gens[abs(x) - 1]
                out = _mul(out, g if x > 0 else _inv(g))
            return out

    def residual(self, word: Sequence[int]) -> float:
        """Distance of the evaluated word from the identity, up to the sign of the matrix."""
        a, b = self.evaluate(word)
        return float(min(abs(a - 1), abs(a + 1)) + abs(b))

    def is_trivial(self, word: Sequence[int]) -> bool:
        return self.residual(word) < TRIVIAL_TOL


def generic_points(orders: Sequence[int], dps: int = FRAME_DPS) -> tuple:
    """Corners of the polygon with angles pi/A, a faithful stellate realization at ``dps`` digits."""
    with mpmath.workdps(dps):
        return tuple(mpmath.mpc(z) for z in _polygon([mpmath.pi / a for a in orders], dps))


def substitute_points(images: Sequence[Sequence[int]], points: Sequence, orders: Sequence[int],
                      dps: int = FRAME_DPS) -> tuple:
    """Cone points of the stellate tuple whose generator i is the old tuple evaluated on ``images[i]``.

    Each image must be a conjugate ``u g_j u^-1`` of a generator of the same
    order (as for every type preserving automorphism written by the mapping
    class generators); its cone point is ``u`` applied to the j-th point.
    """
    rots = [rotation(z, o, dps) for z, o in zip(points, orders)]
    out = []
    for i, img in enumerate(images):
        u, core = peel_conjugate(img)
        if len(core) != 1 or core[0] < 0 or orders[core[0] - 1] != orders[i]:
            raise ValueError(f"image of generator {i + 1} is not a conjugate of a generator of its order")
        z = points[core[0] - 1]
        for x in reversed(u):
            z = apply(rots[abs(x) - 1], z, inverse=x < 0, dps=dps)
        out.append(z)
    return tuple(out)


@lru_cache(maxsize=32)
def precise_stellate(orders: tuple[int, ...]) -> PreciseStellate:
    return PreciseStellate(orders)


# -- the ⋆246 reflection frame at high precision ---------------------------------



class PreciseFrame:
    """The (2,4,6) reflection triangle with the order-6 vertex at the origin, at ``dps`` digits.

    Mirror 2 is the real axis, mirror 0 the diameter at angle pi/6 and
    mirror 1 the circle through the other two vertices, matching the double
    precision frame letter for letter.
    """

    def __init__(self, dps: int = FRAME_DPS):
        self.dps = dps
        with mpmath.workdps(dps):
            pi = mpmath.pi
            aO, aB, aC = pi / 6, pi / 4, pi / 2  # at r (origin), q (real axis), p (ray)

            def side(opp, x, y):
                return (mpmath.cos(opp) + mpmath.cos(x) * mpmath.cos(y)) / (mpmath.sin(x) * mpmath.sin(y))

            B = mpmath.tanh(mpmath.acosh(side(aC, aO, aB)) / 2)
            C = mpmath.tanh(mpmath.acosh(side(aB, aO, aC)) / 2) * mpmath.expjpi(mpmath.mpf(1) / 6)
            self.vertices = {"r": mpmath.mpc(0), "q": mpmath.mpc(B), "p": mpmath.mpc(C)}
            # circle orthogonal to the unit circle through B and C
            r1, r2 = 1 + abs(B) ** 2, 1 + abs(C) ** 2
            det = 2 * (B.real * C.imag - B.imag * C.real)
            cx = (r1 * C.imag - r2 * B.imag) / det
            cy = (B.real * r2 - C.real * r1) / det
            self.circle = (mpmath.mpc(cx, cy), mpmath.sqrt(cx ** 2 + cy ** 2 - 1))
            self.rot0 = mpmath.expjpi(mpmath.mpf(1) / 3)  # e^{2 i pi/6}
            probe = (B + C) / 3
            self._interior = [1 if self._raw(i, probe) > 0 else -1 for i in range(3)]
            self.tol = mpmath.mpf(10) ** (-(dps // 2))

    def _raw(self, i: int, z):
        if i == 2:
            return z.imag
        if i == 0:
            return (z * mpmath.expjpi(-mpmath.mpf(1) / 6)).imag
        c, rad = self.circle
        return abs(z - c) - rad

    def side_sign(self, i: int, z):
        return self._raw(i, z) * self._interior[i]

    def reflect(self, i: int, z):
        if i == 2:
            return mpmath.conj(z)
        if i == 0:
            return self.rot0 * mpmath.conj(z)
        c, rad = self.circle
        return c + rad ** 2 / (mpmath.conj(z) - mpmath.conj(c))

    def apply_word(self, word: str, z):
        """Image of ``z`` under the reflection word (last letter acts first)."""
        with mpmath.workdps(self.dps):
            for ch in reversed(word):
                z = self.reflect(int(ch), z)
            return z

    def vertex_point(self, word: str, key: str):
        return self.apply_word(word, self.vertices[key])

    def reduce_point(self, z, max_steps: int = 100000) -> tuple[str, object]:
        """Reflect ``z`` into the base triangle; returns (word, image) with word(image) == z."""
        letters = []
        with mpmath.workdps(self.dps):
            for _ in range(max_steps):
                worst = min(range(3), key=lambda i: self.side_sign(i, z))
                if self.side_sign(worst, z) >= 0:
                    return "".join(letters), z
                z = self.reflect(worst, z)
                letters.append(str(worst))
        raise ValueError("point reduction did not terminate")

    def descent_word(self, z, max_steps: int = 100000) -> tuple[str, str]:
        """Reflection word and base vertex key naming the triangulation vertex ``z``."""
        letters = []
        with mpmath.workdps(self.dps):
            for _ in range(max_steps):
                for i in range(3):
                    if self.side_sign(i, z) < -self.tol:
                        z = self.reflect(i, z)
                        letters.append(str(i))
                        break
                else:
                    for key, v in self.vertices.items():
                        if abs(z - v) < mpmath.mpf(10) ** -20:
                            return "".join(letters), key
                    raise ValueError("point is not a triangulation vertex")
        raise ValueError("point reduction did not terminate")


@lru_cache(maxsize=1)
def precise_frame() -> PreciseFrame:
    return PreciseFrame()


def rotation(p, order: int, dps: int = FRAME_DPS):
    with mpmath.workdps(dps):
        return _rotation(mpmath.mpc(p), order)


def apply(m, z, inverse: bool = False, dps: int = FRAME_DPS):
    with mpmath.workdps(dps):
        a, b = _inv(m) if inverse else m
        return (a * z + b) / (mpmath.conj(b) * z + mpmath.conj(a))


def hyperboloid(z, dps: int = FRAME_DPS) -> tuple:
    with mpmath.workdps(dps):
        s = 1 - abs(z) ** 2
        return ((1 + abs(z) ** 2) / s, 2 * z.real / s, 2 * z.imag / s)


def distance(p, q, dps: int = FRAME_DPS):
    with mpmath.workdps(dps):
        return 2 * mpmath.atanh(abs(p - q) / abs(1 - mpmath.conj(p) * q))


def to_klein(z, dps: int = FRAME_DPS):
    with mpmath.workdps(dps):
        return 2 * z / (1 + abs(z) ** 2)


def from_klein(k, dps: int = FRAME_DPS):
    with mpmath.workdps(dps):
        return k / (1 + mpmath.sqrt(1 - abs(k) ** 2))


def midpoint(p, q, dps: int = FRAME_DPS):
    """Midpoint of the geodesic segment from ``p`` to ``q``."""
    with mpmath.workdps(dps):
        w = (q - p) / (1 - mpmath.conj(p) * q)  # q after moving p to the origin
        if w == 0:
            return mpmath.mpc(p)
        m = w / abs(w) * mpmath.tanh(mpmath.atanh(abs(w)) / 2)
        return (m + p) / (1 + mpmath.conj(p) * m)


def stellate_residual(points, orders, dps: int = FRAME_DPS) -> float:
    """Largest distance from the identity of ``r_i^order`` and of ``r_1 ... r_n``, up to sign."""
    with mpmath.workdps(dps):
        rots = [_rotation(mpmath.mpc(z), a) for z, a in zip(points, orders)]
        ident = (mpmath.mpc(1), mpmath.mpc(0))

        def off(m):
            a, b = m
            return min(abs(a - 1), abs(a + 1)) + abs(b)

        worst = mpmath.mpf(0)
        for m, a in zip(rots, orders):
            acc = ident
            for _ in range(a):
                acc = _mul(acc, m)
            worst = max(worst, off(acc))
        acc = ident
        for m in rots:
            acc = _mul(acc, m)
        return float(max(worst, off(acc)))
