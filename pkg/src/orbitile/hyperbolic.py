"""Isometries of the hyperbolic plane in the Poincare disc model.

An orientation preserving isometry is stored as the SU(1,1) pair ``(a, b)``
acting by ``z -> (a z + b) / (conj(b) z + conj(a))``; reversing isometries
carry a flag and act on ``conj(z)`` instead. Pairs are renormalized to unit
determinant after every product and the sign ambiguity is removed by
requiring ``Re(a) >= 0`` (``Im(a) >= 0`` on ties).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

#: decision band for elliptic/parabolic/hyperbolic classification
CLASSIFY_TOL = 1e-9
#: permitted drift of |a|^2 - |b|^2 from 1
DET_TOL = 1e-12
#: orthogonality / incidence tolerance for geodesic arcs
ARC_TOL = 1e-9
#: points must satisfy |z| < 1 - DISC_MARGIN
DISC_MARGIN = 1e-12


class GeometryError(ValueError):
    pass


def _canonical_sign(a: complex, b: complex) -> tuple[complex, complex]:
    if a.real < 0 or (a.real == 0 and a.imag < 0):
        return -a, -b
    return a, b


@dataclass(frozen=True)
class Isometry:
    a: complex
    b: complex = 0j
    reversing: bool = False

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        det = abs(a) ** 2 - abs(b) ** 2
        if det <= 0:
            raise GeometryError(f"not an isometry of the disc: |a|^2-|b|^2 = {det}")
        if abs(det - 1.0) > DET_TOL:
            s = math.sqrt(det)
            a, b = a / s, b / s
        a, b = _canonical_sign(a, b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1 + 0j, 0j)

    def __call__(self, z: complex) -> complex:
        if self.reversing:
            z = z.conjugate()
        a, b = self.a, self.b
        return (a * z + b) / (b.conjugate() * z + a.conjugate())

    def __matmul__(self, other: Isometry) -> Isometry:
        """Functional composition: ``(f @ g)(z) == f(g(z))``."""
        a2, b2 = other.a, other.b
        if self.reversing:
            a2, b2 = a2.conjugate(), b2.conjugate()
        a = self.a * a2 + self.b * b2.conjugate()
        b = self.a * b2 + self.b * a2.conjugate()
        return Isometry(a, b, self.reversing != other.reversing)

    def inverse(self) -> Isometry:
        if self.reversing:
            return Isometry(self.a, -self.b.conjugate(), True)
        return Isometry(self.a.conjugate(), -self.b)

    def __pow__(self, n: int) -> Isometry:
        base = self if n >= 0 else self.inverse()
        out = Isometry.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    @property
    def trace(self) -> float:
        """Real trace 2 Re(a); defined up to sign for orientation preserving maps."""
        return 2.0 * self.a.real

    def distance_to(self, other: Isometry) -> float:
        """Entrywise distance, minimized over the sign of the pair (inf if orientations differ)."""
        if self.reversing != other.reversing:
            return math.inf
        return min(max(abs(self.a - other.a), abs(self.b - other.b)),
                   max(abs(self.a + other.a), abs(self.b + other.b)))

    def is_identity(self, tol: float = CLASSIFY_TOL) -> bool:
        return self.distance_to(Isometry.identity()) < tol

    def as_tuple(self) -> tuple[float, float, float, float, bool]:
        return (self.a.real, self.a.imag, self.b.real, self.b.imag, self.reversing)

    @classmethod
    def from_tuple(cls, data: Sequence) -> Isometry:
        ar, ai, br, bi, rev = data
        return cls(complex(ar, ai), complex(br, bi), bool(rev))

    def fixed_points(self) -> list[complex]:
        """Solutions of ``f(z) = z`` for an orientation preserving map, on or in the disc."""
        if self.reversing:
            raise GeometryError("fixed_points is defined for orientation preserving maps")
        a, b = self.a, self.b
        c2, c1, c0 = b.conjugate(), a.conjugate() - a, -b
        if abs(c2) < 1e-15:
            return [0j] if abs(c1) > 1e-15 else []
        disc = cmath.sqrt(c1 * c1 - 4 * c2 * c0)
        return [(-c1 + disc) / (2 * c2), (-c1 - disc) / (2 * c2)]


@dataclass(frozen=True)
class Elliptic:
    fixed_point: complex
    angle: float  # counterclockwise, in (0, 2pi)


@dataclass(frozen=True)
class Parabolic:
    fixed_point: complex


@dataclass(frozen=True)
class Hyperbolic:
    axis: tuple[complex, complex]  # (repelling, attracting) ideal endpoints
    translation_length: float


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Reflection:
    pass


@dataclass(frozen=True)
class GlideReflection:
    translation_length: float


def classify(m: Isometry):
    if m.reversing:
        # m∘m is a translation along the glide axis, or the identity for a reflection
        sq = m @ m
        if sq.is_identity():
            return Reflection()
        return GlideReflection(translation_length(sq) / 2)
    if m.is_identity():
        return Identity()
    t = abs(m.trace)
    if t < 2 - CLASSIFY_TOL:
        p = elliptic_fixed_point(m)
        deriv = 1 / (m.b.conjugate() * p + m.a.conjugate()) ** 2
        angle = cmath.phase(deriv) % (2 * math.pi)
        return Elliptic(p, angle)
    if t <= 2 + CLASSIFY_TOL:
        fps = m.fixed_points()
        return Parabolic(fps[0] / abs(fps[0]))
    ell = 2 * math.acosh(t / 2)
    fps = [z / abs(z) for z in m.fixed_points()]
    # the attracting point has derivative < 1
    def deriv(z):
        return abs(1 / (m.b.conjugate() * z + m.a.conjugate()) ** 2)
    fps.sort(key=deriv, reverse=True)
    return Hyperbolic((fps[0], fps[1]), ell)


def translation_length(m: Isometry) -> float:
    t = abs(m.trace)
    return 2 * math.acosh(max(t / 2, 1.0))


def elliptic_fixed_point(m: Isometry) -> complex:
    fps = m.fixed_points()
    if not fps:
        raise GeometryError("identity has no isolated fixed point")
    return min(fps, key=abs)


def check_point(z: complex) -> complex:
    z = complex(z)
    if not abs(z) < 1 - DISC_MARGIN:
        raise GeometryError(f"point {z} is not inside the unit disc")
    return z


def translation_to(p: complex) -> Isometry:
    """The hyperbolic translation taking 0 to ``p`` along the diameter through ``p``."""
    p = check_point(p)
    s = math.sqrt(1 - abs(p) ** 2)
    return Isometry(1 / s, p / s)


def rotation_about(p: complex, order: int) -> Isometry:
    """Counterclockwise rotation by 2 pi / order fixing ``p``."""
    if order < 2:
        raise GeometryError(f"rotation order must be >= 2, got {order}")
    return rotation_by_angle(p, 2 * math.pi / order)


def rotation_by_angle(p: complex, angle: float) -> Isometry:
    r = Isometry(cmath.exp(0.5j * angle))
    t = translation_to(p)
    return t @ r @ t.inverse()


def reflection_in_diameter(angle: float) -> Isometry:
    """Reflection in the diameter making ``angle`` with the positive real axis."""
    return Isometry(cmath.exp(1j * angle), 0j, True)


def reflection_in_circle(center: complex, radius: float) -> Isometry:
    """Reflection (inversion) in a circle orthogonal to the unit circle."""
    return Isometry(1j * center / radius, -1j / radius, True)


def distance(p: complex, q: complex) -> float:
    num = abs(p - q)
    den = abs(1 - p.conjugate() * q)
    return 2 * math.atanh(min(num / den, 1.0 - 1e-16))


def angle_at(vertex: complex, p: complex, q: complex) -> float:
    """Unsigned angle at ``vertex`` between the geodesics towards ``p`` and ``q``."""
    t = translation_to(vertex).inverse()
    u, v = t(p), t(q)
    d = abs(cmath.phase(v / u))
    return d


def direction_at(vertex: complex, p: complex) -> float:
    """Argument of the initial tangent of the geodesic from ``vertex`` to ``p``."""
    return cmath.phase(translation_to(vertex).inverse()(p))


def interior_angles(vertices: Sequence[complex]) -> list[float]:
    """Interior angles of a simple counterclockwise polygon, reflex angles included."""
    n = len(vertices)
    out = []
    for i in range(n):
        v = vertices[i]
        back = direction_at(v, vertices[i - 1])
        fwd = direction_at(v, vertices[(i + 1) % n])
        out.append((back - fwd) % (2 * math.pi))
    return out


def polygon_area(vertices: Sequence[complex]) -> float:
    """Area of a simple counterclockwise geodesic polygon by Gauss-Bonnet."""
    n = len(vertices)
    return (n - 2) * math.pi - sum(interior_angles(vertices))


def signed_triangle_area(p: complex, q: complex, r: complex) -> float:
    """Area of the triangle pqr, negative when it is clockwise."""
    area = math.pi - angle_at(p, q, r) - angle_at(q, r, p) - angle_at(r, p, q)
    t = translation_to(p).inverse()
    orient = (t(q).conjugate() * t(r)).imag
    return area if orient >= 0 else -area


@dataclass(frozen=True)
class GeodesicSegment:
    """Geodesic segment from ``p`` to ``q``; ``center is None`` marks a diameter."""

    p: complex
    q: complex
    center: complex | None
    radius: float | None

    @property
    def is_diameter(self) -> bool:
        return self.center is None

    def reversed(self) -> GeodesicSegment:
        return GeodesicSegment(self.q, self.p, self.center, self.radius)

    def length(self) -> float:
        return distance(self.p, self.q)

    def image(self, m: Isometry) -> GeodesicSegment:
        return geodesic_between(m(self.p), m(self.q))

    def midpoint(self) -> complex:
        t = translation_to(self.p)
        u = t.inverse()(self.q)
        r = math.tanh(distance(self.p, self.q) / 4)
        return t(r * u / abs(u))


def geodesic_between(p: complex, q: complex) -> GeodesicSegment:
    p, q = check_point(p), check_point(q)
    if abs(p - q) < 1e-14:
        raise GeometryError("geodesic endpoints coincide")
    cross = (p.conjugate() * q).imag
    if abs(cross) < 1e-12 * max(1.0, abs(p) * abs(q)) or abs(p) < 1e-14 or abs(q) < 1e-14:
        return GeodesicSegment(p, q, None, None)
    # the arc circle c satisfies 2 Re(c conj(w)) = 1 + |w|^2 for w = p, q
    r1, r2 = 1 + abs(p) ** 2, 1 + abs(q) ** 2
    det = 2 * (p.real * q.imag - p.imag * q.real)
    cx = (r1 * q.imag - r2 * p.imag) / det
    cy = (p.real * r2 - q.real * r1) / det
    c = complex(cx, cy)
    return GeodesicSegment(p, q, c, math.sqrt(abs(c) ** 2 - 1))


def to_hyperboloid(z: complex) -> tuple[float, float, float]:
    s = 1 - abs(z) ** 2
    return ((1 + abs(z) ** 2) / s, 2 * z.real / s, 2 * z.imag / s)


def to_klein(z: complex) -> complex:
    return 2 * z / (1 + abs(z) ** 2)


def from_klein(k: complex) -> complex:
    r2 = abs(k) ** 2
    return k / (1 + math.sqrt(max(0.0, 1 - r2)))


def compose_all(ms: Iterable[Isometry]) -> Isometry:
    out = Isometry.identity()
    for m in ms:
        out = out @ m
    return out
