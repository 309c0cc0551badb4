"""Exact quaternion arithmetic and the Eguchi-Hanson moment-map checks.

The model is M = H^2 with a circle acting by right multiplication on
both coordinates, the moment map mu(q1, q2) = (1/2) sum q_a i conj(q_a),
and the two commuting symmetry actions: SO(2) from the left and SU(2)
from the right.  Group elements are parametrised by rational points
(Pythagorean circle points, Cayley-transformed unit quaternions) so
every identity is checked with exact arithmetic and no tolerances.

SU(2) elements are unit quaternions; they act on (q1, q2) through the
usual correspondence with complex 2x2 matrices
    w + xi + yj + zk  <->  [[w+xi, y+zi], [-(y-zi), w-xi]]
applied to (q1, q2) as a row vector from the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Quaternion:
    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, w: Scalar = 0, x: Scalar = 0, y: Scalar = 0, z: Scalar = 0) -> "Quaternion":
        return cls(_frac(w), _frac(x), _frac(y), _frac(z))

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return self + (-other)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            s = _frac(other)
            return Quaternion(self.w * s, self.x * s, self.y * s, self.z * s)
        a, b, c, d = self.w, self.x, self.y, self.z
        e, f, g, h = other.w, other.x, other.y, other.z
        return Quaternion(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> Fraction:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def is_zero(self) -> bool:
        return self == ZERO


ZERO = Quaternion.of(0)
ONE = Quaternion.of(1)
I = Quaternion.of(0, 1)
J = Quaternion.of(0, 0, 1)
K = Quaternion.of(0, 0, 0, 1)


@dataclass(frozen=True)
class ImQuat:
    """A purely imaginary quaternion: the value space of the moment map."""

    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x: Scalar = 0, y: Scalar = 0, z: Scalar = 0) -> "ImQuat":
        return cls(_frac(x), _frac(y), _frac(z))

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ImQuat":
        if q.w != 0:
            raise ValueError(f"quaternion has non-zero real part: {q.w}")
        return cls(q.x, q.y, q.z)


ZETA = ImQuat.of(Fraction(1, 2), 0, 0)  # the moment-map level i/2


@dataclass(frozen=True)
class CircleElement:
    """A rational point (c, s) with c^2 + s^2 = 1, read as c + s*i."""

    c: Fraction
    s: Fraction

    def __post_init__(self):
        if self.c**2 + self.s**2 != 1:
            raise ValueError("circle element must satisfy c^2 + s^2 = 1 exactly")

    @classmethod
    def of(cls, c: Scalar, s: Scalar) -> "CircleElement":
        return cls(_frac(c), _frac(s))

    @classmethod
    def identity(cls) -> "CircleElement":
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def from_slope(cls, m: Scalar) -> "CircleElement":
        """Pythagorean point ((1-m^2)/(1+m^2), 2m/(1+m^2))."""
        m = _frac(m)
        d = 1 + m * m
        return cls((1 - m * m) / d, 2 * m / d)

    def __mul__(self, other: "CircleElement") -> "CircleElement":
        return CircleElement(
            self.c * other.c - self.s * other.s, self.c * other.s + self.s * other.c
        )

    def __neg__(self) -> "CircleElement":
        return CircleElement(-self.c, -self.s)

    def inverse(self) -> "CircleElement":
        return CircleElement(self.c, -self.s)

    def quaternion(self) -> Quaternion:
        return Quaternion(self.c, self.s, Fraction(0), Fraction(0))


@dataclass(frozen=True)
class SU2Element:
    """A unit quaternion, identified with an SU(2) matrix as in the module docstring."""

    u: Quaternion

    def __post_init__(self):
        if self.u.norm_sq() != 1:
            raise ValueError("SU(2) element must be a unit quaternion")

    @classmethod
    def identity(cls) -> "SU2Element":
        return cls(ONE)

    @classmethod
    def from_imaginary(cls, x: Scalar, y: Scalar, z: Scalar) -> "SU2Element":
        """Cayley transform of the imaginary quaternion xi + yj + zk."""
        x, y, z = _frac(x), _frac(y), _frac(z)
        n = x * x + y * y + z * z
        d = 1 + n
        return cls(Quaternion((1 - n) / d, 2 * x / d, 2 * y / d, 2 * z / d))

    def __mul__(self, other: "SU2Element") -> "SU2Element":
        return SU2Element(self.u * other.u)

    def __neg__(self) -> "SU2Element":
        return SU2Element(-self.u)

    def matrix_entries(self) -> tuple:
        """((a, b), (-conj(b), conj(a))) as complex pairs (re, im)."""
        a = (self.u.w, self.u.x)
        b = (self.u.y, self.u.z)
        return (a, b, (-b[0], b[1]), (a[0], -a[1]))


@dataclass(frozen=True)
class MPoint:
    """A point of M = H^2."""

    q1: Quaternion
    q2: Quaternion


def moment_map(p: MPoint) -> ImQuat:
    """(1/2) sum_a q_a i conj(q_a); the real part vanishes identically."""
    total = ZERO
    for q in (p.q1, p.q2):
        total = total + q * I * q.conjugate()
    half = total * Fraction(1, 2)
    return ImQuat.from_quaternion(half)


def circle_act(t: CircleElement, p: MPoint) -> MPoint:
    """The quotient circle action q_a -> q_a e^{it}; preserves the moment map."""
    e = t.quaternion()
    return MPoint(p.q1 * e, p.q2 * e)


def so2_left_act(t: CircleElement, p: MPoint) -> MPoint:
    """Left multiplication q_a -> e^{it} q_a."""
    e = t.quaternion()
    return MPoint(e * p.q1, e * p.q2)


def su2_right_act(u: SU2Element, p: MPoint) -> MPoint:
    """Right multiplication of (q1, q2) by the SU(2) matrix of u."""
    a, b, c, d = u.matrix_entries()

    def cplx(re_im) -> Quaternion:
        return Quaternion(re_im[0], re_im[1], Fraction(0), Fraction(0))

    return MPoint(p.q1 * cplx(a) + p.q2 * cplx(c), p.q1 * cplx(b) + p.q2 * cplx(d))


def _canonical_sign(entries: tuple) -> tuple:
    """Scale a tuple of rationals by +-1 so the first non-zero entry is positive."""
    for v in entries:
        if v != 0:
            return entries if v > 0 else tuple(-x for x in entries)
    return entries


def u2_image(lam: CircleElement, a: SU2Element) -> tuple:
    """The class [lam * A] in U(2)/{+-1}, as a sign-canonicalised entry tuple."""
    (ar, ai), (br, bi), (cr, ci), (dr, di) = a.matrix_entries()
    c, s = lam.c, lam.s
    entries = (
        c * ar - s * ai, c * ai + s * ar,
        c * br - s * bi, c * bi + s * br,
        c * cr - s * ci, c * ci + s * cr,
        c * dr - s * di, c * di + s * dr,
    )
    return _canonical_sign(entries)


def u2_iso_check(lam: CircleElement, a: SU2Element) -> bool:
    """Well-definedness of ([lam],[A]) -> [lam A] on the given pair.

    Checks that (lam, A) and (-lam, -A) have the same image, and that the
    image factors as [lam * 1] composed with [1 * A].
    """
    image = u2_image(lam, a)
    if image != u2_image(-lam, -a):
        return False
    return u2_respects_product(lam, SU2Element.identity(), CircleElement.identity(), a)


def u2_respects_product(
    lam1: CircleElement, a1: SU2Element, lam2: CircleElement, a2: SU2Element
) -> bool:
    """[lam1 A1][lam2 A2] == [(lam1 lam2)(A1 A2)], with the product taken in U(2)."""
    left = _matrix_product_mod_sign(u2_image(lam1, a1), u2_image(lam2, a2))
    right = u2_image(lam1 * lam2, a1 * a2)
    return left == right


def _matrix_product_mod_sign(m1: tuple, m2: tuple) -> tuple:
    def cmul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def cadd(x, y):
        return (x[0] + y[0], x[1] + y[1])

    a1, b1, c1, d1 = m1[0:2], m1[2:4], m1[4:6], m1[6:8]
    a2, b2, c2, d2 = m2[0:2], m2[2:4], m2[4:6], m2[6:8]
    out = (
        cadd(cmul(a1, a2), cmul(b1, c2)),
        cadd(cmul(a1, b2), cmul(b1, d2)),
        cadd(cmul(c1, a2), cmul(d1, c2)),
        cadd(cmul(c1, b2), cmul(d1, d2)),
    )
    flat = tuple(v for pair in out for v in pair)
    return _canonical_sign(flat)


def sample_circle(rng) -> CircleElement:
    return CircleElement.from_slope(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))


def sample_su2(rng) -> SU2Element:
    while True:
        x = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        y = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        z = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        u = SU2Element.from_imaginary(x, y, z)
        if rng.random() < 0.5:
            u = -u
        return u


def sample_quaternion(rng) -> Quaternion:
    return Quaternion.of(*(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4)))


def sample_point(rng) -> MPoint:
    return MPoint(sample_quaternion(rng), sample_quaternion(rng))


def sample_level_set_point(rng) -> MPoint:
    """A rational point with mu = i/2: rotate (1, 0) by the two symmetry actions."""
    p = MPoint(ONE, ZERO)
    p = su2_right_act(sample_su2(rng), p)
    p = so2_left_act(sample_circle(rng), p)
    p = circle_act(sample_circle(rng), p)
    return p
