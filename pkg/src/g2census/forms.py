"""Exact exterior algebra on R^7 and the standard G2-structure.

Conventions, fixed once and used everywhere:

* a k-form is stored as a map from strictly increasing index tuples
  (values in 1..7, lexicographic basis of Lambda^k) to Fraction
  coefficients; absent entries are zero,
* dx_{ij...l} means dx_i ^ dx_j ^ ... ^ dx_l,
* dx_1234567 is the positive volume form, and the Hodge star is taken
  with respect to the Euclidean metric g0 = dx_1^2 + ... + dx_7^2,
* the inner product on k-forms makes the monomial basis orthonormal.

All coefficients are exact rationals; nothing in this module touches
floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import linalg

DIM = 7
VOLUME_INDICES = (1, 2, 3, 4, 5, 6, 7)

Scalar = Union[int, Fraction]
Vector7 = tuple  # 7 exact rational components
LinearMap7 = tuple  # 7 rows of 7 exact rational entries


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_vector(components: Sequence[Scalar]) -> Vector7:
    if len(components) != DIM:
        raise ValueError(f"expected {DIM} components, got {len(components)}")
    return tuple(_frac(c) for c in components)


def as_matrix(rows: Sequence[Sequence[Scalar]]) -> LinearMap7:
    if len(rows) != DIM or any(len(r) != DIM for r in rows):
        raise ValueError("expected a 7x7 matrix")
    return tuple(tuple(_frac(x) for x in r) for r in rows)


def basis_vector(i: int) -> Vector7:
    return tuple(Fraction(1 if j == i else 0) for j in range(1, DIM + 1))


def identity_matrix() -> LinearMap7:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(DIM)) for i in range(DIM))


def diagonal_matrix(diagonal: Sequence[Scalar]) -> LinearMap7:
    d = [_frac(x) for x in diagonal]
    if len(d) != DIM:
        raise ValueError("diagonal must have 7 entries")
    return tuple(tuple(d[i] if i == j else Fraction(0) for j in range(DIM)) for i in range(DIM))


def _check_indices(indices: tuple, degree: int) -> None:
    if len(indices) != degree:
        raise ValueError(f"index tuple {indices} does not match degree {degree}")
    if any(not (1 <= i <= DIM) for i in indices):
        raise ValueError(f"indices out of range 1..7: {indices}")
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"index tuple not strictly increasing: {indices}")


def _merge_indices(a: tuple, b: tuple):
    """Merge two increasing tuples. Returns (sign, merged) or None on a clash."""
    if set(a) & set(b):
        return None
    merged = tuple(sorted(a + b))
    # sign = parity of the shuffle moving a+b into sorted order
    seq = a + b
    inversions = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), merged


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


class KForm:
    """A degree-k antisymmetric tensor on R^7 with exact rational coefficients.

    Instances are immutable by convention: no method mutates the
    coefficient map, so forms can be shared freely.
    """

    __slots__ = ("degree", "_coeffs")

    def __init__(self, degree: int, coeffs: dict | None = None):
        if not 0 <= degree <= DIM:
            raise ValueError(f"degree must be in 0..7, got {degree}")
        self.degree = degree
        clean: dict = {}
        for indices, value in (coeffs or {}).items():
            indices = tuple(indices)
            _check_indices(indices, degree)
            v = _frac(value)
            if v != 0:
                clean[indices] = v
        self._coeffs = clean

    @classmethod
    def zero(cls, degree: int) -> "KForm":
        return cls(degree, {})

    @classmethod
    def monomial(cls, indices: Iterable[int], coeff: Scalar = 1) -> "KForm":
        indices = tuple(indices)
        return cls(len(indices), {indices: coeff})

    @classmethod
    def constant(cls, value: Scalar) -> "KForm":
        return cls(0, {(): value})

    def coefficient(self, indices: Iterable[int]) -> Fraction:
        return self._coeffs.get(tuple(indices), Fraction(0))

    def items(self):
        return sorted(self._coeffs.items())

    def support(self):
        return set(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KForm)
            and self.degree == other.degree
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self._coeffs.items())))

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        coeffs = dict(self._coeffs)
        for idx, v in other._coeffs.items():
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + v
        return KForm(self.degree, coeffs)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, {i: -v for i, v in self._coeffs.items()})

    def __mul__(self, scalar: Scalar) -> "KForm":
        s = _frac(scalar)
        return KForm(self.degree, {i: s * v for i, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "KForm":
        return self * (Fraction(1) / _frac(scalar))

    def evaluate(self, vectors: Sequence[Vector7]) -> Fraction:
        """Apply the form to `degree` many vectors: sum of c_I det(v restricted to I)."""
        if len(vectors) != self.degree:
            raise ValueError(f"need {self.degree} vectors, got {len(vectors)}")
        if self.degree == 0:
            return self._coeffs.get((), Fraction(0))
        total = Fraction(0)
        for indices, c in self._coeffs.items():
            minor = [[v[i - 1] for v in vectors] for i in indices]
            total += c * _det(minor)
        return total

    def __repr__(self):
        if self.is_zero():
            return f"KForm({self.degree}, 0)"
        parts = []
        for idx, v in self.items():
            name = "dx_" + "".join(str(i) for i in idx) if idx else "1"
            parts.append(f"{v}*{name}")
        return "KForm(" + " + ".join(parts) + ")"


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product; rejects results of degree > 7."""
    degree = a.degree + b.degree
    if degree > DIM:
        raise ValueError(f"wedge degree overflow: {a.degree} + {b.degree} > {DIM}")
    coeffs: dict = {}
    for ia, va in a._coeffs.items():
        for ib, vb in b._coeffs.items():
            merged = _merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + sign * va * vb
    return KForm(degree, coeffs)


def hodge_star(a: KForm) -> KForm:
    """Hodge star for g0 and the orientation dx_1234567.

    In dimension 7 the star squares to the identity on every degree.
    """
    coeffs: dict = {}
    for indices, v in a._coeffs.items():
        complement = tuple(i for i in VOLUME_INDICES if i not in indices)
        seq = indices + complement
        inversions = sum(
            1 for i, j in itertools.combinations(range(DIM), 2) if seq[i] > seq[j]
        )
        sign = -1 if inversions % 2 else 1
        coeffs[complement] = sign * v
    return KForm(DIM - a.degree, coeffs)


def inner(a: KForm, b: KForm) -> Fraction:
    """g0-induced inner product; the increasing monomials are orthonormal."""
    if a.degree != b.degree:
        raise ValueError("inner product needs equal degrees")
    return sum((v * b._coeffs.get(i, Fraction(0)) for i, v in a._coeffs.items()), Fraction(0))


def interior_product(u: Sequence[Scalar], a: KForm) -> KForm:
    """Contraction i(u)a of the first slot of a with the vector u."""
    if a.degree == 0:
        raise ValueError("cannot contract a 0-form")
    u = as_vector(u)
    coeffs: dict = {}
    for indices, v in a._coeffs.items():
        for pos, i in enumerate(indices):
            if u[i - 1] == 0:
                continue
            rest = indices[:pos] + indices[pos + 1 :]
            sign = -1 if pos % 2 else 1
            coeffs[rest] = coeffs.get(rest, Fraction(0)) + sign * u[i - 1] * v
    return KForm(a.degree - 1, coeffs)


_PHI_TERMS = {
    (1, 2, 3): 1,
    (1, 4, 5): 1,
    (1, 6, 7): 1,
    (2, 4, 6): 1,
    (2, 5, 7): -1,
    (3, 4, 7): -1,
    (3, 5, 6): -1,
}


def standard_phi() -> KForm:
    """The model 3-form dx_123+dx_145+dx_167+dx_246-dx_257-dx_347-dx_356."""
    return KForm(3, dict(_PHI_TERMS))


def standard_psi() -> KForm:
    """The dual 4-form, star of the model 3-form."""
    return hodge_star(standard_phi())


def cross_product(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector7:
    """The bilinear product defined by phi0(u, v, w) = <u x v, w> for all w.

    Expands each term of the model form along its w-slot, so every term
    (i, j, k) contributes 2x2 minors of (u, v) to the three components.
    """
    u = as_vector(u)
    v = as_vector(v)
    out = [Fraction(0)] * DIM
    for (i, j, k), c in _PHI_TERMS.items():
        mij = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1]
        mik = u[i - 1] * v[k - 1] - u[k - 1] * v[i - 1]
        mjk = u[j - 1] * v[k - 1] - u[k - 1] * v[j - 1]
        out[k - 1] += c * mij
        out[j - 1] -= c * mik
        out[i - 1] += c * mjk
    return tuple(out)


def pullback(m: Sequence[Sequence[Scalar]], a: KForm) -> KForm:
    """(m^* a)(v_1, ..., v_k) = a(m v_1, ..., m v_k), computed exactly."""
    m = as_matrix(m)
    if a.degree == 0:
        return a
    coeffs: dict = {}
    for target in itertools.combinations(range(1, DIM + 1), a.degree):
        total = Fraction(0)
        for source, c in a._coeffs.items():
            minor = [[m[i - 1][j - 1] for j in target] for i in source]
            d = _det(minor)
            if d != 0:
                total += c * d
        if total != 0:
            coeffs[target] = total
    return KForm(a.degree, coeffs)


def preserves_phi(m: Sequence[Sequence[Scalar]]) -> bool:
    """True iff the linear map fixes the model 3-form exactly."""
    return pullback(m, standard_phi()) == standard_phi()


def project_2forms(a: KForm) -> tuple[KForm, KForm]:
    """Split a 2-form into its 7- and 14-dimensional invariant parts.

    The parts satisfy *(p7 ^ phi0) = 2 p7 and *(p14 ^ phi0) = -p14.
    """
    if a.degree != 2:
        raise ValueError("project_2forms takes a 2-form")
    phi = standard_phi()
    p7 = (a + hodge_star(wedge(a, phi))) / 3
    p14 = a - p7
    return p7, p14


def project_3forms(a: KForm) -> tuple[KForm, KForm, KForm]:
    """Split a 3-form into the 1-, 7- and 27-dimensional invariant parts.

    p1 is the component along phi0, p7 lies in span{ i(u) psi }, and the
    remainder p27 satisfies p27 ^ phi0 = 0 and p27 ^ psi = 0.
    """
    if a.degree != 3:
        raise ValueError("project_3forms takes a 3-form")
    phi = standard_phi()
    psi = standard_psi()
    p1 = phi * (inner(a, phi) / inner(phi, phi))
    residual = a - p1
    basis = [interior_product(basis_vector(j), psi) for j in range(1, DIM + 1)]
    gram = [[inner(bi, bj) for bj in basis] for bi in basis]
    rhs = [inner(residual, bi) for bi in basis]
    x = linalg.solve(gram, rhs)
    p7 = KForm.zero(3)
    for coeff, b in zip(x, basis):
        p7 = p7 + b * coeff
    p27 = residual - p7
    return p1, p7, p27


def _projector_ranks(degree: int, projections) -> tuple[int, ...]:
    basis = list(itertools.combinations(range(1, DIM + 1), degree))
    columns = [projections(KForm.monomial(idx)) for idx in basis]
    ranks = []
    for part in range(len(columns[0])):
        rows = [[col[part].coefficient(idx) for idx in basis] for col in columns]
        ranks.append(linalg.rank(rows))
    return tuple(ranks)


def two_form_projector_ranks() -> tuple[int, int]:
    """Ranks of the two projection operators on 2-forms; equals (7, 14)."""
    return _projector_ranks(2, project_2forms)


def three_form_projector_ranks() -> tuple[int, int, int]:
    """Ranks of the three projection operators on 3-forms; equals (1, 7, 27)."""
    return _projector_ranks(3, project_3forms)


@dataclass(frozen=True)
class HyperkahlerTriple:
    """Three symplectic 2-forms on a 4-coordinate block of R^7.

    Validates support and the quaternionic relations
    omega_i ^ omega_j = 2 delta_ij vol_block on construction.
    """

    omegas: tuple
    block: tuple

    def __post_init__(self):
        block = tuple(sorted(self.block))
        object.__setattr__(self, "block", block)
        object.__setattr__(self, "omegas", tuple(self.omegas))
        if len(block) != 4 or len(set(block)) != 4:
            raise ValueError("block must be 4 distinct coordinates")
        if len(self.omegas) != 3:
            raise ValueError("need exactly three 2-forms")
        vol = KForm.monomial(block)
        for w in self.omegas:
            if w.degree != 2:
                raise ValueError("triple entries must be 2-forms")
            if any(not set(idx) <= set(block) for idx in w.support()):
                raise ValueError("triple not supported on the block")
        for i, wi in enumerate(self.omegas):
            for j, wj in enumerate(self.omegas):
                expected = vol * 2 if i == j else KForm.zero(4)
                if wedge(wi, wj) != expected:
                    raise ValueError(
                        f"omega_{i + 1} ^ omega_{j + 1} violates the quaternionic relations"
                    )

    def volume(self) -> KForm:
        return KForm.monomial(self.block)


def standard_flat_triple() -> HyperkahlerTriple:
    """The flat triple on coordinates {4,5,6,7} whose product structure is phi0."""
    w1 = KForm(2, {(4, 5): -1, (6, 7): -1})
    w2 = KForm(2, {(4, 6): -1, (5, 7): 1})
    w3 = KForm(2, {(4, 7): 1, (5, 6): 1})
    return HyperkahlerTriple((w1, w2, w3), (4, 5, 6, 7))


def product_g2(triple: HyperkahlerTriple, r3_coords: Iterable[int]) -> tuple[KForm, KForm]:
    """3- and 4-form of the product structure on R^3 x (block).

    Returns dx_abc - sum_i dx_i ^ omega_i and
    vol_block - sum_cyclic omega_i ^ dx_jk.
    """
    r = tuple(sorted(r3_coords))
    if len(r) != 3 or set(r) & set(triple.block):
        raise ValueError("r3 coordinates must be 3 indices disjoint from the block")
    if set(r) | set(triple.block) != set(VOLUME_INDICES):
        raise ValueError("r3 coordinates and block must exhaust 1..7")
    dx = [KForm.monomial((i,)) for i in r]
    phi = KForm.monomial(r)
    for dxi, wi in zip(dx, triple.omegas):
        phi = phi - wedge(dxi, wi)
    psi = triple.volume()
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        psi = psi - wedge(triple.omegas[i], wedge(dx[j], dx[k]))
    return phi, psi
