"""Affine isometry arithmetic for the T^7 orbifold and its deck group.

The group Gamma is generated by three commuting involutions

    alpha: (x1,...,x7) -> ( x1,  x2,  x3, -x4, -x5, -x6, -x7)
    beta : (x1,...,x7) -> ( x1, -x2, -x3,  x4,  x5, 1/2-x6, -x7)
    gamma: (x1,...,x7) -> (-x1,  x2, -x3,  x4, 1/2-x5,  x6, 1/2-x7)

Every element is a pair (signed permutation, exact rational translation)
carried in one of two modes:

* ``deck``  -- exact affine maps on R^7 (the deck group also contains the
  seven unit translations tau_1..tau_7),
* ``torus`` -- translations are reduced mod Z^7, giving isometries of T^7.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

DIM = 7

DECK = "deck"
TORUS = "torus"

GENERATOR_NAMES = ("alpha", "beta", "gamma") + tuple(f"tau{i}" for i in range(1, 8))


class GroupClosureError(RuntimeError):
    """Group generation exceeded its element cap (non-terminating input)."""


class RelationError(RuntimeError):
    """A deck-group relation failed to reduce to a pure translation."""


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SignedPermutation:
    """An orthogonal integer 7x7 matrix: e_j -> signs[j] * e_{perm[j]}.

    ``perm`` holds 1-based images, so perm[j-1] is the image of coordinate j.
    """

    perm: tuple
    signs: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, DIM + 1)):
            raise ValueError(f"not a permutation of 1..7: {self.perm}")
        if len(self.signs) != DIM or any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"signs must be +-1: {self.signs}")

    @classmethod
    def identity(cls) -> "SignedPermutation":
        return cls(tuple(range(1, DIM + 1)), (1,) * DIM)

    @classmethod
    def diagonal(cls, signs: Sequence[int]) -> "SignedPermutation":
        return cls(tuple(range(1, DIM + 1)), tuple(signs))

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(1, DIM + 1))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """Matrix product self o other."""
        perm = tuple(self.perm[other.perm[j] - 1] for j in range(DIM))
        signs = tuple(other.signs[j] * self.signs[other.perm[j] - 1] for j in range(DIM))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        perm = [0] * DIM
        signs = [0] * DIM
        for j in range(DIM):
            perm[self.perm[j] - 1] = j + 1
            signs[self.perm[j] - 1] = self.signs[j]
        return SignedPermutation(tuple(perm), tuple(signs))

    def apply(self, v: Sequence[Scalar]) -> tuple:
        out = [Fraction(0)] * DIM
        for j in range(DIM):
            out[self.perm[j] - 1] = self.signs[j] * _frac(v[j])
        return tuple(out)

    def matrix(self) -> tuple:
        """Rows of the matrix, compatible with forms.pullback."""
        rows = [[Fraction(0)] * DIM for _ in range(DIM)]
        for j in range(DIM):
            rows[self.perm[j] - 1][j] = Fraction(self.signs[j])
        return tuple(tuple(r) for r in rows)

    def diagonal_signs(self) -> tuple:
        if not self.is_diagonal():
            raise ValueError("not a diagonal signed permutation")
        return self.signs


def _reduce_mod1(v: Iterable[Fraction]) -> tuple:
    return tuple(x - (x.numerator // x.denominator) for x in map(_frac, v))


@dataclass(frozen=True)
class AffineIsometry:
    """x -> linear(x) + translation, in deck (R^7) or torus (mod Z^7) mode."""

    linear: SignedPermutation
    translation: tuple
    mode: str = TORUS

    def __post_init__(self):
        if self.mode not in (DECK, TORUS):
            raise ValueError(f"unknown mode {self.mode!r}")
        v = tuple(map(_frac, self.translation))
        if len(v) != DIM:
            raise ValueError("translation must have 7 components")
        if self.mode == TORUS:
            v = _reduce_mod1(v)
        object.__setattr__(self, "translation", v)

    @classmethod
    def identity(cls, mode: str = TORUS) -> "AffineIsometry":
        return cls(SignedPermutation.identity(), (0,) * DIM, mode)

    @classmethod
    def from_diagonal(cls, signs: Sequence[int], translation: Sequence[Scalar], mode: str) -> "AffineIsometry":
        return cls(SignedPermutation.diagonal(tuple(signs)), tuple(translation), mode)

    def is_identity(self) -> bool:
        return self.linear == SignedPermutation.identity() and all(
            x == 0 for x in self.translation
        )

    def apply(self, point: Sequence[Scalar]) -> tuple:
        moved = self.linear.apply(point)
        out = tuple(m + t for m, t in zip(moved, self.translation))
        return _reduce_mod1(out) if self.mode == TORUS else out

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """self o other: apply other first."""
        if self.mode != other.mode:
            raise ValueError("cannot compose maps in different modes")
        linear = self.linear.compose(other.linear)
        translation = tuple(
            a + b for a, b in zip(self.linear.apply(other.translation), self.translation)
        )
        return AffineIsometry(linear, translation, self.mode)

    def inverse(self) -> "AffineIsometry":
        inv = self.linear.inverse()
        translation = tuple(-x for x in inv.apply(self.translation))
        return AffineIsometry(inv, translation, self.mode)

    def commutator(self, other: "AffineIsometry") -> "AffineIsometry":
        return self.compose(other).compose(self.inverse()).compose(other.inverse())

    def to_mode(self, mode: str) -> "AffineIsometry":
        return AffineIsometry(self.linear, self.translation, mode)

    def is_pure_translation(self) -> bool:
        return self.linear == SignedPermutation.identity()

    def integer_translation(self) -> tuple:
        """The translation as integers; raises if not a pure lattice translation."""
        if not self.is_pure_translation():
            raise RelationError(f"element has non-identity linear part: {self.linear}")
        if any(x.denominator != 1 for x in self.translation):
            raise RelationError(f"translation is not integral: {self.translation}")
        return tuple(int(x) for x in self.translation)


def compose(f: AffineIsometry, g: AffineIsometry) -> AffineIsometry:
    return f.compose(g)


def inverse(f: AffineIsometry) -> AffineIsometry:
    return f.inverse()


def commutator(f: AffineIsometry, g: AffineIsometry) -> AffineIsometry:
    return f.commutator(g)


_ALPHA_SIGNS = (1, 1, 1, -1, -1, -1, -1)
_BETA_SIGNS = (1, -1, -1, 1, 1, -1, -1)
_GAMMA_SIGNS = (-1, 1, -1, 1, -1, 1, -1)
_HALF = Fraction(1, 2)


def alpha(mode: str = TORUS) -> AffineIsometry:
    return AffineIsometry.from_diagonal(_ALPHA_SIGNS, (0,) * DIM, mode)


def beta(mode: str = TORUS) -> AffineIsometry:
    return AffineIsometry.from_diagonal(_BETA_SIGNS, (0, 0, 0, 0, 0, _HALF, 0), mode)


def gamma(mode: str = TORUS) -> AffineIsometry:
    return AffineIsometry.from_diagonal(_GAMMA_SIGNS, (0, 0, 0, 0, _HALF, 0, _HALF), mode)


def tau(i: int, mode: str = DECK) -> AffineIsometry:
    if not 1 <= i <= DIM:
        raise ValueError("tau index must be in 1..7")
    return AffineIsometry.from_diagonal(
        (1,) * DIM, tuple(1 if j == i else 0 for j in range(1, DIM + 1)), mode
    )


def deck_generators() -> dict:
    """The ten generators alpha, beta, gamma, tau1..tau7 as deck-mode maps."""
    gens = {"alpha": alpha(DECK), "beta": beta(DECK), "gamma": gamma(DECK)}
    for i in range(1, DIM + 1):
        gens[f"tau{i}"] = tau(i, DECK)
    return gens


def generate_group(generators: Iterable[AffineIsometry], cap: int = 10000) -> set:
    """Closure under composition and inverse; raises GroupClosureError past cap."""
    gens = list(generators)
    if not gens:
        return {AffineIsometry.identity()}
    gens = gens + [g.inverse() for g in gens]
    seen = {AffineIsometry.identity(gens[0].mode)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = f.compose(g)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        raise GroupClosureError(f"group closure exceeded cap {cap}")
                    nxt.append(h)
        frontier = nxt
    return seen


def gamma_group() -> set:
    """The order-8 group <alpha, beta, gamma> acting on T^7."""
    return generate_group([alpha(), beta(), gamma()], cap=64)


@dataclass(frozen=True)
class FixedTorus:
    """A subtorus of T^7: some coordinates free, the rest pinned to constants."""

    free_coords: frozenset
    pinned: tuple  # sorted tuple of (coordinate, value in [0,1))

    def __post_init__(self):
        pinned_coords = {c for c, _ in self.pinned}
        if pinned_coords & set(self.free_coords):
            raise ValueError("a coordinate cannot be both free and pinned")
        if len(pinned_coords) + len(self.free_coords) != DIM:
            raise ValueError("free and pinned coordinates must cover 1..7")

    def dimension(self) -> int:
        return len(self.free_coords)

    def sample_point(self, rng) -> tuple:
        values = {c: v for c, v in self.pinned}
        for c in self.free_coords:
            values[c] = Fraction(rng.randint(0, 11), 12)
        return tuple(values[i] for i in range(1, DIM + 1))

    def transform(self, g: AffineIsometry) -> "FixedTorus":
        """Image of the torus under a torus isometry."""
        perm, signs = g.linear.perm, g.linear.signs
        free = frozenset(perm[c - 1] for c in self.free_coords)
        pinned = []
        for c, v in self.pinned:
            image = perm[c - 1]
            value = signs[c - 1] * v + g.translation[image - 1]
            pinned.append((image, value - (value.numerator // value.denominator)))
        return FixedTorus(free, tuple(sorted(pinned)))

    def key(self) -> tuple:
        return (tuple(sorted(self.free_coords)), self.pinned)


def fixed_set(g: AffineIsometry) -> list:
    """Fixed subtori (torus mode) or fixed affine subspaces (deck mode).

    Torus mode solves D_ii x_i + v_i = x_i mod 1 coordinatewise: a +1
    coordinate is free (v_i = 0) or kills the fixed set (v_i != 0); a -1
    coordinate is pinned to v_i/2 or v_i/2 + 1/2.  Deck mode solves the
    same equation over R, so a -1 coordinate pins a single value and any
    translation along a +1 coordinate (e.g. tau_i) has no fixed points.
    """
    if not g.linear.is_diagonal():
        raise ValueError("fixed_set supports diagonal linear parts only")
    signs = g.linear.diagonal_signs()
    free = []
    choices = []  # (coordinate, [values])
    for i in range(1, DIM + 1):
        s, v = signs[i - 1], g.translation[i - 1]
        if s == 1:
            if v != 0:
                return []
            free.append(i)
        elif g.mode == DECK:
            choices.append((i, [v / 2]))
        else:
            first = v / 2
            choices.append((i, [first, first + _HALF]))
    tori = []
    for combo in itertools.product(*(vals for _, vals in choices)):
        pinned = tuple(sorted(zip((c for c, _ in choices), combo)))
        tori.append(FixedTorus(frozenset(free), pinned))
    return tori


def singular_tori(group: set | None = None) -> dict:
    """Fixed tori of every non-identity group element, keyed by element."""
    if group is None:
        group = gamma_group()
    return {g: fixed_set(g) for g in sorted(group, key=_element_sort_key) if not g.is_identity()}


def _element_sort_key(g: AffineIsometry):
    return (g.linear.perm, g.linear.signs, g.translation)


def singular_components(group: set | None = None) -> int:
    """Number of Gamma-orbits of fixed tori: the singular-set component count."""
    if group is None:
        group = gamma_group()
    elements = sorted(group, key=_element_sort_key)
    tori = {t.key(): t for tori in singular_tori(group).values() for t in tori}
    orbits = set()
    for t in tori.values():
        orbits.add(min(t.transform(g).key() for g in elements))
    return len(orbits)


@dataclass(frozen=True)
class RelationTable:
    """Deck-group relations among the ten generators, all machine-derived.

    squares[g] and commutators[(g, h)] are the integer translation vectors
    of g^2 and g h g^-1 h^-1; tau_conjugates[(g, i)] is the signed power e
    with g tau_i g^-1 = tau_i^e.
    """

    squares: tuple  # ((name, vector), ...)
    commutators: tuple  # (((name, name), vector), ...)
    tau_conjugates: tuple  # (((name, i), exponent), ...)

    def square(self, name: str) -> tuple:
        return dict(self.squares)[name]

    def commutator_vector(self, g: str, h: str) -> tuple:
        return dict(self.commutators)[(g, h)]

    def tau_conjugate(self, g: str, i: int) -> int:
        return dict(self.tau_conjugates)[(g, i)]

    def translation_constraints(self) -> list:
        """Odd-parity supports of all squares and commutators.

        Each entry is a frozenset S of tau indices: a homomorphism to a
        2-torsion abelian group must satisfy prod_{i in S} rho(tau_i) = 1.
        """
        constraints = set()
        for _, vec in self.squares + self.commutators:
            support = frozenset(i + 1 for i, x in enumerate(vec) if x % 2)
            if support:
                constraints.add(support)
        return sorted(constraints, key=sorted)


def relation_table() -> RelationTable:
    """Squares, pairwise commutators and tau-conjugates of the deck generators.

    Raises RelationError if any square or commutator fails to be a pure
    integer translation.
    """
    gens = deck_generators()
    squares = []
    for name in GENERATOR_NAMES:
        g = gens[name]
        squares.append((name, g.compose(g).integer_translation()))
    commutators = []
    for n1, n2 in itertools.permutations(GENERATOR_NAMES, 2):
        vec = gens[n1].commutator(gens[n2]).integer_translation()
        commutators.append(((n1, n2), vec))
    conjugates = []
    for name in ("alpha", "beta", "gamma"):
        g = gens[name]
        for i in range(1, DIM + 1):
            conj = g.compose(tau(i, DECK)).compose(g.inverse())
            vec = conj.integer_translation()
            exponent = vec[i - 1]
            if tuple(abs(x) for x in vec) != tuple(
                1 if j == i else 0 for j in range(1, DIM + 1)
            ):
                raise RelationError(f"{name} tau{i} {name}^-1 is not a signed tau power: {vec}")
            conjugates.append(((name, i), exponent))
    return RelationTable(tuple(squares), tuple(commutators), tuple(conjugates))
