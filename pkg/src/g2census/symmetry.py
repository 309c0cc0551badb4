"""Symmetries of the orbifold and their action on holonomy assignments.

Three layers:

* the subgroup H of Isom(Z^7) = signed permutations preserving the model
  3-form, found by brute force over all 2^7 * 7! candidates,
* the automorphism group of the orbifold, Aut = K x| {0,1/2}^7 with K the
  group of the three diagonal generator sign patterns, found by filtering
  candidates (linear in H, translation in {0,1/2}^7) through the
  normalizer condition f g f^-1 in Gamma,
* the induced action on assignments: conjugating a deck generator by a
  lifted automorphism lands back in the deck group and factors as a
  canonical word in alpha, beta, gamma times an integer translation, so
  an automorphism rewrites each generator image as a product of old ones.

Every automorphism fixes the tau images (diagonal conjugacy sends tau_i
to tau_i^{+-1}, and the target group is 2-torsion), so orbits live inside
a fixed tau-fiber and are cosets of a fiber-dependent shift subgroup.
The orbit partition below exploits that; the elementwise conjugation
path stays available as induced_action and is what the tests check the
fast path against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import forms
from .census import Assignment
from .orbifold import (
    DECK,
    TORUS,
    AffineIsometry,
    SignedPermutation,
    alpha,
    beta,
    gamma,
    gamma_group,
    generate_group,
    tau,
)

_HALF = Fraction(1, 2)

_PHI = {
    (1, 2, 3): 1,
    (1, 4, 5): 1,
    (1, 6, 7): 1,
    (2, 4, 6): 1,
    (2, 5, 7): -1,
    (3, 4, 7): -1,
    (3, 5, 6): -1,
}


def signed_permutation_pullback(sp: SignedPermutation, form: forms.KForm) -> forms.KForm:
    """Pullback of a form under a signed permutation, by direct term mapping."""
    inv = sp.inverse()
    coeffs: dict = {}
    for indices, value in form.items():
        mapped = tuple(inv.perm[i - 1] for i in indices)
        sign = 1
        for i in indices:
            sign *= inv.signs[i - 1]
        ordered = tuple(sorted(mapped))
        inversions = sum(
            1 for x, y in itertools.combinations(mapped, 2) if x > y
        )
        if inversions % 2:
            sign = -sign
        coeffs[ordered] = coeffs.get(ordered, Fraction(0)) + sign * value
    return forms.KForm(form.degree, coeffs)


def stabilizer_of_phi() -> list:
    """All signed permutations fixing the model 3-form; 1344 elements.

    Iterates the full 2^7 * 7! candidate space: for each permutation the
    seven term conditions become sign-parity equations, checked against
    all 128 sign vectors via a small parity table.
    """
    parity = [bin(x).count("1") & 1 for x in range(128)]
    terms = list(_PHI.items())
    result = []
    for q in itertools.permutations(range(1, 8)):  # q plays p^-1
        conditions = []
        for indices, coeff in terms:
            mapped = tuple(q[i - 1] for i in indices)
            target = _PHI.get(tuple(sorted(mapped)))
            if target is None:
                conditions = None
                break
            inversions = sum(1 for x, y in itertools.combinations(mapped, 2) if x > y)
            sort_sign = -1 if inversions % 2 else 1
            mask = 0
            for i in mapped:
                mask |= 1 << (i - 1)
            conditions.append((mask, 1 if coeff * sort_sign * target < 0 else 0))
        if conditions is None:
            continue
        p = [0] * 7
        for j in range(7):
            p[q[j] - 1] = j + 1
        for bits in range(128):
            if all(parity[bits & mask] == need for mask, need in conditions):
                signs = tuple(-1 if bits >> (i) & 1 else 1 for i in range(7))
                result.append(SignedPermutation(tuple(p), signs))
    return result


def k_generators() -> list:
    """The three diagonal sign patterns generating K."""
    return [
        SignedPermutation.diagonal((1, 1, 1, -1, -1, -1, -1)),
        SignedPermutation.diagonal((1, -1, -1, 1, 1, -1, -1)),
        SignedPermutation.diagonal((-1, 1, -1, 1, -1, 1, -1)),
    ]


def aut_orbifold(condition: str = "normalizer", stabilizer: list | None = None) -> list:
    """Automorphisms of the orbifold: torus maps normalizing Gamma.

    Candidates combine a linear part from the model-form stabilizer with a
    translation in {0,1/2}^7.  ``condition`` selects f g f^-1 in Gamma
    ("normalizer") or f g^-1 f^-1 in Gamma ("printed"); the two agree
    because Gamma is closed under inversion.  The survivor set is checked
    against the closure of K's generators and the half-translations, and
    a mismatch raises.
    """
    if condition not in ("normalizer", "printed"):
        raise ValueError(f"unknown condition {condition!r}")
    if stabilizer is None:
        stabilizer = stabilizer_of_phi()
    gam = gamma_group()
    gens = [alpha(), beta(), gamma()]
    if condition == "printed":
        gens = [g.inverse() for g in gens]
    # The conjugate's translation mod 1 is independent of the candidate's
    # translation u: (u - D'u) is integral for u in {0,1/2}^7 and diagonal
    # D', so the normalizer condition only constrains the linear part.
    surviving_linears = []
    for lin in stabilizer:
        zero = AffineIsometry(lin, (0,) * 7, TORUS)
        if all(zero.compose(g).compose(zero.inverse()) in gam for g in gens):
            surviving_linears.append(lin)
    out = []
    for lin in surviving_linears:
        for bits in range(128):
            u = tuple(_HALF if bits >> i & 1 else Fraction(0) for i in range(7))
            out.append(AffineIsometry(lin, u, TORUS))
    generated = generate_group(
        [AffineIsometry(k, (0,) * 7, TORUS) for k in k_generators()]
        + [
            AffineIsometry(
                SignedPermutation.identity(),
                tuple(_HALF if j == i else Fraction(0) for j in range(7)),
                TORUS,
            )
            for i in range(7)
        ],
        cap=4096,
    )
    if set(out) != generated:
        raise RuntimeError(
            "normalizer filter disagrees with the generated automorphism group"
        )
    return sorted(out, key=lambda f: (f.linear.perm, f.linear.signs, f.translation))


class DecompositionError(RuntimeError):
    """A conjugated generator failed to factor over the deck generators."""


def _canonical_words() -> dict:
    """The eight products of distinct letters from (alpha, beta, gamma),
    keyed by the linear part's diagonal signs."""
    letters = {"alpha": alpha(DECK), "beta": beta(DECK), "gamma": gamma(DECK)}
    words = {}
    for r in range(4):
        for combo in itertools.combinations(("alpha", "beta", "gamma"), r):
            word = AffineIsometry.identity(DECK)
            for name in combo:
                word = word.compose(letters[name])
            words[word.linear.signs] = (combo, word)
    return words


_WORDS = _canonical_words()
_GENERATOR_ORDER = ("alpha", "beta", "gamma") + tuple(f"tau{i}" for i in range(1, 8))


@lru_cache(maxsize=None)
def conjugate_generator(f: AffineIsometry, name: str) -> tuple:
    """Factor f^-1 g f as (word letters, integer translation vector).

    f is a torus-mode automorphism; the conjugation happens in deck mode
    with f's exact translation.  Raises DecompositionError when the
    residual translation is not integral.  Cached: the automorphism group
    is small and the action is applied to many assignments.
    """
    f_deck = AffineIsometry(f.linear, f.translation, DECK)
    if name.startswith("tau"):
        g = tau(int(name[3:]), DECK)
    else:
        g = {"alpha": alpha(DECK), "beta": beta(DECK), "gamma": gamma(DECK)}[name]
    conj = f_deck.inverse().compose(g).compose(f_deck)
    entry = _WORDS.get(conj.linear.signs if conj.linear.is_diagonal() else None)
    if entry is None:
        raise DecompositionError(f"conjugate of {name} has linear part outside Gamma")
    word_letters, word = entry
    residual = word.inverse().compose(conj)
    try:
        vector = residual.integer_translation()
    except Exception as exc:
        raise DecompositionError(
            f"conjugate of {name} left a non-integral residual translation"
        ) from exc
    return word_letters, vector


def induced_action(f: AffineIsometry, rho: Assignment) -> Assignment:
    """Pull an assignment back along an automorphism: rho'(g) = rho(f^-1 g f)."""
    values = dict(zip(_GENERATOR_ORDER, rho.codes()))
    new = {}
    for name in _GENERATOR_ORDER:
        letters, vector = conjugate_generator(f, name)
        v = 0
        for letter in letters:
            v ^= values[letter]
        for i, t in enumerate(vector):
            if t % 2:
                v ^= values[f"tau{i + 1}"]
        new[name] = v
    return Assignment.of(
        new["alpha"], new["beta"], new["gamma"], tuple(new[f"tau{i}"] for i in range(1, 8))
    )


# ---------------------------------------------------------------------------
# orbit partition of a census subset

_TAU_BITS = 14


def _tau_fold(mask: int, tau_code: int) -> int:
    """XOR of the 2-bit tau images selected by a 7-bit index mask."""
    x = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1  # tau_{i+1}
        x ^= (tau_code >> (2 * (6 - i))) & 3
        mask &= mask - 1
    return x


def shift_mask_triples(aut: Sequence[AffineIsometry]) -> set:
    """For each automorphism, the tau index masks shifting alpha, beta, gamma.

    Conjugation fixes each tau image and multiplies the image of g in
    (alpha, beta, gamma) by the tau images over a subset S_g of indices;
    the triples (S_alpha, S_beta, S_gamma) form a subgroup of (F_2^7)^3.
    """
    triples = set()
    for f in aut:
        masks = []
        for name in ("alpha", "beta", "gamma"):
            letters, vector = conjugate_generator(f, name)
            if letters != (name,):
                raise DecompositionError(
                    f"automorphism moves {name} to the word {letters}"
                )
            m = 0
            for i, t in enumerate(vector):
                if t % 2:
                    m |= 1 << i
            masks.append(m)
        for name in _GENERATOR_ORDER[3:]:
            letters, vector = conjugate_generator(f, name)
            i = int(name[3:])
            if letters != () or tuple(abs(x) for x in vector) != tuple(
                1 if j == i else 0 for j in range(1, 8)
            ):
                raise DecompositionError(f"automorphism moves {name} off the tau line")
        triples.add((masks[0] << 14) | (masks[1] << 7) | masks[2])
    return triples


def _xor_basis(vectors: Iterable[int]) -> list:
    basis: list = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def _coset_minimum(x: int, basis: list) -> int:
    for b in basis:
        x = min(x, x ^ b)
    return x


@dataclass(frozen=True)
class OrbitReport:
    group_order: int
    orbit_count: int
    pigeonhole_bound: int
    subset_size: int


def orbit_partition(codes: Iterable[int], aut: Sequence[AffineIsometry] | None = None) -> tuple:
    """Partition packed assignment codes into automorphism orbits.

    Returns (OrbitReport, representatives) with one lexicographically
    minimal member of the subset per orbit, sorted.  Orbits are computed
    fiberwise: the tau images are invariant, and within a fiber the orbit
    of (alpha, beta, gamma) is a coset of the subgroup of shifts obtained
    by folding the shift masks over the fiber's tau images.
    """
    if aut is None:
        aut = aut_orbifold()
    triple_basis = _xor_basis(shift_mask_triples(aut))
    fibers: dict = {}
    for code in codes:
        fibers.setdefault(code & ((1 << _TAU_BITS) - 1), []).append(code >> _TAU_BITS)
    representatives = []
    subset_size = 0
    for tau_code, heads in fibers.items():
        subset_size += len(heads)
        deltas = []
        for triple in triple_basis:
            d = (
                (_tau_fold(triple >> 14, tau_code) << 4)
                | (_tau_fold((triple >> 7) & 0x7F, tau_code) << 2)
                | _tau_fold(triple & 0x7F, tau_code)
            )
            deltas.append(d)
        basis = _xor_basis(deltas)
        classes: dict = {}
        for head in heads:
            key = _coset_minimum(head, basis)
            prev = classes.get(key)
            if prev is None or head < prev:
                classes[key] = head
        representatives.extend(
            (head << _TAU_BITS) | tau_code for head in classes.values()
        )
    representatives.sort()
    group_order = len(aut)
    report = OrbitReport(
        group_order=group_order,
        orbit_count=len(representatives),
        pigeonhole_bound=subset_size // (group_order * 4),
        subset_size=subset_size,
    )
    return report, representatives


def orbit_count(codes: Iterable[int], aut: Sequence[AffineIsometry] | None = None) -> OrbitReport:
    report, _ = orbit_partition(codes, aut)
    return report


def orbit_sizes(codes: Iterable[int], aut: Sequence[AffineIsometry] | None = None) -> dict:
    """Orbit representative -> number of subset members in that orbit."""
    if aut is None:
        aut = aut_orbifold()
    triple_basis = _xor_basis(shift_mask_triples(aut))
    fibers: dict = {}
    for code in codes:
        fibers.setdefault(code & ((1 << _TAU_BITS) - 1), []).append(code >> _TAU_BITS)
    sizes: dict = {}
    for tau_code, heads in fibers.items():
        deltas = [
            (
                (_tau_fold(triple >> 14, tau_code) << 4)
                | (_tau_fold((triple >> 7) & 0x7F, tau_code) << 2)
                | _tau_fold(triple & 0x7F, tau_code)
            )
            for triple in triple_basis
        ]
        basis = _xor_basis(deltas)
        classes: dict = {}
        counts: dict = {}
        for head in heads:
            key = _coset_minimum(head, basis)
            counts[key] = counts.get(key, 0) + 1
            prev = classes.get(key)
            if prev is None or head < prev:
                classes[key] = head
        for key, head in classes.items():
            sizes[(head << _TAU_BITS) | tau_code] = counts[key]
    return sizes
