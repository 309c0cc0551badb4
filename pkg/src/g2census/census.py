"""Census of holonomy assignments on the ten deck-group generators.

An assignment sends each of alpha, beta, gamma, tau_1..tau_7 to an
element of the Klein four-group

    {I, a, b, c},  a = diag(1,-1,-1), b = diag(-1,1,-1), c = diag(-1,-1,1)

inside SO(3), encoded as 2-bit values 0..3 with XOR as the group law.

An assignment is irreducible when the adjoint action on so(3) has no
common fixed vector, and rigid when the action on R^7 (x) so(3) built
from the generators' diagonal linear parts has none.  Because every
matrix involved is diagonal, both conditions reduce to sign bookkeeping:
the production path below ORs precomputed 24-bit masks (21 bits for the
(coordinate, axis) grid, 3 for the axes alone) over the ten generators.
The full enumeration of 4^10 assignments walks the two 4^5 halves of the
tuple in lexicographic order, so reports are byte-stable.

Two census modes exist.  Free mode treats the ten generator images as
independent.  Relation-constrained mode additionally demands that every
machine-derived deck-group relation maps to the identity, which (the
target being abelian and 2-torsion) pins prod rho(tau_i) over the odd
support of each relation vector.  The two modes disagree; the reports
carry both sets of counts side by side.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .orbifold import RelationTable

ELEMENT_NAMES = ("I", "a", "b", "c")
GENERATOR_COUNT = 10
SPACE_SIZE = 4**GENERATOR_COUNT

# diagonal linear parts of the generators acting on R^7
LINEAR_SIGNS = {
    "alpha": (1, 1, 1, -1, -1, -1, -1),
    "beta": (1, -1, -1, 1, 1, -1, -1),
    "gamma": (-1, 1, -1, 1, -1, 1, -1),
}
_SLOT_SIGNS = [
    LINEAR_SIGNS["alpha"],
    LINEAR_SIGNS["beta"],
    LINEAR_SIGNS["gamma"],
] + [(1,) * 7] * 7


def mul(t1: int, t2: int) -> int:
    """Group law of {I, a, b, c}: componentwise XOR of the 2-bit codes."""
    return t1 ^ t2


def element_name(t: int) -> str:
    return ELEMENT_NAMES[t]


def element_code(name: str) -> int:
    return ELEMENT_NAMES.index(name)


def ad_signs(t: int) -> tuple:
    """Character signs of Ad(t) on the so(3) basis (L_a, L_b, L_c).

    Conjugating the rotation generator about axis m by diag(e1, e2, e3)
    scales it by e_j e_k, so the sign is +1 exactly when t is I or the
    axis element itself.
    """
    if not 0 <= t <= 3:
        raise ValueError(f"element code out of range: {t}")
    return tuple(1 if t in (0, m) else -1 for m in (1, 2, 3))


class Assignment(NamedTuple):
    """Images of (alpha, beta, gamma, tau_1..tau_7) as 2-bit codes."""

    alpha: int
    beta: int
    gamma: int
    taus: tuple

    @classmethod
    def of(cls, alpha=0, beta=0, gamma=0, taus=(0,) * 7) -> "Assignment":
        taus = tuple(taus)
        if len(taus) != 7:
            raise ValueError("need 7 tau images")
        for v in (alpha, beta, gamma) + taus:
            if not 0 <= v <= 3:
                raise ValueError(f"element code out of range: {v}")
        return cls(alpha, beta, gamma, taus)

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "Assignment":
        codes = [element_code(x) for x in letters]
        if len(codes) != 10:
            raise ValueError("need 10 letters")
        return cls.of(codes[0], codes[1], codes[2], tuple(codes[3:]))

    def letters(self) -> tuple:
        return tuple(element_name(v) for v in self.codes())

    def codes(self) -> tuple:
        return (self.alpha, self.beta, self.gamma) + self.taus

    def pack(self) -> int:
        code = 0
        for v in self.codes():
            code = (code << 2) | v
        return code

    @classmethod
    def unpack(cls, code: int) -> "Assignment":
        values = [(code >> (2 * (9 - k))) & 3 for k in range(10)]
        return cls.of(values[0], values[1], values[2], tuple(values[3:]))


def is_irreducible(rho: Assignment) -> bool:
    """No common fixed vector in so(3): every axis sees some sign -1."""
    return irreducible_fixed_dimension(rho) == 0


def irreducible_fixed_dimension(rho: Assignment) -> int:
    codes = rho.codes()
    return sum(
        1
        for m in range(3)
        if all(ad_signs(t)[m] == 1 for t in codes)
    )


def is_rigid(rho: Assignment) -> bool:
    """No common fixed vector in R^7 (x) so(3) under D_g (x) Ad(rho(g))."""
    return rigid_fixed_dimension(rho) == 0


def rigid_fixed_dimension(rho: Assignment) -> int:
    codes = rho.codes()
    dim = 0
    for i in range(7):
        for m in range(3):
            if all(
                _SLOT_SIGNS[k][i] * ad_signs(codes[k])[m] == 1 for k in range(10)
            ):
                dim += 1
    return dim


def is_flat_on_resolution(rho: Assignment) -> bool:
    """True when alpha, beta and gamma all map to the identity."""
    return rho.alpha == 0 and rho.beta == 0 and rho.gamma == 0


def satisfies_tau_condition(rho: Assignment) -> bool:
    """At least two of the tau images are different non-identity elements."""
    return len({t for t in rho.taus if t != 0}) >= 2


def relabel_axes(rho: Assignment, perm: tuple) -> Assignment:
    """Apply a permutation of the axis labels (a, b, c) to every image."""
    table = (0,) + tuple(perm)
    codes = [table[v] for v in rho.codes()]
    return Assignment.of(codes[0], codes[1], codes[2], tuple(codes[3:]))


@dataclass(frozen=True)
class CensusReport:
    mode: str
    total: int
    irreducible_and_rigid: int
    nonflat_irreducible_rigid: int
    seconds: float

    def __post_init__(self):
        if not (
            0
            <= self.nonflat_irreducible_rigid
            <= self.irreducible_and_rigid
            <= self.total
        ):
            raise ValueError("census counts violate the containment chain")


def closed_form_counts() -> tuple:
    """(irreducible&rigid, non-flat subcount) from the two closed formulas."""
    failures = 4**3 * (2**7 * 3 - 2)
    irr = 4**10 - failures
    nonflat = irr - 4**7 + (2**7 * 3 - 2)
    return irr, nonflat


# ---------------------------------------------------------------------------
# bit-parallel enumeration over the two 4^5 halves

_GRID_BITS = 21
_FULL_MASK = (1 << 24) - 1


def _slot_mask(slot: int, value: int) -> int:
    """24-bit kill mask of one generator image: grid pairs plus bare axes."""
    signs = _SLOT_SIGNS[slot]
    ad = ad_signs(value)
    mask = 0
    for i in range(7):
        for m in range(3):
            if signs[i] * ad[m] == -1:
                mask |= 1 << (3 * i + m)
    for m in range(3):
        if ad[m] == -1:
            mask |= 1 << (_GRID_BITS + m)
    return mask


def _half_tables(slots: list, relations: list) -> tuple:
    """Mask/value tables for all 4^len(slots) digit combinations.

    Returns (or_masks, tau_value_bits, relation_packs) where tau_value_bits
    has bit v-1 set for every non-identity tau image v in the half, and
    relation_packs holds the XOR of each relation's tau images, 2 bits per
    relation.
    """
    per_slot = [[_slot_mask(s, v) for v in range(4)] for s in slots]
    n = len(slots)
    masks = []
    values = []
    packs = []
    for combo in range(4**n):
        digits = [(combo >> (2 * (n - 1 - k))) & 3 for k in range(n)]
        m = 0
        for table, v in zip(per_slot, digits):
            m |= table[v]
        masks.append(m)
        vbits = 0
        for s, v in zip(slots, digits):
            if s >= 3 and v:
                vbits |= 1 << (v - 1)
        values.append(vbits)
        pack = 0
        for r, support in enumerate(relations):
            x = 0
            for s, v in zip(slots, digits):
                if s >= 3 and (s - 2) in support:
                    x ^= v
            pack |= x << (2 * r)
        packs.append(pack)
    return masks, values, packs


_HALF1_SLOTS = [0, 1, 2, 3, 4]  # alpha, beta, gamma, tau1, tau2
_HALF2_SLOTS = [5, 6, 7, 8, 9]  # tau3..tau7


def run_census(mode: str = "free", relations: RelationTable | None = None) -> CensusReport:
    """Classify every assignment; exact counts, lexicographic order.

    Free mode iterates all 4^10 tuples.  Relation-constrained mode needs a
    RelationTable and restricts to assignments whose tau images satisfy
    every odd-support relation parity.
    """
    if mode not in ("free", "constrained"):
        raise ValueError(f"unknown census mode {mode!r}")
    constraint_sets: list = []
    if mode == "constrained":
        if relations is None:
            raise ValueError("constrained mode requires a RelationTable")
        constraint_sets = relations.translation_constraints()
    start = time.perf_counter()
    a_masks, _, a_packs = _half_tables(_HALF1_SLOTS, constraint_sets)
    b_masks, _, b_packs = _half_tables(_HALF2_SLOTS, constraint_sets)
    full = _FULL_MASK
    total = 0
    irr = 0
    flat_irr = 0
    for i, a in enumerate(a_masks):
        if mode == "free":
            count = sum(1 for b in b_masks if (a | b) == full)
            row_total = len(b_masks)
        else:
            ra = a_packs[i]
            count = sum(
                1 for b, rb in zip(b_masks, b_packs) if rb == ra and (a | b) == full
            )
            row_total = sum(1 for rb in b_packs if rb == ra)
        total += row_total
        irr += count
        if i < 16:  # alpha = beta = gamma = I
            flat_irr += count
    seconds = time.perf_counter() - start
    return CensusReport(
        mode=mode,
        total=total,
        irreducible_and_rigid=irr,
        nonflat_irreducible_rigid=irr - flat_irr,
        seconds=seconds,
    )


def tau_condition_mismatches() -> int:
    """Assignments where irreducible&rigid disagrees with the tau condition.

    Both predicates are evaluated independently for all 4^10 assignments;
    the expected result is zero.
    """
    a_masks, a_values, _ = _half_tables(_HALF1_SLOTS, [])
    b_masks, b_values, _ = _half_tables(_HALF2_SLOTS, [])
    popcount = [bin(x).count("1") for x in range(8)]
    full = _FULL_MASK
    mismatches = 0
    for a, va in zip(a_masks, a_values):
        for b, vb in zip(b_masks, b_values):
            criterion = (a | b) == full
            condition = popcount[va | vb] >= 2
            if criterion != condition:
                mismatches += 1
    return mismatches


def iter_nonflat_irreducible_rigid() -> Iterator[int]:
    """Packed codes of the free-mode non-flat irreducible&rigid assignments."""
    a_masks, _, _ = _half_tables(_HALF1_SLOTS, [])
    b_masks, _, _ = _half_tables(_HALF2_SLOTS, [])
    full = _FULL_MASK
    for i, a in enumerate(a_masks):
        if i < 16:
            continue  # flat rows
        base = i << 10
        for j, b in enumerate(b_masks):
            if (a | b) == full:
                yield base | j
