"""Census tests.

The oracle here builds the actual SO(3) matrices, conjugates the so(3)
basis to get adjoint matrices, forms the Kronecker products with the
generator linear parts, and measures fixed subspaces as integer matrix
kernels; nothing in it assumes diagonality or uses the sign-grid path.
"""

import itertools
import random

import pytest

from g2census import census
from g2census import orbifold as ob
from g2census.census import Assignment

rng = random.Random(31337)

# so(3) basis: rotation generators about the three axes
L_BASIS = (
    ((0, 0, 0), (0, 0, -1), (0, 1, 0)),
    ((0, 0, 1), (0, 0, 0), (-1, 0, 0)),
    ((0, -1, 0), (1, 0, 0), (0, 0, 0)),
)
SO3_IMAGES = {
    0: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    1: ((1, 0, 0), (0, -1, 0), (0, 0, -1)),
    2: ((-1, 0, 0), (0, 1, 0), (0, 0, -1)),
    3: ((-1, 0, 0), (0, -1, 0), (0, 0, 1)),
}
GENERATOR_SIGNS = [
    (1, 1, 1, -1, -1, -1, -1),
    (1, -1, -1, 1, 1, -1, -1),
    (-1, 1, -1, 1, -1, 1, -1),
] + [(1,) * 7] * 7


def _matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _transpose(a):
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


def adjoint_matrix(t):
    """Ad of the SO(3) image on the L basis, by explicit conjugation."""
    r = SO3_IMAGES[t]
    cols = []
    for m in range(3):
        conj = _matmul(_matmul(r, L_BASIS[m]), _transpose(r))
        cols.append((conj[2][1], conj[0][2], conj[1][0]))
    return _transpose(cols)


def int_rank(rows):
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f1, f2 = lead[col], rows[i][col]
                rows[i] = [f1 * x - f2 * y for x, y in zip(rows[i], lead)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def oracle_irreducible_dim(codes):
    rows = set()
    for t in codes:
        ad = adjoint_matrix(t)
        for r in range(3):
            row = tuple(ad[r][c] - (1 if r == c else 0) for c in range(3))
            rows.add(row)
    return 3 - int_rank(rows)


def _kron_minus_identity(slot, value):
    signs = GENERATOR_SIGNS[slot]
    ad = adjoint_matrix(value)
    rows = set()
    for i in range(7):
        for m in range(3):
            row = [0] * 21
            for j in range(7):
                for n in range(3):
                    entry = (signs[i] if i == j else 0) * ad[m][n]
                    if (i, m) == (j, n):
                        entry -= 1
                    row[3 * j + n] = entry
            rows.add(tuple(row))
    return rows


_KRON_CACHE = {
    (slot, value): frozenset(_kron_minus_identity(slot, value))
    for slot in range(10)
    for value in range(4)
}


def oracle_rigid_dim(codes):
    rows = set()
    for slot, value in enumerate(codes):
        rows |= _KRON_CACHE[(slot, value)]
    return 21 - int_rank(rows)


def random_assignment():
    codes = [rng.randrange(4) for _ in range(10)]
    return Assignment.of(codes[0], codes[1], codes[2], tuple(codes[3:]))


# --- the adjoint sign table --------------------------------------------------


def test_ad_signs_match_matrix_oracle():
    for t in range(4):
        ad = adjoint_matrix(t)
        assert all(ad[r][c] == 0 for r in range(3) for c in range(3) if r != c)
        assert tuple(ad[m][m] for m in range(3)) == census.ad_signs(t)


def test_ad_signs_examples():
    assert census.ad_signs(0) == (1, 1, 1)
    assert census.ad_signs(1) == (1, -1, -1)
    assert census.ad_signs(2) == (-1, 1, -1)
    assert census.ad_signs(3) == (-1, -1, 1)


def test_klein_group_law():
    for t1 in range(4):
        for t2 in range(4):
            m1, m2 = SO3_IMAGES[t1], SO3_IMAGES[t2]
            product = _matmul(m1, m2)
            assert product == SO3_IMAGES[census.mul(t1, t2)]


# --- predicates ---------------------------------------------------------------


def test_is_irreducible_examples():
    assert not census.is_irreducible(Assignment.of())
    assert census.is_irreducible(Assignment.of(taus=(1, 2, 0, 0, 0, 0, 0)))
    only_ia = Assignment.of(alpha=1, beta=1, taus=(1, 0, 1, 0, 0, 0, 0))
    assert not census.is_irreducible(only_ia)


def test_is_rigid_examples():
    assert census.is_rigid(Assignment.of(taus=(1, 2, 0, 0, 0, 0, 0)))
    abc = Assignment.of(alpha=1, beta=2, gamma=3)
    assert not census.is_rigid(abc)


def test_all_identity_assignment_is_rigid_but_reducible():
    # No coordinate is fixed by all three diagonal linear parts, so the
    # action on R^7 (x) so(3) has zero fixed vectors even for the trivial
    # image; reducibility alone excludes this assignment from the census.
    trivial = Assignment.of()
    assert oracle_rigid_dim(trivial.codes()) == 0
    assert census.is_rigid(trivial)
    assert oracle_irreducible_dim(trivial.codes()) == 3
    assert not census.is_irreducible(trivial)


def test_is_flat_on_resolution():
    assert census.is_flat_on_resolution(Assignment.of())
    assert census.is_flat_on_resolution(Assignment.of(taus=(1, 2, 3, 0, 1, 2, 3)))
    assert not census.is_flat_on_resolution(Assignment.of(alpha=1))


def test_kernel_oracle_equivalence_on_10000_assignments():
    for _ in range(10_000):
        rho = random_assignment()
        codes = rho.codes()
        irr_dim = census.irreducible_fixed_dimension(rho)
        rig_dim = census.rigid_fixed_dimension(rho)
        assert irr_dim >= 0 and rig_dim >= 0
        assert oracle_irreducible_dim(codes) == irr_dim
        assert oracle_rigid_dim(codes) == rig_dim


# --- the census ---------------------------------------------------------------


def test_census_free_mode_counts():
    report = census.run_census("free")
    assert report.total == 4**10 == 1048576
    assert report.irreducible_and_rigid == 1024128
    assert report.nonflat_irreducible_rigid == 1008126


def test_closed_form_cross_check():
    irr, nonflat = census.closed_form_counts()
    assert irr == 4**10 - 4**3 * (2**7 * 3 - 2) == 1024128
    assert nonflat == irr - 4**7 + (2**7 * 3 - 2) == 1008126
    report = census.run_census("free")
    assert (report.irreducible_and_rigid, report.nonflat_irreducible_rigid) == (irr, nonflat)


def test_tau_condition_matches_criterion_everywhere():
    assert census.tau_condition_mismatches() == 0


def test_constrained_mode_requires_relations():
    with pytest.raises(ValueError):
        census.run_census("constrained")


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        census.run_census("exhaustive")


def test_constrained_counts_against_direct_enumeration():
    table = ob.relation_table()
    constraints = table.translation_constraints()

    def constraints_hold(taus):
        return all(
            not _xor_over(taus, support) for support in constraints
        )

    def _xor_over(taus, support):
        x = 0
        for i in support:
            x ^= taus[i - 1]
        return x

    total = irr = nonflat = 0
    for codes in itertools.product(range(4), repeat=10):
        taus = codes[3:]
        if not constraints_hold(taus):
            continue
        # the constraint sets pin tau5, tau6, tau7 to the identity
        assert taus[4] == taus[5] == taus[6] == 0
        rho = Assignment.of(codes[0], codes[1], codes[2], taus)
        total += 1
        if census.is_irreducible(rho) and census.is_rigid(rho):
            irr += 1
            if not census.is_flat_on_resolution(rho):
                nonflat += 1
    report = census.run_census("constrained", table)
    assert (report.total, report.irreducible_and_rigid, report.nonflat_irreducible_rigid) == (
        total,
        irr,
        nonflat,
    )


def test_constrained_counts_differ_from_free():
    free = census.run_census("free")
    constrained = census.run_census("constrained", ob.relation_table())
    assert constrained.total < free.total
    assert constrained.irreducible_and_rigid != free.irreducible_and_rigid


def test_relabeling_symmetry():
    perms = list(itertools.permutations((1, 2, 3)))
    for _ in range(500):
        rho = random_assignment()
        for perm in perms:
            relabeled = census.relabel_axes(rho, perm)
            assert census.is_irreducible(relabeled) == census.is_irreducible(rho)
            assert census.is_rigid(relabeled) == census.is_rigid(rho)
            assert census.is_flat_on_resolution(relabeled) == census.is_flat_on_resolution(rho)
            assert census.satisfies_tau_condition(relabeled) == census.satisfies_tau_condition(
                rho
            )


def test_report_invariant_validation():
    with pytest.raises(ValueError):
        census.CensusReport("free", 10, 12, 5, 0.0)
    with pytest.raises(ValueError):
        census.CensusReport("free", 10, 5, 7, 0.0)


def test_assignment_pack_roundtrip():
    for _ in range(200):
        rho = random_assignment()
        assert Assignment.unpack(rho.pack()) == rho
    assert Assignment.of().pack() == 0


def test_assignment_letters():
    rho = Assignment.from_letters("I a b c I I I a b c".split())
    assert rho.alpha == 0 and rho.beta == 1 and rho.gamma == 2
    assert rho.letters() == ("I", "a", "b", "c", "I", "I", "I", "a", "b", "c")


def test_subset_iterator_matches_report():
    report = census.run_census("free")
    codes = list(census.iter_nonflat_irreducible_rigid())
    assert len(codes) == report.nonflat_irreducible_rigid
    assert codes == sorted(codes)
    sample = rng.sample(codes, 50)
    for code in sample:
        rho = Assignment.unpack(code)
        assert census.is_irreducible(rho)
        assert census.is_rigid(rho)
        assert not census.is_flat_on_resolution(rho)
