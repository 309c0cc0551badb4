"""Orbifold group tests: affine arithmetic, fixed tori, relations.

The affine oracle is pointwise: composed maps are compared by applying
them to sampled rational points, so the algebraic composition rule never
certifies itself.
"""

import random
from fractions import Fraction

import pytest

from g2census import forms
from g2census import orbifold as ob

rng = random.Random(555)


def random_point():
    return tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(7))


def random_affine(mode=ob.DECK):
    signs = tuple(rng.choice((-1, 1)) for _ in range(7))
    translation = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(7))
    return ob.AffineIsometry.from_diagonal(signs, translation, mode)


# --- composition oracle ----------------------------------------------------


def test_compose_matches_pointwise_application():
    for _ in range(50):
        f, g = random_affine(), random_affine()
        h = f.compose(g)
        for _ in range(3):
            x = random_point()
            assert h.apply(x) == f.apply(g.apply(x))


def test_inverse_roundtrip():
    for _ in range(50):
        f = random_affine()
        assert f.compose(f.inverse()).is_identity()
        assert f.inverse().compose(f).is_identity()


def test_commutator_definition():
    for _ in range(20):
        f, g = random_affine(), random_affine()
        direct = f.compose(g).compose(f.inverse()).compose(g.inverse())
        assert f.commutator(g) == direct


def test_torus_mode_reduces_translations():
    f = ob.AffineIsometry.from_diagonal((1,) * 7, (Fraction(5, 2),) + (0,) * 6, ob.TORUS)
    assert f.translation[0] == Fraction(1, 2)


# --- generators ------------------------------------------------------------


def test_generators_are_involutions_on_r7():
    for g in (ob.alpha(ob.DECK), ob.beta(ob.DECK), ob.gamma(ob.DECK)):
        assert g.compose(g).is_identity()


def test_compose_alpha_alpha_is_identity_on_torus():
    a = ob.alpha()
    assert a.compose(a).is_identity()


def test_commutator_alpha_beta_is_translation_on_coordinate_6():
    c = ob.alpha(ob.DECK).commutator(ob.beta(ob.DECK))
    vec = c.integer_translation()
    assert vec == (0, 0, 0, 0, 0, -1, 0)


def test_inverse_of_tau1():
    inv = ob.tau(1, ob.DECK).inverse()
    assert inv.integer_translation() == (-1, 0, 0, 0, 0, 0, 0)


def test_group_orders():
    assert len(ob.gamma_group()) == 8
    assert len(ob.generate_group([ob.alpha()])) == 2
    assert len(ob.generate_group([ob.AffineIsometry.identity()])) == 1


def test_generate_group_cap_guards_nontermination():
    with pytest.raises(ob.GroupClosureError):
        ob.generate_group([ob.tau(1, ob.DECK)], cap=50)


def test_every_gamma_element_preserves_phi():
    phi = forms.standard_phi()
    for g in ob.gamma_group():
        assert forms.pullback(g.linear.matrix(), phi) == phi


# --- fixed sets ------------------------------------------------------------


def test_fixed_set_alpha():
    tori = ob.fixed_set(ob.alpha())
    assert len(tori) == 16
    half = Fraction(1, 2)
    for t in tori:
        assert t.free_coords == frozenset({1, 2, 3})
        assert all(c in (4, 5, 6, 7) and v in (0, half) for c, v in t.pinned)


def test_fixed_set_beta():
    tori = ob.fixed_set(ob.beta())
    assert len(tori) == 16
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    for t in tori:
        assert t.free_coords == frozenset({1, 4, 5})
        pins = dict(t.pinned)
        assert pins[6] in (quarter, quarter + half)
        for c in (2, 3, 7):
            assert pins[c] in (0, half)


def test_fixed_set_gamma():
    tori = ob.fixed_set(ob.gamma())
    assert len(tori) == 16
    for t in tori:
        assert t.free_coords == frozenset({2, 4, 6})


def test_fixed_set_tau_is_empty_in_deck_mode():
    assert ob.fixed_set(ob.tau(1, ob.DECK)) == []


def test_fixed_set_rejects_non_diagonal():
    swap = ob.SignedPermutation((2, 1, 3, 4, 5, 6, 7), (1,) * 7)
    with pytest.raises(ValueError):
        ob.fixed_set(ob.AffineIsometry(swap, (0,) * 7, ob.TORUS))


def test_fixed_tori_points_are_genuinely_fixed():
    for g in (ob.alpha(), ob.beta(), ob.gamma()):
        for torus in ob.fixed_set(g):
            for _ in range(3):
                x = torus.sample_point(rng)
                assert g.apply(x) == x


# --- singular set ----------------------------------------------------------


def test_singular_components_full_group():
    assert ob.singular_components() == 12


def test_singular_components_alpha_only():
    assert ob.singular_components(ob.generate_group([ob.alpha()])) == 16


def test_singular_components_trivial_group():
    assert ob.singular_components({ob.AffineIsometry.identity()}) == 0


def test_singular_components_invariant_under_translation_conjugation():
    for _ in range(5):
        shift = ob.AffineIsometry.from_diagonal(
            (1,) * 7,
            tuple(Fraction(rng.randint(0, 7), 8) for _ in range(7)),
            ob.TORUS,
        )
        conjugated = [
            shift.compose(g).compose(shift.inverse())
            for g in (ob.alpha(), ob.beta(), ob.gamma())
        ]
        group = ob.generate_group(conjugated, cap=64)
        assert len(group) == 8
        assert ob.singular_components(group) == 12


# --- relations -------------------------------------------------------------


def test_relation_table_squares_are_zero_translations():
    table = ob.relation_table()
    for name in ("alpha", "beta", "gamma"):
        assert table.square(name) == (0,) * 7
    for i in range(1, 8):
        expected = tuple(2 if j == i else 0 for j in range(1, 8))
        assert table.square(f"tau{i}") == expected


def test_relation_table_commutators_are_integer_translations():
    table = ob.relation_table()
    assert table.commutator_vector("alpha", "beta") == (0, 0, 0, 0, 0, -1, 0)
    assert table.commutator_vector("alpha", "gamma") == (0, 0, 0, 0, -1, 0, -1)
    assert table.commutator_vector("beta", "gamma") == (0, 0, 0, 0, 0, 0, -1)
    for (_, _), vec in table.commutators:
        assert all(isinstance(x, int) for x in vec)


def test_tau_conjugates():
    table = ob.relation_table()
    assert table.tau_conjugate("alpha", 4) == -1
    assert table.tau_conjugate("alpha", 1) == 1
    assert table.tau_conjugate("beta", 6) == -1
    assert table.tau_conjugate("gamma", 2) == 1


def test_parity_constraints_pin_tau_5_6_7():
    constraints = ob.relation_table().translation_constraints()
    assert constraints == [frozenset({5, 7}), frozenset({6}), frozenset({7})]


def test_integer_translation_rejects_non_translation():
    with pytest.raises(ob.RelationError):
        ob.alpha(ob.DECK).integer_translation()
    with pytest.raises(ob.RelationError):
        ob.beta(ob.DECK).compose(ob.tau(6, ob.DECK)).integer_translation()
