# ABOUTME: Tests for braces.py module
# ABOUTME: Verifies the brace axiom, λ/γ/Θ identities, socles, ideals, quotients and brace isomorphism

from functools import lru_cache

import numpy as np
import pytest

from brachyon.brace_examples import cyclic_flip_brace, order21_brace, vendramin_brace
from brachyon.braces import (
    AxiomFails,
    BraceError,
    DotInvalid,
    NotAnIdeal,
    StarInvalid,
    brace_automorphisms,
    brace_from_tables,
    brace_isomorphism,
    dedupe_braces,
    gamma_map,
    is_ideal,
    is_left_ideal,
    is_two_sided,
    lambda_action,
    opposite_brace_construction,
    quotient_brace,
    socle,
    socle_kernels,
    square_free_elements,
    subbrace_of,
    theta_action,
    trivial_brace,
)
from brachyon.regular import enumerate_braces_on
from brachyon.standard import cyclic_group, named_group, symmetric_group

TRIPLES = 1200

NAMED = {
    "trivial-z2": lambda: trivial_brace(cyclic_group(2)),
    "trivial-s3": lambda: trivial_brace(symmetric_group(3)),
    "opposite-s3": lambda: opposite_brace_construction(symmetric_group(3)),
    "flip-2": lambda: cyclic_flip_brace(2),
    "flip-3": lambda: cyclic_flip_brace(3),
    "order21": order21_brace,
}
# Star group and the number of braces enumerated on it
ENUMERATED = [("z4", 2), ("v4", 2), ("z6", 2), ("s3", 4)]

CORPUS = (
    list(NAMED)
    + [f"{group}-{k}" for group, count in ENUMERATED for k in range(count)]
    + [pytest.param("vendramin", marks=pytest.mark.slow)]
)


@lru_cache(maxsize=None)
def _enumerated(group):
    return enumerate_braces_on(named_group(group))


def corpus_brace(name):
    """A named example, the vendramin brace, or `<group>-<k>` for the k-th brace enumerated on a group."""
    if name in NAMED:
        return NAMED[name]()
    if name == "vendramin":
        return vendramin_brace()
    group, k = name.rsplit("-", 1)
    return _enumerated(group)[int(k)]


def test_trivial_brace_has_trivial_lambda():
    """Test that λ is the identity on a trivial brace and the brace is two-sided."""
    B = trivial_brace(cyclic_group(4))
    assert np.array_equal(B.lam, np.tile(np.arange(4), (4, 1)))
    assert B.is_left
    assert is_two_sided(B)


def test_opposite_of_abelian_group_is_trivial():
    """Test that the opposite construction on an abelian group gives the trivial brace tables."""
    G = cyclic_group(5)
    B = opposite_brace_construction(G)
    assert np.array_equal(B.star.table, trivial_brace(G).star.table)


def test_opposite_of_s3_is_a_skew_brace():
    """Test that the opposite construction on S3 uses the transposed star table."""
    G = symmetric_group(3)
    B = opposite_brace_construction(G)
    assert np.array_equal(B.star.table, G.table.T)
    assert not B.is_left


def test_invalid_tables_are_wrapped():
    """Test that broken star or dot tables raise the brace-specific errors."""
    good = cyclic_group(2).table
    with pytest.raises(StarInvalid):
        brace_from_tables([[0, 1], [1, 1]], good)
    with pytest.raises(DotInvalid):
        brace_from_tables(good, [[1, 0], [0, 1]])
    with pytest.raises(BraceError, match="differs"):
        brace_from_tables(good, cyclic_group(3).table)


def test_axiom_failure_names_a_triple():
    """Test that Z4 star with a relabelled Z4 dot fails the axiom with a witness."""
    Z4 = cyclic_group(4).table
    phi = np.array([0, 2, 1, 3])
    dot = phi[Z4[np.ix_(phi, phi)]]
    with pytest.raises(AxiomFails) as excinfo:
        brace_from_tables(Z4, dot)
    assert all(0 <= v < 4 for v in excinfo.value.triple)


def test_cyclic_flip_brace_is_two_sided():
    """Test the order-4 cyclic flip brace: two-sided with a V4 star group."""
    B = cyclic_flip_brace(2)
    assert is_two_sided(B)
    assert B.is_left
    assert list(B.star.element_orders) == [1, 2, 2, 2]
    assert brace_isomorphism(B, trivial_brace(cyclic_group(4))) is None


def test_order21_brace_products():
    """Test (τ⋆τ)·σ = σ²⋆τ², the right-hand expression σ³⋆τ², and λ_τ(σ) = σ²."""
    B = order21_brace()
    sigma, tau = 3, 1
    tau2 = B.star_mul(tau, tau)
    assert B.dot_mul(tau2, sigma) == 8
    ts = B.dot_mul(tau, sigma)
    assert B.star_mul(B.star_mul(ts, B.star_inv(sigma)), ts) == 11
    assert B.lam[tau, sigma] == 6
    assert not is_two_sided(B)
    assert not B.is_left


@pytest.mark.parametrize("name", CORPUS)
def test_lambda_is_a_morphism_into_star_automorphisms(name):
    """Test λ_{a·b} = λ_a ∘ λ_b on random pairs and that λ builds a valid action."""
    B = corpus_brace(name)
    rng = np.random.default_rng(7)
    a, b = rng.integers(0, B.order, size=(2, TRIPLES))
    ab = B.dot.table[a, b]
    assert np.array_equal(B.lam[ab], np.take_along_axis(B.lam[a], B.lam[b], axis=1))
    assert lambda_action(B).degree == B.order


@pytest.mark.parametrize("name", CORPUS)
def test_gamma_is_an_anti_morphism_and_factorises_the_product(name):
    """Test γ_a∘γ_b = γ_{b·a} and a·b = λ_a(b)·γ_b(a) on random triples."""
    B = corpus_brace(name)
    gam = gamma_map(B)
    rng = np.random.default_rng(11)
    a, b, c = rng.integers(0, B.order, size=(3, TRIPLES))
    assert np.array_equal(gam[a, gam[b, c]], gam[B.dot.table[b, a], c])
    assert np.array_equal(B.dot.table[a, b], B.dot.table[B.lam[a, b], gam[b, a]])


@pytest.mark.parametrize("name", CORPUS)
def test_theta_is_an_action_of_the_semidirect_product(name):
    """Test Θ_{gh} = Θ_g ∘ Θ_h on random pairs of G = (B,⋆) ⋊ (B,·)."""
    B = corpus_brace(name)
    act = theta_action(B)
    G = B.semidirect.group
    rng = np.random.default_rng(13)
    g, h, x = rng.integers(0, G.order, size=3 * TRIPLES).reshape(3, TRIPLES)
    x = x % B.order
    assert np.array_equal(act.perm_of[G.table[g, h], x], act.perm_of[g, act.perm_of[h, x]])


@pytest.mark.parametrize("name", CORPUS)
def test_socle_matches_both_kernels_and_is_an_ideal(name):
    """Test that the socle equals both kernel characterisations."""
    B = corpus_brace(name)
    soc = socle(B)
    first, second = socle_kernels(B)
    assert soc.elements == first == second
    assert is_ideal(B, soc.elements)


def test_socle_examples():
    """Test that the socle of a trivial brace is the centre of its group."""
    assert socle(trivial_brace(cyclic_group(4))).order == 4
    assert socle(trivial_brace(symmetric_group(3))).elements == (0,)


@pytest.mark.slow
def test_vendramin_brace_has_trivial_socle():
    """Test that the order-64 brace has trivial socle."""
    assert socle(vendramin_brace()).elements == (0,)


def test_ideals_and_quotient():
    """Test ideals of the trivial S3 brace and the quotient by A3."""
    B = trivial_brace(symmetric_group(3))
    assert is_ideal(B, [0, 3, 4])
    assert is_left_ideal(B, [0, 1])
    assert not is_ideal(B, [0, 1])
    Q = quotient_brace(B, [0, 3, 4])
    assert Q.order == 2
    with pytest.raises(NotAnIdeal):
        quotient_brace(B, [0, 1])


def test_quotient_by_socle():
    """Test that B/Soc(B) has |B|/|Soc(B)| elements for the cyclic flip brace of order 6."""
    B = cyclic_flip_brace(3)
    soc = socle(B)
    assert quotient_brace(B, soc.elements).order == B.order // soc.order


def test_square_free_elements_of_trivial_brace():
    """Test that every element of a trivial brace satisfies λ_a(a) = a."""
    assert square_free_elements(trivial_brace(cyclic_group(3))) == [0, 1, 2]


def test_brace_isomorphism_and_automorphisms():
    """Test that a relabelled brace is isomorphic and that Aut of trivial Z3 has two elements."""
    B = cyclic_flip_brace(2)
    phi = np.array([0, 3, 2, 1])
    star = np.empty((4, 4), dtype=int)
    dot = np.empty((4, 4), dtype=int)
    star[np.ix_(phi, phi)] = phi[B.star.table]
    dot[np.ix_(phi, phi)] = phi[B.dot.table]
    relabelled = brace_from_tables(star, dot)
    iso = brace_isomorphism(B, relabelled)
    assert iso is not None
    assert len(brace_automorphisms(trivial_brace(cyclic_group(3)))) == 2


def test_dedupe_braces_keeps_first_of_each_class():
    """Test deduplication of braces by isomorphism."""
    a = trivial_brace(cyclic_group(4))
    b = trivial_brace(named_group("z4"))
    c = cyclic_flip_brace(2)
    assert dedupe_braces([a, b, c]) == [a, c]


def test_subbrace_requires_closure_under_both_operations():
    """Test sub-brace handles of the trivial S3 brace."""
    B = trivial_brace(symmetric_group(3))
    assert subbrace_of(B, [0, 3, 4]).order == 3
    with pytest.raises(ValueError):
        subbrace_of(B, [0, 1, 2])
