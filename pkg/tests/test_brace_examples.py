# ABOUTME: Tests for brace_examples.py module
# ABOUTME: Verifies the named example braces, their codings and the order-64 brace orbit data

from itertools import product

import numpy as np
import pytest

from brachyon.brace_examples import (
    brace_names,
    cyclic_flip_brace,
    named_brace,
    order21_element,
    vector_code,
    vendramin_brace,
    vendramin_lambda,
)
from brachyon.braces import is_two_sided, square_free_elements
from brachyon.involutive import lambda_orbits, lambda_stabilizer
from brachyon.isomorphism import are_isomorphic
from brachyon.products import direct_product
from brachyon.standard import dihedral_group


def test_order21_coding():
    """Test that σ^a ⋆ τ^b is coded 3a + b with exponents reduced."""
    assert order21_element(0, 1) == 1
    assert order21_element(1, 0) == 3
    assert order21_element(9, 4) == order21_element(2, 1) == 7


def test_cyclic_flip_rejects_non_positive_n():
    """Test that the cyclic flip brace needs n ≥ 1."""
    with pytest.raises(ValueError):
        cyclic_flip_brace(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cyclic_flip_braces_are_two_sided(n):
    """Test the cyclic flip brace family is two-sided with a cyclic dot group."""
    B = cyclic_flip_brace(n)
    assert B.order == 2 * n
    assert is_two_sided(B)
    assert B.dot.element_orders.max() == 2 * n


def test_vector_code_is_little_endian():
    """Test that y1 is the lowest bit."""
    assert vector_code(1) == 1
    assert vector_code(0, 0, 1) == 4
    assert vector_code(0, 0, 0, 0, 0, 1) == 32


def test_vendramin_lambda_rows_are_linear():
    """Test that every λ_y is an XOR-automorphism of (Z/2)^6."""
    lam = vendramin_lambda()
    codes = np.arange(64)
    xor = codes[:, None] ^ codes[None, :]
    for y in range(64):
        assert np.array_equal(lam[y][xor], lam[y][:, None] ^ lam[y][None, :])


def _vendramin_orbit(z):
    """λ-orbit of z as codes: z3 and z6 never move, and the other coordinates free up along the triangular rows."""
    _, z2, z3, _, z5, z6 = z
    free = set()
    if z3:
        free |= {0, 1}
    elif z2:
        free.add(0)
    if z6:
        free |= {3, 4}
    elif z5:
        free.add(3)
    fixed = [k for k in range(6) if k not in free]
    return frozenset(vector_code(*w) for w in product((0, 1), repeat=6) if all(w[k] == z[k] for k in fixed))


@pytest.mark.slow
def test_vendramin_brace_orbits_and_stabilizers():
    """Test the full λ-orbit partition and the exact stabilizers of (0,0,1,0,0,0) and (0,0,0,0,0,1)."""
    B = vendramin_brace()
    assert B.is_left
    vectors = list(product((0, 1), repeat=6))
    expected = {_vendramin_orbit(z) for z in vectors}
    orbits = lambda_orbits(B)
    assert {frozenset(orb) for orb in orbits} == expected
    assert sum(len(orb) for orb in orbits) == 64
    by_min = {orb[0]: orb for orb in orbits}
    assert by_min[4] == (4, 5, 6, 7)
    assert by_min[32] == (32, 40, 48, 56)

    st4 = {vector_code(*y) for y in vectors if y[1] == 0 and (y[3] + y[4] + y[4] * y[5]) % 2 == 0}
    st32 = {vector_code(*y) for y in vectors if y[4] == 0 and (y[0] + y[1] + y[1] * y[2]) % 2 == 0}
    assert len(st4) == len(st32) == 16
    assert lambda_stabilizer(B, 4).elements == tuple(sorted(st4))
    assert lambda_stabilizer(B, 32).elements == tuple(sorted(st32))
    assert {4, 5, 6, 7, 32, 40, 48, 56} <= set(square_free_elements(B))


@pytest.mark.slow
def test_vendramin_dot_group_is_d4_squared():
    """Test that the multiplicative group is D4 × D4."""
    B = vendramin_brace()
    D4 = dihedral_group(4)
    assert are_isomorphic(B.dot, direct_product(D4, D4).group, cap=64) is not None


def test_named_brace_lookup():
    """Test named brace lookup and the error for unknown names."""
    assert brace_names() == ["trivial", "opposite", "cyclic-flip", "order21", "vendramin"]
    assert named_brace("trivial").order == 2
    assert named_brace("opposite").order == 6
    assert named_brace("order21").order == 21
    with pytest.raises(KeyError, match="Unknown brace"):
        named_brace("octonions")
