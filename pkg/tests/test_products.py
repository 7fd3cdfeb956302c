# ABOUTME: Tests for products.py module
# ABOUTME: Verifies semidirect and direct products, pair coding and holomorphs

import numpy as np
import pytest

from brachyon.groups import GroupAction, NotAutomorphismAction, OrderCapExceeded
from brachyon.isomorphism import are_isomorphic
from brachyon.products import direct_product, holomorph, semidirect_product
from brachyon.standard import cyclic_group, dihedral_group, elementary_abelian_group, symmetric_group


def test_direct_product_pair_coding():
    """Test that (a, b) is coded a·|H| + b with componentwise products."""
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.group.order == 6
    assert P.encode(1, 2) == 5
    assert P.decode(5) == (1, 2)
    assert P.decode(P.group.multiply(P.encode(1, 1), P.encode(1, 2))) == (0, 0)
    assert P.group.is_abelian


def test_semidirect_product_by_inversion_is_dihedral():
    """Test that Z3 ⋊ Z2 with the inversion action is S3."""
    Z3, Z2 = cyclic_group(3), cyclic_group(2)
    act = GroupAction(Z2, [[0, 1, 2], [0, 2, 1]])
    P = semidirect_product(Z3, Z2, act)
    assert not P.group.is_abelian
    assert are_isomorphic(P.group, symmetric_group(3)) is not None
    a, b = P.components(np.arange(6))
    assert list(a) == [0, 0, 1, 1, 2, 2]
    assert list(b) == [0, 1, 0, 1, 0, 1]


def test_semidirect_product_rejects_non_automorphisms():
    """Test that a permutation action which is not by automorphisms is rejected."""
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    act = GroupAction(Z2, [[0, 1, 2, 3], [0, 2, 1, 3]])
    with pytest.raises(NotAutomorphismAction):
        semidirect_product(Z4, Z2, act)


@pytest.mark.parametrize(
    "group, order",
    [(cyclic_group(3), 6), (elementary_abelian_group(2), 24), (cyclic_group(4), 8), (dihedral_group(4), 64)],
)
def test_holomorph_orders(group, order):
    """Test |Hol(A)| = |A|·|Aut(A)|."""
    hol = holomorph(group)
    assert hol.group.order == order
    assert hol.automorphisms[0] == tuple(range(group.order))


def test_holomorph_evaluation_is_an_action():
    """Test that Hol(V4) acts on V4 by v ⋆ M(w) and the action is transitive."""
    hol = holomorph(elementary_abelian_group(2))
    act = hol.evaluation_action()
    assert act.degree == 4
    assert sorted(set(act.perm_of[:, 0].tolist())) == [0, 1, 2, 3]
    h = hol.product.encode(3, 1)
    assert hol.evaluate(h, 0) == 3


def test_holomorph_order_cap():
    """Test that the holomorph refuses to materialize above the order cap."""
    with pytest.raises(OrderCapExceeded):
        holomorph(elementary_abelian_group(2), order_cap=16)
