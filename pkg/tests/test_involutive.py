# ABOUTME: Tests for involutive.py module
# ABOUTME: Verifies involutive specs, the involutive coset construction and irretractable solutions

import pytest

from brachyon.brace_examples import cyclic_flip_brace, order21_brace, vendramin_brace
from brachyon.braces import NotALeftBrace, brace_isomorphism, trivial_brace
from brachyon.constructor import SpecInvalid
from brachyon.involutive import (
    SocleNotTrivial,
    build_involutive,
    build_irretractable,
    canonical_involutive_spec,
    irretractable_spec,
    lambda_orbits,
    lambda_stabilizer,
    make_involutive_spec,
    validate_involutive_spec,
)
from brachyon.solutions import (
    is_involutive,
    is_irretractable,
    is_square_free,
    multipermutation_level,
    permutation_brace,
)
from brachyon.standard import cyclic_group


def test_lambda_orbits_of_cyclic_flip_brace():
    """Test λ-orbits and stabilizers of the order-4 cyclic flip brace, where λ_1 = λ_3 = (1 3)."""
    B = cyclic_flip_brace(2)
    assert lambda_orbits(B) == [(0,), (1, 3), (2,)]
    assert lambda_stabilizer(B, 1).elements == (0, 2)
    assert lambda_stabilizer(B, 2).order == 4


def test_two_point_solution_from_z2():
    """Test that B = Z/2 with K trivial gives r(x, y) = (y + 1, x + 1)."""
    B = trivial_brace(cyclic_group(2))
    built = build_involutive(make_involutive_spec(B, [1], [[[0]]]))
    S = built.solution
    assert S.F.tolist() == [[1, 0], [1, 0]]
    assert S.Gt.tolist() == [[1, 0], [1, 0]]
    assert is_involutive(S)
    assert built.eta == (1, 1)


def test_involutive_validation_failures():
    """Test generation, core, containment and orbit failures of involutive specs."""
    Z2 = trivial_brace(cyclic_group(2))
    report = validate_involutive_spec(make_involutive_spec(Z2, [0], [[[0]]]))
    assert (report.failure, report.witness) == ("GenerationFails", 1)
    report = validate_involutive_spec(make_involutive_spec(Z2, [1], [[[0, 1]]]))
    assert (report.failure, report.witness) == ("CoreFails", 1)

    B = cyclic_flip_brace(2)
    report = validate_involutive_spec(make_involutive_spec(B, [1], [[[0, 1, 2, 3]]]))
    assert (report.failure, report.witness) == ("ContainmentFails", (0, 0, 1))
    report = validate_involutive_spec(make_involutive_spec(B, [1, 3], [[[0]], [[0]]]))
    assert (report.failure, report.witness) == ("OrbitsNotDistinct", (0, 1))


def test_involutive_construction_needs_a_left_brace():
    """Test that a non-abelian star group is refused."""
    B = order21_brace()
    with pytest.raises(NotALeftBrace):
        validate_involutive_spec(make_involutive_spec(B, [1], [[[0]]]))
    with pytest.raises(NotALeftBrace):
        build_irretractable(B)


def test_invalid_involutive_spec_raises():
    """Test that building from an invalid spec raises SpecInvalid."""
    B = trivial_brace(cyclic_group(2))
    with pytest.raises(SpecInvalid):
        build_involutive(make_involutive_spec(B, [0], [[[0]]]))


def test_canonical_involutive_spec_of_cyclic_flip_brace():
    """Test that all λ-orbits with trivial subgroups give an involutive solution of size 12."""
    B = cyclic_flip_brace(2)
    spec = canonical_involutive_spec(B)
    assert spec.reps == (0, 1, 2)
    built = build_involutive(spec)
    assert built.solution.size == 12
    assert is_involutive(built.solution)
    assert [label[0] for label in built.labels] == [0] * 4 + [1] * 4 + [2] * 4


def test_irretractable_needs_trivial_socle():
    """Test that a brace with socle {0, 2} is refused."""
    with pytest.raises(SocleNotTrivial):
        build_irretractable(cyclic_flip_brace(2))


def test_irretractable_spec_uses_full_stabilizers():
    """Test that each block of the irretractable spec is the λ-stabilizer of its representative."""
    B = cyclic_flip_brace(2)
    spec = irretractable_spec(B, [1, 2])
    assert [fam[0].elements for fam in spec.families] == [(0, 2), (0, 1, 2, 3)]


@pytest.mark.slow
def test_order_64_brace_gives_size_eight_irretractable_solution():
    """Test the two orbits through 4 and 32 with full stabilizers: size 8, irretractable, square-free."""
    B = vendramin_brace()
    built = build_irretractable(B, [4, 32])
    S = built.solution
    assert S.size == 8
    assert is_involutive(S)
    assert is_irretractable(S)
    assert is_square_free(S)
    assert multipermutation_level(S) is None
    assert brace_isomorphism(permutation_brace(S).brace, B) is not None
