# ABOUTME: Tests for solutions.py module
# ABOUTME: Verifies YBE checks, predicates, g̃, permutation braces, retraction and solution isomorphism

from itertools import permutations

import numpy as np
import pytest

from brachyon.brace_examples import cyclic_flip_brace, order21_brace, vendramin_brace
from brachyon.braces import NotALeftBrace, brace_isomorphism, socle, trivial_brace
from brachyon.involutive import build_involutive, canonical_involutive_spec
from brachyon.permutations import compose, invert
from brachyon.solutions import (
    InvalidSolution,
    InvolutiveRequired,
    NondegenerateRequired,
    Solution,
    associated_solution,
    flip_solution,
    gtilde,
    gtilde_table,
    identity_solution,
    inverse_rows,
    is_involutive,
    is_irretractable,
    is_morphism,
    is_nondegenerate,
    is_square_free,
    multipermutation_level,
    permutation_brace,
    relabel_solution,
    retraction,
    retraction_classes,
    skew_associated_solution,
    solution_isomorphism,
    verify_ybe,
)
from brachyon.standard import cyclic_group


def z2_example():
    """f_x = (0 1)(2 3) and g_y = (0 3)(1 2) for every x, y."""
    return Solution([[1, 0, 3, 2]] * 4, [[3, 2, 1, 0]] * 4)


def test_flip_solution_predicates():
    """Test the flip map: involutive, non-degenerate, square-free."""
    S = flip_solution(3)
    assert is_nondegenerate(S)
    assert is_involutive(S)
    assert is_square_free(S)
    assert S.r(0, 2) == (2, 0)
    assert gtilde(S, 1) == (0, 1, 2)


def test_identity_solution_is_degenerate():
    """Test that r = id on two points is a degenerate solution."""
    S = identity_solution(2)
    assert not is_nondegenerate(S)
    with pytest.raises(NondegenerateRequired):
        gtilde_table(S)


def test_z2_example_solution():
    """Test the two-block example: non-degenerate, neither involutive nor square-free."""
    S = z2_example()
    assert S.f(0) == (1, 0, 3, 2)
    assert S.g(3) == (3, 2, 1, 0)
    assert is_nondegenerate(S)
    assert not is_involutive(S)
    assert not is_square_free(S)
    assert permutation_brace(S).brace.order == 2
    with pytest.raises(InvolutiveRequired):
        retraction(S)


def test_ybe_failure_reports_a_triple():
    """Test that non-commuting constant rows (0 1) and (1 2) violate the braid relation."""
    F = [[1, 0, 2]] * 3
    Gt = [[0, 2, 1]] * 3
    report = verify_ybe(np.array(F), np.array(Gt))
    assert not report
    assert report.equation in (1, 2, 3)
    assert len(report.counterexample) == 3
    with pytest.raises(InvalidSolution, match="Yang-Baxter"):
        Solution(F, Gt)


def test_non_bijective_map_is_rejected():
    """Test that r(x, y) = (0, 0) is rejected before the braid check."""
    with pytest.raises(InvalidSolution, match="bijection"):
        Solution([[0, 0], [0, 0]], [[0, 0], [0, 0]])


def test_bad_shapes_and_entries_are_rejected():
    """Test shape and range validation of component tables."""
    with pytest.raises(InvalidSolution, match="square"):
        Solution([[0, 1, 2]], [[0, 1, 2]])
    with pytest.raises(InvalidSolution, match="sizes"):
        Solution([[0, 1], [0, 1]], [[0]])
    with pytest.raises(InvalidSolution, match="range"):
        Solution([[0, 2], [0, 1]], [[0, 1], [0, 1]])


def test_associated_solution_of_trivial_brace_is_flip():
    """Test that r_B of a trivial brace is the flip map."""
    assert associated_solution(trivial_brace(cyclic_group(3))) == flip_solution(3)


def test_associated_solution_needs_abelian_star():
    """Test that the involutive construction refuses a non-left brace."""
    with pytest.raises(NotALeftBrace):
        associated_solution(order21_brace())


def test_cyclic_flip_associated_solution_retracts_twice():
    """Test retraction of r_B for the order-4 cyclic flip brace, whose socle is {0, 2}."""
    B = cyclic_flip_brace(2)
    S = associated_solution(B)
    assert is_involutive(S)
    assert retraction_classes(S) == (0, 1, 0, 1)
    assert retraction(S) == flip_solution(2)
    assert multipermutation_level(S) == 2
    assert not is_irretractable(S)


def test_permutation_brace_of_associated_solution_is_the_socle_quotient():
    """Test that 𝒢(B, r_B) has order |B| / |Soc(B)|."""
    for B in (cyclic_flip_brace(2), cyclic_flip_brace(3), trivial_brace(cyclic_group(4))):
        result = permutation_brace(associated_solution(B))
        assert result.brace.order == B.order // socle(B).order
        assert result.brace.is_left


def test_permutation_brace_of_flip_is_trivial():
    """Test that the flip map generates the one-element brace."""
    result = permutation_brace(flip_solution(4))
    assert result.brace.order == 1
    assert result.gen_of == (0, 0, 0, 0)
    assert brace_isomorphism(result.brace, trivial_brace(cyclic_group(1))) is not None


def test_skew_associated_solution_of_order21_brace():
    """Test that r(a, b) = (λ_a(b), γ_b(a)) is a non-involutive solution for a non-abelian star group."""
    S = skew_associated_solution(order21_brace())
    assert S.size == 21
    assert is_nondegenerate(S)
    assert not is_involutive(S)


def test_multipermutation_level_of_flip():
    """Test that flip has level 1 and a single point has level 0."""
    assert multipermutation_level(flip_solution(3)) == 1
    assert multipermutation_level(flip_solution(1)) == 0
    assert is_irretractable(flip_solution(1))
    assert retraction_classes(flip_solution(3)) == (0, 0, 0)


def test_relabelled_solution_is_isomorphic():
    """Test that a relabelled copy is found isomorphic via a genuine morphism."""
    S = associated_solution(cyclic_flip_brace(2))
    phi = [2, 0, 3, 1]
    T = relabel_solution(S, phi)
    assert is_morphism(S, T, phi)
    iso = solution_isomorphism(S, T)
    assert iso is not None
    assert is_morphism(S, T, iso)


def test_non_isomorphic_solutions():
    """Test that flip and the two-block example are not isomorphic."""
    assert solution_isomorphism(flip_solution(4), z2_example()) is None
    assert solution_isomorphism(flip_solution(2), flip_solution(3)) is None


def involutive_corpus():
    return [
        flip_solution(3),
        Solution([[1, 0], [1, 0]], [[1, 0], [1, 0]]),
        associated_solution(trivial_brace(cyclic_group(4))),
        associated_solution(cyclic_flip_brace(2)),
        associated_solution(cyclic_flip_brace(3)),
        build_involutive(canonical_involutive_spec(cyclic_flip_brace(2))).solution,
    ]


def test_gtilde_is_the_inverse_of_f_on_involutive_solutions():
    """Test that g̃_x = f_x^{-1} whenever r is involutive, and not on the two-block example."""
    for S in involutive_corpus():
        assert is_involutive(S)
        assert np.array_equal(gtilde_table(S), inverse_rows(S.F))
    S = z2_example()
    assert not np.array_equal(gtilde_table(S), inverse_rows(S.F))


@pytest.mark.parametrize(
    "solution",
    [z2_example, lambda: associated_solution(cyclic_flip_brace(2)), lambda: skew_associated_solution(order21_brace())],
    ids=["z2-example", "flip-2", "order21-skew"],
)
def test_gtilde_is_an_anti_morphism_on_the_permutation_brace(solution):
    """Test that the inverted second components agree with g̃ on generators and reverse products."""
    S = solution()
    result = permutation_brace(S)
    B = result.brace
    gt = [invert(second) for _, second in result.pair_of]
    table = gtilde_table(S)
    for x, k in enumerate(result.gen_of):
        assert gt[k] == tuple(int(v) for v in table[x])
    for i in range(B.order):
        for j in range(B.order):
            assert gt[int(B.dot.table[i, j])] == compose(gt[j], gt[i])


@pytest.mark.slow
def test_associated_solution_of_the_order_64_brace_is_irretractable():
    """Test that trivial socle makes every f_x distinct, so the retraction keeps all 64 points."""
    S = associated_solution(vendramin_brace())
    assert is_involutive(S)
    assert len(set(retraction_classes(S))) == 64
    assert is_irretractable(S)
    assert retraction(S) == S


@pytest.mark.parametrize(
    "solution, phi",
    [
        (z2_example, (3, 1, 0, 2)),
        (lambda: associated_solution(cyclic_flip_brace(2)), (2, 0, 3, 1)),
        (lambda: associated_solution(cyclic_flip_brace(3)), (4, 2, 5, 0, 1, 3)),
    ],
    ids=["z2-example", "flip-2", "flip-3"],
)
def test_solution_isomorphism_is_the_least_morphism(solution, phi):
    """Test that the search returns the lexicographically least isomorphism among all bijections."""
    S = solution()
    T = relabel_solution(S, phi)
    least = min(p for p in permutations(range(S.size)) if is_morphism(S, T, p))
    assert solution_isomorphism(S, T) == least
    assert solution_isomorphism(S, S) == tuple(range(S.size))
