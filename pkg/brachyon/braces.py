# ABOUTME: Skew left braces stored as a pair of Cayley tables sharing identity 0
# ABOUTME: Validation, λ/γ/Θ actions, socle, ideals, quotients, square-free elements and brace isomorphism

import logging
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .groups import (
    FiniteGroup,
    GroupAction,
    GroupError,
    OrderCapExceeded,
    SubgroupHandle,
    is_normal,
    is_subgroup,
    subgroup_from_elements,
)
from .isomorphism import DEFAULT_ISOMORPHISM_CAP, structure_isomorphisms
from .permutations import Permutation
from .products import SemidirectProduct, semidirect_product

logger = logging.getLogger(__name__)


class BraceError(ValueError):
    """Base class for invalid brace data."""


class StarInvalid(BraceError):
    pass


class DotInvalid(BraceError):
    pass


class AxiomFails(BraceError):
    def __init__(self, a: int, b: int, c: int):
        self.triple = (a, b, c)
        super().__init__(f"Skew brace axiom a·(b⋆c) = (a·b)⋆a^⋆⋆(a·c) fails at (a, b, c) = {self.triple}")


class NotAnIdeal(BraceError):
    pass


class NotALeftBrace(BraceError):
    pass


class SkewBrace:
    """
    A skew left brace (B, ⋆, ·) on indices 0..n-1.

    `star` and `dot` are validated groups; the axiom a·(b⋆c) = (a·b)⋆a^⋆⋆(a·c) is checked on
    construction. Derived tables are cached:
        lam[a, b] = λ_a(b) = a^⋆ ⋆ (a·b)
        gam[b, a] = γ_b(a) = ((b⁻¹·a⁻¹) ⋆ (b⁻¹)^⋆)⁻¹
    """

    def __init__(self, star: FiniteGroup, dot: FiniteGroup):
        if star.order != dot.order:
            raise BraceError(f"Star order {star.order} differs from dot order {dot.order}")
        self.star = star
        self.dot = dot
        self.order = star.order
        self._check_axiom()

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.order}, left={self.is_left})"

    def _check_axiom(self) -> None:
        S, D = self.star.table, self.dot.table
        sinv = self.star.inverses
        for a in range(self.order):
            lhs = D[a][S]
            rhs = S[S[D[a], sinv[a]][:, None], D[a][None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = (int(v) for v in bad[0])
                raise AxiomFails(a, b, c)

    @property
    def is_left(self) -> bool:
        """True when (B, ⋆) is abelian."""
        return self.star.is_abelian

    @cached_property
    def lam(self) -> np.ndarray:
        S, D = self.star.table, self.dot.table
        result = S[self.star.inverses[:, None], D]
        result.flags.writeable = False
        return result

    @cached_property
    def gam(self) -> np.ndarray:
        S, D = self.star.table, self.dot.table
        dinv = self.dot.inverses
        binv = dinv[:, None]
        x = D[binv, dinv[None, :]]
        result = dinv[S[x, self.star.inverses[binv]]]
        result.flags.writeable = False
        return result

    @cached_property
    def semidirect(self) -> SemidirectProduct:
        """G = (B,⋆) ⋊ (B,·) via λ, pairs (a, b) coded a·n + b."""
        return semidirect_product(self.star, self.dot, lambda_action(self))

    @cached_property
    def theta(self) -> GroupAction:
        return theta_action(self)

    def star_mul(self, a: int, b: int) -> int:
        return int(self.star.table[a, b])

    def dot_mul(self, a: int, b: int) -> int:
        return int(self.dot.table[a, b])

    def star_inv(self, a: int) -> int:
        return int(self.star.inverses[a])

    def dot_inv(self, a: int) -> int:
        return int(self.dot.inverses[a])


def brace_from_tables(star, dot) -> SkewBrace:
    """
    Validate two Cayley tables and the skew brace axiom.

    Raises:
        StarInvalid, DotInvalid: Wrapping the group validation error
        AxiomFails: Naming the first failing triple
    """
    try:
        star_group = star if isinstance(star, FiniteGroup) else FiniteGroup(star)
    except GroupError as exc:
        raise StarInvalid(f"Star table invalid: {exc}") from exc
    try:
        dot_group = dot if isinstance(dot, FiniteGroup) else FiniteGroup(dot)
    except GroupError as exc:
        raise DotInvalid(f"Dot table invalid: {exc}") from exc
    return SkewBrace(star_group, dot_group)


def two_sided_witness(B: SkewBrace) -> Optional[Tuple[int, int, int]]:
    """First (b, c, a) with (b⋆c)·a ≠ (b·a)⋆a^⋆⋆(c·a), or None for a two-sided brace."""
    S, D = B.star.table, B.dot.table
    sinv = B.star.inverses
    for a in range(B.order):
        lhs = D[S, a]
        rhs = S[S[D[:, a], sinv[a]][:, None], D[:, a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            b, c = (int(v) for v in bad[0])
            return (b, c, a)
    return None


def is_two_sided(B: SkewBrace) -> bool:
    return two_sided_witness(B) is None


def lambda_action(B: SkewBrace) -> GroupAction:
    """λ as an action of (B, ·) on B; each λ_a is checked to be a ⋆-automorphism."""
    S = B.star.table
    lam = B.lam
    for a in range(B.order):
        p = lam[a]
        if not np.array_equal(p[S], S[np.ix_(p, p)]):
            raise AssertionError(f"λ_{a} is not an automorphism of (B, ⋆)")
    return GroupAction(B.dot, lam)


def gamma_map(B: SkewBrace) -> np.ndarray:
    """Table gam[b, a] = γ_b(a); the anti-morphism γ_a∘γ_b = γ_{b·a} is asserted."""
    gam = B.gam
    for a in range(B.order):
        if not np.array_equal(gam[a][gam], gam[B.dot.table[:, a]]):
            raise AssertionError(f"γ_{a}∘γ_b ≠ γ_(b·{a}) for some b")
    return gam


def theta_action(B: SkewBrace) -> GroupAction:
    """Θ_(a,b)(c) = a ⋆ λ_b(c) ⋆ a^⋆ as an action of G = (B,⋆) ⋊ (B,·) on B."""
    G = B.semidirect
    a, b = G.components(np.arange(G.group.order))
    S = B.star.table
    inner = S[a[:, None], B.lam[b]]
    return GroupAction(G.group, S[inner, B.star.inverses[a][:, None]])


def socle_kernels(B: SkewBrace) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    Kernels of a ↦ (λ_a, γ_a^{-1}) and of a ↦ (λ_a, h_a) with h_a(b) = a⋆λ_a(b)⋆a^⋆.
    """
    idx = np.arange(B.order)
    S = B.star.table
    lam_trivial = (B.lam == idx).all(axis=1)
    gam_trivial = (B.gam == idx).all(axis=1)
    h = S[S[idx[:, None], B.lam], B.star.inverses[:, None]]
    h_trivial = (h == idx).all(axis=1)
    first = tuple(int(a) for a in np.flatnonzero(lam_trivial & gam_trivial))
    second = tuple(int(a) for a in np.flatnonzero(lam_trivial & h_trivial))
    return first, second


def socle(B: SkewBrace) -> SubgroupHandle:
    """
    Soc(B) = {a : λ_a = id and a is ⋆-central}, as a subgroup of (B, ⋆).

    Cross-checked against both kernel characterisations and the ideal property.
    """
    idx = np.arange(B.order)
    S = B.star.table
    mask = (B.lam == idx).all(axis=1) & (S == S.T).all(axis=0)
    elements = tuple(int(a) for a in np.flatnonzero(mask))
    for kernel in socle_kernels(B):
        if kernel != elements:
            raise AssertionError(f"Socle {elements} differs from kernel {kernel}")
    if not is_ideal(B, elements):
        raise AssertionError("Socle is not an ideal")
    return SubgroupHandle(B.star, elements)


def _lambda_invariant(B: SkewBrace, elements: Sequence[int]) -> bool:
    mask = np.zeros(B.order, dtype=bool)
    mask[list(elements)] = True
    return bool(mask[B.lam[:, list(elements)]].all())


def is_left_ideal(B: SkewBrace, subset: Iterable[int]) -> bool:
    """⋆-subgroup stable under every λ_b."""
    els = sorted(set(int(x) for x in subset))
    return is_subgroup(B.star, els) and _lambda_invariant(B, els)


def is_ideal(B: SkewBrace, subset: Iterable[int]) -> bool:
    """Left ideal that is normal in both (B, ⋆) and (B, ·)."""
    els = sorted(set(int(x) for x in subset))
    if not is_left_ideal(B, els) or not is_subgroup(B.dot, els):
        return False
    return is_normal(B.star, SubgroupHandle(B.star, tuple(els))) and is_normal(
        B.dot, SubgroupHandle(B.dot, tuple(els))
    )


def quotient_brace(B: SkewBrace, ideal: Iterable[int]) -> SkewBrace:
    """
    B/I on ⋆-cosets, each represented by its minimal element.

    Raises:
        NotAnIdeal: If the subset is not an ideal
    """
    els = sorted(set(int(x) for x in ideal))
    if not is_ideal(B, els):
        raise NotAnIdeal(f"{els} is not an ideal")
    members = np.asarray(els, dtype=np.intp)
    rep_of = B.star.table[:, members].min(axis=1)
    reps = np.unique(rep_of)
    position = np.searchsorted(reps, rep_of)
    star = position[B.star.table[np.ix_(reps, reps)]]
    dot = position[B.dot.table[np.ix_(reps, reps)]]
    return brace_from_tables(star, dot)


def trivial_brace(G: FiniteGroup) -> SkewBrace:
    """g ⋆ h := g · h."""
    return SkewBrace(G, G)


def opposite_brace_construction(G: FiniteGroup) -> SkewBrace:
    """g ⋆ h := h · g, with dot the original product."""
    return brace_from_tables(G.table.T, G)


def square_free_elements(B: SkewBrace) -> List[int]:
    """Elements with λ_a(a) = a."""
    return [int(a) for a in np.flatnonzero(np.diagonal(B.lam) == np.arange(B.order))]


def brace_profile(B: SkewBrace) -> List[Tuple[int, int, int]]:
    """Per-element invariant: (⋆-order, ·-order, fixed points of λ_a)."""
    star_orders = B.star.element_orders.tolist()
    dot_orders = B.dot.element_orders.tolist()
    fixed = (B.lam == np.arange(B.order)).sum(axis=1).tolist()
    return [(star_orders[a], dot_orders[a], fixed[a]) for a in range(B.order)]


def brace_isomorphisms(
    B1: SkewBrace, B2: SkewBrace, cap: int = DEFAULT_ISOMORPHISM_CAP
) -> Iterator[Permutation]:
    """Every bijection preserving both ⋆ and ·."""
    if B1.order != B2.order:
        return iter(())
    if B1.order > cap:
        raise OrderCapExceeded(B1.order, cap, what="brace")
    if B1.star.is_abelian != B2.star.is_abelian or B1.dot.is_abelian != B2.dot.is_abelian:
        return iter(())
    return structure_isomorphisms(
        [B1.dot.table, B1.star.table],
        [B2.dot.table, B2.star.table],
        brace_profile(B1),
        brace_profile(B2),
    )


def brace_isomorphism(
    B1: SkewBrace, B2: SkewBrace, cap: int = DEFAULT_ISOMORPHISM_CAP
) -> Optional[Permutation]:
    """One bijection preserving both ⋆ and ·, or None."""
    return next(brace_isomorphisms(B1, B2, cap), None)


def brace_automorphisms(B: SkewBrace, cap: int = DEFAULT_ISOMORPHISM_CAP) -> List[Permutation]:
    return sorted(brace_isomorphisms(B, B, cap))


def dedupe_braces(braces: Sequence[SkewBrace], cap: int = DEFAULT_ISOMORPHISM_CAP) -> List[SkewBrace]:
    """Keep the first brace of each isomorphism class, in input order."""
    kept: List[SkewBrace] = []
    for B in braces:
        if not any(brace_isomorphism(B, K, cap=cap) is not None for K in kept):
            kept.append(B)
    return kept


def subbrace_of(B: SkewBrace, elements: Iterable[int]) -> SubgroupHandle:
    """Handle of a subset that is a subgroup of both operations, taken in (B, ⋆)."""
    handle = subgroup_from_elements(B.star, elements)
    if not is_subgroup(B.dot, handle.elements):
        raise BraceError(f"{list(handle.elements)} is not closed under ·")
    return handle
