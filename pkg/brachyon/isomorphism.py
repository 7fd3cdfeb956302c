# ABOUTME: Backtracking isomorphism search between finite structures given as Cayley tables
# ABOUTME: Powers group automorphisms, group isomorphism tests and brace isomorphisms

import logging
from collections import Counter
from typing import Hashable, Iterator, List, Optional, Sequence

import numpy as np

from .groups import (
    DEFAULT_SUBGROUP_CAP,
    FiniteGroup,
    OrderCapExceeded,
    right_closure_mask,
)
from .permutations import Permutation

logger = logging.getLogger(__name__)

DEFAULT_ISOMORPHISM_CAP = 128


def _generators_by_rarity(table: np.ndarray, profile: Sequence[Hashable]) -> List[int]:
    """Generators of the first operation, rarest profile classes first."""
    counts = Counter(profile)
    order = sorted(range(1, len(profile)), key=lambda a: (counts[profile[a]], a))
    gens: List[int] = []
    mask = right_closure_mask(table, gens)
    for a in order:
        if mask.all():
            break
        if not mask[a]:
            gens.append(a)
            mask = right_closure_mask(table, gens)
    return gens


def structure_isomorphisms(
    ops1: Sequence[np.ndarray],
    ops2: Sequence[np.ndarray],
    profile1: Sequence[Hashable],
    profile2: Sequence[Hashable],
) -> Iterator[Permutation]:
    """
    Yield every bijection fixing 0 that carries each table of ops1 onto the matching one of ops2.

    The first table must be a group table; the search picks images for a generating set of it,
    propagates through right multiplication in all tables and prunes by the profiles, which must be
    isomorphism invariants of single elements. Results come in lexicographic order of generator images.
    """
    n = len(profile1)
    if n != len(profile2) or Counter(profile1) != Counter(profile2):
        return
    if n == 1:
        yield (0,)
        return

    gens = _generators_by_rarity(ops1[0], profile1)
    left = [op.tolist() for op in ops1]
    right = [op.tolist() for op in ops2]
    candidates = {g: [y for y in range(1, n) if profile2[y] == profile1[g]] for g in gens}

    def propagate(mapping: List[int], used: List[bool]) -> bool:
        while True:
            active = [g for g in gens if mapping[g] >= 0]
            queue = [e for e in range(n) if mapping[e] >= 0]
            before = len(active)
            while queue:
                e = queue.pop()
                me = mapping[e]
                for s in active:
                    ms = mapping[s]
                    for t1, t2 in zip(left, right):
                        x = t1[e][s]
                        y = t2[me][ms]
                        mx = mapping[x]
                        if mx < 0:
                            if used[y] or profile1[x] != profile2[y]:
                                return False
                            mapping[x] = y
                            used[y] = True
                            queue.append(x)
                        elif mx != y:
                            return False
            if len([g for g in gens if mapping[g] >= 0]) == before:
                return True

    def verify(mapping: List[int]) -> bool:
        phi = np.asarray(mapping, dtype=np.intp)
        return all(
            np.array_equal(phi[op1], op2[np.ix_(phi, phi)]) for op1, op2 in zip(ops1, ops2)
        )

    def search(mapping: List[int], used: List[bool]) -> Iterator[Permutation]:
        pending = [g for g in gens if mapping[g] < 0]
        if not pending:
            if all(m >= 0 for m in mapping) and verify(mapping):
                yield tuple(mapping)
            return
        g = pending[0]
        for y in candidates[g]:
            if used[y]:
                continue
            trial = list(mapping)
            trial_used = list(used)
            trial[g] = y
            trial_used[y] = True
            if propagate(trial, trial_used):
                yield from search(trial, trial_used)

    start = [-1] * n
    start_used = [False] * n
    start[0] = 0
    start_used[0] = True
    yield from search(start, start_used)


def group_profile(G: FiniteGroup) -> List[Hashable]:
    """Per-element invariant used for pruning: (element order, conjugacy class size)."""
    orders = G.element_orders.tolist()
    sizes = G.class_sizes.tolist()
    return [(orders[a], sizes[a]) for a in range(G.order)]


def automorphisms(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> List[Permutation]:
    """
    List Aut(G) as permutations of element indices, sorted (identity first).

    Raises:
        OrderCapExceeded: If |G| > cap
    """
    if G.order > cap:
        raise OrderCapExceeded(G.order, cap)
    profile = group_profile(G)
    result = sorted(structure_isomorphisms([G.table], [G.table], profile, profile))
    logger.debug(f"|Aut| = {len(result)} for a group of order {G.order}")
    return result


def are_isomorphic(
    G1: FiniteGroup, G2: FiniteGroup, cap: int = DEFAULT_ISOMORPHISM_CAP
) -> Optional[Permutation]:
    """
    Find one isomorphism G1 -> G2, or None.

    Raises:
        OrderCapExceeded: If the common order exceeds cap
    """
    if G1.order != G2.order:
        return None
    if G1.order > cap:
        raise OrderCapExceeded(G1.order, cap)
    if G1.is_abelian != G2.is_abelian or len(G1.center) != len(G2.center):
        return None
    p1 = group_profile(G1)
    p2 = group_profile(G2)
    return next(structure_isomorphisms([G1.table], [G2.table], p1, p2), None)
