# ABOUTME: Correspondence between skew braces with star group A and regular subgroups of Hol(A)
# ABOUTME: Regular-subgroup search, Aut(A)-conjugacy classes and brace enumeration on a given group

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .braces import BraceError, SkewBrace, brace_from_tables, brace_isomorphism
from .groups import (
    FiniteGroup,
    OrderCapExceeded,
    SubgroupHandle,
    right_closure_mask,
    subgroup_from_elements,
)
from .products import DEFAULT_HOLOMORPH_CAP, Holomorph, holomorph

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 16


class NotRegular(BraceError):
    pass


def _first_coordinates(hol: Holomorph, elements: Sequence[int]) -> np.ndarray:
    v, _ = hol.product.components(np.asarray(elements, dtype=np.intp))
    return v


def _check_regular(hol: Holomorph, H: SubgroupHandle) -> np.ndarray:
    """Return code_of[a] = the element of H with first coordinate a; raise NotRegular otherwise."""
    n = hol.base.order
    if H.order != n:
        raise NotRegular(f"Subgroup of order {H.order} cannot act regularly on {n} points")
    firsts = _first_coordinates(hol, H.elements)
    if np.unique(firsts).size != n:
        raise NotRegular("The first projection is not injective on the subgroup")
    evaluation = hol.evaluation_action().perm_of[H.array]
    hits = (evaluation == 0).sum(axis=0)
    if not (hits == 1).all():
        w = int(np.flatnonzero(hits != 1)[0])
        raise NotRegular(f"Point {w} is sent to the identity by {int(hits[w])} subgroup elements")
    code_of = np.empty(n, dtype=np.intp)
    code_of[firsts] = H.array
    return code_of


def brace_from_regular_subgroup(hol: Holomorph, H: SubgroupHandle) -> SkewBrace:
    """
    Brace on A = hol.base with a·b := a ⋆ M_a(b), where (a, M_a) is the element of H over a.

    Raises:
        NotRegular: If H does not act regularly on A
    """
    code_of = _check_regular(hol, H)
    A = hol.base
    _, aut_index = hol.product.components(code_of)
    auts = np.asarray(hol.automorphisms, dtype=np.intp)
    idx = np.arange(A.order)
    dot = A.table[idx[:, None], auts[aut_index]]
    brace = brace_from_tables(A, dot)
    if not np.array_equal(hol.group.table[np.ix_(code_of, code_of)], code_of[brace.dot.table]):
        raise AssertionError("a ↦ (a, M_a) is not a homomorphism from (B, ·) onto H")
    return brace


def lambda_subgroup(hol: Holomorph, B: SkewBrace) -> SubgroupHandle:
    """The regular subgroup {(a, λ_a)} of Hol(B, ⋆)."""
    if not np.array_equal(hol.base.table, B.star.table):
        raise BraceError("Holomorph base differs from the star group of the brace")
    index: Dict[Tuple[int, ...], int] = {p: k for k, p in enumerate(hol.automorphisms)}
    codes = [hol.product.encode(a, index[tuple(int(v) for v in B.lam[a])]) for a in range(B.order)]
    return subgroup_from_elements(hol.group, codes)


def _cyclic_injective(hol: Holomorph) -> np.ndarray:
    """good[h]: the first projection is injective on ⟨h⟩."""
    G = hol.group
    m = len(hol.automorphisms)
    size = G.order
    good = np.ones(size, dtype=bool)
    orders = G.element_orders
    current = np.arange(size)
    seen_first = [{int(h) // m} for h in range(size)]
    for step in range(2, int(orders.max()) + 1):
        current = G.table[current, np.arange(size)]
        firsts = current // m
        for h in np.flatnonzero(good & (orders >= step)):
            f = int(firsts[h])
            if f in seen_first[h]:
                good[h] = False
            else:
                seen_first[h].add(f)
    return good


def regular_subgroups(hol: Holomorph) -> List[SubgroupHandle]:
    """
    Every regular subgroup of Hol(A), sorted by element tuple.

    Grows π1-injective subgroups by adjoining, for the smallest uncovered a ∈ A, one element (a, M);
    every regular subgroup is reached along exactly one choice sequence.
    """
    n = hol.base.order
    m = len(hol.automorphisms)
    table = hol.group.table
    good = _cyclic_injective(hol)
    found: Dict[Tuple[int, ...], None] = {}

    def extend(gens: List[int], mask: np.ndarray) -> None:
        firsts = np.flatnonzero(mask) // m
        covered = np.zeros(n, dtype=bool)
        covered[firsts] = True
        a = int(np.flatnonzero(~covered)[0])
        for k in range(m):
            h = a * m + k
            if not good[h]:
                continue
            closure = right_closure_mask(table, gens + [h])
            members = np.flatnonzero(closure)
            if members.size > n:
                continue
            if np.unique(members // m).size != members.size:
                continue
            if members.size == n:
                found[tuple(int(x) for x in members)] = None
            else:
                extend(gens + [h], closure)

    if n == 1:
        found[(0,)] = None
    else:
        extend([], right_closure_mask(table, []))
    result = [SubgroupHandle(hol.group, key) for key in sorted(found)]
    logger.debug(f"Found {len(result)} regular subgroups in a holomorph of order {hol.group.order}")
    return result


def aut_conjugacy_classes(hol: Holomorph, subgroups: Sequence[SubgroupHandle]) -> List[List[int]]:
    """
    Group subgroups of Hol(A) by conjugation with the elements (1, φ), φ ∈ Aut(A).

    Returns:
        Lists of positions into `subgroups`, each list sorted, ordered by first position
    """
    G = hol.group
    conjugators = [hol.product.encode(0, k) for k in range(len(hol.automorphisms))]
    classes: Dict[Tuple[int, ...], List[int]] = {}
    for pos, H in enumerate(subgroups):
        keys = []
        for c in conjugators:
            conj = G.table[G.table[c, H.array], G.inverses[c]]
            keys.append(tuple(int(x) for x in np.sort(conj)))
        classes.setdefault(min(keys), []).append(pos)
    return sorted(classes.values(), key=lambda cls: cls[0])


def enumerate_braces_on(
    A: FiniteGroup,
    cap: int = DEFAULT_ENUMERATION_CAP,
    holomorph_cap: int = DEFAULT_HOLOMORPH_CAP,
) -> List[SkewBrace]:
    """
    All skew braces with star group A up to isomorphism.

    Raises:
        OrderCapExceeded: If |A| > cap or Hol(A) is too large
    """
    if A.order > cap:
        raise OrderCapExceeded(A.order, cap, what="brace enumeration")
    hol = holomorph(A, aut_cap=max(cap, A.order), order_cap=holomorph_cap)
    subgroups = regular_subgroups(hol)
    classes = aut_conjugacy_classes(hol, subgroups)
    braces = [brace_from_regular_subgroup(hol, subgroups[cls[0]]) for cls in classes]
    for i in range(len(braces)):
        for j in range(i):
            if brace_isomorphism(braces[i], braces[j]) is not None:
                raise AssertionError(f"Aut(A)-classes {j} and {i} give isomorphic braces")
    logger.info(
        f"Group of order {A.order}: {len(subgroups)} regular subgroups, {len(braces)} braces up to isomorphism"
    )
    return braces
