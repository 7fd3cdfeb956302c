# ABOUTME: Semidirect and direct products of finite groups with pair coding a·|H|+b
# ABOUTME: Builds the holomorph A ⋊ Aut(A) together with its evaluation action on A

import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .groups import (
    INDEX_DTYPE,
    FiniteGroup,
    GroupAction,
    NotAutomorphismAction,
    OrderCapExceeded,
)
from .isomorphism import automorphisms
from .permutations import Permutation, compose

logger = logging.getLogger(__name__)

DEFAULT_HOLOMORPH_CAP = 2048
_ROW_CHUNK = 256


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    """N ⋊ H on pairs (a, b) coded as a·|H| + b, with (a,b)(a',b') = (a·act_b(a'), b·b')."""

    group: FiniteGroup
    normal: FiniteGroup
    acting: FiniteGroup
    action: GroupAction

    def encode(self, a: int, b: int) -> int:
        return int(a) * self.acting.order + int(b)

    def decode(self, g: int) -> Tuple[int, int]:
        a, b = divmod(int(g), self.acting.order)
        return a, b

    def components(self, codes) -> Tuple[np.ndarray, np.ndarray]:
        codes = np.asarray(codes)
        return codes // self.acting.order, codes % self.acting.order


def _check_automorphism_action(N: FiniteGroup, act: GroupAction) -> None:
    for h in range(act.group.order):
        p = act.perm_of[h]
        if not np.array_equal(p[N.table], N.table[np.ix_(p, p)]):
            raise NotAutomorphismAction(f"Element {h} of the acting group does not act by an automorphism")


def semidirect_product(N: FiniteGroup, H: FiniteGroup, act: GroupAction) -> SemidirectProduct:
    """
    Build N ⋊ H for an action of H on N by automorphisms.

    Raises:
        NotAutomorphismAction: If some act.perm_of[h] is not an automorphism of N
    """
    if act.group.order != H.order or act.degree != N.order:
        raise NotAutomorphismAction(
            f"Action of a group of order {act.group.order} on {act.degree} points does not match "
            f"N of order {N.order} and H of order {H.order}"
        )
    _check_automorphism_action(N, act)

    n, m = N.order, H.order
    size = n * m
    codes = np.arange(size)
    a, b = codes // m, codes % m
    table = np.empty((size, size), dtype=INDEX_DTYPE)
    for start in range(0, size, _ROW_CHUNK):
        stop = min(start + _ROW_CHUNK, size)
        ra = a[start:stop, None]
        rb = b[start:stop, None]
        first = N.table[ra, act.perm_of[rb, a[None, :]]]
        second = H.table[rb, b[None, :]]
        table[start:stop] = first * m + second

    hint = [g * m for g in N.generators] + list(H.generators)
    group = FiniteGroup(table, generators=hint)
    logger.debug(f"Built semidirect product of order {size}")
    return SemidirectProduct(group, N, H, act)


def trivial_action(H: FiniteGroup, degree: int) -> GroupAction:
    return GroupAction(H, np.tile(np.arange(degree), (H.order, 1)))


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> SemidirectProduct:
    """G1 × G2 with pair coding a·|G2| + b."""
    return semidirect_product(G1, G2, trivial_action(G2, G1.order))


@dataclass(frozen=True, eq=False)
class Holomorph:
    """Hol(A) = A ⋊ Aut(A); automorphism k of the second factor is `automorphisms[k]`."""

    base: FiniteGroup
    automorphisms: Tuple[Permutation, ...]
    aut_group: FiniteGroup
    product: SemidirectProduct

    @property
    def group(self) -> FiniteGroup:
        return self.product.group

    def evaluate(self, h: int, w: int) -> int:
        """(v, M)(w) = v ⋆ M(w)."""
        v, k = self.product.decode(h)
        return self.base.multiply(v, self.automorphisms[k][w])

    def evaluation_action(self) -> GroupAction:
        codes = np.arange(self.group.order)
        v, k = self.product.components(codes)
        auts = np.asarray(self.automorphisms, dtype=np.intp)
        return GroupAction(self.group, self.base.table[v[:, None], auts[k]])


def holomorph(A: FiniteGroup, aut_cap: int = 64, order_cap: int = DEFAULT_HOLOMORPH_CAP) -> Holomorph:
    """
    Build Hol(A) with Aut(A) listed in sorted order (identity at index 0).

    Raises:
        OrderCapExceeded: If |A| > aut_cap or |Hol(A)| > order_cap
    """
    auts = automorphisms(A, cap=aut_cap)
    size = A.order * len(auts)
    if size > order_cap:
        raise OrderCapExceeded(size, order_cap, what="holomorph")
    index: Dict[Permutation, int] = {p: k for k, p in enumerate(auts)}
    aut_table = [[index[compose(p, q)] for q in auts] for p in auts]
    aut_group = FiniteGroup(aut_table)
    action = GroupAction(aut_group, np.asarray(auts, dtype=INDEX_DTYPE))
    product = semidirect_product(A, aut_group, action)
    logger.info(f"Holomorph of a group of order {A.order}: |Aut| = {len(auts)}, order {size}")
    return Holomorph(A, tuple(auts), aut_group, product)
