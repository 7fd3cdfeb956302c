# ABOUTME: Catalogue of small standard groups as validated Cayley tables
# ABOUTME: Cyclic, elementary abelian, dihedral, quaternion, symmetric and permutation-generated groups

from itertools import permutations
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .groups import FiniteGroup, GroupError
from .permutations import Permutation, compose, identity_permutation
from .products import direct_product


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n)


def elementary_abelian_group(k: int) -> FiniteGroup:
    """(Z/2)^k, element y coded by its bits, product = XOR."""
    idx = np.arange(2**k)
    return FiniteGroup(idx[:, None] ^ idx[None, :])


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; r^k s^e is coded e·n + k."""
    size = 2 * n
    codes = np.arange(size)
    e, k = codes // n, codes % n
    sign = np.where(e == 1, -1, 1)
    rot = (k[:, None] + sign[:, None] * k[None, :]) % n
    flip = (e[:, None] + e[None, :]) % 2
    return FiniteGroup(flip * n + rot)


# unit products among 1, i, j, k as (sign, unit)
_QUATERNION_UNITS = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]


def quaternion_group() -> FiniteGroup:
    """Q8; ±u for unit u in (1, i, j, k) is coded 2·u + (1 if negative)."""
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            sign, unit = _QUATERNION_UNITS[a // 2][b // 2]
            if (a % 2) ^ (b % 2):
                sign = -sign
            table[a][b] = 2 * unit + (1 if sign < 0 else 0)
    return FiniteGroup(table)


def group_from_permutations(generators: Sequence[Sequence[int]]) -> Tuple[FiniteGroup, List[Permutation]]:
    """
    Close a set of permutations under composition.

    Returns:
        (group, elements): elements sorted lexicographically, identity first; product a·b = a ∘ b
    """
    if not generators:
        raise GroupError("At least one generator is required")
    degree = len(generators[0])
    gens = [tuple(int(v) for v in g) for g in generators]
    seen = {identity_permutation(degree)}
    frontier = list(seen)
    while frontier:
        fresh = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in seen:
                    seen.add(q)
                    fresh.append(q)
        frontier = fresh
    elements = sorted(seen)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[compose(p, q)] for q in elements] for p in elements]
    return FiniteGroup(table), elements


def symmetric_group(n: int) -> FiniteGroup:
    """Sym_n on lexicographically sorted permutations; product a·b = a ∘ b."""
    elements = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elements)}
    return FiniteGroup([[index[compose(p, q)] for q in elements] for p in elements])


_NAMED_GROUPS: Dict[str, Callable[[], FiniteGroup]] = {
    "z1": lambda: cyclic_group(1),
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "v4": lambda: elementary_abelian_group(2),
    "z5": lambda: cyclic_group(5),
    "z6": lambda: cyclic_group(6),
    "s3": lambda: symmetric_group(3),
    "z7": lambda: cyclic_group(7),
    "z8": lambda: cyclic_group(8),
    "z2xz4": lambda: direct_product(cyclic_group(2), cyclic_group(4)).group,
    "z2^3": lambda: elementary_abelian_group(3),
    "d4": lambda: dihedral_group(4),
    "q8": quaternion_group,
    "s4": lambda: symmetric_group(4),
}

# groups of each small order up to isomorphism
SMALL_GROUPS: Dict[int, Tuple[str, ...]] = {
    1: ("z1",),
    2: ("z2",),
    3: ("z3",),
    4: ("z4", "v4"),
    5: ("z5",),
    6: ("z6", "s3"),
    7: ("z7",),
    8: ("z8", "z2xz4", "z2^3", "d4", "q8"),
}


def group_names() -> List[str]:
    return list(_NAMED_GROUPS)


def named_group(name: str) -> FiniteGroup:
    """
    Look up a built-in group by name (z2, v4, s3, d4, q8, ...).

    Raises:
        KeyError: If the name is unknown
    """
    key = name.strip().lower()
    if key not in _NAMED_GROUPS:
        raise KeyError(f"Unknown group '{name}'; known: {', '.join(_NAMED_GROUPS)}")
    return _NAMED_GROUPS[key]()
