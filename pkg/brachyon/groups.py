# ABOUTME: Finite groups as validated Cayley tables over element indices 0..n-1
# ABOUTME: Subgroups, cosets, cores, conjugacy, subgroup lattices, actions, orbits and stabilizers

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .permutations import Permutation

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.int32
DEFAULT_SUBGROUP_CAP = 64


class GroupError(ValueError):
    """Base class for invalid group data."""


class NotLatin(GroupError):
    """The table is not a Latin square; `cell` is the first offending (row, column)."""

    def __init__(self, cell: Tuple[int, int], reason: str):
        self.cell = cell
        super().__init__(f"Not a Latin square at cell {cell}: {reason}")


class NoIdentityAtZero(GroupError):
    """Index 0 is not a two-sided identity; `cell` is the first offending cell."""

    def __init__(self, cell: Tuple[int, int]):
        self.cell = cell
        super().__init__(f"Index 0 is not a two-sided identity (cell {cell})")


class NotAssociative(GroupError):
    """Associativity fails at `triple` = (a, b, c)."""

    def __init__(self, triple: Tuple[int, int, int]):
        self.triple = triple
        super().__init__(f"Associativity fails for triple {triple}")


class OrderCapExceeded(GroupError):
    def __init__(self, order: int, cap: int, what: str = "group"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} order {order} exceeds the configured cap {cap}")


class NotAnAction(GroupError):
    """The permutation table is not a homomorphism into Sym_m."""


class NotAutomorphismAction(GroupError):
    """Some acting element does not induce an automorphism."""


def right_closure_mask(table: np.ndarray, generators: Sequence[int]) -> np.ndarray:
    """Elements reachable from 0 by right multiplication with the generators."""
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    gens = np.asarray(sorted(set(int(g) for g in generators)), dtype=np.intp)
    if gens.size == 0:
        return mask
    frontier = np.array([0], dtype=np.intp)
    while frontier.size:
        products = table[np.ix_(frontier, gens)].ravel()
        fresh = np.unique(products[~mask[products]])
        mask[fresh] = True
        frontier = fresh.astype(np.intp)
    return mask


def _greedy_generators(table: np.ndarray, order: Optional[Iterable[int]] = None) -> List[int]:
    """Pick elements in the given order until they generate the whole table."""
    n = table.shape[0]
    candidates = range(1, n) if order is None else order
    gens: List[int] = []
    mask = right_closure_mask(table, gens)
    for a in candidates:
        if mask.all():
            break
        if not mask[a]:
            gens.append(int(a))
            mask = right_closure_mask(table, gens)
    return gens


def _first_line_violation(table: np.ndarray, axis: int) -> Optional[Tuple[int, int]]:
    n = table.shape[0]
    lines = table if axis == 1 else table.T
    ok = (np.sort(lines, axis=1) == np.arange(n)).all(axis=1)
    if ok.all():
        return None
    line = int(np.flatnonzero(~ok)[0])
    seen = set()
    for pos, value in enumerate(lines[line].tolist()):
        if value in seen:
            return (line, pos) if axis == 1 else (pos, line)
        seen.add(value)
    return (line, 0) if axis == 1 else (0, line)


class FiniteGroup:
    """
    A finite group stored as a Cayley table, identity at index 0.

    The table is validated on construction (Latin square, identity, associativity by
    Light's test over a generating set) and is read-only afterwards.
    """

    def __init__(self, table, generators: Optional[Sequence[int]] = None):
        arr = np.array(table, dtype=INDEX_DTYPE)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupError(f"Cayley table must be a non-empty square matrix, got shape {arr.shape}")
        n = arr.shape[0]
        out_of_range = (arr < 0) | (arr >= n)
        if out_of_range.any():
            r, c = (int(v) for v in np.argwhere(out_of_range)[0])
            raise NotLatin((r, c), f"entry {int(arr[r, c])} out of range")

        cell = _first_line_violation(arr, axis=1)
        if cell is not None:
            raise NotLatin(cell, "repeated entry in row")
        cell = _first_line_violation(arr, axis=0)
        if cell is not None:
            raise NotLatin(cell, "repeated entry in column")

        idx = np.arange(n)
        if not np.array_equal(arr[0], idx):
            raise NoIdentityAtZero((0, int(np.flatnonzero(arr[0] != idx)[0])))
        if not np.array_equal(arr[:, 0], idx):
            raise NoIdentityAtZero((int(np.flatnonzero(arr[:, 0] != idx)[0]), 0))

        gens = list(generators) if generators is not None else []
        if not gens or not right_closure_mask(arr, gens).all():
            gens = _greedy_generators(arr)

        for g in gens:
            left = arr[arr[:, g], :]
            right = arr[:, arr[g, :]]
            bad = np.argwhere(left != right)
            if bad.size:
                a, c = (int(v) for v in bad[0])
                raise NotAssociative((a, int(g), c))

        rows, cols = np.nonzero(arr == 0)
        inv = np.empty(n, dtype=INDEX_DTYPE)
        inv[rows] = cols
        if not (arr[inv, idx] == 0).all():
            raise GroupError("Some element has no two-sided inverse")

        arr.flags.writeable = False
        inv.flags.writeable = False
        self.table = arr
        self.order = n
        self.inverses = inv
        self.generators: Tuple[int, ...] = tuple(int(g) for g in gens)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def multiply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        current = idx.copy()
        k = 1
        while (orders == 0).any():
            current = self.table[current, idx]
            k += 1
            orders[(current == 0) & (orders == 0)] = k
        orders.flags.writeable = False
        return orders

    @cached_property
    def class_sizes(self) -> np.ndarray:
        sizes = np.zeros(self.order, dtype=np.int64)
        for cls in conjugacy_classes(self):
            sizes[list(cls)] = len(cls)
        sizes.flags.writeable = False
        return sizes

    @cached_property
    def center(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero((self.table == self.table.T).all(axis=0)))


def group_from_table(table) -> FiniteGroup:
    """
    Validate a Cayley table and return the group it defines.

    Args:
        table: Square matrix of indices, identity at 0

    Returns:
        Validated FiniteGroup

    Raises:
        NotLatin, NoIdentityAtZero, NotAssociative: naming the first violation
    """
    return FiniteGroup(table)


def multiply(G: FiniteGroup, a: int, b: int) -> int:
    return G.multiply(a, b)


def inverse(G: FiniteGroup, a: int) -> int:
    return G.inverse(a)


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup of `parent`, stored as the sorted tuple of its elements."""

    parent: FiniteGroup
    elements: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[int(x)])

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.intp)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m


def _handle(G: FiniteGroup, mask_or_elements) -> SubgroupHandle:
    arr = np.asarray(mask_or_elements)
    if arr.dtype == bool:
        elements = np.flatnonzero(arr)
    else:
        elements = np.unique(arr)
    return SubgroupHandle(G, tuple(int(x) for x in elements))


def subgroup_closure(G: FiniteGroup, generators: Iterable[int]) -> SubgroupHandle:
    """Smallest subgroup of G containing the generators."""
    return _handle(G, right_closure_mask(G.table, list(generators)))


def is_subgroup(G: FiniteGroup, elements: Iterable[int]) -> bool:
    els = np.unique(np.asarray(list(elements), dtype=np.intp))
    if els.size == 0 or els[0] != 0:
        return False
    mask = np.zeros(G.order, dtype=bool)
    mask[els] = True
    return bool(mask[G.table[np.ix_(els, els)]].all())


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[int]) -> SubgroupHandle:
    """
    Wrap an explicit element list as a subgroup handle.

    Raises:
        GroupError: If the elements do not form a subgroup
    """
    els = list(elements)
    if not is_subgroup(G, els):
        raise GroupError(f"Elements {sorted(set(els))} do not form a subgroup")
    return _handle(G, els)


def whole_group(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(G, (0,))


def subgroup_intersection(subgroups: Sequence[SubgroupHandle]) -> SubgroupHandle:
    mask = subgroups[0].mask.copy()
    for H in subgroups[1:]:
        mask &= H.mask
    return _handle(subgroups[0].parent, mask)


def subgroup_as_group(H: SubgroupHandle) -> Tuple[FiniteGroup, Tuple[int, ...]]:
    """
    Renumber H as a standalone group.

    Returns:
        (group, elements) where position k of the new group is parent element elements[k]
    """
    G = H.parent
    els = H.array
    position = np.full(G.order, -1, dtype=np.intp)
    position[els] = np.arange(els.size)
    table = position[G.table[np.ix_(els, els)]]
    return FiniteGroup(table), H.elements


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets gH of `subgroup` in `parent`, represented by their minimal elements."""

    parent: FiniteGroup
    subgroup: SubgroupHandle
    reps: Tuple[int, ...]
    member_to_coset: np.ndarray

    @property
    def size(self) -> int:
        return len(self.reps)

    def coset_of(self, g: int) -> int:
        return int(self.member_to_coset[g])

    @cached_property
    def reps_array(self) -> np.ndarray:
        return np.asarray(self.reps, dtype=np.intp)

    def translation(self, g: int) -> np.ndarray:
        """Positions of g·(coset k) for every coset position k."""
        return self.member_to_coset[self.parent.table[g, self.reps_array]]


def left_cosets(G: FiniteGroup, H: SubgroupHandle) -> CosetSpace:
    """Partition G into left cosets gH, representatives minimal in each coset."""
    rep_of = G.table[:, H.array].min(axis=1)
    reps = np.unique(rep_of)
    member_to_coset = np.searchsorted(reps, rep_of).astype(np.intp)
    member_to_coset.flags.writeable = False
    return CosetSpace(G, H, tuple(int(r) for r in reps), member_to_coset)


def _conjugates_by_all(G: FiniteGroup, x: int) -> np.ndarray:
    """Array of g^{-1} x g over all g."""
    return G.table[G.table[G.inverses, x], np.arange(G.order)]


def is_normal(G: FiniteGroup, H: SubgroupHandle) -> bool:
    conj = G.table[G.table[:, H.array], G.inverses[:, None]]
    return bool(H.mask[conj].all())


def core(G: FiniteGroup, H: SubgroupHandle) -> SubgroupHandle:
    """Intersection of all conjugates of H: the largest normal subgroup of G inside H."""
    keep = [x for x in H.elements if H.mask[_conjugates_by_all(G, x)].all()]
    result = _handle(G, keep)
    if not is_normal(G, result):
        raise AssertionError("core is not normal")
    return result


def centralizer(G: FiniteGroup, g: int) -> SubgroupHandle:
    return _handle(G, G.table[:, g] == G.table[g, :])


def conjugacy_classes(G: FiniteGroup) -> List[Tuple[int, ...]]:
    """Conjugacy classes, ordered by their smallest element."""
    assigned = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if assigned[x]:
            continue
        cls = np.unique(_conjugates_by_all(G, x))
        assigned[cls] = True
        classes.append(tuple(int(c) for c in cls))
    return classes


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> List[SubgroupHandle]:
    """
    Every subgroup of G, by cyclic extension from the trivial subgroup.

    Args:
        G: The group
        cap: Maximal group order accepted

    Returns:
        Duplicate-free list sorted by (order, elements)

    Raises:
        OrderCapExceeded: If |G| > cap
    """
    if G.order > cap:
        raise OrderCapExceeded(G.order, cap)
    found: Dict[Tuple[int, ...], List[int]] = {(0,): []}
    queue = [(0,)]
    while queue:
        key = queue.pop()
        gens = found[key]
        members = set(key)
        for x in range(1, G.order):
            if x in members:
                continue
            mask = right_closure_mask(G.table, gens + [x])
            new_key = tuple(int(v) for v in np.flatnonzero(mask))
            if new_key not in found:
                found[new_key] = gens + [x]
                queue.append(new_key)
    logger.debug(f"Found {len(found)} subgroups in a group of order {G.order}")
    return [SubgroupHandle(G, key) for key in sorted(found, key=lambda k: (len(k), k))]


def subgroups_of(H: SubgroupHandle, cap: int = DEFAULT_SUBGROUP_CAP) -> List[SubgroupHandle]:
    """All subgroups of H, as handles in H's parent, sorted by (order, elements)."""
    sub, elements = subgroup_as_group(H)
    lookup = np.asarray(elements, dtype=np.intp)
    result = [_handle(H.parent, lookup[K.array]) for K in all_subgroups(sub, cap=cap)]
    return sorted(result, key=lambda K: (K.order, K.elements))


class GroupAction:
    """A homomorphism from `group` into Sym_m, stored as an (|group|, m) table."""

    def __init__(self, group: FiniteGroup, perm_of):
        arr = np.array(perm_of, dtype=INDEX_DTYPE)
        if arr.ndim != 2 or arr.shape[0] != group.order:
            raise NotAnAction(f"Expected one permutation per group element, got shape {arr.shape}")
        m = arr.shape[1]
        if m and not (np.sort(arr, axis=1) == np.arange(m)).all():
            raise NotAnAction("Some row is not a permutation")
        if m and not np.array_equal(arr[0], np.arange(m)):
            raise NotAnAction("The identity does not act trivially")
        for g in group.generators:
            if not np.array_equal(arr[group.table[g]], arr[g][arr]):
                raise NotAnAction(f"perm_of[{g}·h] != perm_of[{g}] ∘ perm_of[h] for some h")
        arr.flags.writeable = False
        self.group = group
        self.degree = m
        self.perm_of = arr

    def permutation(self, g: int) -> Permutation:
        return tuple(int(v) for v in self.perm_of[g])


def orbit(act: GroupAction, point: int) -> List[int]:
    return [int(v) for v in np.unique(act.perm_of[:, point])]


def stabilizer(act: GroupAction, point: int) -> SubgroupHandle:
    return _handle(act.group, act.perm_of[:, point] == point)


def orbits(act: GroupAction) -> List[List[int]]:
    """All orbits, ordered by their minimal point."""
    seen = np.zeros(act.degree, dtype=bool)
    result = []
    for p in range(act.degree):
        if not seen[p]:
            orb = orbit(act, p)
            seen[orb] = True
            result.append(orb)
    return result
