# ABOUTME: Racks, quandles and biracks as solutions of the form r(x,y) = (y, y∘x)
# ABOUTME: Derived racks of solutions, racks built from groups on coset spaces, and rack enumeration

import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .groups import (
    DEFAULT_SUBGROUP_CAP,
    INDEX_DTYPE,
    FiniteGroup,
    SubgroupHandle,
    centralizer,
    conjugacy_classes,
    core,
    left_cosets,
    subgroup_closure,
    subgroup_intersection,
    subgroups_of,
)
from .permutations import Permutation
from .solutions import (
    InvalidSolution,
    Solution,
    inverse_rows,
    is_nondegenerate,
    require_nondegenerate,
    solution_isomorphism,
    verify_ybe,
)

logger = logging.getLogger(__name__)


class RackError(ValueError):
    pass


class GenerationFails(RackError):
    pass


class CoreFails(RackError):
    pass


def self_distributivity_witness(circ) -> Optional[Tuple[int, int, int]]:
    """First (a, b, c) with a∘(b∘c) ≠ (a∘b)∘(a∘c)."""
    T = np.asarray(circ)
    for a in range(T.shape[0]):
        lhs = T[a][T]
        rhs = T[T[a][:, None], T[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return (a, int(bad[0][0]), int(bad[0][1]))
    return None


def _rows_bijective(T: np.ndarray) -> bool:
    return bool((np.sort(T, axis=1) == np.arange(T.shape[1])).all())


def rack_solution_tables(circ) -> Tuple[np.ndarray, np.ndarray]:
    """F and Gt of r(x,y) = (y, y∘x)."""
    T = np.asarray(circ, dtype=INDEX_DTYPE)
    n = T.shape[0]
    return np.tile(np.arange(n, dtype=INDEX_DTYPE), (n, 1)), T


def is_rack(circ) -> bool:
    """r(x,y) = (y, y∘x) is a non-degenerate solution."""
    T = np.asarray(circ)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        return False
    n = T.shape[0]
    if n and ((T < 0) | (T >= n)).any():
        return False
    if not _rows_bijective(T):
        return False
    F, Gt = rack_solution_tables(T)
    solved = bool(verify_ybe(F, Gt))
    if solved != (self_distributivity_witness(T) is None):
        raise AssertionError("Self-distributivity disagrees with the braid relation")
    return solved


def is_quandle(circ) -> bool:
    T = np.asarray(circ)
    return is_rack(T) and bool((np.diagonal(T) == np.arange(T.shape[0])).all())


def is_birack(circ, star2) -> bool:
    """r(x,y) = (x∘y, y⋆x) is a non-degenerate solution; star2[y][x] = y⋆x."""
    try:
        S = Solution(circ, star2)
    except InvalidSolution:
        return False
    return is_nondegenerate(S)


@dataclass(frozen=True, eq=False)
class RackTable:
    """circ[y][x] = y∘x; `labels` names each point when the rack comes from a coset construction."""

    circ: np.ndarray
    labels: Tuple[Tuple[int, int, int], ...] = field(default=())

    def __post_init__(self):
        T = np.array(self.circ, dtype=INDEX_DTYPE)
        if not is_rack(T):
            raise RackError("Table is not a rack")
        T.flags.writeable = False
        object.__setattr__(self, "circ", T)

    @property
    def size(self) -> int:
        return int(self.circ.shape[0])

    @property
    def is_quandle(self) -> bool:
        return bool((np.diagonal(self.circ) == np.arange(self.size)).all())

    def sort_key(self) -> Tuple:
        return (self.size, self.circ.tolist())


def rack_solution(R: RackTable) -> Solution:
    return Solution(*rack_solution_tables(R.circ))


def derived_rack(S: Solution) -> RackTable:
    """y∘x := f_y g_{f_x^{-1}(y)}(x)."""
    require_nondegenerate(S)
    n = S.size
    finv = inverse_rows(S.F)
    idx = np.arange(n)
    inner = S.Gt[finv.T, idx[None, :]]
    return RackTable(S.F[idx[:, None], inner])


def rack_isomorphism(R1: RackTable, R2: RackTable) -> Optional[Permutation]:
    return solution_isomorphism(rack_solution(R1), rack_solution(R2))


def rack_from_group(
    G: FiniteGroup,
    class_reps: Sequence[int],
    families: Sequence[Sequence[SubgroupHandle]],
) -> RackTable:
    """
    Rack on X = ⊔ G/K_{i,j} with (xK_{i,j})∘(yK_{a,b}) = x g_i^{-1} x^{-1} y K_{a,b}.

    Points are ordered by block (i, j), then by coset representative; labels hold (i, j, rep).

    Raises:
        GenerationFails: If the conjugacy classes of the g_i do not generate G
        CoreFails: If core(⋂ K_{i,j}) is not trivial
        RackError: If some K_{i,j} does not centralise g_i
    """
    if len(class_reps) != len(families) or any(len(fam) == 0 for fam in families):
        raise RackError("Each class representative needs a non-empty family of subgroups")
    union = set()
    classes = conjugacy_classes(G)
    for g in class_reps:
        union.update(next(cls for cls in classes if g in cls))
    if subgroup_closure(G, sorted(union)).order != G.order:
        raise GenerationFails(f"Conjugacy classes of {list(class_reps)} do not generate the group")
    for i, (g, fam) in enumerate(zip(class_reps, families)):
        C = centralizer(G, g)
        for j, K in enumerate(fam):
            if not C.mask[K.array].all():
                raise RackError(f"K_({i},{j}) is not contained in the centraliser of {g}")
    all_K = [K for fam in families for K in fam]
    kernel = core(G, subgroup_intersection(all_K))
    if kernel.order != 1:
        raise CoreFails(f"The core of the intersection has order {kernel.order}")

    blocks = []
    labels = []
    offset = 0
    for i, fam in enumerate(families):
        for j, K in enumerate(fam):
            space = left_cosets(G, K)
            blocks.append((i, space, offset))
            labels.extend((i, j, rep) for rep in space.reps)
            offset += space.size
    size = offset

    circ = np.empty((size, size), dtype=INDEX_DTYPE)
    for i_u, space_u, off_u in blocks:
        gi_inv = G.inverses[class_reps[i_u]]
        for k, x in enumerate(space_u.reps):
            mover = G.multiply(G.multiply(x, int(gi_inv)), G.inverse(x))
            for _, space_v, off_v in blocks:
                circ[off_u + k, off_v : off_v + space_v.size] = off_v + space_v.translation(mover)
    logger.debug(f"Rack of size {size} from a group of order {G.order}")
    return RackTable(circ, tuple(labels))


def _families(subgroups: Sequence[SubgroupHandle], max_families: int) -> Iterator[Tuple[SubgroupHandle, ...]]:
    for count in range(1, max_families + 1):
        yield from combinations_with_replacement(subgroups, count)


def enumerate_racks(
    G: FiniteGroup,
    max_size: int,
    max_families: int = 1,
    subgroup_cap: int = DEFAULT_SUBGROUP_CAP,
) -> List[RackTable]:
    """
    Racks from rack_from_group over generating sets of non-trivial conjugacy classes,
    deduplicated by rack isomorphism and sorted by (size, table).
    """
    classes = [cls for cls in conjugacy_classes(G) if cls != (0,)]
    candidates: List[RackTable] = []
    for count in range(1, len(classes) + 1):
        for chosen in combinations(classes, count):
            union = sorted(x for cls in chosen for x in cls)
            if subgroup_closure(G, union).order != G.order:
                continue
            reps = [cls[0] for cls in chosen]
            options = [list(_families(subgroups_of(centralizer(G, g), cap=subgroup_cap), max_families)) for g in reps]
            for families in product(*options):
                size = sum(G.order // K.order for fam in families for K in fam)
                if size > max_size:
                    continue
                try:
                    candidates.append(rack_from_group(G, reps, families))
                except CoreFails:
                    continue
    kept: List[RackTable] = []
    for R in sorted(candidates, key=RackTable.sort_key):
        if not any(K.size == R.size and rack_isomorphism(R, K) is not None for K in kept):
            kept.append(R)
    logger.info(f"Group of order {G.order}: {len(candidates)} rack constructions, {len(kept)} up to isomorphism")
    return kept
