# ABOUTME: Builds every non-degenerate solution with a given permutation brace from coset data
# ABOUTME: Construction specs, Θ-orbits and stabilisers, validation, the η/σ builder, spec enumeration and inversion

import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .braces import SkewBrace, brace_isomorphism
from .groups import (
    DEFAULT_SUBGROUP_CAP,
    INDEX_DTYPE,
    FiniteGroup,
    GroupAction,
    SubgroupHandle,
    core,
    left_cosets,
    orbits,
    right_closure_mask,
    stabilizer,
    subgroup_from_elements,
    subgroups_of,
)
from .solutions import Solution, is_square_free, permutation_brace

logger = logging.getLogger(__name__)

DEFAULT_MAX_FAMILIES = 2


class SpecInvalid(ValueError):
    def __init__(self, report: "SpecReport"):
        self.report = report
        super().__init__(f"Invalid construction spec: {report.failure}: {report.message}")


class HypothesisFails(ValueError):
    def __init__(self, name: str, witness: Any):
        self.name = name
        self.witness = witness
        super().__init__(f"Hypothesis '{name}' fails, witness {witness}")


@dataclass(frozen=True, eq=False)
class ConstructionSpec:
    """
    Coset data over a brace B: orbit representatives a_i and, for each, subgroups K_{i,j} of
    G = (B,⋆) ⋊ (B,·) contained in St(a_i).
    """

    brace: SkewBrace
    reps: Tuple[int, ...]
    families: Tuple[Tuple[SubgroupHandle, ...], ...]

    @property
    def group(self) -> FiniteGroup:
        return self.brace.semidirect.group

    def blocks(self) -> List[Tuple[int, int, SubgroupHandle]]:
        return [(i, j, K) for i, fam in enumerate(self.families) for j, K in enumerate(fam)]

    @property
    def size(self) -> int:
        return sum(self.group.order // K.order for _, _, K in self.blocks())


@dataclass(frozen=True)
class SpecReport:
    ok: bool
    failure: Optional[str] = None
    witness: Any = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class BuiltSolution:
    """A constructed solution with each point labelled (i, j, coset representative) and its η value."""

    solution: Solution
    labels: Tuple[Tuple[int, int, int], ...]
    eta: Tuple[int, ...] = field(default=())


def make_spec(B: SkewBrace, reps: Sequence[int], families: Sequence[Sequence[Sequence[int]]]) -> ConstructionSpec:
    """Spec from plain element lists of G (pair-coded); each list must be a subgroup."""
    G = B.semidirect.group
    handles = tuple(tuple(subgroup_from_elements(G, K) for K in fam) for fam in families)
    return ConstructionSpec(B, tuple(int(a) for a in reps), handles)


def theta_orbits(B: SkewBrace) -> List[Tuple[int, ...]]:
    """Θ-orbits of B ordered by their minimal element, which is the canonical representative."""
    return [tuple(orb) for orb in orbits(B.theta)]


def stabilizer_in_G(B: SkewBrace, a: int) -> SubgroupHandle:
    """St(a) = {(b,c) ∈ G : Θ_(b,c)(a) = a}."""
    return stabilizer(B.theta, a)


def canonical_spec(B: SkewBrace) -> ConstructionSpec:
    """Every Θ-orbit once, each with the trivial subgroup."""
    G = B.semidirect.group
    reps = tuple(orb[0] for orb in theta_orbits(B))
    trivial = SubgroupHandle(G, (0,))
    return ConstructionSpec(B, reps, tuple((trivial,) for _ in reps))


def _star_generated(B: SkewBrace, elements: Sequence[int]) -> np.ndarray:
    return right_closure_mask(B.star.table, list(elements))


def validate_spec(spec: ConstructionSpec) -> SpecReport:
    """
    Check orbit distinctness, ⋆-generation by the chosen orbits, K_{i,j} ≤ St(a_i) and
    the joint core condition; report the first failure with a witness.
    """
    B = spec.brace
    n = B.order
    G = spec.group
    if len(spec.reps) != len(spec.families) or not spec.reps:
        return SpecReport(False, "Structure", None, "need one non-empty family per representative")
    for i, (a, fam) in enumerate(zip(spec.reps, spec.families)):
        if not 0 <= a < n:
            return SpecReport(False, "Structure", i, f"representative {a} out of range")
        if not fam:
            return SpecReport(False, "Structure", i, f"family {i} is empty")
        if any(K.parent is not G and not np.array_equal(K.parent.table, G.table) for K in fam):
            return SpecReport(False, "Structure", i, f"family {i} holds subgroups of another group")

    orbit_of = np.empty(n, dtype=np.intp)
    orbit_list = theta_orbits(B)
    for k, orb in enumerate(orbit_list):
        orbit_of[list(orb)] = k
    seen: Dict[int, int] = {}
    for i, a in enumerate(spec.reps):
        k = int(orbit_of[a])
        if k in seen:
            return SpecReport(False, "OrbitsNotDistinct", (seen[k], i), f"a_{seen[k]} and a_{i} share an orbit")
        seen[k] = i

    Y = sorted(x for a in spec.reps for x in orbit_list[int(orbit_of[a])])
    generated = _star_generated(B, Y)
    if not generated.all():
        missing = int(np.flatnonzero(~generated)[0])
        return SpecReport(False, "GenerationFails", missing, f"element {missing} is not ⋆-generated")

    for i, j, K in spec.blocks():
        St = stabilizer_in_G(B, spec.reps[i])
        outside = K.array[~St.mask[K.array]]
        if outside.size:
            return SpecReport(
                False, "ContainmentFails", (i, j, int(outside[0])), f"K_({i},{j}) is not inside St(a_{i})"
            )

    joint = np.ones(G.order, dtype=bool)
    for _, _, K in spec.blocks():
        joint &= core(G, K).mask
    codes = np.arange(n)
    bad = np.flatnonzero(joint[codes] & joint[codes * n + codes])
    bad = bad[bad != 0]
    if bad.size:
        return SpecReport(False, "CoreFails", int(bad[0]), f"(1,{int(bad[0])}) and its diagonal lie in every core")
    return SpecReport(True)


def coset_action(G: FiniteGroup, subgroups: Sequence[SubgroupHandle]) -> Tuple[GroupAction, List[Tuple[int, int]]]:
    """
    Left translation on the disjoint union of G/K over the given subgroups.

    Returns:
        (action, points) where points[x] = (block, coset representative)
    """
    columns = []
    points: List[Tuple[int, int]] = []
    offset = 0
    for block, K in enumerate(subgroups):
        space = left_cosets(G, K)
        columns.append(offset + space.member_to_coset[G.table[:, space.reps_array]])
        points.extend((block, rep) for rep in space.reps)
        offset += space.size
    return GroupAction(G, np.hstack(columns)), points


def _assemble(B: SkewBrace, eta: np.ndarray, sigma: np.ndarray) -> Solution:
    """f_x = σ_(1,η(x)) and g_y(x) = σ_((t,t)^{-1})(x) with t = λ_{η(x)}(η(y))."""
    n = B.order
    G = B.semidirect.group
    idx = np.arange(eta.size)
    F = sigma[eta]
    t = B.lam[eta[:, None], eta[None, :]]
    codes = G.inverses[t * n + t]
    by_xy = sigma[codes, idx[:, None]]
    return Solution(F, by_xy.T)


def build_from_eta_sigma(
    B: SkewBrace, eta: Sequence[int], sigma: GroupAction, verify: bool = True
) -> Solution:
    """
    Solution from a map η: X → B and an action σ of G on X with η∘σ_g = Θ_g∘η.

    Raises:
        HypothesisFails: For 'generation', 'injectivity' or 'compatibility', with a witness
    """
    n = B.order
    G = B.semidirect.group
    eta_arr = np.asarray(eta, dtype=np.intp)
    if sigma.group.order != G.order or sigma.degree != eta_arr.size:
        raise HypothesisFails("shape", (sigma.group.order, sigma.degree, eta_arr.size))

    generated = _star_generated(B, sorted(set(eta_arr.tolist())))
    if not generated.all():
        raise HypothesisFails("generation", int(np.flatnonzero(~generated)[0]))

    perm = sigma.perm_of
    seen: Dict[bytes, int] = {}
    for b in range(n):
        key = perm[b].tobytes() + perm[b * n + b].tobytes()
        if key in seen:
            raise HypothesisFails("injectivity", (seen[key], b))
        seen[key] = b

    mismatch = eta_arr[perm] != B.theta.perm_of[:, eta_arr]
    if mismatch.any():
        g, x = (int(v) for v in np.argwhere(mismatch)[0])
        raise HypothesisFails("compatibility", (g, x))

    solution = _assemble(B, eta_arr, perm)
    if verify and brace_isomorphism(permutation_brace(solution).brace, B) is None:
        raise AssertionError("The permutation brace of the constructed solution is not isomorphic to B")
    return solution


def build_solution(spec: ConstructionSpec, verify: bool = True) -> BuiltSolution:
    """
    X = ⊔ G/K_{i,j} with f_x(y) = (1, η(x))·y and g_y(x) = (t,t)^{-1}·x, t = λ_{η(x)}(η(y)),
    where η((b,c)K_{i,j}) = Θ_(b,c)(a_i). Blocks are ordered by (i, j), cosets by representative.

    Raises:
        SpecInvalid: If validate_spec reports a failure
    """
    report = validate_spec(spec)
    if not report:
        raise SpecInvalid(report)
    B = spec.brace
    blocks = spec.blocks()
    sigma, points = coset_action(spec.group, [K for _, _, K in blocks])
    theta = B.theta.perm_of
    eta = np.asarray([theta[rep, spec.reps[blocks[block][0]]] for block, rep in points], dtype=INDEX_DTYPE)
    solution = build_from_eta_sigma(B, eta, sigma, verify=verify)
    labels = tuple((blocks[block][0], blocks[block][1], rep) for block, rep in points)
    logger.debug(f"Built a solution of size {solution.size} from {len(blocks)} coset blocks")
    return BuiltSolution(solution, labels, tuple(int(e) for e in eta))


def check_square_free_spec(spec: ConstructionSpec, cross_check: bool = True) -> bool:
    """
    (1, t) and (t, t) lie in g K_{i,j} g^{-1} for t = Θ_g(a_i), for every g ∈ G and block (i, j).
    """
    report = validate_spec(spec)
    if not report:
        raise SpecInvalid(report)
    B = spec.brace
    G = spec.group
    n = B.order
    codes = np.arange(G.order)
    ok = True
    for i, _, K in spec.blocks():
        t = B.theta.perm_of[:, spec.reps[i]]
        for target in (t, t * n + t):
            conj = G.table[G.table[G.inverses, target], codes]
            if not K.mask[conj].all():
                ok = False
                break
        if not ok:
            break
    if cross_check:
        built = build_solution(spec, verify=False).solution
        if is_square_free(built) != ok:
            raise AssertionError("Square-free criterion disagrees with the built solution")
    return ok


def _reduced_subgroups(St: SubgroupHandle, cap: int) -> List[SubgroupHandle]:
    """Subgroups of St up to conjugation inside St, smallest canonical form first."""
    G = St.parent
    kept: Dict[Tuple[int, ...], SubgroupHandle] = {}
    for K in subgroups_of(St, cap=cap):
        conj = G.table[G.table[St.array[:, None], K.array[None, :]], G.inverses[St.array][:, None]]
        key = min(tuple(int(v) for v in np.sort(row)) for row in conj)
        if key not in kept:
            kept[key] = SubgroupHandle(G, key)
    return sorted(kept.values(), key=lambda K: (-K.order, K.elements))


def enumerate_specs(
    B: SkewBrace,
    max_families: int = DEFAULT_MAX_FAMILIES,
    subgroup_cap: int = DEFAULT_SUBGROUP_CAP,
    max_size: Optional[int] = None,
) -> Iterator[ConstructionSpec]:
    """
    Valid specs over B in a fixed order: orbit subsets by size, then families per orbit as
    multisets of stabiliser subgroups (up to conjugation in the stabiliser) of at most
    max_families members, keeping |X| <= max_size.

    Raises:
        OrderCapExceeded: If a stabiliser is larger than subgroup_cap
    """
    G = B.semidirect.group
    orbit_list = theta_orbits(B)
    choices: Dict[int, List[Tuple[Tuple[SubgroupHandle, ...], int]]] = {}

    def families_for(k: int) -> List[Tuple[Tuple[SubgroupHandle, ...], int]]:
        if k not in choices:
            St = stabilizer_in_G(B, orbit_list[k][0])
            subgroups = _reduced_subgroups(St, subgroup_cap)
            options = []
            for count in range(1, max_families + 1):
                for fam in combinations_with_replacement(subgroups, count):
                    size = sum(G.order // K.order for K in fam)
                    if max_size is None or size <= max_size:
                        options.append((fam, size))
            choices[k] = options
        return choices[k]

    def expand(chosen: Sequence[int], room: Optional[int]) -> Iterator[List[Tuple[SubgroupHandle, ...]]]:
        if not chosen:
            yield []
            return
        for fam, size in families_for(chosen[0]):
            if room is not None and size > room:
                continue
            remaining = None if room is None else room - size
            for rest in expand(chosen[1:], remaining):
                yield [fam] + rest

    count = 0
    for subset_size in range(1, len(orbit_list) + 1):
        for chosen in combinations(range(len(orbit_list)), subset_size):
            Y = [x for k in chosen for x in orbit_list[k]]
            if not _star_generated(B, Y).all():
                continue
            reps = tuple(orbit_list[k][0] for k in chosen)
            for families in expand(list(chosen), max_size):
                spec = ConstructionSpec(B, reps, tuple(families))
                if validate_spec(spec):
                    count += 1
                    yield spec
    logger.info(f"Enumerated {count} construction specs over a brace of order {B.order}")


def spec_of_solution(S: Solution) -> ConstructionSpec:
    """
    Recover coset data for S over its own permutation brace: η(x) = π_x, σ from
    σ_(a,b) = g̃_a^{-1} ∘ f_a^{-1} ∘ f_b, one block per σ-orbit with K the stabiliser of the
    least point over the orbit representative.
    """
    result = permutation_brace(S)
    B = result.brace
    G = B.semidirect.group
    n = B.order
    P1 = np.asarray([p for p, _ in result.pair_of], dtype=np.intp)
    P2 = np.asarray([q for _, q in result.pair_of], dtype=np.intp)
    P1inv = np.argsort(P1, axis=1)
    a, b = B.semidirect.components(np.arange(G.order))
    mid = P1inv[a[:, None], P1[b]]
    sigma = GroupAction(G, P2[a[:, None], mid])
    eta = np.asarray(result.gen_of, dtype=np.intp)
    if (eta[sigma.perm_of] != B.theta.perm_of[:, eta]).any():
        raise AssertionError("σ is not compatible with Θ through η")

    orbit_rep = {}
    for orb in theta_orbits(B):
        for x in orb:
            orbit_rep[x] = orb[0]
    grouped: Dict[int, List[SubgroupHandle]] = {}
    for orb in orbits(sigma):
        rep = orbit_rep[int(eta[orb[0]])]
        point = min(x for x in orb if int(eta[x]) == rep)
        grouped.setdefault(rep, []).append(stabilizer(sigma, point))
    reps = tuple(sorted(grouped))
    families = tuple(tuple(grouped[r]) for r in reps)
    logger.debug(f"Recovered a spec with {len(reps)} orbits over a brace of order {n}")
    return ConstructionSpec(B, reps, families)
