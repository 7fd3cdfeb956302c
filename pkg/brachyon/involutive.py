# ABOUTME: Involutive solutions from left braces via cosets of the multiplicative group
# ABOUTME: Involutive specs, their validation, and the irretractable solution of a brace with trivial socle

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .braces import NotALeftBrace, SkewBrace, brace_isomorphism, lambda_action, socle
from .constructor import BuiltSolution, SpecInvalid, SpecReport, coset_action
from .groups import (
    SubgroupHandle,
    core,
    orbits,
    right_closure_mask,
    stabilizer,
    subgroup_from_elements,
)
from .solutions import (
    Solution,
    inverse_rows,
    is_involutive,
    is_irretractable,
    is_nondegenerate,
    permutation_brace,
)

logger = logging.getLogger(__name__)


class SocleNotTrivial(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InvolutiveSpec:
    """Representatives a_i of λ-orbits and subgroups K_{i,j} of (B, ·) inside St_λ(a_i)."""

    brace: SkewBrace
    reps: Tuple[int, ...]
    families: Tuple[Tuple[SubgroupHandle, ...], ...]

    def blocks(self) -> List[Tuple[int, int, SubgroupHandle]]:
        return [(i, j, K) for i, fam in enumerate(self.families) for j, K in enumerate(fam)]

    @property
    def size(self) -> int:
        return sum(self.brace.order // K.order for _, _, K in self.blocks())


def make_involutive_spec(
    B: SkewBrace, reps: Sequence[int], families: Sequence[Sequence[Sequence[int]]]
) -> InvolutiveSpec:
    handles = tuple(tuple(subgroup_from_elements(B.dot, K) for K in fam) for fam in families)
    return InvolutiveSpec(B, tuple(int(a) for a in reps), handles)


def lambda_orbits(B: SkewBrace) -> List[Tuple[int, ...]]:
    return [tuple(orb) for orb in orbits(lambda_action(B))]


def lambda_stabilizer(B: SkewBrace, a: int) -> SubgroupHandle:
    """St_λ(a) = {b : λ_b(a) = a} as a subgroup of (B, ·)."""
    return stabilizer(lambda_action(B), a)


def validate_involutive_spec(spec: InvolutiveSpec) -> SpecReport:
    B = spec.brace
    if not B.is_left:
        raise NotALeftBrace("Involutive specs need an abelian star group")
    if len(spec.reps) != len(spec.families) or not spec.reps or any(not fam for fam in spec.families):
        return SpecReport(False, "Structure", None, "need one non-empty family per representative")

    orbit_list = lambda_orbits(B)
    orbit_of = {x: k for k, orb in enumerate(orbit_list) for x in orb}
    seen: Dict[int, int] = {}
    for i, a in enumerate(spec.reps):
        k = orbit_of[a]
        if k in seen:
            return SpecReport(False, "OrbitsNotDistinct", (seen[k], i), f"a_{seen[k]} and a_{i} share an orbit")
        seen[k] = i

    Y = [x for a in spec.reps for x in orbit_list[orbit_of[a]]]
    generated = right_closure_mask(B.star.table, Y)
    if not generated.all():
        missing = int(np.flatnonzero(~generated)[0])
        return SpecReport(False, "GenerationFails", missing, f"element {missing} is not additively generated")

    for i, j, K in spec.blocks():
        St = lambda_stabilizer(B, spec.reps[i])
        outside = K.array[~St.mask[K.array]]
        if outside.size:
            return SpecReport(
                False, "ContainmentFails", (i, j, int(outside[0])), f"K_({i},{j}) is not inside St(a_{i})"
            )

    joint = np.ones(B.order, dtype=bool)
    for _, _, K in spec.blocks():
        joint &= core(B.dot, K).mask
    joint[0] = False
    if joint.any():
        witness = int(np.flatnonzero(joint)[0])
        return SpecReport(False, "CoreFails", witness, f"{witness} lies in every core")
    return SpecReport(True)


def build_involutive(spec: InvolutiveSpec, verify: bool = True) -> BuiltSolution:
    """
    X = ⊔ B/K_{i,j} (left cosets in (B, ·)) with f_{b1 K}(b2 K') = λ_{b1}(a_i)·b2 K' and
    g_y(x) = f^{-1}_{f_x(y)}(x).

    Raises:
        NotALeftBrace: If (B, ⋆) is not abelian
        SpecInvalid: If the spec fails validation
    """
    report = validate_involutive_spec(spec)
    if not report:
        raise SpecInvalid(report)
    B = spec.brace
    blocks = spec.blocks()
    sigma, points = coset_action(B.dot, [K for _, _, K in blocks])
    eta = np.asarray([B.lam[rep, spec.reps[blocks[block][0]]] for block, rep in points], dtype=np.intp)
    F = sigma.perm_of[eta]
    finv = inverse_rows(F)
    idx = np.arange(eta.size)
    by_xy = finv[F, idx[:, None]]
    solution = Solution(F, by_xy.T)
    if not (is_nondegenerate(solution) and is_involutive(solution)):
        raise AssertionError("The constructed solution is not involutive and non-degenerate")
    if verify and brace_isomorphism(permutation_brace(solution).brace, B) is None:
        raise AssertionError("The permutation brace of the constructed solution is not isomorphic to B")
    labels = tuple((blocks[block][0], blocks[block][1], rep) for block, rep in points)
    logger.debug(f"Built an involutive solution of size {solution.size}")
    return BuiltSolution(solution, labels, tuple(int(e) for e in eta))


def canonical_involutive_spec(B: SkewBrace) -> InvolutiveSpec:
    """Every λ-orbit once, each with the trivial subgroup of (B, ·)."""
    reps = tuple(orb[0] for orb in lambda_orbits(B))
    trivial = SubgroupHandle(B.dot, (0,))
    return InvolutiveSpec(B, reps, tuple((trivial,) for _ in reps))


def irretractable_spec(B: SkewBrace, reps: Optional[Sequence[int]] = None) -> InvolutiveSpec:
    """One block per chosen λ-orbit with K = St_λ(a_i); all orbits by default."""
    chosen = [orb[0] for orb in lambda_orbits(B)] if reps is None else [int(a) for a in reps]
    families = tuple((lambda_stabilizer(B, a),) for a in chosen)
    return InvolutiveSpec(B, tuple(chosen), families)


def build_irretractable(B: SkewBrace, reps: Optional[Sequence[int]] = None, verify: bool = True) -> BuiltSolution:
    """
    Irretractable involutive solution over a left brace with trivial socle.

    With all λ-orbits chosen this is the associated solution r_B up to relabelling.

    Raises:
        NotALeftBrace: If (B, ⋆) is not abelian
        SocleNotTrivial: If Soc(B) ≠ {0}
    """
    if not B.is_left:
        raise NotALeftBrace("Irretractable construction needs an abelian star group")
    soc = socle(B)
    if soc.order != 1:
        raise SocleNotTrivial(f"Socle has order {soc.order}")
    built = build_involutive(irretractable_spec(B, reps), verify=verify)
    if not is_irretractable(built.solution):
        raise AssertionError("The solution built from full stabilisers is retractable")
    return built
