# ABOUTME: Set-theoretic solutions r(x,y) = (f_x(y), g_y(x)) of the Yang-Baxter equation on {0..n-1}
# ABOUTME: YBE checks, predicates, g̃, permutation brace reconstruction, retraction and isomorphism search

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .braces import NotALeftBrace, SkewBrace, brace_from_tables
from .groups import INDEX_DTYPE
from .permutations import Permutation, cycle_type

logger = logging.getLogger(__name__)


class SolutionError(ValueError):
    """Base class for invalid solution data."""


class InvalidSolution(SolutionError):
    pass


class NondegenerateRequired(SolutionError):
    pass


class InvolutiveRequired(SolutionError):
    pass


@dataclass(frozen=True)
class YBEReport:
    ok: bool
    counterexample: Optional[Tuple[int, int, int]] = None
    equation: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def _as_table(values, n: Optional[int] = None) -> np.ndarray:
    arr = np.array(values, dtype=INDEX_DTYPE)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidSolution(f"Component table must be square, got shape {arr.shape}")
    size = arr.shape[0] if n is None else n
    if arr.shape[0] != size:
        raise InvalidSolution(f"Component tables have different sizes: {arr.shape[0]} and {size}")
    if arr.size and ((arr < 0) | (arr >= size)).any():
        raise InvalidSolution("Component table entry out of range")
    return arr


def _component_counterexample(F: np.ndarray, Gt: np.ndarray) -> Optional[Tuple[int, Tuple[int, int, int]]]:
    n = F.shape[0]
    gT = Gt.T
    for x in range(n):
        v = Gt[:, x]
        lhs1 = F[x][F]
        rhs1 = F[F[x][:, None], F[v]]
        lhs2 = Gt[np.arange(n)[None, :], Gt[:, x][:, None]]
        rhs2 = Gt[gT, Gt[F, x]]
        lhs3 = F[Gt[F, x], gT]
        rhs3 = Gt[F[v], F[x][:, None]]
        for number, (lhs, rhs) in enumerate(((lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3)), start=1):
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                y, z = (int(t) for t in bad[0])
                return number, (x, y, z)
    return None


def _braid_counterexample(F: np.ndarray, Gt: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """Compare r1 r2 r1 with r2 r1 r2 directly on X³."""
    n = F.shape[0]
    idx = np.arange(n)
    y = np.broadcast_to(idx[:, None], (n, n))
    z = np.broadcast_to(idx[None, :], (n, n))

    def r1(a, b, c):
        return F[a, b], Gt[b, a], c

    def r2(a, b, c):
        return a, F[b, c], Gt[c, b]

    for x in range(n):
        a = np.full((n, n), x)
        left = r1(*r2(*r1(a, y, z)))
        right = r2(*r1(*r2(a, y, z)))
        mismatch = np.zeros((n, n), dtype=bool)
        for u, w in zip(left, right):
            mismatch |= u != w
        bad = np.argwhere(mismatch)
        if bad.size:
            return (x, int(bad[0][0]), int(bad[0][1]))
    return None


def verify_ybe(F, Gt) -> YBEReport:
    """
    Check the braid relation for r(x,y) = (F[x][y], Gt[y][x]).

    The three component equations are evaluated and cross-checked against direct composition
    of r×id and id×r on X³.
    """
    F = np.asarray(F)
    Gt = np.asarray(Gt)
    found = _component_counterexample(F, Gt)
    direct = _braid_counterexample(F, Gt)
    if (found is None) != (direct is None):
        raise AssertionError("Component equations disagree with direct braid composition")
    if found is None:
        return YBEReport(True)
    equation, triple = found
    return YBEReport(False, triple, equation)


class Solution:
    """
    A solution on X = {0..n-1}: F[x][y] = f_x(y), Gt[y][x] = g_y(x).

    r must be a bijection of X×X satisfying the braid relation; both are checked on construction.
    """

    def __init__(self, f, g):
        F = _as_table(f)
        Gt = _as_table(g, F.shape[0])
        n = F.shape[0]
        codes = F.astype(np.int64) * n + Gt.T
        if np.unique(codes).size != n * n:
            raise InvalidSolution("r is not a bijection of X × X")
        report = verify_ybe(F, Gt)
        if not report:
            raise InvalidSolution(
                f"Yang-Baxter equation fails (component equation {report.equation}) at {report.counterexample}"
            )
        F.flags.writeable = False
        Gt.flags.writeable = False
        self.size = n
        self.F = F
        self.Gt = Gt

    def __repr__(self) -> str:
        return f"Solution(size={self.size})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Solution):
            return NotImplemented
        return np.array_equal(self.F, other.F) and np.array_equal(self.Gt, other.Gt)

    def __hash__(self) -> int:
        return hash((self.size, self.F.tobytes(), self.Gt.tobytes()))

    def f(self, x: int) -> Permutation:
        return tuple(int(v) for v in self.F[x])

    def g(self, y: int) -> Permutation:
        return tuple(int(v) for v in self.Gt[y])

    def r(self, x: int, y: int) -> Tuple[int, int]:
        return int(self.F[x, y]), int(self.Gt[y, x])

    def sort_key(self) -> Tuple:
        return (self.size, self.F.tolist(), self.Gt.tolist())


def flip_solution(n: int) -> Solution:
    """r(x,y) = (y,x)."""
    idx = np.arange(n)
    return Solution(np.tile(idx, (n, 1)), np.tile(idx, (n, 1)))


def identity_solution(n: int) -> Solution:
    """r(x,y) = (x,y); degenerate for n > 1."""
    idx = np.arange(n)
    return Solution(np.tile(idx[:, None], (1, n)), np.tile(idx[:, None], (1, n)))


def _rows_are_permutations(table: np.ndarray) -> bool:
    n = table.shape[1]
    return bool((np.sort(table, axis=1) == np.arange(n)).all())


def is_nondegenerate(S: Solution) -> bool:
    return _rows_are_permutations(S.F) and _rows_are_permutations(S.Gt)


def is_involutive(S: Solution) -> bool:
    """r∘r = id, i.e. f_{f_x(y)} g_y(x) = x and g_{g_y(x)} f_x(y) = y."""
    n = S.size
    idx = np.arange(n)
    U = S.F
    V = S.Gt.T
    return bool((S.F[U, V] == idx[:, None]).all() and (S.Gt[V, U] == idx[None, :]).all())


def is_square_free(S: Solution) -> bool:
    idx = np.arange(S.size)
    return bool((S.F[idx, idx] == idx).all() and (S.Gt[idx, idx] == idx).all())


def inverse_rows(table: np.ndarray) -> np.ndarray:
    """Row-wise inverse permutations."""
    return np.argsort(table, axis=1).astype(INDEX_DTYPE)


def require_nondegenerate(S: Solution) -> None:
    if not is_nondegenerate(S):
        raise NondegenerateRequired("The solution is degenerate")


def gtilde_table(S: Solution) -> np.ndarray:
    """gt[x, y] = g̃_x(y) = g_{f_y^{-1}(x)}(y)."""
    require_nondegenerate(S)
    finv = inverse_rows(S.F)
    idx = np.arange(S.size)
    return S.Gt[finv.T, idx[None, :]]


def gtilde(S: Solution, x: int) -> Permutation:
    return tuple(int(v) for v in gtilde_table(S)[x])


@dataclass(frozen=True, eq=False)
class PermBraceResult:
    """The brace 𝒢(X,r); element k is the pair pair_of[k], generator π_x is element gen_of[x]."""

    brace: SkewBrace
    gen_of: Tuple[int, ...]
    pair_of: Tuple[Tuple[Permutation, Permutation], ...]


def permutation_brace(S: Solution) -> PermBraceResult:
    """
    Reconstruct 𝒢(X,r) = ⟨(f_x, g̃_x^{-1})⟩ with its skew brace structure.

    The product is componentwise composition. The star product is assembled from
    m ⋆ π_y = m · π_{f_m^{-1}(y)} along breadth-first ⋆-words from the identity.

    Raises:
        NondegenerateRequired: If some f_x or g_y is not bijective
    """
    require_nondegenerate(S)
    n = S.size
    gen_first = S.F
    gen_second = inverse_rows(gtilde_table(S))

    identity = tuple(range(n)) * 2
    index: Dict[Tuple[int, ...], int] = {identity: 0}
    firsts: List[np.ndarray] = [np.arange(n)]
    seconds: List[np.ndarray] = [np.arange(n)]
    frontier = [0]
    while frontier:
        fresh = []
        for k in frontier:
            p, q = firsts[k], seconds[k]
            for x in range(n):
                a = p[gen_first[x]]
                b = q[gen_second[x]]
                key = tuple(a.tolist()) + tuple(b.tolist())
                if key not in index:
                    index[key] = len(firsts)
                    firsts.append(a)
                    seconds.append(b)
                    fresh.append(index[key])
        frontier = fresh

    size = len(firsts)
    P1 = np.asarray(firsts, dtype=np.intp)
    P2 = np.asarray(seconds, dtype=np.intp)
    gen_of = np.asarray(
        [index[tuple(gen_first[x].tolist()) + tuple(gen_second[x].tolist())] for x in range(n)],
        dtype=np.intp,
    )

    dot = np.empty((size, size), dtype=INDEX_DTYPE)
    for i in range(size):
        left = P1[i][P1]
        right = P2[i][P2]
        for j in range(size):
            dot[i, j] = index[tuple(left[j].tolist()) + tuple(right[j].tolist())]

    P1inv = inverse_rows(P1)
    parent: Dict[int, Tuple[int, int]] = {}
    order = [0]
    seen = np.zeros(size, dtype=bool)
    seen[0] = True
    head = 0
    while head < len(order):
        w = order[head]
        head += 1
        for y in range(n):
            t = int(dot[w, gen_of[P1inv[w, y]]])
            if not seen[t]:
                seen[t] = True
                parent[t] = (w, y)
                order.append(t)
    if not seen.all():
        raise AssertionError("The ⋆-closure of the generators differs from the multiplicative group")

    star = np.empty((size, size), dtype=INDEX_DTYPE)
    star[:, 0] = np.arange(size)
    for t in order[1:]:
        w, y = parent[t]
        s = star[:, w]
        star[:, t] = dot[s, gen_of[P1inv[s, y]]]

    brace = brace_from_tables(star, dot)
    pairs = tuple(
        (tuple(int(v) for v in P1[k]), tuple(int(v) for v in P2[k])) for k in range(size)
    )
    logger.debug(f"Permutation brace of a size-{n} solution has order {size}")
    return PermBraceResult(brace, tuple(int(v) for v in gen_of), pairs)


def require_involutive(S: Solution) -> None:
    if not (is_nondegenerate(S) and is_involutive(S)):
        raise InvolutiveRequired("Retraction needs an involutive non-degenerate solution")


def retraction_classes(S: Solution) -> Tuple[int, ...]:
    """class_of[x] for x ~ y iff f_x = f_y; classes numbered by their minimal element."""
    require_involutive(S)
    _, first, inverse = np.unique(S.F, axis=0, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return tuple(int(rank[c]) for c in np.asarray(inverse).ravel())


def retraction(S: Solution) -> Solution:
    """Ret(X,r): the induced solution on the classes of x ~ y iff f_x = f_y."""
    class_of = np.asarray(retraction_classes(S), dtype=np.intp)
    m = int(class_of.max()) + 1
    reps = np.asarray([int(np.flatnonzero(class_of == c)[0]) for c in range(m)], dtype=np.intp)
    F = class_of[S.F[np.ix_(reps, reps)]]
    Gt = class_of[S.Gt[np.ix_(reps, reps)]]
    return Solution(F, Gt)


def is_irretractable(S: Solution) -> bool:
    require_involutive(S)
    return np.unique(S.F, axis=0).shape[0] == S.size


def multipermutation_level(S: Solution) -> Optional[int]:
    """Number of retractions needed to reach one point, or None if the retraction stabilises earlier."""
    level = 0
    current = S
    while current.size > 1:
        reduced = retraction(current)
        if reduced.size == current.size:
            return None
        current = reduced
        level += 1
    return level


def associated_solution(B: SkewBrace) -> Solution:
    """
    r_B(a,b) = (λ_a(b), λ^{-1}_{λ_a(b)}(a)) for a left brace.

    Raises:
        NotALeftBrace: If (B, ⋆) is not abelian
    """
    if not B.is_left:
        raise NotALeftBrace("The associated involutive solution needs an abelian star group")
    lam = B.lam
    laminv = inverse_rows(lam)
    idx = np.arange(B.order)
    by_ab = laminv[lam, idx[:, None]]
    return Solution(lam, by_ab.T)


def skew_associated_solution(B: SkewBrace) -> Solution:
    """r(a,b) = (λ_a(b), γ_b(a))."""
    return Solution(B.lam, B.gam)


def is_morphism(S1: Solution, S2: Solution, phi: Sequence[int]) -> bool:
    """(φ×φ)∘r1 = r2∘(φ×φ)."""
    p = np.asarray(phi, dtype=np.intp)
    return bool(
        np.array_equal(p[S1.F], S2.F[np.ix_(p, p)]) and np.array_equal(p[S1.Gt], S2.Gt[np.ix_(p, p)])
    )


def solution_profile(S: Solution) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    return [(cycle_type(S.F[x].tolist()), cycle_type(S.Gt[x].tolist())) for x in range(S.size)]


def solution_isomorphism(S1: Solution, S2: Solution) -> Optional[Permutation]:
    """
    Lexicographically least bijection φ with φ(f_x(y)) = f'_{φ(x)}(φ(y)) and
    φ(g_y(x)) = g'_{φ(y)}(φ(x)), or None.
    """
    if S1.size != S2.size:
        return None
    n = S1.size
    p1 = solution_profile(S1)
    p2 = solution_profile(S2)
    if sorted(p1) != sorted(p2):
        return None
    F1, G1 = S1.F.tolist(), S1.Gt.tolist()
    F2, G2 = S2.F.tolist(), S2.Gt.tolist()

    def assign(mapping: List[int], used: List[bool], x: int, y: int) -> bool:
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if mapping[a] >= 0:
                if mapping[a] != b:
                    return False
                continue
            if used[b] or p1[a] != p2[b]:
                return False
            mapping[a] = b
            used[b] = True
            for c in range(n):
                mc = mapping[c]
                if mc < 0:
                    continue
                stack.append((F1[a][c], F2[b][mc]))
                stack.append((F1[c][a], F2[mc][b]))
                stack.append((G1[c][a], G2[mc][b]))
                stack.append((G1[a][c], G2[b][mc]))
        return True

    def search(mapping: List[int], used: List[bool]) -> Optional[Permutation]:
        try:
            x = mapping.index(-1)
        except ValueError:
            return tuple(mapping) if is_morphism(S1, S2, mapping) else None
        for y in range(n):
            if used[y] or p1[x] != p2[y]:
                continue
            trial, trial_used = list(mapping), list(used)
            if assign(trial, trial_used, x, y):
                found = search(trial, trial_used)
                if found is not None:
                    return found
        return None

    return search([-1] * n, [False] * n)


def relabel_solution(S: Solution, phi: Sequence[int]) -> Solution:
    """The isomorphic copy (φ×φ) r (φ×φ)^{-1}."""
    p = np.asarray(phi, dtype=np.intp)
    pinv = np.argsort(p)
    F = p[S.F[np.ix_(pinv, pinv)]]
    Gt = p[S.Gt[np.ix_(pinv, pinv)]]
    return Solution(F, Gt)
