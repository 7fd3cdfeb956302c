# ABOUTME: Isomorphism certificates between construction specs: brace map, orbit and family matchings, witnesses
# ABOUTME: Checks certificates, turns them into explicit solution isomorphisms, and searches for them

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .braces import SkewBrace, brace_isomorphisms
from .constructor import ConstructionSpec, build_solution, theta_orbits
from .groups import SubgroupHandle, left_cosets
from .permutations import Permutation
from .solutions import is_morphism

logger = logging.getLogger(__name__)

Witness = Tuple[int, int]


class CertificateInvalid(ValueError):
    def __init__(self, equation: str, i: int, j: int):
        self.equation = equation
        self.i = i
        self.j = j
        super().__init__(f"Certificate fails '{equation}' at block ({i}, {j})")


@dataclass(frozen=True)
class IsoCertificate:
    """
    psi: brace isomorphism B1 -> B2; alpha[i]: matched orbit index of spec2;
    beta[i][j]: matched family index; witnesses[i][j] = (y, z) in B2.
    """

    psi: Permutation
    alpha: Tuple[int, ...]
    beta: Tuple[Tuple[int, ...], ...]
    witnesses: Tuple[Tuple[Witness, ...], ...]


def identity_certificate(spec: ConstructionSpec) -> IsoCertificate:
    return IsoCertificate(
        tuple(range(spec.brace.order)),
        tuple(range(len(spec.reps))),
        tuple(tuple(range(len(fam))) for fam in spec.families),
        tuple(tuple((0, 0) for _ in fam) for fam in spec.families),
    )


def _pair_map(B2: SkewBrace, psi: Sequence[int]) -> np.ndarray:
    """ψ×ψ on pair codes of G1 -> G2."""
    n = B2.order
    p = np.asarray(psi, dtype=np.intp)
    codes = np.arange(n * n)
    return p[codes // n] * n + p[codes % n]


def _is_bijection(values: Sequence[int], size: int) -> bool:
    return sorted(values) == list(range(size))


def _conjugate(spec: ConstructionSpec, w: int, K: SubgroupHandle) -> Tuple[int, ...]:
    G = spec.group
    return tuple(int(v) for v in np.sort(G.table[G.table[w, K.array], G.inverses[w]]))


def check_iso_certificate(spec1: ConstructionSpec, spec2: ConstructionSpec, cert: IsoCertificate) -> bool:
    """
    Verify ψ(a_i) = Θ_w(a'_{α(i)}) and (ψ×ψ)(K_{i,j}) = w L_{α(i),β_i(j)} w^{-1} with w = witnesses[i][j],
    then check that the certified map is a solution isomorphism.

    Raises:
        CertificateInvalid: Naming the failed equation and block
    """
    B1, B2 = spec1.brace, spec2.brace
    n = B1.order
    psi = np.asarray(cert.psi, dtype=np.intp)
    if B2.order != n or not _is_bijection(cert.psi, n):
        raise CertificateInvalid("psi", -1, -1)
    for t1, t2 in ((B1.star.table, B2.star.table), (B1.dot.table, B2.dot.table)):
        if not np.array_equal(psi[t1], t2[np.ix_(psi, psi)]):
            raise CertificateInvalid("psi", -1, -1)
    if len(cert.alpha) != len(spec1.reps) or not _is_bijection(cert.alpha, len(spec2.reps)):
        raise CertificateInvalid("alpha", -1, -1)
    pair = _pair_map(B2, cert.psi)
    for i, fam in enumerate(spec1.families):
        target = spec2.families[cert.alpha[i]]
        if len(cert.beta[i]) != len(fam) or not _is_bijection(cert.beta[i], len(target)):
            raise CertificateInvalid("beta", i, -1)
        for j, K in enumerate(fam):
            y, z = cert.witnesses[i][j]
            w = spec2.brace.semidirect.encode(y, z)
            if int(psi[spec1.reps[i]]) != int(B2.theta.perm_of[w, spec2.reps[cert.alpha[i]]]):
                raise CertificateInvalid("representative", i, j)
            image = tuple(int(v) for v in np.sort(pair[K.array]))
            if image != _conjugate(spec2, w, target[cert.beta[i][j]]):
                raise CertificateInvalid("subgroup", i, j)
    phi = certified_map(spec1, spec2, cert)
    S1 = build_solution(spec1, verify=False).solution
    S2 = build_solution(spec2, verify=False).solution
    if not is_morphism(S1, S2, phi):
        raise AssertionError("Certified map is not a solution isomorphism")
    return True


def certified_map(spec1: ConstructionSpec, spec2: ConstructionSpec, cert: IsoCertificate) -> Permutation:
    """F((b,c)K_{i,j}) = (ψ(b),ψ(c))·w·L_{α(i),β_i(j)} on the canonical point labelling."""
    G2 = spec2.group
    pair = _pair_map(spec2.brace, cert.psi)
    offsets: Dict[Tuple[int, int], int] = {}
    spaces = {}
    offset = 0
    for i, j, L in spec2.blocks():
        offsets[(i, j)] = offset
        spaces[(i, j)] = left_cosets(G2, L)
        offset += spaces[(i, j)].size
    images: List[int] = []
    for i, j, K in spec1.blocks():
        w = spec2.brace.semidirect.encode(*cert.witnesses[i][j])
        key = (cert.alpha[i], cert.beta[i][j])
        space = spaces[key]
        for rep in left_cosets(spec1.group, K).reps:
            moved = G2.multiply(int(pair[rep]), w)
            images.append(offsets[key] + space.coset_of(moved))
    return tuple(images)


def _witness_for(
    spec1: ConstructionSpec, spec2: ConstructionSpec, pair: np.ndarray, psi: np.ndarray, i: int, i2: int,
    K: SubgroupHandle, L: SubgroupHandle,
) -> Optional[Witness]:
    target = int(psi[spec1.reps[i]])
    image = tuple(int(v) for v in np.sort(pair[K.array]))
    if len(image) != L.order:
        return None
    for w in np.flatnonzero(spec2.brace.theta.perm_of[:, spec2.reps[i2]] == target):
        if _conjugate(spec2, int(w), L) == image:
            return spec2.brace.semidirect.decode(int(w))
    return None


def find_iso_certificate(spec1: ConstructionSpec, spec2: ConstructionSpec) -> Optional[IsoCertificate]:
    """
    Search ψ over brace isomorphisms, α forced by the Θ-orbits, β over family matchings and
    witnesses by scanning G; return the first certificate found.
    """
    if len(spec1.reps) != len(spec2.reps) or spec1.brace.order != spec2.brace.order:
        return None
    orbit_of: Dict[int, int] = {}
    for orb in theta_orbits(spec2.brace):
        for x in orb:
            orbit_of[x] = orb[0]
    position = {orbit_of[a]: i2 for i2, a in enumerate(spec2.reps)}
    for psi in brace_isomorphisms(spec1.brace, spec2.brace):
        psi_arr = np.asarray(psi, dtype=np.intp)
        alpha = []
        for a in spec1.reps:
            i2 = position.get(orbit_of[int(psi_arr[a])])
            if i2 is None:
                break
            alpha.append(i2)
        if len(alpha) != len(spec1.reps) or len(set(alpha)) != len(alpha):
            continue
        if any(len(spec1.families[i]) != len(spec2.families[alpha[i]]) for i in range(len(alpha))):
            continue
        pair = _pair_map(spec2.brace, psi)
        per_orbit = []
        for i, fam in enumerate(spec1.families):
            target = spec2.families[alpha[i]]
            options = []
            for beta in permutations(range(len(target))):
                witnesses = []
                for j, K in enumerate(fam):
                    w = _witness_for(spec1, spec2, pair, psi_arr, i, alpha[i], K, target[beta[j]])
                    if w is None:
                        break
                    witnesses.append(w)
                if len(witnesses) == len(fam):
                    options.append((tuple(beta), tuple(witnesses)))
                    break
            if not options:
                break
            per_orbit.append(options[0])
        if len(per_orbit) != len(spec1.families):
            continue
        cert = IsoCertificate(
            tuple(psi),
            tuple(alpha),
            tuple(beta for beta, _ in per_orbit),
            tuple(ws for _, ws in per_orbit),
        )
        logger.debug(f"Found an isomorphism certificate between specs of size {spec1.size}")
        return cert
    return None
