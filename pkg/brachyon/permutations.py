# ABOUTME: Permutation helpers on tuples of indices
# ABOUTME: Composition, inversion, validation and cycle notation for Sym_X elements

from typing import Iterable, List, Sequence, Tuple

Permutation = Tuple[int, ...]


def identity_permutation(n: int) -> Permutation:
    """Return the identity permutation of degree n."""
    return tuple(range(n))


def is_permutation(images: Sequence[int]) -> bool:
    """Check that images is a bijection on {0..n-1}."""
    n = len(images)
    seen = [False] * n
    for value in images:
        value = int(value)
        if value < 0 or value >= n or seen[value]:
            return False
        seen[value] = True
    return True


def as_permutation(images: Iterable[int]) -> Permutation:
    """
    Convert a sequence of images into a validated Permutation.

    Raises:
        ValueError: If the images do not form a bijection
    """
    result = tuple(int(v) for v in images)
    if not is_permutation(result):
        raise ValueError(f"Not a permutation: {list(result)}")
    return result


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Return p ∘ q (apply q first, then p)."""
    if len(p) != len(q):
        raise ValueError("Permutation degrees must match")
    return tuple(int(p[int(i)]) for i in q)


def invert(p: Sequence[int]) -> Permutation:
    """Return the inverse permutation."""
    result = [0] * len(p)
    for i, v in enumerate(p):
        result[int(v)] = i
    return tuple(result)


def cycles(p: Sequence[int]) -> List[Tuple[int, ...]]:
    """Return the non-trivial cycles of p, each starting at its smallest point."""
    seen = set()
    result = []
    for start in range(len(p)):
        if start in seen:
            continue
        cycle = []
        point = start
        while point not in seen:
            seen.add(point)
            cycle.append(point)
            point = int(p[point])
        if len(cycle) > 1:
            result.append(tuple(cycle))
    return result


def cycle_type(p: Sequence[int]) -> Tuple[int, ...]:
    """Sorted multiset of cycle lengths, fixed points included."""
    seen = set()
    lengths = []
    for start in range(len(p)):
        if start in seen:
            continue
        length = 0
        point = start
        while point not in seen:
            seen.add(point)
            length += 1
            point = int(p[point])
        lengths.append(length)
    return tuple(sorted(lengths))


def cycle_notation(p: Sequence[int]) -> str:
    """Format p in cycle notation, e.g. '(0 1)(2 3)'; the identity prints as '()'."""
    parts = ["(" + " ".join(str(i) for i in c) + ")" for c in cycles(p)]
    return "".join(parts) if parts else "()"
