# ABOUTME: Constructors for named example braces with fixed element codings
# ABOUTME: The cyclic flip brace, the order-21 brace and the (Z/2)^6 brace with trivial socle

from typing import Callable, Dict, List

import numpy as np

from .braces import SkewBrace, brace_from_tables, opposite_brace_construction, trivial_brace
from .standard import named_group


def cyclic_flip_brace(n: int) -> SkewBrace:
    """
    Brace of order 2n on γ^a (coded a): dot is Z/(2n), γ^a ⋆ γ^b = γ^{(-1)^b a + b}.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = 2 * n
    idx = np.arange(size)
    sign = np.where(idx % 2 == 1, -1, 1)
    star = (sign[None, :] * idx[:, None] + idx[None, :]) % size
    dot = (idx[:, None] + idx[None, :]) % size
    return brace_from_tables(star, dot)


def order21_element(a: int, b: int) -> int:
    """Code of σ^a ⋆ τ^b (a mod 7, b mod 3)."""
    return (a % 7) * 3 + (b % 3)


def order21_brace() -> SkewBrace:
    """
    Brace of order 21 with τ ⋆ σ = σ² ⋆ τ and
    (σ^a⋆τ^b)·(σ^i⋆τ^j) = σ^{a + 4^b i} ⋆ τ^{b+j}.
    """
    codes = np.arange(21)
    a, b = codes // 3, codes % 3
    twist_star = (2 ** b)[:, None]
    twist_dot = (4 ** b)[:, None]
    j = (b[:, None] + b[None, :]) % 3
    star = ((a[:, None] + twist_star * a[None, :]) % 7) * 3 + j
    dot = ((a[:, None] + twist_dot * a[None, :]) % 7) * 3 + j
    return brace_from_tables(star, dot)


def _bits(codes: np.ndarray, k: int) -> np.ndarray:
    return (codes >> (k - 1)) & 1


def vendramin_lambda() -> np.ndarray:
    """
    lam[y, z] for the left brace on (Z/2)^6, element y coded Σ y_k 2^{k-1}.

    λ_y acts on column vectors z by the unitriangular matrix with
    row 1: (1, y3, y2 + y3·A, 0, 0, 0), row 2: (0, 1, A, 0, 0, 0),
    row 4: (0, 0, 0, 1, y6, y5 + y6·c), row 5: (0, 0, 0, 0, 1, c),
    where A = y4 + y5 + y5·y6 and c = y1 + y2 + y2·y3.
    """
    codes = np.arange(64)
    y = {k: _bits(codes, k)[:, None] for k in range(1, 7)}
    z = {k: _bits(codes, k)[None, :] for k in range(1, 7)}
    A = (y[4] + y[5] + y[5] * y[6]) % 2
    B = (y[2] + y[3] * A) % 2
    c = (y[1] + y[2] + y[2] * y[3]) % 2
    out = {
        1: z[1] + y[3] * z[2] + B * z[3],
        2: z[2] + A * z[3],
        3: z[3] + 0 * y[1],
        4: z[4] + y[6] * z[5] + (y[5] + y[6] * c) * z[6],
        5: z[5] + c * z[6],
        6: z[6] + 0 * y[1],
    }
    return sum((out[k] % 2) << (k - 1) for k in range(1, 7))


def vendramin_brace() -> SkewBrace:
    """Left brace of order 64: star is XOR, a·b = a ⋆ λ_a(b); trivial socle."""
    codes = np.arange(64)
    star = codes[:, None] ^ codes[None, :]
    dot = codes[:, None] ^ vendramin_lambda()
    return brace_from_tables(star, dot)


def vector_code(*bits: int) -> int:
    """Code of (y1, ..., y6) for the order-64 brace."""
    return sum(int(v) << k for k, v in enumerate(bits))


def _trivial_z2() -> SkewBrace:
    return trivial_brace(named_group("z2"))


def _opposite_s3() -> SkewBrace:
    return opposite_brace_construction(named_group("s3"))


_NAMED_BRACES: Dict[str, Callable[[], SkewBrace]] = {
    "trivial": _trivial_z2,
    "opposite": _opposite_s3,
    "cyclic-flip": lambda: cyclic_flip_brace(2),
    "order21": order21_brace,
    "vendramin": vendramin_brace,
}


def brace_names() -> List[str]:
    return list(_NAMED_BRACES)


def named_brace(name: str) -> SkewBrace:
    """
    Built-in example brace: trivial (on Z/2), opposite (on S3), cyclic-flip (order 4),
    order21 or vendramin.

    Raises:
        KeyError: For an unknown name
    """
    try:
        factory = _NAMED_BRACES[name]
    except KeyError:
        raise KeyError(f"Unknown brace {name!r}; choose from {', '.join(_NAMED_BRACES)}") from None
    return factory()
