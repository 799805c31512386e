"""Bijective pairing of binary strings.

Strings are numbered dyadically (bijective base 2 with digits ``0 -> 1`` and
``1 -> 2``), so ``ε, 0, 1, 00, 01, ...`` map to ``0, 1, 2, 3, 4, ...``. That
numbering is an order isomorphism between length-lex order and the naturals.
Pairs of naturals use the triangular (Cantor) pairing
``π(k1, k2) = (k1 + k2)(k1 + k2 + 1)/2 + k2``, which is strictly increasing
in each argument. The composite is therefore a total bijection
``Σ* × Σ* -> Σ*`` that is strictly increasing in each argument.

Size bounds, with ``q(n) = 2n``::

    |encode(x, y)| <= q(|x| + |y|)      and      |x| + |y| <= q(|encode(x, y)|)

The second is loose: ``|x| + |y| <= |encode(x, y)|`` already holds. Both
are checked exhaustively for short strings and by sampling beyond that.
"""

from __future__ import annotations

from math import isqrt
from typing import Tuple

from .poly import Polynomial

SIZE_BOUND = Polynomial((0, 2))


def string_to_nat(s: str) -> int:
    n = 0
    for ch in s:
        n = 2 * n + (1 if ch == "0" else 2)
    return n


def nat_to_string(n: int) -> str:
    if n < 0:
        raise ValueError("negative index")
    digits = []
    while n > 0:
        n, r = divmod(n - 1, 2)
        digits.append("01"[r])
    return "".join(reversed(digits))


def cantor_pair(k1: int, k2: int) -> int:
    s = k1 + k2
    return s * (s + 1) // 2 + k2


def cantor_unpair(n: int) -> Tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    k2 = n - s * (s + 1) // 2
    return s - k2, k2


def pair_encode(x: str, y: str) -> str:
    return nat_to_string(cantor_pair(string_to_nat(x), string_to_nat(y)))


def pair_decode(z: str) -> Tuple[str, str]:
    k1, k2 = cantor_unpair(string_to_nat(z))
    return nat_to_string(k1), nat_to_string(k2)


class PairingCodec:
    """Namespace object bundling the codec with its size polynomial."""

    q = SIZE_BOUND

    @staticmethod
    def encode(x: str, y: str) -> str:
        return pair_encode(x, y)

    @staticmethod
    def decode(z: str) -> Tuple[str, str]:
        return pair_decode(z)
