from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial over lengths, coefficients lowest degree first.

    ``Polynomial((0, 2))`` is ``p(n) = 2n``.
    """

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = tuple(int(c) for c in coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs or (0,))

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Parse a comma-separated coefficient list such as ``"0,2"``."""
        return cls(int(t) for t in text.split(",") if t.strip())

    def __call__(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_strictly_increasing(self) -> bool:
        # Sufficient on the naturals: nonnegative coefficients, some positive
        # non-constant term.
        return all(c >= 0 for c in self.coeffs) and any(c > 0 for c in self.coeffs[1:])

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner(n))``."""
        result = Polynomial((0,))
        for c in reversed(self.coeffs):
            result = result._mul(inner)._add(Polynomial((c,)))
        return result

    def _add(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def _mul(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Polynomial(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self._add(other)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0 and len(self.coeffs) > 1:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}n" if c != 1 else "n")
            else:
                terms.append(f"{c}n^{i}" if c != 1 else f"n^{i}")
        return " + ".join(reversed(terms))

    def to_list(self) -> list:
        return list(self.coeffs)
