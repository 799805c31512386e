"""Baseline functions and the table of properties each gallery function should have."""

from __future__ import annotations

from .partialfn import PartialBinaryFn


def concat_fn() -> PartialBinaryFn:
    return PartialBinaryFn("concat", lambda a, b: a + b)


def addmod_fn(width: int = 4) -> PartialBinaryFn:
    """Addition mod ``2**width`` on ``width``-bit strings, undefined on other lengths."""

    def add(a: str, b: str):
        if len(a) != width or len(b) != width:
            return None
        return format((int(a, 2) + int(b, 2)) % (1 << width), f"0{width}b")

    return PartialBinaryFn(f"addmod{width}", add)


def bitstrings(width: int):
    return [format(i, f"0{width}b") for i in range(1 << width)]


# Properties each gallery function is expected to show on its default base.
# Missing entries are reported but not asserted.
EXPECTATIONS = {
    "prop3": {
        "total": False,
        "weaklyAssociative": True,
        "associative": False,
        "commutative": False,
    },
    "sigma": {
        "total": False,
        "weaklyAssociative": True,
        "associative": True,
        "commutative": True,
        "honest": True,
    },
    "tau": {
        "total": True,
        "weaklyAssociative": True,
        "associative": True,
        "commutative": True,
        "honest": True,
        "injective": False,
    },
    "sigma-tilde": {
        "total": False,
        "weaklyAssociative": True,
        "associative": False,
        "commutative": True,
    },
    "tau-tilde": {
        "total": True,
        "weaklyAssociative": False,
        "associative": False,
        "commutative": True,
    },
    "sigma-injective": {
        "total": False,
        "weaklyAssociative": True,
        "associative": True,
        "injective": True,
        "unorderedInjective": True,
    },
    "concat": {
        "total": True,
        "weaklyAssociative": True,
        "associative": True,
        "commutative": False,
    },
    "addmod": {
        "total": True,
        "weaklyAssociative": True,
        "associative": True,
        "commutative": True,
    },
}
