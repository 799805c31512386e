"""Partial binary functions over binary strings.

Values are plain ``str`` objects over ``{"0", "1"}``. A base-level
application that is undefined returns ``None``; at the extended level the
distinguished :data:`BOTTOM` element plays that role. ``BOTTOM`` is not a
string, so it can never collide with a real value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, FrozenSet, Iterable, Iterator, Optional, Tuple, Union


class _Bottom:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "⊥"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()

ExtVal = Union[str, _Bottom]
Pair = Tuple[str, str]


def is_bitstring(s: object) -> bool:
    return isinstance(s, str) and all(ch in "01" for ch in s)


def lenlex_key(s: str) -> Tuple[int, str]:
    """Sort key for length-lexicographic order (shorter first)."""
    return (len(s), s)


def lenlex_min(*strings: str) -> str:
    return min(strings, key=lenlex_key)


def strings_of_length(n: int) -> Iterator[str]:
    for bits in product("01", repeat=n):
        yield "".join(bits)


def strings_upto(max_len: int) -> Iterator[str]:
    """All strings of length at most ``max_len`` in length-lex order."""
    for n in range(max_len + 1):
        yield from strings_of_length(n)


def normalize_base(base: Iterable[str]) -> Tuple[str, ...]:
    """Deduplicate and sort a base set into the canonical enumeration order."""
    items = set(base)
    for s in items:
        if not is_bitstring(s):
            raise ValueError(f"not a binary string: {s!r}")
    return tuple(sorted(items, key=lenlex_key))


@dataclass(frozen=True, eq=False)
class PartialBinaryFn:
    """An evaluable partial map ``Σ* × Σ* ⇀ Σ*``.

    ``func`` returns ``None`` outside the domain. ``domain_hint``, when
    given, is a finite set of pairs that contains every defined pair whose
    components have length at most ``hint_bound``; checkers use it to skip
    enumerating the (mostly undefined) full product. Instances compare by
    identity.
    """

    name: str
    func: Callable[[str, str], Optional[str]]
    domain_hint: Optional[FrozenSet[Pair]] = None
    hint_bound: Optional[int] = None

    def __call__(self, a: str, b: str) -> Optional[str]:
        return self.func(a, b)

    def hint_covers(self, a: str, b: str) -> bool:
        if self.domain_hint is None:
            return False
        if self.hint_bound is None:
            return True
        return len(a) <= self.hint_bound and len(b) <= self.hint_bound

    def __repr__(self) -> str:
        return f"PartialBinaryFn({self.name!r})"


def table_function(name: str, table: dict) -> PartialBinaryFn:
    """Finite lookup-table function; undefined off the table."""
    frozen = dict(table)
    return PartialBinaryFn(name, lambda a, b: frozen.get((a, b)), frozenset(frozen))


def eval(f: PartialBinaryFn, a: str, b: str) -> Optional[str]:  # noqa: A001
    """Apply ``f``; ``None`` means ``(a, b)`` is outside the domain."""
    return f(a, b)


def eval_ext(f: PartialBinaryFn, u: ExtVal, v: ExtVal) -> ExtVal:
    """The ⊥-extension: ⊥ if either side is ⊥ or the pair is undefined."""
    if u is BOTTOM or v is BOTTOM:
        return BOTTOM
    r = f(u, v)
    return BOTTOM if r is None else r


def lift(value: Optional[str]) -> ExtVal:
    return BOTTOM if value is None else value


def complete_equal(lhs: ExtVal, rhs: ExtVal) -> bool:
    """Kleene complete equality: both ⊥, or both defined and identical."""
    if lhs is BOTTOM or rhs is BOTTOM:
        return lhs is rhs
    return lhs == rhs


def weak_equal(lhs: Optional[str], rhs: Optional[str]) -> Optional[bool]:
    """Kleene weak equality; undefined (``None``) if either side is."""
    if lhs is None or rhs is None:
        return None
    return lhs == rhs


def show(v: Union[ExtVal, None]) -> str:
    """Render a value for reports: ``ε`` for the empty string, ``⊥`` for bottom."""
    if v is None or v is BOTTOM:
        return "⊥"
    return v if v else "ε"
