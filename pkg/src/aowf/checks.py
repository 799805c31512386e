"""Exhaustive property checks for partial binary functions over a finite base.

Every checker walks its tuples in a fixed order (base sorted length-lex,
first coordinate outermost) and stops at the first violation, so the
reported counterexample is deterministic. Failing verdicts carry enough
data to be replayed with :func:`reproduces`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .pairing import pair_decode, pair_encode
from .partialfn import (
    BOTTOM,
    PartialBinaryFn,
    complete_equal,
    eval_ext,
    lenlex_key,
    normalize_base,
    strings_upto,
)
from .poly import Polynomial

ONE_WAYNESS_STATUS = "not decidable at desk scale"
STRONGNESS_STATUS = "unverifiable"


@dataclass(frozen=True)
class Verdict:
    property: str
    holds: bool
    counterexample: Optional[tuple] = None
    checked_count: int = 0
    note: str = ""

    def __post_init__(self):
        if not self.holds and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "counterexample": (
                None
                if self.counterexample is None
                else [None if v is BOTTOM else v for v in self.counterexample]
            ),
            "checked_count": self.checked_count,
            "note": self.note,
        }


@dataclass(frozen=True)
class Inverter:
    """A total map ``Σ* -> Σ*`` tagged with the inversion role it plays.

    ``full`` takes ``z`` and returns an encoded pair ``⟨x, y⟩``;
    ``fixed_first`` takes ``⟨x, z⟩`` and returns a second argument;
    ``fixed_second`` takes ``⟨y, z⟩`` and returns a first argument.
    """

    g: Callable[[str], str]
    role: str = "full"

    def __post_init__(self):
        if self.role not in ("full", "fixed_first", "fixed_second"):
            raise ValueError(f"unknown inverter role {self.role!r}")

    def __call__(self, query: str) -> str:
        return self.g(query)


def _domain_pairs(f: PartialBinaryFn, base: Sequence[str]):
    """Yield ``(a, b, f(a, b))`` for defined pairs over ``base``, in order."""
    if f.domain_hint is not None and all(f.hint_covers(s, s) for s in base):
        index = {s: i for i, s in enumerate(base)}
        pairs = [p for p in f.domain_hint if p[0] in index and p[1] in index]
        pairs.sort(key=lambda p: (index[p[0]], index[p[1]]))
        for a, b in pairs:
            v = f(a, b)
            if v is not None:
                yield a, b, v
        return
    for a, b in product(base, repeat=2):
        v = f(a, b)
        if v is not None:
            yield a, b, v


def check_weak_associative(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    """Weak associativity: only triples meeting all four domain conditions count."""
    base = normalize_base(base)
    count = 0
    for x, y, z in product(base, repeat=3):
        count += 1
        xy = f(x, y)
        if xy is None:
            continue
        yz = f(y, z)
        if yz is None:
            continue
        left = f(xy, z)
        right = f(x, yz)
        if left is None or right is None:
            continue
        if left != right:
            return Verdict("weaklyAssociative", False, (x, y, z, left, right), count)
    return Verdict("weaklyAssociative", True, None, count)


def check_associative(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    base = normalize_base(base)
    count = 0
    for x, y, z in product(base, repeat=3):
        count += 1
        left = eval_ext(f, eval_ext(f, x, y), z)
        right = eval_ext(f, x, eval_ext(f, y, z))
        if not complete_equal(left, right):
            return Verdict("associative", False, (x, y, z, left, right), count)
    return Verdict("associative", True, None, count)


def check_commutative(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    base = normalize_base(base)
    count = 0
    for x, y in product(base, repeat=2):
        count += 1
        left, right = eval_ext(f, x, y), eval_ext(f, y, x)
        if not complete_equal(left, right):
            return Verdict("commutative", False, (x, y, left, right), count)
    return Verdict("commutative", True, None, count)


def check_total(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    base = normalize_base(base)
    count = 0
    for x, y in product(base, repeat=2):
        count += 1
        if f(x, y) is None:
            return Verdict("total", False, (x, y, BOTTOM), count)
    return Verdict("total", True, None, count)


def check_honest(
    f: PartialBinaryFn,
    base: Iterable[str],
    p: Polynomial,
    points: Optional[Iterable[str]] = None,
) -> Verdict:
    """Every range point over ``base × base`` has a preimage with ``|x| + |y| <= p(|z|)``.

    Only preimages inside the base are considered, so this samples the
    asymptotic condition. ``points`` restricts the check to chosen range
    elements.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    base = normalize_base(base)
    shortest: Dict[str, Tuple[int, str, str]] = {}
    for a, b, v in _domain_pairs(f, base):
        size = len(a) + len(b)
        if v not in shortest or size < shortest[v][0]:
            shortest[v] = (size, a, b)
    targets = sorted(shortest, key=lenlex_key)
    if points is not None:
        wanted = set(points)
        targets = [z for z in targets if z in wanted]
    note = f"p(n) = {p}; preimages sampled from {len(base)} base strings"
    if base:
        note += f" of length <= {max(len(s) for s in base)}"
    count = 0
    for z in targets:
        count += 1
        size, a, b = shortest[z]
        if size > p(len(z)):
            return Verdict("honest", False, (z, a, b), count, note)
    return Verdict("honest", True, None, count, note)


def check_injective(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    base = normalize_base(base)
    seen: Dict[str, Tuple[str, str]] = {}
    count = 0
    for a, b, v in _domain_pairs(f, base):
        count += 1
        if v in seen:
            c, d = seen[v]
            return Verdict("injective", False, (c, d, a, b, v), count)
        seen[v] = (a, b)
    return Verdict("injective", True, None, count)


def check_unordered_injective(f: PartialBinaryFn, base: Iterable[str]) -> Verdict:
    base = normalize_base(base)
    seen: Dict[str, Tuple[str, str]] = {}
    count = 0
    for a, b, v in _domain_pairs(f, base):
        count += 1
        if v in seen:
            c, d = seen[v]
            if {a, b} != {c, d}:
                return Verdict("unorderedInjective", False, (c, d, a, b, v), count)
        else:
            seen[v] = (a, b)
    return Verdict("unorderedInjective", True, None, count)


def reproduces(f: PartialBinaryFn, verdict: Verdict) -> bool:
    """Re-evaluate a failing verdict's counterexample against ``f``."""
    if verdict.holds:
        return False
    ce = verdict.counterexample
    prop = verdict.property
    if prop == "associative":
        x, y, z = ce[:3]
        left = eval_ext(f, eval_ext(f, x, y), z)
        right = eval_ext(f, x, eval_ext(f, y, z))
        return not complete_equal(left, right)
    if prop == "weaklyAssociative":
        x, y, z = ce[:3]
        xy, yz = f(x, y), f(y, z)
        if xy is None or yz is None:
            return False
        left, right = f(xy, z), f(x, yz)
        return left is not None and right is not None and left != right
    if prop == "commutative":
        x, y = ce[:2]
        return not complete_equal(eval_ext(f, x, y), eval_ext(f, y, x))
    if prop == "total":
        return f(ce[0], ce[1]) is None
    if prop in ("injective", "unorderedInjective"):
        c, d, a, b = ce[:4]
        v1, v2 = f(c, d), f(a, b)
        if v1 is None or v1 != v2:
            return False
        return (c, d) != (a, b) if prop == "injective" else {a, b} != {c, d}
    if prop == "honest":
        z, a, b = ce
        return f(a, b) == z
    raise ValueError(f"unknown property {prop!r}")


def _candidate_list(max_len: Optional[int], candidates: Optional[Iterable[str]]) -> List[str]:
    if candidates is None:
        if max_len is None:
            raise ValueError("need max_len or an explicit candidate set")
        return list(strings_upto(max_len))
    pool = normalize_base(candidates)
    if max_len is not None:
        pool = tuple(s for s in pool if len(s) <= max_len)
    return list(pool)


def brute_force_invert(
    f: PartialBinaryFn,
    z: str,
    max_len: Optional[int] = None,
    candidates: Optional[Iterable[str]] = None,
) -> Optional[Tuple[str, str]]:
    """First ``(x, y)`` in enumeration order with ``f(x, y) == z``, else ``None``.

    The search space is all strings up to ``max_len`` unless ``candidates``
    names a sparser one (witness-pair spaces are far too long to reach by
    length alone).
    """
    pool = _candidate_list(max_len, candidates)
    for x in pool:
        for y in pool:
            if f(x, y) == z:
                return x, y
    return None


def brute_force_invert_fixed_arg(
    f: PartialBinaryFn,
    fixed: str,
    side: str,
    z: str,
    max_len: Optional[int] = None,
    candidates: Optional[Iterable[str]] = None,
) -> Optional[str]:
    """Complete ``fixed`` to a preimage of ``z``.

    ``side="first"`` means ``fixed`` is the first argument and a second one
    is searched for; ``side="second"`` the other way round.
    """
    if side not in ("first", "second"):
        raise ValueError("side must be 'first' or 'second'")
    for s in _candidate_list(max_len, candidates):
        v = f(fixed, s) if side == "first" else f(s, fixed)
        if v == z:
            return s
    return None


def brute_force_inverter(
    f: PartialBinaryFn,
    role: str,
    max_len: Optional[int] = None,
    candidates: Optional[Callable[[str], Iterable[str]]] = None,
) -> Inverter:
    """Wrap the brute-force searches as a total :class:`Inverter`.

    ``candidates`` maps the target ``z`` to the strings worth trying.
    Failed searches return ``ε`` so the inverter stays total.
    """

    def pool(z: str):
        return None if candidates is None else candidates(z)

    if role == "full":

        def g(z: str) -> str:
            hit = brute_force_invert(f, z, max_len, pool(z))
            return "" if hit is None else pair_encode(*hit)

    else:
        side = "first" if role == "fixed_first" else "second"

        def g(query: str) -> str:
            fixed, z = pair_decode(query)
            hit = brute_force_invert_fixed_arg(f, fixed, side, z, max_len, pool(z))
            return "" if hit is None else hit

    return Inverter(g, role)


@dataclass
class PropertyReport:
    subject: str
    base_size: int
    verdicts: Dict[str, Verdict] = field(default_factory=dict)

    @property
    def classifications(self) -> Dict[str, object]:
        v = self.verdicts
        return {
            "AOWF candidate": v["associative"].holds,
            "A^wOWF candidate": v["weaklyAssociative"].holds,
            "one-wayness": ONE_WAYNESS_STATUS,
            "strongness": STRONGNESS_STATUS,
        }

    def __getitem__(self, name: str) -> bool:
        return self.verdicts[name].holds

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "base_size": self.base_size,
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
            "classifications": self.classifications,
        }


def run_report(
    f: PartialBinaryFn,
    base: Iterable[str],
    honesty_p: Polynomial,
) -> PropertyReport:
    """Run every checker over one base and collect the verdicts."""
    base = normalize_base(base)
    report = PropertyReport(f.name, len(base))
    for verdict in (
        check_total(f, base),
        check_weak_associative(f, base),
        check_associative(f, base),
        check_commutative(f, base),
        check_honest(f, base, honesty_p),
        check_injective(f, base),
        check_unordered_injective(f, base),
    ):
        report.verdicts[verdict.property] = verdict
    return report
