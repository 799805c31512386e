"""NP witness systems with desk-scale witness enumeration.

A :class:`WitnessSystem` stands in for a nondeterministic machine ``M``
accepting a language ``A``: ``verify(x, w)`` is the accepting-path predicate
and every accepted witness has length exactly ``p(|x|) > |x|``. Witnesses
here are certificates (subset characteristic vectors, assignments), not
encoded computation paths.

Instance encodings
------------------
Numbers use a self-delimiting code: ``n`` is written as ``1^k 0 d`` where
``d`` is the dyadic (bijective base-2) numeral of ``n`` and ``k = |d|``.
So ``0 -> "0"``, ``1 -> "100"``, ``2 -> "101"``, ``3 -> "11000"``.

* subset sum: ``code(w_1) ... code(w_m) code(target)``; at least one weight,
  all weights positive.
* CNF: ``code(nvars) code(nclauses)`` then per clause ``code(len)`` and per
  literal a sign bit (``1`` positive) followed by ``code(var)``.
  Instances with ``nvars > |x|`` are not in the language.

Witness layout for both: payload bits, a single ``1`` marker, then zeros up
to ``p(|x|) = |x| + 1`` bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .pairing import SIZE_BOUND, nat_to_string, pair_decode, pair_encode, string_to_nat
from .partialfn import PartialBinaryFn, lenlex_key, strings_of_length
from .poly import Polynomial


class InstanceError(ValueError):
    """An instance was rejected at construction."""


class DimacsError(InstanceError):
    pass


class BudgetExhausted(RuntimeError):
    """Witness enumeration hit its budget before covering the candidate space."""

    def __init__(self, x: str, budget: int):
        super().__init__(f"witness budget {budget} exhausted for instance of length {len(x)}")
        self.x = x
        self.budget = budget


@dataclass(frozen=True)
class WitnessSystem:
    name: str
    verify: Callable[[str, str], bool] = field(compare=False)
    p: Polynomial
    candidates: Callable[[str], Iterable[str]] = field(compare=False, repr=False)
    description: str = ""
    # Honesty polynomial for the min-witness construction built on this system.
    sigma_honesty: Optional[Polynomial] = None

    def enumerate_witnesses(self, x: str, budget: Optional[int] = None) -> List[str]:
        """All witnesses for ``x`` in length-lex order.

        ``budget`` caps how many candidate strings are examined; running
        out raises :class:`BudgetExhausted` instead of answering "none".
        """
        found = set()
        for i, w in enumerate(self.candidates(x)):
            if budget is not None and i >= budget:
                raise BudgetExhausted(x, budget)
            if self.verify(x, w):
                found.add(w)
        return sorted(found, key=lenlex_key)

    def is_witness(self, x: str, w: str) -> bool:
        return self.verify(x, w)


def membership(ws: WitnessSystem, x: str, budget: Optional[int] = None) -> bool:
    for i, w in enumerate(ws.candidates(x)):
        if budget is not None and i >= budget:
            raise BudgetExhausted(x, budget)
        if ws.verify(x, w):
            return True
    return False


def min_witness(ws: WitnessSystem, x: str, budget: Optional[int] = None) -> Optional[str]:
    found = ws.enumerate_witnesses(x, budget)
    return found[0] if found else None


# -- self-delimiting numbers -------------------------------------------------


def encode_number(n: int) -> str:
    if n < 0:
        raise InstanceError(f"cannot encode negative number {n}")
    d = nat_to_string(n)
    return "1" * len(d) + "0" + d


def decode_numbers(x: str) -> Optional[List[int]]:
    """Split ``x`` into self-delimiting numbers, or ``None`` if malformed."""
    out = []
    i = 0
    while i < len(x):
        k = 0
        while i < len(x) and x[i] == "1":
            k += 1
            i += 1
        if i == len(x):
            return None
        i += 1  # the 0 separator
        if i + k > len(x):
            return None
        out.append(string_to_nat(x[i : i + k]))
        i += k
    return out


def _pad_witness(payload: str, total: int) -> str:
    return payload + "1" + "0" * (total - len(payload) - 1)


def _unpad_witness(w: str, payload_len: int, total: int) -> Optional[str]:
    if len(w) != total or payload_len + 1 > total:
        return None
    tail = w[payload_len:]
    if tail[0] != "1" or "1" in tail[1:]:
        return None
    return w[:payload_len]


LINEAR_WITNESS_LENGTH = Polynomial((1, 1))


# -- subset sum ----------------------------------------------------------------


def encode_subset_sum(weights: Sequence[int], target: int) -> str:
    return "".join(encode_number(w) for w in weights) + encode_number(target)


def decode_subset_sum(x: str) -> Optional[Tuple[Tuple[int, ...], int]]:
    nums = decode_numbers(x)
    if nums is None or len(nums) < 2:
        return None
    weights, target = tuple(nums[:-1]), nums[-1]
    if any(w <= 0 for w in weights) or len(weights) > len(x):
        return None
    return weights, target


def _subset_sum_verify(x: str, w: str) -> bool:
    inst = decode_subset_sum(x)
    if inst is None:
        return False
    weights, target = inst
    bits = _unpad_witness(w, len(weights), len(x) + 1)
    if bits is None:
        return False
    return sum(c for c, b in zip(weights, bits) if b == "1") == target


def _subset_sum_candidates(x: str):
    inst = decode_subset_sum(x)
    if inst is None:
        return
    m = len(inst[0])
    for bits in strings_of_length(m):
        yield _pad_witness(bits, len(x) + 1)


SUBSET_SUM = WitnessSystem(
    name="subset-sum",
    verify=_subset_sum_verify,
    p=LINEAR_WITNESS_LENGTH,
    candidates=_subset_sum_candidates,
    description="SUBSET-SUM: some subset of the weights sums to the target",
    sigma_honesty=Polynomial((2, 3)),
)


def subset_sum_system(weights: Sequence[int], target: int) -> Tuple[WitnessSystem, str]:
    """The subset-sum system and the canonical encoding of one instance."""
    weights = [int(w) for w in weights]
    if not weights:
        raise InstanceError("subset-sum instance needs at least one weight")
    if any(w <= 0 for w in weights):
        raise InstanceError("weights must be positive")
    if int(target) < 0:
        raise InstanceError("target must be nonnegative")
    x = encode_subset_sum(weights, int(target))
    if len(weights) > len(x):
        raise InstanceError("more weights than encoding bits")
    return SUBSET_SUM, x


def load_subset_sum(path) -> Tuple[WitnessSystem, str]:
    try:
        data = json.loads(Path(path).read_text())
        weights, target = data["weights"], data["target"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InstanceError(f"bad subset-sum instance file {path}: {exc}") from exc
    return subset_sum_system(weights, target)


# -- CNF satisfiability ----------------------------------------------------------


def parse_dimacs(text: str) -> Tuple[int, List[List[int]]]:
    """Parse DIMACS CNF text into ``(nvars, clauses)``."""
    nvars = nclauses = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf" or nvars is not None:
                raise DimacsError(f"line {lineno}: bad problem line {line!r}")
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: bad problem line {line!r}") from exc
            continue
        if nvars is None:
            raise DimacsError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from exc
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > nvars:
                raise DimacsError(f"line {lineno}: variable {abs(lit)} exceeds {nvars}")
            else:
                current.append(lit)
    if nvars is None:
        raise DimacsError("missing problem line")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if len(clauses) != nclauses:
        raise DimacsError(f"problem line promises {nclauses} clauses, found {len(clauses)}")
    return nvars, clauses


def encode_cnf(nvars: int, clauses: Sequence[Sequence[int]]) -> str:
    parts = [encode_number(nvars), encode_number(len(clauses))]
    for clause in clauses:
        parts.append(encode_number(len(clause)))
        for lit in clause:
            parts.append(("1" if lit > 0 else "0") + encode_number(abs(lit)))
    return "".join(parts)


def decode_cnf(x: str) -> Optional[Tuple[int, List[List[int]]]]:
    pos = 0

    def number() -> Optional[int]:
        nonlocal pos
        k = 0
        while pos < len(x) and x[pos] == "1":
            k += 1
            pos += 1
        if pos + 1 + k > len(x):
            return None
        val = string_to_nat(x[pos + 1 : pos + 1 + k])
        pos += 1 + k
        return val

    nvars = number()
    nclauses = number()
    if nvars is None or nclauses is None or nclauses == 0 or nvars > len(x):
        return None
    clauses = []
    for _ in range(nclauses):
        size = number()
        if size is None:
            return None
        clause = []
        for _ in range(size):
            if pos >= len(x):
                return None
            sign = x[pos]
            pos += 1
            var = number()
            if var is None or not 1 <= var <= nvars:
                return None
            clause.append(var if sign == "1" else -var)
        clauses.append(clause)
    if pos != len(x):
        return None
    return nvars, clauses


def _sat_verify(x: str, w: str) -> bool:
    inst = decode_cnf(x)
    if inst is None:
        return False
    nvars, clauses = inst
    bits = _unpad_witness(w, nvars, len(x) + 1)
    if bits is None:
        return False
    return all(any((bits[abs(l) - 1] == "1") == (l > 0) for l in c) for c in clauses)


def _sat_candidates(x: str):
    inst = decode_cnf(x)
    if inst is None:
        return
    for bits in strings_of_length(inst[0]):
        yield _pad_witness(bits, len(x) + 1)


SAT = WitnessSystem(
    name="sat",
    verify=_sat_verify,
    p=LINEAR_WITNESS_LENGTH,
    candidates=_sat_candidates,
    description="CNF-SAT: the formula has a satisfying assignment",
    sigma_honesty=Polynomial((2, 3)),
)


def sat_system(
    cnf: Sequence[Sequence[int]], nvars: Optional[int] = None
) -> Tuple[WitnessSystem, str]:
    """The SAT system and the canonical encoding of a clause list."""
    clauses = [list(c) for c in cnf]
    if not clauses:
        raise InstanceError("empty clause list")
    used = max((abs(l) for c in clauses for l in c), default=0)
    if any(l == 0 for c in clauses for l in c):
        raise InstanceError("literal 0 inside a clause")
    nvars = used if nvars is None else nvars
    if used > nvars:
        raise InstanceError(f"variable {used} exceeds declared count {nvars}")
    x = encode_cnf(nvars, clauses)
    if nvars > len(x):
        raise InstanceError(f"{nvars} variables exceed encoding capacity of {len(x)} bits")
    return SAT, x


def load_dimacs(path) -> Tuple[WitnessSystem, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    nvars, clauses = parse_dimacs(text)
    return sat_system(clauses, nvars)


# -- structural unique-witness system ----------------------------------------------


def unique_witness_system(rule: Optional[Callable[[str], bool]] = None) -> WitnessSystem:
    """Unique-witness stand-in for a UP machine.

    The language is ``A' = {1y : rule(y)}`` (all of ``1Σ*`` by default) and the
    only witness for ``x ∈ A'`` is ``1 · reverse(x)`` zero-padded to
    ``|x| + 2`` bits. Membership is trivially decidable: this system exists
    to exercise uniqueness-dependent constructions, not hardness.
    """
    rule = rule or (lambda y: True)
    p = Polynomial((2, 1))

    def member(x: str) -> bool:
        return x.startswith("1") and rule(x[1:])

    def witness(x: str) -> str:
        body = "1" + x[::-1]
        return body + "0" * (p(len(x)) - len(body))

    def verify(x: str, w: str) -> bool:
        return member(x) and w == witness(x)

    def candidates(x: str):
        if member(x):
            yield witness(x)

    return WitnessSystem(
        name="unique",
        verify=verify,
        p=p,
        candidates=candidates,
        description="structural UP stand-in: A' ⊆ 1Σ*, witness 1·reverse(x)·0*",
        sigma_honesty=Polynomial((4, 3)),
    )


# -- from a one-way function to an NP language ------------------------------------


def owf_to_witness_system(
    f: PartialBinaryFn, runtime_p: Polynomial, honesty_p: Polynomial
) -> WitnessSystem:
    """Prefix-search language of ``f``.

    An input ``x = ⟨z, u⟩`` is in the language iff some completion ``v``
    makes ``u·v`` the pairing code of a preimage ``(a, b)`` of ``z`` with
    ``|a| + |b| <= honesty_p(|z|)``. The witness is ``v`` followed by a ``1``
    marker and zero padding to length ``P(|x|) = q(h(q(|x|))) + |x| + 1``,
    where ``q`` is the pairing size polynomial. Deciding membership in
    polynomial time would invert ``f`` one bit at a time
    (see :func:`invert_by_prefix_search`). ``runtime_p`` is the clock of the
    machine; verification itself just evaluates ``f`` once.
    """
    if not isinstance(runtime_p, Polynomial):
        runtime_p = Polynomial(runtime_p)
    if not isinstance(honesty_p, Polynomial):
        honesty_p = Polynomial(honesty_p)
    for label, poly in (("runtime", runtime_p), ("honesty", honesty_p)):
        if not poly.is_strictly_increasing():
            raise InstanceError(f"{label} polynomial {poly} is not strictly increasing")
    q = SIZE_BOUND
    code_bound = q.compose(honesty_p.compose(q))
    p = code_bound + Polynomial((1, 1))

    def verify(x: str, w: str) -> bool:
        total = p(len(x))
        if len(w) != total:
            return False
        body = w.rstrip("0")
        if not body.endswith("1"):
            return False
        z, u = pair_decode(x)
        a, b = pair_decode(u + body[:-1])
        return len(a) + len(b) <= honesty_p(len(z)) and f(a, b) == z

    def candidates(x: str):
        z, u = pair_decode(x)
        limit = honesty_p(len(z))
        total = p(len(x))
        out = set()
        for size in range(limit + 1):
            for la in range(size + 1):
                for a in strings_of_length(la):
                    for b in strings_of_length(size - la):
                        if f(a, b) != z:
                            continue
                        s = pair_encode(a, b)
                        if s.startswith(u):
                            out.add(_pad_witness(s[len(u) :], total))
        yield from sorted(out, key=lenlex_key)

    return WitnessSystem(
        name=f"owf-prefix[{f.name}]",
        verify=verify,
        p=p,
        candidates=candidates,
        description=(
            f"prefix-search language of {f.name}: runtime {runtime_p}, honesty {honesty_p}"
        ),
    )


def invert_by_prefix_search(ws: WitnessSystem, z: str) -> Optional[Tuple[str, str]]:
    """Recover a preimage of ``z`` using only membership queries.

    ``ws`` must come from :func:`owf_to_witness_system`.
    """
    u = ""
    if not membership(ws, pair_encode(z, u)):
        return None
    while True:
        x = pair_encode(z, u)
        if ws.verify(x, _pad_witness("", ws.p(len(x)))):
            return pair_decode(u)
        for bit in "01":
            if membership(ws, pair_encode(z, u + bit)):
                u += bit
                break
        else:  # pragma: no cover - a member always has a continuing bit
            raise AssertionError("prefix search lost the trail")
