"""The explicit functions built from a witness system.

``sigma`` keeps the smaller of two witnesses for the same instance and
collapses a witness against the instance itself, ``tau`` totalizes it by
sending everything else to a fixed junk string ``a0``. ``sigma_tilde`` /
``tau_tilde`` are the lifting counterexample, ``sigma_injective`` the
unique-witness construction, and ``prop3_counterexample`` the two-row
table that is weakly associative without being associative.

"Lexicographically smaller" is taken in length-lex order. All witnesses of
one instance share a length, so on witness minima this is plain
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .checks import Inverter, brute_force_inverter
from .pairing import PairingCodec, pair_decode, pair_encode
from .partialfn import BOTTOM, ExtVal, PartialBinaryFn, lenlex_min, strings_upto, table_function
from .witness import WitnessSystem, membership

__all__ = [
    "PairingCodec",
    "pair_encode",
    "pair_decode",
    "DumpingGround",
    "CaseRecord",
    "make_dumping_ground",
    "find_nonmember",
    "sigma_eval",
    "tau_eval",
    "sigma_tilde_eval",
    "tau_tilde_eval",
    "sigma_injective_eval",
    "classify_case",
    "prop3_counterexample",
    "reduce_inversion_to_membership",
    "sigma_fn",
    "tau_fn",
    "sigma_tilde_fn",
    "tau_tilde_fn",
    "sigma_injective_fn",
    "witness_pair_base",
    "witness_pair_space",
    "sigma_inverter",
    "NoNonmemberError",
]


class NoNonmemberError(LookupError):
    """Every string within the search bound is a member."""


@dataclass(frozen=True)
class DumpingGround:
    x0: str
    a0: str


@dataclass(frozen=True)
class CaseRecord:
    case: int
    k: int
    predicted: ExtVal


def find_nonmember(ws: WitnessSystem, bound: int = 16, budget: Optional[int] = None) -> str:
    """Smallest string (length-lex) of length ``<= bound`` outside the language."""
    for x in strings_upto(bound):
        if not membership(ws, x, budget):
            return x
    raise NoNonmemberError(f"all strings of length <= {bound} are in {ws.name}")


def make_dumping_ground(
    ws: WitnessSystem, x0: Optional[str] = None, bound: int = 16
) -> DumpingGround:
    if x0 is None:
        x0 = find_nonmember(ws, bound)
    elif membership(ws, x0):
        raise ValueError(f"x0 = {x0!r} is a member of {ws.name}")
    a0 = pair_encode(x0, "1" + x0)
    first, second = pair_decode(a0)
    if first == second or ws.verify(first, second):
        raise ValueError("dumping ground collides with the domain of sigma")
    return DumpingGround(x0, a0)


def _is_witness(ws: WitnessSystem, x: str, s: str) -> bool:
    return len(s) == ws.p(len(x)) and ws.verify(x, s)


def sigma_eval(ws: WitnessSystem, a: str, b: str) -> Optional[str]:
    x, a2 = pair_decode(a)
    bx, b2 = pair_decode(b)
    if x != bx:
        return None
    a_wit = _is_witness(ws, x, a2)
    b_wit = _is_witness(ws, x, b2)
    if a_wit and b_wit:
        return pair_encode(x, lenlex_min(a2, b2))
    if (a2 == x and b_wit) or (a_wit and b2 == x):
        return pair_encode(x, x)
    return None


def tau_eval(ws: WitnessSystem, dg: DumpingGround, a: str, b: str) -> str:
    v = sigma_eval(ws, a, b)
    return dg.a0 if v is None else v


def sigma_tilde_eval(ws: WitnessSystem, a: str, b: str) -> Optional[str]:
    x, a2 = pair_decode(a)
    bx, b2 = pair_decode(b)
    if x != bx:
        return None
    a_wit = _is_witness(ws, x, a2)
    b_wit = _is_witness(ws, x, b2)
    if a == b and a_wit:
        return a
    if (a2 == x and b_wit) or (a_wit and b2 == x):
        return pair_encode(x, x)
    return None


def tau_tilde_eval(ws: WitnessSystem, dg: DumpingGround, a: str, b: str) -> str:
    v = sigma_tilde_eval(ws, a, b)
    return dg.a0 if v is None else v


def sigma_injective_eval(ws: WitnessSystem, a: str, b: str) -> Optional[str]:
    """``0a`` when ``b`` is the unique witness for ``a``; undefined otherwise."""
    if ws.enumerate_witnesses(a) == [b]:
        return "0" + a
    return None


def classify_case(ws: WitnessSystem, a: str, b: str, c: str) -> CaseRecord:
    """Predict ``(a σ̂ b) σ̂ c`` from the case split on decoded components.

    Case 1: first components differ. Case 2: they agree but some second
    component is neither the instance nor one of its witnesses. Case 3:
    everything is the instance or a witness, and the value depends only on
    ``k``, the number of witness components. Every string decodes (the
    pairing is onto), so no input falls outside the three cases.
    """
    a1, a2 = pair_decode(a)
    b1, b2 = pair_decode(b)
    c1, c2 = pair_decode(c)
    seconds = (a2, b2, c2)
    wit = [_is_witness(ws, a1, s) for s in seconds]
    k = sum(wit)
    if not (a1 == b1 == c1):
        return CaseRecord(1, k, BOTTOM)
    if not all(w or s == a1 for w, s in zip(wit, seconds)):
        return CaseRecord(2, k, BOTTOM)
    if k == 3:
        return CaseRecord(3, 3, pair_encode(a1, lenlex_min(*seconds)))
    if k == 2:
        return CaseRecord(3, 2, pair_encode(a1, a1))
    return CaseRecord(3, k, BOTTOM)


def prop3_counterexample() -> PartialBinaryFn:
    return table_function("prop3", {("1", "11"): "111", ("111", "1111"): "0"})


def sigma_fn(ws: WitnessSystem) -> PartialBinaryFn:
    return PartialBinaryFn(f"sigma[{ws.name}]", lambda a, b: sigma_eval(ws, a, b))


def tau_fn(ws: WitnessSystem, dg: DumpingGround) -> PartialBinaryFn:
    return PartialBinaryFn(f"tau[{ws.name}]", lambda a, b: tau_eval(ws, dg, a, b))


def sigma_tilde_fn(ws: WitnessSystem) -> PartialBinaryFn:
    return PartialBinaryFn(f"sigma-tilde[{ws.name}]", lambda a, b: sigma_tilde_eval(ws, a, b))


def tau_tilde_fn(ws: WitnessSystem, dg: DumpingGround) -> PartialBinaryFn:
    return PartialBinaryFn(
        f"tau-tilde[{ws.name}]", lambda a, b: tau_tilde_eval(ws, dg, a, b)
    )


def sigma_injective_fn(ws: WitnessSystem) -> PartialBinaryFn:
    return PartialBinaryFn(
        f"sigma-injective[{ws.name}]", lambda a, b: sigma_injective_eval(ws, a, b)
    )


def witness_pair_base(ws: WitnessSystem, x: str) -> List[str]:
    """``⟨x, x⟩`` followed by ``⟨x, w⟩`` for each witness ``w`` of ``x``."""
    return [pair_encode(x, x)] + [pair_encode(x, w) for w in ws.enumerate_witnesses(x)]


def witness_pair_space(ws: WitnessSystem, x: str) -> List[str]:
    """Like :func:`witness_pair_base` but over every well-shaped candidate.

    This is the brute-force search space: it contains non-witnesses too.
    """
    return [pair_encode(x, x)] + [pair_encode(x, c) for c in ws.candidates(x)]


def sigma_inverter(ws: WitnessSystem, role: str = "fixed_second") -> Inverter:
    """Brute-force inverter for ``sigma`` over the witness-pair space of ``z``'s instance."""
    return brute_force_inverter(
        sigma_fn(ws), role, candidates=lambda z: witness_pair_space(ws, pair_decode(z)[0])
    )


def reduce_inversion_to_membership(g2: Inverter, ws: WitnessSystem, x: str) -> bool:
    """Decide ``x ∈ A`` with one call to a second-argument-given inverter of ``sigma``.

    Query ``g2(⟨⟨x,x⟩, ⟨x,x⟩⟩)``, read the answer as ``⟨d, e⟩`` and accept
    iff ``d = x`` and ``e`` is a witness for ``x``.
    """
    xx = pair_encode(x, x)
    d, e = pair_decode(g2(pair_encode(xx, xx)))
    return d == x and _is_witness(ws, x, e)
