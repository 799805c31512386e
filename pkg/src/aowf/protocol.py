"""Key-agreement sessions over an in-memory channel.

The message flows here are instantiations chosen for this package:

* two-party: Alice sends a public ``x`` and ``a∘x``, Bob sends ``x∘b``;
  Alice computes ``a∘(x∘b)`` and Bob ``(a∘x)∘b``. Only associativity is
  needed for the keys to match.
* multi-party ring: party ``i`` starts the token ``s_i∘x``, every receiver
  applies its own secret, and after ``n - 1`` hops the token that began
  with party ``i + 1`` ends with party ``i`` as its key. Keys match when the
  function is associative and commutative on the values that occur.

No authentication, no security claim. The eavesdropper attack below wins at
desk scale by plain enumeration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

from .checks import (
    brute_force_invert_fixed_arg,
    check_associative,
    check_commutative,
)
from .partialfn import PartialBinaryFn, normalize_base

ATTACK_LABEL = "desk-scale brute force, not a security claim"


class SessionValidationError(ValueError):
    """The function cannot support the requested session."""


@dataclass(frozen=True)
class SessionConfig:
    function: PartialBinaryFn
    parties: int = 2
    secret_domain: Tuple[str, ...] = ()
    x_pub: Optional[str] = None
    rng_seed: int = 0
    # Fixed secret draws (one per party); bypasses the generator.
    secrets: Optional[Tuple[str, ...]] = None
    closure_cap: int = 512

    def to_json(self) -> dict:
        return {
            "function": self.function.name,
            "parties": self.parties,
            "secret_domain": list(self.secret_domain),
            "x_pub": self.x_pub,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class Message:
    sender: str
    receiver: str
    label: str
    payload: str


@dataclass
class Transcript:
    mode: str
    config: SessionConfig
    public: str
    messages: List[Message] = field(default_factory=list)
    secrets: Dict[str, str] = field(default_factory=dict)
    keys: Dict[str, str] = field(default_factory=dict)
    attack_result: Optional[dict] = None

    @property
    def agreed(self) -> bool:
        return len(set(self.keys.values())) == 1

    @property
    def key(self) -> Optional[str]:
        return next(iter(self.keys.values())) if self.agreed else None

    def send(self, sender: str, receiver: str, label: str, payload: str) -> str:
        self.messages.append(Message(sender, receiver, label, payload))
        return payload

    def eavesdropper_view(self) -> dict:
        """What a passive listener sees: the messages and nothing else."""
        return {
            "mode": self.mode,
            "public": self.public,
            "messages": [
                {"sender": m.sender, "receiver": m.receiver, "label": m.label, "payload": m.payload}
                for m in self.messages
            ],
        }

    def to_json(self) -> dict:
        view = self.eavesdropper_view()
        return {
            "mode": self.mode,
            "config": self.config.to_json(),
            "public": self.public,
            "messages": view["messages"],
            "secrets": dict(self.secrets),
            "keys": dict(self.keys),
            "agreed": self.agreed,
            "attack_result": self.attack_result,
        }


def _closure(f: PartialBinaryFn, start: Iterable[str], cap: int) -> Tuple[str, ...]:
    values = set(start)
    frontier = set(values)
    while frontier:
        new = set()
        for a, b in product(values, repeat=2):
            if a not in frontier and b not in frontier:
                continue
            v = f(a, b)
            if v is None:
                raise SessionValidationError(
                    f"{f.name} is undefined on reachable pair ({a!r}, {b!r})"
                )
            if v not in values:
                new.add(v)
        values |= new
        frontier = new
        if len(values) > cap:
            raise SessionValidationError(
                f"reachable set of {f.name} exceeds {cap} values; cannot validate"
            )
    return normalize_base(values)


@lru_cache(maxsize=256)
def _validate(f: PartialBinaryFn, start: Tuple[str, ...], commutative: bool, cap: int):
    seed = normalize_base(start)
    # Cheap screen on the starting values before the closure can blow up.
    checks = [check_associative]
    if commutative:
        checks.append(check_commutative)
    for check in checks:
        verdict = check(f, seed)
        if not verdict.holds:
            raise SessionValidationError(
                f"{f.name} is not {verdict.property}: counterexample {verdict.counterexample}"
            )
    reachable = _closure(f, seed, cap)
    for check in checks:
        verdict = check(f, reachable)
        if not verdict.holds:
            raise SessionValidationError(
                f"{f.name} is not {verdict.property}: counterexample {verdict.counterexample}"
            )
    return reachable


def validate(cfg: SessionConfig) -> Tuple[str, ...]:
    """Check totality, associativity and (for n > 2) commutativity on reachable values.

    Returns the reachable set. Raises :class:`SessionValidationError`.
    """
    if cfg.parties < 2:
        raise SessionValidationError("need at least two parties")
    if cfg.secrets is not None and len(cfg.secrets) != cfg.parties:
        raise SessionValidationError("one fixed secret per party")
    start = set(cfg.secret_domain)
    if cfg.secrets is not None:
        start |= set(cfg.secrets)
    if cfg.x_pub is not None:
        start.add(cfg.x_pub)
    if not start:
        raise SessionValidationError("empty secret domain")
    return _validate(cfg.function, tuple(sorted(start)), cfg.parties > 2, cfg.closure_cap)


def _draw(cfg: SessionConfig) -> Tuple[List[str], str]:
    rng = random.Random(cfg.rng_seed)
    domain = list(cfg.secret_domain)
    secrets = list(cfg.secrets) if cfg.secrets is not None else None
    if secrets is None and not domain:
        raise SessionValidationError("no secret domain to draw from")
    if secrets is None:
        secrets = [rng.choice(domain)]
    x = cfg.x_pub if cfg.x_pub is not None else rng.choice(domain)
    if cfg.secrets is None:
        secrets += [rng.choice(domain) for _ in range(cfg.parties - 1)]
    return secrets, x


def run_two_party(cfg: SessionConfig) -> Transcript:
    if cfg.parties != 2:
        raise SessionValidationError("two-party session needs parties == 2")
    validate(cfg)
    f = cfg.function
    (a, b), x = _draw(cfg)
    t = Transcript("two-party", cfg, x, secrets={"alice": a, "bob": b})
    t.send("alice", "bob", "x", x)
    ax = t.send("alice", "bob", "a∘x", f(a, x))
    xb = t.send("bob", "alice", "x∘b", f(x, b))
    t.keys["alice"] = f(a, xb)
    t.keys["bob"] = f(ax, b)
    return t


def run_multi_party(cfg: SessionConfig) -> Transcript:
    n = cfg.parties
    if n < 3:
        raise SessionValidationError("multi-party session needs at least three parties")
    validate(cfg)
    f = cfg.function
    secrets, x = _draw(cfg)
    names = [f"p{i}" for i in range(n)]
    t = Transcript("multi-party", cfg, x, secrets=dict(zip(names, secrets)))
    tokens = [f(secrets[i], x) for i in range(n)]
    for hop in range(1, n):
        for origin in range(n):
            sender = (origin + hop - 1) % n
            receiver = (origin + hop) % n
            payload = t.send(names[sender], names[receiver], f"token{origin}", tokens[origin])
            tokens[origin] = f(secrets[receiver], payload)
    for i in range(n):
        t.keys[names[i]] = tokens[(i + 1) % n]
    return t


def eavesdrop_attack(
    t: Transcript,
    f: PartialBinaryFn,
    max_len: Optional[int] = None,
    candidates: Optional[Iterable[str]] = None,
) -> Optional[str]:
    """Recover a two-party key from the public messages alone.

    Finds any ``a'`` with ``a'∘x = a∘x`` and returns ``a'∘(x∘b)``, which
    equals the session key by associativity.
    """
    msgs = {m["label"]: m["payload"] for m in t.eavesdropper_view()["messages"]}
    try:
        x, ax, xb = msgs["x"], msgs["a∘x"], msgs["x∘b"]
    except KeyError as exc:
        raise ValueError("not a two-party transcript") from exc
    a_guess = brute_force_invert_fixed_arg(f, x, "second", ax, max_len, candidates)
    if a_guess is None:
        return None
    return f(a_guess, xb)


def record_attack(t: Transcript, recovered: Optional[str]) -> dict:
    t.attack_result = {
        "recovered_key": recovered,
        "matches_key": None if recovered is None else recovered == t.key,
        "label": ATTACK_LABEL,
    }
    return t.attack_result


def tau_session_config(ws, x: str, parties: int, rng_seed: int, dg=None, x_pub=None) -> SessionConfig:
    """Session over ``tau`` whose secrets are the witness pairs ``⟨x, w⟩`` of one instance."""
    from .constructions import make_dumping_ground, tau_fn, witness_pair_base

    dg = dg or make_dumping_ground(ws)
    domain = tuple(witness_pair_base(ws, x)[1:])
    if not domain:
        raise SessionValidationError("instance has no witnesses to draw secrets from")
    return SessionConfig(tau_fn(ws, dg), parties, domain, x_pub, rng_seed)
