"""Command-line entry point.

Exit codes: 0 success / expectations met, 1 property violation,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import __version__
from .checks import brute_force_invert_fixed_arg, run_report
from .constructions import (
    make_dumping_ground,
    pair_encode,
    prop3_counterexample,
    sigma_fn,
    sigma_injective_fn,
    sigma_tilde_fn,
    tau_fn,
    tau_tilde_fn,
    witness_pair_base,
    witness_pair_space,
)
from .demos import DEMOS, data_path
from .gallery import EXPECTATIONS, addmod_fn, bitstrings, concat_fn
from .partialfn import normalize_base, show, strings_upto
from .poly import Polynomial
from .protocol import (
    ATTACK_LABEL,
    SessionConfig,
    SessionValidationError,
    eavesdrop_attack,
    record_attack,
    run_multi_party,
    run_two_party,
    tau_session_config,
)
from .witness import (
    BudgetExhausted,
    InstanceError,
    load_dimacs,
    load_subset_sum,
    membership,
    unique_witness_system,
)

FUNCTION_IDS = tuple(EXPECTATIONS)
WITNESS_FUNCTIONS = ("sigma", "tau", "sigma-tilde", "tau-tilde")
DEFAULT_MAX_TRIPLES = 2_000_000


class UsageError(Exception):
    pass


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def _resolve_instance(path: Optional[str], default: str) -> Path:
    if path is None:
        return Path(str(data_path(default)))
    p = Path(path)
    if p.exists():
        return p
    bundled = Path(str(data_path(path)))
    if bundled.exists():
        return bundled
    raise UsageError(f"instance file not found: {path}")


def _load_system(system: str, instance: Optional[str], x_bits: Optional[str]):
    try:
        if system == "subset-sum":
            return load_subset_sum(_resolve_instance(instance, "ss_123.json"))
        if system == "sat":
            return load_dimacs(_resolve_instance(instance, "sat_small.cnf"))
        if system == "unique":
            x = "10" if x_bits is None else _parse_bits(x_bits)
            return unique_witness_system(), x
    except InstanceError as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown system {system!r}")


def _parse_bits(token: str) -> str:
    token = token.strip()
    if token in ("ε", "e", "eps"):
        return ""
    if not all(ch in "01" for ch in token):
        raise UsageError(f"not a bitstring: {token!r}")
    return token


def _parse_base(spec: str, defaults: Dict[str, List[str]]) -> List[str]:
    out: List[str] = []
    for part in spec.split("+"):
        part = part.strip()
        if part.startswith("len<="):
            out += strings_upto(int(part[5:]))
        elif part.startswith("bits:"):
            out += bitstrings(int(part[5:]))
        elif part.startswith("set:"):
            out += [_parse_bits(t) for t in part[4:].split(",")]
        elif part in defaults:
            out += defaults[part]
        else:
            raise UsageError(f"unknown base spec {part!r}")
    return out


def _normalize_prop(name: str) -> str:
    key = name.replace("-", "").replace("_", "").lower()
    for prop in (
        "total",
        "weaklyAssociative",
        "associative",
        "commutative",
        "honest",
        "injective",
        "unorderedInjective",
    ):
        if prop.lower() == key:
            return prop
    raise UsageError(f"unknown property {name!r}")


def _parse_expect(items: List[str]) -> Dict[str, bool]:
    out = {}
    for item in items:
        name, _, val = item.partition("=")
        if val and val.lower() not in ("true", "false"):
            raise UsageError(f"bad expectation {item!r}")
        out[_normalize_prop(name)] = val.lower() != "false"
    return out


def _build_subject(args) -> Tuple:
    """Return ``(function, bases, honesty, context)`` for ``check``."""
    fn_id = args.fn
    context: Dict[str, object] = {}
    bases: Dict[str, List[str]] = {}
    honesty = Polynomial((0, 2))
    if fn_id == "prop3":
        f = prop3_counterexample()
        bases["default"] = list(strings_upto(4))
    elif fn_id == "concat":
        f = concat_fn()
        bases["default"] = list(strings_upto(3))
    elif fn_id == "addmod":
        f = addmod_fn(args.width)
        bases["default"] = bitstrings(args.width)
    elif fn_id == "sigma-injective":
        ws, x = _load_system("unique", None, args.x)
        f = sigma_injective_fn(ws)
        small = list(strings_upto(3))
        members = [s for s in small if membership(ws, s)]
        bases["default"] = (
            small + [ws.enumerate_witnesses(s)[0] for s in members] + ["0" + s for s in members]
        )
        context["system"] = ws.name
    else:
        system = args.system or "subset-sum"
        ws, x = _load_system(system, args.instance, args.x)
        budget = _env_int("AOWF_WITNESS_BUDGET", None)
        try:
            ws.enumerate_witnesses(x, budget)
        except BudgetExhausted as exc:
            raise UsageError(str(exc))
        dg = make_dumping_ground(ws, _parse_bits(args.x0) if args.x0 is not None else None)
        context.update(system=ws.name, instance=x, x0=dg.x0, a0=dg.a0)
        pairs = witness_pair_base(ws, x)
        bases["witness-pairs"] = pairs
        bases["a0"] = [dg.a0]
        bases["default"] = pairs + list(strings_upto(2))
        if fn_id in ("tau", "tau-tilde"):
            bases["default"].append(dg.a0)
        f = {
            "sigma": lambda: sigma_fn(ws),
            "tau": lambda: tau_fn(ws, dg),
            "sigma-tilde": lambda: sigma_tilde_fn(ws),
            "tau-tilde": lambda: tau_tilde_fn(ws, dg),
        }[fn_id]()
        honesty = ws.sigma_honesty or honesty
    if args.honesty:
        honesty = Polynomial.parse(args.honesty)
    return f, bases, honesty, context


def cmd_check(args) -> int:
    started = time.perf_counter()
    f, bases, honesty, context = _build_subject(args)
    base = normalize_base(_parse_base(args.base or "default", bases))
    max_triples = _env_int("AOWF_MAX_TRIPLES", DEFAULT_MAX_TRIPLES)
    if len(base) ** 3 > max_triples:
        raise UsageError(
            f"base of {len(base)} strings needs {len(base) ** 3} triples "
            f"(cap {max_triples}; raise AOWF_MAX_TRIPLES to allow)"
        )
    report = run_report(f, base, honesty)
    expected = _parse_expect(args.expect) if args.expect else dict(EXPECTATIONS[args.fn])
    mismatches = [p for p, want in expected.items() if report[p] != want]
    elapsed = time.perf_counter() - started

    doc = {
        "tool": "aowf",
        "version": __version__,
        "subject": args.fn,
        "function": f.name,
        "context": context,
        "base": {"description": args.base or "default", "size": len(base)},
        "honesty_polynomial": honesty.to_list(),
        "expectations": expected,
        "verdicts": [v.to_json() for v in report.verdicts.values()],
        "counterexamples": {
            k: v.to_json()["counterexample"] for k, v in report.verdicts.items() if not v.holds
        },
        "classifications": report.classifications,
        "mismatches": mismatches,
        "timings": {"elapsed_seconds": round(elapsed, 6)},
    }
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    if args.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(f"{f.name} over {len(base)} base strings")
        for name, verdict in report.verdicts.items():
            mark = ""
            if name in expected:
                mark = "  ok" if verdict.holds == expected[name] else "  UNEXPECTED"
            ce = ""
            if not verdict.holds:
                ce = "  counterexample (" + ", ".join(show(v) for v in verdict.counterexample) + ")"
            print(f"  {name:20s} {str(verdict.holds):5s}{mark}{ce}")
        for k, v in report.classifications.items():
            print(f"  {k}: {v}")
    return 1 if mismatches else 0


def cmd_demo(args) -> int:
    ok, lines = DEMOS[args.demo_id]()
    for line in lines:
        print(line)
    print("reproduced" if ok else "NOT reproduced")
    return 0 if ok else 1


def cmd_protocol(args) -> int:
    attack_pool = None
    max_len = None
    if args.fn == "addmod":
        f = addmod_fn(args.width)
        domain = tuple(bitstrings(args.width))
        cfg = SessionConfig(f, args.n, domain, None, args.seed)
        attack_pool, max_len = domain, args.width
    elif args.fn == "tau":
        ws, x = _load_system(args.system, args.instance, None)
        try:
            cfg = tau_session_config(ws, x, args.n, args.seed)
        except SessionValidationError as exc:
            raise UsageError(str(exc))
        f = cfg.function
        attack_pool = witness_pair_space(ws, x)
    elif args.fn == "concat":
        f = concat_fn()
        cfg = SessionConfig(f, args.n, tuple(strings_upto(2)), None, args.seed)
    else:
        raise UsageError(f"protocol does not support --fn {args.fn}")

    try:
        if args.mode == "two-party":
            if args.n != 2:
                raise UsageError("two-party mode needs -n 2")
            t = run_two_party(cfg)
        else:
            t = run_multi_party(cfg)
    except SessionValidationError as exc:
        print(f"config validation failed: {exc}", file=sys.stderr)
        return 2

    ok = t.agreed
    if args.attack:
        if args.mode != "two-party":
            raise UsageError("--attack is only defined for two-party sessions")
        recovered = eavesdrop_attack(t, f, max_len, attack_pool)
        result = record_attack(t, recovered)
        ok &= result["matches_key"] is not False
    doc = t.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    if args.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(f"{t.mode} session over {f.name}, seed {args.seed}, {len(t.messages)} messages")
        for party, key in t.keys.items():
            print(f"  key[{party}] = {key}")
        print(f"  keys agree: {t.agreed}")
        if t.attack_result is not None:
            r = t.attack_result
            print(f"  eavesdropper recovered: {r['recovered_key']} (matches: {r['matches_key']})")
            print(f"  note: {ATTACK_LABEL}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aowf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"aowf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the property checkers on a gallery function")
    p.add_argument("--fn", required=True, choices=FUNCTION_IDS)
    p.add_argument("--system", choices=("subset-sum", "sat", "unique"))
    p.add_argument("--instance", help="instance file (JSON for subset-sum, DIMACS for sat)")
    p.add_argument("--x", help="instance bitstring for the unique-witness system")
    p.add_argument("--x0", help="override the dumping-ground non-member")
    p.add_argument(
        "--base",
        help="base set: default | witness-pairs | a0 | len<=L | bits:W | set:s1,s2 "
        "(join with '+'; 'ε' is the empty string)",
    )
    p.add_argument("--honesty", help="honesty polynomial coefficients, lowest first, e.g. 0,2")
    p.add_argument(
        "--expect", action="append", help="property to assert (name or name=false); repeatable"
    )
    p.add_argument("--width", type=int, default=4, help="bit width for addmod")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("demo", help="reproduce a counterexample or reduction")
    p.add_argument("demo_id", choices=tuple(DEMOS))
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("protocol", help="run a key-agreement session")
    p.add_argument("mode", choices=("two-party", "multi-party"))
    p.add_argument("--fn", default="addmod", choices=("addmod", "tau", "concat"))
    p.add_argument("--width", type=int, default=4)
    p.add_argument("--system", default="subset-sum", choices=("subset-sum", "sat", "unique"))
    p.add_argument("--instance")
    p.add_argument("-n", type=int, default=None, help="number of parties")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attack", action="store_true", help="run the eavesdropper attack")
    p.add_argument("--out", help="write the transcript JSON here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_protocol)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "protocol" and args.n is None:
        args.n = 2 if args.mode == "two-party" else 3
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
