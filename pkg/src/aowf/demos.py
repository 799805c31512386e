"""Narrated reproductions of the headline counterexamples and reductions.

Each demo returns ``(reproduced, lines)``; the CLI prints the lines and
exits 0 iff ``reproduced``.
"""

from __future__ import annotations

import json
from importlib.resources import files
from typing import Callable, Dict, List, Tuple

from .checks import (
    check_associative,
    check_injective,
    check_unordered_injective,
    check_weak_associative,
    run_report,
)
from .constructions import (
    make_dumping_ground,
    prop3_counterexample,
    reduce_inversion_to_membership,
    sigma_fn,
    sigma_injective_fn,
    sigma_inverter,
    sigma_tilde_fn,
    tau_tilde_eval,
    pair_encode,
)
from .partialfn import BOTTOM, eval_ext, show, strings_upto
from .witness import membership, subset_sum_system, unique_witness_system

DemoResult = Tuple[bool, List[str]]


def data_path(name: str):
    return files("aowf") / "data" / name


def load_corpus() -> List[dict]:
    return json.loads(data_path("strongness_corpus.json").read_text())


def prop3_split() -> DemoResult:
    f = prop3_counterexample()
    left = eval_ext(f, eval_ext(f, "1", "11"), "1111")
    right = eval_ext(f, "1", eval_ext(f, "11", "1111"))
    base = list(strings_upto(4))
    weak = check_weak_associative(f, base)
    assoc = check_associative(f, base)
    lines = [
        f"(1 ∘ 11) ∘ 1111 = {show(left)}",
        f"1 ∘ (11 ∘ 1111) = {show(right)}",
        f"weakly associative on strings of length <= 4: {weak.holds}",
        f"associative on strings of length <= 4: {assoc.holds}"
        + ("" if assoc.holds else f" (first failure at {assoc.counterexample[:3]})"),
    ]
    ok = (
        left == "0"
        and right is BOTTOM
        and weak.holds
        and not assoc.holds
        and assoc.counterexample[:3] == ("1", "11", "1111")
    )
    return ok, lines


def lifting_counterexample() -> DemoResult:
    ws, x = subset_sum_system([1, 2, 3], 3)
    dg = make_dumping_ground(ws)
    w, y = ws.enumerate_witnesses(x)[:2]
    a, b, c = pair_encode(x, w), pair_encode(x, y), pair_encode(x, x)
    xx = c
    left = tau_tilde_eval(ws, dg, tau_tilde_eval(ws, dg, a, b), c)
    right = tau_tilde_eval(ws, dg, a, tau_tilde_eval(ws, dg, b, c))
    st = sigma_tilde_fn(ws)
    s_left = eval_ext(st, eval_ext(st, a, b), c)
    s_right = eval_ext(st, a, eval_ext(st, b, c))
    report = run_report(st, [a, b, c], ws.sigma_honesty)
    lines = [
        f"instance weights {{1,2,3}} target 3, x = {x}",
        f"witnesses w = {w}, y = {y}; dumping ground a0 = {dg.a0}",
        f"(a τ̃ b) τ̃ c = {show(left)}  (a0: {left == dg.a0})",
        f"a τ̃ (b τ̃ c) = {show(right)}  (⟨x,x⟩: {right == xx})",
        f"with the ⊥-extension of σ̃: {show(s_left)} vs {show(s_right)}",
        f"σ̃ weakly associative: {report['weaklyAssociative']}, associative: {report['associative']}",
    ]
    ok = (
        left == dg.a0
        and right == xx
        and left != right
        and s_left is BOTTOM
        and s_right == xx
        and report["weaklyAssociative"]
        and not report["associative"]
    )
    return ok, lines


def strongness_reduction() -> DemoResult:
    lines = []
    ok = True
    for inst in load_corpus():
        ws, x = subset_sum_system(inst["weights"], inst["target"])
        decided = reduce_inversion_to_membership(sigma_inverter(ws), ws, x)
        truth = membership(ws, x)
        ok &= decided == truth
        lines.append(
            f"weights {inst['weights']} target {inst['target']}: "
            f"reduction {decided}, membership {truth}"
        )
    lines.append(f"all agree: {ok}")
    return ok, lines


def injective_up() -> DemoResult:
    ws = unique_witness_system()
    base = set(strings_upto(4))
    members = [s for s in base if membership(ws, s)]
    base |= {ws.enumerate_witnesses(s)[0] for s in members}
    base |= {"0" + s for s in members}
    f = sigma_injective_fn(ws)
    inj = check_injective(f, base)
    uinj = check_unordered_injective(f, base)
    assoc = check_associative(f, base)
    both_bottom = all(
        eval_ext(f, eval_ext(f, a, b), c) is BOTTOM and eval_ext(f, a, eval_ext(f, b, c)) is BOTTOM
        for a in base
        for b in base
        for c in base
    )
    sigma_base = set()
    for s in members:
        sigma_base |= {pair_encode(s, s), pair_encode(s, ws.enumerate_witnesses(s)[0])}
    sigma_uinj = check_unordered_injective(sigma_fn(ws), sigma_base)
    lines = [
        f"injective construction over {len(base)} strings: injective {inj.holds}, "
        f"unordered-injective {uinj.holds}, associative {assoc.holds}",
        f"every association evaluates to ⊥ on both sides: {both_bottom}",
        f"min-witness construction over the same system is unordered-injective: {sigma_uinj.holds}",
    ]
    ok = inj.holds and uinj.holds and assoc.holds and both_bottom and sigma_uinj.holds
    return ok, lines


DEMOS: Dict[str, Callable[[], DemoResult]] = {
    "prop3-split": prop3_split,
    "lifting-counterexample": lifting_counterexample,
    "strongness-reduction": strongness_reduction,
    "injective-up": injective_up,
}
