"""Exit criteria, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import random
import time
from itertools import product

import pytest

from aowf.checks import (
    check_associative,
    check_commutative,
    check_honest,
    check_injective,
    check_total,
    check_unordered_injective,
    check_weak_associative,
    run_report,
)
from aowf.constructions import (
    classify_case,
    make_dumping_ground,
    pair_decode,
    pair_encode,
    prop3_counterexample,
    reduce_inversion_to_membership,
    sigma_fn,
    sigma_injective_fn,
    sigma_inverter,
    sigma_tilde_fn,
    tau_fn,
    tau_tilde_eval,
    tau_tilde_fn,
    witness_pair_base,
    witness_pair_space,
)
from aowf.demos import load_corpus
from aowf.gallery import addmod_fn, bitstrings, concat_fn
from aowf.pairing import SIZE_BOUND
from aowf.partialfn import BOTTOM, eval_ext, lenlex_key, strings_upto
from aowf.poly import Polynomial
from aowf.protocol import (
    SessionConfig,
    eavesdrop_attack,
    run_multi_party,
    run_two_party,
    tau_session_config,
)
from aowf.witness import membership, subset_sum_system, unique_witness_system

pytestmark = pytest.mark.acceptance

# {1,2,3,6}/6 has two witnesses ({6} and {1,2,3}); {1,2,3,4,5}/5 supplies the third.
INSTANCES = [([1, 2, 3], 3), ([1, 2, 3, 6], 6), ([1, 2, 3, 4, 5], 5)]
OFF_INSTANCE = ([1, 2], 3)
LINEAR = Polynomial((0, 2))


def sigma_base(weights, target):
    ws, x = subset_sum_system(weights, target)
    ows, ox = subset_sum_system(*OFF_INSTANCE)
    off = pair_encode(ox, ows.enumerate_witnesses(ox)[0])
    return ws, x, witness_pair_base(ws, x) + [off]


def tau_base(ws, x, base, dg, seed=0):
    rng = random.Random(seed)
    out = list(base) + [dg.a0]
    while len(out) < len(base) + 1 + 20:
        s = "".join(rng.choice("01") for _ in range(rng.randint(1, 24)))
        a, b = pair_decode(s)
        if a == b or ws.is_witness(a, b) or s in out:
            continue
        out.append(s)
    return out


def unique_base():
    ws = unique_witness_system()
    base = set(strings_upto(4))
    members = [s for s in base if membership(ws, s)]
    base |= {ws.enumerate_witnesses(s)[0] for s in members}
    base |= {"0" + s for s in members}
    return ws, members, sorted(base, key=lenlex_key)


@pytest.mark.acceptance(1)
def test_criterion_1_prop3_split():
    """two-row table: weakly associative, not associative on strings of length <= 4, < 5 s"""
    start = time.perf_counter()
    f = prop3_counterexample()
    base = list(strings_upto(4))
    weak = check_weak_associative(f, base)
    assoc = check_associative(f, base)
    elapsed = time.perf_counter() - start
    assert weak.holds
    assert not assoc.holds
    assert assoc.counterexample == ("1", "11", "1111", "0", BOTTOM)
    assert elapsed < 5


@pytest.mark.acceptance(2)
def test_criterion_2_sigma_laws():
    """min-witness function: associative, commutative, case split predicts every triple, < 60 s"""
    start = time.perf_counter()
    ks = set()
    counts = []
    for weights, target in INSTANCES:
        ws, x, base = sigma_base(weights, target)
        counts.append(len(ws.enumerate_witnesses(x)))
        f = sigma_fn(ws)
        assert check_associative(f, base).holds
        assert check_commutative(f, base).holds
        for a, b, c in product(base, repeat=3):
            rec = classify_case(ws, a, b, c)
            ks.add(rec.k)
            assert eval_ext(f, eval_ext(f, a, b), c) == rec.predicted
            assert eval_ext(f, a, eval_ext(f, b, c)) == rec.predicted
    assert sorted(counts) == [2, 2, 3]
    assert ks == {0, 1, 2, 3}
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(3)
def test_criterion_3_tau_laws():
    """totalized function: total, associative, commutative, not injective, honest"""
    for weights, target in INSTANCES:
        ws, x, base = sigma_base(weights, target)
        dg = make_dumping_ground(ws)
        assert dg.a0 == "10"
        f = tau_fn(ws, dg)
        full = tau_base(ws, x, base, dg, seed=target)
        assert len(full) == len(base) + 21
        assert check_total(f, full).holds
        assert check_associative(f, full).holds
        assert check_commutative(f, full).holds
        assert not check_injective(f, full).holds
        a0_check = check_honest(f, full, LINEAR, points=[dg.a0])
        assert a0_check.holds and a0_check.checked_count == 1
        others = [z for z in {f(a, b) for a in full for b in full} if z != dg.a0]
        assert check_honest(f, full, ws.sigma_honesty, points=others).holds


@pytest.mark.acceptance(4)
def test_criterion_4_lifting_counterexample():
    """lifted variant: the failing triple reproduces for both extensions"""
    ws, x = subset_sum_system([1, 2, 3], 3)
    dg = make_dumping_ground(ws)
    w, y = ws.enumerate_witnesses(x)
    a, b, c = pair_encode(x, w), pair_encode(x, y), pair_encode(x, x)
    left = tau_tilde_eval(ws, dg, tau_tilde_eval(ws, dg, a, b), c)
    right = tau_tilde_eval(ws, dg, a, tau_tilde_eval(ws, dg, b, c))
    assert left == dg.a0
    assert right == c
    assert left != right
    st = sigma_tilde_fn(ws)
    assert eval_ext(st, eval_ext(st, a, b), c) is BOTTOM
    assert eval_ext(st, a, eval_ext(st, b, c)) == c
    report = run_report(st, [a, b, c], ws.sigma_honesty)
    assert report["weaklyAssociative"]
    assert not report["associative"]


@pytest.mark.acceptance(5)
def test_criterion_5_injective_construction():
    """unique-witness construction: injective, every association is ⊥ on both sides"""
    ws, members, base = unique_base()
    f = sigma_injective_fn(ws)
    assert check_injective(f, base).holds
    assert check_unordered_injective(f, base).holds
    for a, b, c in product(base, repeat=3):
        assert eval_ext(f, eval_ext(f, a, b), c) is BOTTOM
        assert eval_ext(f, a, eval_ext(f, b, c)) is BOTTOM
    pairs = []
    for s in members:
        pairs += [pair_encode(s, s), pair_encode(s, ws.enumerate_witnesses(s)[0])]
    assert check_unordered_injective(sigma_fn(ws), pairs).holds


@pytest.mark.acceptance(6)
def test_criterion_6_pairing_codec():
    """pairing codec: bijective, monotone, size bounds with q(n) = 2n"""
    for z in strings_upto(12):
        assert pair_encode(*pair_decode(z)) == z
    short = list(strings_upto(6))
    key = {}
    for x, y in product(short, repeat=2):
        z = pair_encode(x, y)
        assert pair_decode(z) == (x, y)
        assert len(z) <= SIZE_BOUND(len(x) + len(y))
        assert len(x) + len(y) <= SIZE_BOUND(len(z))
        key[(x, y)] = lenlex_key(z)
    for fixed in short:
        row = [key[(fixed, y)] for y in short]
        col = [key[(x, fixed)] for x in short]
        assert row == sorted(row) and col == sorted(col)
    rng = random.Random(6)
    for _ in range(2000):
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, 64)))
        y = "".join(rng.choice("01") for _ in range(rng.randint(0, 64)))
        z = pair_encode(x, y)
        assert pair_decode(z) == (x, y)
        assert len(z) <= SIZE_BOUND(len(x) + len(y))
        assert len(x) + len(y) <= SIZE_BOUND(len(z))


@pytest.mark.acceptance(7)
def test_criterion_7_strongness_reduction():
    """inversion with a given argument decides membership on the whole corpus, < 60 s"""
    start = time.perf_counter()
    corpus = load_corpus()
    assert len(corpus) >= 20
    truths = []
    for inst in corpus:
        ws, x = subset_sum_system(inst["weights"], inst["target"])
        assert len(x) <= 20
        truth = membership(ws, x)
        truths.append(truth)
        assert reduce_inversion_to_membership(sigma_inverter(ws), ws, x) is truth
    assert any(truths) and not all(truths)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(8)
def test_criterion_8_protocols():
    """key agreement in every seeded session, zero wrong keys from the eavesdropper"""
    wrong = 0
    add = addmod_fn(4)
    domain = tuple(bitstrings(4))
    for seed in range(1000):
        t = run_two_party(SessionConfig(add, 2, domain, None, seed))
        assert t.agreed
        got = eavesdrop_attack(t, add, candidates=domain)
        wrong += got is not None and got != t.key

    ws, x = subset_sum_system([1, 2, 3, 4, 5, 6], 6)
    assert len(ws.enumerate_witnesses(x)) == 4
    dg = make_dumping_ground(ws)
    f = tau_fn(ws, dg)
    space = witness_pair_space(ws, x)
    for seed in range(100):
        t = run_two_party(tau_session_config(ws, x, 2, seed, dg=dg))
        assert t.agreed
        got = eavesdrop_attack(t, t.config.function, candidates=space)
        wrong += got is not None and got != t.key

    for seed in range(100):
        n = 3 + seed % 4
        t = run_multi_party(tau_session_config(ws, x, n, seed, dg=dg))
        assert len(t.keys) == n and t.agreed
        drawn = sorted(pair_decode(s)[1] for s in list(t.secrets.values()) + [t.public])
        assert t.key == pair_encode(x, drawn[0])
    assert f(dg.a0, dg.a0) == dg.a0
    assert wrong == 0


def _subjects():
    """Every (function, base) pair exercised by the criteria above, plus the gallery."""
    out = [
        (prop3_counterexample(), list(strings_upto(4))),
        (concat_fn(), list(strings_upto(3))),
        (addmod_fn(3), bitstrings(3)),
    ]
    for weights, target in INSTANCES:
        ws, x, base = sigma_base(weights, target)
        dg = make_dumping_ground(ws)
        full = tau_base(ws, x, base, dg, seed=target)
        for f in (sigma_fn(ws), tau_fn(ws, dg), sigma_tilde_fn(ws), tau_tilde_fn(ws, dg)):
            out += [(f, base), (f, full)]
    ws, _, ubase = unique_base()
    out.append((sigma_injective_fn(ws), ubase))
    return out


@pytest.mark.acceptance(9)
def test_criterion_9_meta_properties():
    """associative implies weakly associative; on total functions the two coincide"""
    totals = 0
    for f, base in _subjects():
        assoc = check_associative(f, base).holds
        weak = check_weak_associative(f, base).holds
        if assoc:
            assert weak, f.name
        if check_total(f, base).holds:
            totals += 1
            assert assoc == weak, f.name
    assert totals > 0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
