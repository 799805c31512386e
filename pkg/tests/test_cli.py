import json

import pytest

from aowf.cli import main
from aowf.partialfn import show


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, "check", *argv, "--json")
    return code, json.loads(out)


def verdicts(doc):
    return {v["property"]: v["holds"] for v in doc["verdicts"]}


def test_check_prop3(capsys):
    code, doc = report(capsys, "--fn", "prop3", "--base", "len<=4")
    assert code == 0
    v = verdicts(doc)
    assert v["weaklyAssociative"] and not v["associative"]
    assert doc["counterexamples"]["associative"] == ["1", "11", "1111", "0", None]


def test_check_tau(capsys):
    code, doc = report(capsys, "--fn", "tau", "--system", "subset-sum", "--instance", "ss_123.json")
    assert code == 0
    v = verdicts(doc)
    assert v["total"] and v["associative"] and v["commutative"]
    assert doc["classifications"]["strongness"] == "unverifiable"
    assert doc["context"]["a0"] == "10"


def test_check_concat_expect_commutative(capsys):
    code, doc = report(capsys, "--fn", "concat", "--expect", "commutative")
    assert code == 1
    assert doc["mismatches"] == ["commutative"]
    assert doc["counterexamples"]["commutative"][:2] == ["0", "1"]


@pytest.mark.parametrize("fn", ["sigma", "tau", "sigma-tilde", "tau-tilde", "prop3", "concat", "addmod"])
def test_expectation_table_holds(capsys, fn):
    code, doc = report(capsys, "--fn", fn)
    assert code == 0, doc["mismatches"]


def test_expectation_table_sigma_injective(capsys):
    code, doc = report(capsys, "--fn", "sigma-injective")
    assert code == 0, doc["mismatches"]


def test_check_sat_system(capsys):
    code, doc = report(capsys, "--fn", "sigma", "--system", "sat", "--instance", "sat_small.cnf")
    assert code == 0
    assert doc["context"]["system"] == "sat"


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["check", "--fn", "tau", "--out", str(path)]) == 0
    capsys.readouterr()
    docs = [json.loads(p.read_text()) for p in (a, b)]
    for d in docs:
        d.pop("timings")
    assert docs[0] == docs[1]


@pytest.mark.parametrize("fn", ["prop3", "concat", "sigma-tilde", "tau-tilde", "tau"])
def test_counterexamples_reverify_on_their_own_strings(capsys, fn):
    _, doc = report(capsys, "--fn", fn)
    ctx = doc["context"]
    extra = ["--x0", show(ctx["x0"])] if "x0" in ctx else []
    for prop, ce in doc["counterexamples"].items():
        if prop == "honest":
            continue
        strings = ce[:2] if prop in ("commutative", "total") else ce[:3]
        if prop in ("injective", "unorderedInjective"):
            strings = ce[:4]
        base = "set:" + ",".join(show(s) for s in dict.fromkeys(strings))
        _, again = report(capsys, "--fn", fn, "--base", base, *extra)
        assert verdicts(again)[prop] is False, (prop, ce)


def test_usage_errors(capsys):
    assert run(capsys, "check", "--fn", "tau", "--instance", "missing.json")[0] == 2
    assert run(capsys, "check", "--fn", "prop3", "--base", "bogus")[0] == 2
    assert run(capsys, "check", "--fn", "prop3", "--expect", "shiny")[0] == 2
    assert run(capsys, "check", "--fn", "prop3", "--base", "set:012")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["demo", "no-such-demo"])
    assert exc.value.code == 2


def test_triple_guard_rail(capsys, monkeypatch):
    monkeypatch.setenv("AOWF_MAX_TRIPLES", "100")
    code, _, err = run(capsys, "check", "--fn", "prop3")
    assert code == 2 and "AOWF_MAX_TRIPLES" in err


def test_witness_budget_guard_rail(capsys, monkeypatch):
    monkeypatch.setenv("AOWF_WITNESS_BUDGET", "2")
    assert run(capsys, "check", "--fn", "sigma")[0] == 2


def test_bad_instance_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"weights": [], "target": 1}')
    assert run(capsys, "check", "--fn", "sigma", "--instance", str(p))[0] == 2


@pytest.mark.parametrize(
    "demo", ["prop3-split", "lifting-counterexample", "strongness-reduction", "injective-up"]
)
def test_demos(capsys, demo):
    code, out, _ = run(capsys, "demo", demo)
    assert code == 0
    assert out.strip().endswith("reproduced")


def test_demo_prop3_prints_split(capsys):
    _, out, _ = run(capsys, "demo", "prop3-split")
    assert "(1 ∘ 11) ∘ 1111 = 0" in out
    assert "1 ∘ (11 ∘ 1111) = ⊥" in out


def test_protocol_two_party_addmod(capsys):
    code, out, _ = run(capsys, "protocol", "two-party", "--fn", "addmod", "--width", "4", "--seed", "7", "--json")
    assert code == 0
    assert json.loads(out)["agreed"]


def test_protocol_multi_party_tau(capsys):
    code, out, _ = run(
        capsys, "protocol", "multi-party", "--fn", "tau", "--instance", "ss_multi.json",
        "-n", "4", "--seed", "1", "--json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(set(doc["keys"].values())) == 1


def test_protocol_attack(capsys):
    code, out, _ = run(capsys, "protocol", "two-party", "--fn", "tau", "--attack", "--json")
    assert code == 0
    result = json.loads(out)["attack_result"]
    assert result["matches_key"] is True
    assert result["label"] == "desk-scale brute force, not a security claim"


def test_protocol_errors(capsys):
    assert run(capsys, "protocol", "multi-party", "--fn", "concat")[0] == 2
    assert run(capsys, "protocol", "two-party", "-n", "3")[0] == 2
    assert run(capsys, "protocol", "multi-party", "--attack")[0] == 2
