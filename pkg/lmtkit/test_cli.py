"""
Test script to verify the lmt-kit command line: dispatch, formats, exit codes and trace replay.
"""

import json
from pathlib import Path

from lmtkit.cli import main, run

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def test_category_check():
    code, text, output = run(["cat", "check", fixture("x3.fc")])
    assert code == 0
    assert output is None
    assert text.startswith("cat check: true\n")
    assert "category: true (3 objects, 6 morphisms)" in text


def test_grothendieck_command():
    code, text, _ = run(["fib", "grothendieck", fixture("idx1.idx"), "--format", "json"])
    assert code == 0
    result = json.loads(text)['results']['grothendieck']
    assert result['split'] is True
    assert result['retrofunctor'] is True


def test_failing_property_exits_one(capsys):
    assert main(["fib", "check-op", fixture("p_h.fun")]) == 1
    assert capsys.readouterr().out.startswith("fib check-op: false")


def test_parse_error_exits_two(capsys):
    assert main(["cat", "check", fixture("bad.fc")]) == 2
    err = capsys.readouterr().err
    assert err.startswith("lmt-kit: ")
    assert "bad.fc:6:" in err


def test_unknown_commands_exit_three():
    assert main([]) == 3
    assert main(["frobnicate"]) == 3
    assert main(["cat", "frobnicate", fixture("x3.fc")]) == 3


def test_strict_budget_exits_four():
    argv = ["--budget", "0", "--strict", "mth", "prove", fixture("monoids.mth"), fixture("assoc.eq")]
    assert main(argv) == 4
    code, _, _ = run(argv[:2] + argv[3:])
    assert code == 1


def test_zigzag_normal_form():
    assert run(["zg", "normalize", fixture("x3.fc"), "f g"]) == (0, "h\n", None)
    code, text, _ = run(["zg", "normalize", fixture("x3.fc"), "g~ f~", "--format", "json"])
    assert code == 0
    assert json.loads(text)['results']['normalize']['normal_form'] == "h~"


def test_dot_output():
    code, text, _ = run(["cat", "check", fixture("x3.fc"), "--format", "dot"])
    assert code == 0
    assert text.startswith('digraph "X3" {')
    code, text, _ = run(["--format", "dot", "fib", "check-op", fixture("pi1.fun")])
    assert code == 0
    assert "subgraph" in text


def test_prove_report_is_deterministic_and_replays(tmp_path):
    argv = ["mth", "prove", fixture("monoids.mth"), fixture("assoc.eq"), "--format", "json", "--budget", "5000"]
    first, second = run(argv), run(argv)
    assert first == second
    assert first[0] == 0
    report = tmp_path / "report.json"
    assert main(argv + ["-o", str(report)]) == 0
    data = json.loads(report.read_text(encoding="utf-8"))
    assert set(data['results']) == {"assoc3", "unit", "assoc4"}
    assert all(entry['replayed'] for entry in data['results'].values())
    code, text, _ = run(["trace", "replay", str(report)])
    assert code == 0
    assert "assoc4: true" in text


def test_zigzag_goals_replay(tmp_path):
    report = tmp_path / "zg.json"
    argv = ["zg", "prove", fixture("x3.fc"), fixture("zigzag.eq"), "--format", "json", "-o", str(report)]
    assert main(argv) == 0
    code, _, _ = run(["trace", "replay", str(report)])
    assert code == 0


def test_budget_from_environment(monkeypatch):
    """LMT_DEFAULT_BUDGET applies when no --budget flag is given."""
    monkeypatch.setenv("LMT_DEFAULT_BUDGET", "0")
    argv = ["mth", "prove", fixture("monoids.mth"), fixture("assoc.eq"), "--format", "json"]
    code, text, _ = run(argv)
    assert code == 1
    assert json.loads(text)['run']['budget'] == 0
    code, text, _ = run(argv + ["--budget", "5000"])
    assert code == 0
    assert json.loads(text)['run']['budget'] == 5000


def test_model_check():
    argv = ["mth", "check-model", fixture("monoids.mth"), fixture("z2.fc"), "--assign", "m=s", "--assign", "u=s"]
    assert run(argv)[0] == 0
    assert run(argv[:4] + ["--assign", "m=s", "--assign", "u=e"])[0] == 1


def test_corpus_generation(tmp_path):
    out = tmp_path / "corpus"
    code, _, _ = run(["--seed", "2", "corpus", "gen", "--count", "3", "--out", str(out)])
    assert code == 0
    assert sorted(p.name for p in out.iterdir()) == ["corpus_000.fc", "corpus_001.fc", "corpus_002.fc"]


def test_battery_command():
    code, text, _ = run(["analyze", "--only", "zigzag"])
    assert code == 0
    assert text.startswith("analyze: true\n")


if __name__ == "__main__":
    test_category_check()
    test_zigzag_normal_form()
    test_unknown_commands_exit_three()
    print("command line checks complete")
