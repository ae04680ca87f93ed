"""
Test script to verify the battery runner and its configuration handling.
"""

import pytest

from lmtkit import lmt_analyzer
from lmtkit.lmt_analyzer import LMTAnalyzer, RunConfig, catalan_terms, default_budget
from lmtkit.montheory import MonSignature, parse_term, structural_closure
from lmtkit.named_categories import x3
from lmtkit.results import UNKNOWN, ProofResult
from lmtkit.zigzag import zigzag_rules


def test_default_budget_from_environment(monkeypatch):
    monkeypatch.delenv("LMT_DEFAULT_BUDGET", raising=False)
    assert default_budget() == 10000
    monkeypatch.setenv("LMT_DEFAULT_BUDGET", "250")
    assert default_budget() == 250
    assert LMTAnalyzer().run.budget == 250
    monkeypatch.setenv("LMT_DEFAULT_BUDGET", "lots")
    assert default_budget() == 10000


def test_missing_keys_are_filled():
    analyzer = LMTAnalyzer({'seed': 3, 'analysis_methods': {'zigzag': True}})
    assert analyzer.run.seed == 3
    assert analyzer.run.word_length == 4
    assert analyzer.config['corpus']['count'] == 20
    assert RunConfig.from_config(analyzer.config) == analyzer.run


def test_bad_configuration():
    with pytest.raises(ValueError):
        LMTAnalyzer({'analysis_methods': {'magic': True}})
    with pytest.raises(ValueError):
        LMTAnalyzer({'seed': "3"})
    with pytest.raises(ValueError):
        LMTAnalyzer({'format': 'pdf'})
    with pytest.raises(ValueError):
        LMTAnalyzer().analyze_single_function('magic')


def test_zigzag_battery_only():
    """A partial method table runs only the listed batteries."""
    analyzer = LMTAnalyzer({'analysis_methods': {'zigzag': True, 'fox': False}})
    results = analyzer.analyze_all()
    assert list(results) == ['zigzag']
    assert results['zigzag']['holds'], results['zigzag']['failures']
    assert results['zigzag']['count'] == len(zigzag_rules(x3()))
    assert analyzer.all_hold()
    assert analyzer.summary() == {'batteries': 1, 'passed': 1, 'failed': []}


def test_monoid_prover_battery():
    assert len(catalan_terms(4)) == 5
    result = LMTAnalyzer().analyze_single_function('monoid_prover')
    assert result['holds'], result['failures']
    assert result['count'] == 5


@pytest.mark.slow
def test_fox_battery_on_small_corpus():
    analyzer = LMTAnalyzer({'corpus': {'count': 6, 'max_objects': 2, 'max_morphisms': 4},
                            'analysis_methods': {'fox': True}})
    result = analyzer.analyze_single_function('fox')
    assert result['count'] == 6
    assert result['holds'], result['failures']



SMALL_CORPUS = {'count': 4, 'max_objects': 2, 'max_morphisms': 4}


@pytest.mark.parametrize("battery", ['grothendieck', 'adjunction', 'conduche'])
def test_corpus_batteries(battery):
    analyzer = LMTAnalyzer({'corpus': dict(SMALL_CORPUS), 'analysis_methods': {battery: True}})
    result = analyzer.analyze_single_function(battery)
    assert result['analysis_type'] == battery
    assert result['count'] > 0
    assert result['holds'], result['failures']


def test_conduche_battery_reports_p_h():
    result = LMTAnalyzer({'corpus': dict(SMALL_CORPUS)}).analyze_single_function('conduche')
    assert result['p_h_witness']['morphism'] == "H"


@pytest.mark.slow
def test_structural_normal_form_battery():
    """Normal forms agree with the brute-force structural closure on every pair of terms."""
    result = LMTAnalyzer().analyze_single_function('structural_nf')
    assert result['holds'], result['failures']
    assert result['count'] > 3000


def test_structural_closure_crosses_larger_terms():
    """``f * k`` and ``f ; (id[b] * k)`` only meet through a term above the bound."""
    sig = MonSignature(("a", "b"))
    sig.add("f", ("a",), ("b",))
    sig.add("k", (), ("b",))
    terms, ds = structural_closure(sig, 5)
    left, right = parse_term("f * k", sig), parse_term("f ; (id[b] * k)", sig)
    assert left in terms and right in terms
    assert ds.same(left, right)
    assert not ds.same(left, parse_term("k * f", sig))


@pytest.mark.slow
def test_deflation_battery():
    analyzer = LMTAnalyzer({'corpus': dict(SMALL_CORPUS), 'analysis_methods': {'deflation': True}})
    result = analyzer.analyze_single_function('deflation')
    assert result['count'] >= 10
    assert result['holds'], result['failures']


@pytest.mark.slow
def test_sliding_battery():
    result = LMTAnalyzer().analyze_single_function('sliding')
    assert result['internal_terms'] > 0
    assert result['count'] == 2 * result['internal_terms']
    assert result['holds'], result['failures']


def test_sliding_budget_is_capped(monkeypatch):
    """A large configured budget is cut down to the sliding cap, a small one is kept."""
    seen = []

    def fake_prove(th, a, b, budget):
        seen.append(budget)
        return ProofResult(UNKNOWN, [], 0, "not searched")

    monkeypatch.setattr(lmt_analyzer, "prove_eq1", fake_prove)
    LMTAnalyzer({'budget': 50000}).analyze_single_function('sliding')
    assert seen and set(seen) == {20000}
    seen.clear()
    LMTAnalyzer({'budget': 300}).analyze_single_function('sliding')
    assert set(seen) == {300}


if __name__ == "__main__":
    test_missing_keys_are_filled()
    test_zigzag_battery_only()
    print("battery runner checks complete")
