"""
Test script to verify zigzag words and the 2-cell calculus over them.
"""

from pathlib import Path

import numpy as np
import pytest

from lmtkit.errors import SortError
from lmtkit.file_formats import read_goals
from lmtkit.named_categories import chain, x3
from lmtkit.zigzag import (BWD, FWD, enumerate_words, format_word, parse_twocell, parse_word,
                           prove_twocells_equal, random_word, replay_twocells, twocell_boundary,
                           zg_compose, zg_monoidal, zg_normalize, zg_reverse, zigzag_rules)

FIXTURES = Path(__file__).parent / "fixtures"


def test_normalize_merges_runs():
    X = x3()
    assert format_word(zg_normalize(X, parse_word(X, "f g"))) == "h"
    assert format_word(zg_normalize(X, parse_word(X, "g~ f~"))) == "h~"
    assert format_word(zg_normalize(X, parse_word(X, "id_x f"))) == "f"
    assert format_word(zg_normalize(X, parse_word(X, "f f~"))) == "f f~"
    assert format_word(parse_word(X, "@y")) == "@y"


def test_ill_typed_words():
    X = x3()
    with pytest.raises(SortError):
        parse_word(X, "g f")
    with pytest.raises(SortError):
        parse_word(X, "@w")
    with pytest.raises(SortError):
        zg_compose(X, parse_word(X, "f"), parse_word(X, "f"))


def test_random_words_normalize_once():
    """Normal forms are fixed points with no identities and alternating directions."""
    X = x3()
    rng = np.random.default_rng(7)
    for _ in range(25):
        w = random_word(X, rng, 5)
        n = zg_normalize(X, w)
        assert zg_normalize(X, n) == n
        assert (n.src, n.tgt) == (w.src, w.tgt)
        assert not any(X.is_identity(m) for _, m in n.entries)
        assert all(a[0] != b[0] for a, b in zip(n.entries, n.entries[1:]))
        assert zg_reverse(zg_reverse(n)) == n


def test_enumerate_words_from_x():
    words = {format_word(w) for w in enumerate_words(x3(), "x", max_len=2)}
    assert words == {"@x", "f", "h", "f f~", "h g~", "h h~"}


def test_unit_boundary():
    X = x3()
    src, tgt = twocell_boundary(X, parse_twocell(X, "eta[f]"))
    assert format_word(src) == "@x"
    assert format_word(tgt) == "f f~"
    src, tgt = twocell_boundary(X, parse_twocell(X, "eps[f]"))
    assert format_word(src) == "f~ f"
    assert format_word(tgt) == "@y"


def test_rules_of_the_chain():
    """Two triangle laws per arrow, two identity laws per object, two coherences per composable pair."""
    rules = zigzag_rules(chain(3))
    assert len(rules) == 2 * 3 + 2 * 3 + 2 * 1
    names = {r.name for r in rules}
    assert "triangle.left[0_1]" in names
    assert "unit.coherence[0_1,1_2]" in names


def test_fixture_goals_prove_and_replay():
    X = x3()
    goals = read_goals(FIXTURES / "zigzag.eq")
    assert [g.name for g in goals] == ["triangle.left", "triangle.right", "unit.identity", "unit.coherence"]
    for g in goals:
        e1, e2 = parse_twocell(X, g.lhs), parse_twocell(X, g.rhs)
        result = prove_twocells_equal(X, e1, e2, budget=5000)
        assert result.proved, (g.name, result.reason)
        assert replay_twocells(X, e1, e2, result.trace)


def test_boundaries_must_agree():
    X = x3()
    with pytest.raises(SortError):
        prove_twocells_equal(X, parse_twocell(X, "eta[f]"), parse_twocell(X, "eta[g]"))


def test_directions():
    X = x3()
    w = parse_word(X, "h g~")
    assert [d for d, _ in w.entries] == [FWD, BWD]
    assert w.tgt == "y"


def test_products_of_generating_zigzags():
    """Meets in X3: f x g is f, whichever way the product is formed."""
    X = x3()
    mon = zg_monoidal(X)
    table = mon.generator_table()
    assert len(table) == 36
    fg = table[((FWD, "f"), (FWD, "g"))]
    assert format_word(fg) == "f"
    assert mon.equal(mon.tensor_words(parse_word(X, "f"), parse_word(X, "g")), fg)


if __name__ == "__main__":
    test_normalize_merges_runs()
    test_random_words_normalize_once()
    test_fixture_goals_prove_and_replay()
    print("zigzag checks complete")
