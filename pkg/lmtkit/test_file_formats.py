"""
Test script to verify the fixture file readers and writers.
"""

from pathlib import Path

import pytest

from lmtkit.deflation import opindexed_agree
from lmtkit.errors import ParseError
from lmtkit.file_formats import (format_category, parse, parse_category, parse_functor, parse_opindexed,
                                 parse_theory, read_goals)
from lmtkit.grothendieck import validate_opindexed
from lmtkit.layered_prover import LayeredTheory
from lmtkit.named_categories import cat_2, idx_1, x3
from lmtkit.opfibration_check import is_opfibration

FIXTURES = Path(__file__).parent / "fixtures"


def test_category_file():
    c = parse_category(FIXTURES / "x3.fc")
    assert c == x3()
    assert parse_category(FIXTURES / "cat2.fc") == cat_2()


def test_functor_file():
    """The projection file reads as a functor over CAT_2 that lifts."""
    q = parse_functor(FIXTURES / "pi1.fun")
    assert len(q.total.morphisms) == 9
    assert q.base == cat_2()
    assert q.p.omap["10"] == "1"
    assert is_opfibration(q)
    assert not is_opfibration(parse_functor(FIXTURES / "p_h.fun"))


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_category(FIXTURES / "bad.fc")
    assert info.value.line == 6
    assert str(info.value).startswith(f"{FIXTURES / 'bad.fc'}:6:")


def test_opindexed_file():
    """Identity reindexings are filled in; the result matches the named family."""
    I = parse_opindexed(FIXTURES / "idx1.idx")
    assert validate_opindexed(I) == []
    assert "id_0" in I.reindex
    verdict = opindexed_agree(idx_1(), I)
    assert verdict, verdict.witness


def test_goal_lines():
    goals = read_goals(FIXTURES / "assoc.eq")
    assert goals[0].name == "assoc3"
    assert all(g.line > 0 and g.lhs and g.rhs for g in goals)


def test_dispatch_by_extension(tmp_path):
    assert isinstance(parse(FIXTURES / "sliding.lmt"), LayeredTheory)
    assert parse_theory(FIXTURES / "monoids.mth").signature.colours == ("x",)
    with pytest.raises(ParseError):
        parse(tmp_path / "notes.txt")


def test_written_category_reads_back(tmp_path):
    path = tmp_path / "x3.fc"
    path.write_text(format_category(x3()), encoding="utf-8")
    assert parse_category(path) == x3()


if __name__ == "__main__":
    test_category_file()
    test_functor_file()
    test_parse_error_location()
    print("file format checks complete")
