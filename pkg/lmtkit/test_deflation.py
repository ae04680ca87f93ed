"""
Test script to verify deflations built from split opfibrations and their restrictions.
"""

import pytest

from lmtkit.deflation import (analyze_deflation, deflation_from_split_opfibration, extract_opindexed,
                              is_deflation, is_minimal, opindexed_agree, restrict_circ, restrict_star,
                              unique_lifting_check)
from lmtkit.errors import PreconditionError
from lmtkit.grothendieck import grothendieck
from lmtkit.named_categories import gr_1, p_h, pi1
from lmtkit.opfibration_check import is_fibration, is_opfibration


def test_no_split_cleavage_is_a_precondition():
    with pytest.raises(PreconditionError):
        deflation_from_split_opfibration(p_h(), word_length=2)


@pytest.mark.slow
def test_deflation_of_grothendieck_construction():
    d = deflation_from_split_opfibration(gr_1(), word_length=2, cell_size=8)
    assert is_minimal(d)
    assert d.fragment['word_length'] == 2
    assert len(d.total.objects) == len(gr_1().total.objects)
    verdict = is_deflation(d)
    assert verdict, verdict.witness


@pytest.mark.slow
def test_unique_lifting_everywhere():
    d = deflation_from_split_opfibration(pi1(), word_length=2, cell_size=8)
    T = d.total
    for o in T.objects:
        for f in T.X.out_of(T.over(o)):
            verdict = unique_lifting_check(d, o, f)
            assert verdict, verdict.witness


@pytest.mark.slow
def test_restrictions():
    """Forward 1-cells give back the opfibration, backward ones a fibration over the opposite base."""
    d = deflation_from_split_opfibration(gr_1(), word_length=2, cell_size=8)
    star = restrict_star(d)
    assert is_opfibration(star)
    assert star.total == grothendieck(d.source).total
    assert is_fibration(restrict_circ(d))


@pytest.mark.slow
def test_extracted_opindexed_category_agrees():
    d = deflation_from_split_opfibration(gr_1(), word_length=2, cell_size=8)
    verdict = opindexed_agree(d.source, extract_opindexed(d))
    assert verdict, verdict.witness


@pytest.mark.slow
def test_deflation_battery():
    result = analyze_deflation(pi1(), word_length=2, cell_size=8)
    assert result['analysis_type'] == 'deflation'
    assert result['holds'], result['witness']
    assert result['minimal'] is True
    assert result['star_roundtrip'] is True


if __name__ == "__main__":
    test_no_split_cleavage_is_a_precondition()
    test_deflation_of_grothendieck_construction()
    test_deflation_battery()
    print("deflation checks complete")
