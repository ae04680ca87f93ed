"""
Test script to verify uniform comonoids, indexed monoids and the structures built on them.
"""

import pytest

from lmtkit.errors import PreconditionError
from lmtkit.fincat import identity_functor
from lmtkit.im_opfibrations import (analyze_im_opfibration, analyze_monoid_translation, check_monoid,
                                    componentwise_monoid)
from lmtkit.indexed_monoids import (analyze_indexed_monoids, cartesian_monoidal, check_fim_universal,
                                    find_uniform_comonoids, fox_roundtrip, indexed_monoids_on)
from lmtkit.monoidal_deflation import analyze_monoidal_deflation
from lmtkit.named_categories import cat_1, cat_2, cat_par, identity_over, x3, z2


def test_fox_on_terminal_category():
    verdict = fox_roundtrip(cat_1())
    assert verdict
    assert verdict.details['cartesian'] is True
    uc, _ = find_uniform_comonoids(cartesian_monoidal(cat_1()))
    assert uc is not None


def test_fox_without_products():
    """No terminal object: the round trip holds vacuously and says so."""
    verdict = fox_roundtrip(cat_par())
    assert verdict
    assert verdict.details['cartesian'] is False


def test_indexed_monoids_on_terminal_category():
    result = analyze_indexed_monoids(cat_1())
    assert result['analysis_type'] == 'indexed_monoids'
    assert result['holds'] is True
    assert result['indexed_monoids'] is True
    assert result['monoid_homs'] == 1


def test_chain_has_no_indexed_monoids():
    """Meets make X3 cartesian, but only the top object receives a unit."""
    result = analyze_indexed_monoids(x3())
    assert result['cartesian'] is True
    assert result['indexed_monoids'] is False
    assert result['holds'] is False
    im, witness = indexed_monoids_on(x3())
    assert im is None and witness is not None


def test_componentwise_monoid_translations():
    M = componentwise_monoid(cat_1(), z2())
    assert check_monoid(M)
    result = analyze_monoid_translation(M)
    assert result['holds'], result['witness']
    assert result['monoid_roundtrip'] is True
    assert result['im_roundtrip'] is True


def test_componentwise_monoid_needs_one_object():
    with pytest.raises(PreconditionError):
        componentwise_monoid(cat_1(), cat_2())


def test_im_opfibration_over_terminal_category():
    result = analyze_im_opfibration(identity_over(cat_1()))
    assert result['holds'], result['witness']
    assert result['restriction_opfibration'] is True
    missing = analyze_im_opfibration(identity_over(cat_par()))
    assert missing['holds'] is False
    assert 'base' in missing['witness']


@pytest.mark.slow
def test_free_category_extension_is_unique():
    """The identity on CAT_1 extends to Fim(CAT_1) and the extension respects term classes."""
    im, witness = indexed_monoids_on(cat_1())
    assert im is not None, witness
    verdict = check_fim_universal(cat_1(), im, identity_functor(cat_1()), bound=2, budget=100)
    assert verdict, verdict.witness
    assert verdict.details['classes'] > 0


@pytest.mark.slow
def test_monoidal_deflation_round_trip():
    result = analyze_monoidal_deflation(identity_over(cat_1()))
    assert result['holds'], result['witness']
    assert result['route'] == "im_opfibration"
    assert result['roundtrip'] is True


if __name__ == "__main__":
    test_fox_on_terminal_category()
    test_indexed_monoids_on_terminal_category()
    test_componentwise_monoid_translations()
    print("indexed monoid checks complete")
