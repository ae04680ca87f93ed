"""
Test script to verify displayed categories, collages and the Conduché equivalences.
"""

from lmtkit.displayed_check import (all_laxators_iso, analyze_displayed, benabou_roundtrip, check_displayed,
                                    collage, displayed_from_functor, factors_through_coarsen,
                                    factors_through_refine, is_factorisation_lifting)
from lmtkit.named_categories import gr_1, identity_over, p_h, pi1, x3
from lmtkit.opfibration_check import is_opfibration


def test_displayed_category_of_projection():
    D = displayed_from_functor(pi1())
    assert check_displayed(D)
    assert set(D.fib) == {"0", "1"}
    assert len(D.over["u"].at("(0,0)", "(1,0)")) == 1


def test_collage_recovers_total_category():
    """The collage of D_p is isomorphic to the total category over the base."""
    for q in (pi1(), p_h(), gr_1(), identity_over(x3())):
        verdict = benabou_roundtrip(q)
        assert verdict, verdict.witness
        assert len(collage(displayed_from_functor(q)).total.morphisms) == len(q.total.morphisms)


def test_factorisation_lifting_failure():
    """H lies over h = f;g but nothing lies over f or g."""
    verdict = is_factorisation_lifting(p_h())
    assert not verdict
    assert verdict.witness['morphism'] == "H"
    assert verdict.witness['factorisation'] == ("f", "g")
    assert not all_laxators_iso(p_h())


def test_refine_factoring_matches_preopfibration():
    q = pi1()
    factoring = factors_through_refine(q)
    assert factoring is not None
    assert set(factoring.functors) == set(q.base.morphisms)
    assert factors_through_refine(p_h()) is None
    assert factors_through_coarsen(q) is not None


def test_conduche_battery_agrees():
    for q in (pi1(), p_h(), gr_1()):
        result = analyze_displayed(q)
        assert result['holds'], (q.p.name, result)
        if result['opfibration']:
            assert result['factorisation_lifting']
    assert analyze_displayed(pi1())['laxators_iso'] is True
    assert is_opfibration(gr_1())


if __name__ == "__main__":
    test_displayed_category_of_projection()
    test_collage_recovers_total_category()
    test_factorisation_lifting_failure()
    print("displayed category checks complete")
