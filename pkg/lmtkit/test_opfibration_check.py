"""
Test script to verify the lifting checks on functors over a base.
"""

import logging

import pytest

from lmtkit.errors import SortError
from lmtkit.fincat import FinFunctor, identity_functor, pair_id
from lmtkit.grothendieck import (grothendieck, grothendieck_cleavage, grothendieck_fibration,
                                 roundtrip_equivalence_check, to_opindexed, validate_opindexed)
from lmtkit.named_categories import (cat_1, cat_2, constant_opindexed, gr_1, idx_1, identity_over, le_projection,
                                     p_h, pi1, x3, z2, z2_fibre_projection)
from lmtkit.opfibration_check import (analyze_opfibration, check_morphism_of_opfibrations, check_split,
                                      choose_cleavage, choose_fibration_cleavage, compose_opfibrations, dual,
                                      fibre, is_cartesian, is_fibration, is_opfibration, is_preopfibration,
                                      pullback_opfibration, pullback_projection)
from lmtkit.retrofunctor_check import check_retrofunctor, identity_retrofunctor, retrofunctor_from_cleavage


def test_projection_is_opfibration():
    """The first projection of CAT_2 x CAT_2 lifts in both directions."""
    q = pi1()
    assert is_opfibration(q)
    assert is_fibration(q)
    result = analyze_opfibration(q)
    assert result['analysis_type'] == 'opfibration'
    assert result['holds'] is True
    assert result['preopfibration'] is True
    assert result['witness'] is None


def test_identity_is_opfibration():
    assert is_opfibration(identity_over(x3()))
    assert is_fibration(identity_over(x3()))


def test_missing_lift_is_witnessed():
    """Nothing lies above f, so the object a over x has no lift along it."""
    q = p_h()
    verdict = is_preopfibration(q)
    assert not verdict
    assert verdict.witness is not None
    result = analyze_opfibration(q)
    assert result['holds'] is False
    assert result['opfibration'] is False
    assert result['preopfibration'] is False


def test_fibres_of_projection():
    q = pi1()
    assert q.objects_over("0") == ["(0,0)", "(0,1)"]
    assert len(fibre(q, "0").morphisms) == 3


def test_order_projection():
    """Pairs x <= y over the first component: the fibre over 0 is the arrow 0 <= 1."""
    q = le_projection()
    assert is_opfibration(q)
    assert is_fibration(q)
    assert len(fibre(q, "0").morphisms) == 3
    assert q.objects_over("1") == ["(1,1)"]


def test_one_object_fibres():
    q = z2_fibre_projection()
    assert is_opfibration(q)
    assert len(fibre(q, "0").morphisms) == 2


def test_grothendieck_is_split_opfibration():
    I = idx_1()
    assert validate_opindexed(I) == []
    q = grothendieck(I)
    assert is_opfibration(q)
    cleavage = grothendieck_cleavage(q, I)
    assert check_split(q, cleavage)
    assert roundtrip_equivalence_check(q, cleavage)


def test_reindexing_roundtrip():
    """Reindexing of a split opfibration and back gives an isomorphic total category."""
    q = pi1()
    cleavage, witness = choose_cleavage(q, split_required=True)
    assert cleavage is not None, witness
    I = to_opindexed(q, cleavage)
    assert validate_opindexed(I) == []
    assert len(grothendieck(I).total.morphisms) == len(q.total.morphisms)
    assert roundtrip_equivalence_check(q)


def test_constant_family():
    q = grothendieck(constant_opindexed(cat_2(), z2()))
    assert is_opfibration(q)
    assert len(q.total.objects) == 2


def test_contravariant_grothendieck():
    q = grothendieck_fibration(idx_1())
    assert is_fibration(q)
    assert is_opfibration(dual(q))
    assert len(gr_1().total.objects) == len(q.total.objects)


def test_cartesian_morphisms_of_projection():
    """Over u, a lift is cartesian exactly when its second component is an identity."""
    q = pi1()
    assert is_cartesian(q, "(u,id_0)")
    assert not is_cartesian(q, "(u,u)")
    cleavage, witness = choose_fibration_cleavage(q, split_required=True)
    assert cleavage is not None, witness
    assert cleavage.split


def test_morphisms_of_opfibrations():
    q = pi1()
    total, base = q.total, q.base
    assert check_morphism_of_opfibrations(identity_functor(total), identity_functor(base), q, q)
    swap = FinFunctor(total, total,
                      {o: pair_id(*reversed(total.parts[o])) for o in total.objects},
                      {m: pair_id(*reversed(total.parts[m])) for m in total.morphisms}, name="swap")
    verdict = check_morphism_of_opfibrations(swap, identity_functor(base), q, q)
    assert not verdict
    assert verdict.witness['reason'] == 'square'


def test_pullbacks_along_points():
    """Pulling GR_1 back along a point of CAT_2 leaves the fibre over that point."""
    q = gr_1()
    one, base = cat_1(), q.base
    at_one = FinFunctor(one, base, {"*": "1"}, {"id_*": "id_1"}, name="pick1")
    pulled = pullback_opfibration(q, at_one)
    assert is_opfibration(pulled)
    assert len(pulled.total.objects) == 2
    assert len(pulled.total.morphisms) == 3
    assert check_morphism_of_opfibrations(pullback_projection(pulled, q), at_one, pulled, q)
    at_zero = FinFunctor(one, base, {"*": "0"}, {"id_*": "id_0"}, name="pick0")
    assert len(pullback_opfibration(q, at_zero).total.objects) == 1
    along_identity = pullback_opfibration(pi1(), identity_functor(cat_2()))
    assert len(along_identity.total.morphisms) == 9
    with pytest.raises(SortError):
        pullback_opfibration(q, identity_functor(x3()))


def test_composite_opfibrations():
    q = pi1()
    assert is_opfibration(compose_opfibrations(q, identity_over(cat_2())))
    assert is_opfibration(compose_opfibrations(identity_over(q.total), q))
    with pytest.raises(SortError):
        compose_opfibrations(q, identity_over(x3()))


def test_split_cleavage_is_a_retrofunctor():
    """Chosen lifts of a split opfibration compose like a retrofunctor."""
    I = idx_1()
    q = grothendieck(I)
    r = retrofunctor_from_cleavage(q, grothendieck_cleavage(q, I))
    assert check_retrofunctor(r)
    assert check_retrofunctor(identity_retrofunctor(cat_1()))


def test_corrupted_identity_lift(caplog):
    q = pi1()
    cleavage, _ = choose_cleavage(q, split_required=True)
    r = retrofunctor_from_cleavage(q, cleavage)
    u = next(m for m in q.total.morphisms if q.total.dom[m] == "(0,0)" and q.total.cod[m] == "(1,0)")
    r.phi[("(0,0)", "id_0")] = u
    with caplog.at_level(logging.DEBUG, logger="lmtkit.retrofunctor_check"):
        verdict = check_retrofunctor(r)
    assert not verdict
    assert any("retrofunctor" in rec.getMessage() and rec.name == "lmtkit.retrofunctor_check"
               for rec in caplog.records)


if __name__ == "__main__":
    test_projection_is_opfibration()
    test_missing_lift_is_witnessed()
    test_grothendieck_is_split_opfibration()
    print("lifting checks complete")
