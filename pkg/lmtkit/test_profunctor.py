"""
Test script to verify profunctor composition, the refine embedding and the adjunction.
"""

from lmtkit.fincat import compose_functors, identity_functor
from lmtkit.named_categories import cat_2, p_h, pi1, x3
from lmtkit.profunctor import (associator, check_prof_nat, coarsen_embed, compose_nat, compose_prof,
                               composite_is_well_defined, find_prof_iso, identity_nat, identity_prof, is_prof_iso,
                               left_unitor, refine_composition_iso, refine_embed, right_unitor, validate_profunctor,
                               verify_adjunction, whisker_left, whisker_right)


def test_embeddings_are_profunctors():
    F = pi1().p
    for P in (identity_prof(x3()), refine_embed(F), coarsen_embed(F)):
        assert validate_profunctor(P) == [], P.name


def test_refine_preserves_composition():
    """refine(F);refine(G) is isomorphic to refine(F;G)."""
    F = pi1().p
    G = identity_functor(cat_2())
    t = refine_composition_iso(F, G)
    assert is_prof_iso(t)
    RF, RG = refine_embed(F), refine_embed(G)
    assert composite_is_well_defined(compose_prof(RF, RG), RF, RG)
    assert t.source.size() == refine_embed(compose_functors(F, G)).size()


def test_refine_of_identity_is_hom():
    X = x3()
    t = find_prof_iso(identity_prof(X), refine_embed(identity_functor(X)))
    assert t is not None
    assert is_prof_iso(t)


def test_unitors_and_associator():
    P = refine_embed(p_h().p)
    assert is_prof_iso(left_unitor(P))
    assert is_prof_iso(right_unitor(P))
    Q = identity_prof(x3())
    _, verdict = associator(P, Q, Q)
    assert verdict


def test_two_cells_between_composites():
    """Whiskering the unitor of hom along hom stays a natural isomorphism."""
    H = identity_prof(x3())
    t = left_unitor(H)
    assert compose_nat(t, identity_nat(H)).components == t.components
    assert check_prof_nat(identity_nat(H))
    HH = compose_prof(H, H)
    right = whisker_right(t, H, compose_prof(HH, H), HH)
    assert is_prof_iso(right)
    left = whisker_left(H, t, compose_prof(H, HH), HH)
    assert is_prof_iso(left)


def test_adjunction_for_named_functors():
    """refine(F) is left adjoint to coarsen(F) for every functor."""
    assert verify_adjunction(pi1().p)
    assert verify_adjunction(p_h().p)
    assert verify_adjunction(identity_functor(x3()))


def test_sizes_of_hom_profunctor():
    P = identity_prof(x3())
    assert P.size() == len(x3().morphisms)
    assert P.at("x", "z") == ("h",)
    assert P.at("z", "x") == ()


if __name__ == "__main__":
    test_embeddings_are_profunctors()
    test_refine_preserves_composition()
    test_adjunction_for_named_functors()
    print("profunctor checks complete")
