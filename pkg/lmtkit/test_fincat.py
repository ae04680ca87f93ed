"""
Test script to verify finite categories, functors and the named instances.
"""

import pytest

from lmtkit.errors import SortError
from lmtkit.fincat import (FinCategory, FinFunctor, NatTransf, analyze_category, commutative_monoid_structure,
                           compose_functors, constant_functor, enumerate_functors, find_cartesian_structure,
                           find_initial, find_terminal, identity_functor, is_isomorphism, is_natural, opposite,
                           pair_functors, product_category, projection_functors, validate_category,
                           validate_functor, validate_strict_monoidal)
from lmtkit.named_categories import and_monoid, cat_01, cat_1, cat_2, cat_par, chain, gr_1, pi1, x3, z2


def test_named_categories_validate():
    """Every named category satisfies the axioms."""
    for c in (cat_1(), cat_2(), cat_par(), x3(), chain(4), z2()):
        assert validate_category(c) == [], c.name
    assert len(x3().morphisms) == 6
    assert x3().compose("f", "g") == "h"


def test_missing_composite_is_reported():
    """A composable pair without a table entry is a typing violation."""
    c = FinCategory.build(["x", "y", "z"], {"f": ("x", "y"), "g": ("y", "z"), "h": ("x", "z")}, {})
    problems = validate_category(c)
    assert "typing: f;g is undefined" in problems


def test_non_associative_table():
    """A one-object table where (a;b);a differs from a;(b;a)."""
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    c = FinCategory.build(["*"], {"a": ("*", "*"), "b": ("*", "*")}, table, name="BAD")
    problems = validate_category(c)
    assert problems
    assert all(p.startswith("associativity") for p in problems)

    result = analyze_category(c)
    assert result['analysis_type'] == 'category'
    assert result['holds'] is False
    assert result['count'] == len(problems)


def test_typing_problems_do_not_hide_unitality():
    """CAT_2 with u;id_1 redirected to id_0 reports both the boundary and the unit law."""
    c = FinCategory.build(["0", "1"], {"u": ("0", "1")}, {("u", "id_1"): "id_0"})
    problems = validate_category(c)
    assert "typing: u;id_1 = id_0 has the wrong boundary" in problems
    assert "unitality: u;id != u" in problems
    assert analyze_category(c)['count'] == len(problems)


def test_equality_ignores_name():
    a = x3()
    b = x3()
    b.name = "renamed"
    assert a == b
    assert a != cat_2()


def test_functor_enumeration():
    """CAT_2 has exactly three endofunctors: the identity and the two constants."""
    functors = list(enumerate_functors(cat_2(), cat_2()))
    assert len(functors) == 3
    assert all(validate_functor(F) == [] for F in functors)
    assert sum(1 for F in functors if is_isomorphism(F)) == 1
    assert len(list(enumerate_functors(cat_2(), cat_2(), limit=2))) == 2


def test_composition_of_functors():
    q = pi1()
    ident = [F for F in enumerate_functors(cat_2(), cat_2()) if is_isomorphism(F)][0]
    composite = compose_functors(q.p, ident)
    assert composite.mmap == q.p.mmap
    assert validate_functor(composite) == []


def test_product_and_opposite():
    prod = product_category(cat_2(), cat_2())
    assert len(prod.objects) == 4
    assert len(prod.morphisms) == 9
    assert validate_category(prod) == []
    op = opposite(x3())
    assert validate_category(op) == []
    assert op.dom["f"] == "y" and op.cod["f"] == "x"


def test_grothendieck_total_size():
    q = gr_1()
    assert len(q.total.objects) == 3
    assert len(q.total.morphisms) == 6


def test_cartesian_structure():
    """CAT_1 is cartesian; the parallel pair has no terminal object."""
    cs, witness = find_cartesian_structure(cat_1())
    assert cs is not None and witness is None
    cs, witness = find_cartesian_structure(cat_par())
    assert cs is None
    assert witness == {'missing': 'terminal'}


def test_naturality():
    c, par = cat_2(), cat_par()
    upper = FinFunctor(c, par, {"0": "0", "1": "1"}, {"id_0": "id_0", "id_1": "id_1", "u": "u"})
    lower = FinFunctor(c, par, {"0": "0", "1": "1"}, {"id_0": "id_0", "id_1": "id_1", "u": "v"})
    ids = {"0": "id_0", "1": "id_1"}
    assert is_natural(NatTransf(upper, upper, ids))
    assert not is_natural(NatTransf(upper, lower, ids))
    to_identity = NatTransf(constant_functor(c, c, "0"), identity_functor(c), {"0": "id_0", "1": "u"})
    assert is_natural(to_identity)


def test_paired_functors():
    """Pairing into a product followed by the projections gives back the factors."""
    c = cat_2()
    F, G = identity_functor(c), constant_functor(c, c, "1")
    paired = pair_functors(F, G)
    assert validate_functor(paired) == []
    p1, p2 = projection_functors(c, c, paired.target)
    assert compose_functors(paired, p1).mmap == F.mmap
    assert compose_functors(paired, p2).mmap == G.mmap


def test_initial_and_terminal_objects():
    assert find_initial(cat_01()) == "empty"
    assert find_terminal(cat_01()) == "one"
    assert find_initial(x3()) == "x"
    assert find_initial(cat_par()) is None
    assert find_initial(z2()) is None


def test_commutative_monoid_structure():
    s = commutative_monoid_structure(z2())
    assert validate_strict_monoidal(s) == []
    assert s.tensor_mor("s", "s") == "e"
    conj = commutative_monoid_structure(and_monoid())
    assert validate_strict_monoidal(conj) == []
    assert conj.tensor_mor("0", "1") == "0"
    with pytest.raises(SortError):
        commutative_monoid_structure(cat_2())


if __name__ == "__main__":
    test_named_categories_validate()
    test_missing_composite_is_reported()
    test_non_associative_table()
    test_functor_enumeration()
    print("fincat checks complete")
