"""
Test script to verify monoidal theories: term syntax, the bounded prover and models.
"""

from pathlib import Path

import pytest

from lmtkit.errors import ParseError, SortError
from lmtkit.file_formats import parse_category, parse_goals, parse_theory
from lmtkit.fincat import commutative_monoid_structure
from lmtkit.indexed_monoids import fim_hom
from lmtkit.montheory import (Gen, Id, MonSignature, MonTheory, ModelData, SignatureMorphism,
                              apply_signature_morphism, builtin_theory, check_model, check_signature_morphism,
                              comp_all, diagram_nf, enumerate_hom, equal_structural, interpret, parse_term,
                              prove_equal, replay_trace, size_of, sort_of, tensor_all, theory_im,
                              theory_of_comonoids, theory_of_monoids)
from lmtkit.named_categories import cat_1, x3, z2
from lmtkit.results import DISPROVED, PROVED
from lmtkit.string_diagrams import Diagram, Node, Slice, normal_form, replace_occurrences

FIXTURES = Path(__file__).parent / "fixtures"


def test_term_syntax():
    th = theory_of_monoids()
    t = parse_term("(m * id[x]) ; m", th.signature)
    assert sort_of(t) == (("x", "x", "x"), ("x",))
    assert size_of(t) == 5
    assert sort_of(parse_term("id[]", th.signature)) == ((), ())


def test_term_errors():
    th = theory_of_monoids()
    with pytest.raises(SortError):
        parse_term("m ; m", th.signature)
    with pytest.raises(ParseError):
        parse_term("m ; ", th.signature)
    with pytest.raises(ParseError):
        parse_term("k", th.signature)


def test_structural_equality_without_equations():
    """Interchange holds in every theory; associativity of m does not."""
    sig = MonSignature(("x",))
    sig.add("m", ("x", "x"), ("x",))
    th = MonTheory(sig, name="free")
    left = parse_term("m * m", sig)
    right = parse_term("(m * id[x x]) ; (id[x] * m)", sig)
    assert equal_structural(left, right)
    assert prove_equal(th, left, right).status == PROVED
    a = parse_term("(m * id[x]) ; m", sig)
    b = parse_term("(id[x] * m) ; m", sig)
    assert prove_equal(th, a, b).status == DISPROVED


def test_monoid_goals_prove_and_replay():
    th = parse_theory(FIXTURES / "monoids.mth")
    goals = parse_goals(FIXTURES / "assoc.eq", th)
    assert [name for name, _, _ in goals] == ["assoc3", "unit", "assoc4"]
    for name, t, s in goals:
        result = prove_equal(th, t, s, budget=5000)
        assert result.proved, (name, result.reason)
        assert result.trace
        assert replay_trace(th, t, s, result.trace)


def test_tampered_trace_is_rejected():
    th = theory_of_monoids()
    t = parse_term("(m * id[x]) ; m", th.signature)
    s = parse_term("(id[x] * m) ; m", th.signature)
    result = prove_equal(th, t, s, budget=2000)
    assert result.proved
    bad = [dict(step, rule="monoid.unit_left") for step in result.trace]
    assert not replay_trace(th, t, s, bad)


def test_symmetry_is_involutive():
    th = builtin_theory("symmetric", ["x"])
    t = parse_term("sym_x_x ; sym_x_x", th.signature)
    assert prove_equal(th, t, Id(("x", "x")), budget=2000).proved


def test_models_in_z2():
    """m and u interpreted in Z/2 with tensor given by composition."""
    th = theory_of_monoids()
    target = commutative_monoid_structure(z2())
    colours = {"x": "*"}
    assert check_model(th, ModelData(target, colours, {"m": "e", "u": "e"}))
    assert check_model(th, ModelData(target, colours, {"m": "s", "u": "s"}))
    verdict = check_model(th, ModelData(target, colours, {"m": "s", "u": "e"}))
    assert not verdict
    assert verdict.witness['equation'].startswith("monoid.")


def test_model_from_fixture_category():
    th = parse_theory(FIXTURES / "monoids.mth")
    target = commutative_monoid_structure(parse_category(FIXTURES / "z2.fc"))
    assert check_model(th, ModelData(target, {"x": "*"}, {"m": "s", "u": "s"}))
    assert not check_model(th, ModelData(target, {"x": "*"}, {"m": "s"}))


def test_hom_enumeration():
    sig = MonSignature(("x",))
    sig.add("m", ("x", "x"), ("x",))
    h = enumerate_hom(MonTheory(sig), ("x", "x", "x"), ("x",), 5)
    assert h.complete
    assert len(h.classes) == 2
    th = theory_of_monoids()
    h = enumerate_hom(th, ("x", "x", "x"), ("x",), 5, budget=500)
    assert len(h.classes) == 1
    assert not h.complete and h.caveat


def test_free_indexed_monoids():
    assert theory_im(x3()).name == "im(X3)"
    assert len(fim_hom(cat_1(), (), (), 1).classes) == 1
    h = fim_hom(cat_1(), ("*", "*"), ("*",), 3, budget=25)
    assert any(isinstance(t, Gen) and t.name == "mul_*" for members in h.classes for t in members)



def test_signature_morphism_application():
    source = theory_of_monoids().signature
    target = MonSignature(("y",))
    target.add("mul", ("y", "y"), ("y",))
    target.add("one", (), ("y",))
    f = SignatureMorphism({"x": "y"}, {"m": "mul", "u": "one"})
    assert check_signature_morphism(f, source, target)
    t = apply_signature_morphism(f, parse_term("(m * id[x]) ; m", source))
    assert t == parse_term("(mul * id[y]) ; mul", target)
    assert sort_of(t) == (("y", "y", "y"), ("y",))
    verdict = check_signature_morphism(SignatureMorphism({"x": "y"}, {"m": "mul"}), source, target)
    assert not verdict
    assert verdict.witness == {'generator': 'u'}


def test_interpretation_respects_equality():
    """Structurally equal terms and proved goals have one value in a model."""
    th = parse_theory(FIXTURES / "monoids.mth")
    model = ModelData(commutative_monoid_structure(z2()), {"x": "*"}, {"m": "s", "u": "s"})
    sig = th.signature
    left = parse_term("m * m", sig)
    right = parse_term("(m * id[x x]) ; (id[x] * m)", sig)
    assert equal_structural(left, right)
    assert interpret(model, left) == interpret(model, right)
    for name, t, s in parse_goals(FIXTURES / "assoc.eq", th):
        assert interpret(model, t) == interpret(model, s), name


def test_comonoid_counit_after_coassociativity():
    th = theory_of_comonoids()
    t = parse_term("d ; (id[x] * d) ; (e * id[x x])", th.signature)
    s = parse_term("d", th.signature)
    result = prove_equal(th, t, s, budget=5000)
    assert result.proved, result.reason
    assert replay_trace(th, t, s, result.trace)


def test_parallel_boxes_normalise():
    """Nine side-by-side boxes equal both staircase orders of the same boxes."""
    sig = MonSignature(("x",))
    f = sig.add("f", ("x",), ("x",))
    n = 9

    def step(i):
        return tensor_all([Id(("x",) * i), f, Id(("x",) * (n - 1 - i))])

    side_by_side = tensor_all([f] * n)
    rising = comp_all([step(i) for i in range(n)])
    falling = comp_all([step(i) for i in reversed(range(n))])
    assert equal_structural(side_by_side, rising)
    assert equal_structural(rising, falling)
    assert diagram_nf(side_by_side) == diagram_nf(falling)


def test_occurrence_across_an_unrelated_slice():
    """p ; q is found although a box h sits between them in the given order."""
    p, q = Node("p", ("x",), ("x",)), Node("q", ("x",), ("x",))
    h = Node("h", (), ("x",))
    d = Diagram(("x",), ("x", "x"), (Slice((), p, ()), Slice((), h, ("x",)), Slice(("x",), q, ())))
    d.check()
    lhs = Diagram.box(p).then(Diagram.box(q))
    results = {normal_form(r) for r in replace_occurrences(normal_form(d), lhs, Diagram.identity(("x",)))}
    assert normal_form(Diagram(("x",), ("x", "x"), (Slice((), h, ("x",)),))) in results


if __name__ == "__main__":
    test_term_syntax()
    test_structural_equality_without_equations()
    test_monoid_goals_prove_and_replay()
    test_models_in_z2()
    print("monoidal theory checks complete")
