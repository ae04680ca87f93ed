"""
Test script to verify layered theories: sorting procedures, canonical types and both provers.
"""

from pathlib import Path

import pytest

from lmtkit.errors import SortError
from lmtkit.file_formats import parse_layered_theory, read_goals
from lmtkit.layered_prover import (LayeredTheory, prove_eq1, replay_eq1, sliding_goal, structural_equations,
                                   validate_theory)
from lmtkit.layered_syntax import (Block, LayeredMorphism, LayeredSignature, LTerm, SortingProcedure, TyApply,
                                   TyColour, TyConcat, TyUnit, apply_layered_morphism, box, canonical_type, comp,
                                   enumerate_internal_terms, ext_gen, ext_gen_op, identity_morphism, int_gen, int_id,
                                   parse_lterm, typecheck_term, types_congruent)
from lmtkit.montheory import MonSignature
from lmtkit.two_terms import (TCell, apply_morphism_2term, parse_two_term, prove_eq2, replay_eq2,
                              typecheck_2term)

FIXTURES = Path(__file__).parent / "fixtures"

X = Block("ω", ("x",))


def two_layers() -> LayeredSignature:
    inner = MonSignature(("x",))
    inner.add("s", ("x",), ("x",))
    return LayeredSignature(("ω", "τ"), functors={"f": ("ω", "τ")}, layer_sigs={"ω": inner})


def test_boundary_generator_sort():
    sig = two_layers()
    typed = typecheck_term(sig, ext_gen("f", X), procedure=SortingProcedure.OPFIBRATIONAL)
    assert typed.sort == ((X,), (Block("τ", ("f(x)",)),))
    assert not typed.internal
    boxed = typecheck_term(sig, box("f", int_gen("ω", "s")))
    assert boxed.internal
    assert boxed.sort == ((Block("τ", ("f(x)",)),), (Block("τ", ("f(x)",)),))


def test_sorting_procedures_restrict_rules():
    """The opfibrational procedure has no backward boundary generators."""
    sig = two_layers()
    with pytest.raises(SortError):
        typecheck_term(sig, ext_gen_op("f", X), procedure=SortingProcedure.OPFIBRATIONAL)
    assert typecheck_term(sig, ext_gen_op("f", X), procedure=SortingProcedure.FIBRATIONAL).sort[1] == (X,)
    with pytest.raises(SortError):
        typecheck_term(sig, ext_gen("f", X), procedure=SortingProcedure.FIBRATIONAL)


def test_sort_errors():
    sig = two_layers()
    with pytest.raises(SortError):
        typecheck_term(sig, box("f", ext_gen("f", X)))
    with pytest.raises(SortError):
        typecheck_term(sig, comp(ext_gen("f", X), int_gen("ω", "s")))
    with pytest.raises(SortError):
        typecheck_term(sig, int_gen("τ", "s"))


def test_canonical_types():
    sig = two_layers()
    assert canonical_type(sig, TyApply("f", TyUnit("ω"))) == (Block("τ", ()),)
    assert canonical_type(sig, TyApply("f", TyConcat(TyColour("x", "ω"), TyColour("x", "ω")))) == \
        (Block("τ", ("f(x)", "f(x)")),)
    with pytest.raises(SortError):
        canonical_type(sig, TyConcat(TyColour("x", "ω"), TyUnit("τ")))


def test_generating_cells_need_deflational_mode():
    sig = two_layers()
    s = int_gen("ω", "s")
    with pytest.raises(SortError):
        LayeredTheory(sig, SortingProcedure.OPFIBRATIONAL, cells={"twist": (s, s)})
    th = LayeredTheory(sig, SortingProcedure.DEFLATIONAL, cells={"twist": (s, s)})
    assert validate_theory(th) == []


def test_schemas_follow_the_procedure():
    sig = two_layers()
    opf = {s.name for s in structural_equations(LayeredTheory(sig, SortingProcedure.OPFIBRATIONAL))}
    defl = {s.name for s in structural_equations(LayeredTheory(sig, SortingProcedure.DEFLATIONAL))}
    assert "ext.slide" in opf and "coext.slide" not in opf
    assert "zigzag.left" in defl and "zigzag.left" not in opf
    assert opf < defl


def test_identity_unit_is_structural():
    th = LayeredTheory(two_layers(), SortingProcedure.OPFIBRATIONAL)
    s = int_gen("ω", "s")
    result = prove_eq1(th, comp(int_id(X), s), s)
    assert result.proved
    assert result.trace == []


def test_parse_fixture_theory():
    th = parse_layered_theory(FIXTURES / "sliding.lmt")
    assert th.procedure is SortingProcedure.OPFIBRATIONAL
    assert validate_theory(th) == []
    t = parse_lterm("s ; ext(f, ω: x)", th.signature)
    assert th.sort(t) == ((X,), (Block("τ", ("f(x)",)),))


def test_signature_morphism_translation():
    sig = two_layers()
    F = LayeredMorphism({"ω": "α", "τ": "β"}, {"f": "g"}, generators={"ω": {"s": "r"}}, cells={"twist": "turn"})
    assert apply_layered_morphism(F, sig, Block("τ", ("f(x)",))) == Block("β", ("g(x)",))
    assert apply_layered_morphism(F, sig, int_gen("ω", "s")) == int_gen("α", "r")
    assert apply_layered_morphism(F, sig, box("f", int_gen("ω", "s"))) == box("g", int_gen("α", "r"))
    assert apply_layered_morphism(F, sig, ext_gen("f", X)) == ext_gen("g", Block("α", ("x",)))
    assert apply_morphism_2term(F, sig, TCell("twist")) == TCell("turn")
    t = comp(int_id(X), int_gen("ω", "s"), ext_gen("f", X))
    assert apply_layered_morphism(identity_morphism(sig), sig, t) == t


def test_two_term_sorts():
    th = parse_layered_theory(FIXTURES / "adjoint.lmt")
    sig = th.signature
    twice = typecheck_2term(th, parse_two_term("twist ; twist", sig))
    assert twice == typecheck_2term(th, parse_two_term("id{s}", sig))
    with pytest.raises(SortError):
        typecheck_2term(th, parse_two_term("twist ; id{ext(f, ω: x)}", sig))


@pytest.mark.slow
def test_sliding_goals_prove_and_replay():
    """A boundary generator slides past internal terms of its source layer."""
    th = parse_layered_theory(FIXTURES / "sliding.lmt")
    goals = read_goals(FIXTURES / "sliding.eq")
    assert [g.name for g in goals] == ["slide.s", "slide.st"]
    for g in goals:
        t, s = parse_lterm(g.lhs, th.signature), parse_lterm(g.rhs, th.signature)
        result = prove_eq1(th, t, s, budget=20000)
        assert result.proved, (g.name, result.reason)
        assert replay_eq1(th, t, s, result.trace)


@pytest.mark.slow
def test_sliding_goal_builder():
    th = parse_layered_theory(FIXTURES / "sliding.lmt")
    t, s = sliding_goal("f", int_gen("ω", "t"), th)
    assert prove_eq1(th, t, s, budget=20000).proved
    with pytest.raises(SortError):
        sliding_goal("f", ext_gen("f", X), th)


@pytest.mark.slow
def test_deflational_goals_prove_and_replay():
    th = parse_layered_theory(FIXTURES / "adjoint.lmt")
    assert th.procedure is SortingProcedure.DEFLATIONAL
    assert "twist" in th.cells
    for g in read_goals(FIXTURES / "adjoint.eq"):
        a, b = parse_two_term(g.lhs, th.signature), parse_two_term(g.rhs, th.signature)
        result = prove_eq2(th, a, b, budget=5000)
        assert result.proved, (g.name, result.reason)
        assert replay_eq2(th, a, b, result.trace)



def test_zero_equations_make_types_congruent():
    """With x x = x in ω, words of x collapse, also after the boundary generator."""
    sig = two_layers()
    e0 = [(Block("ω", ("x", "x")), X)]
    assert types_congruent(sig, e0, (Block("ω", ("x", "x", "x")),), (X,))
    fx = Block("τ", ("f(x)",))
    assert types_congruent(sig, e0, (Block("τ", ("f(x)", "f(x)")),), (fx,))
    assert types_congruent(sig, e0, (Block("ω", ()),), (X,)) is False
    assert types_congruent(sig, (), (X, X), (X,)) is False


def test_congruence_across_layers_is_a_sort_error():
    sig = two_layers()
    with pytest.raises(SortError):
        types_congruent(sig, (), (X,), (Block("τ", ("f(x)",)),))


def test_internal_terms_stay_internal():
    """Internal enumeration never produces boundary or external constructors."""
    sig = two_layers()
    external = {"ext-gen", "ext-gen-op", "ext-tensor", "ext-unit", "swap", "monoid", "comonoid",
                "monoid-unit", "counit", "diag", "codiag", "diag-counit", "codiag-unit"}

    def rules(t):
        yield t.rule
        for a in t.args:
            yield from rules(a)

    terms = [t for group in enumerate_internal_terms(sig, "ω", 3).values() for t in group]
    assert terms
    for t in terms:
        assert typecheck_term(sig, t).internal
        assert not external & set(rules(t))
    for t in (ext_gen("f", X), LTerm("diag", blocks=(X,)), LTerm("swap", blocks=(X, X)),
              LTerm("monoid", blocks=(X, X)), comp(int_gen("ω", "s"), ext_gen("f", X))):
        assert not typecheck_term(sig, t).internal


def test_deflational_accepts_the_union():
    sig = two_layers()
    s = int_gen("ω", "s")
    one_sided = [ext_gen("f", X), ext_gen_op("f", X), comp(s, ext_gen("f", X)),
                 LTerm("diag", blocks=(X,)), LTerm("codiag", blocks=(X,)), box("f", s)]
    for t in one_sided:
        for procedure in (SortingProcedure.OPFIBRATIONAL, SortingProcedure.FIBRATIONAL):
            try:
                typed = typecheck_term(sig, t, procedure=procedure)
            except SortError:
                continue
            assert typecheck_term(sig, t, procedure=SortingProcedure.DEFLATIONAL) == typed
    mixed = comp(ext_gen("f", X), ext_gen_op("f", X))
    for procedure in (SortingProcedure.OPFIBRATIONAL, SortingProcedure.FIBRATIONAL):
        with pytest.raises(SortError):
            typecheck_term(sig, mixed, procedure=procedure)
    assert typecheck_term(sig, mixed, procedure=SortingProcedure.DEFLATIONAL).sort == ((X,), (X,))


def test_comonoid_counit_law():
    th = parse_layered_theory(FIXTURES / "sliding.lmt")
    t = parse_lterm("diag(ω: x) ; (id[ω: x] * del(ω: x))", th.signature)
    s = parse_lterm("id[ω: x]", th.signature)
    result = prove_eq1(th, t, s, budget=2000)
    assert result.proved, result.reason
    assert replay_eq1(th, t, s, result.trace)


def test_two_cells_interchange():
    """Cells side by side may be composed in either order."""
    th = parse_layered_theory(FIXTURES / "adjoint.lmt")
    sig = th.signature
    a = parse_two_term("(twist * id{s}) ; (id{s} * twist)", sig)
    b = parse_two_term("twist * twist", sig)
    assert typecheck_2term(th, a) == typecheck_2term(th, b)
    result = prove_eq2(th, a, b, budget=500)
    assert result.proved, result.reason


if __name__ == "__main__":
    test_boundary_generator_sort()
    test_sorting_procedures_restrict_rules()
    test_canonical_types()
    test_schemas_follow_the_procedure()
    print("layered theory checks complete")
