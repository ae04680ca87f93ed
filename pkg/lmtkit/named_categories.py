"""The small named categories and functors used across checks, fixtures and tests."""

from .fincat import (FinCategory, FinFunctor, full_subcategory, identity_functor, monoid_category,
                     product_category, projection_functors)
from .grothendieck import StrictOpIndexedCat, grothendieck
from .opfibration_check import FuncOver


def cat_1() -> FinCategory:
    return FinCategory.build(["*"], {}, {}, name="CAT_1")


def cat_2() -> FinCategory:
    return FinCategory.build(["0", "1"], {"u": ("0", "1")}, {}, name="CAT_2")


def cat_par() -> FinCategory:
    return FinCategory.build(["0", "1"], {"u": ("0", "1"), "v": ("0", "1")}, {}, name="CAT_PAR")


def cat_01() -> FinCategory:
    """Objects empty and one with a single map ! between them."""
    return FinCategory.build(["empty", "one"], {"!": ("empty", "one")}, {}, name="CAT_01")


def x3() -> FinCategory:
    """x -f-> y -g-> z with composite h."""
    return FinCategory.build(["x", "y", "z"],
                             {"f": ("x", "y"), "g": ("y", "z"), "h": ("x", "z")},
                             {("f", "g"): "h"}, name="X3")


def chain(n: int) -> FinCategory:
    """The poset 0 < 1 < ... < n-1 with morphisms named i_j."""
    objects = [str(i) for i in range(n)]
    arrows = {f"{i}_{j}": (str(i), str(j)) for i in range(n) for j in range(i + 1, n)}
    compose = {(f"{i}_{j}", f"{j}_{k}"): f"{i}_{k}"
               for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)}
    return FinCategory.build(objects, arrows, compose, name=f"CHAIN_{n}")


def z2() -> FinCategory:
    """One-object category of the group Z/2, elements e and s."""
    table = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return monoid_category(["e", "s"], table, "e", name="Z2")


def and_monoid() -> FinCategory:
    """One-object category of ({1, 0}, and) with unit 1."""
    table = {("1", "1"): "1", ("1", "0"): "0", ("0", "1"): "0", ("0", "0"): "0"}
    return monoid_category(["1", "0"], table, "1", name="AND")


def pi1() -> FuncOver:
    """First projection CAT_2 x CAT_2 -> CAT_2."""
    c = cat_2()
    prod = product_category(c, c)
    p, _ = projection_functors(c, c, prod)
    p.name = "pi1"
    return FuncOver(p)


def p_h() -> FuncOver:
    """Y = {a, c; H} over X3 with H above the composite h; nothing lies above f or g."""
    Y = FinCategory.build(["a", "c"], {"H": ("a", "c")}, {}, name="Y_H")
    X = x3()
    p = FinFunctor(Y, X, {"a": "x", "c": "z"},
                   {"id_a": "id_x", "id_c": "id_z", "H": "h"}, name="p_H")
    return FuncOver(p)


def identity_over(c: FinCategory) -> FuncOver:
    return FuncOver(identity_functor(c))


def idx_1() -> StrictOpIndexedCat:
    """Base CAT_2, fibre(0) = CAT_1, fibre(1) = CAT_2, reindex(u) picks 0."""
    base, one, two = cat_2(), cat_1(), cat_2()
    pick0 = FinFunctor(one, two, {"*": "0"}, {"id_*": "id_0"}, name="pick0")
    reindex = {"id_0": identity_functor(one), "id_1": identity_functor(two), "u": pick0}
    return StrictOpIndexedCat(base, {"0": one, "1": two}, reindex, name="IDX_1")


def gr_1() -> FuncOver:
    return grothendieck(idx_1())


def constant_opindexed(base: FinCategory, fib: FinCategory) -> StrictOpIndexedCat:
    ident = identity_functor(fib)
    return StrictOpIndexedCat(base, {x: fib for x in base.objects},
                              {f: ident for f in base.morphisms}, name=f"const({fib.name})")


def z2_fibre_projection() -> FuncOver:
    """pi1: CAT_2 x BZ2 -> CAT_2, the one-object-fibre instance."""
    c, m = cat_2(), z2()
    prod = product_category(c, m)
    p, _ = projection_functors(c, m, prod)
    p.name = "pi1_Z2"
    return FuncOver(p)


def le_projection() -> FuncOver:
    """pi1 on the pairs x <= y of CAT_2: the fibre over 0 is 0 <= 1, the fibre over 1 is a point."""
    c = cat_2()
    prod = product_category(c, c)
    total = full_subcategory(prod, ["(0,0)", "(0,1)", "(1,1)"], name="LE_2")
    p = FinFunctor(total, c, {o: prod.parts[o][0] for o in total.objects},
                   {m: prod.parts[m][0] for m in total.morphisms}, name="pi1_le")
    return FuncOver(p)
