"""Strict opindexed categories, the Grothendieck construction and the split round trip."""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from .errors import PreconditionError
from .fincat import (FinCategory, FinFunctor, compose_functors, identity_functor,
                     is_isomorphism, opposite, opposite_functor, pair_id,
                     validate_category, validate_functor)
from .opfibration_check import (Cleavage, FuncOver, check_split, choose_cleavage, fibre,
                                reindexing_functor)
from .results import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StrictOpIndexedCat:
    """A strict functor base -> Cat, given by fibres and reindexing functors."""

    base: FinCategory
    fibre: Dict[str, FinCategory]
    reindex: Dict[str, FinFunctor]
    name: str = ""


def validate_opindexed(I: StrictOpIndexedCat) -> List[str]:
    X = I.base
    problems = [f"base: {p}" for p in validate_category(X)]
    for x in X.objects:
        if x not in I.fibre:
            problems.append(f"fibre: no fibre over {x}")
        else:
            problems.extend(f"fibre {x}: {p}" for p in validate_category(I.fibre[x]))
    if problems:
        return problems
    for f in X.morphisms:
        F = I.reindex.get(f)
        if F is None:
            problems.append(f"reindex: no functor for {f}")
            continue
        if F.source != I.fibre[X.dom[f]] or F.target != I.fibre[X.cod[f]]:
            problems.append(f"reindex: {f} has the wrong fibres")
            continue
        problems.extend(f"reindex {f}: {p}" for p in validate_functor(F))
    if problems:
        return problems
    for x in X.objects:
        if I.reindex[X.identity[x]] != identity_functor(I.fibre[x]):
            problems.append(f"strictness: reindex(id_{x}) is not the identity")
    for f, g in X.composable_pairs():
        if I.reindex[X.compose(f, g)] != compose_functors(I.reindex[f], I.reindex[g]):
            problems.append(f"strictness: reindex({f};{g}) != reindex({f});reindex({g})")
    return problems


def to_opindexed(q: FuncOver, cleavage: Cleavage) -> StrictOpIndexedCat:
    split = check_split(q, cleavage)
    if not split:
        raise PreconditionError(f"cleavage is not split: {split.witness}")
    X = q.base
    fibres = {x: fibre(q, x) for x in X.objects}
    reindex = {f: reindexing_functor(q, cleavage, f) for f in X.morphisms}
    return StrictOpIndexedCat(X, fibres, reindex, name=f"I({q.p.name})")


def grothendieck(I: StrictOpIndexedCat) -> FuncOver:
    """Total category of pairs (x, a); (f,F);(g,G) = (f;g, I(g)(F);G)."""
    X = I.base
    objects, parts = [], {}
    for x in X.objects:
        for a in I.fibre[x].objects:
            objects.append(pair_id(x, a))
            parts[pair_id(x, a)] = (x, a)
    morphisms, named = {}, {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        Ff, Fy = I.reindex[f], I.fibre[y]
        for a in I.fibre[x].objects:
            for F in Fy.morphisms:
                if Fy.dom[F] == Ff.omap[a]:
                    m = pair_id(f, F)
                    if m in morphisms:
                        m = f"{m}@{a}"
                    morphisms[m] = (pair_id(x, a), pair_id(y, Fy.cod[F]))
                    parts[m] = (f, F)
                    named[(pair_id(x, a), f, F)] = m
    compose = {}
    for m1 in morphisms:
        (f, F) = parts[m1]
        for m2 in morphisms:
            if morphisms[m1][1] != morphisms[m2][0]:
                continue
            (g, G) = parts[m2]
            z = X.cod[g]
            composite = (X.compose(f, g), I.fibre[z].compose(I.reindex[g].mmap[F], G))
            compose[(m1, m2)] = named[(morphisms[m1][0],) + composite]
    identity = {o: named[(o, X.identity[parts[o][0]], I.fibre[parts[o][0]].identity[parts[o][1]])]
                for o in objects}
    total = FinCategory(objects, morphisms, compose, identity,
                        name=f"Gr({I.name or X.name})", parts=parts)
    p = FinFunctor(total, X, {o: parts[o][0] for o in objects},
                   {m: parts[m][0] for m in morphisms}, name="gr_proj")
    return FuncOver(p)


def grothendieck_cleavage(q: FuncOver, I: StrictOpIndexedCat) -> Cleavage:
    """The split cleavage (f, id) of a Grothendieck projection."""
    X, Y = I.base, q.total
    lifts = {}
    for o in Y.objects:
        x, a = Y.parts[o]
        for f in X.out_of(x):
            chosen = (f, I.fibre[X.cod[f]].identity[I.reindex[f].omap[a]])
            lifts[(o, f)] = next(m for m in Y.out_of(o) if Y.parts[m] == chosen)
    return Cleavage(lifts, split=True)


def fibrewise_opposite(I: StrictOpIndexedCat) -> StrictOpIndexedCat:
    return StrictOpIndexedCat(I.base, {x: opposite(c) for x, c in I.fibre.items()},
                              {f: opposite_functor(F) for f, F in I.reindex.items()},
                              name=f"{I.name}^op")


def grothendieck_fibration(I: StrictOpIndexedCat) -> FuncOver:
    """Fibration over opposite(I.base) for a strict functor I.base -> Cat read contravariantly."""
    q = grothendieck(fibrewise_opposite(I))
    return FuncOver(opposite_functor(q.p))


def roundtrip_equivalence_check(q: FuncOver, cleavage: Optional[Cleavage] = None) -> Verdict:
    """grothendieck(to_opindexed(q)) is isomorphic to q over the base."""
    if cleavage is None:
        cleavage, witness = choose_cleavage(q, split_required=True)
        if cleavage is None:
            raise PreconditionError(f"no split cleavage: {witness}")
    I = to_opindexed(q, cleavage)
    r = grothendieck(I)
    Y, T = q.total, r.total
    omap = {o: T.parts[o][1] for o in T.objects}
    mmap = {}
    for m in T.morphisms:
        f, F = T.parts[m]
        a = T.parts[T.dom[m]][1]
        mmap[m] = Y.compose(cleavage.lift(a, f), F)
    K = FinFunctor(T, Y, omap, mmap, name="roundtrip")
    if not is_isomorphism(K):
        return Verdict.fail({'reason': 'comparison functor is not an isomorphism',
                             'problems': validate_functor(K)[:3]})
    for m in T.morphisms:
        if q.p.mmap[mmap[m]] != r.p.mmap[m]:
            return Verdict.fail({'reason': 'comparison is not over the base', 'morphism': m})
    logger.debug("round trip verified on %d morphisms", len(T.morphisms))
    return Verdict.ok(objects=len(T.objects), morphisms=len(T.morphisms))
