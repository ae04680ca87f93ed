"""Displayed categories of functors, collages, path components of factorisations and the
factorisation-lifting (Conduché) checks.

A displayed category over X assigns a fibre category to each object and a profunctor
between fibres to each morphism; the laxator glues composites. ``displayed_from_functor``
reads one off a functor p: Y -> X; ``collage`` glues it back together.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fincat import FinCategory, FinFunctor, enumerate_functors, is_isomorphism, pair_id
from .opfibration_check import (FuncOver, fibre, is_fibration, is_opfibration,
                                is_prefibration, is_preopfibration)
from .profunctor import (FinProfunctor, ProfNat, coarsen_embed, compose_prof, find_prof_iso,
                         identity_prof, refine_embed, validate_profunctor)
from .results import Verdict
from .union_find import order_key

logger = logging.getLogger(__name__)

Triple = Tuple[str, str, str]


@dataclass(frozen=True, eq=False)
class DisplayedCat:
    """Normal lax functor X -> Prof on finite data.

    ``laxator[(f, g)][(a, c)]`` maps each class representative of
    ``composites[(f, g)]`` at (a, c) to an element of ``over[f;g]``.
    """

    base: FinCategory
    fib: Dict[str, FinCategory]
    over: Dict[str, FinProfunctor]
    composites: Dict[Tuple[str, str], FinProfunctor]
    laxator: Dict[Tuple[str, str], Dict[Tuple[str, str], Dict]]
    name: str = ""

    def lax(self, f: str, g: str, a: str, c: str, triple) -> str:
        comp = self.composites[(f, g)]
        return self.laxator[(f, g)][(a, c)][comp.canonical(a, c, triple)]


def displayed_from_functor(q: FuncOver) -> DisplayedCat:
    """D_p: fibres of p, morphisms above f as a profunctor, laxator by composition in Y."""
    Y, X = q.total, q.base
    fib = {x: fibre(q, x) for x in X.objects}
    over = {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        elems = {(a, b): tuple(q.above(f, a, b)) for a in fib[x].objects for b in fib[y].objects}
        over[f] = FinProfunctor(fib[x], fib[y], elems,
                                lambda V, F, W: Y.compose(Y.compose(V, F), W), name=f"D({f})")
    composites, laxator = {}, {}
    for f, g in X.composable_pairs():
        comp = compose_prof(over[f], over[g])
        composites[(f, g)] = comp
        laxator[(f, g)] = {key: {rep: Y.compose(rep[1], rep[2]) for rep in members}
                           for key, members in comp.elems.items()}
    logger.debug("displayed category of %s: %d composable pairs", q.p.name, len(composites))
    return DisplayedCat(X, fib, over, composites, laxator, name=f"D_{q.p.name}")


def check_displayed(D: DisplayedCat) -> Verdict:
    """Normality, profunctor laws, laxator well-defined and natural, lax associativity and unitality."""
    X = D.base
    for x in X.objects:
        over_id = {k: set(v) for k, v in D.over[X.identity[x]].elems.items()}
        if over_id != {k: set(v) for k, v in identity_prof(D.fib[x]).elems.items()}:
            return Verdict.fail({'reason': 'normality', 'object': x})
    for f in X.morphisms:
        problems = validate_profunctor(D.over[f])
        if problems:
            return Verdict.fail({'reason': 'profunctor', 'morphism': f, 'problem': problems[0]})
    for (f, g), comp in sorted(D.composites.items()):
        target = D.over[X.compose(f, g)]
        A, C = comp.source, comp.target
        for (a, c), cls in comp.classes.items():
            for rep, members in cls.items():
                value = D.laxator[(f, g)][(a, c)][rep]
                if value not in target.at(a, c):
                    return Verdict.fail({'reason': 'laxator leaves its hom-set', 'pair': (f, g)})
                for b, F, G in members:
                    if D.lax(f, g, a, c, (b, F, G)) != value:
                        return Verdict.fail({'reason': 'laxator not well defined', 'pair': (f, g)})
                for V in A.into(a):
                    for W in C.out_of(c):
                        lhs = D.lax(f, g, A.dom[V], C.cod[W], comp.act(V, rep, W))
                        if lhs != target.act(V, value, W):
                            return Verdict.fail({'reason': 'laxator not natural', 'pair': (f, g), 'class': rep})
    for f, g in X.composable_pairs():
        for h in X.out_of(X.cod[g]):
            fg, gh = X.compose(f, g), X.compose(g, h)
            P, Q, R = D.over[f], D.over[g], D.over[h]
            for (a, b), Fs in P.elems.items():
                for c in Q.target.objects:
                    for G in Q.at(b, c):
                        for d in R.target.objects:
                            for H in R.at(c, d):
                                for F in Fs:
                                    left = D.lax(fg, h, a, d, (c, D.lax(f, g, a, c, (b, F, G)), H))
                                    right = D.lax(f, gh, a, d, (b, F, D.lax(g, h, b, d, (c, G, H))))
                                    if left != right:
                                        return Verdict.fail({'reason': 'lax associativity', 'triple': (f, g, h)})
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        P = D.over[f]
        for (a, b), Fs in P.elems.items():
            for F in Fs:
                for V in P.source.into(a):
                    got = D.lax(X.identity[x], f, P.source.dom[V], b, (a, V, F))
                    if got != P.act(V, F, P.target.identity[b]):
                        return Verdict.fail({'reason': 'left unitality', 'morphism': f})
                for W in P.target.out_of(b):
                    got = D.lax(f, X.identity[y], a, P.target.cod[W], (b, F, W))
                    if got != P.act(P.source.identity[a], F, W):
                        return Verdict.fail({'reason': 'right unitality', 'morphism': f})
    return Verdict.ok()


def collage(D: DisplayedCat) -> FuncOver:
    """Objects (x, a), morphisms (f, F) with F in D(f)(a, b), composed through the laxator."""
    X = D.base
    objects, parts = [], {}
    for x in X.objects:
        for a in D.fib[x].objects:
            objects.append(pair_id(x, a))
            parts[pair_id(x, a)] = (x, a)
    morphisms = {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        for (a, b), elems in D.over[f].elems.items():
            for F in elems:
                m = pair_id(f, F)
                morphisms[m] = (pair_id(x, a), pair_id(y, b))
                parts[m] = (f, F)
    compose = {}
    for m1, (s1, t1) in morphisms.items():
        f, F = parts[m1]
        for m2, (s2, t2) in morphisms.items():
            if t1 != s2:
                continue
            g, G = parts[m2]
            a, b, c = parts[s1][1], parts[t1][1], parts[t2][1]
            compose[(m1, m2)] = pair_id(X.compose(f, g), D.lax(f, g, a, c, (b, F, G)))
    identity = {o: pair_id(X.identity[parts[o][0]], D.fib[parts[o][0]].identity[parts[o][1]])
                for o in objects}
    total = FinCategory(objects, morphisms, compose, identity, name=f"collage({D.name})", parts=parts)
    p = FinFunctor(total, X, {o: parts[o][0] for o in objects},
                   {m: parts[m][0] for m in morphisms}, name="collage_proj")
    return FuncOver(p)


def benabou_roundtrip(q: FuncOver) -> Verdict:
    """The comparison (x, a) |-> a, (f, F) |-> F is an isomorphism over the base."""
    c = collage(displayed_from_functor(q))
    T = c.total
    K = FinFunctor(T, q.total, {o: T.parts[o][1] for o in T.objects},
                   {m: T.parts[m][1] for m in T.morphisms}, name="benabou")
    if not is_isomorphism(K):
        return Verdict.fail({'reason': 'comparison is not an isomorphism'})
    for m in T.morphisms:
        if q.p.mmap[K.mmap[m]] != c.p.mmap[m]:
            return Verdict.fail({'reason': 'comparison is not over the base', 'morphism': m})
    return Verdict.ok(objects=len(T.objects), morphisms=len(T.morphisms))


def composable_lifts(q: FuncOver, f: str, g: str, a: str, c: str) -> List[Triple]:
    Y = q.total
    return sorted((F, Y.cod[F], G) for F in q.above(f, a=a) for G in q.above(g, a=Y.cod[F], b=c))


def path_components(q: FuncOver, f: str, g: str, a: str, c: str) -> List[List[Triple]]:
    """Lift pairs (F, b, G) of (f, g) from a to c, connected by fibre maps H with F;H = F', G = H;G'."""
    Y, X = q.total, q.base
    nodes = composable_lifts(q, f, g, a, c)
    if not nodes:
        return []
    index = {node: i for i, node in enumerate(nodes)}
    id_mid = X.identity[X.cod[f]]
    rows, cols = [], []
    for F, b, G in nodes:
        for H in q.above(id_mid, a=b):
            for F2, b2, G2 in nodes:
                if b2 == Y.cod[H] and Y.compose(F, H) == F2 and Y.compose(H, G2) == G:
                    rows.append(index[(F, b, G)])
                    cols.append(index[(F2, b2, G2)])
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(nodes), len(nodes)))
    _, labels = connected_components(graph, directed=False)
    groups: Dict[int, List[Triple]] = {}
    for node, label in zip(nodes, labels):
        groups.setdefault(int(label), []).append(node)
    return sorted(groups.values(), key=lambda comp: order_key(comp[0]))


def is_factorisation_lifting(q: FuncOver) -> Verdict:
    """Every base factorisation of p(F) lifts to a factorisation of F, all in one path component."""
    Y, X = q.total, q.base
    for F in Y.morphisms:
        a, c = Y.dom[F], Y.cod[F]
        pF = q.p.mmap[F]
        for f in X.out_of(X.dom[pF]):
            for g in X.hom(X.cod[f], X.cod[pF]):
                if X.compose(f, g) != pF:
                    continue
                components = [[t for t in comp if Y.compose(t[0], t[2]) == F]
                              for comp in path_components(q, f, g, a, c)]
                components = [comp for comp in components if comp]
                if len(components) != 1:
                    logger.debug("%s: %d components over (%s, %s)", F, len(components), f, g)
                    return Verdict.fail({'morphism': F, 'factorisation': (f, g),
                                         'components': len(components)})
    return Verdict.ok()


def laxator_is_iso(q: FuncOver, f: str, g: str, D: Optional[DisplayedCat] = None) -> bool:
    D = D or displayed_from_functor(q)
    X = D.base
    target = D.over[X.compose(f, g)]
    for (a, c), comp in D.laxator[(f, g)].items():
        image = set(comp.values())
        if len(image) != len(comp) or image != set(target.at(a, c)):
            return False
    return True


def all_laxators_iso(q: FuncOver) -> Verdict:
    D = displayed_from_functor(q)
    for f, g in D.base.composable_pairs():
        if not laxator_is_iso(q, f, g, D):
            return Verdict.fail({'pair': (f, g)})
    return Verdict.ok()


@dataclass(frozen=True, eq=False)
class RefineFactoring:
    """Per base morphism: the fibre functor, the iso D(f) -> F^refine, and the recovered lifts."""

    functors: Dict[str, FinFunctor]
    isos: Dict[str, ProfNat]
    lifts: Dict[Tuple[str, str], str]


def _invert(t: ProfNat) -> Dict[Tuple[str, str], Dict]:
    return {key: {v: k for k, v in comp.items()} for key, comp in t.components.items()}


def factors_through_refine(q: FuncOver) -> Optional[RefineFactoring]:
    """Search fibre functors F_f with D(f) naturally isomorphic to F_f^refine."""
    D = displayed_from_functor(q)
    X = D.base
    functors, isos, lifts = {}, {}, {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        found = None
        for F in enumerate_functors(D.fib[x], D.fib[y]):
            t = find_prof_iso(D.over[f], refine_embed(F))
            if t is not None:
                found = (F, t)
                break
        if found is None:
            logger.debug("no refine factoring of D(%s)", f)
            return None
        F, t = found
        F.name = f"{f}_!"
        functors[f], isos[f] = F, t
        inverse = _invert(t)
        for a in D.fib[x].objects:
            Fa = F.omap[a]
            lifts[(a, f)] = inverse[(a, Fa)][D.fib[y].identity[Fa]]
    return RefineFactoring(functors, isos, lifts)


def factors_through_coarsen(q: FuncOver) -> Optional[RefineFactoring]:
    """Dual search: D(f) naturally isomorphic to G_f^coarsen for G_f from fib(cod f) to fib(dom f)."""
    D = displayed_from_functor(q)
    X = D.base
    functors, isos, lifts = {}, {}, {}
    for f in X.morphisms:
        x, y = X.dom[f], X.cod[f]
        found = None
        for G in enumerate_functors(D.fib[y], D.fib[x]):
            t = find_prof_iso(D.over[f], coarsen_embed(G))
            if t is not None:
                found = (G, t)
                break
        if found is None:
            return None
        G, t = found
        G.name = f"{f}^*"
        functors[f], isos[f] = G, t
        inverse = _invert(t)
        for b in D.fib[y].objects:
            Gb = G.omap[b]
            lifts[(b, f)] = inverse[(Gb, b)][D.fib[x].identity[Gb]]
    return RefineFactoring(functors, isos, lifts)


def split_factorisation_lifting(q: FuncOver) -> Tuple[Dict[Tuple[str, str, str], Triple], Verdict]:
    """Deterministic chosen factorisation for every (F, f, g) and the split laws.

    Trivial factorisations take (id, F) and (F, id); otherwise the smallest lift pair.
    """
    Y, X = q.total, q.base
    chosen: Dict[Tuple[str, str, str], Triple] = {}
    for F in Y.morphisms:
        a, c = Y.dom[F], Y.cod[F]
        pF = q.p.mmap[F]
        for f in X.out_of(X.dom[pF]):
            for g in X.hom(X.cod[f], X.cod[pF]):
                if X.compose(f, g) != pF:
                    continue
                if X.is_identity(f):
                    chosen[(F, f, g)] = (Y.identity[a], a, F)
                elif X.is_identity(g):
                    chosen[(F, f, g)] = (F, c, Y.identity[c])
                else:
                    lifts = [t for t in composable_lifts(q, f, g, a, c) if Y.compose(t[0], t[2]) == F]
                    if not lifts:
                        return chosen, Verdict.fail({'morphism': F, 'factorisation': (f, g)})
                    chosen[(F, f, g)] = lifts[0]
    for (F, f, gh), (A, _, B) in sorted(chosen.items()):
        for g in X.out_of(X.cod[f]):
            for h in X.hom(X.cod[g], X.cod[gh]):
                if X.compose(g, h) != gh:
                    continue
                B1, _, B2 = chosen[(B, g, h)]
                C, _, Dm = chosen[(F, X.compose(f, g), h)]
                C1, _, C2 = chosen[(C, f, g)]
                if (A, B1, B2) != (C1, C2, Dm):
                    return chosen, Verdict.fail({'morphism': F, 'factorisation': (f, g, h)})
    return chosen, Verdict.ok(choices=len(chosen))


def analyze_displayed(q: FuncOver) -> Dict:
    """The Conduché battery on one functor: each side computed independently."""
    fl = is_factorisation_lifting(q)
    lax = all_laxators_iso(q)
    pre = is_preopfibration(q)
    refine = factors_through_refine(q)
    prefib = is_prefibration(q)
    coarsen = factors_through_coarsen(q)
    op = is_opfibration(q)
    consistent = (fl.holds == lax.holds and pre.holds == (refine is not None)
                  and prefib.holds == (coarsen is not None)
                  and (not pre.holds or op.holds == fl.holds))
    return {
        'analysis_type': 'displayed',
        'holds': consistent,
        'factorisation_lifting': fl.holds,
        'laxators_iso': lax.holds,
        'preopfibration': pre.holds,
        'factors_through_refine': refine is not None,
        'prefibration': prefib.holds,
        'factors_through_coarsen': coarsen is not None,
        'opfibration': op.holds,
        'fibration': is_fibration(q).holds,
        'witness': fl.witness,
        'summary': "equivalences agree" if consistent else "equivalence battery disagrees",
    }
