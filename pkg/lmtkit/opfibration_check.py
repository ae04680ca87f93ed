"""Opcartesian maps, (pre)opfibrations, fibrations, cleavages and reindexing.

All quantifiers are checked by enumeration over the finite total and base
categories. Fibration-side checks go through ``opposite`` only.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import PreconditionError, SortError
from .fincat import (FinCategory, FinFunctor, compose_functors, opposite_functor,
                     pair_id, validate_functor, wide_restriction)
from .results import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FuncOver:
    """A functor p: Y -> X read as a category Y over the base X."""

    p: FinFunctor

    @property
    def total(self) -> FinCategory:
        return self.p.source

    @property
    def base(self) -> FinCategory:
        return self.p.target

    def objects_over(self, x: str) -> List[str]:
        return [a for a in self.total.objects if self.p.omap[a] == x]

    def above(self, f: str, a: Optional[str] = None, b: Optional[str] = None) -> List[str]:
        Y = self.total
        return [F for F in Y.morphisms if self.p.mmap[F] == f
                and (a is None or Y.dom[F] == a) and (b is None or Y.cod[F] == b)]


@dataclass(frozen=True, eq=False)
class Cleavage:
    """Chosen lift for every opliftable pair (a, f)."""

    lifts: Dict[Tuple[str, str], str]
    split: bool = False

    def lift(self, a: str, f: str) -> str:
        return self.lifts[(a, f)]


def dual(q: FuncOver) -> FuncOver:
    return FuncOver(opposite_functor(q.p))


def fibre(q: FuncOver, x: str) -> FinCategory:
    """Objects over x and morphisms over id_x."""
    objects = q.objects_over(x)
    morphisms = q.above(q.base.identity[x])
    return wide_restriction(q.total, objects, morphisms, name=f"{q.total.name}|{x}")


def opliftable_pairs(q: FuncOver) -> List[Tuple[str, str]]:
    X = q.base
    return [(a, f) for a in q.total.objects for f in X.morphisms if X.dom[f] == q.p.omap[a]]


def _opcartesian_failure(q: FuncOver, F: str, weak: bool) -> Optional[Dict]:
    Y, X, p = q.total, q.base, q.p
    a, b = Y.dom[F], Y.cod[F]
    pF = p.mmap[F]
    for G in Y.out_of(a):
        c = Y.cod[G]
        if weak:
            if p.omap[c] != p.omap[b]:
                continue
            candidates = [X.identity[p.omap[b]]]
        else:
            candidates = X.hom(p.omap[b], p.omap[c])
        for h in candidates:
            if X.compose(pF, h) != p.mmap[G]:
                continue
            fillers = [H for H in Y.hom(b, c) if p.mmap[H] == h and Y.compose(F, H) == G]
            if len(fillers) != 1:
                return {'morphism': F, 'G': G, 'h': h, 'fillers': fillers}
    return None


def is_opcartesian(q: FuncOver, F: str) -> bool:
    return _opcartesian_failure(q, F, weak=False) is None


def is_weakly_opcartesian(q: FuncOver, F: str) -> bool:
    return _opcartesian_failure(q, F, weak=True) is None


def is_cartesian(q: FuncOver, F: str) -> bool:
    return is_opcartesian(dual(q), F)


def _lift_search(q: FuncOver, weak: bool) -> Verdict:
    for a, f in opliftable_pairs(q):
        lifts = [F for F in q.above(f, a=a) if _opcartesian_failure(q, F, weak) is None]
        if not lifts:
            logger.debug("no %sopcartesian lift of %s at %s", "weakly " if weak else "", f, a)
            return Verdict.fail({'object': a, 'morphism': f})
    return Verdict.ok(pairs=len(opliftable_pairs(q)))


def is_opfibration(q: FuncOver) -> Verdict:
    return _lift_search(q, weak=False)


def is_preopfibration(q: FuncOver) -> Verdict:
    return _lift_search(q, weak=True)


def is_fibration(q: FuncOver) -> Verdict:
    return is_opfibration(dual(q))


def is_prefibration(q: FuncOver) -> Verdict:
    return is_preopfibration(dual(q))


def weakly_opcartesian_composition_closed(q: FuncOver) -> Verdict:
    """Composites of weakly opcartesian maps are weakly opcartesian."""
    Y = q.total
    weak = [F for F in Y.morphisms if is_weakly_opcartesian(q, F)]
    weak_set = set(weak)
    for F in weak:
        for G in weak:
            if Y.cod[F] == Y.dom[G] and Y.compose(F, G) not in weak_set:
                return Verdict.fail({'first': F, 'second': G})
    return Verdict.ok()


def check_split(q: FuncOver, cleavage: Cleavage) -> Verdict:
    Y, X = q.total, q.base
    for a in Y.objects:
        if cleavage.lift(a, X.identity[q.p.omap[a]]) != Y.identity[a]:
            return Verdict.fail({'object': a, 'reason': 'identity lift is not an identity'})
    for (a, f), F in sorted(cleavage.lifts.items()):
        b = Y.cod[F]
        for g in X.out_of(X.cod[f]):
            composite = cleavage.lift(a, X.compose(f, g))
            if composite != Y.compose(F, cleavage.lift(b, g)):
                return Verdict.fail({'object': a, 'pair': (f, g)})
    return Verdict.ok()


def choose_cleavage(q: FuncOver, split_required: bool = False,
                    search_limit: int = 100000) -> Tuple[Optional[Cleavage], Optional[Dict]]:
    """Smallest opcartesian lift per pair; with ``split_required`` search for a split choice."""
    verdict = is_opfibration(q)
    if not verdict:
        raise PreconditionError(f"not an opfibration, no lift for {verdict.witness}")
    Y, X = q.total, q.base
    candidates: Dict[Tuple[str, str], List[str]] = {}
    for a, f in opliftable_pairs(q):
        if X.is_identity(f):
            candidates[(a, f)] = [Y.identity[a]]
        else:
            candidates[(a, f)] = sorted(F for F in q.above(f, a=a) if is_opcartesian(q, F))
    default = Cleavage({k: v[0] for k, v in candidates.items()})
    first = check_split(q, default)
    if first:
        return Cleavage(default.lifts, split=True), None
    if not split_required:
        return default, None

    keys = sorted(candidates)
    for n, picks in enumerate(itertools.product(*(candidates[k] for k in keys))):
        if n >= search_limit:
            break
        cl = Cleavage(dict(zip(keys, picks)))
        if check_split(q, cl):
            return Cleavage(cl.lifts, split=True), None
    logger.info("no split cleavage found for %s", q.p.name)
    return None, first.witness


def choose_fibration_cleavage(q: FuncOver, split_required: bool = False):
    """Cartesian lifts, chosen through the dual opfibration."""
    return choose_cleavage(dual(q), split_required)


def reindexing_functor(q: FuncOver, cleavage: Cleavage, f: str) -> FinFunctor:
    """Fibre(dom f) -> fibre(cod f) induced by the chosen lifts along f."""
    Y, X = q.total, q.base
    x, y = X.dom[f], X.cod[f]
    source, target = fibre(q, x), fibre(q, y)
    omap = {a: Y.cod[cleavage.lift(a, f)] for a in source.objects}
    mmap = {}
    id_y = X.identity[y]
    for V in source.morphisms:
        a, a2 = Y.dom[V], Y.cod[V]
        goal = Y.compose(V, cleavage.lift(a2, f))
        lift_a = cleavage.lift(a, f)
        fillers = [H for H in Y.hom(omap[a], omap[a2])
                   if q.p.mmap[H] == id_y and Y.compose(lift_a, H) == goal]
        if len(fillers) != 1:
            raise SortError(f"reindexing along {f} has {len(fillers)} candidates for {V}")
        mmap[V] = fillers[0]
    return FinFunctor(source, target, omap, mmap, name=f"{f}_!")


def check_morphism_of_opfibrations(H: FinFunctor, K: FinFunctor, q: FuncOver, r: FuncOver,
                                   cleavages: Optional[Tuple[Cleavage, Cleavage]] = None) -> Verdict:
    """(H, K) from q to r: the square commutes and opcartesian maps go to opcartesian maps."""
    for problem in validate_functor(H) + validate_functor(K):
        return Verdict.fail({'reason': problem})
    Y = q.total
    for a in Y.objects:
        if K.omap[q.p.omap[a]] != r.p.omap[H.omap[a]]:
            return Verdict.fail({'reason': 'square', 'object': a})
    for F in Y.morphisms:
        if K.mmap[q.p.mmap[F]] != r.p.mmap[H.mmap[F]]:
            return Verdict.fail({'reason': 'square', 'morphism': F})
    for F in Y.morphisms:
        if is_opcartesian(q, F) and not is_opcartesian(r, H.mmap[F]):
            return Verdict.fail({'reason': 'opcartesian not preserved', 'morphism': F})
    if cleavages is not None:
        cq, cr = cleavages
        for (a, f), F in sorted(cq.lifts.items()):
            if H.mmap[F] != cr.lift(H.omap[a], K.mmap[f]):
                return Verdict.fail({'reason': 'chosen lift not preserved', 'pair': (a, f)})
    return Verdict.ok()


def pullback_opfibration(q: FuncOver, K: FinFunctor) -> FuncOver:
    """Pullback of q along K: X' -> X, with projection to X'."""
    Y, X2 = q.total, K.source
    if K.target != q.base:
        raise SortError("pullback functor must land in the base")
    objects, parts = [], {}
    for x in X2.objects:
        for a in Y.objects:
            if K.omap[x] == q.p.omap[a]:
                objects.append(pair_id(x, a))
                parts[pair_id(x, a)] = (x, a)
    morphisms = {}
    for h in X2.morphisms:
        for F in Y.morphisms:
            if K.mmap[h] == q.p.mmap[F]:
                m = pair_id(h, F)
                morphisms[m] = (pair_id(X2.dom[h], Y.dom[F]), pair_id(X2.cod[h], Y.cod[F]))
                parts[m] = (h, F)
    compose = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if morphisms[m1][1] == morphisms[m2][0]:
                (h1, F1), (h2, F2) = parts[m1], parts[m2]
                compose[(m1, m2)] = pair_id(X2.compose(h1, h2), Y.compose(F1, F2))
    identity = {o: pair_id(X2.identity[parts[o][0]], Y.identity[parts[o][1]]) for o in objects}
    P = FinCategory(objects, morphisms, compose, identity, name=f"{K.name}*{Y.name}", parts=parts)
    p = FinFunctor(P, X2, {o: parts[o][0] for o in objects}, {m: parts[m][0] for m in morphisms},
                   name=f"{K.name}*p")
    return FuncOver(p)


def pullback_projection(pulled: FuncOver, q: FuncOver) -> FinFunctor:
    P = pulled.total
    return FinFunctor(P, q.total, {o: P.parts[o][1] for o in P.objects},
                      {m: P.parts[m][1] for m in P.morphisms}, name="pb_proj")


def compose_opfibrations(q: FuncOver, r: FuncOver) -> FuncOver:
    if q.base != r.total:
        raise SortError("composite needs base of the first to be the total of the second")
    return FuncOver(compose_functors(q.p, r.p))


def analyze_opfibration(q: FuncOver) -> Dict:
    """Check-module summary of the four lifting properties."""
    op, pre = is_opfibration(q), is_preopfibration(q)
    fib, prefib = is_fibration(q), is_prefibration(q)
    if op:
        summary = "Every opliftable pair has an opcartesian lift."
    elif pre:
        summary = "Only weakly opcartesian lifts exist for some pairs."
    else:
        summary = f"No weakly opcartesian lift for {op.witness}."
    return {
        'analysis_type': 'opfibration',
        'holds': op.holds,
        'opfibration': op.holds,
        'preopfibration': pre.holds,
        'fibration': fib.holds,
        'prefibration': prefib.holds,
        'witness': op.witness or pre.witness,
        'summary': summary,
    }
