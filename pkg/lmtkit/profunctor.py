"""Finite profunctors A -|-> B, coend composition, refine/coarsen embeddings and
the refine -| coarsen adjunction.

An element of P(a,b) is any hashable id; ``act(f, e, g)`` with f: a'->a and
g: b->b' gives the element of P(a',b'). Composite elements are the canonical
triples (b, p, q) of their coend class.
"""

import logging
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from .errors import SortError
from .fincat import FinCategory, FinFunctor, compose_functors
from .results import Verdict
from .union_find import DisjointSet, order_key

logger = logging.getLogger(__name__)

Elem = Hashable
Action = Callable[[str, Elem, str], Elem]


class FinProfunctor:
    def __init__(self, source: FinCategory, target: FinCategory,
                 elems: Dict[Tuple[str, str], Tuple[Elem, ...]], act: Action, name: str = "",
                 classes: Optional[Dict[Tuple[str, str], Dict[Elem, List[Elem]]]] = None,
                 canon: Optional[Callable[[Tuple[str, str], Elem], Elem]] = None):
        self.source = source
        self.target = target
        self.elems = elems
        self._act = act
        self.name = name
        self.classes = classes
        self._canon = canon

    def __repr__(self):
        return f"FinProfunctor({self.name!r}: {self.source.name} -|-> {self.target.name})"

    def at(self, a: str, b: str) -> Tuple[Elem, ...]:
        return self.elems.get((a, b), ())

    def act(self, f: str, e: Elem, g: str) -> Elem:
        return self._act(f, e, g)

    def canonical(self, a: str, b: str, e: Elem) -> Elem:
        """Class representative of a raw member (composites only)."""
        if self._canon is None:
            return e
        return self._canon((a, b), e)

    def size(self) -> int:
        return sum(len(v) for v in self.elems.values())


def validate_profunctor(P: FinProfunctor) -> List[str]:
    A, B = P.source, P.target
    problems = []
    for (a, b), members in sorted(P.elems.items()):
        for e in members:
            if P.act(A.identity[a], e, B.identity[b]) != e:
                problems.append(f"identity action moves {e} at ({a},{b})")
            for f in A.into(a):
                a1 = A.dom[f]
                for g in B.out_of(b):
                    b1 = B.cod[g]
                    e1 = P.act(f, e, g)
                    if e1 not in P.at(a1, b1):
                        problems.append(f"act({f},{e},{g}) = {e1} lies outside P({a1},{b1})")
                        continue
                    for f0 in A.into(a1):
                        for g0 in B.out_of(b1):
                            lhs = P.act(A.compose(f0, f), e, B.compose(g, g0))
                            rhs = P.act(f0, e1, g0)
                            if lhs != rhs:
                                problems.append(f"functoriality fails for {e} along {f0};{f} and {g};{g0}")
            if len(problems) > 10:
                return problems
    return problems


def identity_prof(A: FinCategory) -> FinProfunctor:
    elems = {(a, b): A.hom(a, b) for a in A.objects for b in A.objects}
    return FinProfunctor(A, A, elems, lambda f, h, g: A.compose(A.compose(f, h), g),
                         name=f"hom({A.name})")


def refine_embed(F: FinFunctor) -> FinProfunctor:
    """(a,b) |-> B(Fa, b), acting by Ff;h;g."""
    A, B = F.source, F.target
    elems = {(a, b): B.hom(F.omap[a], b) for a in A.objects for b in B.objects}
    return FinProfunctor(A, B, elems, lambda f, h, g: B.compose(B.compose(F.mmap[f], h), g),
                         name=f"{F.name}^refine")


def coarsen_embed(F: FinFunctor) -> FinProfunctor:
    """(b,a) |-> B(b, Fa), acting by f;h;Fg."""
    A, B = F.source, F.target
    elems = {(b, a): B.hom(b, F.omap[a]) for b in B.objects for a in A.objects}
    return FinProfunctor(B, A, elems, lambda f, h, g: B.compose(B.compose(f, h), F.mmap[g]),
                         name=f"{F.name}^coarsen")


def compose_prof(P: FinProfunctor, Q: FinProfunctor) -> FinProfunctor:
    """Coend composite: pairs (b, p, q) modulo (p, g.q) ~ (p.g, q)."""
    if P.target != Q.source:
        raise SortError("profunctors do not share a middle category")
    A, B, C = P.source, P.target, Q.target
    classes: Dict[Tuple[str, str], Dict[Elem, List[Elem]]] = {}
    sets: Dict[Tuple[str, str], DisjointSet] = {}
    for a in A.objects:
        for c in C.objects:
            ds = DisjointSet()
            for b in B.objects:
                for p in P.at(a, b):
                    for q in Q.at(b, c):
                        ds.add((b, p, q))
            for b in B.objects:
                for p in P.at(a, b):
                    for g in B.out_of(b):
                        b1 = B.cod[g]
                        pg = P.act(A.identity[a], p, g)
                        for q in Q.at(b1, c):
                            ds.union((b, p, Q.act(g, q, C.identity[c])), (b1, pg, q))
            sets[(a, c)] = ds
            classes[(a, c)] = {members[0]: members for members in ds.classes()}
    elems = {key: tuple(sorted(cls, key=order_key)) for key, cls in classes.items()}

    def canon(key, triple):
        return sets[key].canonical(triple)

    def act(f, e, h):
        b, p, q = e
        a1, c1 = A.dom[f], C.cod[h]
        return canon((a1, c1), (b, P.act(f, p, B.identity[b]), Q.act(B.identity[b], q, h)))

    logger.debug("composite %s;%s has %d classes", P.name, Q.name, sum(len(v) for v in elems.values()))
    return FinProfunctor(A, C, elems, act, name=f"({P.name};{Q.name})", classes=classes, canon=canon)


def composite_is_well_defined(PQ: FinProfunctor, P: FinProfunctor, Q: FinProfunctor) -> Verdict:
    """The induced action does not depend on the chosen class member."""
    A, B, C = PQ.source, P.target, PQ.target
    for (a, c), cls in sorted(PQ.classes.items()):
        for rep, members in cls.items():
            for f in A.into(a):
                for h in C.out_of(c):
                    expected = PQ.act(f, rep, h)
                    for b, p, q in members:
                        got = PQ.canonical(A.dom[f], C.cod[h],
                                           (b, P.act(f, p, B.identity[b]), Q.act(B.identity[b], q, h)))
                        if got != expected:
                            return Verdict.fail({'class': rep, 'member': (b, p, q), 'f': f, 'h': h})
    return Verdict.ok()


class ProfNat:
    """Components (a,b) -> {element: element} between parallel profunctors."""

    def __init__(self, source: FinProfunctor, target: FinProfunctor,
                 components: Dict[Tuple[str, str], Dict[Elem, Elem]], name: str = ""):
        self.source = source
        self.target = target
        self.components = components
        self.name = name

    def __call__(self, a: str, b: str, e: Elem) -> Elem:
        return self.components[(a, b)][e]


def check_prof_nat(t: ProfNat) -> Verdict:
    P, Q = t.source, t.target
    A, B = P.source, P.target
    for (a, b), members in sorted(P.elems.items()):
        comp = t.components.get((a, b), {})
        for e in members:
            if e not in comp:
                return Verdict.fail({'reason': 'component undefined', 'at': (a, b), 'element': e})
            if comp[e] not in Q.at(a, b):
                return Verdict.fail({'reason': 'component leaves the target set', 'at': (a, b), 'element': e})
    for (a, b), members in sorted(P.elems.items()):
        for e in members:
            for f in A.into(a):
                for g in B.out_of(b):
                    lhs = t(A.dom[f], B.cod[g], P.act(f, e, g))
                    rhs = Q.act(f, t(a, b, e), g)
                    if lhs != rhs:
                        return Verdict.fail({'reason': 'naturality', 'element': e, 'f': f, 'g': g})
    return Verdict.ok()


def is_prof_iso(t: ProfNat) -> Verdict:
    nat = check_prof_nat(t)
    if not nat:
        return nat
    for key, members in sorted(t.source.elems.items()):
        image = {t.components[key][e] for e in members}
        if len(image) != len(members) or len(image) != len(t.target.at(*key)):
            return Verdict.fail({'reason': 'component is not a bijection', 'at': key})
    return Verdict.ok()


def identity_nat(P: FinProfunctor) -> ProfNat:
    return ProfNat(P, P, {key: {e: e for e in members} for key, members in P.elems.items()},
                   name=f"id_{P.name}")


def compose_nat(s: ProfNat, t: ProfNat) -> ProfNat:
    """Vertical composite s then t."""
    comps = {key: {e: t.components[key][s.components[key][e]] for e in members}
             for key, members in s.source.elems.items()}
    return ProfNat(s.source, t.target, comps, name=f"{s.name};{t.name}")


def whisker_left(P: FinProfunctor, t: ProfNat, PQ: FinProfunctor, PQ2: FinProfunctor) -> ProfNat:
    """P;t from P;Q to P;Q' on canonical triples."""
    comps = {}
    for (a, c), members in PQ.elems.items():
        comps[(a, c)] = {(b, p, q): PQ2.canonical(a, c, (b, p, t(b, c, q))) for (b, p, q) in members}
    return ProfNat(PQ, PQ2, comps, name=f"{P.name}*{t.name}")


def whisker_right(t: ProfNat, Q: FinProfunctor, PQ: FinProfunctor, PQ2: FinProfunctor) -> ProfNat:
    """t;Q from P;Q to P';Q on canonical triples."""
    comps = {}
    for (a, c), members in PQ.elems.items():
        comps[(a, c)] = {(b, p, q): PQ2.canonical(a, c, (b, t(a, b, p), q)) for (b, p, q) in members}
    return ProfNat(PQ, PQ2, comps, name=f"{t.name}*{Q.name}")


def left_unitor(P: FinProfunctor) -> ProfNat:
    """hom;P -> P, class of (a', f, e) |-> f.e."""
    I = identity_prof(P.source)
    IP = compose_prof(I, P)
    B = P.target
    comps = {(a, b): {(a1, f, e): P.act(f, e, B.identity[b]) for (a1, f, e) in members}
             for (a, b), members in IP.elems.items()}
    return ProfNat(IP, P, comps, name=f"lambda_{P.name}")


def right_unitor(P: FinProfunctor) -> ProfNat:
    """P;hom -> P, class of (b', e, g) |-> e.g."""
    I = identity_prof(P.target)
    PI = compose_prof(P, I)
    A = P.source
    comps = {(a, b): {(b1, e, g): P.act(A.identity[a], e, g) for (b1, e, g) in members}
             for (a, b), members in PI.elems.items()}
    return ProfNat(PI, P, comps, name=f"rho_{P.name}")


def associator(P: FinProfunctor, Q: FinProfunctor, R: FinProfunctor) -> Tuple[ProfNat, Verdict]:
    """((P;Q);R) -> (P;(Q;R)) on representatives, with a well-definedness check on members."""
    PQ, QR = compose_prof(P, Q), compose_prof(Q, R)
    left, right = compose_prof(PQ, R), compose_prof(P, QR)
    comps = {}
    for (a, d), cls in left.classes.items():
        comp = {}
        for rep, members in cls.items():
            images = set()
            for (c, pq, r) in members:
                for (b, p, q) in PQ.classes[(a, c)][pq]:
                    images.add(right.canonical(a, d, (b, p, QR.canonical(b, d, (c, q, r)))))
            if len(images) != 1:
                return ProfNat(left, right, comps), Verdict.fail({'class': rep, 'images': sorted(images, key=order_key)})
            comp[rep] = images.pop()
        comps[(a, d)] = comp
    t = ProfNat(left, right, comps, name="alpha")
    return t, is_prof_iso(t)


def refine_composition_iso(F: FinFunctor, G: FinFunctor) -> ProfNat:
    """refine(F);refine(G) -> refine(F;G), class of (b, h1, h2) |-> G(h1);h2."""
    RF, RG = refine_embed(F), refine_embed(G)
    comp = compose_prof(RF, RG)
    target = refine_embed(compose_functors(F, G))
    C = G.target
    comps = {key: {(b, h1, h2): C.compose(G.mmap[h1], h2) for (b, h1, h2) in members}
             for key, members in comp.elems.items()}
    return ProfNat(comp, target, comps, name="refine_comp")


def find_prof_iso(P: FinProfunctor, Q: FinProfunctor) -> Optional[ProfNat]:
    """Backtracking search for a natural bijection, propagating choices through the actions."""
    A, B = P.source, P.target
    keys = sorted(P.elems)
    if any(len(P.at(*k)) != len(Q.at(*k)) for k in set(keys) | set(Q.elems)):
        return None
    moves = [(f, g) for f in A.morphisms for g in B.morphisms]

    def propagate(assign, rev, start):
        stack = [start]
        while stack:
            (a, b), e = stack.pop()
            e2 = assign[((a, b), e)]
            for f, g in moves:
                if A.cod[f] != a or B.dom[g] != b:
                    continue
                key = (A.dom[f], B.cod[g])
                x, y = P.act(f, e, g), Q.act(f, e2, g)
                if (key, x) in assign:
                    if assign[(key, x)] != y:
                        return False
                    continue
                if (key, y) in rev:
                    return False
                assign[(key, x)] = y
                rev[(key, y)] = x
                stack.append((key, x))
        return True

    todo = [(k, e) for k in keys for e in P.at(*k)]

    def search(assign, rev):
        pending = next((item for item in todo if item not in assign), None)
        if pending is None:
            return assign
        key, e = pending
        for cand in Q.at(*key):
            if (key, cand) in rev:
                continue
            a2, r2 = dict(assign), dict(rev)
            a2[pending] = cand
            r2[(key, cand)] = e
            if propagate(a2, r2, pending):
                found = search(a2, r2)
                if found is not None:
                    return found
        return None

    found = search({}, {})
    if found is None:
        return None
    comps: Dict[Tuple[str, str], Dict[Elem, Elem]] = {k: {} for k in keys}
    for (key, e), e2 in found.items():
        comps[key][e] = e2
    t = ProfNat(P, Q, comps, name="iso")
    return t if is_prof_iso(t) else None


def adjunction_unit(F: FinFunctor) -> ProfNat:
    """hom_A => refine;coarsen, f |-> class of (Fa', Ff, id)."""
    A, B = F.source, F.target
    R, C = refine_embed(F), coarsen_embed(F)
    RC = compose_prof(R, C)
    comps = {}
    for a in A.objects:
        for a1 in A.objects:
            b = F.omap[a1]
            comps[(a, a1)] = {f: RC.canonical(a, a1, (b, F.mmap[f], B.identity[b])) for f in A.hom(a, a1)}
    return ProfNat(identity_prof(A), RC, comps, name=f"eta_{F.name}")


def adjunction_counit(F: FinFunctor) -> Tuple[ProfNat, Verdict]:
    """coarsen;refine => hom_B, class of (a, g, h) |-> g;h, checked on every member."""
    B = F.target
    R, C = refine_embed(F), coarsen_embed(F)
    CR = compose_prof(C, R)
    comps = {}
    for (b, b1), cls in CR.classes.items():
        comp = {}
        for rep, members in cls.items():
            values = {B.compose(g, h) for (_, g, h) in members}
            if len(values) != 1:
                return ProfNat(CR, identity_prof(B), comps), Verdict.fail({'class': rep, 'values': sorted(values)})
            comp[rep] = values.pop()
        comps[(b, b1)] = comp
    return ProfNat(CR, identity_prof(B), comps, name=f"epsilon_{F.name}"), Verdict.ok()


def verify_adjunction(F: FinFunctor) -> Verdict:
    """Naturality, both triangle identities and the counit section on image hom-sets."""
    A, B = F.source, F.target
    R, C = refine_embed(F), coarsen_embed(F)
    unit = adjunction_unit(F)
    counit, well_defined = adjunction_counit(F)
    if not well_defined:
        return Verdict.fail({'reason': 'counit not well defined', **well_defined.witness})
    for name, t in (("unit", unit), ("counit", counit)):
        nat = check_prof_nat(t)
        if not nat:
            return Verdict.fail({'reason': f'{name} not natural', **nat.witness})

    RC, CR = unit.target, counit.source
    RC_R = compose_prof(RC, R)
    R_CR = compose_prof(R, CR)
    for a in A.objects:
        for b in B.objects:
            for h in R.at(a, b):
                u = unit(a, a, A.identity[a])
                left = RC_R.canonical(a, b, (a, u, h))
                a1, (b1, g, k), h1 = left
                inner = CR.canonical(b1, b, (a1, k, h1))
                moved = R_CR.canonical(a, b, (b1, g, inner))
                b2, g2, cls = moved
                result = R.act(A.identity[a], g2, counit(b2, b, cls))
                if result != h:
                    return Verdict.fail({'reason': 'first triangle', 'element': h, 'at': (a, b)})
    for b in B.objects:
        for a in A.objects:
            for k in C.at(b, a):
                u = unit(a, a, A.identity[a])
                b1, g, k1 = u
                first = CR.canonical(b, b1, (a, k, g))
                result = C.act(counit(b, b1, first), k1, A.identity[a])
                if result != k:
                    return Verdict.fail({'reason': 'second triangle', 'element': k, 'at': (b, a)})
    for a in A.objects:
        fa = F.omap[a]
        for b1 in B.objects:
            for h in B.hom(fa, b1):
                section = CR.canonical(fa, b1, (a, B.identity[fa], h))
                if counit(fa, b1, section) != h:
                    return Verdict.fail({'reason': 'counit section', 'element': h})
    return Verdict.ok(unit_components=len(unit.components), counit_components=len(counit.components))
