"""Opfibrations with indexed monoids, monoids on split opfibrations, and the
translations between the two.

Finite im-opfibrations are checked extensionally. The total category built from
a monoid is a presented one: a monoidal theory with a projection onto im(X),
whose equalities are decided by instance matching and the bounded prover.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .errors import PreconditionError
from .fincat import (CartesianStructure, FinCategory, FinFunctor, find_cartesian_structure,
                     pair_id, product_category, projection_functors, verify_cartesian_structure,
                     wide_subcategory)
from .indexed_monoids import (IndexedMonoidData, check_indexed_monoids, fox_products,
                              hom_subcategory, indexed_monoids_on, is_monoid_hom)
from .montheory import (Comp, Gen, Id, MonTheory, SignatureMorphism, Tensor, Term,
                        add_category_generators, apply_signature_morphism, check_signature_morphism,
                        diagram_nf, prove_equal, theory_im, uniform_comonoid_theory)
from .opfibration_check import (Cleavage, FuncOver, check_split, choose_cleavage, is_opcartesian,
                                is_opfibration)
from .results import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ImOpfibData:
    q: FuncOver
    base: IndexedMonoidData
    total: CartesianStructure


def product_preservation(q: FuncOver, total: CartesianStructure, base: CartesianStructure) -> Verdict:
    """Terminal, products and projections go to their counterparts; objects over x*y are products."""
    Y, X = q.total, q.base
    p = q.p
    if p.omap[total.terminal] != base.terminal:
        return Verdict.fail({'reason': 'terminal object is not sent to the terminal object'})
    if q.objects_over(base.terminal) != [total.terminal]:
        return Verdict.fail({'reason': 'terminal object is not reflected',
                             'over': q.objects_over(base.terminal)})
    for a in Y.objects:
        for b in Y.objects:
            prod, p1, p2 = total.product[(a, b)]
            x, y = p.omap[a], p.omap[b]
            if p.omap[prod] != base.product_object(x, y):
                return Verdict.fail({'product': (a, b), 'reason': 'product object is not preserved'})
            if (p.mmap[p1], p.mmap[p2]) != base.projections(x, y):
                return Verdict.fail({'product': (a, b), 'reason': 'projections are not preserved'})
    for x in X.objects:
        for y in X.objects:
            over = set(q.objects_over(base.product_object(x, y)))
            products = {total.product_object(a, b) for a in q.objects_over(x) for b in q.objects_over(y)}
            if over != products:
                return Verdict.fail({'pair': (x, y), 'reason': 'products are not reflected',
                                     'extra': sorted(over - products)})
    return Verdict.ok()


def is_im_opfibration(d: ImOpfibData) -> Verdict:
    """Base indexed monoids, cartesian total, products preserved and reflected, opcartesians closed under x."""
    q, Y = d.q, d.q.total
    p = q.p
    base = check_indexed_monoids(d.base)
    if not base:
        return Verdict.fail({'base': base.witness})
    problems = verify_cartesian_structure(d.total)
    if problems:
        return Verdict.fail({'total': problems[0]})
    opf = is_opfibration(q)
    if not opf:
        return Verdict.fail({'opfibration': opf.witness})
    s = d.base.mon
    base_cs, _ = fox_products(d.base.comonoids)
    if base_cs.terminal != s.unit:
        return Verdict.fail({'reason': 'unit of the base is not terminal'})
    preserved = product_preservation(q, d.total, base_cs)
    if not preserved:
        return preserved
    opcartesian = [F for F in Y.morphisms if is_opcartesian(q, F)]
    for F in opcartesian:
        for G in opcartesian:
            FG = d.total.tensor(F, G)
            if p.mmap[FG] != s.tensor_mor(p.mmap[F], p.mmap[G]):
                return Verdict.fail({'pair': (F, G), 'reason': 'product of morphisms is not preserved'})
            if not is_opcartesian(q, FG):
                return Verdict.fail({'pair': (F, G), 'reason': 'product of opcartesian maps is not opcartesian'})
    return Verdict.ok(opcartesian=len(opcartesian))


def restrict_im_opfibration(d: ImOpfibData) -> FuncOver:
    """Morphisms above monoid homomorphisms, over the homomorphism subcategory."""
    q = d.q
    base = hom_subcategory(d.base)
    kept = [F for F in q.total.morphisms if is_monoid_hom(d.base, q.p.mmap[F])]
    total = wide_subcategory(q.total, kept, name=f"{q.total.name}*")
    p = FinFunctor(total, base, {a: q.p.omap[a] for a in total.objects},
                   {F: q.p.mmap[F] for F in total.morphisms}, name=f"{q.p.name}*")
    return FuncOver(p)


def im_opfibration_data(q: FuncOver) -> Tuple[Optional[ImOpfibData], Optional[Dict]]:
    """Search the structure an im-opfibration needs: indexed monoids below, products above."""
    base, witness = indexed_monoids_on(q.base)
    if base is None:
        return None, {'base': witness}
    total, witness = find_cartesian_structure(q.total)
    if total is None:
        return None, {'total': witness}
    return ImOpfibData(q, base, total), None


def analyze_im_opfibration(q: FuncOver) -> Dict:
    d, witness = im_opfibration_data(q)
    if d is None:
        return {'analysis_type': 'im_opfibration', 'holds': False, 'witness': witness,
                'summary': f"{q.p.name}: missing indexed-monoid structure"}
    verdict = is_im_opfibration(d)
    result = {'analysis_type': 'im_opfibration', 'holds': verdict.holds, 'witness': verdict.witness,
              'summary': f"{q.p.name}: im-opfibration" if verdict else f"{q.p.name}: not an im-opfibration"}
    if verdict:
        result['restriction_opfibration'] = is_opfibration(restrict_im_opfibration(d)).holds
    return result


@dataclass(frozen=True, eq=False)
class MonoidOnOpfibration:
    """A monoid (tensor over the fibre product, unit section) on a split opfibration."""

    q: FuncOver
    cleavage: Cleavage
    tensor_obj: Dict[Tuple[str, str], str]
    tensor_mor: Dict[Tuple[str, str], str]
    unit_obj: Dict[str, str]
    unit_mor: Dict[str, str]
    name: str = ""

    def same_fibre(self) -> List[Tuple[str, str]]:
        omap = self.q.p.omap
        return [(a, b) for a in self.q.total.objects for b in self.q.total.objects if omap[a] == omap[b]]

    def same_base(self) -> List[Tuple[str, str]]:
        mmap = self.q.p.mmap
        return [(F, G) for F in self.q.total.morphisms for G in self.q.total.morphisms
                if mmap[F] == mmap[G]]


def monoid_problems(M: MonoidOnOpfibration) -> List[str]:
    q, Y, X = M.q, M.q.total, M.q.base
    p = q.p
    problems = []
    split = check_split(q, M.cleavage)
    if not split:
        return [f"cleavage is not split: {split.witness}"]
    for a, b in M.same_fibre():
        c = M.tensor_obj.get((a, b))
        if c is None or p.omap[c] != p.omap[a]:
            problems.append(f"tensor of {a},{b} is missing or leaves the fibre")
    for F, G in M.same_base():
        H = M.tensor_mor.get((F, G))
        if H is None or p.mmap[H] != p.mmap[F]:
            problems.append(f"tensor of {F},{G} is missing or not over {p.mmap[F]}")
            continue
        if (Y.dom[H], Y.cod[H]) != (M.tensor_obj[(Y.dom[F], Y.dom[G])], M.tensor_obj[(Y.cod[F], Y.cod[G])]):
            problems.append(f"tensor of {F},{G} has the wrong boundary")
    for x in X.objects:
        u = M.unit_obj.get(x)
        if u is None or p.omap[u] != x:
            problems.append(f"unit over {x} is missing")
    if problems:
        return problems[:10]
    for (F, G), (F2, G2) in ((a, b) for a in M.same_base() for b in M.same_base()):
        if Y.cod[F] == Y.dom[F2] and Y.cod[G] == Y.dom[G2]:
            lhs = M.tensor_mor[(Y.compose(F, F2), Y.compose(G, G2))]
            if lhs != Y.compose(M.tensor_mor[(F, G)], M.tensor_mor[(F2, G2)]):
                problems.append(f"tensor is not functorial at ({F},{G});({F2},{G2})")
    for a, b in M.same_fibre():
        if M.tensor_mor[(Y.identity[a], Y.identity[b])] != Y.identity[M.tensor_obj[(a, b)]]:
            problems.append(f"tensor of identities at {a},{b} is not an identity")
    for a, b in M.same_fibre():
        for c in q.objects_over(p.omap[a]):
            if M.tensor_obj[(M.tensor_obj[(a, b)], c)] != M.tensor_obj[(a, M.tensor_obj[(b, c)])]:
                problems.append(f"tensor is not associative at {a},{b},{c}")
    for F, G in M.same_base():
        for H in Y.morphisms:
            if p.mmap[H] == p.mmap[F]:
                lhs = M.tensor_mor[(M.tensor_mor[(F, G)], H)]
                if lhs != M.tensor_mor[(F, M.tensor_mor[(G, H)])]:
                    problems.append(f"tensor is not associative at {F},{G},{H}")
    for f in X.morphisms:
        x = X.dom[f]
        U = M.unit_mor.get(f)
        if U != M.cleavage.lift(M.unit_obj[x], f):
            problems.append(f"unit along {f} is not the chosen lift")
            continue
        for F in q.above(f):
            if M.tensor_mor[(U, F)] != F or M.tensor_mor[(F, U)] != F:
                problems.append(f"unit law fails at {F}")
    for a, b in M.same_fibre():
        for f in X.out_of(p.omap[a]):
            lifted = M.tensor_mor[(M.cleavage.lift(a, f), M.cleavage.lift(b, f))]
            if lifted != M.cleavage.lift(M.tensor_obj[(a, b)], f):
                problems.append(f"tensor does not preserve the chosen lifts at {a},{b} along {f}")
    return problems[:50]


def check_monoid(M: MonoidOnOpfibration) -> Verdict:
    problems = monoid_problems(M)
    if problems:
        return Verdict.fail({'reason': problems[0]}, problems=len(problems))
    return Verdict.ok()


def componentwise_monoid(X: FinCategory, M: FinCategory) -> MonoidOnOpfibration:
    """Projection X x BM -> X with (f, s) (x) (f, t) = (f, s;t) for a commutative one-object M."""
    if len(M.objects) != 1:
        raise PreconditionError("expected a one-object category")
    for s in M.morphisms:
        for t in M.morphisms:
            if M.compose(s, t) != M.compose(t, s):
                raise PreconditionError(f"{M.name} is not commutative at {s},{t}")
    (o,) = M.objects
    Y = product_category(X, M)
    p, _ = projection_functors(X, M, Y)
    p.name = f"pi1_{M.name}"
    q = FuncOver(p)
    cleavage, witness = choose_cleavage(q, split_required=True)
    if cleavage is None:
        raise PreconditionError(f"no split cleavage: {witness}")
    tensor_obj = {(a, a): a for a in Y.objects}
    tensor_mor = {}
    for F in Y.morphisms:
        f, s = Y.parts[F]
        for G in Y.morphisms:
            g, t = Y.parts[G]
            if f == g:
                tensor_mor[(F, G)] = pair_id(f, M.compose(s, t))
    unit_obj = {x: pair_id(x, o) for x in X.objects}
    unit_mor = {f: pair_id(f, M.identity[o]) for f in X.morphisms}
    return MonoidOnOpfibration(q, cleavage, tensor_obj, tensor_mor, unit_obj, unit_mor,
                               name=f"{X.name}x{M.name}")


def _pair(a: str, b: str) -> str:
    return f"pair[{a},{b}]"


def _one(x: str) -> str:
    return f"one[{x}]"


@dataclass(frozen=True, eq=False)
class PresentedImOpfib:
    """Total theory, base im(X) and the projection between them, with the marked lifts."""

    X: FinCategory
    total: MonTheory
    base: MonTheory
    projection: SignatureMorphism
    pairing: Dict[Tuple[str, str], str]
    units: Dict[str, str]
    chosen: Dict[Tuple[str, str], str]
    opcartesian: FrozenSet[str]
    name: str = ""
    _indexes: Dict = field(default_factory=dict)


def monoid_to_im(M: MonoidOnOpfibration) -> PresentedImOpfib:
    """Uniform comonoids over Y, pairing and unit generators, and their equation families."""
    problems = monoid_problems(M)
    if problems:
        raise PreconditionError(f"invalid monoid: {problems[0]}")
    q, Y, X = M.q, M.q.total, M.q.base
    p = q.p
    th = add_category_generators(uniform_comonoid_theory(Y.objects), Y)
    sig = th.signature
    pairing, units = {}, {}
    for a, b in M.same_fibre():
        pairing[(a, b)] = _pair(a, b)
        sig.add(_pair(a, b), (a, b), (M.tensor_obj[(a, b)],))
    for x in X.objects:
        units[x] = _one(x)
        sig.add(_one(x), (), (M.unit_obj[x],))

    def pair_gen(a, b):
        return sig.gen(pairing[(a, b)])

    for F, G in M.same_base():
        if Y.is_identity(F) and Y.is_identity(G):
            continue
        a, b, a2, b2 = Y.dom[F], Y.dom[G], Y.cod[F], Y.cod[G]
        th.add_equation(f"pair.natural[{F},{G}]", Comp(Tensor(sig.gen(F), sig.gen(G)), pair_gen(a2, b2)),
                                     Comp(pair_gen(a, b), sig.gen(M.tensor_mor[(F, G)])), "monoid")
    for f in X.morphisms:
        if X.is_identity(f):
            continue
        x, w = X.dom[f], X.cod[f]
        th.add_equation(f"one.lift[{f}]", Comp(sig.gen(units[x]), sig.gen(M.unit_mor[f])),
                                     sig.gen(units[w]), "monoid")
    for a, b in M.same_fibre():
        ab = M.tensor_obj[(a, b)]
        for c in q.objects_over(p.omap[a]):
            bc = M.tensor_obj[(b, c)]
            th.add_equation(f"pair.assoc[{a},{b},{c}]", Comp(Tensor(pair_gen(a, b), Id((c,))), pair_gen(ab, c)),
                                         Comp(Tensor(Id((a,)), pair_gen(b, c)), pair_gen(a, bc)), "monoid")
    for x in X.objects:
        one = M.unit_obj[x]
        for a in q.objects_over(x):
            th.add_equation(f"pair.unit_left[{a}]", Comp(Tensor(sig.gen(units[x]), Id((a,))), pair_gen(one, a)),
                                         Id((a,)), "monoid")
            th.add_equation(f"pair.unit_right[{a}]", Comp(Tensor(Id((a,)), sig.gen(units[x])), pair_gen(a, one)),
                                         Id((a,)), "monoid")
    th.name = f"{Y.name}_tensor"

    colours = {a: p.omap[a] for a in Y.objects}
    generators = {F: p.mmap[F] for F in Y.morphisms}
    for a in Y.objects:
        generators[f"copy_{a}"] = f"copy_{p.omap[a]}"
        generators[f"del_{a}"] = f"del_{p.omap[a]}"
        for b in Y.objects:
            generators[f"sym_{a}_{b}"] = f"sym_{p.omap[a]}_{p.omap[b]}"
    for (a, b), g in pairing.items():
        generators[g] = f"mul_{p.omap[a]}"
    for x, g in units.items():
        generators[g] = f"unit_{x}"

    chosen = {}
    for a in Y.objects:
        for f in X.out_of(p.omap[a]):
            chosen[(a, f)] = M.cleavage.lift(a, f)
    marked = {F for F in Y.morphisms if is_opcartesian(q, F)} | set(pairing.values()) | set(units.values())
    logger.info("presented total for %s: %d generators, %d equations", M.name,
                len(sig.generators), len(th.equations))
    return PresentedImOpfib(X, th, theory_im(X), SignatureMorphism(colours, generators),
                            pairing, units, chosen, frozenset(marked), name=f"{M.name}_tensor")


def _erase(t: Term, identities: Set[str]) -> Term:
    if isinstance(t, Gen):
        return Id(t.dom) if t.name in identities else t
    if isinstance(t, Id):
        return t
    if isinstance(t, Comp):
        return Comp(_erase(t.first, identities), _erase(t.second, identities))
    return Tensor(_erase(t.left, identities), _erase(t.right, identities))


class EquationIndex:
    """Equations of a theory as normal-form pairs, identity generators erased."""

    def __init__(self, th: MonTheory, identities: Set[str]):
        self.th = th
        self.identities = identities
        self.keys = set()
        for eq in th.all_equations():
            lhs, rhs = self.norm(eq.lhs), self.norm(eq.rhs)
            self.keys.add((lhs, rhs))
            self.keys.add((rhs, lhs))

    def norm(self, t: Term):
        return diagram_nf(_erase(t, self.identities))

    def direct(self, lhs: Term, rhs: Term) -> Optional[str]:
        a, b = self.norm(lhs), self.norm(rhs)
        if a == b:
            return "structural"
        if (a, b) in self.keys:
            return "instance"
        return None

    def holds(self, lhs: Term, rhs: Term, budget: int) -> Optional[str]:
        found = self.direct(lhs, rhs)
        if found is None and prove_equal(self.th, lhs, rhs, budget).proved:
            found = "proved"
        return found


def _base_index(P: PresentedImOpfib) -> EquationIndex:
    if 'base' not in P._indexes:
        P._indexes['base'] = EquationIndex(P.base, {P.X.identity[x] for x in P.X.objects})
    return P._indexes['base']


def _total_index(P: PresentedImOpfib, Y: FinCategory) -> EquationIndex:
    if 'total' not in P._indexes:
        P._indexes['total'] = EquationIndex(P.total, set(Y.identity.values()))
    return P._indexes['total']


def check_presented_im_opfibration(P: PresentedImOpfib, budget: int = 500) -> Verdict:
    """Projection is a signature morphism sending every equation to one that holds in im(X),
    keeps copy, delete and symmetry, and has exactly one marked lift per base generator."""
    sig_check = check_signature_morphism(P.projection, P.total.signature, P.base.signature)
    if not sig_check:
        return Verdict.fail({'projection': sig_check.witness})
    gens = P.projection.generators
    for g in P.total.signature.generators:
        for prefix in ("copy_", "del_", "sym_"):
            if g.startswith(prefix) and not gens[g].startswith(prefix):
                return Verdict.fail({'generator': g, 'reason': 'structure generator is not preserved'})
    index = _base_index(P)
    counts = {"structural": 0, "instance": 0, "proved": 0}
    for eq in P.total.all_equations():
        lhs = apply_signature_morphism(P.projection, eq.lhs)
        rhs = apply_signature_morphism(P.projection, eq.rhs)
        how = index.holds(lhs, rhs, budget)
        if how is None:
            return Verdict.fail({'equation': eq.name, 'reason': 'image does not hold in the base'})
        counts[how] += 1
    sig = P.total.signature
    colours = P.projection.colours
    for a, x in colours.items():
        for f in P.X.out_of(x):
            lifts = [g for (b, h), g in P.chosen.items() if (b, h) == (a, f)]
            if len(lifts) != 1 or gens.get(lifts[0]) != f or sig.generators[lifts[0]][0] != (a,):
                return Verdict.fail({'object': a, 'morphism': f, 'reason': 'no unique chosen lift'})
            if lifts[0] not in P.opcartesian:
                return Verdict.fail({'object': a, 'morphism': f, 'reason': 'chosen lift is not marked'})
    for (a, b), g in P.pairing.items():
        if gens[g] != f"mul_{colours[a]}" or g not in P.opcartesian:
            return Verdict.fail({'pairing': (a, b)})
    for x, g in P.units.items():
        if gens[g] != f"unit_{x}" or g not in P.opcartesian:
            return Verdict.fail({'unit': x})
    return Verdict.ok(**counts)


def _restriction(P: PresentedImOpfib) -> FuncOver:
    """The category above X: single-colour generators over morphisms of X."""
    X, sig = P.X, P.total.signature
    gens = P.projection.generators
    objects = [a for a in sig.colours if a in P.projection.colours]
    morphisms, identity, compose = {}, {}, {}
    for g, (dom, cod) in sig.generators.items():
        if len(dom) == 1 and len(cod) == 1 and gens.get(g) in X.morphisms:
            morphisms[g] = (dom[0], cod[0])
    for eq in P.total.all_equations():
        if eq.name.startswith("hom.identity[") and isinstance(eq.lhs, Gen):
            identity[eq.rhs.word[0]] = eq.lhs.name
        elif eq.name.startswith("hom.compose[") and isinstance(eq.lhs, Comp):
            compose[(eq.lhs.first.name, eq.lhs.second.name)] = eq.rhs.name
    for m, (a, b) in morphisms.items():
        compose[(identity[a], m)] = m
        compose[(m, identity[b])] = m
    missing = [(f, g) for f in morphisms for g in morphisms
               if morphisms[f][1] == morphisms[g][0] and (f, g) not in compose]
    if missing:
        raise PreconditionError(f"restriction has no composite for {missing[0]}")
    Y = FinCategory(objects, morphisms, compose, identity, name=P.name.removesuffix("_tensor") or "Y")
    p = FinFunctor(Y, X, {a: P.projection.colours[a] for a in objects},
                   {m: gens[m] for m in morphisms}, name=f"{P.name}*")
    return FuncOver(p)


def im_to_monoid(P: PresentedImOpfib, budget: int = 500) -> MonoidOnOpfibration:
    """Fibrewise tensor from the lifts of multiplication, unit objects from the lifts of units."""
    if P.base.name != f"im({P.X.name})":
        raise PreconditionError("base is not a generated im(X) theory")
    q = _restriction(P)
    Y = q.total
    sig = P.total.signature
    cleavage = Cleavage(dict(P.chosen), split=True)
    tensor_obj = {(a, b): sig.generators[g][1][0] for (a, b), g in P.pairing.items()}
    index = _total_index(P, Y)
    tensor_mor = {}
    for F in Y.morphisms:
        for G in Y.morphisms:
            f = q.p.mmap[F]
            if q.p.mmap[G] != f:
                continue
            a, b, a2, b2 = Y.dom[F], Y.dom[G], Y.cod[F], Y.cod[G]
            lhs = Comp(Tensor(sig.gen(F), sig.gen(G)), sig.gen(P.pairing[(a2, b2)]))
            candidates = [H for H in Y.hom(tensor_obj[(a, b)], tensor_obj[(a2, b2)]) if q.p.mmap[H] == f]
            found = [H for H in candidates
                     if index.direct(lhs, Comp(sig.gen(P.pairing[(a, b)]), sig.gen(H)))]
            if not found:
                found = [H for H in candidates
                         if index.holds(lhs, Comp(sig.gen(P.pairing[(a, b)]), sig.gen(H)), budget)]
            if len(found) != 1:
                raise PreconditionError(f"no unique tensor for {F},{G}: {len(found)} candidates")
            tensor_mor[(F, G)] = found[0]
    unit_obj = {x: sig.generators[g][1][0] for x, g in P.units.items()}
    unit_mor = {f: cleavage.lift(unit_obj[P.X.dom[f]], f) for f in P.X.morphisms}
    return MonoidOnOpfibration(q, cleavage, tensor_obj, tensor_mor, unit_obj, unit_mor,
                               name=P.name.removesuffix("_tensor"))


def monoid_roundtrip(M: MonoidOnOpfibration, budget: int = 500) -> Verdict:
    """Reading the monoid back off its presented im-opfibration gives the same data."""
    M2 = im_to_monoid(monoid_to_im(M), budget)
    if M2.q.total != M.q.total:
        return Verdict.fail({'reason': 'restriction differs from the original total category'})
    for attr in ("tensor_obj", "tensor_mor", "unit_obj", "unit_mor"):
        if getattr(M2, attr) != getattr(M, attr):
            return Verdict.fail({'reason': f"{attr} is not recovered"})
    if M2.cleavage.lifts != M.cleavage.lifts:
        return Verdict.fail({'reason': 'chosen lifts are not recovered'})
    return Verdict.ok()


def im_roundtrip(P: PresentedImOpfib, budget: int = 500) -> Verdict:
    """Rebuilding from the extracted monoid gives the same generators and equations."""
    P2 = monoid_to_im(im_to_monoid(P, budget))
    if P2.total.signature.generators != P.total.signature.generators:
        return Verdict.fail({'reason': 'generators differ'})
    names = {eq.name for eq in P.total.all_equations()}
    names2 = {eq.name for eq in P2.total.all_equations()}
    if names != names2:
        return Verdict.fail({'reason': 'equations differ', 'missing': sorted(names - names2)[:5],
                             'extra': sorted(names2 - names)[:5]})
    if P2.projection != P.projection or P2.chosen != P.chosen:
        return Verdict.fail({'reason': 'projection or chosen lifts differ'})
    return Verdict.ok()


def analyze_monoid_translation(M: MonoidOnOpfibration, budget: int = 500) -> Dict:
    monoid = check_monoid(M)
    if not monoid:
        return {'analysis_type': 'monoid_translation', 'holds': False, 'witness': monoid.witness,
                'summary': f"{M.name}: invalid monoid"}
    P = monoid_to_im(M)
    presented = check_presented_im_opfibration(P, budget)
    there = monoid_roundtrip(M, budget)
    back = im_roundtrip(P, budget)
    holds = bool(presented and there and back)
    return {
        'analysis_type': 'monoid_translation',
        'holds': holds,
        'presented': presented.holds,
        'equation_checks': presented.details,
        'monoid_roundtrip': there.holds,
        'im_roundtrip': back.holds,
        'generators': len(P.total.signature.generators),
        'equations': len(P.total.all_equations()),
        'witness': presented.witness or there.witness or back.witness,
        'summary': f"{M.name}: translations agree" if holds else f"{M.name}: translations disagree",
    }
