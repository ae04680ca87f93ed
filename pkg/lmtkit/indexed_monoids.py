"""Uniform comonoids, Fox's theorem, indexed monoids and monoid homomorphisms.

All monoidal structure is strict: associators and unitors are identities, so the
comonoid and monoid laws below are equalities of morphisms in the carrier.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .fincat import (CartesianStructure, FinCategory, FinFunctor, StrictMonStructure,
                     find_cartesian_structure, is_zero_object, strict_monoidal_from_cartesian,
                     verify_cartesian_structure, wide_subcategory)
from .montheory import (HomEnumeration, ModelData, check_model, enumerate_hom, interpret,
                        theory_im)
from .results import Verdict

logger = logging.getLogger(__name__)


def _tensor(s: StrictMonStructure, *fs: str) -> str:
    return reduce(s.tensor_mor, fs)


def _ids(s: StrictMonStructure, *objects: str) -> List[str]:
    return [s.carrier.identity[x] for x in objects]


@dataclass(frozen=True, eq=False)
class UniformComonoidData:
    """Copy d_x: x -> x*x and delete e_x: x -> I for every object."""

    mon: StrictMonStructure
    copy: Dict[str, str]
    delete: Dict[str, str]


def _comonoid_at(s: StrictMonStructure, x: str, d: str, e: str) -> List[str]:
    C = s.carrier
    (ix,) = _ids(s, x)
    problems = []
    if C.compose(d, _tensor(s, d, ix)) != C.compose(d, _tensor(s, ix, d)):
        problems.append(f"coassociativity fails at {x}")
    if C.compose(d, _tensor(s, e, ix)) != ix or C.compose(d, _tensor(s, ix, e)) != ix:
        problems.append(f"counit law fails at {x}")
    return problems


def comonoid_problems(uc: UniformComonoidData) -> List[str]:
    s = uc.mon
    C, I = s.carrier, s.unit
    if s.symmetry is None:
        return ["monoidal structure carries no symmetry"]
    problems = []
    for x in C.objects:
        d, e = uc.copy.get(x), uc.delete.get(x)
        if d is None or e is None:
            problems.append(f"no comonoid at {x}")
            continue
        if (C.dom[d], C.cod[d]) != (x, s.tensor_obj(x, x)) or (C.dom[e], C.cod[e]) != (x, I):
            problems.append(f"comonoid at {x} has the wrong sort")
            continue
        problems.extend(_comonoid_at(s, x, d, e))
    if problems:
        return problems
    if uc.copy[I] != C.identity[I] or uc.delete[I] != C.identity[I]:
        problems.append("copy and delete at the unit are not identities")
    for f in C.morphisms:
        x, y = C.dom[f], C.cod[f]
        if C.compose(uc.copy[x], _tensor(s, f, f)) != C.compose(f, uc.copy[y]):
            problems.append(f"copy is not natural at {f}")
        if C.compose(f, uc.delete[y]) != uc.delete[x]:
            problems.append(f"delete is not natural at {f}")
    for x in C.objects:
        for y in C.objects:
            ix, iy = _ids(s, x, y)
            lhs = C.compose(_tensor(s, uc.copy[x], uc.copy[y]), _tensor(s, ix, s.sigma(x, y), iy))
            if lhs != uc.copy[s.tensor_obj(x, y)]:
                problems.append(f"copy is not multiplicative at {x},{y}")
    return problems


def find_uniform_comonoids(s: StrictMonStructure,
                           limit: int = 100000) -> Tuple[Optional[UniformComonoidData], Optional[Dict]]:
    """Exhaustive search; by naturality there is at most one answer."""
    C, I = s.carrier, s.unit
    if s.symmetry is None:
        return None, {'reason': 'no symmetry'}
    candidates = {}
    for x in C.objects:
        if x == I:
            candidates[x] = [(C.identity[I], C.identity[I])]
            continue
        found = [(d, e) for d in C.hom(x, s.tensor_obj(x, x)) for e in C.hom(x, I)
                 if not _comonoid_at(s, x, d, e)]
        if not found:
            return None, {'object': x, 'reason': 'no comonoid on this object'}
        candidates[x] = found
    objects = list(C.objects)
    first_problem = None
    for n, picks in enumerate(itertools.product(*(candidates[x] for x in objects))):
        if n >= limit:
            break
        uc = UniformComonoidData(s, {x: p[0] for x, p in zip(objects, picks)},
                                 {x: p[1] for x, p in zip(objects, picks)})
        problems = comonoid_problems(uc)
        if not problems:
            return uc, None
        first_problem = first_problem or problems[0]
    return None, {'reason': first_problem or 'search limit reached'}


def fox_products(uc: UniformComonoidData) -> Tuple[CartesianStructure, Verdict]:
    """Products from copy and delete: pairing d_x;(f*g), projections (id*e) and (e*id)."""
    s = uc.mon
    C = s.carrier
    product = {}
    for a in C.objects:
        for b in C.objects:
            ia, ib = _ids(s, a, b)
            product[(a, b)] = (s.tensor_obj(a, b), _tensor(s, ia, uc.delete[b]), _tensor(s, uc.delete[a], ib))
    cs = CartesianStructure(C, s.unit, dict(uc.delete), product)
    problems = verify_cartesian_structure(cs)
    if problems:
        return cs, Verdict.fail({'reason': problems[0]}, problems=len(problems))
    return cs, Verdict.ok()


def fox_pairing(uc: UniformComonoidData, f: str, g: str) -> str:
    C = uc.mon.carrier
    return C.compose(uc.copy[C.dom[f]], uc.mon.tensor_mor(f, g))


def fox_converse(cs: CartesianStructure) -> UniformComonoidData:
    """Diagonals and maps to the terminal object."""
    s = strict_monoidal_from_cartesian(cs)
    if s is None:
        raise PreconditionError("chosen products are not strictly associative and unital")
    C = cs.carrier
    copy = {x: cs.pairing(C.identity[x], C.identity[x]) for x in C.objects}
    return UniformComonoidData(s, copy, dict(cs.bang))


def cartesian_monoidal(C: FinCategory) -> StrictMonStructure:
    cs, witness = find_cartesian_structure(C)
    if cs is None:
        raise PreconditionError(f"{C.name} has no cartesian structure: {witness}")
    s = strict_monoidal_from_cartesian(cs)
    if s is None:
        raise PreconditionError(f"cartesian structure of {C.name} is not strict")
    return s


def fox_roundtrip(C: FinCategory) -> Verdict:
    """Cartesian structure exists iff uniform comonoids do, and the constructions invert each other."""
    cs, witness = find_cartesian_structure(C)
    if cs is None:
        return Verdict.ok(cartesian=False, witness=witness)
    if strict_monoidal_from_cartesian(cs) is None:
        # only the strict correspondence is checked
        return Verdict.ok(cartesian=True, strict=False)
    uc = fox_converse(cs)
    for f in C.morphisms:
        for g in C.out_of(C.dom[f]):
            if fox_pairing(uc, f, g) != cs.pairing(f, g):
                return Verdict.fail({'reason': 'pairing is not copy followed by tensor', 'pair': (f, g)})
    found, missing = find_uniform_comonoids(uc.mon)
    if found is None:
        return Verdict.fail({'reason': 'cartesian category without uniform comonoids', 'search': missing})
    if found.copy != uc.copy or found.delete != uc.delete:
        return Verdict.fail({'reason': 'uniform comonoids are not the diagonals'})
    cs2, verdict = fox_products(found)
    if not verdict:
        return Verdict.fail(verdict.witness)
    if cs2.product != cs.product or cs2.terminal != cs.terminal:
        return Verdict.fail({'reason': 'recovered products differ from the chosen ones'})
    return Verdict.ok(cartesian=True)


@dataclass(frozen=True, eq=False)
class IndexedMonoidData:
    """A choice of consistent monoids m_x, u_x over uniform comonoids."""

    comonoids: UniformComonoidData
    mul: Dict[str, str]
    unit: Dict[str, str]
    name: str = ""

    @property
    def mon(self) -> StrictMonStructure:
        return self.comonoids.mon

    @property
    def carrier(self) -> FinCategory:
        return self.comonoids.mon.carrier


def _monoid_at(s: StrictMonStructure, x: str, m: str, u: str) -> List[str]:
    C = s.carrier
    (ix,) = _ids(s, x)
    problems = []
    if C.compose(_tensor(s, m, ix), m) != C.compose(_tensor(s, ix, m), m):
        problems.append(f"associativity fails at {x}")
    if C.compose(_tensor(s, u, ix), m) != ix or C.compose(_tensor(s, ix, u), m) != ix:
        problems.append(f"unit law fails at {x}")
    return problems


def indexed_monoid_problems(im: IndexedMonoidData) -> List[str]:
    s = im.mon
    C, I = s.carrier, s.unit
    problems = [f"comonoids: {p}" for p in comonoid_problems(im.comonoids)]
    if problems:
        return problems
    for x in C.objects:
        m, u = im.mul.get(x), im.unit.get(x)
        if m is None or u is None:
            problems.append(f"no monoid at {x}")
            continue
        if (C.dom[m], C.cod[m]) != (s.tensor_obj(x, x), x) or (C.dom[u], C.cod[u]) != (I, x):
            problems.append(f"monoid at {x} has the wrong sort")
            continue
        problems.extend(_monoid_at(s, x, m, u))
    if problems:
        return problems
    if im.mul[I] != C.identity[I] or im.unit[I] != C.identity[I]:
        problems.append("multiplication and unit at the unit object are not identities")
    for f in C.morphisms:
        if C.compose(im.unit[C.dom[f]], f) != im.unit[C.cod[f]]:
            problems.append(f"unit is not natural at {f}")
    for x in C.objects:
        for y in C.objects:
            ix, iy = _ids(s, x, y)
            lhs = C.compose(_tensor(s, ix, s.sigma(y, x), iy), _tensor(s, im.mul[x], im.mul[y]))
            if lhs != im.mul[s.tensor_obj(x, y)]:
                problems.append(f"monoids are not consistent at {x},{y}")
    return problems


def check_indexed_monoids(im: IndexedMonoidData) -> Verdict:
    """All laws, plus the unit object being initial (hence a zero object)."""
    problems = indexed_monoid_problems(im)
    if problems:
        return Verdict.fail({'reason': problems[0]}, problems=len(problems))
    if not is_zero_object(im.carrier, im.mon.unit):
        return Verdict.fail({'reason': f"unit object {im.mon.unit} is not a zero object"})
    return Verdict.ok()


def find_indexed_monoids(uc: UniformComonoidData,
                         limit: int = 100000) -> Tuple[Optional[IndexedMonoidData], Optional[Dict]]:
    """First choice of consistent monoids in search order, or the object that blocks it."""
    s = uc.mon
    C, I = s.carrier, s.unit
    if not is_zero_object(C, I):
        return None, {'object': I, 'reason': 'unit object is not initial'}
    candidates = {}
    for x in C.objects:
        if x == I:
            candidates[x] = [(C.identity[I], C.identity[I])]
            continue
        found = [(m, u) for m in C.hom(s.tensor_obj(x, x), x) for u in C.hom(I, x)
                 if not _monoid_at(s, x, m, u)]
        if not found:
            return None, {'object': x, 'reason': 'no monoid on this object'}
        candidates[x] = found
    objects = list(C.objects)
    for n, picks in enumerate(itertools.product(*(candidates[x] for x in objects))):
        if n >= limit:
            break
        im = IndexedMonoidData(uc, {x: p[0] for x, p in zip(objects, picks)},
                               {x: p[1] for x, p in zip(objects, picks)}, name=f"im({C.name})")
        if not indexed_monoid_problems(im):
            return im, None
    return None, {'reason': 'no consistent choice of monoids'}


def indexed_monoids_on(C: FinCategory) -> Tuple[Optional[IndexedMonoidData], Optional[Dict]]:
    """Cartesian structure, its uniform comonoids and a choice of monoids, when all exist."""
    try:
        s = cartesian_monoidal(C)
    except PreconditionError as e:
        return None, {'reason': str(e)}
    uc, witness = find_uniform_comonoids(s)
    if uc is None:
        return None, witness
    return find_indexed_monoids(uc)


def is_monoid_hom(im: IndexedMonoidData, f: str) -> bool:
    C, s = im.carrier, im.mon
    x, y = C.dom[f], C.cod[f]
    return C.compose(im.mul[x], f) == C.compose(s.tensor_mor(f, f), im.mul[y])


def monoid_homs(im: IndexedMonoidData) -> List[str]:
    return [f for f in im.carrier.morphisms if is_monoid_hom(im, f)]


def hom_subcategory(im: IndexedMonoidData) -> FinCategory:
    """Wide subcategory of monoid homomorphisms."""
    C = im.carrier
    return wide_subcategory(C, monoid_homs(im), name=f"hom({C.name})")


def hom_subcategory_closed(im: IndexedMonoidData) -> Verdict:
    homs = set(monoid_homs(im))
    C, s = im.carrier, im.mon
    for x in C.objects:
        if C.identity[x] not in homs:
            return Verdict.fail({'identity': x})
    for f, g in C.composable_pairs():
        if f in homs and g in homs and C.compose(f, g) not in homs:
            return Verdict.fail({'composite': (f, g)})
    for f in homs:
        for g in homs:
            if s.tensor_mor(f, g) not in homs:
                return Verdict.fail({'tensor': (f, g)})
    return Verdict.ok(homs=len(homs))


def fim_hom(X: FinCategory, a: Sequence[str], b: Sequence[str], bound: int = 5,
            budget: int = 200) -> HomEnumeration:
    """Bounded hom-set of Fim(X): term classes of im(X), merged by the prover."""
    return enumerate_hom(theory_im(X), a, b, bound, budget)


def extension_model(X: FinCategory, target: IndexedMonoidData, G: FinFunctor) -> ModelData:
    """The strict IMon morphism Fim(X) -> target induced by G on colours and generators."""
    s, uc = target.mon, target.comonoids
    colours = {x: G.omap[x] for x in X.objects}
    generators = {f: G.mmap[f] for f in X.morphisms}
    for x in X.objects:
        gx = G.omap[x]
        generators[f"copy_{x}"] = uc.copy[gx]
        generators[f"del_{x}"] = uc.delete[gx]
        generators[f"mul_{x}"] = target.mul[gx]
        generators[f"unit_{x}"] = target.unit[gx]
        for y in X.objects:
            generators[f"sym_{x}_{y}"] = s.sigma(gx, G.omap[y])
    return ModelData(s, colours, generators)


def check_extension(X: FinCategory, target: IndexedMonoidData, G: FinFunctor, model: ModelData) -> Verdict:
    """A candidate extension is a model of im(X), preserves the structure and restricts to G."""
    s, uc = target.mon, target.comonoids
    for x in X.objects:
        gx = model.colours.get(x)
        expected = {f"copy_{x}": uc.copy.get(gx), f"del_{x}": uc.delete.get(gx),
                    f"mul_{x}": target.mul.get(gx), f"unit_{x}": target.unit.get(gx)}
        for g, want in expected.items():
            if model.generators.get(g) != want:
                return Verdict.fail({'generator': g, 'reason': 'structure is not preserved'})
    verdict = check_model(theory_im(X), model)
    if not verdict:
        return Verdict.fail(verdict.witness)
    for f in X.morphisms:
        if model.colours[X.dom[f]] != G.omap[X.dom[f]] or model.generators[f] != G.mmap[f]:
            return Verdict.fail({'generator': f, 'reason': 'extension does not restrict to G'})
    return Verdict.ok()


def check_fim_universal(X: FinCategory, target: IndexedMonoidData, G: FinFunctor,
                        bound: int = 3, budget: int = 200) -> Verdict:
    """G lands in monoid homomorphisms, extends to Fim(X), and the extension is constant on term classes."""
    for f in X.morphisms:
        if not is_monoid_hom(target, G.mmap[f]):
            return Verdict.fail({'morphism': f, 'reason': 'G leaves the monoid homomorphisms'})
    model = extension_model(X, target, G)
    verdict = check_extension(X, target, G, model)
    if not verdict:
        return verdict
    th = theory_im(X)
    words = [()] + [(x,) for x in X.objects]
    checked = 0
    for a in words:
        for b in words:
            for members in enumerate_hom(th, a, b, bound, budget).classes:
                images = {interpret(model, t) for t in members}
                if len(images) != 1:
                    return Verdict.fail({'sort': (a, b), 'reason': 'extension separates a term class',
                                         'images': sorted(images)})
                checked += 1
    logger.debug("Fim(%s) universal property: %d classes agree", X.name, checked)
    return Verdict.ok(classes=checked)


def analyze_indexed_monoids(C: FinCategory) -> Dict:
    """Fox round trip and indexed-monoid search on one category."""
    fox = fox_roundtrip(C)
    im, witness = indexed_monoids_on(C)
    result = {
        'analysis_type': 'indexed_monoids',
        'fox': fox.holds,
        'cartesian': fox.details.get('cartesian'),
        'indexed_monoids': im is not None,
        'holds': fox.holds and im is not None,
        'witness': witness or fox.witness,
    }
    if im is not None:
        result['monoid_homs'] = len(monoid_homs(im))
        result['hom_closed'] = hom_subcategory_closed(im).holds
        result['zero_object'] = check_indexed_monoids(im).holds
    result['summary'] = (f"{C.name}: indexed monoids found" if im is not None
                         else f"{C.name}: no indexed monoids")
    return result
