"""Explicit finite categories, functors, natural transformations and detected
cartesian / strict monoidal structure.

Categories are stored extensionally: a numpy table of morphism indices gives
``f;g`` (diagrammatic order) for every composable pair, ``-1`` elsewhere.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import SortError

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


def pair_id(x: str, y: str) -> str:
    """Id of the pair (x, y) in a product category."""
    return f"({x},{y})"


class FinCategory:
    """A finite category given by its full composition table.

    The constructor does not validate; use :func:`validate_category`.
    ``parts`` optionally records the components of ids built by constructions
    (products, Grothendieck totals, collages).
    """

    def __init__(self, objects: Sequence[str], morphisms: Mapping[str, Pair],
                 compose: Mapping[Pair, str], identity: Optional[Mapping[str, str]] = None,
                 name: str = "", parts: Optional[Mapping[str, tuple]] = None):
        self.name = name
        self.objects: Tuple[str, ...] = tuple(objects)
        self.morphisms: Tuple[str, ...] = tuple(morphisms)
        self.dom: Dict[str, str] = {m: dc[0] for m, dc in morphisms.items()}
        self.cod: Dict[str, str] = {m: dc[1] for m, dc in morphisms.items()}
        if identity is None:
            identity = {x: f"id_{x}" for x in self.objects}
        self.identity: Dict[str, str] = dict(identity)
        self.compose_table: Dict[Pair, str] = dict(compose)
        self.parts: Dict[str, tuple] = dict(parts or {})

        self._index = {m: i for i, m in enumerate(self.morphisms)}
        n = len(self.morphisms)
        table = np.full((n, n), -1, dtype=np.int64)
        for (f, g), h in self.compose_table.items():
            if f in self._index and g in self._index and h in self._index:
                table[self._index[f], self._index[g]] = self._index[h]
        self._table = table
        self._homs: Dict[Pair, List[str]] = {}
        for m in self.morphisms:
            self._homs.setdefault((self.dom[m], self.cod[m]), []).append(m)
        self._identities = frozenset(self.identity.values())

    @classmethod
    def build(cls, objects: Sequence[str], arrows: Mapping[str, Pair],
              compose: Mapping[Pair, str], name: str = "",
              parts: Optional[Mapping[str, tuple]] = None) -> "FinCategory":
        """Add identities ``id_x`` and their composites to a table of non-identity data."""
        morphisms: Dict[str, Pair] = {f"id_{x}": (x, x) for x in objects}
        morphisms.update(arrows)
        table = dict(compose)
        for m, (d, c) in morphisms.items():
            table.setdefault((f"id_{d}", m), m)
            table.setdefault((m, f"id_{c}"), m)
        return cls(objects, morphisms, table, name=name, parts=parts)

    def __repr__(self):
        return f"FinCategory({self.name!r}, objects={len(self.objects)}, morphisms={len(self.morphisms)})"

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (set(self.objects) == set(other.objects) and self.dom == other.dom
                and self.cod == other.cod and self.identity == other.identity
                and self.compose_table == other.compose_table)

    def __hash__(self):
        return hash((frozenset(self.objects), frozenset(self.morphisms)))

    def index(self, m: str) -> int:
        return self._index[m]

    def composable(self, f: str, g: str) -> bool:
        return self.cod[f] == self.dom[g]

    def compose(self, f: str, g: str) -> str:
        try:
            k = self._table[self._index[f], self._index[g]]
        except KeyError as e:
            raise SortError(f"unknown morphism {e.args[0]!r} in {self.name or 'category'}") from None
        if k < 0:
            raise SortError(f"{f};{g} is not defined in {self.name or 'category'}")
        return self.morphisms[k]

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return tuple(self._homs.get((a, b), ()))

    def out_of(self, a: str) -> Tuple[str, ...]:
        return tuple(m for m in self.morphisms if self.dom[m] == a)

    def into(self, a: str) -> Tuple[str, ...]:
        return tuple(m for m in self.morphisms if self.cod[m] == a)

    def is_identity(self, m: str) -> bool:
        return m in self._identities

    def composable_pairs(self) -> Iterator[Pair]:
        for f in self.morphisms:
            for g in self.morphisms:
                if self.cod[f] == self.dom[g]:
                    yield f, g


def validate_category(c: FinCategory) -> List[str]:
    """Every violated axiom, empty iff ``c`` is a category."""
    problems: List[str] = []
    objects = set(c.objects)
    for m in c.morphisms:
        if c.dom[m] not in objects or c.cod[m] not in objects:
            problems.append(f"typing: {m} has an endpoint outside the objects")
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c._index:
            problems.append(f"identity: no identity morphism for {x}")
        elif c.dom[i] != x or c.cod[i] != x:
            problems.append(f"identity: {i} is not an endomorphism of {x}")
    for (f, g), h in c.compose_table.items():
        if f not in c._index or g not in c._index or h not in c._index:
            problems.append(f"typing: {f};{g} = {h} mentions an unknown morphism")

    for f in c.morphisms:
        for g in c.morphisms:
            composable = c.cod[f] == c.dom[g]
            defined = (f, g) in c.compose_table
            if composable and not defined:
                problems.append(f"typing: {f};{g} is undefined")
            elif defined and not composable:
                problems.append(f"typing: {f};{g} is defined on a non-composable pair")
            elif defined:
                h = c.compose_table[(f, g)]
                if h in c._index and (c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]):
                    problems.append(f"typing: {f};{g} = {h} has the wrong boundary")

    # only entries naming known morphisms reach the table
    def lookup(f, g):
        k = c._table[c._index[f], c._index[g]]
        return c.morphisms[k] if k >= 0 else None

    for f in c.morphisms:
        i, j = c.identity.get(c.dom[f]), c.identity.get(c.cod[f])
        if i in c._index and lookup(i, f) != f:
            problems.append(f"unitality: id;{f} != {f}")
        if j in c._index and lookup(f, j) != f:
            problems.append(f"unitality: {f};id != {f}")

    n = len(c.morphisms)
    if n:
        table = c._table
        defined = table >= 0
        left = table[np.where(defined, table, 0)]
        right = table[np.arange(n)[:, None, None], np.where(defined, table, 0)[None, :, :]]
        mask = defined[:, :, None] & defined[None, :, :]
        for i, j, k in np.argwhere(mask & (left != right))[:10]:
            f, g, h = c.morphisms[i], c.morphisms[j], c.morphisms[k]
            problems.append(f"associativity: ({f};{g});{h} != {f};({g};{h})")
    return problems


def analyze_category(c: FinCategory) -> Dict:
    problems = validate_category(c)
    return {
        'analysis_type': 'category',
        'holds': not problems,
        'count': len(problems),
        'violations': problems,
        'objects': len(c.objects),
        'morphisms': len(c.morphisms),
    }


class FinFunctor:
    """Object and morphism maps between two finite categories."""

    def __init__(self, source: FinCategory, target: FinCategory,
                 omap: Mapping[str, str], mmap: Mapping[str, str], name: str = ""):
        self.source = source
        self.target = target
        self.omap: Dict[str, str] = dict(omap)
        self.mmap: Dict[str, str] = dict(mmap)
        self.name = name

    def __repr__(self):
        return f"FinFunctor({self.name!r}: {self.source.name} -> {self.target.name})"

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.omap == other.omap and self.mmap == other.mmap)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.mmap.items())))


def validate_functor(F: FinFunctor) -> List[str]:
    problems: List[str] = []
    A, B = F.source, F.target
    for x in A.objects:
        if x not in F.omap:
            problems.append(f"omap: {x} is unmapped")
        elif F.omap[x] not in B.objects:
            problems.append(f"omap: {x} -> {F.omap[x]} is not an object of the target")
    for m in A.morphisms:
        if m not in F.mmap:
            problems.append(f"mmap: {m} is unmapped")
        elif F.mmap[m] not in B._index:
            problems.append(f"mmap: {m} -> {F.mmap[m]} is not a morphism of the target")
    if problems:
        return problems

    for m in A.morphisms:
        fm = F.mmap[m]
        if B.dom[fm] != F.omap[A.dom[m]] or B.cod[fm] != F.omap[A.cod[m]]:
            problems.append(f"dom/cod: {m} -> {fm} does not respect endpoints")
    for x in A.objects:
        if F.mmap[A.identity[x]] != B.identity[F.omap[x]]:
            problems.append(f"identity: id_{x} is not sent to an identity")
    if problems:
        return problems

    image = np.array([B.index(F.mmap[m]) for m in A.morphisms], dtype=np.int64)
    if len(image):
        defined = A._table >= 0
        lhs = image[np.where(defined, A._table, 0)]
        rhs = B._table[image[:, None], image[None, :]]
        for i, j in np.argwhere(defined & (lhs != rhs))[:10]:
            problems.append(f"composition: F({A.morphisms[i]};{A.morphisms[j]}) != F({A.morphisms[i]});F({A.morphisms[j]})")
    return problems


def is_isomorphism(F: FinFunctor) -> bool:
    if validate_functor(F):
        return False
    return (len(set(F.omap.values())) == len(F.target.objects) == len(F.source.objects)
            and len(set(F.mmap.values())) == len(F.target.morphisms) == len(F.source.morphisms))


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms},
                      name=f"id_{c.name}")


def compose_functors(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    """F then G."""
    return FinFunctor(F.source, G.target,
                      {x: G.omap[F.omap[x]] for x in F.source.objects},
                      {m: G.mmap[F.mmap[m]] for m in F.source.morphisms},
                      name=f"{F.name};{G.name}")


def constant_functor(source: FinCategory, target: FinCategory, x: str) -> FinFunctor:
    return FinFunctor(source, target, {a: x for a in source.objects},
                      {m: target.identity[x] for m in source.morphisms}, name=f"const_{x}")


def product_category(a: FinCategory, b: FinCategory) -> FinCategory:
    objects = [pair_id(x, y) for x in a.objects for y in b.objects]
    morphisms: Dict[str, Pair] = {}
    parts: Dict[str, tuple] = {}
    for x in a.objects:
        for y in b.objects:
            parts[pair_id(x, y)] = (x, y)
    for f in a.morphisms:
        for g in b.morphisms:
            m = pair_id(f, g)
            morphisms[m] = (pair_id(a.dom[f], b.dom[g]), pair_id(a.cod[f], b.cod[g]))
            parts[m] = (f, g)
    compose: Dict[Pair, str] = {}
    for f1, f2 in a.composable_pairs():
        for g1, g2 in b.composable_pairs():
            compose[(pair_id(f1, g1), pair_id(f2, g2))] = pair_id(a.compose(f1, f2), b.compose(g1, g2))
    identity = {pair_id(x, y): pair_id(a.identity[x], b.identity[y]) for x in a.objects for y in b.objects}
    return FinCategory(objects, morphisms, compose, identity, name=f"{a.name}x{b.name}", parts=parts)


def projection_functors(a: FinCategory, b: FinCategory,
                        prod: Optional[FinCategory] = None) -> Tuple[FinFunctor, FinFunctor]:
    prod = prod or product_category(a, b)
    p1 = FinFunctor(prod, a, {x: prod.parts[x][0] for x in prod.objects},
                    {m: prod.parts[m][0] for m in prod.morphisms}, name="pi1")
    p2 = FinFunctor(prod, b, {x: prod.parts[x][1] for x in prod.objects},
                    {m: prod.parts[m][1] for m in prod.morphisms}, name="pi2")
    return p1, p2


def pair_functors(F: FinFunctor, G: FinFunctor, prod: Optional[FinCategory] = None) -> FinFunctor:
    """The componentwise functor <F, G> into the product of the targets."""
    prod = prod or product_category(F.target, G.target)
    return FinFunctor(F.source, prod,
                      {x: pair_id(F.omap[x], G.omap[x]) for x in F.source.objects},
                      {m: pair_id(F.mmap[m], G.mmap[m]) for m in F.source.morphisms},
                      name=f"<{F.name},{G.name}>")


def opposite(c: FinCategory) -> FinCategory:
    morphisms = {m: (c.cod[m], c.dom[m]) for m in c.morphisms}
    compose = {(g, f): h for (f, g), h in c.compose_table.items()}
    name = c.name[:-3] if c.name.endswith("^op") else f"{c.name}^op"
    return FinCategory(c.objects, morphisms, compose, c.identity, name=name, parts=c.parts)


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.source), opposite(F.target), F.omap, F.mmap, name=f"{F.name}^op")


def full_subcategory(c: FinCategory, objects: Sequence[str], name: str = "") -> FinCategory:
    keep = set(objects)
    return wide_restriction(c, [x for x in c.objects if x in keep],
                            [m for m in c.morphisms if c.dom[m] in keep and c.cod[m] in keep], name)


def wide_subcategory(c: FinCategory, morphisms: Sequence[str], name: str = "") -> FinCategory:
    """Subcategory on all objects with the given morphisms (identities are always kept)."""
    keep = set(morphisms) | set(c.identity.values())
    return wide_restriction(c, c.objects, [m for m in c.morphisms if m in keep], name)


def wide_restriction(c: FinCategory, objects: Sequence[str], morphisms: Sequence[str],
                     name: str = "") -> FinCategory:
    keep = set(morphisms)
    compose = {(f, g): h for (f, g), h in c.compose_table.items()
               if f in keep and g in keep and h in keep}
    missing = [(f, g) for f in morphisms for g in morphisms
               if c.cod[f] == c.dom[g] and (f, g) not in compose]
    if missing:
        raise SortError(f"subcategory is not closed under composition: {missing[0]}")
    return FinCategory(objects, {m: (c.dom[m], c.cod[m]) for m in morphisms}, compose,
                       {x: c.identity[x] for x in objects}, name=name or c.name,
                       parts={k: v for k, v in c.parts.items() if k in keep or k in set(objects)})


def find_terminal(c: FinCategory) -> Optional[str]:
    for t in sorted(c.objects):
        if all(len(c.hom(x, t)) == 1 for x in c.objects):
            return t
    return None


def find_initial(c: FinCategory) -> Optional[str]:
    for t in sorted(c.objects):
        if all(len(c.hom(t, x)) == 1 for x in c.objects):
            return t
    return None


def is_zero_object(c: FinCategory, z: str) -> bool:
    return all(len(c.hom(x, z)) == 1 and len(c.hom(z, x)) == 1 for x in c.objects)


@dataclass(frozen=True, eq=False)
class NatTransf:
    F: FinFunctor
    G: FinFunctor
    components: Dict[str, str]


def is_natural(t: NatTransf) -> bool:
    B = t.F.target
    for f in t.F.source.morphisms:
        a, b = t.F.source.dom[f], t.F.source.cod[f]
        if B.compose(t.F.mmap[f], t.components[b]) != B.compose(t.components[a], t.G.mmap[f]):
            logger.debug("naturality square fails at %s", f)
            return False
    return True


@dataclass(frozen=True, eq=False)
class CartesianStructure:
    """Chosen terminal object and binary products with their projections."""

    carrier: FinCategory
    terminal: str
    bang: Dict[str, str]
    product: Dict[Pair, Tuple[str, str, str]]

    def product_object(self, a: str, b: str) -> str:
        return self.product[(a, b)][0]

    def projections(self, a: str, b: str) -> Tuple[str, str]:
        _, p1, p2 = self.product[(a, b)]
        return p1, p2

    def pairing(self, f: str, g: str) -> str:
        c = self.carrier
        if c.dom[f] != c.dom[g]:
            raise SortError(f"pairing needs a common domain, got {f} and {g}")
        p, p1, p2 = self.product[(c.cod[f], c.cod[g])]
        for h in c.hom(c.dom[f], p):
            if c.compose(h, p1) == f and c.compose(h, p2) == g:
                return h
        raise SortError(f"no mediating morphism for ({f},{g})")

    def tensor(self, f: str, g: str) -> str:
        """f x g = (pi1;f, pi2;g)."""
        c = self.carrier
        p1, p2 = self.projections(c.dom[f], c.dom[g])
        return self.pairing(c.compose(p1, f), c.compose(p2, g))


def _is_product_cone(c: FinCategory, p: str, p1: str, p2: str) -> bool:
    a, b = c.cod[p1], c.cod[p2]
    for x in c.objects:
        hom_xp = c.hom(x, p)
        images = {}
        for h in hom_xp:
            key = (c.compose(h, p1), c.compose(h, p2))
            if key in images:
                return False
            images[key] = h
        if len(images) != len(c.hom(x, a)) * len(c.hom(x, b)):
            return False
    return True


def find_cartesian_structure(c: FinCategory) -> Tuple[Optional[CartesianStructure], Optional[Dict]]:
    """Chosen terminal and products, or ``(None, witness)``.

    Candidates are tried in lexicographic order of (object, pi1, pi2), so the
    chosen structure is reproducible.
    """
    terminal = find_terminal(c)
    if terminal is None:
        return None, {'missing': 'terminal'}
    bang = {x: c.hom(x, terminal)[0] for x in c.objects}
    product: Dict[Pair, Tuple[str, str, str]] = {}
    for a in sorted(c.objects):
        for b in sorted(c.objects):
            chosen = None
            for p in sorted(c.objects):
                for p1 in sorted(c.hom(p, a)):
                    for p2 in sorted(c.hom(p, b)):
                        if _is_product_cone(c, p, p1, p2):
                            chosen = (p, p1, p2)
                            break
                    if chosen:
                        break
                if chosen:
                    break
            if chosen is None:
                return None, {'missing': 'product', 'pair': (a, b)}
            product[(a, b)] = chosen
    return CartesianStructure(c, terminal, bang, product), None


def verify_cartesian_structure(cs: CartesianStructure) -> List[str]:
    """Independent re-check: exactly one mediating morphism for every cone."""
    c = cs.carrier
    problems = []
    for x in c.objects:
        if len(c.hom(x, cs.terminal)) != 1:
            problems.append(f"terminal: hom({x},{cs.terminal}) is not a singleton")
    for (a, b), (p, p1, p2) in sorted(cs.product.items()):
        for x in c.objects:
            for f in c.hom(x, a):
                for g in c.hom(x, b):
                    mediators = [h for h in c.hom(x, p)
                                 if c.compose(h, p1) == f and c.compose(h, p2) == g]
                    if len(mediators) != 1:
                        problems.append(f"product {a}x{b}: cone ({f},{g}) has {len(mediators)} mediators")
    return problems


@dataclass(frozen=True, eq=False)
class StrictMonStructure:
    """Strict monoidal structure on a finite carrier, optionally symmetric."""

    carrier: FinCategory
    unit: str
    obj_tensor: Dict[Pair, str]
    mor_tensor: Dict[Pair, str]
    symmetry: Optional[Dict[Pair, str]] = None
    name: str = ""

    def tensor_obj(self, a: str, b: str) -> str:
        return self.obj_tensor[(a, b)]

    def tensor_mor(self, f: str, g: str) -> str:
        return self.mor_tensor[(f, g)]

    def tensor_word(self, objects: Sequence[str]) -> str:
        result = self.unit
        for x in objects:
            result = self.tensor_obj(result, x)
        return result

    def sigma(self, a: str, b: str) -> str:
        if self.symmetry is None:
            raise SortError("monoidal structure carries no symmetry")
        return self.symmetry[(a, b)]


def validate_strict_monoidal(s: StrictMonStructure) -> List[str]:
    c = s.carrier
    problems: List[str] = []
    for a in c.objects:
        for b in c.objects:
            if (a, b) not in s.obj_tensor:
                problems.append(f"tensor: {a}*{b} undefined")
    for f in c.morphisms:
        for g in c.morphisms:
            if (f, g) not in s.mor_tensor:
                problems.append(f"tensor: {f}*{g} undefined")
    if problems:
        return problems[:10]
    for f in c.morphisms:
        for g in c.morphisms:
            fg = s.tensor_mor(f, g)
            if (c.dom[fg], c.cod[fg]) != (s.tensor_obj(c.dom[f], c.dom[g]), s.tensor_obj(c.cod[f], c.cod[g])):
                problems.append(f"typing: {f}*{g} has the wrong boundary")
    for a, b, d in itertools.product(c.objects, repeat=3):
        if s.tensor_obj(s.tensor_obj(a, b), d) != s.tensor_obj(a, s.tensor_obj(b, d)):
            problems.append(f"associativity: ({a}*{b})*{d}")
    for a in c.objects:
        if s.tensor_obj(s.unit, a) != a or s.tensor_obj(a, s.unit) != a:
            problems.append(f"unit: I*{a} or {a}*I differs from {a}")
    unit_id = c.identity[s.unit]
    for f in c.morphisms:
        if s.tensor_mor(unit_id, f) != f or s.tensor_mor(f, unit_id) != f:
            problems.append(f"unit: id_I*{f} differs from {f}")
        for g in c.morphisms:
            for h in c.morphisms:
                if s.tensor_mor(s.tensor_mor(f, g), h) != s.tensor_mor(f, s.tensor_mor(g, h)):
                    problems.append(f"associativity: ({f}*{g})*{h}")
    for a in c.objects:
        for b in c.objects:
            if s.tensor_mor(c.identity[a], c.identity[b]) != c.identity[s.tensor_obj(a, b)]:
                problems.append(f"interchange: id_{a}*id_{b} is not an identity")
    pairs = list(c.composable_pairs())
    for f, g in pairs:
        for h, k in pairs:
            lhs = s.tensor_mor(c.compose(f, g), c.compose(h, k))
            rhs = c.compose(s.tensor_mor(f, h), s.tensor_mor(g, k))
            if lhs != rhs:
                problems.append(f"interchange: ({f};{g})*({h};{k})")
    if s.symmetry is not None:
        problems.extend(_symmetry_problems(s))
    return problems[:50]


def _symmetry_problems(s: StrictMonStructure) -> List[str]:
    c = s.carrier
    problems = []
    for a in c.objects:
        for b in c.objects:
            if c.compose(s.sigma(a, b), s.sigma(b, a)) != c.identity[s.tensor_obj(a, b)]:
                problems.append(f"symmetry: sigma_{a},{b} is not self-inverse")
            for d in c.objects:
                lhs = s.sigma(a, s.tensor_obj(b, d))
                rhs = c.compose(s.tensor_mor(s.sigma(a, b), c.identity[d]),
                                s.tensor_mor(c.identity[b], s.sigma(a, d)))
                if lhs != rhs:
                    problems.append(f"symmetry: hexagon fails at {a},{b},{d}")
    for f in c.morphisms:
        for g in c.morphisms:
            lhs = c.compose(s.tensor_mor(f, g), s.sigma(c.cod[f], c.cod[g]))
            rhs = c.compose(s.sigma(c.dom[f], c.dom[g]), s.tensor_mor(g, f))
            if lhs != rhs:
                problems.append(f"symmetry: naturality fails at {f},{g}")
    return problems


def strict_monoidal_from_cartesian(cs: CartesianStructure) -> Optional[StrictMonStructure]:
    """The cartesian monoidal structure, when the chosen products are strict."""
    c = cs.carrier
    obj_tensor = {(a, b): cs.product_object(a, b) for a in c.objects for b in c.objects}
    mor_tensor = {(f, g): cs.tensor(f, g) for f in c.morphisms for g in c.morphisms}
    symmetry = {}
    for a in c.objects:
        for b in c.objects:
            p1, p2 = cs.projections(a, b)
            symmetry[(a, b)] = cs.pairing(p2, p1)
    s = StrictMonStructure(c, cs.terminal, obj_tensor, mor_tensor, symmetry, name=f"cart({c.name})")
    problems = validate_strict_monoidal(s)
    if problems:
        logger.debug("cartesian structure on %s is not strict: %s", c.name, problems[0])
        return None
    return s


def monoid_category(elements: Sequence[str], table: Mapping[Pair, str], unit: str,
                    name: str = "") -> FinCategory:
    """One-object category whose morphisms are the elements of a finite monoid."""
    morphisms = {e: ("*", "*") for e in elements}
    return FinCategory(["*"], morphisms, table, {"*": unit}, name=name or "BM")


def commutative_monoid_structure(c: FinCategory) -> StrictMonStructure:
    """Strict symmetric monoidal structure on a one-object category, tensor = composition."""
    if len(c.objects) != 1:
        raise SortError("expected a one-object category")
    (x,) = c.objects
    mor_tensor = {(f, g): c.compose(f, g) for f in c.morphisms for g in c.morphisms}
    return StrictMonStructure(c, x, {(x, x): x}, mor_tensor, {(x, x): c.identity[x]},
                              name=f"mon({c.name})")


def enumerate_functors(A: FinCategory, B: FinCategory, limit: Optional[int] = None) -> Iterator[FinFunctor]:
    """All functors A -> B, objects first then morphisms hom by hom."""
    count = 0
    for images in itertools.product(B.objects, repeat=len(A.objects)):
        omap = dict(zip(A.objects, images))
        free = [m for m in A.morphisms if not A.is_identity(m)]
        choices = [B.hom(omap[A.dom[m]], omap[A.cod[m]]) for m in free]
        if any(not ch for ch in choices):
            continue
        base = {A.identity[x]: B.identity[omap[x]] for x in A.objects}
        for picks in itertools.product(*choices):
            mmap = dict(base)
            mmap.update(zip(free, picks))
            F = FinFunctor(A, B, omap, mmap)
            if not validate_functor(F):
                yield F
                count += 1
                if limit is not None and count >= limit:
                    return
