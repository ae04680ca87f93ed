"""Monoidal deflations over Zg(X) for a cartesian base X.

The tensor of the total 2-category is the one a minimal deflation inherits from
the products of its forward restriction: single entries of the same direction
are multiplied entrywise, anything else is whiskered forward first, and the
chains are multiplied in the fibres. The checks below cover preservation and
reflection, multiplicativity of the lifting map on generating 2-cells, and
products of liftings.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .deflation import (Cell, CollageTotal, DeflationData, deflation_from_split_opfibration,
                        generators_at, is_deflation, is_minimal, lifting_of, star_restriction)
from .errors import PreconditionError, SortError
from .fincat import (CartesianStructure, FinFunctor, find_cartesian_structure, is_isomorphism,
                     pair_id, verify_cartesian_structure)
from .grothendieck import roundtrip_equivalence_check
from .im_opfibrations import (ImOpfibData, im_opfibration_data, is_im_opfibration,
                              product_preservation)
from .indexed_monoids import fox_products, indexed_monoids_on
from .opfibration_check import Cleavage, FuncOver, choose_cleavage
from .results import Verdict
from .zigzag import FWD, ZgMonoidal, ZigzagWord, backward, empty_word, forward, zg_monoidal

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MonoidalDeflation:
    defl: DeflationData
    zg: ZgMonoidal
    star: FuncOver
    star_cs: CartesianStructure
    named: Dict[Cell, str]
    name: str = ""
    _cells: Dict[str, Cell] = field(default_factory=dict, repr=False)

    @property
    def T(self) -> CollageTotal:
        return self.defl.total

    def cell_of(self, label: str) -> Cell:
        if not self._cells:
            self._cells.update({v: k for k, v in self.named.items()})
        return self._cells[label]

    def tensor_obj(self, o1: str, o2: str) -> str:
        return self.star_cs.product_object(o1, o2)

    def unit(self) -> str:
        return self.star_cs.terminal

    def fibre_product(self, x: str, p: str, z: str, q: str) -> str:
        """Product of fibre morphisms p over x and q over z, in the fibre over x*z."""
        label = self.star_cs.tensor(self.named[self._fibre_cell(x, p)], self.named[self._fibre_cell(z, q)])
        return self.cell_of(label).chain[0]

    def _fibre_cell(self, x: str, p: str) -> Cell:
        Fx = self.T.I.fibre[x]
        return Cell(pair_id(x, Fx.dom[p]), pair_id(x, Fx.cod[p]), empty_word(x), (p,))

    def pieces(self, F: Cell) -> List[Cell]:
        out = []
        while len(F.word) > 1:
            head, F = self.T.cut(F, 1)
            out.append(head)
        out.append(F)
        return out

    def _entry(self, F: Cell) -> Tuple[Optional[str], str]:
        if F.word.entries:
            return F.word.entries[0]
        return None, self.T.X.identity[F.word.src]

    def tensor_single(self, F: Cell, G: Cell) -> Cell:
        """Product of two cells over at most one entry each, of equal direction."""
        T, X = self.T, self.T.X
        (dF, f), (dG, g) = self._entry(F), self._entry(G)
        if dF and dG and dF != dG:
            raise SortError("entrywise product needs equal directions", node=f"{F} x {G}")
        d = dF or dG or FWD
        m = self.zg.cs.tensor(f, g)
        p = self.fibre_product(X.cod[f], F.chain[0], X.cod[g], G.chain[0])
        src, tgt = self.tensor_obj(F.src, G.src), self.tensor_obj(F.tgt, G.tgt)
        a, b = T.parts[src][1], T.parts[tgt][1]
        if X.is_identity(m):
            elems = T.I.fibre[X.dom[m]].hom(a, b)
        else:
            elems = T.entry_profunctor((d, m)).at(a, b)
        if p not in elems:
            raise SortError(f"{p} does not lie above {d} {m} between {src} and {tgt}")
        return T.assemble(src, tgt, ((d, m),), (p,))

    def tensor_cells(self, F: Cell, G: Cell) -> Cell:
        """Entrywise when the words have the same shape, otherwise (F x id);(id x G)."""
        T = self.T
        shape = [d for d, _ in F.word.entries]
        if shape == [d for d, _ in G.word.entries]:
            parts = [self.tensor_single(P, Q) for P, Q in zip(self.pieces(F), self.pieces(G))]
        else:
            parts = [self.tensor_single(P, T.identity(G.src)) for P in self.pieces(F)]
            parts += [self.tensor_single(T.identity(F.tgt), Q) for Q in self.pieces(G)]
        return T.compose_all(parts)


def _word(X, d: str, f: str) -> ZigzagWord:
    if X.is_identity(f):
        return empty_word(X.dom[f])
    return forward(X, f) if d == FWD else backward(X, f)


def monoidal_from_deflation(d: DeflationData, zg: Optional[ZgMonoidal] = None,
                            star_cs: Optional[CartesianStructure] = None) -> MonoidalDeflation:
    """Tensor induced by the products of the forward restriction of a minimal deflation."""
    if not is_minimal(d):
        raise PreconditionError("the induced tensor needs a minimal deflation")
    star, named = star_restriction(d)
    zg = zg or zg_monoidal(d.total.X)
    if star_cs is None:
        star_cs, witness = find_cartesian_structure(star.total)
        if star_cs is None:
            raise PreconditionError(f"forward restriction has no products: {witness}")
    return MonoidalDeflation(d, zg, star, star_cs, named, name=f"{d.name}^x")


def _cells_up_to(T: CollageTotal, length: int) -> List[Cell]:
    return [C for o1 in T.objects for o2 in T.objects for C in T.hom(o1, o2, length)]


def _reflection_failure(md: MonoidalDeflation, H: Cell) -> Optional[Dict]:
    T, X = md.T, md.T.X
    d, m = md._entry(H)
    d = d or FWD
    pairs = [(o1, o2) for o1 in T.objects for o2 in T.objects if md.tensor_obj(o1, o2) == H.src]
    for f, g in md.zg.factor_pairs(m):
        wf, wg = _word(X, d, f), _word(X, d, g)
        found = any(md.tensor_cells(F, G) == H
                    for o1, o2 in pairs
                    for F in (C for b in T.objects for C in T.cells(o1, b, wf))
                    for G in (C for c in T.objects for C in T.cells(o2, c, wg)))
        if not found:
            return {'cell': str(H), 'factors': (f, g), 'reason': 'no product of cells above the factors'}
    return None


def is_monoidal_deflation(md: MonoidalDeflation, pair_length: int = 1) -> Verdict:
    """Deflation, products preserved and reflected, phi multiplicative, liftings of products."""
    T, calc, zg = md.T, md.T.calc, md.zg
    defl = is_deflation(md.defl)
    if not defl:
        return Verdict.fail({'deflation': defl.witness})
    problems = verify_cartesian_structure(md.star_cs)
    if problems:
        return Verdict.fail({'products': problems[0]})
    preserved = product_preservation(md.star, md.star_cs, zg.cs)
    if not preserved:
        return preserved
    cells = _cells_up_to(T, pair_length)
    checked = 0
    try:
        for F in cells:
            for G in cells:
                H = md.tensor_cells(F, G)
                if (H.src, H.tgt) != (md.tensor_obj(F.src, G.src), md.tensor_obj(F.tgt, G.tgt)) \
                        or not zg.equal(H.word, zg.tensor_words(F.word, G.word)):
                    return Verdict.fail({'cells': (str(F), str(G)), 'reason': 'product is not above pF x pG'})
                checked += 1
        for H in cells:
            if len(H.word) <= 1:
                failure = _reflection_failure(md, H)
                if failure:
                    return Verdict.fail(failure)
        sources = [C for C in _cells_up_to(T, 2) if len(generators_at(calc, C.word)) > 1]
        for F in sources:
            for alpha in generators_at(calc, F.word)[1:]:
                for G in sources:
                    for beta in generators_at(calc, G.word)[1:]:
                        lhs = T.lift(md.tensor_cells(F, G), zg.twocell_product(calc, alpha, beta)).target
                        rhs = md.tensor_cells(T.lift(F, alpha).target, T.lift(G, beta).target)
                        if lhs != rhs:
                            return Verdict.fail({'cells': (str(F), str(G)),
                                                 'alphas': (calc.render(alpha), calc.render(beta)),
                                                 'reason': 'phi is not multiplicative'})
                        checked += 1
    except SortError as e:
        return Verdict.fail({'reason': str(e)})
    lifted = lifting_products(md)
    if not lifted:
        return lifted
    logger.info("monoidal deflation %s: %d instances checked", md.name, checked)
    return Verdict.ok(instances=checked, **lifted.details)


def lifting_products(md: MonoidalDeflation) -> Verdict:
    """The product of the liftings of (a, f) and (c, g) is the lifting of (a x c, f x g)."""
    T, X = md.T, md.T.X
    checked = 0
    for o1 in T.objects:
        for o2 in T.objects:
            for f in X.out_of(T.over(o1)):
                for g in X.out_of(T.over(o2)):
                    expected = lifting_of(md.defl, md.tensor_obj(o1, o2), md.zg.cs.tensor(f, g))[0]
                    try:
                        got = md.tensor_cells(lifting_of(md.defl, o1, f)[0], lifting_of(md.defl, o2, g)[0])
                    except SortError as e:
                        return Verdict.fail({'objects': (o1, o2), 'morphisms': (f, g), 'reason': str(e)})
                    if got != expected:
                        return Verdict.fail({'objects': (o1, o2), 'morphisms': (f, g),
                                             'reason': 'product of liftings is not a lifting',
                                             'product': str(got), 'lifting': str(expected)})
                    checked += 1
    return Verdict.ok(lifting_pairs=checked)


def monoidal_defl_to_im(md: MonoidalDeflation) -> ImOpfibData:
    """The forward restriction with the base's indexed monoids."""
    base, witness = indexed_monoids_on(md.T.X)
    if base is None:
        raise PreconditionError(f"{md.T.X.name} has no indexed monoids: {witness}")
    e = ImOpfibData(md.star, base, md.star_cs)
    verdict = is_im_opfibration(e)
    if not verdict:
        raise PreconditionError(f"restriction is not an im-opfibration: {verdict.witness}")
    return e


def _comparison(star: FuncOver, q: FuncOver, cleavage: Cleavage) -> FinFunctor:
    """Forward restriction -> original total: (m, p) |-> lift(a, m);p."""
    S, Y = star.total, q.total
    omap = {o: S.parts[o][1] for o in S.objects}
    mmap = {}
    for label in S.morphisms:
        m, p = S.parts[label]
        mmap[label] = Y.compose(cleavage.lift(omap[S.dom[label]], m), p)
    return FinFunctor(S, Y, omap, mmap, name="star_comparison")


def _transport(cs: CartesianStructure, K: FinFunctor) -> CartesianStructure:
    inv_o = {v: k for k, v in K.omap.items()}
    inv_m = {v: k for k, v in K.mmap.items()}
    product = {(inv_o[a], inv_o[b]): (inv_o[P], inv_m[p1], inv_m[p2])
               for (a, b), (P, p1, p2) in cs.product.items()}
    return CartesianStructure(K.source, inv_o[cs.terminal], {inv_o[a]: inv_m[h] for a, h in cs.bang.items()},
                              product)


def im_to_monoidal_defl(e: ImOpfibData, word_length: int = 2, cell_size: int = 12) -> MonoidalDeflation:
    """Minimal deflation of the opfibration, with the tensor carried over from its products."""
    verdict = is_im_opfibration(e)
    if not verdict:
        raise PreconditionError(f"not an im-opfibration: {verdict.witness}")
    cleavage, witness = choose_cleavage(e.q, split_required=True)
    if cleavage is None:
        raise PreconditionError(f"no split cleavage: {witness}")
    d = deflation_from_split_opfibration(e.q, cleavage, word_length, cell_size)
    zg = zg_monoidal(e.q.base, fox_products(e.base.comonoids)[0])
    star, named = star_restriction(d)
    K = _comparison(star, e.q, cleavage)
    if not is_isomorphism(K):
        raise PreconditionError("forward restriction is not isomorphic to the opfibration")
    return MonoidalDeflation(d, zg, star, _transport(e.total, K), named, name=f"{d.name}^x")


def monoidal_deflation_roundtrip(e: ImOpfibData, word_length: int = 2) -> Verdict:
    """im-opfibration -> monoidal deflation -> im-opfibration recovers the products."""
    md = im_to_monoidal_defl(e, word_length)
    verdict = is_monoidal_deflation(md)
    if not verdict:
        return Verdict.fail({'monoidal': verdict.witness})
    back = monoidal_defl_to_im(md)
    p = e.q.p
    for a in e.q.total.objects:
        for c in e.q.total.objects:
            prod = e.total.product_object(a, c)
            got = back.total.product_object(pair_id(p.omap[a], a), pair_id(p.omap[c], c))
            if got != pair_id(p.omap[prod], prod):
                return Verdict.fail({'objects': (a, c), 'reason': 'product is not recovered'})
    iso = roundtrip_equivalence_check(e.q)
    if not iso:
        return Verdict.fail(iso.witness)
    return Verdict.ok(**verdict.details)


def analyze_monoidal_deflation(q: FuncOver, word_length: int = 2, cell_size: int = 12) -> Dict:
    e, witness = im_opfibration_data(q)
    route = "im_opfibration" if e is not None and is_im_opfibration(e) else "deflation"
    try:
        if route == "im_opfibration":
            md = im_to_monoidal_defl(e, word_length, cell_size)
        else:
            md = monoidal_from_deflation(deflation_from_split_opfibration(q, word_length=word_length,
                                                                          cell_size=cell_size))
    except PreconditionError as err:
        return {'analysis_type': 'monoidal_deflation', 'holds': False, 'route': route,
                'witness': {'reason': str(err)}, 'summary': f"{q.p.name}: no monoidal deflation"}
    verdict = is_monoidal_deflation(md)
    result = {
        'analysis_type': 'monoidal_deflation',
        'holds': verdict.holds,
        'route': route,
        'indexed_monoids': route == "im_opfibration",
        'witness': verdict.witness,
        'details': verdict.details,
        'summary': f"{q.p.name}: monoidal deflation" if verdict else f"{q.p.name}: not a monoidal deflation",
    }
    if verdict and route == "im_opfibration":
        result['roundtrip'] = monoidal_deflation_roundtrip(e, word_length).holds
    return result
