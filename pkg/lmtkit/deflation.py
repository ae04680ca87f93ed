"""Deflations into zigzag 2-categories, built as collages of composite profunctors.

A strict opindexed category D over X extends to zigzags: a forward entry f acts
as the refine profunctor of D(f), a backward entry as its coarsen profunctor,
and a word as the multi-way coend of its entries. The collage has objects
(x, a), 1-cells (w, e) with e a coend class of D(w), and one 2-cell (F, alpha)
for every 2-cell alpha of Zg(X) out of pF. The lifting map sends (F, alpha) to
the 2-cell ending in D(alpha)(e).

Everything is explored up to a word length; factorisations are checked along
the junctions of normal words and along single-entry splits f = g;h.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import PreconditionError, SortError
from .fincat import FinCategory, FinFunctor, opposite, pair_id
from .grothendieck import StrictOpIndexedCat, grothendieck, to_opindexed
from .opfibration_check import Cleavage, FuncOver, check_split, choose_cleavage
from .displayed_check import factors_through_refine
from .profunctor import FinProfunctor, coarsen_embed, identity_prof, refine_embed
from .results import Verdict
from .tree_rewriting import Expr
from .union_find import DisjointSet, order_key
from .zigzag import (BWD, FWD, Entry, ZigzagCalculus, ZigzagWord, backward, empty_word,
                     entry_ends, enumerate_words, format_word, forward)

logger = logging.getLogger(__name__)

Chain = Tuple


def chain_profunctor(factors: Sequence[FinProfunctor], name: str = "") -> FinProfunctor:
    """Multi-way coend of composable profunctors.

    Elements are flat chains ``(p1, b1, p2, ..., pn)``; neighbouring entries are
    identified along every fibre morphism acting at a junction.
    """
    n = len(factors)
    A, C = factors[0].source, factors[-1].target

    def extend(prefix: Chain, k: int, here: str) -> Iterator[Tuple[str, Chain]]:
        P = factors[k]
        for b in P.target.objects:
            for p in P.at(here, b):
                chain = prefix + (p,)
                if k == n - 1:
                    yield b, chain
                else:
                    yield from extend(chain + (b,), k + 1, b)

    members: Dict[Tuple[str, str], List[Chain]] = {(a, c): [] for a in A.objects for c in C.objects}
    for a in A.objects:
        for c, chain in extend((), 0, a):
            members[(a, c)].append(chain)

    sets: Dict[Tuple[str, str], DisjointSet] = {}
    for (a, c), chains in members.items():
        ds = DisjointSet(chains)
        for chain in chains:
            for j in range(n - 1):
                P, Q = factors[j], factors[j + 1]
                before = a if j == 0 else chain[2 * j - 1]
                b, after = chain[2 * j + 1], (c if j + 1 == n - 1 else chain[2 * j + 3])
                for g in P.target.out_of(b):
                    b1 = P.target.cod[g]
                    moved = P.act(P.source.identity[before], chain[2 * j], g)
                    for q in Q.at(b1, after):
                        if Q.act(g, q, Q.target.identity[after]) == chain[2 * j + 2]:
                            ds.union(chain, chain[:2 * j] + (moved, b1, q) + chain[2 * j + 3:])
        sets[(a, c)] = ds
    classes = {key: {cls[0]: cls for cls in ds.classes()} for key, ds in sets.items()}
    elems = {key: tuple(sorted(cls, key=order_key)) for key, cls in classes.items()}

    def canon(key, chain):
        return sets[key].canonical(chain)

    def act(f, e, h):
        a1, c1 = A.dom[f], C.cod[h]
        if n == 1:
            return canon((a1, c1), (factors[0].act(f, e[0], h),))
        first = factors[0].act(f, e[0], factors[0].target.identity[e[1]])
        last = factors[-1].act(factors[-1].source.identity[e[-2]], e[-1], h)
        return canon((a1, c1), (first,) + e[1:-1] + (last,))

    logger.debug("chain of %d profunctors has %d classes", n, sum(len(v) for v in elems.values()))
    return FinProfunctor(A, C, elems, act, name=name or ";".join(P.name for P in factors),
                         classes=classes, canon=canon)


@dataclass(frozen=True)
class Cell:
    """1-cell of a collage: a normal zigzag and a coend class over it."""

    src: str
    tgt: str
    word: ZigzagWord
    chain: Chain

    def __str__(self):
        return f"({format_word(self.word)} | {' '.join(map(str, self.chain))})"


@dataclass(frozen=True)
class CollageCell:
    """2-cell (F, alpha) of a collage, with the 1-cell it ends in."""

    source: Cell
    alpha: Expr
    target: Cell


class CollageTotal:
    """The presented total 2-category of a strict opindexed category over Zg(X)."""

    def __init__(self, I: StrictOpIndexedCat, word_length: int = 4):
        self.I = I
        self.X = I.base
        self.word_length = word_length
        self.calc = ZigzagCalculus(self.X)
        self.objects: List[str] = []
        self.parts: Dict[str, Tuple[str, str]] = {}
        for x in self.X.objects:
            for a in I.fibre[x].objects:
                o = pair_id(x, a)
                self.objects.append(o)
                self.parts[o] = (x, a)
        self._profs: Dict[ZigzagWord, FinProfunctor] = {}
        self._entry_profs: Dict[Entry, FinProfunctor] = {}

    def over(self, o: str) -> str:
        return self.parts[o][0]

    def objects_over(self, x: str) -> List[str]:
        return [o for o in self.objects if self.parts[o][0] == x]

    def entry_profunctor(self, e: Entry) -> FinProfunctor:
        P = self._entry_profs.get(e)
        if P is None:
            d, f = e
            F = self.I.reindex[f]
            P = refine_embed(F) if d == FWD else coarsen_embed(F)
            self._entry_profs[e] = P
        return P

    def profunctor(self, w: ZigzagWord) -> FinProfunctor:
        P = self._profs.get(w)
        if P is None:
            if w.entries:
                factors = [self.entry_profunctor(e) for e in w.entries]
            else:
                factors = [identity_prof(self.I.fibre[w.src])]
            P = chain_profunctor(factors, name=f"D({format_word(w)})")
            self._profs[w] = P
        return P

    def cells(self, o1: str, o2: str, w: ZigzagWord) -> List[Cell]:
        if (w.src, w.tgt) != (self.over(o1), self.over(o2)):
            return []
        a, b = self.parts[o1][1], self.parts[o2][1]
        return [Cell(o1, o2, w, e) for e in self.profunctor(w).at(a, b)]

    def hom(self, o1: str, o2: str, max_len: Optional[int] = None) -> List[Cell]:
        L = self.word_length if max_len is None else max_len
        out = []
        for w in enumerate_words(self.X, self.over(o1), self.over(o2), L):
            out.extend(self.cells(o1, o2, w))
        return out

    def identity(self, o: str) -> Cell:
        x, a = self.parts[o]
        return Cell(o, o, empty_word(x), (self.I.fibre[x].identity[a],))

    def canonical(self, o1: str, o2: str, w: ZigzagWord, chain: Chain) -> Cell:
        a, b = self.parts[o1][1], self.parts[o2][1]
        return Cell(o1, o2, w, self.profunctor(w).canonical(a, b, chain))

    def _reduce(self, o1: str, o2: str, entries: Sequence[Entry], chain: Chain) -> Cell:
        """Normalise a concatenated chain: identity entries are absorbed, runs merged."""
        X, I = self.X, self.I
        x, a = self.parts[o1]
        c = self.parts[o2][1]
        stack: List[list] = []
        pending: List[Optional[str]] = [None]

        def absorb(h: str, after: str, over: str):
            if stack:
                top = stack[-1]
                P = self.entry_profunctor(top[0])
                top[1] = P.act(P.source.identity[top[2]], top[1], h)
                top[3] = after
            else:
                pending[0] = h if pending[0] is None else I.fibre[over].compose(pending[0], h)

        for i, e in enumerate(entries):
            p = chain[2 * i]
            before = a if i == 0 else chain[2 * i - 1]
            after = c if i == len(entries) - 1 else chain[2 * i + 1]
            d, m = e
            if X.is_identity(m):
                absorb(p, after, X.dom[m])
                continue
            if not stack and pending[0] is not None:
                P = self.entry_profunctor(e)
                p = P.act(pending[0], p, P.target.identity[after])
                pending[0], before = None, a
            if stack and stack[-1][0][0] == d:
                top_e, top_p, top_before, _ = stack.pop()
                if d == FWD:
                    merged = (FWD, X.compose(top_e[1], m))
                    p = I.fibre[X.cod[m]].compose(I.reindex[m].mmap[top_p], p)
                else:
                    merged = (BWD, X.compose(m, top_e[1]))
                    p = I.fibre[X.cod[top_e[1]]].compose(top_p, I.reindex[top_e[1]].mmap[p])
                if X.is_identity(merged[1]):
                    absorb(p, after, X.dom[merged[1]])
                else:
                    stack.append([merged, p, top_before, after])
                continue
            stack.append([e, p, before, after])

        if not stack:
            return Cell(o1, o2, empty_word(x), (pending[0],))
        word_entries = tuple(item[0] for item in stack)
        flat: List = []
        for item in stack[:-1]:
            flat.extend((item[1], item[3]))
        flat.append(stack[-1][1])
        w = ZigzagWord(x, self.over(o2), word_entries)
        return self.canonical(o1, o2, w, tuple(flat))

    def assemble(self, o1: str, o2: str, entries: Sequence[Entry], chain: Chain) -> Cell:
        """The 1-cell of a raw entry list with its flat chain, normalised."""
        return self._reduce(o1, o2, entries, chain)

    def _raw(self, F: Cell) -> Tuple[Tuple[Entry, ...], Chain]:
        if F.word.entries:
            return F.word.entries, F.chain
        return ((FWD, self.X.identity[F.word.src]),), F.chain

    def compose(self, F: Cell, G: Cell) -> Cell:
        if F.tgt != G.src:
            raise SortError(f"cannot compose {F} with {G}")
        e1, c1 = self._raw(F)
        e2, c2 = self._raw(G)
        return self._reduce(F.src, G.tgt, e1 + e2, c1 + (self.parts[F.tgt][1],) + c2)

    def compose_all(self, cells: Sequence[Cell]) -> Cell:
        result = cells[0]
        for C in cells[1:]:
            result = self.compose(result, C)
        return result

    def cut(self, H: Cell, k: int) -> Tuple[Cell, Cell]:
        """Split at junction k of the class representative."""
        n = len(H.word)
        if k == 0:
            return self.identity(H.src), H
        if k == n:
            return H, self.identity(H.tgt)
        w1 = ZigzagWord(H.word.src, entry_ends(self.X, H.word.entries[k - 1])[1], H.word.entries[:k])
        w2 = ZigzagWord(w1.tgt, H.word.tgt, H.word.entries[k:])
        mid = pair_id(w1.tgt, H.chain[2 * k - 1])
        return (self.canonical(H.src, mid, w1, H.chain[:2 * k - 1]),
                self.canonical(mid, H.tgt, w2, H.chain[2 * k:]))

    def factorisations(self, H: Cell, w1: ZigzagWord, w2: ZigzagWord) -> List[Tuple[Cell, Cell]]:
        out = []
        for o in self.objects_over(w1.tgt):
            for F in self.cells(H.src, o, w1):
                for G in self.cells(o, H.tgt, w2):
                    if self.compose(F, G) == H:
                        out.append((F, G))
        return out

    def split(self, H: Cell, w1: ZigzagWord, w2: ZigzagWord) -> Tuple[Cell, Cell]:
        """Some (F, G) above (w1, w2) with F;G = H."""
        if not w1.entries:
            return self.identity(H.src), H
        if not w2.entries:
            return H, self.identity(H.tgt)
        if H.word.entries == w1.entries + w2.entries:
            return self.cut(H, len(w1))
        found = self.factorisations(H, w1, w2)
        if not found:
            raise SortError(f"{H} does not factor through {format_word(w1)} | {format_word(w2)}")
        return found[0]

    def act(self, F: Cell, e: Expr) -> Cell:
        """The 1-cell D(alpha)(F) at the end of the lifted 2-cell."""
        X, calc = self.X, self.calc
        if e.op == "id":
            return F
        if e.op == "eta":
            f = e.label
            a = self.parts[F.src][1]
            Df = self.I.reindex[f]
            y = X.cod[f]
            raw = (self.I.fibre[y].identity[Df.omap[a]], Df.omap[a], Df.mmap[F.chain[0]])
            return self._reduce(F.src, F.tgt, ((FWD, f), (BWD, f)), raw)
        if e.op == "eps":
            f = e.label
            if X.is_identity(f):
                return F
            if F.word.entries != ((BWD, f), (FWD, f)):
                raise SortError(f"eps[{f}] cannot act on {F}")
            p1, _, p2 = F.chain
            h = self.I.fibre[X.cod[f]].compose(p1, p2)
            return Cell(F.src, F.tgt, empty_word(F.word.src), (h,))
        if e.op == ";":
            for part in e.args:
                F = self.act(F, part)
            return F
        results = []
        rest = F
        for i, part in enumerate(e.args[:-1]):
            head = calc.cells(part)[0]
            tail = calc.cells(calc.make("*", e.args[i + 1:]))[0]
            piece, rest = self.split(rest, head, tail)
            results.append(self.act(piece, part))
        results.append(self.act(rest, e.args[-1]))
        return self.compose_all(results)

    def lift(self, F: Cell, alpha: Expr) -> CollageCell:
        alpha = self.calc.normalize(alpha)
        src, _ = self.calc.cells(alpha)
        if src != F.word:
            raise SortError(f"2-cell starts at {format_word(src)}, 1-cell lies above {format_word(F.word)}")
        return CollageCell(F, alpha, self.act(F, alpha))

    def hcomp(self, s: CollageCell, t: CollageCell) -> CollageCell:
        return CollageCell(self.compose(s.source, t.source),
                           self.calc.normalize(Expr("*", (s.alpha, t.alpha))),
                           self.compose(s.target, t.target))


@dataclass(frozen=True, eq=False)
class LocalRetroData:
    """1-functor F |-> F.word into Zg(X) and the lifting map on every hom."""

    total: CollageTotal
    phi: Callable[[Cell, Expr], CollageCell]

    @property
    def base(self) -> FinCategory:
        return self.total.X


@dataclass(frozen=True, eq=False)
class DeflationData:
    retro: LocalRetroData
    certificate: Dict[Tuple[Cell, ZigzagWord], Tuple[Cell, Cell]]
    extra_cells: Tuple = ()
    word_length: int = 4
    cell_size: int = 12
    source: Optional[StrictOpIndexedCat] = None
    name: str = ""
    fragment: Dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> CollageTotal:
        return self.retro.total


def basic_twocells(calc: ZigzagCalculus, w: ZigzagWord, cell_size: int = 12) -> List[Expr]:
    """Identity on w and every unit or counit whiskered into w."""
    X = calc.X
    out = [calc.identity(w)]
    junctions = [w.src] + [entry_ends(X, e)[1] for e in w.entries]
    for i, obj in enumerate(junctions):
        left = ZigzagWord(w.src, obj, w.entries[:i])
        right = ZigzagWord(obj, w.tgt, w.entries[i:])
        for f in X.out_of(obj):
            if not X.is_identity(f):
                out.append(calc.normalize(Expr("*", (calc.identity(left), calc.unit(f), calc.identity(right)))))
    for i in range(len(w.entries) - 1):
        (d1, m1), (d2, m2) = w.entries[i], w.entries[i + 1]
        if d1 == BWD and d2 == FWD and m1 == m2:
            obj = junctions[i]
            left = ZigzagWord(w.src, obj, w.entries[:i])
            right = ZigzagWord(junctions[i + 2], w.tgt, w.entries[i + 2:])
            out.append(calc.normalize(Expr("*", (calc.identity(left), calc.counit(m1), calc.identity(right)))))
    return [e for e in out if e.size() <= cell_size]


def generators_at(calc: ZigzagCalculus, w: ZigzagWord) -> List[Expr]:
    """Identity, and the bare unit or counit when w is its source."""
    X = calc.X
    out = [calc.identity(w)]
    if not w.entries:
        out.extend(calc.unit(f) for f in X.out_of(w.src) if not X.is_identity(f))
    elif len(w.entries) == 2 and w.entries[0][0] == BWD and w.entries[1] == (FWD, w.entries[0][1]):
        out.append(calc.counit(w.entries[0][1]))
    return out


def check_local_retrofunctor(d: LocalRetroData, word_length: int = 4, cell_size: int = 12) -> Verdict:
    """Retrofunctor laws on every hom and the whiskering coherence, within the bounds."""
    T, calc, phi = d.total, d.total.calc, d.phi
    checked = 0
    homs = {(o1, o2): T.hom(o1, o2, word_length) for o1 in T.objects for o2 in T.objects}
    for (o1, o2), cells in homs.items():
        for F in cells:
            ident = phi(F, calc.identity(F.word))
            if ident.target != F:
                return Verdict.fail({'reason': 'phi(F, id) is not id_F', 'cell': str(F)})
            for alpha in basic_twocells(calc, F.word, cell_size):
                first = phi(F, alpha)
                tgt = calc.cells(alpha)[1]
                if first.source != F or first.target.word != tgt or (first.target.src, first.target.tgt) != (o1, o2):
                    return Verdict.fail({'reason': 'lift has the wrong boundary', 'cell': str(F),
                                         'alpha': calc.render(alpha)})
                if len(tgt) > word_length:
                    continue
                for beta in basic_twocells(calc, tgt, cell_size):
                    both = phi(F, Expr(";", (alpha, beta)))
                    if both.target != phi(first.target, beta).target:
                        return Verdict.fail({'reason': 'phi(F, a;b) differs from phi(F, a);phi(Fa, b)',
                                             'cell': str(F), 'alpha': calc.render(alpha),
                                             'beta': calc.render(beta)})
                    checked += 1
    for (o1, o2), cells in homs.items():
        for o3 in T.objects:
            for F in cells:
                for G in homs[(o2, o3)]:
                    if len(F.word) + len(G.word) > word_length:
                        continue
                    for alpha in generators_at(calc, F.word):
                        for beta in generators_at(calc, G.word):
                            lhs = T.hcomp(phi(F, alpha), phi(G, beta))
                            rhs = phi(T.compose(F, G), Expr("*", (alpha, beta)))
                            if lhs.target != rhs.target:
                                return Verdict.fail({'reason': 'whiskering coherence fails',
                                                     'cells': (str(F), str(G)),
                                                     'alphas': (calc.render(alpha), calc.render(beta))})
                            checked += 1
    logger.debug("local retrofunctor: %d instances checked", checked)
    return Verdict.ok(instances=checked)


def word_splits(X: FinCategory, w: ZigzagWord) -> Iterator[Tuple[ZigzagWord, ZigzagWord]]:
    """Factorisations of a normal word: at a junction, or inside one entry."""
    junctions = [w.src] + [entry_ends(X, e)[1] for e in w.entries]
    for k in range(1, len(w.entries)):
        yield (ZigzagWord(w.src, junctions[k], w.entries[:k]),
               ZigzagWord(junctions[k], w.tgt, w.entries[k:]))
    for i, (d, m) in enumerate(w.entries):
        for g, h in X.composable_pairs():
            if X.is_identity(g) or X.is_identity(h):
                continue
            if d == FWD and X.compose(g, h) == m:
                first, second = (FWD, g), (FWD, h)
            elif d == BWD and X.compose(g, h) == m:
                first, second = (BWD, h), (BWD, g)
            else:
                continue
            mid = entry_ends(X, first)[1]
            yield (ZigzagWord(w.src, mid, w.entries[:i] + (first,)),
                   ZigzagWord(mid, w.tgt, (second,) + w.entries[i + 1:]))


def build_certificate(T: CollageTotal, word_length: int) -> Dict[Tuple[Cell, ZigzagWord], Tuple[Cell, Cell]]:
    """Chosen factorisation for every 1-cell in bound and every split of its word."""
    cert = {}
    for o1 in T.objects:
        for o2 in T.objects:
            for H in T.hom(o1, o2, word_length):
                for w1, w2 in word_splits(T.X, H.word):
                    cert[(H, w1)] = T.split(H, w1, w2)
    return cert


def check_factorisation_lifting(d: DeflationData) -> Verdict:
    """Every factorisation of pH lifts, all lifts are connected, and the chosen one is a lift."""
    T = d.total
    checked = 0
    for o1 in T.objects:
        for o2 in T.objects:
            for H in T.hom(o1, o2, d.word_length):
                for w1, w2 in word_splits(T.X, H.word):
                    pairs = T.factorisations(H, w1, w2)
                    if not pairs:
                        return Verdict.fail({'cell': str(H), 'split': (str(w1), str(w2)),
                                             'reason': 'no lift of the factorisation'})
                    chosen = d.certificate.get((H, w1))
                    if chosen is None or chosen not in pairs:
                        return Verdict.fail({'cell': str(H), 'split': (str(w1), str(w2)),
                                             'reason': 'certificate does not lift the factorisation'})
                    ds = DisjointSet(pairs)
                    for F, G in pairs:
                        m = F.tgt
                        x = T.over(m)
                        for o in T.objects_over(x):
                            for k in T.cells(m, o, empty_word(x)):
                                for G2 in T.cells(o, H.tgt, w2):
                                    other = (T.compose(F, k), G2)
                                    if T.compose(k, G2) == G and other in ds:
                                        ds.union((F, G), other)
                    if len(ds.classes()) != 1:
                        return Verdict.fail({'cell': str(H), 'split': (str(w1), str(w2)),
                                             'reason': 'lifts of the factorisation are not connected',
                                             'components': len(ds.classes())})
                    checked += 1
    return Verdict.ok(factorisations=checked)


def lifting_of(d: DeflationData, o: str, f: str) -> Tuple[Cell, Cell]:
    """(F, F~) from the end of phi(id_o, eta_f), factorised through the certificate."""
    T = d.total
    X = T.X
    if X.dom[f] != T.over(o):
        raise SortError(f"{f} does not start at the base object of {o}")
    if X.is_identity(f):
        ident = T.identity(o)
        return ident, ident
    H = d.retro.phi(T.identity(o), T.calc.unit(f)).target
    chosen = d.certificate.get((H, forward(X, f)))
    if chosen is None:
        raise PreconditionError(f"no certified factorisation of {H} for ({o}, {f})")
    return chosen


def is_deflation(d: DeflationData) -> Verdict:
    """Counit condition for every lifting in bound, plus the factorisation-lifting certificate."""
    T = d.total
    X = T.X
    for o in T.objects:
        for f in X.out_of(T.over(o)):
            if X.is_identity(f):
                continue
            F, Fbar = lifting_of(d, o, f)
            counit = d.retro.phi(T.compose(Fbar, F), T.calc.counit(f))
            if counit.target != T.identity(F.tgt):
                return Verdict.fail({'pair': (o, f), 'reason': 'lifted counit does not end in an identity',
                                     'target': str(counit.target)})
    fl = check_factorisation_lifting(d)
    if not fl:
        return Verdict.fail(fl.witness)
    return Verdict.ok(**fl.details)


def unique_lifting_check(d: DeflationData, o: str, f: str) -> Verdict:
    """Every F' above f out of o is F;alpha for exactly one fibre 1-cell alpha."""
    T = d.total
    X = T.X
    y = X.cod[f]
    F, Fbar = lifting_of(d, o, f)
    target = _star_word(X, f)
    for o2 in T.objects_over(y):
        for F2 in T.cells(o, o2, target):
            if X.is_identity(f):
                alpha = F2
            else:
                alpha = d.retro.phi(T.compose(Fbar, F2), T.calc.counit(f)).target
            if alpha.word != empty_word(y) or T.compose(F, alpha) != F2:
                return Verdict.fail({'pair': (o, f), 'cell': str(F2), 'reason': 'F;alpha differs from F2'})
            mediators = [k for k in T.cells(F.tgt, o2, empty_word(y)) if T.compose(F, k) == F2]
            if mediators != [alpha]:
                return Verdict.fail({'pair': (o, f), 'cell': str(F2), 'reason': 'mediator is not unique',
                                     'mediators': [str(k) for k in mediators]})
    return Verdict.ok()


def _extensional(d: DeflationData, words: Callable[[str], Optional[ZigzagWord]], base: FinCategory,
                 name: str) -> Tuple[FuncOver, Dict[Cell, str]]:
    """Finite category on the 1-cells above single entries (and identities) of one direction."""
    T = d.total
    X = T.X
    morphisms, parts, named = {}, dict(T.parts), {}
    for m in X.morphisms:
        w = words(m)
        for o1 in T.objects:
            for o2 in T.objects:
                for C in T.cells(o1, o2, w):
                    label = pair_id(m, C.chain[0])
                    if label in morphisms:
                        label = f"{label}@{T.parts[o1][1]}"
                    morphisms[label] = (o1, o2)
                    parts[label] = (m, C.chain[0])
                    named[C] = label
    cell_of = {label: C for C, label in named.items()}
    compose = {}
    for m1, (_, b) in morphisms.items():
        for m2, (b2, _) in morphisms.items():
            if b == b2:
                result = T.compose(cell_of[m1], cell_of[m2])
                if result not in named:
                    raise SortError(f"restriction is not closed under composition at {m1};{m2}")
                compose[(m1, m2)] = named[result]
    identity = {o: named[T.identity(o)] for o in T.objects}
    total = FinCategory(T.objects, morphisms, compose, identity, name=name, parts=parts)
    p = FinFunctor(total, base, {o: T.over(o) for o in T.objects},
                   {lab: parts[lab][0] for lab in morphisms}, name=f"{name}_proj")
    return FuncOver(p), named


def _star_word(X: FinCategory, m: str) -> ZigzagWord:
    return forward(X, m) if not X.is_identity(m) else empty_word(X.dom[m])


def _circ_word(X: FinCategory, m: str) -> ZigzagWord:
    return backward(X, m) if not X.is_identity(m) else empty_word(X.dom[m])


def star_restriction(d: DeflationData) -> Tuple[FuncOver, Dict[Cell, str]]:
    """Forward restriction together with the label of every 1-cell in it."""
    X = d.total.X
    return _extensional(d, lambda m: _star_word(X, m), X, f"{d.name or 'Y'}*")


def restrict_star(d: DeflationData) -> FuncOver:
    """Restriction to the 1-cells above forward zigzags: a split opfibration over X."""
    return star_restriction(d)[0]


def restrict_circ(d: DeflationData) -> FuncOver:
    """Restriction to the 1-cells above backward zigzags: a split fibration over X^op."""
    X = d.total.X
    q, _ = _extensional(d, lambda m: _circ_word(X, m), opposite(X), f"{d.name or 'Y'}°")
    return q


def is_minimal(d: DeflationData) -> bool:
    return not d.extra_cells


def deflation_from_split_opfibration(q: FuncOver, cleavage: Optional[Cleavage] = None,
                                     word_length: int = 4, cell_size: int = 12) -> DeflationData:
    """The minimal deflation whose 1-cells are the zigzags of opcartesian lifts and their bars."""
    if cleavage is None:
        cleavage, witness = choose_cleavage(q, split_required=True)
        if cleavage is None:
            raise PreconditionError(f"no split cleavage: {witness}")
    split = check_split(q, cleavage)
    if not split:
        raise PreconditionError(f"cleavage is not split: {split.witness}")
    I = to_opindexed(q, cleavage)
    T = CollageTotal(I, word_length)
    retro = LocalRetroData(T, T.lift)
    certificate = build_certificate(T, word_length)
    logger.info("deflation over Zg(%s): %d objects, %d certified factorisations",
                T.X.name, len(T.objects), len(certificate))
    return DeflationData(retro, certificate, (), word_length, cell_size, source=I,
                         name=f"Defl({q.p.name})",
                         fragment={'word_length': word_length, 'cell_size': cell_size,
                                   'certified': len(certificate)})


def relabel_opindexed(I: StrictOpIndexedCat, parts: Dict[str, tuple], name: str = "") -> StrictOpIndexedCat:
    """Rename fibre objects and morphisms by the second component of ``parts``."""
    def rename(n):
        return parts[n][1] if n in parts else n

    fibres = {}
    for x, c in I.fibre.items():
        fibres[x] = FinCategory([rename(o) for o in c.objects],
                                {rename(m): (rename(c.dom[m]), rename(c.cod[m])) for m in c.morphisms},
                                {(rename(f), rename(g)): rename(h) for (f, g), h in c.compose_table.items()},
                                {rename(o): rename(i) for o, i in c.identity.items()}, name=c.name)
    reindex = {}
    for f, F in I.reindex.items():
        reindex[f] = FinFunctor(fibres[I.base.dom[f]], fibres[I.base.cod[f]],
                                {rename(a): rename(b) for a, b in F.omap.items()},
                                {rename(m): rename(n) for m, n in F.mmap.items()}, name=F.name)
    return StrictOpIndexedCat(I.base, fibres, reindex, name=name or I.name)


def extract_opindexed(d: DeflationData) -> StrictOpIndexedCat:
    """Strict opindexed category of a minimal deflation, read off its forward restriction."""
    if not is_minimal(d):
        raise PreconditionError("only minimal deflations correspond to opindexed categories")
    T = d.total
    X = T.X
    q, named = star_restriction(d)
    if factors_through_refine(q) is None:
        raise PreconditionError("forward restriction does not factor through refine")
    lifts = {}
    for o in T.objects:
        for f in X.out_of(T.over(o)):
            lifts[(o, f)] = named[lifting_of(d, o, f)[0]]
    cleavage = Cleavage(lifts)
    I = to_opindexed(q, cleavage)
    return relabel_opindexed(I, q.total.parts, name=f"I({d.name})")


def opindexed_agree(I: StrictOpIndexedCat, J: StrictOpIndexedCat) -> Verdict:
    for x in I.base.objects:
        if I.fibre[x] != J.fibre.get(x):
            return Verdict.fail({'fibre': x})
    for f in I.base.morphisms:
        F, G = I.reindex[f], J.reindex.get(f)
        if G is None or F.omap != G.omap or F.mmap != G.mmap:
            return Verdict.fail({'reindex': f})
    return Verdict.ok()


def analyze_deflation(q: FuncOver, word_length: int = 4, cell_size: int = 12) -> Dict:
    """Deflation battery on one split opfibration."""
    d = deflation_from_split_opfibration(q, word_length=word_length, cell_size=cell_size)
    T = d.total
    retro = check_local_retrofunctor(d.retro, word_length, cell_size)
    defl = is_deflation(d)
    unique = Verdict.ok()
    for o in T.objects:
        for f in T.X.out_of(T.over(o)):
            unique = unique_lifting_check(d, o, f)
            if not unique:
                break
        if not unique:
            break
    star = restrict_star(d)
    star_matches = star.total == grothendieck(d.source).total
    holds = bool(retro and defl and unique and star_matches)
    return {
        'analysis_type': 'deflation',
        'holds': holds,
        'local_retrofunctor': retro.holds,
        'deflation': defl.holds,
        'unique_lifting': unique.holds,
        'star_roundtrip': star_matches,
        'minimal': is_minimal(d),
        'fragment': d.fragment,
        'witness': retro.witness or defl.witness or unique.witness,
        'summary': "deflation checks pass" if holds else "deflation checks fail",
    }
