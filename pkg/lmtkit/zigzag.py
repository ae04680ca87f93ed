"""Zigzag 2-categories Zg(X): normal-form zigzag words, the 2-cell calculus over
unit and counit generators, and the monoidal structure over a cartesian base.

Words are written ``u v~ w`` (``~`` marks a formal reverse) and ``@x`` for the
empty word at x. 2-cells::

    eta[f]  eps[f]  id[word]  a ; b  a * b
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from .errors import ParseError, PreconditionError, SortError
from .fincat import CartesianStructure, FinCategory, find_cartesian_structure
from .results import ProofResult
from .tree_rewriting import Expr, ExprSystem, GroundRule

logger = logging.getLogger(__name__)

FWD, BWD = "fwd", "bwd"
Entry = Tuple[str, str]


@dataclass(frozen=True)
class ZigzagWord:
    """A zigzag src -> tgt; ``entries`` are (direction, base morphism) pairs."""

    src: str
    tgt: str
    entries: Tuple[Entry, ...] = ()

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return format_word(self)


def format_word(w: ZigzagWord) -> str:
    if not w.entries:
        return f"@{w.src}"
    return " ".join(m if d == FWD else f"{m}~" for d, m in w.entries)


def entry_ends(X: FinCategory, e: Entry) -> Tuple[str, str]:
    d, m = e
    if m not in X.dom:
        raise SortError(f"unknown morphism {m!r} in {X.name}")
    return (X.dom[m], X.cod[m]) if d == FWD else (X.cod[m], X.dom[m])


def make_word(X: FinCategory, entries: Sequence[Entry], src: Optional[str] = None) -> ZigzagWord:
    """Typecheck a raw list of entries; ``src`` is needed when the list is empty."""
    entries = tuple(entries)
    if not entries:
        if src is None:
            raise SortError("an empty zigzag needs its object")
        return ZigzagWord(src, src, ())
    start = entry_ends(X, entries[0])[0]
    if src is not None and src != start:
        raise SortError(f"zigzag starts at {start}, expected {src}")
    here = start
    for e in entries:
        a, b = entry_ends(X, e)
        if a != here:
            raise SortError(f"zigzag entry {format_word(ZigzagWord(a, b, (e,)))} starts at {a}, not {here}")
        here = b
    return ZigzagWord(start, here, entries)


def _merge(X: FinCategory, top: Entry, e: Entry) -> Entry:
    if top[0] == FWD:
        return FWD, X.compose(top[1], e[1])
    return BWD, X.compose(e[1], top[1])


def zg_normalize(X: FinCategory, w: ZigzagWord) -> ZigzagWord:
    """Drop identities and merge neighbours of equal direction.

    ``f;g = fg`` forwards and ``f~;g~ = (gf)~`` backwards; a merge that yields an
    identity is dropped, which can make the entries around it adjacent.
    """
    stack: List[Entry] = []
    for e in make_word(X, w.entries, w.src).entries:
        if X.is_identity(e[1]):
            continue
        if stack and stack[-1][0] == e[0]:
            merged = _merge(X, stack.pop(), e)
            if not X.is_identity(merged[1]):
                stack.append(merged)
            continue
        stack.append(e)
    return ZigzagWord(w.src, w.tgt, tuple(stack))


def zg_compose(X: FinCategory, w1: ZigzagWord, w2: ZigzagWord) -> ZigzagWord:
    if w1.tgt != w2.src:
        raise SortError(f"cannot compose {format_word(w1)} with {format_word(w2)}")
    return zg_normalize(X, ZigzagWord(w1.src, w2.tgt, w1.entries + w2.entries))


def zg_reverse(w: ZigzagWord) -> ZigzagWord:
    """The formal reverse: entries backwards with directions flipped."""
    flipped = tuple((BWD if d == FWD else FWD, m) for d, m in reversed(w.entries))
    return ZigzagWord(w.tgt, w.src, flipped)


def forward(X: FinCategory, f: str) -> ZigzagWord:
    return zg_normalize(X, ZigzagWord(X.dom[f], X.cod[f], ((FWD, f),)))


def backward(X: FinCategory, f: str) -> ZigzagWord:
    return zg_normalize(X, ZigzagWord(X.cod[f], X.dom[f], ((BWD, f),)))


def empty_word(x: str) -> ZigzagWord:
    return ZigzagWord(x, x, ())


def parse_word(X: FinCategory, text: str) -> ZigzagWord:
    """``u v~`` or ``@x``; identities may be written and are kept until normalisation."""
    tokens = text.split()
    if len(tokens) == 1 and tokens[0].startswith("@"):
        x = tokens[0][1:]
        if x not in X.objects:
            raise SortError(f"unknown object {x!r} in {X.name}")
        return empty_word(x)
    entries = [(BWD, t[:-1]) if t.endswith("~") else (FWD, t) for t in tokens]
    return make_word(X, entries)


def enumerate_words(X: FinCategory, x: str, y: Optional[str] = None,
                    max_len: int = 4) -> List[ZigzagWord]:
    """Normal-form words out of x (into y when given), shortest first."""
    arrows = [m for m in X.morphisms if not X.is_identity(m)]
    out: List[ZigzagWord] = []
    level = [empty_word(x)]
    for _ in range(max_len + 1):
        out.extend(w for w in level if y is None or w.tgt == y)
        nxt = []
        for w in level:
            last = w.entries[-1][0] if w.entries else None
            for d in (FWD, BWD):
                if d == last:
                    continue
                for m in arrows:
                    a, b = entry_ends(X, (d, m))
                    if a == w.tgt:
                        nxt.append(ZigzagWord(w.src, b, w.entries + ((d, m),)))
        level = nxt
    return out


def random_word(X: FinCategory, rng: np.random.Generator, length: int,
                start: Optional[str] = None) -> ZigzagWord:
    """Raw word from a random walk; identities and same-direction runs are allowed."""
    here = start if start is not None else X.objects[int(rng.integers(len(X.objects)))]
    src = here
    entries = []
    for _ in range(length):
        options = [(d, m) for m in X.morphisms for d in (FWD, BWD) if entry_ends(X, (d, m))[0] == here]
        e = options[int(rng.integers(len(options)))]
        entries.append(e)
        here = entry_ends(X, e)[1]
    return ZigzagWord(src, here, tuple(entries))


class ZigzagCalculus(ExprSystem):
    """2-cells of Zg(X): vertical ``;`` and horizontal ``*`` over eta/eps leaves."""

    ops = (";", "*")
    interchange_pairs = ((";", "*"),)

    def __init__(self, X: FinCategory):
        self.X = X

    def unit(self, f: str) -> Expr:
        return Expr("eta", label=f)

    def counit(self, f: str) -> Expr:
        return Expr("eps", label=f)

    def identity(self, w: ZigzagWord) -> Expr:
        return Expr("id", label=w)

    def cells(self, e: Expr) -> Tuple[ZigzagWord, ZigzagWord]:
        X = self.X
        if e.op == "id":
            return e.label, e.label
        if e.op == "eta":
            f = e.label
            return empty_word(X.dom[f]), zg_compose(X, forward(X, f), backward(X, f))
        if e.op == "eps":
            f = e.label
            y = X.cod[f]
            return zg_normalize(X, ZigzagWord(y, y, ((BWD, f), (FWD, f)))), empty_word(y)
        parts = [self.cells(a) for a in e.args]
        if e.op == ";":
            return parts[0][0], parts[-1][1]
        src, tgt = parts[0]
        for s, t in parts[1:]:
            src, tgt = zg_compose(X, src, s), zg_compose(X, tgt, t)
        return src, tgt

    def boundary(self, e: Expr, op: str):
        src, tgt = self.cells(e)
        if op == ";":
            return src, tgt
        return src.src, src.tgt

    def is_identity(self, e: Expr, op: str) -> bool:
        if e.op != "id":
            return False
        return op == ";" or not e.label.entries

    def merge(self, op: str, a: Expr, b: Expr) -> Optional[Expr]:
        if op != "*" or a.op != "id" or b.op != "id" or a.label.tgt != b.label.src:
            return None
        return self.identity(zg_compose(self.X, a.label, b.label))

    def identity_at(self, e: Expr, op: str, side: str) -> Expr:
        src, tgt = self.cells(e)
        if op == ";":
            return self.identity(src if side == "src" else tgt)
        return self.identity(empty_word(src.src if side == "src" else src.tgt))

    def render(self, e: Expr) -> str:
        if e.op in ("eta", "eps"):
            return f"{e.op}[{e.label}]"
        if e.op == "id":
            return f"id[{format_word(e.label)}]"
        return super().render(e)


def twocell_boundary(X: FinCategory, e: Expr) -> Tuple[ZigzagWord, ZigzagWord]:
    calc = ZigzagCalculus(X)
    e = calc.normalize(e)
    calc.check(e)
    return calc.cells(e)


def _whisker(*parts: Expr) -> Expr:
    return Expr("*", tuple(parts))


def zigzag_rules(X: FinCategory, calc: Optional[ZigzagCalculus] = None) -> List[GroundRule]:
    """Triangle laws, identity laws and the composite coherence laws of Zg(X)."""
    calc = calc or ZigzagCalculus(X)
    rules = []
    arrows = [m for m in X.morphisms if not X.is_identity(m)]
    for f in arrows:
        id_f, id_fbar = calc.identity(forward(X, f)), calc.identity(backward(X, f))
        eta, eps = calc.unit(f), calc.counit(f)
        rules.append(GroundRule(f"triangle.left[{f}]",
                                Expr(";", (_whisker(eta, id_f), _whisker(id_f, eps))), id_f, "zigzag"))
        rules.append(GroundRule(f"triangle.right[{f}]",
                                Expr(";", (_whisker(id_fbar, eta), _whisker(eps, id_fbar))), id_fbar, "zigzag"))
    for x in X.objects:
        ident = X.identity[x]
        rules.append(GroundRule(f"unit.identity[{x}]", calc.unit(ident), calc.identity(empty_word(x)), "coherence"))
        rules.append(GroundRule(f"counit.identity[{x}]", calc.counit(ident), calc.identity(empty_word(x)), "coherence"))
    for f, h in X.composable_pairs():
        if X.is_identity(f) or X.is_identity(h):
            continue
        fh = X.compose(f, h)
        unit_rhs = Expr(";", (calc.unit(f), _whisker(calc.identity(forward(X, f)), calc.unit(h),
                                                    calc.identity(backward(X, f)))))
        counit_rhs = Expr(";", (_whisker(calc.identity(backward(X, h)), calc.counit(f),
                                         calc.identity(forward(X, h))), calc.counit(h)))
        rules.append(GroundRule(f"unit.coherence[{f},{h}]", calc.unit(fh), unit_rhs, "coherence"))
        rules.append(GroundRule(f"counit.coherence[{f},{h}]", calc.counit(fh), counit_rhs, "coherence"))
    return rules


def prove_twocells_equal(X: FinCategory, e1: Expr, e2: Expr, budget: int = 5000,
                         max_size: Optional[int] = None) -> ProofResult:
    """Bounded search; raises SortError when the boundaries differ."""
    calc = ZigzagCalculus(X)
    result = calc.prove(e1, e2, zigzag_rules(X, calc), budget, max_size)
    logger.debug("2-cell search in Zg(%s): %s after %d states", X.name, result.status, result.explored)
    return ProofResult(result.status, calc.render_trace(result.trace), result.explored, result.reason)


def replay_twocells(X: FinCategory, e1: Expr, e2: Expr, trace: Sequence[Dict]) -> bool:
    """Re-check a rendered trace from ``prove_twocells_equal`` step by step."""
    calc = ZigzagCalculus(X)
    rules = [GroundRule(r.name, calc.normalize(r.lhs), calc.normalize(r.rhs), r.origin)
             for r in zigzag_rules(X, calc)]
    moves = calc.moves(rules)
    current = calc.normalize(e1)
    for step in trace:
        if calc.render(current) != step['before']:
            return False
        nxt = [new for rule, direction, new in moves(current)
               if rule == step['rule'] and direction == step['direction'] and calc.render(new) == step['after']]
        if not nxt:
            return False
        current = nxt[0]
    return current == calc.normalize(e2)


TWOCELL_GRAMMAR = r"""
    ?vcomp: hcomp (";" hcomp)*
    ?hcomp: leaf ("*" leaf)*
    ?leaf: "eta" "[" NAME "]"    -> eta
         | "eps" "[" NAME "]"    -> eps
         | "id" "[" WORD "]"     -> ident
         | "(" vcomp ")"

    NAME: /[^\s\[\]();*]+/
    WORD: /[^\[\]]+/

    %import common.WS
    %ignore WS
"""

_parser = Lark(TWOCELL_GRAMMAR, start="vcomp", parser="earley")


class _ToExpr(Transformer):
    def __init__(self, calc: ZigzagCalculus):
        super().__init__()
        self.calc = calc

    def _morphism(self, token) -> str:
        name = str(token)
        if name not in self.calc.X.dom:
            raise SortError(f"unknown morphism {name!r}")
        return name

    def eta(self, args):
        return self.calc.unit(self._morphism(args[0]))

    def eps(self, args):
        return self.calc.counit(self._morphism(args[0]))

    def ident(self, args):
        return self.calc.identity(zg_normalize(self.calc.X, parse_word(self.calc.X, str(args[0]))))

    def vcomp(self, args):
        return Expr(";", tuple(args))

    def hcomp(self, args):
        return Expr("*", tuple(args))


def parse_twocell(X: FinCategory, text: str, path=None, line=None) -> Expr:
    calc = ZigzagCalculus(X)
    try:
        return _ToExpr(calc).transform(_parser.parse(text))
    except VisitError as e:
        if isinstance(e.orig_exc, (ParseError, SortError)):
            raise e.orig_exc from None
        raise ParseError(str(e.orig_exc), path, line) from None
    except LarkError as e:
        raise ParseError(f"cannot parse 2-cell {text!r}: {e}", path, line) from None


@dataclass(frozen=True, eq=False)
class ZgMonoidal:
    """Zg(X) with the product of a cartesian X, extended to zigzags and generating 2-cells."""

    X: FinCategory
    cs: CartesianStructure
    max_len: int = 6
    _factorisations: Dict[str, List[Tuple[str, str]]] = field(default_factory=dict, repr=False)

    def tensor_obj(self, a: str, b: str) -> str:
        return self.cs.product_object(a, b)

    def _times(self, f: str, g: str) -> str:
        return self.cs.tensor(f, g)

    def tensor_entries(self, e1: Entry, e2: Entry) -> ZigzagWord:
        """Product of two generating zigzags."""
        X = self.X
        (d1, f), (d2, g) = e1, e2
        x, y = X.dom[f], X.cod[f]
        z, w = X.dom[g], X.cod[g]
        if d1 == d2:
            entries = ((d1, self._times(f, g)),)
            src = self.tensor_obj(x, z) if d1 == FWD else self.tensor_obj(y, w)
        elif d1 == FWD:
            entries = ((FWD, self._times(f, X.identity[w])), (BWD, self._times(X.identity[y], g)))
            src = self.tensor_obj(x, w)
        else:
            entries = ((BWD, self._times(f, X.identity[z])), (FWD, self._times(X.identity[x], g)))
            src = self.tensor_obj(y, z)
        return self.normal_form(make_word(X, entries, src))

    def generator_table(self) -> Dict[Tuple[Entry, Entry], ZigzagWord]:
        arrows = [m for m in self.X.morphisms if not self.X.is_identity(m)]
        entries = [(d, m) for m in arrows for d in (FWD, BWD)]
        return {(e1, e2): self.tensor_entries(e1, e2) for e1 in entries for e2 in entries}

    def tensor_words(self, w1: ZigzagWord, w2: ZigzagWord) -> ZigzagWord:
        """(w1 x id) ; (id x w2), entrywise against identities, then normalised."""
        X = self.X
        entries = [(d, self._times(m, X.identity[w2.src])) for d, m in w1.entries]
        entries += [(d, self._times(X.identity[w1.tgt], m)) for d, m in w2.entries]
        src = self.tensor_obj(w1.src, w2.src)
        return self.normal_form(make_word(X, entries, src))

    def _splits(self, m: str) -> List[Tuple[str, str]]:
        """All (f, g) with f x g = m."""
        cached = self._factorisations.get(m)
        if cached is not None:
            return cached
        X = self.X
        found = []
        for a in X.objects:
            for b in X.objects:
                if self.tensor_obj(a, b) != X.dom[m]:
                    continue
                for f in X.out_of(a):
                    for g in X.out_of(b):
                        if self._times(f, g) == m:
                            found.append((f, g))
        found.sort()
        self._factorisations[m] = found
        return found

    def factor_pairs(self, m: str) -> List[Tuple[str, str]]:
        return list(self._splits(m))

    def _swaps(self, w: ZigzagWord) -> Iterator[ZigzagWord]:
        """One use of the mixed-interchange equation, in either direction."""
        X = self.X
        for i in range(len(w.entries) - 1):
            (d1, m1), (d2, m2) = w.entries[i], w.entries[i + 1]
            if d1 == d2:
                continue
            for a, b in self._splits(m1):
                for c, e in self._splits(m2):
                    if d1 == BWD and X.is_identity(a) and X.is_identity(e):
                        # (id_x x g)~ ; (f x id_z)  =  (f x id_w) ; (id_y x g)~
                        f, g = c, b
                        new = ((FWD, self._times(f, X.identity[X.cod[g]])),
                               (BWD, self._times(X.identity[X.cod[f]], g)))
                    elif d1 == BWD and X.is_identity(b) and X.is_identity(c):
                        g, f = a, e
                        new = ((FWD, self._times(X.identity[X.cod[g]], f)),
                               (BWD, self._times(g, X.identity[X.cod[f]])))
                    elif d1 == FWD and X.is_identity(b) and X.is_identity(c):
                        f, g = a, e
                        new = ((BWD, self._times(X.identity[X.dom[f]], g)),
                               (FWD, self._times(f, X.identity[X.dom[g]])))
                    elif d1 == FWD and X.is_identity(a) and X.is_identity(e):
                        f, g = b, c
                        new = ((BWD, self._times(g, X.identity[X.dom[f]])),
                               (FWD, self._times(X.identity[X.dom[g]], f)))
                    else:
                        continue
                    try:
                        raw = make_word(X, w.entries[:i] + new + w.entries[i + 2:], w.src)
                    except SortError:
                        continue
                    yield zg_normalize(X, raw)

    def normal_form(self, w: ZigzagWord) -> ZigzagWord:
        """Least word of the bounded class under normalisation and the mixed equation.

        Shorter words win, then forward-first ones.
        """
        start = zg_normalize(self.X, w)
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in self._swaps(cur):
                if nxt not in seen and len(nxt) <= self.max_len:
                    seen.add(nxt)
                    queue.append(nxt)
        return min(seen, key=_forward_first)

    def equal(self, w1: ZigzagWord, w2: ZigzagWord) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)

    def twocell_product(self, calc: ZigzagCalculus, a: Expr, b: Expr) -> Expr:
        """Product of generating 2-cells (and of identities)."""
        X = self.X
        if a.op == "id" and b.op == "id":
            return calc.identity(self.tensor_words(a.label, b.label))
        if a.op not in ("eta", "eps") or b.op not in ("eta", "eps"):
            raise SortError("2-cell products are defined on generators and identities only",
                            node=f"{calc.render(a)} x {calc.render(b)}")
        f, g = a.label, b.label
        x, y = X.dom[f], X.cod[f]
        z, w = X.dom[g], X.cod[g]
        if a.op == b.op:
            return Expr(a.op, label=self._times(f, g))
        if a.op == "eta":
            return Expr(";", (calc.counit(self._times(X.identity[x], g)),
                              calc.unit(self._times(f, X.identity[w]))))
        return Expr(";", (calc.counit(self._times(f, X.identity[z])),
                          calc.unit(self._times(X.identity[y], g))))


def _forward_first(w: ZigzagWord):
    return (len(w), tuple(0 if d == FWD else 1 for d, _ in w.entries), repr(w.entries))


def zg_monoidal(X: FinCategory, cs: Optional[CartesianStructure] = None, max_len: int = 6) -> ZgMonoidal:
    if cs is None:
        cs, witness = find_cartesian_structure(X)
        if cs is None:
            raise PreconditionError(f"{X.name} has no cartesian structure: {witness}")
    return ZgMonoidal(X, cs, max_len)


def twocell_product(mon: ZgMonoidal, a: Expr, b: Expr) -> Expr:
    return mon.twocell_product(ZigzagCalculus(mon.X), a, b)
