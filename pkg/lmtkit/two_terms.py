"""2-terms of layered theories and the bounded 2-level prover.

Syntax::

    name            generating 2-cell
    id{t}           identity 2-cell on the term t
    eta{x} eps{x}   unit and counit of the adjunction x -| x̄ (deflational theories)
    a ; b           vertical composite
    a * b           horizontal composite
    a ⊗ b           tensor (``&`` also accepted)

1-cell boundaries are compared after sliding every internal generator as far
up as it goes (``layered_prover.push_up``) and taking the interchange normal
form.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from .errors import ParseError, SortError
from .layered_prover import LayeredTheory, encode, is_internal_node, push_up
from .layered_syntax import (LTerm, LayeredMorphism, LayeredSignature, SortingProcedure,
                             apply_layered_morphism, comp, dual_term, format_lterm, identity_term,
                             is_opfibrational_constructor, parse_lterm, typecheck_term)
from .results import ProofResult
from .string_diagrams import Diagram, format_diagram, normal_form
from .tree_rewriting import Expr, ExprSystem, GroundRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TCell:
    name: str


@dataclass(frozen=True)
class TId:
    term: LTerm


@dataclass(frozen=True)
class TUnit:
    """``eta{x}`` : id_T => x ; x̄"""

    term: LTerm


@dataclass(frozen=True)
class TCounit:
    """``eps{x}`` : x̄ ; x => id_S"""

    term: LTerm


@dataclass(frozen=True)
class TComp:
    op: str
    left: "TwoTerm"
    right: "TwoTerm"


TwoTerm = Union[TCell, TId, TUnit, TCounit, TComp]

OPS = (";", "*", "⊗")


def format_two_term(a: TwoTerm) -> str:
    if isinstance(a, TCell):
        return a.name
    if isinstance(a, TId):
        return f"id{{{format_lterm(a.term)}}}"
    if isinstance(a, TUnit):
        return f"eta{{{format_lterm(a.term)}}}"
    if isinstance(a, TCounit):
        return f"eps{{{format_lterm(a.term)}}}"
    return f"({format_two_term(a.left)} {a.op} {format_two_term(a.right)})"


def structural_sort(sig: LayeredSignature, x: LTerm, counit: bool) -> Tuple[LTerm, LTerm]:
    """``eta{x}`` : (id_T, x ; x̄) and ``eps{x}`` : (x̄ ; x, id_S) for ``x : (T | S)``."""
    if not is_opfibrational_constructor(x):
        raise SortError("structural 2-cells exist only for opfibrational constructors", node=format_lterm(x))
    T, S = typecheck_term(sig, x).sort
    xbar = dual_term(x)
    if counit:
        return comp(xbar, x), identity_term(S)
    return identity_term(T), comp(x, xbar)


def leaf_sort(th: LayeredTheory, a: TwoTerm) -> Tuple[LTerm, LTerm]:
    if isinstance(a, TCell):
        if a.name not in th.cells:
            raise SortError(f"unknown 2-cell {a.name!r}")
        return th.cells[a.name]
    if isinstance(a, TId):
        return a.term, a.term
    if th.procedure is not SortingProcedure.DEFLATIONAL or not th.structural:
        raise SortError("structural 2-cells need a deflational theory with structural equations",
                        node=format_two_term(a))
    return structural_sort(th.signature, a.term, isinstance(a, TCounit))


class TwoCellCalculus(ExprSystem):
    """Vertical, horizontal and tensor composition of 2-cells over one layered theory."""

    ops = OPS
    interchange_pairs = ((";", "*"), (";", "⊗"), ("*", "⊗"))

    def __init__(self, th: LayeredTheory):
        self.th = th
        self._canon = lru_cache(maxsize=8192)(self._canonical)

    def _canonical(self, d: Diagram) -> Diagram:
        return normal_form(push_up(self.th.signature, d))

    def leaf(self, a: TwoTerm) -> Expr:
        src, tgt = leaf_sort(self.th, a)
        s, t = self._canon(encode(self.th, src)), self._canon(encode(self.th, tgt))
        if isinstance(a, TId):
            return self.identity(s)
        name = a.name if isinstance(a, TCell) else format_two_term(a)
        return Expr("cell", label=(name, s, t))

    def identity(self, d: Diagram) -> Expr:
        return Expr("id", label=("id", d, d))

    def to_expr(self, a: TwoTerm) -> Expr:
        if isinstance(a, TComp):
            return Expr(a.op, (self.to_expr(a.left), self.to_expr(a.right)))
        return self.leaf(a)

    def cells(self, e: Expr) -> Tuple[Diagram, Diagram]:
        """Source and target 1-cells, canonical."""
        if not e.args:
            return e.label[1], e.label[2]
        parts = [self.cells(a) for a in e.args]
        if e.op == ";":
            return parts[0][0], parts[-1][1]
        src, tgt = parts[0]
        for s, t in parts[1:]:
            if e.op == "*":
                if src.cod != s.dom:
                    raise SortError("horizontal composite: middle types differ", node=self.render(e))
                src, tgt = src.then(s), tgt.then(t)
            else:
                src, tgt = src.tensor(s), tgt.tensor(t)
        return self._canon(src), self._canon(tgt)

    def boundary(self, e: Expr, op: str):
        src, tgt = self.cells(e)
        if op == ";":
            return src, tgt
        if op == "*":
            return src.dom, src.cod
        return None, None

    def is_identity(self, e: Expr, op: str) -> bool:
        if e.op != "id":
            return False
        d = e.label[1]
        if op == ";":
            return True
        if op == "*":
            return not d.slices
        return not d.slices and not d.dom

    def merge(self, op: str, a: Expr, b: Expr) -> Optional[Expr]:
        if a.op != "id" or b.op != "id" or op == ";":
            return None
        x, y = a.label[1], b.label[1]
        if op == "*":
            if x.cod != y.dom:
                return None
            return self.identity(self._canon(x.then(y)))
        return self.identity(self._canon(x.tensor(y)))

    def identity_at(self, e: Expr, op: str, side: str) -> Expr:
        src, tgt = self.cells(e)
        if op == ";":
            return self.identity(src if side == "src" else tgt)
        if op == "*":
            return self.identity(Diagram.identity(src.dom if side == "src" else src.cod))
        return self.identity(Diagram.identity(()))

    def render(self, e: Expr) -> str:
        if e.op == "id":
            return f"id{{{format_diagram(e.label[1])}}}"
        if e.op == "cell":
            return e.label[0]
        return super().render(e)


def typecheck_2term(th: LayeredTheory, a: TwoTerm) -> Tuple[Diagram, Diagram]:
    """Canonical (source, target) 1-cells; SortError on mismatched composites."""
    calc = TwoCellCalculus(th)
    e = calc.to_expr(a)
    calc.check(e)
    return calc.cells(e)


def _leaves(e: Expr) -> Iterator[Expr]:
    if not e.args:
        yield e
    for a in e.args:
        yield from _leaves(a)


def _structural_leaves(a: TwoTerm) -> Iterator[LTerm]:
    if isinstance(a, (TUnit, TCounit)):
        yield a.term
    elif isinstance(a, TComp):
        yield from _structural_leaves(a.left)
        yield from _structural_leaves(a.right)


def _internal_only(d: Diagram) -> bool:
    return all(is_internal_node(n) for n in d.nodes())


def deflational_rules(th: LayeredTheory, calc: TwoCellCalculus, goals: Sequence[TwoTerm]) -> List[GroundRule]:
    """Zigzag laws and sliding compatibility for the structural cells in the goals."""
    xs = sorted({x for g in goals for x in _structural_leaves(g)}, key=format_lterm)
    exprs = [calc.to_expr(g) for g in goals]
    ids = {leaf.label[1] for e in exprs for leaf in _leaves(e) if leaf.op == "id" and _internal_only(leaf.label[1])}
    rules = []
    for x in xs:
        xbar = dual_term(x)
        eta, eps = calc.leaf(TUnit(x)), calc.leaf(TCounit(x))
        id_x, id_xbar = calc.leaf(TId(x)), calc.leaf(TId(xbar))
        tag = format_lterm(x)
        candidates = [
            (f"zigzag.left[{tag}]", Expr(";", (Expr("*", (eta, id_x)), Expr("*", (id_x, eps)))), id_x),
            (f"zigzag.right[{tag}]", Expr(";", (Expr("*", (id_xbar, eta)), Expr("*", (eps, id_xbar)))), id_xbar),
        ]
        for y in sorted(ids, key=format_diagram):
            idy = calc.identity(y)
            candidates.append((f"unit.slide[{tag};{format_diagram(y)}]",
                               Expr("*", (idy, eta)), Expr("*", (eta, idy))))
            candidates.append((f"counit.slide[{tag};{format_diagram(y)}]",
                               Expr("*", (idy, eps)), Expr("*", (eps, idy))))
        for name, lhs, rhs in candidates:
            try:
                l, r = calc.normalize(lhs), calc.normalize(rhs)
                calc.check(l)
                calc.check(r)
                if calc.boundary(l, ";") != calc.boundary(r, ";"):
                    continue
            except SortError:
                continue
            rules.append(GroundRule(name, l, r, "structural deflational equations"))
    return rules


def prove_eq2(th: LayeredTheory, a: TwoTerm, b: TwoTerm, budget: int = 5000,
              max_size: Optional[int] = None) -> ProofResult:
    """Bounded search over E2, interchange and the deflational zigzag and sliding laws."""
    calc = TwoCellCalculus(th)
    rules = [GroundRule(name, calc.to_expr(l), calc.to_expr(r), "E2") for name, l, r in th.e2]
    if th.procedure is SortingProcedure.DEFLATIONAL and th.structural:
        rules += deflational_rules(th, calc, [a, b] + [x for _, l, r in th.e2 for x in (l, r)])
    logger.debug("level-2 search with %d ground rules", len(rules))
    result = calc.prove(calc.to_expr(a), calc.to_expr(b), rules, budget, max_size)
    return ProofResult(result.status, calc.render_trace(result.trace), result.explored, result.reason)


def replay_eq2(th: LayeredTheory, a: TwoTerm, b: TwoTerm, trace: Sequence[Dict]) -> bool:
    """Re-check a trace produced by ``prove_eq2``; steps are matched by rendering."""
    calc = TwoCellCalculus(th)
    rules = [GroundRule(name, calc.to_expr(l), calc.to_expr(r), "E2") for name, l, r in th.e2]
    if th.procedure is SortingProcedure.DEFLATIONAL and th.structural:
        rules += deflational_rules(th, calc, [a, b] + [x for _, l, r in th.e2 for x in (l, r)])
    normalized = [GroundRule(r.name, calc.normalize(r.lhs), calc.normalize(r.rhs), r.origin) for r in rules]
    moves = calc.moves(normalized)
    current = calc.normalize(calc.to_expr(a))
    for step in trace:
        if calc.render(current) != step['before']:
            return False
        nxt = [new for rule, direction, new in moves(current)
               if rule == step['rule'] and direction == step['direction'] and calc.render(new) == step['after']]
        if not nxt:
            return False
        current = nxt[0]
    return current == calc.normalize(calc.to_expr(b))


def apply_morphism_2term(F: LayeredMorphism, source: LayeredSignature, a: TwoTerm) -> TwoTerm:
    if isinstance(a, TCell):
        return TCell(F.cells.get(a.name, a.name))
    if isinstance(a, TComp):
        return TComp(a.op, apply_morphism_2term(F, source, a.left), apply_morphism_2term(F, source, a.right))
    return type(a)(apply_layered_morphism(F, source, a.term))


TWO_TERM_GRAMMAR = r"""
    ?vcomp: hcomp (";" hcomp)*
    ?hcomp: tensor ("*" tensor)*
    ?tensor: leaf (("⊗" | "&") leaf)*
    ?leaf: "id" BRACED      -> ident
         | "eta" BRACED     -> eta
         | "eps" BRACED     -> eps
         | NAME             -> cell
         | "(" vcomp ")"

    BRACED: /\{[^{}]*\}/
    NAME: /[^\W\d][\w.']*/

    %import common.WS
    %ignore WS
"""

_parser = Lark(TWO_TERM_GRAMMAR, start="vcomp")


class _ToTwoTerm(Transformer):
    def __init__(self, sig: LayeredSignature):
        super().__init__()
        self.sig = sig

    def _term(self, token) -> LTerm:
        return parse_lterm(str(token)[1:-1], self.sig)

    def ident(self, args):
        return TId(self._term(args[0]))

    def eta(self, args):
        return TUnit(self._term(args[0]))

    def eps(self, args):
        return TCounit(self._term(args[0]))

    def cell(self, args):
        return TCell(str(args[0]))

    def _fold(self, op, args):
        result = args[0]
        for a in args[1:]:
            result = TComp(op, result, a)
        return result

    def vcomp(self, args):
        return self._fold(";", args)

    def hcomp(self, args):
        return self._fold("*", args)

    def tensor(self, args):
        return self._fold("⊗", args)


def parse_two_term(text: str, sig: LayeredSignature, path=None, line=None) -> TwoTerm:
    try:
        return _ToTwoTerm(sig).transform(_parser.parse(text))
    except VisitError as e:
        if isinstance(e.orig_exc, (ParseError, SortError)):
            raise e.orig_exc from None
        raise ParseError(str(e.orig_exc), path, line) from None
    except LarkError as e:
        raise ParseError(f"cannot parse 2-term {text!r}: {e}", path, line) from None
