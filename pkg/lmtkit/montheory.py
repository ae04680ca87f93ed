"""Monoidal signatures, terms, theories and models.

Terms are trees over generators, identities, ``;`` and ``*``. Equality modulo the
structural identities is decided through slice diagrams (``string_diagrams``);
equality modulo a theory is a bounded rewrite search that returns a replayable
trace when it succeeds.

Linear syntax: generator names, ``t ; s``, ``t * s`` (binds tighter than ``;``),
``id[a b]`` and ``id[]``.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from .errors import ParseError, SortError
from .fincat import FinCategory, StrictMonStructure
from .results import ProofResult, Verdict
from .string_diagrams import (Diagram, Node, Rule, decide_without_equations, normal_form,
                              replay, rule_moves, search, structurally_equal)
from .union_find import DisjointSet

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]
Sort = Tuple[Word, Word]


@dataclass(frozen=True)
class Gen:
    name: str
    dom: Word
    cod: Word


@dataclass(frozen=True)
class Id:
    word: Word


@dataclass(frozen=True)
class Comp:
    first: "Term"
    second: "Term"


@dataclass(frozen=True)
class Tensor:
    left: "Term"
    right: "Term"


Term = Union[Gen, Id, Comp, Tensor]


def sort_of(t: Term) -> Sort:
    if isinstance(t, Gen):
        return t.dom, t.cod
    if isinstance(t, Id):
        return t.word, t.word
    if isinstance(t, Comp):
        (a, b), (b2, c) = sort_of(t.first), sort_of(t.second)
        if b != b2:
            raise SortError(f"composite middle types differ: {' '.join(b) or 'ε'} vs {' '.join(b2) or 'ε'}",
                            node=format_term(t))
        return a, c
    if isinstance(t, Tensor):
        (a, b), (c, d) = sort_of(t.left), sort_of(t.right)
        return a + c, b + d
    raise SortError(f"not a term: {t!r}")


def size_of(t: Term) -> int:
    if isinstance(t, Comp):
        return 1 + size_of(t.first) + size_of(t.second)
    if isinstance(t, Tensor):
        return 1 + size_of(t.left) + size_of(t.right)
    return 1


def format_term(t: Term) -> str:
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id[{' '.join(t.word)}]"
    if isinstance(t, Comp):
        return f"{format_term(t.first)} ; {format_term(t.second)}"
    left, right = format_term(t.left), format_term(t.right)
    if isinstance(t.left, Comp):
        left = f"({left})"
    if isinstance(t.right, (Comp, Tensor)):
        right = f"({right})"
    return f"{left} * {right}"


def comp_all(terms: Sequence[Term]) -> Term:
    result = terms[0]
    for t in terms[1:]:
        result = Comp(result, t)
    return result


def tensor_all(terms: Sequence[Term]) -> Term:
    if not terms:
        return Id(())
    result = terms[0]
    for t in terms[1:]:
        result = Tensor(result, t)
    return result


@dataclass
class MonSignature:
    colours: Tuple[str, ...]
    generators: Dict[str, Sort] = field(default_factory=dict)

    def gen(self, name: str) -> Gen:
        if name not in self.generators:
            raise SortError(f"unknown generator {name!r}")
        dom, cod = self.generators[name]
        return Gen(name, dom, cod)

    def add(self, name: str, dom: Sequence[str], cod: Sequence[str]) -> Gen:
        sort = (tuple(dom), tuple(cod))
        for c in sort[0] + sort[1]:
            if c not in self.colours:
                raise SortError(f"generator {name} uses unknown colour {c!r}")
        if name in self.generators and self.generators[name] != sort:
            raise SortError(f"generator {name} declared with two sorts")
        self.generators[name] = sort
        return Gen(name, *sort)


@dataclass(frozen=True)
class Equation:
    name: str
    lhs: Term
    rhs: Term
    origin: str = ""


@dataclass(frozen=True)
class Schema:
    """Equation family instantiated over the final signature of a theory."""

    name: str
    instantiate: Callable[[MonSignature], List[Equation]]


@dataclass
class MonTheory:
    signature: MonSignature
    equations: List[Equation] = field(default_factory=list)
    schemas: List[Schema] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self._materialized: Optional[List[Equation]] = None
        self._rules: Optional[List[Rule]] = None

    def all_equations(self) -> List[Equation]:
        if self._materialized is None:
            out = list(self.equations)
            for schema in self.schemas:
                out.extend(schema.instantiate(self.signature))
            for eq in out:
                if sort_of(eq.lhs) != sort_of(eq.rhs):
                    raise SortError(f"equation {eq.name} is not parallel")
            self._materialized = out
        return self._materialized

    def rules(self) -> List[Rule]:
        if self._rules is None:
            self._rules = [Rule(eq.name, to_diagram(eq.lhs), to_diagram(eq.rhs), eq.origin)
                           for eq in self.all_equations()]
        return self._rules

    def add_equation(self, name: str, lhs: Term, rhs: Term, origin: str = "") -> None:
        if sort_of(lhs) != sort_of(rhs):
            raise SortError(f"equation {name} is not parallel: {format_term(lhs)} vs {format_term(rhs)}")
        self.equations.append(Equation(name, lhs, rhs, origin))
        self._materialized = self._rules = None


def extend_theory(first: MonTheory, second: MonTheory, name: str = "") -> MonTheory:
    colours = tuple(dict.fromkeys(first.signature.colours + second.signature.colours))
    sig = MonSignature(colours, dict(first.signature.generators))
    for g, (dom, cod) in second.signature.generators.items():
        sig.add(g, dom, cod)
    names = {eq.name for eq in first.equations}
    equations = list(first.equations) + [eq for eq in second.equations if eq.name not in names]
    schema_names = {s.name for s in first.schemas}
    schemas = list(first.schemas) + [s for s in second.schemas if s.name not in schema_names]
    return MonTheory(sig, equations, schemas, name=name or f"{first.name}+{second.name}")


TERM_GRAMMAR = r"""
    ?comp: tensor (";" tensor)*
    ?tensor: atom ("*" atom)*
    ?atom: IDENT      -> ident
         | NAME       -> gen
         | "(" comp ")"

    IDENT.2: /id\[[^\]]*\]/
    NAME: /[^\s;()\[\]*][^\s;()\[\]]*/

    %import common.WS
    %ignore WS
"""

_term_parser = Lark(TERM_GRAMMAR, start="comp", parser="lalr")


class _ToTerm(Transformer):
    def __init__(self, signature: MonSignature):
        super().__init__()
        self.signature = signature

    def ident(self, args):
        word = tuple(args[0].value[3:-1].split())
        for c in word:
            if c not in self.signature.colours:
                raise SortError(f"unknown colour {c!r}")
        return Id(word)

    def gen(self, args):
        return self.signature.gen(args[0].value)

    def comp(self, args):
        return comp_all(args)

    def tensor(self, args):
        return tensor_all(args)


def parse_term(text: str, signature: MonSignature, path=None, line=None) -> Term:
    try:
        tree = _term_parser.parse(text)
        term = _ToTerm(signature).transform(tree)
    except VisitError as e:
        raise ParseError(str(e.orig_exc), path, line) from None
    except LarkError as e:
        raise ParseError(f"cannot parse term {text!r}: {e}", path, line) from None
    sort_of(term)
    return term


def to_diagram(t: Term) -> Diagram:
    if isinstance(t, Gen):
        return Diagram.box(Node(t.name, t.dom, t.cod))
    if isinstance(t, Id):
        return Diagram.identity(t.word)
    if isinstance(t, Comp):
        return to_diagram(t.first).then(to_diagram(t.second))
    return to_diagram(t.left).tensor(to_diagram(t.right))


def diagram_to_term(d: Diagram) -> Term:
    if not d.slices:
        return Id(d.dom)
    layers = []
    for s in d.slices:
        parts = []
        if s.left:
            parts.append(Id(s.left))
        parts.append(Gen(s.node.label, s.node.dom, s.node.cod))
        if s.right:
            parts.append(Id(s.right))
        layers.append(tensor_all(parts))
    return comp_all(layers)


def diagram_nf(t: Term) -> Diagram:
    return normal_form(to_diagram(t))


def _require_parallel(t: Term, s: Term) -> None:
    if sort_of(t) != sort_of(s):
        raise SortError(f"terms are not parallel: {format_term(t)} and {format_term(s)}")


def equal_structural(t: Term, s: Term) -> bool:
    _require_parallel(t, s)
    return structurally_equal(to_diagram(t), to_diagram(s))


def prove_equal(th: MonTheory, t: Term, s: Term, budget: int = 10000,
                max_slices: Optional[int] = None) -> ProofResult:
    """Proved with a trace, Unknown when the budget runs out; Disproved only without equations."""
    _require_parallel(t, s)
    if not th.all_equations():
        return decide_without_equations(to_diagram(t), to_diagram(s))
    result = search(to_diagram(t), to_diagram(s), rule_moves(th.rules()), budget, max_slices)
    trace = [{'rule': step['rule'], 'direction': step['direction'],
              'before': format_term(diagram_to_term(step['before'])),
              'after': format_term(diagram_to_term(step['after']))} for step in result.trace]
    return ProofResult(result.status, trace, result.explored, result.reason)


def replay_trace(th: MonTheory, t: Term, s: Term, trace: Sequence[Dict]) -> bool:
    steps = [{'rule': step['rule'], 'direction': step['direction'],
              'before': to_diagram(parse_term(step['before'], th.signature)),
              'after': to_diagram(parse_term(step['after'], th.signature))} for step in trace]
    return replay(steps, to_diagram(t), to_diagram(s), rule_moves(th.rules()))


@dataclass(frozen=True)
class SignatureMorphism:
    colours: Dict[str, str]
    generators: Dict[str, str]


def check_signature_morphism(f: SignatureMorphism, source: MonSignature, target: MonSignature) -> Verdict:
    for c in source.colours:
        if f.colours.get(c) not in target.colours:
            return Verdict.fail({'colour': c})
    for g, (dom, cod) in source.generators.items():
        image = f.generators.get(g)
        if image not in target.generators:
            return Verdict.fail({'generator': g})
        expected = (tuple(f.colours[c] for c in dom), tuple(f.colours[c] for c in cod))
        if target.generators[image] != expected:
            return Verdict.fail({'generator': g, 'reason': 'sort not preserved'})
    return Verdict.ok()


def apply_signature_morphism(f: SignatureMorphism, t: Term) -> Term:
    if isinstance(t, Gen):
        return Gen(f.generators[t.name], tuple(f.colours[c] for c in t.dom),
                   tuple(f.colours[c] for c in t.cod))
    if isinstance(t, Id):
        return Id(tuple(f.colours[c] for c in t.word))
    if isinstance(t, Comp):
        return Comp(apply_signature_morphism(f, t.first), apply_signature_morphism(f, t.second))
    return Tensor(apply_signature_morphism(f, t.left), apply_signature_morphism(f, t.right))


@dataclass(frozen=True, eq=False)
class ModelData:
    target: StrictMonStructure
    colours: Dict[str, str]
    generators: Dict[str, str]


def interpret(m: ModelData, t: Term) -> str:
    C = m.target.carrier
    if isinstance(t, Gen):
        return m.generators[t.name]
    if isinstance(t, Id):
        return C.identity[m.target.tensor_word([m.colours[c] for c in t.word])]
    if isinstance(t, Comp):
        return C.compose(interpret(m, t.first), interpret(m, t.second))
    return m.target.tensor_mor(interpret(m, t.left), interpret(m, t.right))


def check_model(th: MonTheory, m: ModelData) -> Verdict:
    C, s = m.target.carrier, m.target
    for g, (dom, cod) in th.signature.generators.items():
        f = m.generators.get(g)
        if f is None:
            return Verdict.fail({'generator': g, 'reason': 'uninterpreted'})
        expected = (s.tensor_word([m.colours[c] for c in dom]), s.tensor_word([m.colours[c] for c in cod]))
        if (C.dom[f], C.cod[f]) != expected:
            return Verdict.fail({'generator': g, 'reason': 'sort mismatch'})
    for eq in th.all_equations():
        left, right = interpret(m, eq.lhs), interpret(m, eq.rhs)
        if left != right:
            return Verdict.fail({'equation': eq.name, 'lhs': left, 'rhs': right})
    return Verdict.ok(equations=len(th.all_equations()))


def enumerate_terms(sig: MonSignature, size_bound: int) -> Dict[int, List[Tuple[Term, Sort]]]:
    """All well-sorted terms by size; leaves are generators, id of one colour and id[]."""
    leaves = [sig.gen(g) for g in sig.generators] + [Id((c,)) for c in sig.colours] + [Id(())]
    by_size: Dict[int, List[Tuple[Term, Sort]]] = {1: [(t, sort_of(t)) for t in leaves]}
    for n in range(3, size_bound + 1, 2):
        out = []
        for k in range(1, n - 1, 2):
            for t, (a, b) in by_size.get(k, []):
                for s, (c, d) in by_size.get(n - 1 - k, []):
                    if b == c:
                        out.append((Comp(t, s), (a, d)))
                    out.append((Tensor(t, s), (a + c, b + d)))
        by_size[n] = out
    return by_size


@dataclass
class HomEnumeration:
    sort: Sort
    classes: List[List[Term]]
    complete: bool
    caveat: str = ""

    @property
    def representatives(self) -> List[Term]:
        return [members[0] for members in self.classes]


def enumerate_hom(th: MonTheory, a: Sequence[str], b: Sequence[str], size_bound: int,
                  budget: int = 2000) -> HomEnumeration:
    """Terms of sort (a, b) up to ``size_bound`` grouped by normal form, then merged by the prover."""
    sort = (tuple(a), tuple(b))
    terms = [t for n, items in sorted(enumerate_terms(th.signature, size_bound).items())
             for t, st in items if st == sort]
    groups: Dict[Diagram, List[Term]] = {}
    for t in terms:
        groups.setdefault(diagram_nf(t), []).append(t)
    reps = list(groups)
    ds = DisjointSet(range(len(reps)))
    equations = bool(th.all_equations())
    if equations:
        rules = rule_moves(th.rules())
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if ds.same(i, j):
                    continue
                if search(reps[i], reps[j], rules, budget).proved:
                    ds.union(i, j)
    classes = []
    for members in ds.classes():
        merged = [t for i in members for t in groups[reps[i]]]
        merged.sort(key=lambda t: (size_of(t), format_term(t)))
        classes.append(merged)
    classes.sort(key=lambda ms: (size_of(ms[0]), format_term(ms[0])))
    caveat = "" if not equations else "classes merged by bounded search; distinct classes may still be equal"
    logger.info("hom(%s, %s): %d terms, %d classes", a, b, len(terms), len(classes))
    return HomEnumeration(sort, classes, complete=not equations, caveat=caveat)


def _one_step_structural(t: Term) -> Iterator[Term]:
    """Structural rewrites at every position.

    Associativity and interchange run both ways; identities only disappear, apart from
    ``x * y = (x * id) ; (id * y)`` and its mirror image."""
    if isinstance(t, Comp):
        x, y = t.first, t.second
        if isinstance(x, Comp):
            yield Comp(x.first, Comp(x.second, y))
        if isinstance(y, Comp):
            yield Comp(Comp(x, y.first), y.second)
        if _is_identity_tree(y):
            yield x
        if _is_identity_tree(x):
            yield y
        if isinstance(x, Tensor) and isinstance(y, Tensor):
            if sort_of(x.left)[1] == sort_of(y.left)[0] and sort_of(x.right)[1] == sort_of(y.right)[0]:
                yield Tensor(Comp(x.left, y.left), Comp(x.right, y.right))
        for x2 in _one_step_structural(x):
            yield Comp(x2, y)
        for y2 in _one_step_structural(y):
            yield Comp(x, y2)
    elif isinstance(t, Tensor):
        x, y = t.left, t.right
        if isinstance(x, Tensor):
            yield Tensor(x.left, Tensor(x.right, y))
        if isinstance(y, Tensor):
            yield Tensor(Tensor(x, y.left), y.right)
        if x == Id(()):
            yield y
        if y == Id(()):
            yield x
        if isinstance(x, Id) and isinstance(y, Id):
            yield Id(x.word + y.word)
        if isinstance(x, Comp) and isinstance(y, Comp):
            yield Comp(Tensor(x.first, y.first), Tensor(x.second, y.second))
        if not (_is_identity_tree(x) or _is_identity_tree(y)):
            (a, b), (c, d) = sort_of(x), sort_of(y)
            yield Comp(Tensor(x, Id(c)), Tensor(Id(b), y))
            yield Comp(Tensor(Id(a), y), Tensor(x, Id(d)))
        for x2 in _one_step_structural(x):
            yield Tensor(x2, y)
        for y2 in _one_step_structural(y):
            yield Tensor(x, y2)


def _is_identity_tree(t: Term) -> bool:
    if isinstance(t, Id):
        return True
    if isinstance(t, Tensor):
        return _is_identity_tree(t.left) and _is_identity_tree(t.right)
    return False


def structural_closure(sig: MonSignature, size_bound: int,
                       slack: int = 4) -> Tuple[List[Term], DisjointSet]:
    """Brute-force congruence closure of the structural identities.

    Every term up to ``size_bound`` is rewritten through intermediate terms of up
    to ``size_bound + slack``; each rewrite step joins its two ends.
    """
    terms = [t for items in enumerate_terms(sig, size_bound).values() for t, _ in items]
    ds = DisjointSet(terms)
    limit = size_bound + slack
    seen = set(terms)
    queue = deque(terms)
    while queue:
        t = queue.popleft()
        for u in _one_step_structural(t):
            if size_of(u) > limit:
                continue
            ds.add(u)
            ds.union(t, u)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    logger.debug("structural closure: %d terms, %d intermediates", len(terms), len(seen) - len(terms))
    return terms, ds

def _word(*colours: str) -> Word:
    return tuple(colours)


def _sym_name(a: str, b: str) -> str:
    return f"sym_{a}_{b}"


def symmetry_word(v: Word, w: Word) -> Term:
    """σ_{v,w}: v w -> w v from the one-colour crossings."""
    if not v or not w:
        return Id(v + w)
    if len(v) == 1:
        a, b = v[0], w[0]
        head = Gen(_sym_name(a, b), (a, b), (b, a))
        if len(w) == 1:
            return head
        return Comp(Tensor(head, Id(w[1:])), Tensor(Id((b,)), symmetry_word(v, w[1:])))
    return Comp(Tensor(Id(v[:1]), symmetry_word(v[1:], w)), Tensor(symmetry_word(v[:1], w), Id(v[1:])))


def copy_word(w: Word, name: Callable[[str], str]) -> Term:
    if not w:
        return Id(())
    a = w[0]
    head = Gen(name(a), (a,), (a, a))
    if len(w) == 1:
        return head
    rest = w[1:]
    return Comp(Tensor(head, copy_word(rest, name)),
                tensor_all([Id((a,)), symmetry_word((a,), rest), Id(rest)]))


def delete_word(w: Word, name: Callable[[str], str]) -> Term:
    return tensor_all([Gen(name(a), (a,), ()) for a in w])


def multiply_word(w: Word, name: Callable[[str], str]) -> Term:
    if not w:
        return Id(())
    a = w[0]
    head = Gen(name(a), (a, a), (a,))
    if len(w) == 1:
        return head
    rest = w[1:]
    return Comp(tensor_all([Id((a,)), symmetry_word(rest, (a,)), Id(rest)]),
                Tensor(head, multiply_word(rest, name)))


def _monoid_equations(m: Term, u: Term, x: str, prefix: str) -> List[Equation]:
    i = Id((x,))
    return [
        Equation(f"{prefix}.assoc", Comp(Tensor(m, i), m), Comp(Tensor(i, m), m), "monoid"),
        Equation(f"{prefix}.unit_left", Comp(Tensor(u, i), m), i, "monoid"),
        Equation(f"{prefix}.unit_right", Comp(Tensor(i, u), m), i, "monoid"),
    ]


def _comonoid_equations(d: Term, e: Term, x: str, prefix: str) -> List[Equation]:
    i = Id((x,))
    return [
        Equation(f"{prefix}.coassoc", Comp(d, Tensor(d, i)), Comp(d, Tensor(i, d)), "comonoid"),
        Equation(f"{prefix}.counit_left", Comp(d, Tensor(e, i)), i, "comonoid"),
        Equation(f"{prefix}.counit_right", Comp(d, Tensor(i, e)), i, "comonoid"),
    ]


def theory_of_monoids() -> MonTheory:
    sig = MonSignature(("x",))
    m, u = sig.add("m", ("x", "x"), ("x",)), sig.add("u", (), ("x",))
    return MonTheory(sig, _monoid_equations(m, u, "x", "monoid"), name="monoids")


def theory_of_comonoids() -> MonTheory:
    sig = MonSignature(("x",))
    d, e = sig.add("d", ("x",), ("x", "x")), sig.add("e", ("x",), ())
    return MonTheory(sig, _comonoid_equations(d, e, "x", "comonoid"), name="comonoids")


def _symmetry_naturality(sig: MonSignature) -> List[Equation]:
    out = []
    for g, (v, w) in sorted(sig.generators.items()):
        gen = Gen(g, v, w)
        for c in sig.colours:
            ic = Id((c,))
            out.append(Equation(f"sym.natural[{g},{c},right]",
                                Comp(Tensor(gen, ic), symmetry_word(w, (c,))),
                                Comp(symmetry_word(v, (c,)), Tensor(ic, gen)), "symmetry"))
            out.append(Equation(f"sym.natural[{g},{c},left]",
                                Comp(Tensor(ic, gen), symmetry_word((c,), w)),
                                Comp(symmetry_word((c,), v), Tensor(gen, ic)), "symmetry"))
    return out


def symmetric_theory(colours: Sequence[str]) -> MonTheory:
    sig = MonSignature(tuple(colours))
    equations = []
    for a in sig.colours:
        for b in sig.colours:
            sig.add(_sym_name(a, b), (a, b), (b, a))
    for a in sig.colours:
        for b in sig.colours:
            equations.append(Equation(f"sym.involution[{a},{b}]",
                                      Comp(Gen(_sym_name(a, b), (a, b), (b, a)),
                                           Gen(_sym_name(b, a), (b, a), (a, b))),
                                      Id((a, b)), "symmetry"))
    return MonTheory(sig, equations, [Schema("sym.natural", _symmetry_naturality)],
                     name="symmetric")


def _copy(a: str) -> str:
    return f"copy_{a}"


def _delete(a: str) -> str:
    return f"del_{a}"


def _mul(a: str) -> str:
    return f"mul_{a}"


def _unit(a: str) -> str:
    return f"unit_{a}"


def _comonoid_naturality(sig: MonSignature) -> List[Equation]:
    out = []
    for g, (v, w) in sorted(sig.generators.items()):
        gen = Gen(g, v, w)
        out.append(Equation(f"copy.natural[{g}]", Comp(gen, copy_word(w, _copy)),
                            Comp(copy_word(v, _copy), Tensor(gen, gen)), "uniform comonoids"))
        out.append(Equation(f"del.natural[{g}]", Comp(gen, delete_word(w, _delete)),
                            delete_word(v, _delete), "uniform comonoids"))
    return out


def uniform_comonoid_theory(colours: Sequence[str]) -> MonTheory:
    th = symmetric_theory(colours)
    sig = th.signature
    for a in sig.colours:
        d, e = sig.add(_copy(a), (a,), (a, a)), sig.add(_delete(a), (a,), ())
        th.equations.extend(_comonoid_equations(d, e, a, f"comonoid[{a}]"))
    th.schemas.append(Schema("copy.natural", _comonoid_naturality))
    th.name = "uniform_comonoids"
    return th


def _monoid_naturality(sig: MonSignature) -> List[Equation]:
    out = []
    for g, (v, w) in sorted(sig.generators.items()):
        if len(v) != 1 or len(w) != 1 or g.startswith(("mul_", "unit_")):
            continue
        gen = Gen(g, v, w)
        a, b = v[0], w[0]
        out.append(Equation(f"mul.natural[{g}]", Comp(Tensor(gen, gen), Gen(_mul(b), (b, b), (b,))),
                            Comp(Gen(_mul(a), (a, a), (a,)), gen), "natural monoids"))
        out.append(Equation(f"unit.natural[{g}]", Comp(Gen(_unit(a), (), (a,)), gen),
                            Gen(_unit(b), (), (b,)), "natural monoids"))
    return out


def natural_monoid_theory(colours: Sequence[str]) -> MonTheory:
    th = symmetric_theory(colours)
    sig = th.signature
    for a in sig.colours:
        m, u = sig.add(_mul(a), (a, a), (a,)), sig.add(_unit(a), (), (a,))
        th.equations.extend(_monoid_equations(m, u, a, f"monoid[{a}]"))
    th.schemas.append(Schema("mul.natural", _monoid_naturality))
    th.name = "natural_monoids"
    return th


def indexed_monoid_theory(colours: Sequence[str]) -> MonTheory:
    th = extend_theory(natural_monoid_theory(colours), uniform_comonoid_theory(colours),
                       name="indexed_monoids")
    return th


def add_category_generators(th: MonTheory, C: FinCategory) -> MonTheory:
    """One generator per morphism of C, with C's identities and composites as equations."""
    sig = th.signature
    for f in C.morphisms:
        if f in sig.generators:
            raise SortError(f"morphism name {f!r} clashes with a structure generator")
        sig.add(f, (C.dom[f],), (C.cod[f],))
    for x in C.objects:
        i = C.identity[x]
        th.equations.append(Equation(f"hom.identity[{i}]", sig.gen(i), Id((x,)), "generated"))
    for (f, g), h in sorted(C.compose_table.items()):
        if C.is_identity(f) or C.is_identity(g):
            continue
        th.equations.append(Equation(f"hom.compose[{f},{g}]", Comp(sig.gen(f), sig.gen(g)), sig.gen(h),
                                     "generated"))
    th._materialized = th._rules = None
    return th


def theory_im(X: FinCategory) -> MonTheory:
    """Indexed monoids over Ob(X), one generator per morphism, X's composites and identities."""
    th = add_category_generators(indexed_monoid_theory(X.objects), X)
    th.name = f"im({X.name})"
    return th


BUILTIN_THEORIES = ("symmetric", "monoids", "comonoids", "uniform_comonoids", "natural_monoids",
                    "indexed_monoids", "im")


def builtin_theory(name: str, colours: Optional[Sequence[str]] = None,
                   base: Optional[FinCategory] = None) -> MonTheory:
    colours = tuple(colours or ("x",))
    if name == "monoids":
        return theory_of_monoids()
    elif name == "comonoids":
        return theory_of_comonoids()
    elif name == "symmetric":
        return symmetric_theory(colours)
    elif name == "uniform_comonoids":
        return uniform_comonoid_theory(colours)
    elif name == "natural_monoids":
        return natural_monoid_theory(colours)
    elif name == "indexed_monoids":
        return indexed_monoid_theory(colours)
    elif name == "im":
        if base is None:
            raise SortError("im(X) needs a base category")
        return theory_im(base)
    raise ValueError(f"Unknown theory: {name}")
