"""Layered signatures, types, terms and their sorting procedures.

Canonical types are tuples of blocks; a block is an internal type ``A:ω`` with
``A`` a word of primes, where a prime is a colour or ``f(p)`` for a boundary
generator ``f`` applied to a prime. Applying ``f`` to a word distributes over
it, so the structural type identities hold by construction.

Linear syntax for terms::

    g                       internal generator (``layer.g`` when ambiguous)
    id[ω: a b, τ: c]        identity on a type; ``id[]`` is the external unit
    box(f, x)               int-box;  ``x & y`` is int-tensor
    x * y, x ; y            ext-tensor and composition
    ext(f, ω: a)  coext(f, ω: a)
    mon(ω: a, ω: b)  unit(ω)  diag(ω: a)  del(ω: a)
    comon(ω: a, ω: b)  counit(ω)  codiag(ω: a)  codel(ω: a)
    swap(ω: a, τ: b)
"""

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import LarkError

from .errors import ParseError, SortError
from .montheory import MonSignature

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]


@dataclass(frozen=True, order=True)
class Block:
    layer: str
    word: Word = ()

    def __str__(self):
        return f"{self.layer}: {' '.join(self.word)}".rstrip()


LType = Tuple[Block, ...]


def format_type(T: LType) -> str:
    return ", ".join(str(b) for b in T) if T else "ε"


@dataclass(frozen=True)
class TyEmpty:
    pass


@dataclass(frozen=True)
class TyUnit:
    layer: str


@dataclass(frozen=True)
class TyColour:
    colour: str
    layer: str


@dataclass(frozen=True)
class TyApply:
    functor: str
    arg: "RawType"


@dataclass(frozen=True)
class TyConcat:
    left: "RawType"
    right: "RawType"


@dataclass(frozen=True)
class TyList:
    left: "RawType"
    right: "RawType"


RawType = Union[TyEmpty, TyUnit, TyColour, TyApply, TyConcat, TyList]


class SortingProcedure(enum.Enum):
    OPFIBRATIONAL = "opfibrational"
    FIBRATIONAL = "fibrational"
    DEFLATIONAL = "deflational"


BASIC_RULES = frozenset({"int-unit", "int-id", "int-gen", "int-box", "comp", "int-tensor",
                         "ext-unit", "ext-tensor", "swap"})
OPF_RULES = frozenset({"ext-gen", "monoid", "monoid-unit", "diag", "diag-counit"})
FIB_RULES = frozenset({"ext-gen-op", "comonoid", "counit", "codiag", "codiag-unit"})
INTERNAL_RULES = frozenset({"int-unit", "int-id", "int-gen", "int-box", "int-tensor"})

DUAL_RULE = {"ext-gen": "ext-gen-op", "monoid": "comonoid", "monoid-unit": "counit",
             "diag": "codiag", "diag-counit": "codiag-unit"}
DUAL_RULE.update({v: k for k, v in list(DUAL_RULE.items())})


def allowed_rules(procedure: SortingProcedure) -> frozenset:
    if procedure is SortingProcedure.OPFIBRATIONAL:
        return BASIC_RULES | OPF_RULES
    if procedure is SortingProcedure.FIBRATIONAL:
        return BASIC_RULES | FIB_RULES
    return BASIC_RULES | OPF_RULES | FIB_RULES


@dataclass
class LayeredSignature:
    layers: Tuple[str, ...]
    functors: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    layer_sigs: Dict[str, MonSignature] = field(default_factory=dict)

    def __post_init__(self):
        for w in self.layers:
            self.layer_sigs.setdefault(w, MonSignature(()))
        for f, (w, t) in self.functors.items():
            if w not in self.layers or t not in self.layers:
                raise SortError(f"boundary generator {f} joins unknown layers {w} -> {t}")

    def functor(self, f: str) -> Tuple[str, str]:
        if f not in self.functors:
            raise SortError(f"unknown boundary generator {f!r}")
        return self.functors[f]

    def resolve_generator(self, name: str) -> Tuple[str, str]:
        if "." in name:
            layer, g = name.split(".", 1)
            if layer in self.layer_sigs and g in self.layer_sigs[layer].generators:
                return layer, g
        owners = [w for w in self.layers if name in self.layer_sigs[w].generators]
        if len(owners) != 1:
            raise SortError(f"generator {name!r} is {'ambiguous' if owners else 'unknown'}")
        return owners[0], name


def apply_prime(f: str, p: str) -> str:
    return f"{f}({p})"


def split_prime(p: str) -> Optional[Tuple[str, str]]:
    """``f(q)`` -> ``(f, q)``; ``None`` for a bare colour."""
    if not p.endswith(")") or "(" not in p:
        return None
    head, rest = p.split("(", 1)
    return head, rest[:-1]


def prime_layer_ok(sig: LayeredSignature, p: str, layer: str) -> bool:
    parts = split_prime(p)
    if parts is None:
        return p in sig.layer_sigs[layer].colours
    f, inner = parts
    if f not in sig.functors or sig.functors[f][1] != layer:
        return False
    return prime_layer_ok(sig, inner, sig.functors[f][0])


def check_block(sig: LayeredSignature, b: Block) -> Block:
    if b.layer not in sig.layers:
        raise SortError(f"unknown layer {b.layer!r}")
    for p in b.word:
        if not prime_layer_ok(sig, p, b.layer):
            raise SortError(f"{p} is not a prime of layer {b.layer}", node=str(b))
    return b


def apply_block(sig: LayeredSignature, f: str, b: Block) -> Block:
    src, tgt = sig.functor(f)
    if b.layer != src:
        raise SortError(f"{f} expects layer {src}, got {b.layer}", node=str(b))
    return Block(tgt, tuple(apply_prime(f, p) for p in b.word))


def canonical_type(sig: LayeredSignature, T: RawType) -> LType:
    """Distribute functors and flatten concatenations; raises SortError on layer clashes."""
    if isinstance(T, TyEmpty):
        return ()
    if isinstance(T, TyList):
        return canonical_type(sig, T.left) + canonical_type(sig, T.right)
    return (_internal(sig, T),)


def _internal(sig: LayeredSignature, T: RawType) -> Block:
    if isinstance(T, TyUnit):
        return check_block(sig, Block(T.layer, ()))
    if isinstance(T, TyColour):
        return check_block(sig, Block(T.layer, (T.colour,)))
    if isinstance(T, TyApply):
        return apply_block(sig, T.functor, _internal(sig, T.arg))
    if isinstance(T, TyConcat):
        a, b = _internal(sig, T.left), _internal(sig, T.right)
        if a.layer != b.layer:
            raise SortError(f"cannot concatenate {a} with {b}: different layers")
        return Block(a.layer, a.word + b.word)
    raise SortError(f"{T!r} is not an internal type")


def _e0_rules(sig: LayeredSignature, e0: Sequence[Tuple[Block, Block]]) -> Dict[str, List[Tuple[Word, Word]]]:
    """Ground word equations per layer, closed under the boundary generators."""
    rules: Dict[str, List[Tuple[Word, Word]]] = {w: [] for w in sig.layers}
    frontier = list(e0)
    seen = set()
    for _ in range(len(sig.layers) + 1):
        nxt = []
        for a, b in frontier:
            if a.layer != b.layer:
                raise SortError(f"0-equation {a} = {b} crosses layers")
            if (a, b) in seen:
                continue
            seen.add((a, b))
            rules[a.layer].append((a.word, b.word))
            for f, (src, _) in sorted(sig.functors.items()):
                if src == a.layer:
                    nxt.append((apply_block(sig, f, a), apply_block(sig, f, b)))
        frontier = nxt
    return rules


def _words_congruent(rules: Sequence[Tuple[Word, Word]], u: Word, v: Word, bound: int) -> Optional[bool]:
    if u == v:
        return True
    both = [(l, r) for l, r in rules] + [(r, l) for l, r in rules]
    seen = {u}
    queue = deque([u])
    truncated = False
    while queue:
        w = queue.popleft()
        for l, r in both:
            n = len(l)
            for i in range(len(w) - n + 1):
                if w[i:i + n] != l:
                    continue
                x = w[:i] + r + w[i + n:]
                if len(x) > bound:
                    truncated = True
                    continue
                if x == v:
                    return True
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
    if truncated:
        logger.debug("word search from %s hit the length bound %d", " ".join(u), bound)
    return None if truncated else False


def types_congruent(sig: LayeredSignature, e0: Sequence[Tuple[Block, Block]], T: LType, S: LType,
                    bound: Optional[int] = None) -> Optional[bool]:
    """True/False, or ``None`` when the word search hit the length bound.

    Blocks in different layers are not a pair of types at all: ``SortError``.
    """
    if T == S:
        return True
    if len(T) != len(S):
        return False
    for a, b in zip(T, S):
        if a.layer != b.layer:
            raise SortError(f"{format_type((a,))} and {format_type((b,))} lie in different layers")
    rules = _e0_rules(sig, e0) if e0 else {}
    verdict: Optional[bool] = True
    for a, b in zip(T, S):
        if a.word == b.word:
            continue
        limit = bound if bound is not None else max(len(a.word), len(b.word)) + 2
        r = _words_congruent(rules.get(a.layer, []), a.word, b.word, limit)
        if r is False:
            return False
        if r is None:
            verdict = None
    return verdict


@dataclass(frozen=True)
class LTerm:
    """A layered term: rule name, sub-terms and the rule's parameters."""

    rule: str
    args: Tuple["LTerm", ...] = ()
    name: Optional[str] = None
    blocks: Tuple[Block, ...] = ()
    layer: Optional[str] = None


Sort = Tuple[LType, LType]


def int_gen(layer: str, g: str) -> LTerm:
    return LTerm("int-gen", name=g, layer=layer)


def int_id(b: Block) -> LTerm:
    return LTerm("int-id", blocks=(b,))


def identity_term(T: LType) -> LTerm:
    if not T:
        return LTerm("ext-unit")
    result = int_id(T[0])
    for b in T[1:]:
        result = LTerm("ext-tensor", (result, int_id(b)))
    return result


def comp(*terms: LTerm) -> LTerm:
    result = terms[0]
    for t in terms[1:]:
        result = LTerm("comp", (result, t))
    return result


def ext_tensor(*terms: LTerm) -> LTerm:
    if not terms:
        return LTerm("ext-unit")
    result = terms[0]
    for t in terms[1:]:
        result = LTerm("ext-tensor", (result, t))
    return result


def int_tensor(*terms: LTerm) -> LTerm:
    result = terms[0]
    for t in terms[1:]:
        result = LTerm("int-tensor", (result, t))
    return result


def box(f: str, x: LTerm) -> LTerm:
    return LTerm("int-box", (x,), name=f)


def ext_gen(f: str, A: Block) -> LTerm:
    return LTerm("ext-gen", name=f, blocks=(A,))


def ext_gen_op(f: str, A: Block) -> LTerm:
    return LTerm("ext-gen-op", name=f, blocks=(A,))


def term_size(t: LTerm) -> int:
    return 1 + sum(term_size(a) for a in t.args)


def format_lterm(t: LTerm) -> str:
    r = t.rule
    if r == "int-gen":
        return t.name
    if r == "int-id":
        return f"id[{t.blocks[0]}]"
    if r == "int-unit":
        return f"id[{t.layer}:]"
    if r == "ext-unit":
        return "id[]"
    if r == "int-box":
        return f"box({t.name}, {format_lterm(t.args[0])})"
    if r in ("comp", "ext-tensor", "int-tensor"):
        sym = {"comp": ";", "ext-tensor": "*", "int-tensor": "&"}[r]
        rank = {"comp": 0, "ext-tensor": 1, "int-tensor": 2}
        parts = []
        for i, a in enumerate(t.args):
            s = format_lterm(a)
            if a.rule in rank and (rank[a.rule] < rank[r] or (i == 1 and rank[a.rule] == rank[r])):
                s = f"({s})"
            parts.append(s)
        return f" {sym} ".join(parts)
    keyword = {"ext-gen": "ext", "ext-gen-op": "coext", "monoid": "mon", "comonoid": "comon",
               "monoid-unit": "unit", "counit": "counit", "diag": "diag", "diag-counit": "del",
               "codiag": "codiag", "codiag-unit": "codel", "swap": "swap"}[r]
    if r in ("monoid-unit", "counit"):
        return f"{keyword}({t.layer})"
    params = ([t.name] if t.name else []) + [str(b) for b in t.blocks]
    return f"{keyword}({', '.join(params)})"


@dataclass
class TypedTerm:
    sort: Sort
    internal: bool


def typecheck_term(sig: LayeredSignature, t: LTerm,
                   procedure: SortingProcedure = SortingProcedure.DEFLATIONAL,
                   e0: Sequence[Tuple[Block, Block]] = ()) -> TypedTerm:
    """Sort and internality of ``t``; SortError names the offending sub-term."""
    if t.rule not in allowed_rules(procedure):
        raise SortError(f"rule {t.rule} is not available in {procedure.value} theories",
                        node=format_lterm(t))
    r = t.rule
    if r == "int-unit":
        b = check_block(sig, Block(t.layer, ()))
        return TypedTerm(((b,), (b,)), True)
    if r == "int-id":
        b = check_block(sig, t.blocks[0])
        return TypedTerm(((b,), (b,)), True)
    if r == "int-gen":
        if t.layer not in sig.layer_sigs or t.name not in sig.layer_sigs[t.layer].generators:
            raise SortError(f"unknown generator {t.name} in layer {t.layer}")
        dom, cod = sig.layer_sigs[t.layer].generators[t.name]
        return TypedTerm(((Block(t.layer, dom),), (Block(t.layer, cod),)), True)
    if r == "int-box":
        inner = typecheck_term(sig, t.args[0], procedure, e0)
        if not inner.internal:
            raise SortError("int-box only applies to internal terms", node=format_lterm(t))
        (a,), (b,) = inner.sort
        return TypedTerm(((apply_block(sig, t.name, a),), (apply_block(sig, t.name, b),)), True)
    if r == "comp":
        x, y = (typecheck_term(sig, a, procedure, e0) for a in t.args)
        if x.sort[1] != y.sort[0] and not types_congruent(sig, e0, x.sort[1], y.sort[0]):
            raise SortError(f"composite middle types differ: {format_type(x.sort[1])} vs "
                            f"{format_type(y.sort[0])}", node=format_lterm(t))
        return TypedTerm((x.sort[0], y.sort[1]), x.internal and y.internal)
    if r == "int-tensor":
        x, y = (typecheck_term(sig, a, procedure, e0) for a in t.args)
        if not (x.internal and y.internal):
            raise SortError("int-tensor only applies to internal terms", node=format_lterm(t))
        (a,), (b,) = x.sort
        (c,), (d,) = y.sort
        if a.layer != c.layer:
            raise SortError("int-tensor joins terms of different layers", node=format_lterm(t))
        return TypedTerm(((Block(a.layer, a.word + c.word),), (Block(b.layer, b.word + d.word),)), True)
    if r == "ext-unit":
        return TypedTerm(((), ()), False)
    if r == "ext-tensor":
        x, y = (typecheck_term(sig, a, procedure, e0) for a in t.args)
        return TypedTerm((x.sort[0] + y.sort[0], x.sort[1] + y.sort[1]), False)
    blocks = tuple(check_block(sig, b) for b in t.blocks)
    if r == "swap":
        a, b = blocks
        return TypedTerm(((a, b), (b, a)), False)
    if r == "ext-gen":
        (a,) = blocks
        return TypedTerm(((a,), (apply_block(sig, t.name, a),)), False)
    if r == "ext-gen-op":
        (a,) = blocks
        return TypedTerm(((apply_block(sig, t.name, a),), (a,)), False)
    if r in ("monoid", "comonoid"):
        a, b = blocks
        if a.layer != b.layer:
            raise SortError(f"{r} needs two types of one layer", node=format_lterm(t))
        joined = Block(a.layer, a.word + b.word)
        sort = ((a, b), (joined,))
        return TypedTerm(sort if r == "monoid" else (sort[1], sort[0]), False)
    if r in ("monoid-unit", "counit"):
        b = check_block(sig, Block(t.layer, ()))
        return TypedTerm(((), (b,)) if r == "monoid-unit" else ((b,), ()), False)
    (a,) = blocks
    if r == "diag":
        return TypedTerm(((a,), (a, a)), False)
    if r == "codiag":
        return TypedTerm(((a, a), (a,)), False)
    if r == "diag-counit":
        return TypedTerm(((a,), ()), False)
    if r == "codiag-unit":
        return TypedTerm(((), (a,)), False)
    raise SortError(f"unknown rule {r}")


def dual_term(t: LTerm) -> LTerm:
    """Horizontal reflection: opfibrational constructors become their fibrational duals."""
    r = t.rule
    if r in DUAL_RULE:
        return LTerm(DUAL_RULE[r], name=t.name, blocks=t.blocks, layer=t.layer)
    if r == "comp":
        return LTerm("comp", (dual_term(t.args[1]), dual_term(t.args[0])))
    if r == "ext-tensor":
        return LTerm("ext-tensor", tuple(dual_term(a) for a in t.args))
    if r == "swap":
        return LTerm("swap", blocks=(t.blocks[1], t.blocks[0]))
    if r in ("int-id", "int-unit", "ext-unit"):
        return t
    raise SortError(f"{r} terms have no reflection", node=format_lterm(t))


def is_opfibrational_constructor(t: LTerm) -> bool:
    return t.rule in OPF_RULES


def enumerate_internal_terms(sig: LayeredSignature, layer: str, size_bound: int) -> Dict[int, List[LTerm]]:
    """Internal terms of ``layer`` by size: generators, one-colour identities, int-unit,
    composites, int-tensors and int-boxes of terms from layers mapping into ``layer``."""
    out: Dict[Tuple[str, int], List[Tuple[LTerm, Sort]]] = {}

    def leaves(w):
        ls = [int_gen(w, g) for g in sorted(sig.layer_sigs[w].generators)]
        ls += [int_id(Block(w, (c,))) for c in sig.layer_sigs[w].colours]
        ls.append(LTerm("int-unit", layer=w))
        return [(t, typecheck_term(sig, t).sort) for t in ls]

    for n in range(1, size_bound + 1):
        for w in sig.layers:
            items: List[Tuple[LTerm, Sort]] = []
            if n == 1:
                items = leaves(w)
            for f, (src, tgt) in sorted(sig.functors.items()):
                if tgt == w:
                    for x, _ in out.get((src, n - 1), []):
                        t = box(f, x)
                        items.append((t, typecheck_term(sig, t).sort))
            for k in range(1, n - 1):
                for x, (xa, xb) in out.get((w, k), []):
                    for y, (ya, yb) in out.get((w, n - 1 - k), []):
                        if xb == ya:
                            items.append((comp(x, y), (xa, yb)))
                        t = int_tensor(x, y)
                        items.append((t, ((Block(w, xa[0].word + ya[0].word),),
                                          (Block(w, xb[0].word + yb[0].word),))))
            out[(w, n)] = items
    return {n: [t for t, _ in out.get((layer, n), [])] for n in range(1, size_bound + 1)}


@dataclass(frozen=True)
class LayeredMorphism:
    """Morphism of layered signatures, with an optional map on generating 2-cells."""

    layers: Dict[str, str]
    functors: Dict[str, str]
    colours: Dict[str, Dict[str, str]] = field(default_factory=dict)
    generators: Dict[str, Dict[str, str]] = field(default_factory=dict)
    cells: Dict[str, str] = field(default_factory=dict)

    def prime(self, p: str, layer: str, source: LayeredSignature) -> str:
        parts = split_prime(p)
        if parts is None:
            return self.colours.get(layer, {}).get(p, p)
        f, inner = parts
        return apply_prime(self.functors[f], self.prime(inner, source.functors[f][0], source))

    def block(self, b: Block, source: LayeredSignature) -> Block:
        return Block(self.layers[b.layer], tuple(self.prime(p, b.layer, source) for p in b.word))


def apply_layered_morphism(F: LayeredMorphism, source: LayeredSignature, obj):
    """Translate a block, canonical type, raw type or term along ``F``."""
    if isinstance(obj, Block):
        return F.block(obj, source)
    if isinstance(obj, tuple) and all(isinstance(b, Block) for b in obj):
        return tuple(F.block(b, source) for b in obj)
    if isinstance(obj, TyEmpty):
        return obj
    if isinstance(obj, TyUnit):
        return TyUnit(F.layers[obj.layer])
    if isinstance(obj, TyColour):
        return TyColour(F.colours.get(obj.layer, {}).get(obj.colour, obj.colour), F.layers[obj.layer])
    if isinstance(obj, TyApply):
        return TyApply(F.functors[obj.functor], apply_layered_morphism(F, source, obj.arg))
    if isinstance(obj, (TyConcat, TyList)):
        return type(obj)(apply_layered_morphism(F, source, obj.left), apply_layered_morphism(F, source, obj.right))
    if isinstance(obj, LTerm):
        args = tuple(apply_layered_morphism(F, source, a) for a in obj.args)
        blocks = tuple(F.block(b, source) for b in obj.blocks)
        layer = F.layers[obj.layer] if obj.layer is not None else None
        name = obj.name
        if obj.rule == "int-gen":
            name = F.generators.get(obj.layer, {}).get(obj.name, obj.name)
        elif obj.rule in ("int-box", "ext-gen", "ext-gen-op"):
            name = F.functors[obj.name]
        return LTerm(obj.rule, args, name, blocks, layer)
    raise SortError(f"cannot translate {obj!r}")


def identity_morphism(sig: LayeredSignature) -> LayeredMorphism:
    return LayeredMorphism({w: w for w in sig.layers}, {f: f for f in sig.functors})


TERM_GRAMMAR = r"""
    ?comp: etensor (";" etensor)*
    ?etensor: itensor ("*" itensor)*
    ?itensor: atom ("&" atom)*
    ?atom: NAME                            -> gen
         | "id" "[" [type] "]"             -> ident
         | NAME "(" arg ("," arg)* ")"     -> call
         | "(" comp ")"
    ?arg: block | comp
    type: block ("," block)*
    block: NAME ":" prime*
    prime: NAME                            -> colour
         | NAME "(" prime* ")"             -> applied

    NAME: /[^\W\d][\w.']*/

    %import common.WS
    %ignore WS
"""

_parser = Lark(TERM_GRAMMAR, start=["comp", "type"])

KEYWORDS = {"ext": "ext-gen", "coext": "ext-gen-op", "mon": "monoid", "comon": "comonoid",
            "unit": "monoid-unit", "counit": "counit", "diag": "diag", "del": "diag-counit",
            "codiag": "codiag", "codel": "codiag-unit", "swap": "swap", "box": "int-box"}


class _Raw(Transformer):
    def colour(self, args):
        return [str(args[0])]

    def applied(self, args):
        f = str(args[0])
        return [apply_prime(f, p) for group in args[1:] for p in group]

    def block(self, args):
        return Block(str(args[0]), tuple(p for group in args[1:] for p in group))

    def type(self, args):
        return tuple(args)

    def gen(self, args):
        return ("gen", str(args[0]))

    def ident(self, args):
        return ("id", args[0] if args and args[0] is not None else ())

    def call(self, args):
        return ("call", str(args[0]), list(args[1:]))

    def comp(self, args):
        return ("comp", list(args))

    def etensor(self, args):
        return ("etensor", list(args))

    def itensor(self, args):
        return ("itensor", list(args))


def _build(raw, sig: LayeredSignature) -> LTerm:
    kind = raw[0]
    if kind == "gen":
        layer, g = sig.resolve_generator(raw[1])
        return int_gen(layer, g)
    if kind == "id":
        T = raw[1]
        if len(T) == 1 and not T[0].word:
            return LTerm("int-unit", layer=T[0].layer)
        return identity_term(T)
    if kind == "comp":
        return comp(*(_build(r, sig) for r in raw[1]))
    if kind == "etensor":
        return ext_tensor(*(_build(r, sig) for r in raw[1]))
    if kind == "itensor":
        return int_tensor(*(_build(r, sig) for r in raw[1]))
    _, word, args = raw
    if word not in KEYWORDS:
        raise SortError(f"unknown constructor {word!r}")
    rule = KEYWORDS[word]
    if rule == "int-box":
        f = args[0]
        if not (isinstance(f, tuple) and f[0] == "gen"):
            raise SortError("box expects a boundary generator name first")
        return box(f[1], _build(args[1], sig))
    if rule in ("monoid-unit", "counit"):
        (w,) = args
        return LTerm(rule, layer=w[1])
    if rule in ("ext-gen", "ext-gen-op"):
        f, b = args
        return LTerm(rule, name=f[1], blocks=(b,))
    return LTerm(rule, blocks=tuple(args))


def parse_lterm(text: str, sig: LayeredSignature, path=None, line=None) -> LTerm:
    try:
        raw = _Raw().transform(_parser.parse(text, start="comp"))
        return _build(raw, sig)
    except LarkError as e:
        raise ParseError(f"cannot parse layered term {text!r}: {e}", path, line) from None
    except (TypeError, ValueError, IndexError) as e:
        if isinstance(e, SortError):
            raise
        raise ParseError(f"malformed layered term {text!r}", path, line) from None


def parse_ltype(text: str, sig: LayeredSignature, path=None, line=None) -> LType:
    if text.strip() in ("", "ε"):
        return ()
    try:
        blocks = _Raw().transform(_parser.parse(text, start="type"))
    except LarkError as e:
        raise ParseError(f"cannot parse type {text!r}: {e}", path, line) from None
    return tuple(check_block(sig, b) for b in blocks)
