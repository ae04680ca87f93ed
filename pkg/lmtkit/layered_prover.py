"""Layered theories and the bounded 1-level prover.

Terms are encoded as slice diagrams. Every block ``A:ω`` of a type becomes the
wires ``[ω  p@ω ...  ω]``. Internal generators are nodes on prime wires and
``int-box`` is pushed onto them, so int-box functoriality and the internal
monoidal identities hold in the encoding itself. External constructors are
nodes that consume and produce whole bracket groups.

Sliding an internal generator through an external node is a procedural move;
the remaining structural identities (monoid and comonoid packs, monoidality
of boundaries, symmetry involution) are instantiated on the blocks that occur
in the goal and used as ordinary diagram rules.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import SortError
from .layered_syntax import (Block, LTerm, LType, LayeredSignature, SortingProcedure, apply_block,
                             comp, dual_term, ext_gen, ext_tensor, format_lterm, format_type,
                             identity_term, int_id, typecheck_term, types_congruent)
from .results import DISPROVED, PROVED, UNKNOWN, ProofResult
from .string_diagrams import (Diagram, Move, Moves, Node, Rule, Slice, arrangements_around, normal_form,
                              rule_moves, search, replay)

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]

EXTERNAL_LABELS = frozenset({"swap", "mon", "unit", "diag", "del", "comon", "counit",
                             "codiag", "codel", "cast"})


@dataclass(frozen=True)
class LEquation:
    name: str
    lhs: LTerm
    rhs: LTerm
    origin: str = "E1"


@dataclass
class LayeredTheory:
    """Signature, equations at three levels and the chosen 2-cells.

    ``e2`` holds pairs of 2-terms built by ``two_terms.parse_two_term``.
    """

    signature: LayeredSignature
    procedure: SortingProcedure = SortingProcedure.OPFIBRATIONAL
    e0: List[Tuple[Block, Block]] = field(default_factory=list)
    e1: List[LEquation] = field(default_factory=list)
    cells: Dict[str, Tuple[LTerm, LTerm]] = field(default_factory=dict)
    e2: List[Tuple[str, object, object]] = field(default_factory=list)
    structural: bool = True
    externally_symmetric: bool = True
    name: str = ""

    def __post_init__(self):
        if self.cells and self.procedure is not SortingProcedure.DEFLATIONAL:
            raise SortError(f"{self.procedure.value} theories have no generating 2-cells")

    def typecheck(self, t: LTerm):
        return typecheck_term(self.signature, t, self.procedure, self.e0)

    def sort(self, t: LTerm) -> Tuple[LType, LType]:
        return self.typecheck(t).sort


def validate_theory(th: LayeredTheory) -> List[str]:
    """Problems with E0, E1 and the 2-cells; empty when the theory is well formed."""
    problems = []
    for a, b in th.e0:
        if a.layer != b.layer:
            problems.append(f"0-equation {a} = {b} relates different layers")
    for eq in th.e1:
        try:
            if not _parallel(th, eq.lhs, eq.rhs):
                problems.append(f"1-equation {eq.name} is not parallel")
        except SortError as e:
            problems.append(f"1-equation {eq.name}: {e}")
    for name, (t, s) in sorted(th.cells.items()):
        try:
            if not _parallel(th, t, s):
                problems.append(f"2-cell {name} joins non-parallel terms")
        except SortError as e:
            problems.append(f"2-cell {name}: {e}")
    return problems


def _parallel(th: LayeredTheory, t: LTerm, s: LTerm) -> bool:
    (a, b), (c, d) = th.sort(t), th.sort(s)
    sig = th.signature
    return bool(types_congruent(sig, th.e0, a, c)) and bool(types_congruent(sig, th.e0, b, d))


# -- encoding -----------------------------------------------------------------

def wire(prime: str, layer: str) -> str:
    return f"{prime}@{layer}"


def encode_block(b: Block) -> Word:
    return (f"[{b.layer}",) + tuple(wire(p, b.layer) for p in b.word) + (f"{b.layer}]",)


def encode_type(T: LType) -> Word:
    return tuple(w for b in T for w in encode_block(b))


def groups(wires: Word) -> List[Tuple[int, int]]:
    """``(start, end)`` spans of the bracket groups, brackets included."""
    spans = []
    i = 0
    while i < len(wires):
        if not wires[i].startswith("["):
            raise SortError(f"unbalanced wires {' '.join(wires)}")
        closer = f"{wires[i][1:]}]"
        j = wires.index(closer, i + 1)
        spans.append((i, j + 1))
        i = j + 1
    return spans


def decode_group(wires: Word) -> Block:
    layer = wires[0][1:]
    return Block(layer, tuple(w.rsplit("@", 1)[0] for w in wires[1:-1]))


def is_internal_node(node: Node) -> bool:
    return not (node.label in EXTERNAL_LABELS or node.label.startswith(("ext:", "coext:")))


def box_node(sig: LayeredSignature, f: str, node: Node) -> Node:
    _, tgt = sig.functor(f)

    def lift(w):
        p = w.rsplit("@", 1)[0]
        return wire(f"{f}({p})", tgt)

    return Node(f"{f}({node.label})", tuple(lift(w) for w in node.dom), tuple(lift(w) for w in node.cod))


def unbox_node(sig: LayeredSignature, f: str, node: Node) -> Optional[Node]:
    src, tgt = sig.functor(f)
    head = f"{f}("
    if not (node.label.startswith(head) and node.label.endswith(")")):
        return None

    def lower(w):
        p, layer = w.rsplit("@", 1)
        if layer != tgt or not (p.startswith(head) and p.endswith(")")):
            return None
        return wire(p[len(head):-1], src)

    dom, cod = [lower(w) for w in node.dom], [lower(w) for w in node.cod]
    if None in dom or None in cod:
        return None
    return Node(node.label[len(head):-1], tuple(dom), tuple(cod))


def box_diagram(sig: LayeredSignature, f: str, d: Diagram) -> Diagram:
    _, tgt = sig.functor(f)

    def lift(ws):
        return tuple(wire(f"{f}({w.rsplit('@', 1)[0]})", tgt) for w in ws)

    slices = tuple(Slice(lift(s.left), box_node(sig, f, s.node), lift(s.right)) for s in d.slices)
    return Diagram(lift(d.dom), lift(d.cod), slices)


def _inner(th: LayeredTheory, t: LTerm) -> Tuple[Diagram, str]:
    """Encoding of an internal term on prime wires, with its layer."""
    sig = th.signature
    r = t.rule
    if r == "int-gen":
        dom, cod = sig.layer_sigs[t.layer].generators[t.name]
        node = Node(f"{t.layer}.{t.name}", tuple(wire(c, t.layer) for c in dom),
                    tuple(wire(c, t.layer) for c in cod))
        return Diagram.box(node), t.layer
    if r == "int-id":
        b = t.blocks[0]
        return Diagram.identity(encode_block(b)[1:-1]), b.layer
    if r == "int-unit":
        return Diagram.identity(()), t.layer
    if r == "int-box":
        inner, _ = _inner(th, t.args[0])
        return box_diagram(sig, t.name, inner), sig.functor(t.name)[1]
    x, layer = _inner(th, t.args[0])
    y, _ = _inner(th, t.args[1])
    return (x.then(y) if r == "comp" else x.tensor(y)), layer


def encode(th: LayeredTheory, t: LTerm) -> Diagram:
    """Slice diagram of a well-sorted term."""
    typed = th.typecheck(t)
    return _encode(th, t, typed.internal)


def _encode(th: LayeredTheory, t: LTerm, internal: Optional[bool] = None) -> Diagram:
    if internal is None:
        internal = th.typecheck(t).internal
    if internal:
        inner, layer = _inner(th, t)
        return inner.padded((f"[{layer}",), (f"{layer}]",))
    r = t.rule
    sig = th.signature
    if r == "ext-unit":
        return Diagram.identity(())
    if r == "ext-tensor":
        return _encode(th, t.args[0]).tensor(_encode(th, t.args[1]))
    if r == "comp":
        x, y = _encode(th, t.args[0]), _encode(th, t.args[1])
        if x.cod != y.dom:
            x = x.then(Diagram.box(Node("cast", x.cod, y.dom)))
        return x.then(y)
    label = {"swap": "swap", "monoid": "mon", "monoid-unit": "unit", "diag": "diag",
             "diag-counit": "del", "comonoid": "comon", "counit": "counit", "codiag": "codiag",
             "codiag-unit": "codel"}.get(r)
    if r == "ext-gen":
        label = f"ext:{t.name}"
    elif r == "ext-gen-op":
        label = f"coext:{t.name}"
    dom, cod = th.sort(t)
    return Diagram.box(Node(label, encode_type(dom), encode_type(cod)))


# -- sliding ------------------------------------------------------------------

Span = Tuple[int, int]


@dataclass(frozen=True)
class Route:
    """An item in dom group ``src`` reappears in cod group ``tgt``, offset by ``shift``.

    Ranges bound the item inside its group on each side; ``None`` as a group
    means the item is deleted (no target) or absorbed (no source).
    """

    src: Optional[int]
    tgt: Optional[int]
    shift: int = 0
    functor: Optional[Tuple[str, str]] = None
    src_range: Span = (0, 0)
    tgt_range: Span = (0, 0)
    whole: bool = False


def routes(node: Node) -> List[Route]:
    dg = [e - s for s, e in groups(node.dom)]
    cg = [e - s for s, e in groups(node.cod)]
    label = node.label
    if label.startswith(("ext:", "coext:")):
        kind, f = label.split(":", 1)
        return [Route(0, 0, 0, ("box" if kind == "ext" else "unbox", f), (1, dg[0] - 1), (1, cg[0] - 1))]
    if label == "mon":
        a = dg[0] - 2
        return [Route(0, 0, 0, None, (1, dg[0] - 1), (1, 1 + a)),
                Route(1, 0, a, None, (1, dg[1] - 1), (1 + a, cg[0] - 1))]
    if label == "comon":
        a = cg[0] - 2
        return [Route(0, 0, 0, None, (1, 1 + a), (1, cg[0] - 1)),
                Route(0, 1, -a, None, (1 + a, dg[0] - 1), (1, cg[1] - 1))]
    if label == "diag":
        return [Route(0, t, 0, None, (1, dg[0] - 1), (1, cg[t] - 1), True) for t in (0, 1)]
    if label == "codiag":
        return [Route(s, 0, 0, None, (1, dg[s] - 1), (1, cg[0] - 1), True) for s in (0, 1)]
    if label == "swap":
        return [Route(0, 1, 0, None, (1, dg[0] - 1), (1, cg[1] - 1), True),
                Route(1, 0, 0, None, (1, dg[1] - 1), (1, cg[0] - 1), True)]
    if label == "del":
        return [Route(0, None, 0, None, (1, dg[0] - 1), (0, 0), True)]
    if label == "codel":
        return [Route(None, 0, 0, None, (0, 0), (1, cg[0] - 1), True)]
    return []


def _covers(span: Span, whole: bool, offset: int, length: int, group_len: int) -> bool:
    if offset == 0 and length == group_len:
        return whole
    return span[0] <= offset and offset + length <= span[1]


def _single_group(ws: Word) -> bool:
    try:
        return len(groups(ws)) == 1
    except (SortError, ValueError):
        return False


def _locate(wires: Word, pos: int, length: int) -> Optional[Tuple[int, int]]:
    """Group index and offset of the span ``[pos, pos+length)``."""
    try:
        spans = groups(wires)
    except (SortError, ValueError):
        return None
    for g, (s, e) in enumerate(spans):
        if s <= pos and pos + length <= e and pos < e:
            return g, pos - s
    return None


def _movable(node: Node, whole: bool) -> bool:
    if whole:
        return _single_group(node.dom) and _single_group(node.cod)
    return is_internal_node(node)


def _transport(sig: LayeredSignature, route: Route, node: Node, forward: bool) -> Optional[Node]:
    if route.functor is None:
        return node
    kind, f = route.functor
    if (kind == "box") == forward:
        return box_node(sig, f, node)
    return unbox_node(sig, f, node)


def _segment(wires: Word, left: int, right: int) -> Word:
    return wires[left:len(wires) - right]


def _component(rts: Sequence[Route], dlen: Sequence[int], clen: Sequence[int],
               start: Tuple[str, int, int], length: int):
    """Groups that must move together: ``(sources, targets, routes)`` with offsets."""
    sources: Dict[int, int] = {}
    targets: Dict[int, int] = {}
    side, g, off = start
    (sources if side == "src" else targets)[g] = off
    used: List[Route] = []
    changed = True
    while changed:
        changed = False
        for r in rts:
            if r in used:
                continue
            hit = False
            if r.src is not None and r.src in sources:
                hit = _covers(r.src_range, r.whole, sources[r.src], length, dlen[r.src])
            elif r.tgt is not None and r.tgt in targets:
                hit = _covers(r.tgt_range, r.whole, targets[r.tgt], length, clen[r.tgt])
            if not hit:
                continue
            used.append(r)
            changed = True
            if r.src is not None and r.tgt is not None:
                if r.src in sources:
                    want = sources[r.src] + r.shift
                    if targets.setdefault(r.tgt, want) != want:
                        return None
                else:
                    want = targets[r.tgt] - r.shift
                    if sources.setdefault(r.src, want) != want:
                        return None
    if not used:
        return None
    return sources, targets, used


class SlideMoves:
    """Moves an internal generator, or a one-block external node, through an external node."""

    def __init__(self, sig: LayeredSignature):
        self.sig = sig

    def __call__(self, d: Diagram) -> Iterator[Move]:
        seen = set()
        for i, s in enumerate(d.slices):
            if is_internal_node(s.node) or s.node.label in ("cast", "unit", "counit"):
                continue
            name = f"slide[{s.node.label.split(':', 1)[0]}]"
            tries = [("->", self._forward, lin, at) for lin, at in arrangements_around(d, i, below=True)]
            tries += [("<-", self._backward, lin, at) for lin, at in arrangements_around(d, i, below=False)]
            for direction, step, lin, at in tries:
                moved = step(lin, at)
                if moved is None:
                    continue
                candidate = Diagram(d.dom, d.cod, moved)
                try:
                    candidate.check()
                except SortError:
                    continue
                nf = normal_form(candidate)
                key = (name, direction, nf)
                if nf != d and key not in seen:
                    seen.add(key)
                    yield name, direction, nf

    def _collect(self, block: Sequence[Slice], wanted: Dict[int, int], nl: int, nr: int,
                 facing: str) -> Optional[Dict[int, Node]]:
        found: Dict[int, Node] = {}
        for S in block:
            wires = S.outputs if facing == "cod" else S.inputs
            side = S.node.cod if facing == "cod" else S.node.dom
            loc = _locate(_segment(wires, nl, nr), len(S.left) - nl, len(side))
            if loc is None or wanted.get(loc[0]) != loc[1] or loc[0] in found:
                return None
            found[loc[0]] = S.node
        return found

    def _common(self, used: Sequence[Route], found: Dict[int, Node], forward: bool) -> Optional[Node]:
        base = None
        for r in used:
            key = r.src if forward else r.tgt
            if key is None:
                continue
            moved = _transport(self.sig, r, found[key], forward)
            if moved is None or (base is not None and moved != base):
                return None
            base = moved
        return base

    def _forward(self, lin: Tuple[Slice, ...], i: int) -> Optional[Tuple[Slice, ...]]:
        """Items just below the node move above it."""
        N = lin[i]
        if i == 0:
            return None
        nl, nr = len(N.left), len(N.right)
        P = lin[i - 1]
        loc = _locate(N.node.dom, len(P.left) - nl, len(P.node.cod))
        if len(P.left) < nl or len(P.right) < nr or loc is None:
            return None
        dlen = [e - s for s, e in groups(N.node.dom)]
        clen = [e - s for s, e in groups(N.node.cod)]
        comp_ = _component(routes(N.node), dlen, clen, ("src", loc[0], loc[1]), len(P.node.cod))
        if comp_ is None:
            return None
        sources, targets, used = comp_
        whole = loc[1] == 0 and len(P.node.cod) == dlen[loc[0]]
        k = len(sources)
        if k > i or not _movable(P.node, whole):
            return None
        block = lin[i - k:i]
        found = self._collect(block, sources, nl, nr, "cod")
        if found is None:
            return None
        base = self._common(used, found, True) if targets else P.node
        if base is None:
            return None
        top = N.outputs
        placed = []
        for tg in sorted(targets, reverse=True):
            gp = nl + groups(_segment(top, nl, nr))[tg][0] + targets[tg]
            if top[gp:gp + len(base.cod)] != base.cod:
                return None
            placed.append(Slice(top[:gp], base, top[gp + len(base.cod):]))
            top = top[:gp] + base.dom + top[gp + len(base.cod):]
        placed.reverse()
        node = Node(N.node.label, _segment(block[0].inputs, nl, nr), _segment(top, nl, nr))
        return lin[:i - k] + (Slice(N.left, node, N.right),) + tuple(placed) + lin[i + 1:]

    def _backward(self, lin: Tuple[Slice, ...], i: int) -> Optional[Tuple[Slice, ...]]:
        """Items just above the node move below it."""
        N = lin[i]
        if i + 1 >= len(lin):
            return None
        nl, nr = len(N.left), len(N.right)
        P = lin[i + 1]
        loc = _locate(N.node.cod, len(P.left) - nl, len(P.node.dom))
        if len(P.left) < nl or len(P.right) < nr or loc is None:
            return None
        dlen = [e - s for s, e in groups(N.node.dom)]
        clen = [e - s for s, e in groups(N.node.cod)]
        comp_ = _component(routes(N.node), dlen, clen, ("tgt", loc[0], loc[1]), len(P.node.dom))
        if comp_ is None:
            return None
        sources, targets, used = comp_
        whole = loc[1] == 0 and len(P.node.dom) == clen[loc[0]]
        k = len(targets)
        block = lin[i + 1:i + 1 + k]
        if len(block) < k or not _movable(P.node, whole):
            return None
        found = self._collect(block, targets, nl, nr, "dom")
        if found is None:
            return None
        base = self._common(used, found, False) if sources else P.node
        if base is None:
            return None
        bottom = N.inputs
        placed = []
        for sg in sorted(sources, reverse=True):
            gp = nl + groups(_segment(bottom, nl, nr))[sg][0] + sources[sg]
            if bottom[gp:gp + len(base.dom)] != base.dom:
                return None
            placed.append(Slice(bottom[:gp], base, bottom[gp + len(base.dom):]))
            bottom = bottom[:gp] + base.cod + bottom[gp + len(base.dom):]
        node = Node(N.node.label, _segment(bottom, nl, nr), _segment(block[-1].outputs, nl, nr))
        return lin[:i] + tuple(placed) + (Slice(N.left, node, N.right),) + lin[i + 1 + k:]


def push_up(sig: LayeredSignature, d: Diagram, limit: int = 200) -> Diagram:
    """Slide items upward (and into ``codel``) until stuck: a canonical form up to sliding."""
    slide = SlideMoves(sig)
    current = normal_form(d)
    for _ in range(limit):
        step = next((new for name, direction, new in slide(current)
                     if (direction == "->") != (name == "slide[codel]")), None)
        if step is None:
            break
        current = step
    return current


# -- structural schemas ---------------------------------------------------------

@dataclass(frozen=True)
class SchemaInfo:
    level: int
    family: str
    name: str
    origin: str
    realised_by: str


def structural_equations(th: LayeredTheory) -> List[SchemaInfo]:
    """Every structural schema the theory's procedure and flags switch on."""
    out = [
        SchemaInfo(0, "monoid", "concat.assoc", "structural 0-equations", "canonical types"),
        SchemaInfo(0, "monoid", "concat.unit", "structural 0-equations", "canonical types"),
        SchemaInfo(0, "functor", "boundary.distributes", "structural 0-equations", "canonical types"),
        SchemaInfo(0, "functor", "boundary.unit", "structural 0-equations", "canonical types"),
    ]
    if not th.structural:
        return out
    for name in ("ext.assoc", "ext.unit", "int.assoc", "int.unit", "comp.assoc", "comp.unit",
                 "interchange.ext", "interchange.int", "id.tensor", "box.functorial", "box.monoidal"):
        out.append(SchemaInfo(1, "structural", name, "structural 1-equations", "diagram encoding"))
    if th.externally_symmetric:
        out.append(SchemaInfo(1, "symmetry", "swap.involution", "external symmetry", "instantiated rule"))
        out.append(SchemaInfo(1, "symmetry", "swap.natural", "external symmetry", "slide moves"))
    proc = th.procedure
    families = []
    if proc in (SortingProcedure.OPFIBRATIONAL, SortingProcedure.DEFLATIONAL):
        families.append(("opfibrational", ""))
    if proc in (SortingProcedure.FIBRATIONAL, SortingProcedure.DEFLATIONAL):
        families.append(("fibrational", "co"))
    for fam, prefix in families:
        for name in ("diag.coassoc", "diag.counit", "diag.natural", "del.natural"):
            out.append(SchemaInfo(1, f"{fam} uniform pack", prefix + name,
                                  "uniform (co)monoid equations",
                                  "slide moves" if name.endswith("natural") else "instantiated rule"))
        for name in ("monoid.assoc", "monoid.unit", "monoid.slide"):
            out.append(SchemaInfo(1, f"{fam} monoidal layer", prefix + name,
                                  "monoidal category identities (reconstructed)",
                                  "slide moves" if name.endswith("slide") else "instantiated rule"))
        for name in ("ext.monoidal", "ext.unit", "ext.slide"):
            out.append(SchemaInfo(1, f"{fam} boundary", prefix + name,
                                  "monoidal functor identities (reconstructed)",
                                  "slide moves" if name.endswith("slide") else "instantiated rule"))
    for name in ("vcomp.assoc", "vcomp.unit", "hcomp.assoc", "hcomp.unit", "tensor.assoc",
                 "interchange.vh", "interchange.vt"):
        out.append(SchemaInfo(2, "structural", name, "structural 2-equations", "2-term normalisation"))
    if proc is SortingProcedure.DEFLATIONAL:
        for name in ("zigzag.left", "zigzag.right", "unit.slide", "counit.slide"):
            out.append(SchemaInfo(2, "deflational", name, "structural deflational equations",
                                  "instantiated 2-rule"))
    return out


def _blocks_in(d: Diagram) -> Set[Block]:
    found: Set[Block] = set()
    wire_lists = [d.dom, d.cod] + [w for s in d.slices for w in (s.inputs, s.outputs)]
    for ws in wire_lists:
        for s, e in groups(ws):
            found.add(decode_group(ws[s:e]))
    return found


def _splits(word: Word, parts: int) -> Iterator[Tuple[Word, ...]]:
    n = len(word)
    for cuts in itertools.combinations_with_replacement(range(n + 1), parts - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(word[bounds[j]:bounds[j + 1]] for j in range(parts))


def _opf_rules(th: LayeredTheory, blocks: Set[Block]) -> List[Tuple[str, LTerm, LTerm]]:
    sig = th.signature
    out = []
    layers = sorted({b.layer for b in blocks})
    for b in sorted(blocks):
        w = b.layer
        A = b
        i = int_id(A)
        out.append((f"diag.coassoc[{A}]", comp(LTerm("diag", blocks=(A,)), ext_tensor(LTerm("diag", blocks=(A,)), i)),
                    comp(LTerm("diag", blocks=(A,)), ext_tensor(i, LTerm("diag", blocks=(A,))))))
        out.append((f"diag.counit_left[{A}]", comp(LTerm("diag", blocks=(A,)),
                                                    ext_tensor(LTerm("diag-counit", blocks=(A,)), i)), i))
        out.append((f"diag.counit_right[{A}]", comp(LTerm("diag", blocks=(A,)),
                                                     ext_tensor(i, LTerm("diag-counit", blocks=(A,)))), i))
        unit = LTerm("monoid-unit", layer=w)
        empty = Block(w, ())
        out.append((f"monoid.unit_left[{A}]", comp(ext_tensor(unit, i), LTerm("monoid", blocks=(empty, A))), i))
        out.append((f"monoid.unit_right[{A}]", comp(ext_tensor(i, unit), LTerm("monoid", blocks=(A, empty))), i))
        for x, y, z in _splits(b.word, 3):
            X, Y, Z = Block(w, x), Block(w, y), Block(w, z)
            lhs = comp(ext_tensor(LTerm("monoid", blocks=(X, Y)), int_id(Z)), LTerm("monoid", blocks=(Block(w, x + y), Z)))
            rhs = comp(ext_tensor(int_id(X), LTerm("monoid", blocks=(Y, Z))), LTerm("monoid", blocks=(X, Block(w, y + z))))
            out.append((f"monoid.assoc[{X}|{Y}|{Z}]", lhs, rhs))
        for f, (src, tgt) in sorted(sig.functors.items()):
            if src != w:
                continue
            for x, y in _splits(b.word, 2):
                X, Y = Block(w, x), Block(w, y)
                lhs = comp(LTerm("monoid", blocks=(X, Y)), ext_gen(f, b))
                rhs = comp(ext_tensor(ext_gen(f, X), ext_gen(f, Y)),
                           LTerm("monoid", blocks=(apply_block(sig, f, X), apply_block(sig, f, Y))))
                out.append((f"ext.monoidal[{f};{X}|{Y}]", lhs, rhs))
    for w in layers:
        for f, (src, tgt) in sorted(sig.functors.items()):
            if src == w:
                out.append((f"ext.unit[{f}]", comp(LTerm("monoid-unit", layer=w), ext_gen(f, Block(w, ()))),
                            LTerm("monoid-unit", layer=tgt)))
    return out


def _preimages(sig: LayeredSignature, blocks: Set[Block]) -> Set[Block]:
    found = set(blocks)
    frontier = set(blocks)
    while frontier:
        nxt = set()
        for b in frontier:
            for f, (src, tgt) in sig.functors.items():
                if tgt != b.layer:
                    continue
                head = f"{f}("
                if all(p.startswith(head) and p.endswith(")") for p in b.word):
                    pre = Block(src, tuple(p[len(head):-1] for p in b.word))
                    if pre not in found:
                        found.add(pre)
                        nxt.add(pre)
        frontier = nxt
    return found


def instantiate_rules(th: LayeredTheory, diagrams: Sequence[Diagram]) -> List[Rule]:
    """Structural and user 1-equations as diagram rules, instantiated on the goal's blocks."""
    rules = [Rule(eq.name, encode(th, eq.lhs), encode(th, eq.rhs), eq.origin) for eq in th.e1]
    if not th.structural:
        return rules
    blocks: Set[Block] = set()
    for d in diagrams:
        blocks |= _blocks_in(d)
    blocks = _preimages(th.signature, blocks)
    proc = th.procedure
    pairs: List[Tuple[str, LTerm, LTerm, str]] = []
    opf = _opf_rules(th, blocks)
    if proc in (SortingProcedure.OPFIBRATIONAL, SortingProcedure.DEFLATIONAL):
        pairs += [(n, l, r, "opfibrational") for n, l, r in opf]
    if proc in (SortingProcedure.FIBRATIONAL, SortingProcedure.DEFLATIONAL):
        pairs += [(f"co{n}", dual_term(l), dual_term(r), "fibrational") for n, l, r in opf]
    if th.externally_symmetric:
        for A, B in itertools.product(sorted(blocks), repeat=2):
            pairs.append((f"swap.involution[{A}|{B}]",
                          comp(LTerm("swap", blocks=(A, B)), LTerm("swap", blocks=(B, A))),
                          identity_term((A, B)), "external symmetry"))
    for name, lhs, rhs, origin in pairs:
        try:
            rules.append(Rule(name, encode(th, lhs), encode(th, rhs), origin))
        except SortError:
            continue
    logger.debug("instantiated %d rules on %d blocks", len(rules), len(blocks))
    return rules


def layered_moves(th: LayeredTheory, rules: Sequence[Rule]) -> Moves:
    by_rule = rule_moves(rules)
    slide = SlideMoves(th.signature)

    def moves(d: Diagram) -> Iterator[Move]:
        yield from by_rule(d)
        if th.structural:
            yield from slide(d)
    return moves


def prove_eq1(th: LayeredTheory, t: LTerm, s: LTerm, budget: int = 20000,
              max_slices: Optional[int] = None) -> ProofResult:
    """Bounded search for a derivation of ``t = s``; Proved results carry a replayable trace."""
    (a, b), (c, d) = th.sort(t), th.sort(s)
    if not (types_congruent(th.signature, th.e0, a, c) and types_congruent(th.signature, th.e0, b, d)):
        raise SortError(f"terms are not parallel: {format_lterm(t)} : ({format_type(a)} | {format_type(b)}) "
                        f"vs {format_lterm(s)} : ({format_type(c)} | {format_type(d)})")
    left, right = encode(th, t), encode(th, s)
    if normal_form(left) == normal_form(right):
        return ProofResult(PROVED, [], 0, "structurally equal")
    if not th.structural and not th.e1:
        return ProofResult(DISPROVED, [], 0, "distinct normal forms and no equations")
    rules = instantiate_rules(th, [left, right])
    result = search(left, right, layered_moves(th, rules), budget, max_slices)
    if result.status == UNKNOWN and not th.e1:
        return ProofResult(UNKNOWN, [], result.explored,
                           f"{result.reason}; structural normal forms differ")
    return result


def replay_eq1(th: LayeredTheory, t: LTerm, s: LTerm, trace: Sequence[Dict]) -> bool:
    """Re-check a trace of ``prove_eq1``, raw or as read back from a JSON report."""
    left, right = encode(th, t), encode(th, s)
    rules = instantiate_rules(th, [left, right])
    moves = layered_moves(th, rules)
    if all(isinstance(step['before'], Diagram) for step in trace):
        return replay(trace, left, right, moves)
    current = normal_form(left)
    for step in trace:
        if str(current) != step['before']:
            return False
        nxt = [new for rule, _, new in moves(current) if rule == step['rule'] and str(new) == step['after']]
        if not nxt:
            return False
        current = nxt[0]
    return current == normal_form(right)


def sliding_goal(f: str, x: LTerm, th: LayeredTheory) -> Tuple[LTerm, LTerm]:
    """``x ; ext(f, B)`` and ``ext(f, A) ; box(f, x)`` for an internal ``x : (A | B)``."""
    typed = th.typecheck(x)
    if not typed.internal:
        raise SortError("sliding needs an internal term", node=format_lterm(x))
    (A,), (B,) = typed.sort
    return comp(x, ext_gen(f, B)), comp(ext_gen(f, A), LTerm("int-box", (x,), name=f))
