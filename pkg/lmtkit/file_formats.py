"""Readers and writers for the plain-text fixture formats.

All formats are line based. ``#`` starts a comment. A line ending in ``{``
opens a nested block that a matching ``}`` line closes; blocks embed the body
of another format (a category inside a functor file, a layer inside a
layered theory). A keyword line without payload opens a section: following
lines without a keyword belong to it.

``.fc``   NAME, OBJECTS a b, MORPHISMS f: a -> b, COMPOSE f;g = h, IDENTITY a = m
``.fun``  NAME, SOURCE {..} | SOURCE path.fc, TARGET ..., OBJECTS a -> x, MORPHISMS f -> u
``.idx``  NAME, BASE {..}, FIBRE x {..}, REINDEX f { OBJECTS .. MORPHISMS .. }
``.mth``  NAME, USE theory [colours], COLOURS a b, GENERATORS m : a a -> a, EQUATIONS [name:] lhs = rhs
``.eq``   one goal per line, ``[name:] lhs = rhs``
``.lmt``  NAME, MODE, LAYERS, LAYER ω {..}, GENERATORS f: ω -> τ, E0, E1, CELLS name : t => s,
          E2, STRUCTURAL on|off, SYMMETRIC on|off
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import LmtError, ParseError, SortError
from .fincat import FinCategory, FinFunctor
from .grothendieck import StrictOpIndexedCat
from .layered_prover import LEquation, LayeredTheory
from .layered_syntax import LayeredSignature, SortingProcedure, parse_lterm, parse_ltype
from .montheory import BUILTIN_THEORIES, MonSignature, MonTheory, builtin_theory, extend_theory, parse_term
from .opfibration_check import FuncOver
from .two_terms import parse_two_term

logger = logging.getLogger(__name__)

_DECL = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_COMPOSE = re.compile(r"^(\S+?)\s*;\s*(\S+)\s*=\s*(\S+)$")
_MAP = re.compile(r"^(\S+)\s*->\s*(\S+)$")
_IDENTITY = re.compile(r"^(\S+)\s*=\s*(\S+)$")
_NAMED = re.compile(r"^([\w.\-']+)\s*:\s*(.*)$")
_GENERATOR = re.compile(r"^(\S+)\s*:\s*(.*?)\s*->\s*(.*)$")


@dataclass
class Line:
    number: int
    keyword: Optional[str]
    payload: str


@dataclass
class Block:
    number: int
    keyword: str
    argument: str
    body: List[Union["Line", "Block"]] = field(default_factory=list)


Item = Union[Line, Block]


@dataclass
class Goal:
    name: str
    lhs: str
    rhs: str
    line: int


def _split_keyword(text: str, keywords: Sequence[str]) -> Tuple[Optional[str], str]:
    head, _, rest = text.partition(" ")
    if head in keywords:
        return head, rest.strip()
    return None, text


def read_items(text: str, keywords: Sequence[str], path=None) -> List[Item]:
    """Tokenise a file into keyword lines and nested blocks."""
    root: List[Item] = []
    stack: List[List[Item]] = [root]
    opened: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped == "}":
            if len(stack) == 1:
                raise ParseError("unbalanced '}'", path, number)
            stack.pop()
            opened.pop()
            continue
        if stripped.endswith("{"):
            head = stripped[:-1].strip()
            keyword, argument = _split_keyword(head, keywords)
            if keyword is None:
                raise ParseError(f"unknown block {head!r}", path, number)
            block = Block(number, keyword, argument)
            stack[-1].append(block)
            stack.append(block.body)
            opened.append(number)
            continue
        keyword, payload = _split_keyword(stripped, keywords)
        stack[-1].append(Line(number, keyword, payload))
    if opened:
        raise ParseError("block is never closed", path, opened[-1])
    return root


def _sections(items: Sequence[Item], path=None):
    """Yield (keyword, payload, line) with section keywords carried to continuation lines."""
    current = None
    for item in items:
        if isinstance(item, Block):
            current = None
            yield item.keyword, item, item.number
            continue
        if item.keyword is not None:
            current = item.keyword
            if item.payload:
                yield item.keyword, item.payload, item.number
            continue
        if current is None:
            raise ParseError(f"line outside any section: {item.payload!r}", path, item.number)
        yield current, item.payload, item.number


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path) from None


# -- categories ---------------------------------------------------------------

FC_KEYWORDS = ("NAME", "OBJECTS", "MORPHISMS", "COMPOSE", "IDENTITY")


def category_from_items(items: Sequence[Item], path=None, default_name: str = "") -> FinCategory:
    name = default_name
    objects: List[str] = []
    morphisms: Dict[str, Tuple[str, str]] = {}
    identity: Dict[str, str] = {}
    compose: Dict[Tuple[str, str], Tuple[str, int]] = {}
    for keyword, payload, line in _sections(items, path):
        if isinstance(payload, Block):
            raise ParseError(f"{keyword} does not take a block", path, line)
        if keyword == "NAME":
            name = payload
        elif keyword == "OBJECTS":
            for o in payload.split():
                if o in objects:
                    raise ParseError(f"object {o!r} declared twice", path, line)
                objects.append(o)
        elif keyword == "MORPHISMS":
            m = _DECL.match(payload)
            if not m:
                raise ParseError(f"expected 'f: a -> b', got {payload!r}", path, line)
            f, a, b = m.groups()
            for o in (a, b):
                if o not in objects:
                    raise ParseError(f"unknown object {o!r}", path, line)
            if f in morphisms:
                raise ParseError(f"morphism {f!r} declared twice", path, line)
            morphisms[f] = (a, b)
        elif keyword == "IDENTITY":
            m = _IDENTITY.match(payload)
            if not m or m.group(1) not in objects:
                raise ParseError(f"expected 'object = morphism', got {payload!r}", path, line)
            identity[m.group(1)] = m.group(2)
        elif keyword == "COMPOSE":
            m = _COMPOSE.match(payload)
            if not m:
                raise ParseError(f"expected 'f;g = h', got {payload!r}", path, line)
            compose[(m.group(1), m.group(2))] = (m.group(3), line)
    for x in objects:
        i = identity.setdefault(x, f"id_{x}")
        if i in morphisms and morphisms[i] != (x, x):
            raise ParseError(f"identity {i!r} is declared with another type", path)
    all_morphisms = {identity[x]: (x, x) for x in objects}
    all_morphisms.update(morphisms)
    table: Dict[Tuple[str, str], str] = {}
    for (f, g), (h, line) in compose.items():
        for m in (f, g, h):
            if m not in all_morphisms:
                raise ParseError(f"unknown morphism {m!r}", path, line)
        if all_morphisms[f][1] != all_morphisms[g][0]:
            raise ParseError(f"{f};{g} is not composable", path, line)
        if all_morphisms[h] != (all_morphisms[f][0], all_morphisms[g][1]):
            raise ParseError(f"{h} has the wrong type for {f};{g}", path, line)
        table[(f, g)] = h
    for m, (a, b) in all_morphisms.items():
        table.setdefault((identity[a], m), m)
        table.setdefault((m, identity[b]), m)
    return FinCategory(objects, all_morphisms, table, identity, name=name)


def parse_category(path) -> FinCategory:
    text = _read(path)
    return category_from_items(read_items(text, FC_KEYWORDS, path), path, Path(path).stem)


def format_category(c: FinCategory) -> str:
    """``.fc`` text; only composites not forced by identities are listed."""
    lines = [f"NAME {c.name}" if c.name else "# category", f"OBJECTS {' '.join(c.objects)}"]
    for x in c.objects:
        if c.identity[x] != f"id_{x}":
            lines.append(f"IDENTITY {x} = {c.identity[x]}")
    arrows = [m for m in c.morphisms if not c.is_identity(m)]
    if arrows:
        lines.append("MORPHISMS")
        lines.extend(f"  {m}: {c.dom[m]} -> {c.cod[m]}" for m in arrows)
    composites = [(f, g) for f, g in c.composable_pairs()
                  if not c.is_identity(f) and not c.is_identity(g) and (f, g) in c.compose_table]
    if composites:
        lines.append("COMPOSE")
        lines.extend(f"  {f};{g} = {c.compose_table[(f, g)]}" for f, g in composites)
    return "\n".join(lines) + "\n"


# -- functors -----------------------------------------------------------------

FUN_KEYWORDS = ("NAME", "SOURCE", "TARGET", "OBJECTS", "MORPHISMS")


def _category_operand(payload, path, line, label: str) -> FinCategory:
    if isinstance(payload, Block):
        return category_from_items(payload.body, path, label)
    target = Path(path).parent / payload if path is not None else Path(payload)
    if not target.exists():
        raise ParseError(f"{label} file {payload!r} not found", path, line)
    return parse_category(target)


def functor_from_items(items: Sequence[Item], path=None, default_name: str = "") -> FinFunctor:
    name = default_name
    source = target = None
    omap: Dict[str, str] = {}
    mmap: Dict[str, str] = {}
    for keyword, payload, line in _sections(items, path):
        if keyword == "NAME":
            name = payload
        elif keyword == "SOURCE":
            source = _category_operand(payload, path, line, "source")
        elif keyword == "TARGET":
            target = _category_operand(payload, path, line, "target")
        else:
            if source is None or target is None:
                raise ParseError("SOURCE and TARGET must come before the maps", path, line)
            m = _MAP.match(payload) if isinstance(payload, str) else None
            if not m:
                raise ParseError(f"expected 'a -> x', got {payload!r}", path, line)
            a, x = m.groups()
            if keyword == "OBJECTS":
                if a not in source.objects or x not in target.objects:
                    raise ParseError(f"unknown object in {payload!r}", path, line)
                omap[a] = x
            else:
                if a not in source.dom or x not in target.dom:
                    raise ParseError(f"unknown morphism in {payload!r}", path, line)
                mmap[a] = x
    if source is None or target is None:
        raise ParseError("functor needs SOURCE and TARGET", path)
    missing = [o for o in source.objects if o not in omap]
    if missing:
        raise ParseError(f"object {missing[0]!r} has no image", path)
    for x in source.objects:
        mmap.setdefault(source.identity[x], target.identity[omap[x]])
    missing = [m for m in source.morphisms if m not in mmap]
    if missing:
        raise ParseError(f"morphism {missing[0]!r} has no image", path)
    return FinFunctor(source, target, omap, mmap, name=name)


def parse_functor(path) -> FuncOver:
    F = functor_from_items(read_items(_read(path), FUN_KEYWORDS + FC_KEYWORDS, path), path, Path(path).stem)
    return FuncOver(F)


def format_functor(F: FinFunctor) -> str:
    def indent(text):
        return "".join(f"  {line}\n" for line in text.splitlines())

    parts = [f"NAME {F.name}" if F.name else "# functor",
             "SOURCE {", indent(format_category(F.source)).rstrip("\n"), "}",
             "TARGET {", indent(format_category(F.target)).rstrip("\n"), "}", "OBJECTS"]
    parts.extend(f"  {a} -> {F.omap[a]}" for a in F.source.objects)
    arrows = [m for m in F.source.morphisms if not F.source.is_identity(m)]
    if arrows:
        parts.append("MORPHISMS")
        parts.extend(f"  {m} -> {F.mmap[m]}" for m in arrows)
    return "\n".join(parts) + "\n"


# -- strict opindexed categories ------------------------------------------------

IDX_KEYWORDS = ("NAME", "BASE", "FIBRE", "REINDEX")


def parse_opindexed(path) -> StrictOpIndexedCat:
    items = read_items(_read(path), IDX_KEYWORDS + FUN_KEYWORDS + FC_KEYWORDS, path)
    name, base = Path(path).stem, None
    fibres: Dict[str, FinCategory] = {}
    maps: Dict[str, Block] = {}
    for keyword, payload, line in _sections(items, path):
        if keyword == "NAME":
            name = payload
        elif keyword == "BASE":
            base = _category_operand(payload, path, line, "base")
        elif keyword == "FIBRE":
            if not isinstance(payload, Block) or not payload.argument:
                raise ParseError("expected 'FIBRE x {'", path, line)
            fibres[payload.argument] = category_from_items(payload.body, path, f"fibre {payload.argument}")
        elif keyword == "REINDEX":
            if not isinstance(payload, Block) or not payload.argument:
                raise ParseError("expected 'REINDEX f {'", path, line)
            maps[payload.argument] = payload
        else:
            raise ParseError(f"{keyword} is not valid at the top of an .idx file", path, line)
    if base is None:
        raise ParseError("opindexed category needs BASE", path)
    for x in base.objects:
        if x not in fibres:
            raise ParseError(f"no fibre over {x!r}", path)
    reindex = {}
    for f in base.morphisms:
        a, b = base.dom[f], base.cod[f]
        if f not in maps:
            if not base.is_identity(f):
                raise ParseError(f"no reindexing functor for {f!r}", path)
            src = fibres[a]
            reindex[f] = FinFunctor(src, src, {o: o for o in src.objects},
                                    {m: m for m in src.morphisms}, name=f"I({f})")
            continue
        reindex[f] = _fibre_functor(maps[f], fibres[a], fibres[b], path, f"I({f})")
    unknown = [f for f in maps if f not in base.dom]
    if unknown:
        raise ParseError(f"REINDEX for unknown morphism {unknown[0]!r}", path, maps[unknown[0]].number)
    return StrictOpIndexedCat(base, fibres, reindex, name=name)


def _fibre_functor(block: Block, source: FinCategory, target: FinCategory, path, name: str) -> FinFunctor:
    omap: Dict[str, str] = {}
    mmap: Dict[str, str] = {}
    for keyword, payload, line in _sections(block.body, path):
        m = _MAP.match(payload) if isinstance(payload, str) else None
        if keyword not in ("OBJECTS", "MORPHISMS") or not m:
            raise ParseError(f"expected OBJECTS/MORPHISMS 'a -> b', got {payload!r}", path, line)
        a, b = m.groups()
        if keyword == "OBJECTS":
            if a not in source.objects or b not in target.objects:
                raise ParseError(f"unknown object in {payload!r}", path, line)
            omap[a] = b
        else:
            if a not in source.dom or b not in target.dom:
                raise ParseError(f"unknown morphism in {payload!r}", path, line)
            mmap[a] = b
    for o in source.objects:
        if o not in omap:
            raise ParseError(f"object {o!r} has no image under {name}", path, block.number)
        mmap.setdefault(source.identity[o], target.identity[omap[o]])
    for m in source.morphisms:
        if m not in mmap:
            raise ParseError(f"morphism {m!r} has no image under {name}", path, block.number)
    return FinFunctor(source, target, omap, mmap, name=name)


def format_opindexed(I: StrictOpIndexedCat) -> str:
    def indent(text, depth=1):
        return "\n".join("  " * depth + line for line in text.splitlines())

    parts = [f"NAME {I.name}" if I.name else "# opindexed category",
             "BASE {", indent(format_category(I.base)), "}"]
    for x in I.base.objects:
        parts += [f"FIBRE {x} {{", indent(format_category(I.fibre[x])), "}"]
    for f in I.base.morphisms:
        if I.base.is_identity(f):
            continue
        F = I.reindex[f]
        parts.append(f"REINDEX {f} {{")
        parts.append("  OBJECTS")
        parts.extend(f"    {a} -> {F.omap[a]}" for a in F.source.objects)
        arrows = [m for m in F.source.morphisms if not F.source.is_identity(m)]
        if arrows:
            parts.append("  MORPHISMS")
            parts.extend(f"    {m} -> {F.mmap[m]}" for m in arrows)
        parts.append("}")
    return "\n".join(parts) + "\n"


# -- monoidal theories and goals ------------------------------------------------

MTH_KEYWORDS = ("NAME", "USE", "COLOURS", "GENERATORS", "EQUATIONS")


def _split_equation(payload: str, path, line, separator: str = "=") -> Tuple[str, str, str]:
    name = ""
    m = _NAMED.match(payload)
    if m and separator not in m.group(1):
        name, payload = m.group(1), m.group(2)
    lhs, sep, rhs = payload.partition(f" {separator} ")
    if not sep:
        raise ParseError(f"expected 'lhs {separator} rhs', got {payload!r}", path, line)
    return name, lhs.strip(), rhs.strip()


def _generator_sort(payload: str, path, line) -> Tuple[str, List[str], List[str]]:
    m = _GENERATOR.match(payload)
    if not m:
        raise ParseError(f"expected 'g : a b -> c', got {payload!r}", path, line)
    return m.group(1), m.group(2).split(), m.group(3).split()


def theory_from_items(items: Sequence[Item], path=None, default_name: str = "") -> MonTheory:
    name = default_name
    uses: List[MonTheory] = []
    colours: List[str] = []
    generators: List[Tuple[str, List[str], List[str], int]] = []
    equations: List[Tuple[str, str, str, int]] = []
    for keyword, payload, line in _sections(items, path):
        if isinstance(payload, Block):
            raise ParseError(f"{keyword} does not take a block", path, line)
        if keyword == "NAME":
            name = payload
        elif keyword == "USE":
            theory, *params = payload.split()
            if theory not in BUILTIN_THEORIES or theory == "im":
                raise ParseError(f"unknown builtin theory {theory!r}", path, line)
            uses.append(builtin_theory(theory, params or None))
        elif keyword == "COLOURS":
            colours.extend(c for c in payload.split() if c not in colours)
        elif keyword == "GENERATORS":
            generators.append((*_generator_sort(payload, path, line), line))
        elif keyword == "EQUATIONS":
            equations.append((*_split_equation(payload, path, line), line))
    for used in uses:
        colours.extend(c for c in used.signature.colours if c not in colours)
    sig = MonSignature(tuple(colours))
    for g, dom, cod, line in generators:
        try:
            sig.add(g, dom, cod)
        except SortError as e:
            raise ParseError(str(e), path, line) from None
    th = MonTheory(sig, name=name)
    for used in uses:
        th = extend_theory(used, th, name=name)
    for i, (eq_name, lhs, rhs, line) in enumerate(equations, start=1):
        t = parse_term(lhs, th.signature, path, line)
        s = parse_term(rhs, th.signature, path, line)
        try:
            th.add_equation(eq_name or f"eq{i}", t, s, origin=str(path or name))
        except SortError as e:
            raise ParseError(str(e), path, line) from None
    logger.debug("theory %s: %d colours, %d generators, %d equations", th.name,
                 len(th.signature.colours), len(th.signature.generators), len(th.all_equations()))
    return th


def parse_theory(path) -> MonTheory:
    return theory_from_items(read_items(_read(path), MTH_KEYWORDS, path), path, Path(path).stem)


def read_goals(path, separator: str = "=") -> List[Goal]:
    """Raw goal lines of an ``.eq`` file; the caller parses each side."""
    goals = []
    for number, raw in enumerate(_read(path).splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        name, lhs, rhs = _split_equation(text, path, number, separator)
        goals.append(Goal(name or f"goal{len(goals) + 1}", lhs, rhs, number))
    return goals


def parse_goals(path, th: MonTheory):
    return [(g.name, parse_term(g.lhs, th.signature, path, g.line),
             parse_term(g.rhs, th.signature, path, g.line)) for g in read_goals(path)]


# -- layered theories -----------------------------------------------------------

LMT_KEYWORDS = ("NAME", "MODE", "LAYERS", "LAYER", "GENERATORS", "E0", "E1", "CELLS", "E2",
                "STRUCTURAL", "SYMMETRIC")


def _flag(payload: str, path, line) -> bool:
    if payload not in ("on", "off"):
        raise ParseError(f"expected on|off, got {payload!r}", path, line)
    return payload == "on"


def parse_layered_theory(path) -> LayeredTheory:
    items = read_items(_read(path), LMT_KEYWORDS + MTH_KEYWORDS, path)
    name = Path(path).stem
    procedure = SortingProcedure.OPFIBRATIONAL
    layers: List[str] = []
    layer_bodies: Dict[str, Block] = {}
    functors: Dict[str, Tuple[str, str]] = {}
    pending: Dict[str, List[Tuple[str, str, str, int]]] = {"E0": [], "E1": [], "CELLS": [], "E2": []}
    structural, symmetric = True, True
    for keyword, payload, line in _sections(items, path):
        if keyword == "LAYER":
            if not isinstance(payload, Block) or not payload.argument:
                raise ParseError("expected 'LAYER name {'", path, line)
            layer_bodies[payload.argument] = payload
            continue
        if isinstance(payload, Block):
            raise ParseError(f"{keyword} does not take a block", path, line)
        if keyword == "NAME":
            name = payload
        elif keyword == "MODE":
            try:
                procedure = SortingProcedure(payload)
            except ValueError:
                raise ParseError(f"unknown mode {payload!r}", path, line) from None
        elif keyword == "LAYERS":
            layers.extend(w for w in payload.split() if w not in layers)
        elif keyword == "GENERATORS":
            m = _DECL.match(payload)
            if not m:
                raise ParseError(f"expected 'f: ω -> τ', got {payload!r}", path, line)
            functors[m.group(1)] = (m.group(2), m.group(3))
        elif keyword == "STRUCTURAL":
            structural = _flag(payload, path, line)
        elif keyword == "SYMMETRIC":
            symmetric = _flag(payload, path, line)
        elif keyword == "CELLS":
            pending["CELLS"].append((*_split_equation(payload, path, line, "=>"), line))
        elif keyword in pending:
            pending[keyword].append((*_split_equation(payload, path, line), line))
        else:
            raise ParseError(f"{keyword} is not valid at the top of an .lmt file", path, line)
    for w in layer_bodies:
        if w not in layers:
            raise ParseError(f"LAYER {w!r} is not listed in LAYERS", path, layer_bodies[w].number)
    layer_sigs: Dict[str, MonSignature] = {}
    internal: List[Tuple[str, str, str, int]] = []
    for w in layers:
        block = layer_bodies.get(w)
        sig = MonSignature(())
        if block is not None:
            colours, gens = [], []
            for keyword, payload, line in _sections(block.body, path):
                if keyword == "COLOURS":
                    colours.extend(c for c in payload.split() if c not in colours)
                elif keyword == "GENERATORS":
                    gens.append((*_generator_sort(payload, path, line), line))
                elif keyword == "EQUATIONS":
                    eq_name, lhs, rhs = _split_equation(payload, path, line)
                    internal.append((eq_name or f"{w}.eq{len(internal) + 1}", lhs, rhs, line))
                else:
                    raise ParseError(f"{keyword} is not valid inside LAYER", path, line)
            sig = MonSignature(tuple(colours))
            for g, dom, cod, line in gens:
                try:
                    sig.add(g, dom, cod)
                except SortError as e:
                    raise ParseError(str(e), path, line) from None
        layer_sigs[w] = sig
    try:
        signature = LayeredSignature(tuple(layers), functors, layer_sigs)
    except SortError as e:
        raise ParseError(str(e), path) from None
    e0 = []
    for _, lhs, rhs, line in pending["E0"]:
        a, b = _ltype(lhs, signature, path, line), _ltype(rhs, signature, path, line)
        if len(a) != 1 or len(b) != 1:
            raise ParseError("0-equations relate single blocks", path, line)
        e0.append((a[0], b[0]))
    e1 = []
    for i, (eq_name, lhs, rhs, line) in enumerate(internal + pending["E1"], start=1):
        e1.append(LEquation(eq_name or f"e1.{i}", _lterm(lhs, signature, path, line),
                            _lterm(rhs, signature, path, line), "E1"))
    cells = {}
    for cell, lhs, rhs, line in pending["CELLS"]:
        if not cell:
            raise ParseError("2-cells need a name", path, line)
        cells[cell] = (_lterm(lhs, signature, path, line), _lterm(rhs, signature, path, line))
    try:
        th = LayeredTheory(signature, procedure, e0, e1, cells, [], structural, symmetric, name=name)
    except SortError as e:
        raise ParseError(str(e), path) from None
    for i, (eq_name, lhs, rhs, line) in enumerate(pending["E2"], start=1):
        th.e2.append((eq_name or f"e2.{i}", _two_term(lhs, signature, path, line),
                      _two_term(rhs, signature, path, line)))
    return th


def _ltype(text: str, sig: LayeredSignature, path, line):
    try:
        return parse_ltype(text, sig, path, line)
    except SortError as e:
        raise ParseError(str(e), path, line) from None


def _lterm(text: str, sig: LayeredSignature, path, line):
    try:
        return parse_lterm(text, sig, path, line)
    except SortError as e:
        raise ParseError(str(e), path, line) from None


def _two_term(text: str, sig: LayeredSignature, path, line):
    try:
        return parse_two_term(text, sig, path, line)
    except SortError as e:
        raise ParseError(str(e), path, line) from None


# -- dispatch -------------------------------------------------------------------

PARSERS = {
    ".fc": parse_category,
    ".fun": parse_functor,
    ".idx": parse_opindexed,
    ".mth": parse_theory,
    ".lmt": parse_layered_theory,
}


def parse(path):
    """Parse a fixture file by extension."""
    suffix = Path(path).suffix
    if suffix not in PARSERS:
        raise ParseError(f"unknown file type {suffix!r}", path)
    try:
        return PARSERS[suffix](path)
    except ParseError:
        raise
    except LmtError as e:
        raise ParseError(str(e), path) from None
