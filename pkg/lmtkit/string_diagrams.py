"""Slice diagrams for strict monoidal terms.

A diagram is a sequence of slices ``(left, node, right)``; wires are words of
colour names. Two diagrams denote the same morphism of the free strict monoidal
category iff their slice sequences are connected by interchange moves, so the
normal form is the least sequence of the interchange class.

The rewriting search here is generic: callers pass a ``moves`` function that
yields ``(rule, direction, diagram)`` neighbours of a normal form.
"""

import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import SortError
from .results import DISPROVED, PROVED, ProofResult
from .tree_rewriting import bidirectional_search, replay_steps

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]


@dataclass(frozen=True, order=True)
class Node:
    label: str
    dom: Word
    cod: Word

    def __str__(self):
        return self.label


@dataclass(frozen=True, order=True)
class Slice:
    left: Word
    node: Node
    right: Word

    @property
    def inputs(self) -> Word:
        return self.left + self.node.dom + self.right

    @property
    def outputs(self) -> Word:
        return self.left + self.node.cod + self.right

    def padded(self, prefix: Word, suffix: Word) -> "Slice":
        return Slice(prefix + self.left, self.node, self.right + suffix)


@dataclass(frozen=True)
class Diagram:
    dom: Word
    cod: Word
    slices: Tuple[Slice, ...] = ()

    @staticmethod
    def identity(word: Sequence[str]) -> "Diagram":
        word = tuple(word)
        return Diagram(word, word, ())

    @staticmethod
    def box(node: Node) -> "Diagram":
        return Diagram(node.dom, node.cod, (Slice((), node, ()),))

    def then(self, other: "Diagram") -> "Diagram":
        if self.cod != other.dom:
            raise SortError(f"cannot compose {' '.join(self.cod) or 'ε'} with {' '.join(other.dom) or 'ε'}")
        return Diagram(self.dom, other.cod, self.slices + other.slices)

    def tensor(self, other: "Diagram") -> "Diagram":
        first = tuple(s.padded((), other.dom) for s in self.slices)
        second = tuple(s.padded(self.cod, ()) for s in other.slices)
        return Diagram(self.dom + other.dom, self.cod + other.cod, first + second)

    def padded(self, prefix: Word, suffix: Word) -> "Diagram":
        return Diagram(prefix + self.dom + suffix, prefix + self.cod + suffix,
                       tuple(s.padded(prefix, suffix) for s in self.slices))

    def nodes(self) -> List[Node]:
        return [s.node for s in self.slices]

    def __len__(self):
        return len(self.slices)

    def check(self) -> None:
        wires = self.dom
        for i, s in enumerate(self.slices):
            if s.inputs != wires:
                raise SortError(f"slice {i} expects {s.inputs}, wires are {wires}", node=s.node.label)
            wires = s.outputs
        if wires != self.cod:
            raise SortError(f"diagram ends in {wires}, declared {self.cod}")

    def __str__(self):
        return format_diagram(self)

    def wires_at(self, i: int) -> Word:
        """Wires below slice ``i`` (``i == len`` gives the codomain)."""
        return self.slices[i].inputs if i < len(self.slices) else self.cod


def _interchanges(s1: Slice, s2: Slice) -> List[Tuple[Slice, Slice]]:
    """Ways to let s2 happen before s1 when their nodes do not touch."""
    n1, n2 = s1.node, s2.node
    out = []
    l1, l2 = len(s1.left), len(s2.left)
    if l2 + len(n2.dom) <= l1:
        middle = s1.left[l2 + len(n2.dom):]
        out.append((Slice(s2.left, n2, middle + n1.dom + s1.right),
                    Slice(s2.left + n2.cod + middle, n1, s1.right)))
    if l2 >= l1 + len(n1.cod):
        middle = s2.left[l1 + len(n1.cod):]
        out.append((Slice(s1.left + n1.dom + middle, n2, s2.right),
                    Slice(s1.left, n1, middle + n2.cod + s2.right)))
    return out


def _slice_key(s: Slice):
    return (len(s.left), s.node.label, s.node.dom, s.node.cod, s.left, s.right)


@lru_cache(maxsize=1024)
def interchange_class(slices: Tuple[Slice, ...]) -> FrozenSet[Tuple[Slice, ...]]:
    """All slice sequences reachable by interchange moves; only for small patterns."""
    seen = {slices}
    queue = deque([slices])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            for a, b in _interchanges(cur[i], cur[i + 1]):
                nxt = cur[:i] + (a, b) + cur[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return frozenset(seen)


def _swap(seq: Tuple[Slice, ...], i: int) -> Optional[Tuple[Slice, ...]]:
    """``seq[i + 1]`` moved before ``seq[i]``, or ``None`` when they touch."""
    options = _interchanges(seq[i], seq[i + 1])
    if not options:
        return None
    a, b = options[0]
    return seq[:i] + (a, b) + seq[i + 2:]


def _sink(seq: Tuple[Slice, ...], j: int, target: int) -> Optional[Tuple[Slice, ...]]:
    for k in range(j, target, -1):
        seq = _swap(seq, k - 1)
        if seq is None:
            return None
    return seq


def _to_front(seq: Tuple[Slice, ...], j: int) -> Set[Tuple[Slice, ...]]:
    """Every way of bubbling ``seq[j]`` to the front."""
    current = {seq}
    for k in range(j, 0, -1):
        nxt = set()
        for cur in current:
            for a, b in _interchanges(cur[k - 1], cur[k]):
                nxt.add(cur[:k - 1] + (a, b) + cur[k + 1:])
        if not nxt:
            return set()
        current = nxt
    return current


@lru_cache(maxsize=4096)
def _least_linearization(slices: Tuple[Slice, ...]) -> Tuple[Slice, ...]:
    """Least member of the interchange class, chosen slice by slice."""
    out: List[Slice] = []
    states = {slices}
    while True:
        states.discard(())
        if not states:
            return tuple(out)
        best, rests = None, set()
        for rest in states:
            for j in range(len(rest)):
                for moved in _to_front(rest, j):
                    key = _slice_key(moved[0])
                    if best is None or key < best[0]:
                        best, rests = (key, moved[0]), {moved[1:]}
                    elif key == best[0]:
                        rests.add(moved[1:])
        out.append(best[1])
        states = rests


def normal_form(d: Diagram) -> Diagram:
    return Diagram(d.dom, d.cod, _least_linearization(d.slices))


def structurally_equal(d1: Diagram, d2: Diagram) -> bool:
    return d1.dom == d2.dom and d1.cod == d2.cod and normal_form(d1) == normal_form(d2)


def wire_links(d: Diagram) -> Tuple[List[Set[int]], List[Set[int]]]:
    """For each slice, the slices feeding its inputs and those reading its outputs."""
    wires: List[int] = [-1] * len(d.dom)
    below: List[Set[int]] = [set() for _ in d.slices]
    above: List[Set[int]] = [set() for _ in d.slices]
    for j, s in enumerate(d.slices):
        l, n = len(s.left), len(s.node.dom)
        for p in wires[l:l + n]:
            if p >= 0:
                below[j].add(p)
                above[p].add(j)
        wires[l:l + n] = [j] * len(s.node.cod)
    return below, above


def gather(seq: Tuple[Slice, ...], positions: Iterable[int]) -> Optional[Tuple[Tuple[Slice, ...], int]]:
    """Reorder by interchange so the given slices sit side by side, in their order.

    Slices between them sink below the block when they can; the rest must be
    passed. Returns the new sequence and the index where the block starts.
    """
    pos = sorted(positions)
    start = end = pos[0]
    # slices after the one being placed never shift
    for j in pos[1:]:
        g = end + 1
        while g < j:
            moved = _sink(seq, g, start)
            if moved is not None:
                seq, start, end = moved, start + 1, end + 1
            g += 1
        moved = _sink(seq, j, end + 1)
        if moved is None:
            return None
        seq, end = moved, end + 1
    return seq, start


def arrangements_around(d: Diagram, i: int, below: bool) -> Iterator[Tuple[Tuple[Slice, ...], int]]:
    """Orders of ``d`` with the slices wired to slice ``i`` (from below or above) next to it.

    Yields the sequence and the new index of slice ``i``; tries all neighbours
    together, then each on its own.
    """
    links = wire_links(d)[0 if below else 1][i]
    seen = set()
    groups = [sorted(links)]
    if len(links) > 1:
        groups += [[k] for k in sorted(links)]
    for group in groups:
        if not group:
            continue
        arranged = gather(d.slices, group + [i])
        if arranged is None:
            continue
        seq, start = arranged
        at = start + len(group) if below else start
        if seq not in seen:
            seen.add(seq)
            yield seq, at


def _splits(wires: Word, word: Word) -> Iterator[Tuple[Word, Word]]:
    n = len(word)
    for i in range(len(wires) - n + 1):
        if wires[i:i + n] == word:
            yield wires[:i], wires[i + n:]


def _match_window(window: Sequence[Slice], pattern: Sequence[Slice]) -> Optional[Tuple[Word, Word]]:
    first, p0 = window[0], pattern[0]
    if first.node != p0.node:
        return None
    cut = len(first.left) - len(p0.left)
    if cut < 0 or first.left[cut:] != p0.left or first.right[:len(p0.right)] != p0.right:
        return None
    prefix, suffix = first.left[:cut], first.right[len(p0.right):]
    for s, p in zip(window[1:], pattern[1:]):
        if s != p.padded(prefix, suffix):
            return None
    return prefix, suffix


def _slide_far(seq: Tuple[Slice, ...], j: int, step: int) -> Tuple[Tuple[Slice, ...], int]:
    while 0 <= j + step < len(seq):
        nxt = _swap(seq, j - 1) if step < 0 else _swap(seq, j)
        if nxt is None:
            break
        seq, j = nxt, j + step
    return seq, j


def _cut_orders(seq: Tuple[Slice, ...]) -> Iterator[Tuple[Slice, ...]]:
    """``seq`` and, for each slice, the orders with it sunk or floated as far as it goes."""
    yield seq
    for j in range(len(seq)):
        for step in (-1, 1):
            moved, k = _slide_far(seq, j, step)
            if k != j:
                yield moved


def replace_occurrences(d: Diagram, lhs: Diagram, rhs: Diagram) -> Iterator[Diagram]:
    """Diagrams obtained by replacing one occurrence of ``lhs`` (in any context) by ``rhs``.

    ``d`` is expected in normal form; occurrences are found by gathering slices
    with the pattern's nodes into a window.
    """
    rhs_slices = normal_form(rhs).slices
    if not lhs.slices:
        seen = set()
        for lin in _cut_orders(d.slices):
            seq = Diagram(d.dom, d.cod, lin)
            for i in range(len(lin) + 1):
                for prefix, suffix in _splits(seq.wires_at(i), lhs.dom):
                    block = tuple(s.padded(prefix, suffix) for s in rhs_slices)
                    out = lin[:i] + block + lin[i:]
                    if out not in seen:
                        seen.add(out)
                        yield Diagram(d.dom, d.cod, out)
        return
    k = len(lhs.slices)
    lhs_forms = interchange_class(lhs.slices)
    wanted = Counter(s.node for s in lhs.slices)
    candidates = [j for j, s in enumerate(d.slices) if s.node in wanted]
    for chosen in itertools.combinations(candidates, k):
        if Counter(d.slices[j].node for j in chosen) != wanted:
            continue
        arranged = gather(d.slices, chosen)
        if arranged is None:
            continue
        lin, i = arranged
        for pattern in lhs_forms:
            ctx = _match_window(lin[i:i + k], pattern)
            if ctx is None:
                continue
            prefix, suffix = ctx
            block = tuple(s.padded(prefix, suffix) for s in rhs_slices)
            yield Diagram(d.dom, d.cod, lin[:i] + block + lin[i + k:])


@dataclass(frozen=True)
class Rule:
    """A parallel pair of diagrams used in both directions."""

    name: str
    lhs: Diagram
    rhs: Diagram
    origin: str = ""


Move = Tuple[str, str, Diagram]
Moves = Callable[[Diagram], Iterable[Move]]


def rule_moves(rules: Sequence[Rule]) -> Moves:
    """Neighbours of a normal form under every rule, both directions, deduplicated."""

    def moves(d: Diagram) -> Iterator[Move]:
        seen = set()
        for rule in rules:
            if not rule.lhs.slices and not rule.rhs.slices:
                continue
            for direction, lhs, rhs in (("->", rule.lhs, rule.rhs), ("<-", rule.rhs, rule.lhs)):
                for result in replace_occurrences(d, lhs, rhs):
                    nf = normal_form(result)
                    key = (rule.name, direction, nf)
                    if nf != d and key not in seen:
                        seen.add(key)
                        yield rule.name, direction, nf
    return moves


def search(start: Diagram, goal: Diagram, moves: Moves, budget: int,
           max_slices: Optional[int] = None) -> ProofResult:
    """Bidirectional breadth-first search between normal forms.

    ``budget`` bounds the number of expanded states; states longer than
    ``max_slices`` are not expanded.
    """
    a, b = normal_form(start), normal_form(goal)
    if (a.dom, a.cod) != (b.dom, b.cod):
        raise SortError("goals are not parallel")
    if a == b:
        return ProofResult(PROVED, [], 0, "structurally equal")
    if max_slices is None:
        max_slices = max(len(a), len(b)) + 4
    logger.debug("searching between diagrams of %d and %d slices, budget %d", len(a), len(b), budget)
    return bidirectional_search(a, b, moves, budget, len, max_slices)


def replay(trace: Sequence[Dict], start: Diagram, goal: Diagram, moves: Moves) -> bool:
    """Re-check a trace: consecutive steps chain and each is a single move."""
    return replay_steps(trace, start, goal, moves, normal_form)


def decide_without_equations(start: Diagram, goal: Diagram) -> ProofResult:
    if structurally_equal(start, goal):
        return ProofResult(PROVED, [], 0, "structurally equal")
    return ProofResult(DISPROVED, [], 0, "distinct normal forms and no equations")


def format_diagram(d: Diagram) -> str:
    """Slices bottom to top, one ``left | node | right`` group per slice."""
    if not d.slices:
        return f"id[{' '.join(d.dom)}]"
    parts = []
    for s in d.slices:
        left, right = ' '.join(s.left), ' '.join(s.right)
        parts.append(f"{left} | {s.node.label} | {right}".strip())
    return " ; ".join(parts)
