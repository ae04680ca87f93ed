"""Bounded rewriting over hashable states, and expression trees for 2-cell calculi.

``bidirectional_search`` is shared by every prover in the package: states are
normal forms, ``moves`` yields ``(rule, direction, state)`` neighbours.

``ExprSystem`` describes a family of expression trees with associative binary
operations (stored flattened), identities, and interchange laws between pairs
of operations. Subclasses supply boundaries, identities and rendering; the
base class supplies normalisation, ground-rule rewriting in context and the
interchange moves.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import SortError
from .results import PROVED, UNKNOWN, ProofResult

logger = logging.getLogger(__name__)

Move = Tuple[str, str, Hashable]
Moves = Callable[[Hashable], Iterable[Move]]


def flip(direction: str) -> str:
    return "<-" if direction == "->" else "->"


def bidirectional_search(start: Hashable, goal: Hashable, moves: Moves, budget: int,
                         size: Callable[[Hashable], int], max_size: int) -> ProofResult:
    """Breadth-first from both ends; ``budget`` bounds expanded states.

    States larger than ``max_size`` are kept as meeting points but not expanded.
    """
    if start == goal:
        return ProofResult(PROVED, [], 0, "equal normal forms")
    parents: List[Dict[Hashable, Optional[Tuple[Hashable, str, str]]]] = [{start: None}, {goal: None}]
    frontiers = [[start], [goal]]
    explored = 0
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt = []
        for state in frontiers[side]:
            if explored >= budget:
                logger.info("search stopped after %d states", explored)
                return ProofResult(UNKNOWN, [], explored, "budget exhausted")
            explored += 1
            if size(state) > max_size:
                continue
            for rule, direction, other in moves(state):
                if other in parents[side]:
                    continue
                parents[side][other] = (state, rule, direction)
                if other in parents[1 - side]:
                    trace = _join(parents, other)
                    logger.debug("proved after %d states, %d steps", explored, len(trace))
                    return ProofResult(PROVED, trace, explored, "")
                nxt.append(other)
        frontiers[side] = nxt
    return ProofResult(UNKNOWN, [], explored, "search space exhausted within the size bound")


def _join(parents, meet) -> List[Dict]:
    steps = []
    node = meet
    while parents[0][node] is not None:
        prev, rule, direction = parents[0][node]
        steps.append({'rule': rule, 'direction': direction, 'before': prev, 'after': node})
        node = prev
    steps.reverse()
    node = meet
    while parents[1][node] is not None:
        prev, rule, direction = parents[1][node]
        steps.append({'rule': rule, 'direction': flip(direction), 'before': node, 'after': prev})
        node = prev
    return steps


def replay_steps(trace: Sequence[Dict], start: Hashable, goal: Hashable, moves: Moves,
                 canon: Callable[[Hashable], Hashable] = lambda x: x) -> bool:
    """Each step must chain from the previous one and be a single move of the named rule.

    Equations are symmetric, so a step also replays when ``after`` reaches
    ``before`` by the same rule in the opposite direction.
    """
    current = canon(start)
    for step in trace:
        before, after = canon(step['before']), canon(step['after'])
        if before != current:
            return False
        rule, direction = step['rule'], step['direction']
        forward = any(r == rule and d == direction and s == after for r, d, s in moves(before))
        if not forward and not any(r == rule and d == flip(direction) and s == before
                                   for r, d, s in moves(after)):
            return False
        current = after
    return current == canon(goal)


@dataclass(frozen=True)
class Expr:
    """Node of an expression tree. Leaves carry ``label``; composites carry ``args``."""

    op: str
    args: Tuple["Expr", ...] = ()
    label: Any = None

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)


@dataclass(frozen=True)
class GroundRule:
    name: str
    lhs: Expr
    rhs: Expr
    origin: str = ""


class ExprSystem:
    """Operations, identities and interchange laws of a strict higher-categorical calculus."""

    ops: Tuple[str, ...] = ()
    # (outer, inner): outer[inner[a, b], inner[c, d]] = inner[outer[a, c], outer[b, d]]
    interchange_pairs: Tuple[Tuple[str, str], ...] = ()

    def boundary(self, e: Expr, op: str) -> Tuple[Any, Any]:
        """(source, target) of ``e`` as seen by composition ``op``; raises SortError."""
        raise NotImplementedError

    def is_identity(self, e: Expr, op: str) -> bool:
        return False

    def merge(self, op: str, a: Expr, b: Expr) -> Optional[Expr]:
        return None

    def identity_at(self, e: Expr, op: str, side: str) -> Expr:
        """The ``op``-identity sitting at ``side`` ('src' or 'tgt') of ``e``."""
        raise NotImplementedError

    def render(self, e: Expr) -> str:
        if not e.args:
            return str(e.label)
        return "(" + f" {e.op} ".join(self.render(a) for a in e.args) + ")"

    def make(self, op: str, parts: Sequence[Expr]) -> Expr:
        if len(parts) == 1:
            return parts[0]
        return Expr(op, tuple(parts))

    def check(self, e: Expr) -> None:
        """Raise SortError unless every composite is well-boundaried."""
        for a in e.args:
            self.check(a)
        if e.op in self.ops:
            for a, b in zip(e.args, e.args[1:]):
                if self.boundary(a, e.op)[1] != self.boundary(b, e.op)[0]:
                    raise SortError(f"cannot compose {self.render(a)} {e.op} {self.render(b)}",
                                    node=self.render(e))

    def normalize(self, e: Expr) -> Expr:
        if e.op not in self.ops:
            return e
        flat: List[Expr] = []
        for c in (self.normalize(a) for a in e.args):
            if c.op == e.op:
                flat.extend(c.args)
            else:
                flat.append(c)
        kept = [c for c in flat if not self.is_identity(c, e.op)] or flat[:1]
        merged: List[Expr] = []
        for c in kept:
            if merged:
                m = self.merge(e.op, merged[-1], c)
                if m is not None:
                    merged[-1] = m
                    continue
            merged.append(c)
        final = [c for c in merged if not self.is_identity(c, e.op)] or merged[:1]
        if len(final) == 1:
            return final[0]
        return Expr(e.op, tuple(final))

    def contexts(self, e: Expr) -> Iterator[Tuple[Expr, Callable[[Expr], Expr]]]:
        """Every subterm with a function rebuilding ``e`` around a replacement."""
        yield e, lambda new: new
        for i, a in enumerate(e.args):
            for sub, rebuild in self.contexts(a):
                yield sub, (lambda new, i=i, rebuild=rebuild:
                            Expr(e.op, e.args[:i] + (rebuild(new),) + e.args[i + 1:], e.label))

    def _windows(self, e: Expr, pattern: Expr) -> Iterator[Tuple[int, int]]:
        k = len(pattern.args)
        for i in range(len(e.args) - k + 1):
            if e.args[i:i + k] == pattern.args:
                yield i, i + k

    def rule_rewrites(self, e: Expr, rules: Sequence[GroundRule]) -> Iterator[Tuple[str, str, Expr]]:
        for rule in rules:
            for direction, lhs, rhs in (("->", rule.lhs, rule.rhs), ("<-", rule.rhs, rule.lhs)):
                for sub, rebuild in self.contexts(e):
                    if sub == lhs:
                        yield rule.name, direction, rebuild(rhs)
                    elif lhs.op == sub.op and lhs.op in self.ops and len(lhs.args) < len(sub.args):
                        for i, j in self._windows(sub, lhs):
                            new = Expr(sub.op, sub.args[:i] + (rhs,) + sub.args[j:])
                            yield rule.name, direction, rebuild(new)

    def _interchange_forward(self, node: Expr, outer: str, inner: str) -> Iterator[Expr]:
        for k in range(len(node.args) - 1):
            A, B = node.args[k], node.args[k + 1]
            xs = A.args if A.op == inner else (A,)
            ys = B.args if B.op == inner else (B,)
            for i in range(1, len(xs)):
                for j in range(1, len(ys)):
                    top_a, top_b = self.make(inner, xs[:i]), self.make(inner, ys[:j])
                    try:
                        if self.boundary(top_a, outer)[1] != self.boundary(top_b, outer)[0]:
                            continue
                    except SortError:
                        continue
                    left = Expr(outer, (top_a, top_b))
                    right = Expr(outer, (self.make(inner, xs[i:]), self.make(inner, ys[j:])))
                    yield Expr(outer, node.args[:k] + (Expr(inner, (left, right)),) + node.args[k + 2:])

    def _splits(self, c: Expr, outer: str) -> List[Tuple[Expr, Expr]]:
        out = []
        if c.op == outer:
            for k in range(1, len(c.args)):
                out.append((self.make(outer, c.args[:k]), self.make(outer, c.args[k:])))
        out.append((c, self.identity_at(c, outer, 'tgt')))
        out.append((self.identity_at(c, outer, 'src'), c))
        return out

    def _interchange_backward(self, node: Expr, outer: str, inner: str) -> Iterator[Expr]:
        for k in range(len(node.args) - 1):
            c, d = node.args[k], node.args[k + 1]
            if c.op != outer and d.op != outer:
                continue
            for c1, c2 in self._splits(c, outer):
                for d1, d2 in self._splits(d, outer):
                    new = Expr(outer, (Expr(inner, (c1, d1)), Expr(inner, (c2, d2))))
                    yield Expr(inner, node.args[:k] + (new,) + node.args[k + 2:])

    def interchange_moves(self, e: Expr) -> Iterator[Tuple[str, str, Expr]]:
        for sub, rebuild in self.contexts(e):
            for outer, inner in self.interchange_pairs:
                name = f"interchange[{outer},{inner}]"
                if sub.op == outer:
                    for new in self._interchange_forward(sub, outer, inner):
                        yield name, "->", rebuild(new)
                if sub.op == inner:
                    for new in self._interchange_backward(sub, outer, inner):
                        yield name, "<-", rebuild(new)

    def moves(self, rules: Sequence[GroundRule]) -> Moves:
        def step(e: Expr) -> Iterator[Move]:
            seen = set()
            for rule, direction, raw in ([*self.rule_rewrites(e, rules), *self.interchange_moves(e)]):
                try:
                    new = self.normalize(raw)
                    self.check(new)
                except SortError:
                    continue
                key = (rule, direction, new)
                if new != e and key not in seen:
                    seen.add(key)
                    yield rule, direction, new
        return step

    def prove(self, left: Expr, right: Expr, rules: Sequence[GroundRule], budget: int,
              max_size: Optional[int] = None) -> ProofResult:
        a, b = self.normalize(left), self.normalize(right)
        self.check(a)
        self.check(b)
        vertical = self.ops[0]
        if self.boundary(a, vertical) != self.boundary(b, vertical):
            raise SortError(f"{self.render(a)} and {self.render(b)} have different boundaries")
        if max_size is None:
            max_size = max(a.size(), b.size()) + 6
        normalized = [GroundRule(r.name, self.normalize(r.lhs), self.normalize(r.rhs), r.origin) for r in rules]
        return bidirectional_search(a, b, self.moves(normalized), budget, Expr.size, max_size)

    def replay(self, trace: Sequence[Dict], left: Expr, right: Expr, rules: Sequence[GroundRule]) -> bool:
        normalized = [GroundRule(r.name, self.normalize(r.lhs), self.normalize(r.rhs), r.origin) for r in rules]
        return replay_steps(trace, left, right, self.moves(normalized), self.normalize)

    def render_trace(self, trace: Sequence[Dict]) -> List[Dict]:
        return [{'rule': s['rule'], 'direction': s['direction'],
                 'before': self.render(s['before']), 'after': self.render(s['after'])} for s in trace]
