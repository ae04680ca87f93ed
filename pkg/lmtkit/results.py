"""Small result records returned by checkers and provers."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of a checker: truth value plus the first counterexample found."""

    holds: bool
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    @classmethod
    def ok(cls, **details):
        return cls(True, None, details)

    @classmethod
    def fail(cls, witness, **details):
        return cls(False, witness, details)

    def to_dict(self, analysis_type: str = "") -> Dict[str, Any]:
        return {
            'analysis_type': analysis_type,
            'holds': self.holds,
            'witness': _plain(self.witness),
            'details': _plain(self.details),
        }


PROVED = "proved"
UNKNOWN = "unknown"
DISPROVED = "disproved"


@dataclass(frozen=True)
class ProofResult:
    """Three-valued answer of a bounded prover.

    ``trace`` is the list of rewrite steps from the left goal to the right goal;
    each step is a dict that the matching ``replay_trace`` understands.
    """

    status: str
    trace: List[Dict[str, Any]] = field(default_factory=list)
    explored: int = 0
    reason: str = ""

    @property
    def proved(self) -> bool:
        return self.status == PROVED

    def __bool__(self):
        return self.proved

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status,
            'explored': self.explored,
            'reason': self.reason,
            'trace': _plain(self.trace),
        }


def _plain(value: Any) -> Any:
    """Turn tuples, sets and dataclass-like values into JSON friendly data."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_plain(v) for v in value), key=repr)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


def plain(value: Optional[Any]) -> Any:
    return _plain(value)
