"""Retrofunctors: an object map backwards plus a functorial choice of lifts."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .fincat import FinCategory
from .opfibration_check import Cleavage, FuncOver
from .results import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RetrofunctorData:
    total: FinCategory
    base: FinCategory
    p0: Dict[str, str]
    phi: Dict[Tuple[str, str], str]


def _first_violation(r: RetrofunctorData) -> Optional[Dict]:
    Y, X = r.total, r.base
    for a in Y.objects:
        for f in X.out_of(r.p0[a]):
            F = r.phi.get((a, f))
            if F is None:
                return {'reason': 'missing lift', 'pair': (a, f)}
            if Y.dom[F] != a or r.p0[Y.cod[F]] != X.cod[f]:
                return {'reason': 'lift has the wrong endpoints', 'pair': (a, f)}
    for a in Y.objects:
        if r.phi[(a, X.identity[r.p0[a]])] != Y.identity[a]:
            return {'reason': 'phi(a, id) is not id_a', 'object': a}
        for f in X.out_of(r.p0[a]):
            F = r.phi[(a, f)]
            b = Y.cod[F]
            for g in X.out_of(X.cod[f]):
                if r.phi[(a, X.compose(f, g))] != Y.compose(F, r.phi[(b, g)]):
                    return {'reason': 'phi(a, f;g) != phi(a, f);phi(a^f, g)', 'object': a, 'pair': (f, g)}
    return None


def check_retrofunctor(r: RetrofunctorData) -> Verdict:
    violation = _first_violation(r)
    if violation is None:
        return Verdict.ok()
    logger.debug("retrofunctor %s -> %s fails: %s", r.total.name, r.base.name, violation["reason"])
    return Verdict.fail(violation)


def retrofunctor_from_cleavage(q: FuncOver, cleavage: Cleavage) -> RetrofunctorData:
    return RetrofunctorData(q.total, q.base, dict(q.p.omap), dict(cleavage.lifts))


def identity_retrofunctor(c: FinCategory) -> RetrofunctorData:
    return RetrofunctorData(c, c, {x: x for x in c.objects},
                            {(c.dom[f], f): f for f in c.morphisms})
