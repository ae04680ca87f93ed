"""Seeded random corpus of small categories, functors and strict opindexed categories.

Composition tables are drawn uniformly from the well-typed choices and
rejected when an axiom fails; nothing is repaired, so every accepted sample is
unbiased among valid tables of its shape.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .displayed_check import is_factorisation_lifting
from .errors import PreconditionError
from .file_formats import format_category, format_functor, format_opindexed
from .fincat import FinCategory, FinFunctor, enumerate_functors, find_cartesian_structure, validate_category
from .grothendieck import StrictOpIndexedCat, grothendieck, validate_opindexed
from .opfibration_check import FuncOver, is_opfibration, is_preopfibration

logger = logging.getLogger(__name__)

KINDS = ("category", "functor", "opindexed")


@dataclass(frozen=True)
class CorpusSpec:
    max_objects: int = 3
    max_morphisms: int = 8
    count: int = 20
    kind: str = "category"
    filters: Tuple[str, ...] = ()
    fibre_objects: int = 3
    attempts: int = 2000

    @classmethod
    def from_config(cls, config: Dict) -> "CorpusSpec":
        return cls(max_objects=int(config.get('max_objects', 3)),
                   max_morphisms=int(config.get('max_morphisms', 8)),
                   count=int(config.get('count', 20)),
                   kind=config.get('kind', 'category'),
                   filters=tuple(config.get('filters', ())),
                   fibre_objects=int(config.get('fibre_objects', 3)))


def _as_functor(obj) -> Optional[FuncOver]:
    if isinstance(obj, FuncOver):
        return obj
    if isinstance(obj, FinFunctor):
        return FuncOver(obj)
    if isinstance(obj, StrictOpIndexedCat):
        return grothendieck(obj)
    return None


def _functor_filter(check: Callable[[FuncOver], bool]) -> Callable[[object], bool]:
    def accept(obj) -> bool:
        q = _as_functor(obj)
        return q is not None and check(q)
    return accept


FILTERS: Dict[str, Callable[[object], bool]] = {
    'opfibration': _functor_filter(lambda q: is_opfibration(q).holds),
    'preopfibration': _functor_filter(lambda q: is_preopfibration(q).holds),
    'conduche': _functor_filter(lambda q: is_factorisation_lifting(q).holds),
    'cartesian': lambda obj: isinstance(obj, FinCategory) and find_cartesian_structure(obj)[0] is not None,
    'nontrivial': lambda obj: not isinstance(obj, FinCategory) or len(obj.morphisms) > len(obj.objects),
}


def random_category(rng: np.random.Generator, max_objects: int = 3, max_morphisms: int = 8,
                    attempts: int = 2000, name: str = "") -> Optional[FinCategory]:
    """Rejection sample a category; ``None`` when every attempt fails."""
    for _ in range(attempts):
        n = int(rng.integers(1, max_objects + 1))
        objects = [f"o{i}" for i in range(n)]
        extra = int(rng.integers(0, max(0, max_morphisms - n) + 1))
        arrows = {}
        for k in range(extra):
            a, b = rng.integers(n, size=2)
            arrows[f"m{k}"] = (objects[int(a)], objects[int(b)])
        c = _random_table(rng, objects, arrows, name)
        if c is not None and not validate_category(c):
            return c
    return None


def _random_table(rng: np.random.Generator, objects: Sequence[str], arrows: Dict[str, Tuple[str, str]],
                  name: str) -> Optional[FinCategory]:
    morphisms = {f"id_{x}": (x, x) for x in objects}
    morphisms.update(arrows)
    compose = {}
    for f, (a, b) in arrows.items():
        for g, (b2, c) in arrows.items():
            if b != b2:
                continue
            hom = [m for m, dc in morphisms.items() if dc == (a, c)]
            if not hom:
                return None
            compose[(f, g)] = hom[int(rng.integers(len(hom)))]
    return FinCategory.build(objects, arrows, compose, name=name)


def random_functor(rng: np.random.Generator, source: FinCategory, target: FinCategory,
                   limit: int = 256, name: str = "") -> Optional[FinFunctor]:
    candidates = list(enumerate_functors(source, target, limit=limit))
    if not candidates:
        return None
    F = candidates[int(rng.integers(len(candidates)))]
    F.name = name
    return F


def random_opindexed(rng: np.random.Generator, max_objects: int = 3, max_morphisms: int = 8,
                     fibre_objects: int = 3, attempts: int = 2000, name: str = "") -> Optional[StrictOpIndexedCat]:
    """Random base and fibres with reindexing drawn functor by functor, rejected unless strict."""
    for _ in range(attempts):
        base = random_category(rng, max_objects, max_morphisms, attempts, name=f"{name}.base")
        if base is None:
            return None
        fibres = {}
        for x in base.objects:
            fibres[x] = random_category(rng, fibre_objects, fibre_objects + 2, attempts, name=f"{name}.{x}")
            if fibres[x] is None:
                return None
        reindex = {}
        for f in base.morphisms:
            a, b = base.dom[f], base.cod[f]
            if base.is_identity(f):
                src = fibres[a]
                reindex[f] = FinFunctor(src, src, {o: o for o in src.objects},
                                        {m: m for m in src.morphisms}, name=f"I({f})")
                continue
            F = random_functor(rng, fibres[a], fibres[b], name=f"I({f})")
            if F is None:
                break
            reindex[f] = F
        else:
            I = StrictOpIndexedCat(base, fibres, reindex, name=name)
            if not validate_opindexed(I):
                return I
    return None


def gen_corpus(spec: CorpusSpec, seed: int = 0) -> List[object]:
    """``spec.count`` accepted samples of ``spec.kind``; the same seed gives the same list."""
    if spec.kind not in KINDS:
        raise PreconditionError(f"unknown corpus kind {spec.kind!r}")
    unknown = [f for f in spec.filters if f not in FILTERS]
    if unknown:
        raise PreconditionError(f"unknown corpus filter {unknown[0]!r}")
    rng = np.random.default_rng(seed)
    out: List[object] = []
    tries = 0
    while len(out) < spec.count and tries < spec.attempts:
        tries += 1
        label = f"corpus_{len(out):03d}"
        if spec.kind == "category":
            obj = random_category(rng, spec.max_objects, spec.max_morphisms, spec.attempts, name=label)
        elif spec.kind == "functor":
            source = random_category(rng, spec.max_objects, spec.max_morphisms, spec.attempts, name=f"{label}.src")
            target = random_category(rng, spec.max_objects, spec.max_morphisms, spec.attempts, name=f"{label}.tgt")
            obj = None if source is None or target is None else random_functor(rng, source, target, name=label)
        else:
            obj = random_opindexed(rng, spec.max_objects, spec.max_morphisms, spec.fibre_objects,
                                   spec.attempts, name=label)
        if obj is None or not all(FILTERS[f](obj) for f in spec.filters):
            continue
        out.append(obj)
    if len(out) < spec.count:
        logger.warning("corpus stopped at %d of %d samples after %d tries", len(out), spec.count, tries)
    else:
        logger.info("corpus: %d %s samples from seed %d in %d tries", len(out), spec.kind, seed, tries)
    return out


def write_corpus(samples: Sequence[object], directory) -> List[Path]:
    """One fixture file per sample, named by position."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, obj in enumerate(samples):
        if isinstance(obj, FinCategory):
            path, text = directory / f"corpus_{i:03d}.fc", format_category(obj)
        elif isinstance(obj, FinFunctor):
            path, text = directory / f"corpus_{i:03d}.fun", format_functor(obj)
        else:
            path, text = directory / f"corpus_{i:03d}.idx", format_opindexed(obj)
        path.write_text(text, encoding="utf-8")
        paths.append(path)
    return paths
