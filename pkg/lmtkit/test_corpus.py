"""
Test script to verify the seeded corpus generator.
"""

import numpy as np
import pytest

from lmtkit.corpus import CorpusSpec, gen_corpus, random_category, write_corpus
from lmtkit.errors import PreconditionError
from lmtkit.file_formats import format_category, parse_category, parse_opindexed
from lmtkit.fincat import validate_category, validate_functor
from lmtkit.grothendieck import validate_opindexed
from lmtkit.opfibration_check import FuncOver, is_opfibration


def test_same_seed_same_corpus():
    spec = CorpusSpec(kind="category", count=5)
    first = [format_category(c) for c in gen_corpus(spec, seed=3)]
    second = [format_category(c) for c in gen_corpus(spec, seed=3)]
    assert first == second
    assert len(first) == 5


def test_samples_are_valid():
    for c in gen_corpus(CorpusSpec(kind="category", count=8, filters=("nontrivial",)), seed=1):
        assert validate_category(c) == []
        assert len(c.morphisms) > len(c.objects)
    for F in gen_corpus(CorpusSpec(kind="functor", count=4, max_objects=2, max_morphisms=4), seed=2):
        assert validate_functor(F) == []


def test_filters_hold_on_every_sample():
    samples = gen_corpus(CorpusSpec(kind="functor", count=3, max_objects=2, max_morphisms=4,
                                    filters=("opfibration",)), seed=5)
    assert all(is_opfibration(FuncOver(F)) for F in samples)


def test_unknown_kind_or_filter():
    with pytest.raises(PreconditionError):
        gen_corpus(CorpusSpec(kind="monoid"))
    with pytest.raises(PreconditionError):
        gen_corpus(CorpusSpec(filters=("abelian",)))


def test_write_corpus(tmp_path):
    samples = gen_corpus(CorpusSpec(kind="category", count=3), seed=0)
    paths = write_corpus(samples, tmp_path / "out")
    assert [p.name for p in paths] == ["corpus_000.fc", "corpus_001.fc", "corpus_002.fc"]
    assert [parse_category(p) for p in paths] == samples


def test_opindexed_corpus(tmp_path):
    samples = gen_corpus(CorpusSpec(kind="opindexed", count=2, max_objects=2, max_morphisms=3,
                                    fibre_objects=2), seed=4)
    for I in samples:
        assert validate_opindexed(I) == []
    for p in write_corpus(samples, tmp_path):
        assert validate_opindexed(parse_opindexed(p)) == []


def test_random_category_from_generator():
    c = random_category(np.random.default_rng(11), max_objects=2, max_morphisms=4)
    assert c is None or validate_category(c) == []


def test_draws_without_a_composite_are_rejected():
    """Composable arrows with no arrow for their composite reject the draw instead of failing."""
    rng = np.random.default_rng(0)
    for _ in range(50):
        c = random_category(rng, 3, 8)
        assert c is None or validate_category(c) == []


if __name__ == "__main__":
    test_same_seed_same_corpus()
    test_samples_are_valid()
    test_unknown_kind_or_filter()
    print("corpus checks complete")
