"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from opext import corpus
from opext.repcat import random_module

ALGEBRAS = corpus.all_algebras()

algebras = st.sampled_from(ALGEBRAS)
seeds = st.integers(0, 2 ** 32 - 1)


def modules_over(alg, max_generators=3):
    return seeds.map(lambda s: random_module(alg, random.Random(s), max_generators=max_generators))


def module_pairs():
    return algebras.flatmap(lambda a: st.tuples(modules_over(a), modules_over(a)))


def modules():
    return algebras.flatmap(modules_over)
