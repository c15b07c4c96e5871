from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from opext import corpus
from opext.errors import AlgebraMismatch
from opext.functors import ext_transport_report, view_of
from opext.repcat import (cokernel, decompose, ext_dim, hom_basis, hom_dim, injective,
                          is_isomorphic, kernel, projective, random_module, simple)

EXTENSIONS = [corpus.extension(i) for i in range(3)]
views = st.sampled_from([view_of(c) for c in EXTENSIONS])
seeds = st.integers(0, 2 ** 32 - 1)


@pytest.fixture
def v3():
    """A_3 = B[P_1] over B = linear A_2."""
    return view_of(corpus.extension(0))


# -- examples ----------------------------------------------------------------------

def test_restrict_examples(v3):
    Pw = projective(v3.A, v3.omega)
    assert is_isomorphic(v3.restrict(Pw), projective(v3.B, "1"))
    assert v3.restrict(v3.S).dim == 0
    M = random_module(v3.B, random.Random(1))
    assert v3.restrict(v3.embed(M)).dims == M.dims


def test_extend_examples(v3):
    E = v3.extend(projective(v3.B, "1"))
    assert E.dims == (1, 1, 1)
    assert is_isomorphic(E, projective(v3.A, v3.omega))
    assert v3.extend(simple(v3.B, "1").__class__(v3.B, [0, 0])).dim == 0
    S2 = simple(v3.B, "2")
    assert is_isomorphic(v3.extend(S2), v3.embed(S2))


def test_type_guards(v3):
    with pytest.raises(AlgebraMismatch):
        v3.restrict(simple(v3.B, 0))
    with pytest.raises(AlgebraMismatch):
        v3.extend(v3.S)


def test_u_v(v3):
    assert v3.s_socle(v3.S) == 1 and v3.top_fiber(v3.S) == 1
    assert v3.s_socle(v3.embed(projective(v3.B, "1"))) == 0
    assert v3.top_fiber(projective(v3.A, v3.omega)) == 1
    assert v3.inflate(2).dims == (0, 0, 2)


def test_sequences_examples(v3):
    seq = v3.restriction_sequence(v3.S)
    assert seq.is_exact() and seq.terms[0].dim == 0 and seq.s_multiplicity == 1
    LM = v3.embed(projective(v3.B, "2"))
    seq = v3.restriction_sequence(LM)
    assert seq.is_exact() and seq.s_multiplicity == 0
    seq = v3.extension_sequence(projective(v3.B, "1"))
    assert seq.is_exact() and seq.s_multiplicity == 1
    assert is_isomorphic(seq.terms[1], projective(v3.A, v3.omega))


def test_delta_examples(v3):
    M = projective(v3.B, "1")
    d = v3.unit_delta(v3.embed(M))
    assert d.is_injective() and is_isomorphic(d.target, v3.extend(M))
    d = v3.unit_delta(v3.S)
    assert d.target.dim == 0 and v3.delta_multiplicities(v3.S) == (1, 0)
    assert v3.unit_delta(projective(v3.A, v3.omega)).is_iso()


def test_s_perp_examples(v3):
    assert not v3.in_s_perp(v3.S)
    LS1 = v3.embed(simple(v3.B, "1"))
    assert hom_dim(v3.S, LS1) == 0 and ext_dim(1, v3.S, LS1) == 1
    assert not v3.in_s_perp(LS1, cross_check=True)


def test_ext_transport_examples(v3):
    rng = random.Random(5)
    for _ in range(5):
        M = random_module(v3.B, rng)
        rep = ext_transport_report(v3, v3.S, v3.S, M)
        assert rep.ok
        for r in rep.records:
            if r.item == 2:
                assert r.lhs == r.rhs == 0
    X, Y = v3.embed(simple(v3.B, "1")), v3.embed(simple(v3.B, "2"))
    t = v3.ext1_transport_rank(X, Y)
    assert t["image"] == t["ext_B"] == 1


def test_construction_certifies_s(ctx):
    v = view_of(ctx)
    assert is_isomorphic(v.S, injective(v.A, v.omega))


# -- properties ----------------------------------------------------------------------

@given(views, seeds, seeds)
def test_adjunctions(view, s1, s2):
    X = random_module(view.A, random.Random(s1))
    M = random_module(view.B, random.Random(s2))
    assert hom_dim(X, view.extend(M)) == hom_dim(view.restrict(X), M)
    assert hom_dim(view.embed(M), X) == hom_dim(M, view.restrict(X))


def _exact_at(f, g):
    """im f = ker g, vertexwise."""
    return (g @ f).is_zero() and all(a + b == d for a, b, d in
                                     zip(f.ranks(), g.ranks(), f.target.dims))


@given(views, seeds, seeds)
def test_functors_exact(view, s1, s2):
    """R, E and L carry 0 -> ker f -> X -> Y -> coker f -> 0 to exact sequences."""
    cases = [(view.A, (view.restrict,)), (view.B, (view.extend, view.embed))]
    for alg, functors in cases:
        X = random_module(alg, random.Random(s1))
        Y = random_module(alg, random.Random(s2))
        for f in hom_basis(X, Y)[:2]:
            _, inc = kernel(f)
            _, proj = cokernel(f)
            for F in functors:
                assert F(inc).is_injective() and F(proj).is_surjective()
                assert _exact_at(F(inc), F(f)) and _exact_at(F(f), F(proj))


@pytest.mark.parametrize("i", range(3))
def test_r_preserves_projectives_and_injectives(i):
    view = view_of(corpus.extension(i))
    projs = [projective(view.B, v) for v in range(view.nB)]
    injs = [injective(view.B, v) for v in range(view.nB)]
    for v in range(view.A.n_vertices):
        for X, pool in ((projective(view.A, v), projs), (injective(view.A, v), injs)):
            for Y, _ in decompose(view.restrict(X)) if view.restrict(X).dim else []:
                assert any(is_isomorphic(Y, Z) for Z in pool)
    A_injs = [injective(view.A, v) for v in range(view.A.n_vertices)]
    for I in injs:
        for Y, _ in decompose(view.extend(I)):
            assert any(is_isomorphic(Y, Z) for Z in A_injs)


@given(views, seeds)
def test_delta_kernel_cokernel_are_s_powers(view, s):
    X = random_module(view.A, random.Random(s))
    d = view.unit_delta(X)
    K, _ = kernel(d)
    C, _ = cokernel(d)
    a, b = hom_dim(view.S, X), ext_dim(1, view.S, X)
    assert K.dims == view.inflate(a).dims
    assert C.dims == view.inflate(b).dims
    assert d.is_surjective() == (b == 0) and d.is_injective() == (a == 0)


@given(views, seeds)
def test_er_is_identity_on_s_perp(view, s):
    X = random_module(view.A, random.Random(s))
    if view.in_s_perp(X, cross_check=True):
        assert is_isomorphic(view.extend(view.restrict(X)), X)
    M = random_module(view.B, random.Random(s))
    assert view.in_s_perp(view.extend(M), cross_check=True)


@given(views, seeds, seeds, seeds)
def test_ext_transport(view, s1, s2, s3):
    X = random_module(view.A, random.Random(s1))
    Y = random_module(view.A, random.Random(s2))
    M = random_module(view.B, random.Random(s3))
    rep = ext_transport_report(view, X, Y, M)
    assert rep.ok, rep.violations
