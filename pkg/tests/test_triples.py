from __future__ import annotations

import pytest

from opext import corpus
from opext.functors import view_of
from opext.repcat import injective, projective, simple
from opext.tiltkit import (SubcatSample, catalog, enumerate_support_tau_tilting,
                           enumerate_tilting, transport_tilting)
from opext.triples import (COTORSION, TAU_COTORSION, round_trip, transport_triple,
                           triple_from_tilting, verify_cotorsion_pair, verify_tau_cotorsion_pair,
                           verify_torsion_pair, verify_triple)


def idx(alg, *mods):
    cat = catalog(alg)
    return frozenset(cat.index(X) for X in mods)


def test_trivial_triple(a2):
    cat = catalog(a2)
    T = SubcatSample.from_modules(a2, [projective(a2, "1"), projective(a2, "2")])
    tr = triple_from_tilting(T)
    everything = frozenset(range(len(cat.modules)))
    assert tr.T == everything and tr.F == frozenset()
    assert tr.C == idx(a2, projective(a2, "1"), projective(a2, "2"))
    assert verify_triple(tr).ok and round_trip(tr)


def test_a2_tilting_triple(a2):
    P1, P2, S1, S2 = (projective(a2, "1"), projective(a2, "2"), simple(a2, "1"),
                      simple(a2, "2"))
    tr = triple_from_tilting(SubcatSample.from_modules(a2, [P1, S1]))
    assert tr.T == idx(a2, P1, S1)
    assert tr.F == idx(a2, S2)
    assert tr.C == idx(a2, P1, P2, S1)
    assert verify_triple(tr).ok and round_trip(tr)


def test_a2_tau_triple(a2):
    P2, S1 = projective(a2, "2"), simple(a2, "1")
    tr = triple_from_tilting(SubcatSample.from_modules(a2, [P2]), TAU_COTORSION)
    assert tr.T == idx(a2, P2)
    assert tr.F == idx(a2, S1)
    v = verify_tau_cotorsion_pair(a2, tr.C, tr.T)
    assert v.ok and v.clauses["projective_sequences"]
    assert verify_triple(tr).ok


def test_verify_torsion_pair_examples(a2):
    everything = range(len(catalog(a2).modules))
    assert verify_torsion_pair(a2, everything, []).ok
    assert verify_torsion_pair(a2, [], everything).ok
    assert verify_torsion_pair(a2, idx(a2, projective(a2, "2")), idx(a2, simple(a2, "1"))).ok
    v = verify_torsion_pair(a2, idx(a2, simple(a2, "1")), idx(a2, simple(a2, "2")))
    assert not v.ok
    assert catalog(a2).index(projective(a2, "1")) in v.evidence["canonical_sequences"]


def test_cotorsion_pair_injectives(a2):
    everything = range(len(catalog(a2).modules))
    injs = idx(a2, injective(a2, "1"), injective(a2, "2"))
    v = verify_cotorsion_pair(a2, everything, injs)
    assert v.clauses["C_is_left_perp"] and v.clauses["D_is_right_perp"]


@pytest.mark.parametrize("name", ["a2", "a3", "a3_rel", "a2_p1", "a2_p2"])
def test_every_emitted_triple_verifies(name):
    alg = corpus.load(name)
    for T in enumerate_tilting(alg):
        tr = triple_from_tilting(T)
        assert round_trip(tr) and verify_triple(tr).ok
    for T in enumerate_support_tau_tilting(alg):
        tr = triple_from_tilting(T, TAU_COTORSION)
        assert round_trip(tr) and verify_triple(tr).ok


def test_trivial_triple_restricts_to_trivial():
    view = view_of(corpus.extension(0))
    A, B = view.A, view.B
    tr = triple_from_tilting(SubcatSample.from_modules(
        A, [projective(A, v) for v in range(A.n_vertices)]))
    new, rep = transport_triple(view, "Restrict", tr)
    assert new.T == frozenset(range(len(catalog(B).modules))) and new.F == frozenset()
    assert rep.ok


@pytest.mark.parametrize("kind", [COTORSION, TAU_COTORSION])
def test_transport_all_triples(ctx, kind):
    view = view_of(ctx)
    enum = enumerate_tilting if kind == COTORSION else enumerate_support_tau_tilting
    for T in enum(view.A):
        _, rep = transport_triple(view, "Restrict", triple_from_tilting(T, kind))
        assert rep.ok
    for T in enum(view.B):
        new, rep = transport_triple(view, "Extend", triple_from_tilting(T, kind))
        assert rep.ok and verify_triple(new).ok


def test_extended_tilting_triple_matches():
    view = view_of(corpus.extension(0))
    for T in enumerate_tilting(view.B):
        new, rep = transport_triple(view, "Extend", triple_from_tilting(T))
        ET, _ = transport_tilting(view, "Extend", T)
        assert new.provenance.same_as(ET)
        assert all(r.status == "pass" for r in rep.records)
