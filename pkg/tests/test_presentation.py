from __future__ import annotations

import pytest

from opext import corpus
from opext.errors import InputError, NotAdmissible, UnknownVertex
from opext.exactlin import QQ
from opext.presentation import (Arrow, Quiver, Relation, build_algebra, linear_quiver,
                                one_point_extension, opposite, recognize_extension)


def test_dimensions(a2, a3, a3_rel, one_vertex):
    assert a2.dimension == 3
    assert one_vertex.dimension == 1
    assert a3_rel.dimension == 5
    assert a3.dimension == 6


def test_path_basis_of_a2(a2):
    names = sorted(a2.path_name(p) for p in a2.path_basis)
    assert names == ["a1", "e1", "e2"]


def test_projective_dims(a2, one_vertex, a3_rel):
    assert a2.projective_dims() == {"1": (1, 1), "2": (0, 1)}
    assert one_vertex.projective_dims() == {"1": (1,)}
    assert a3_rel.projective_dims()["1"] == (1, 1, 0)


def test_opposite(a2, a3_rel):
    op = opposite(a2)
    assert op.dimension == 3
    assert op.arrows[0] == Arrow("a1", "2", "1")
    assert opposite(op) is a2
    rop = opposite(a3_rel)
    assert rop.dimension == 5
    assert rop.relations[0].terms[0][1] == ("a2", "a1")


def test_extension_by_p1(a2):
    ctx = one_point_extension(a2, {"1": 1})
    A = ctx.extended
    assert A.dimension == 6 == a2.dimension + ctx.p0_dimension() + 1
    assert A.relations == a2.relations
    assert A.vertices[-1] == ctx.new_vertex
    assert [a.target for a in A.arrows if a.source == ctx.new_vertex] == ["1"]


def test_extension_by_zero_and_p2(a2):
    assert one_point_extension(a2, {}).extended.dimension == 4
    ctx = one_point_extension(a2, {"2": 1})
    assert ctx.extended.dimension == 5


def test_extension_with_multiplicity(a2):
    ctx = one_point_extension(a2, {"1": 2})
    assert len(ctx.new_arrows) == 2
    assert ctx.extended.dimension == a2.dimension + 2 * 2 + 1


def test_extension_unknown_vertex(a2):
    with pytest.raises(UnknownVertex):
        one_point_extension(a2, {"3": 1})


def test_relations_checked():
    q = linear_quiver(3)
    with pytest.raises(InputError):
        build_algebra(QQ, q, [Relation(((1, ("a1",)),))])          # length one
    with pytest.raises(InputError):
        build_algebra(QQ, q, [Relation(((1, ("a2", "a1")),))])     # not composable


def test_infinite_dimensional_rejected():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(NotAdmissible):
        build_algebra(QQ, q, max_path_length=6)
    assert build_algebra(QQ, q, [Relation.monomial("x", "x")]).dimension == 2


def test_commutative_square():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"),
                                      Arrow("c", "1", "3"), Arrow("d", "3", "4")))
    alg = build_algebra(QQ, q, [Relation(((1, ("a", "b")), (-1, ("c", "d"))))])
    assert alg.dimension == 4 + 4 + 1
    nf = alg.normal_form((0, (0, 1)))
    assert nf == alg.normal_form((0, (2, 3)))


def test_normal_form_idempotent(a3_rel):
    for p in a3_rel.path_basis:
        assert a3_rel.normal_form(p) == {p: 1}


def test_deterministic(a3):
    again = build_algebra(QQ, a3.quiver, a3.relations)
    assert list(again.path_basis) == list(a3.path_basis)
    assert again.fingerprint == a3.fingerprint


def test_recognize_extension():
    for base, p0, name in corpus.EXTENSIONS:
        ctx = recognize_extension(corpus.load(name))
        assert ctx.base == corpus.load(base)
        assert ctx.p0_multiplicities == p0
    with pytest.raises(NotAdmissible):
        recognize_extension(corpus.load("a3_rel"))


def test_rad_of_new_projective_has_p0_dims(ctx):
    from opext.repcat import projective
    P = projective(ctx.extended, ctx.omega)
    want = [0] * ctx.base.n_vertices
    pd = ctx.base.projective_dims()
    for v, m in ctx.p0_multiplicities.items():
        for i, d in enumerate(pd[v]):
            want[i] += m * d
    assert list(P.dims[:-1]) == want and P.dims[-1] == 1
