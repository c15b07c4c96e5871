"""Independent brute-force oracles over F_2.

Ext^1 is recomputed from the standard cocycle/coboundary description of
extensions of quiver representations; Pres(T) membership is decided by
searching every surjection T^m -> X and testing whether its kernel is
generated by T.  Both avoid the projective resolutions and approximations
the library uses.
"""

from __future__ import annotations

import itertools
from math import comb

import pytest

from opext import corpus
from opext.exactlin import GF, Matrix, kernel_basis
from opext.repcat import (Representation, direct_sum_module, enumerate_indecomposables,
                          ext_dim, is_isomorphic, pd)
from opext.tiltkit import enumerate_support_tau_tilting, enumerate_tilting, in_pres

F2 = GF(2)


def _rank(vectors):
    """Rank over F_2 of integer bit-vectors."""
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _bits(rows):
    return [sum(x << j for j, x in enumerate(row)) for row in rows]


def _mul(a, b, rows, inner, cols):
    """The rows x cols product of row-lists over F_2."""
    return [[sum(a[i][k] & b[k][j] for k in range(inner)) & 1 for j in range(cols)]
            for i in range(rows)]


def _all_matrices(r, c):
    for flat in itertools.product((0, 1), repeat=r * c):
        yield [list(flat[i * c:(i + 1) * c]) for i in range(r)]


def _all_reps(alg, total):
    """Every representation (not up to isomorphism) with the given total dimension."""
    q = alg.quiver
    n = alg.n_vertices
    for dims in itertools.product(range(total + 1), repeat=n):
        if sum(dims) != total:
            continue
        shapes = [(dims[t], dims[s]) for s, t in zip(q.src, q.tgt)]
        for mats in itertools.product(*[list(_all_matrices(r, c)) for r, c in shapes]):
            yield Representation(alg, dims, [Matrix(F2, m, c) for m, (r, c) in zip(mats, shapes)])


def _rows(M, i):
    return [list(r) for r in M.maps[i].rows]


# -- Ext^1 by cocycles ----------------------------------------------------------

def _coboundary(M, N, h):
    """The cocycle (N_a h_s - h_t M_a)_a of a vertex-wise linear map h: M -> N."""
    q = M.algebra.quiver
    out = []
    for i, (s, t) in enumerate(zip(q.src, q.tgt)):
        left = _mul(_rows(N, i), h[s], N.dims[t], N.dims[s], M.dims[s])
        right = _mul(h[t], _rows(M, i), N.dims[t], M.dims[t], M.dims[s])
        out.append(tuple(tuple((x + y) & 1 for x, y in zip(r1, r2)) for r1, r2 in zip(left, right)))
    return tuple(out)


def brute_ext1(M, N):
    """log_2 |Z| / |B|: all arrow-wise cocycles modulo all coboundaries (hereditary case)."""
    q = M.algebra.quiver
    z_bits = sum(N.dims[t] * M.dims[s] for s, t in zip(q.src, q.tgt))
    spaces = [list(_all_matrices(N.dims[v], M.dims[v])) for v in range(M.algebra.n_vertices)]
    boundaries = {_coboundary(M, N, h) for h in itertools.product(*spaces)}
    b_bits = len(boundaries).bit_length() - 1
    assert 1 << b_bits == len(boundaries)
    return z_bits - b_bits, boundaries


def _middle_term(M, N, c):
    """The extension 0 -> N -> E_c -> M -> 0 with E_a = [[N_a, c_a], [0, M_a]]."""
    alg = M.algebra
    q = alg.quiver
    dims = [N.dims[v] + M.dims[v] for v in range(alg.n_vertices)]
    maps = []
    for i, (s, t) in enumerate(zip(q.src, q.tgt)):
        top = [list(r) + list(cr) for r, cr in zip(_rows(N, i) or [[]] * N.dims[t], c[i])]
        bottom = [[0] * N.dims[s] + list(r) for r in _rows(M, i)]
        maps.append(Matrix(F2, top + bottom, dims[s]))
    return Representation(alg, dims, maps)


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_ext1_matches_cocycle_count(name):
    alg = corpus.load(name, F2)
    by_dim = {d: list(_all_reps(alg, d)) for d in range(1, 4)}
    pairs = 0
    for dm in range(1, 4):
        for dn in range(1, 5 - dm):
            for M in by_dim[dm]:
                for N in by_dim[dn]:
                    want, _ = brute_ext1(M, N)
                    assert ext_dim(1, M, N) == want, (M.dims, N.dims)
                    pairs += 1
    assert pairs >= 76


def test_split_classes_are_coboundaries():
    """c is a coboundary exactly when E_c is isomorphic to M + N."""
    alg = corpus.load("a3", F2)
    reps = [X for d in (1, 2) for X in _all_reps(alg, d)]
    q = alg.quiver
    for M in reps:
        for N in reps:
            if M.dim + N.dim > 4:
                continue
            _, boundaries = brute_ext1(M, N)
            split = direct_sum_module([N, M], alg)
            shapes = [(N.dims[t], M.dims[s]) for s, t in zip(q.src, q.tgt)]
            for c in itertools.product(*[list(_all_matrices(r, cc)) for r, cc in shapes]):
                key = tuple(tuple(tuple(r) for r in m) for m in c)
                assert (key in boundaries) == is_isomorphic(_middle_term(M, N, c), split)


# -- Pres(T) by exhaustive presentation search ------------------------------------

def _homs(M, N):
    """Every module map M -> N, as per-vertex row lists."""
    spaces = [list(_all_matrices(N.dims[v], M.dims[v])) for v in range(M.algebra.n_vertices)]
    return [h for h in itertools.product(*spaces)
            if all(not any(r) for m in _coboundary(M, N, h) for r in m)]


def _hcat(blocks, rows):
    return [sum((b[i] for b in blocks), []) for i in range(rows)]


def _kernel_generated(T, X, f, endos):
    """Whether ker(f: T^m -> X) is the sum of images of maps T -> T^m it contains."""
    alg = T.algebra
    m = len(f)
    n = alg.n_vertices
    # unknown coefficients c[i][k]: h = sum c_ik * (inclusion_i . endo_k)
    nvars = m * len(endos)
    eqs = []
    for v in range(n):
        for r in range(X.dims[v]):
            for col in range(T.dims[v]):
                row = []
                for i in range(m):
                    for e in endos:
                        fe = _mul(f[i][v], e[v], X.dims[v], T.dims[v], T.dims[v])
                        row.append(fe[r][col])
                eqs.append(row)
    if eqs:
        sols = kernel_basis(Matrix(F2, eqs, nvars))
        sol_vecs = [[int(sols.rows[j][k]) for j in range(nvars)] for k in range(sols.ncols)]
    else:
        sol_vecs = [[int(j == k) for j in range(nvars)] for k in range(nvars)]
    for v in range(n):
        d = T.dims[v]
        columns = []
        for c in sol_vecs:
            # the vertex-v matrix of h, stacked over the m copies
            h = [[0] * d for _ in range(m * d)]
            for i in range(m):
                for k, e in enumerate(endos):
                    if c[i * len(endos) + k]:
                        for r in range(d):
                            for col in range(d):
                                h[i * d + r][col] ^= e[v][r][col]
            columns += [[h[r][col] for r in range(m * d)] for col in range(d)]
        if _rank(_bits(columns)) != m * d - X.dims[v]:
            return False
    return True


def brute_in_pres(T, X):
    homs = [h for h in _homs(T, X) if any(any(any(r) for r in b) for b in h)]
    endo_vecs = _homs(T, T)
    # a basis of End(T) suffices for the span computation
    endos, seen = [], []
    for e in endo_vecs:
        vec = int("".join(str(x) for b in e for r in b for x in r) or "0", 2)
        if _rank(seen + [vec]) > len(seen):
            seen.append(vec)
            endos.append(e)
    h_rank = _rank([int("".join(str(x) for b in h for r in b for x in r) or "0", 2) for h in homs])
    for m in range(1, h_rank + 1):
        for f in itertools.combinations_with_replacement(homs, m):
            surjective = all(
                _rank(_bits([list(col) for col in zip(*_hcat([list(map(list, g[v])) for g in f],
                                                              X.dims[v]))])) == X.dims[v]
                for v in range(T.algebra.n_vertices))
            if surjective and _kernel_generated(T, X, f, endos):
                return True
    return False


def _sums(inds, total):
    """Direct sums (multisets of catalogue indecomposables) of the given total dimension."""
    for k in range(1, total + 1):
        for combo in itertools.combinations_with_replacement(range(len(inds)), k):
            if sum(inds[i].dim for i in combo) == total:
                yield [inds[i] for i in combo]


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_pres_matches_exhaustive_search(name):
    alg = corpus.load(name, F2)
    inds = list(enumerate_indecomposables(alg))
    checked = 0
    for dt in range(1, 4):
        for Tparts in _sums(inds, dt):
            T = direct_sum_module(Tparts, alg)
            for dx in range(1, 5 - dt):
                for Xparts in _sums(inds, dx):
                    X = direct_sum_module(Xparts, alg)
                    assert in_pres(Tparts, X) == brute_in_pres(T, X), (
                        [p.dims for p in Tparts], [p.dims for p in Xparts])
                    checked += 1
    assert checked > 20


# -- classical counts --------------------------------------------------------------

def catalan(n):
    return comb(2 * n, n) // (n + 1)


@pytest.mark.parametrize("name,n", [("a2", 2), ("a3", 3)])
def test_linear_counts_match_catalan(name, n):
    alg = corpus.load(name, F2)
    assert len(enumerate_indecomposables(alg)) == n * (n + 1) // 2
    assert len(enumerate_tilting(alg)) == catalan(n)
    assert len(enumerate_support_tau_tilting(alg)) == catalan(n + 1)


@pytest.mark.parametrize("name", ["a2", "a3", "a2_p1", "a2_p2"])
def test_tilting_count_by_rigid_subsets(name):
    """Tilting = n pairwise Ext-orthogonal indecomposables of pd <= 1 (hereditary algebras)."""
    alg = corpus.load(name, F2)
    inds = list(enumerate_indecomposables(alg))
    ok = [X for X in inds if pd(X) <= 1]
    rigid = {(i, j): brute_ext1(ok[i], ok[j])[0] == 0 for i in range(len(ok)) for j in range(len(ok))}
    count = sum(1 for S in itertools.combinations(range(len(ok)), alg.n_vertices)
                if all(rigid[i, j] for i in S for j in S))
    assert count == len(enumerate_tilting(alg))
