"""Finite-dimensional representations of a bound quiver algebra.

A representation assigns a vector space ``k^{d_v}`` to every vertex and a
``d_t x d_s`` matrix to every arrow ``s -> t``; a path ``a.b`` acts as
``M_b @ M_a``.  Everything here is exact: homomorphism spaces are kernels of
the commuting-square system, Ext is read off minimal projective resolutions,
and the Auslander-Reiten translate is computed as D Tr.
"""

from __future__ import annotations

import itertools
import logging
import math
import threading
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (AlgebraMismatch, FieldTooSmall, InfiniteResolution, RelationViolation,
                     SearchBudgetExceeded)
from .exactlin import (FieldSpec, Matrix, block_diag, column_basis, complement_columns, hstack,
                       inverse, kernel_basis, rank, solve_right, vstack)
from .presentation import AlgebraPresentation, Path, opposite, reverse_path

log = logging.getLogger(__name__)


class Representation:
    """A module over ``algebra``: per-vertex dimensions and per-arrow matrices."""

    __slots__ = ("algebra", "dims", "maps", "label", "_paths", "__weakref__")

    def __init__(self, algebra: AlgebraPresentation, dims, maps=None, check: bool = True,
                 label: str = ""):
        self.algebra = algebra
        f = algebra.field
        if isinstance(dims, dict):
            d = [0] * algebra.n_vertices
            for v, n in dims.items():
                d[algebra.vertex(v)] = int(n)
            dims = d
        dims = tuple(int(x) for x in dims)
        if len(dims) != algebra.n_vertices:
            raise ValueError("one dimension per vertex required")
        if any(x < 0 for x in dims):
            raise ValueError("negative dimension")
        self.dims = dims
        arrows = algebra.arrows
        src, tgt = algebra.quiver.src, algebra.quiver.tgt
        if maps is None:
            maps = {}
        if isinstance(maps, dict):
            idx = algebra.quiver.arrow_index
            seq = [None] * len(arrows)
            for a, m in maps.items():
                seq[idx[a] if not isinstance(a, int) else a] = m
            maps = seq
        out = []
        for i, m in enumerate(maps):
            shape = (dims[tgt[i]], dims[src[i]])
            if m is None:
                m = Matrix.zeros(f, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix(f, m, shape[1])
            if m.shape != shape:
                raise ValueError(f"arrow {arrows[i].id}: matrix shape {m.shape}, expected {shape}")
            out.append(m)
        if len(out) != len(arrows):
            raise ValueError("one matrix per arrow required")
        self.maps = tuple(out)
        self.label = label
        self._paths: Dict[tuple, Matrix] = {}
        if check:
            self.check_relations()

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v) -> int:
        return self.dims[self.algebra.vertex(v)]

    def arrow_map(self, a) -> Matrix:
        if not isinstance(a, int):
            a = self.algebra.quiver.arrow_index[a]
        return self.maps[a]

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, path: Path) -> Matrix:
        v, w = path
        m = self._paths.get(path)
        if m is None:
            if not w:
                m = Matrix.identity(self.field, self.dims[v])
            else:
                m = self.maps[w[-1]] @ self.path_matrix((v, w[:-1]))
            self._paths[path] = m
        return m

    def check_relations(self):
        alg = self.algebra
        q = alg.quiver
        f = self.field
        for rel in alg.relations:
            acc = None
            for c, path in rel.terms:
                idx = tuple(q.arrow_index[a] for a in path)
                term = self.path_matrix((q.src[idx[0]], idx)).scale(f(c))
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise RelationViolation("representation does not satisfy a relation of the algebra")

    def canonical_bytes(self) -> bytes:
        parts = [repr(self.dims)]
        for m in self.maps:
            parts.append(";".join(",".join(str(x) for x in r) for r in m.rows))
        return "|".join(parts).encode()

    def __repr__(self):
        label = f"{self.label} " if self.label else ""
        return f"<Representation {label}dims={self.dims}>"


class ModuleMap:
    """A homomorphism of representations: one matrix per vertex."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Representation, target: Representation, mats, check: bool = True):
        if source.algebra != target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")
        f = source.field
        out = []
        for v, m in enumerate(mats):
            shape = (target.dims[v], source.dims[v])
            if not isinstance(m, Matrix):
                m = Matrix(f, m, shape[1])
            if m.shape != shape:
                raise ValueError(f"vertex {v}: shape {m.shape}, expected {shape}")
            out.append(m)
        self.source = source
        self.target = target
        self.mats = tuple(out)
        if check and not self.commutes():
            raise ValueError("vertex maps do not commute with the arrow maps")

    @property
    def algebra(self):
        return self.source.algebra

    def commutes(self) -> bool:
        q = self.source.algebra.quiver
        for a, (s, t) in enumerate(zip(q.src, q.tgt)):
            if self.target.maps[a] @ self.mats[s] != self.mats[t] @ self.source.maps[a]:
                return False
        return True

    @classmethod
    def identity(cls, M: Representation) -> "ModuleMap":
        return cls(M, M, [Matrix.identity(M.field, d) for d in M.dims], check=False)

    @classmethod
    def zero(cls, M: Representation, N: Representation) -> "ModuleMap":
        return cls(M, N, [Matrix.zeros(M.field, e, d) for d, e in zip(M.dims, N.dims)], check=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self o other``."""
        if other.target is not self.source and other.target.dims != self.source.dims:
            raise ValueError("maps are not composable")
        return ModuleMap(other.source, self.target,
                         [a @ b for a, b in zip(self.mats, other.mats)], check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a - b for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [m.scale(c) for m in self.mats], check=False)

    def flatten(self) -> list:
        return [x for m in self.mats for x in m.flatten()]

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def ranks(self) -> Tuple[int, ...]:
        return tuple(rank(m) for m in self.mats)

    def is_injective(self) -> bool:
        return self.ranks() == self.source.dims

    def is_surjective(self) -> bool:
        return self.ranks() == self.target.dims

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "ModuleMap":
        mats = [inverse(m) for m in self.mats]
        if any(m is None for m in mats):
            raise ValueError("map is not invertible")
        return ModuleMap(self.target, self.source, mats, check=False)

    def __repr__(self):
        return f"<ModuleMap {self.source.dims} -> {self.target.dims}>"


def _same_algebra(*mods):
    a = mods[0].algebra
    for m in mods[1:]:
        if m.algebra != a:
            raise AlgebraMismatch("modules live over different algebras")


# -- Hom -------------------------------------------------------------------

@dataclass
class ExtSpace:
    """Ext^degree(source, target) with cocycle representatives built on demand."""

    degree: int
    dim: int
    source: Representation
    target: Representation
    _vectors: list = dc_field(default_factory=list, repr=False)
    _builder: object = dc_field(default=None, repr=False)
    _basis: Optional[list] = dc_field(default=None, repr=False)

    @property
    def cocycle_basis(self) -> List[ModuleMap]:
        if self._basis is None:
            self._basis = [self._builder(v) for v in self._vectors] if self._builder else []
        return self._basis


def _hom_system(M: Representation, N: Representation):
    f = M.field
    q = M.algebra.quiver
    offs = []
    total = 0
    for v in range(len(M.dims)):
        offs.append(total)
        total += M.dims[v] * N.dims[v]
    rows = []
    zero = f.zero
    p = f.p
    for a, (s, t) in enumerate(zip(q.src, q.tgt)):
        Na, Ma = N.maps[a], M.maps[a]
        ms, mt, ns = M.dims[s], M.dims[t], N.dims[s]
        for i in range(N.dims[t]):
            for j in range(ms):
                row = [zero] * total
                for k in range(ns):
                    x = Na.rows[i][k]
                    if x:
                        row[offs[s] + k * ms + j] += x
                for k in range(mt):
                    x = Ma.rows[k][j]
                    if x:
                        row[offs[t] + i * mt + k] -= x
                if p:
                    row = [x % p for x in row]
                rows.append(row)
    return Matrix._raw(f, rows, total), offs, total


def _vector_to_map(M, N, offs, vec) -> ModuleMap:
    mats = []
    for v in range(len(M.dims)):
        m, n = M.dims[v], N.dims[v]
        seg = vec[offs[v]:offs[v] + m * n]
        mats.append(Matrix._raw(M.field, [list(seg[i * m:(i + 1) * m]) for i in range(n)], m))
    return ModuleMap(M, N, mats, check=False)


@lru_cache(maxsize=1 << 16)
def hom_basis(M: Representation, N: Representation) -> Tuple[ModuleMap, ...]:
    """A basis of Hom(M, N) as module maps."""
    _same_algebra(M, N)
    system, offs, total = _hom_system(M, N)
    if total == 0:
        return ()
    if system.nrows == 0:
        ker = Matrix.identity(M.field, total)
    else:
        ker = kernel_basis(system)
    return tuple(_vector_to_map(M, N, offs, c) for c in ker.columns())


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_basis(M, N))


def hom_space(M: Representation, N: Representation) -> ExtSpace:
    basis = list(hom_basis(M, N))
    return ExtSpace(0, len(basis), M, N, _basis=basis)


# -- sub, quotient, kernel, cokernel, image -----------------------------------

def subrepresentation(M: Representation, bases: Sequence[Matrix]):
    """Submodule spanned per vertex by the columns of ``bases`` (assumed independent)."""
    q = M.algebra.quiver
    maps = []
    for a, (s, t) in enumerate(zip(q.src, q.tgt)):
        rhs = M.maps[a] @ bases[s]
        if bases[t].ncols == 0:
            if not rhs.is_zero():
                raise ValueError("subspaces are not closed under the arrow maps")
            maps.append(Matrix.zeros(M.field, 0, bases[s].ncols))
            continue
        x = solve_right(bases[t], rhs)
        if x is None:
            raise ValueError("subspaces are not closed under the arrow maps")
        maps.append(x)
    sub = Representation(M.algebra, [b.ncols for b in bases], maps, check=False)
    return sub, ModuleMap(sub, M, list(bases), check=False)


def quotient(M: Representation, bases: Sequence[Matrix]):
    """Quotient by the submodule spanned per vertex by ``bases``; returns (Q, projection)."""
    f = M.field
    q = M.algebra.quiver
    projs, sections = [], []
    for v, b in enumerate(bases):
        n = M.dims[v]
        comp = complement_columns(b)
        sec = Matrix.from_columns(f, [[f.one if i == j else f.zero for i in range(n)] for j in comp], n)
        full = hstack(f, [b, sec], n)
        inv = inverse(full)
        projs.append(inv.submatrix(range(b.ncols, n), range(n)))
        sections.append(sec)
    maps = [projs[t] @ M.maps[a] @ sections[s] for a, (s, t) in enumerate(zip(q.src, q.tgt))]
    Q = Representation(M.algebra, [p.nrows for p in projs], maps, check=False)
    return Q, ModuleMap(M, Q, projs, check=False)


def kernel(f: ModuleMap):
    return subrepresentation(f.source, [kernel_basis(m) for m in f.mats])


def image(f: ModuleMap):
    return subrepresentation(f.target, [column_basis(m) for m in f.mats])


def cokernel(f: ModuleMap):
    return quotient(f.target, [column_basis(m) for m in f.mats])


def direct_sum(mods: Sequence[Representation], algebra: Optional[AlgebraPresentation] = None):
    """Direct sum with its canonical injections and projections."""
    mods = list(mods)
    if not mods:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        Z = zero_module(algebra)
        return Z, [], []
    alg = mods[0].algebra
    _same_algebra(*mods)
    f = alg.field
    n = alg.n_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(n)]
    maps = [block_diag(f, [m.maps[a] for m in mods]) for a in range(len(alg.arrows))]
    S = Representation(alg, dims, maps, check=False)
    inj, proj = [], []
    offs = [0] * n
    for m in mods:
        im, pm = [], []
        for v in range(n):
            d = m.dims[v]
            e = Matrix.zeros(f, dims[v], d).rows
            for i in range(d):
                e[offs[v] + i][i] = f.one
            E = Matrix._raw(f, e, d)
            im.append(E)
            pm.append(E.T)
            offs[v] += d
        inj.append(ModuleMap(m, S, im, check=False))
        proj.append(ModuleMap(S, m, pm, check=False))
    return S, inj, proj


def direct_sum_module(mods: Sequence[Representation], algebra=None) -> Representation:
    return direct_sum(mods, algebra)[0]


def power(M: Representation, n: int) -> Representation:
    return direct_sum_module([M] * n, M.algebra)


def zero_module(alg: AlgebraPresentation) -> Representation:
    return Representation(alg, [0] * alg.n_vertices, check=False)


# -- simples, projectives, injectives ----------------------------------------

@lru_cache(maxsize=4096)
def simple(alg: AlgebraPresentation, v) -> Representation:
    i = alg.vertex(v)
    dims = [0] * alg.n_vertices
    dims[i] = 1
    return Representation(alg, dims, check=False, label=f"S{alg.vertices[i]}")


@lru_cache(maxsize=4096)
def projective(alg: AlgebraPresentation, v) -> Representation:
    i = alg.vertex(v)
    f = alg.field
    q = alg.quiver
    n = alg.n_vertices
    bases = [alg.paths_between(i, w) for w in range(n)]
    index = [{p: k for k, p in enumerate(b)} for b in bases]
    maps = []
    for a, (s, t) in enumerate(zip(q.src, q.tgt)):
        rows = [[f.zero] * len(bases[s]) for _ in bases[t]]
        for col, pth in enumerate(bases[s]):
            for r, c in alg.multiply(pth, (s, (a,))).items():
                rows[index[t][r]][col] = c
        maps.append(Matrix._raw(f, rows, len(bases[s])))
    return Representation(alg, [len(b) for b in bases], maps, check=False,
                          label=f"P{alg.vertices[i]}")


@lru_cache(maxsize=4096)
def injective(alg: AlgebraPresentation, v) -> Representation:
    i = alg.vertex(v)
    I = dual(projective(opposite(alg), i))
    I.label = f"I{alg.vertices[i]}"
    return I


def projective_sum(alg: AlgebraPresentation, vertices: Sequence[int]) -> Representation:
    if not vertices:
        return zero_module(alg)
    return direct_sum_module([projective(alg, v) for v in vertices])


def map_from_generators(alg: AlgebraPresentation, vertices: Sequence[int], target: Representation,
                        elements: Sequence[Sequence], source: Optional[Representation] = None
                        ) -> ModuleMap:
    """The map from sum_j P_{w_j} sending the j-th generator to ``elements[j]`` in target_{w_j}."""
    f = alg.field
    P = source if source is not None else projective_sum(alg, vertices)
    mats = []
    for u in range(alg.n_vertices):
        cols = []
        for w, x in zip(vertices, elements):
            xm = Matrix._raw(f, [[c] for c in x], 1)
            for pth in alg.paths_between(w, u):
                cols.append((target.path_matrix(pth) @ xm).column(0))
        mats.append(Matrix.from_columns(f, cols, target.dims[u]))
    return ModuleMap(P, target, mats, check=False)


# -- radical layers -----------------------------------------------------------

def _radical_bases(M: Representation) -> List[Matrix]:
    q = M.algebra.quiver
    f = M.field
    out = []
    for v in range(len(M.dims)):
        blocks = [M.maps[a] for a, t in enumerate(q.tgt) if t == v]
        if not blocks:
            out.append(Matrix.zeros(f, M.dims[v], 0))
        else:
            out.append(column_basis(hstack(f, blocks, M.dims[v])))
    return out


def radical(M: Representation):
    return subrepresentation(M, _radical_bases(M))


def top(M: Representation):
    return quotient(M, _radical_bases(M))


def socle(M: Representation):
    q = M.algebra.quiver
    f = M.field
    bases = []
    for v in range(len(M.dims)):
        blocks = [M.maps[a] for a, s in enumerate(q.src) if s == v]
        if not blocks:
            bases.append(Matrix.identity(f, M.dims[v]))
        else:
            bases.append(kernel_basis(vstack(f, blocks, M.dims[v])))
    return subrepresentation(M, bases)


def top_generators(M: Representation) -> List[Tuple[int, list]]:
    """Elements of M lifting a basis of top(M), as (vertex, vector) pairs."""
    f = M.field
    gens = []
    for v, rb in enumerate(_radical_bases(M)):
        for j in complement_columns(rb):
            gens.append((v, [f.one if i == j else f.zero for i in range(M.dims[v])]))
    return gens


def projective_cover(M: Representation):
    gens = top_generators(M)
    verts = [v for v, _ in gens]
    return map_from_generators(M.algebra, verts, M, [x for _, x in gens]), verts


# -- resolutions --------------------------------------------------------------

@dataclass
class _Step:
    vertices: List[int]
    module: Representation
    diff: List[list]             # generator images in the previous term
    syzygy: Representation       # kernel of the map out of this term
    syzygy_incl: ModuleMap


class _Resolution:
    def __init__(self, M: Representation):
        self.M = M
        self.steps: List[_Step] = []
        self.finished = False
        self.cover: Optional[ModuleMap] = None
        self._lock = threading.Lock()
        self._extend()

    def _extend(self):
        if self.finished:
            return
        alg = self.M.algebra
        if not self.steps:
            cover, verts = projective_cover(self.M)
            self.cover = cover
            K, incl = kernel(cover)
            self.steps.append(_Step(verts, cover.source, [], K, incl))
        else:
            prev = self.steps[-1]
            K = prev.syzygy
            gens = top_generators(K)
            verts = [v for v, _ in gens]
            elems = [(prev.syzygy_incl.mats[v] @ Matrix._raw(K.field, [[c] for c in x], 1)).column(0)
                     for v, x in gens]
            d = map_from_generators(alg, verts, prev.module, elems)
            K2, incl = kernel(d)
            self.steps.append(_Step(verts, d.source, elems, K2, incl))
        if self.steps[-1].module.dim == 0:
            self.finished = True

    def term(self, n: int) -> Optional[_Step]:
        with self._lock:
            while len(self.steps) <= n and not self.finished:
                self._extend()
        return self.steps[n] if n < len(self.steps) else None


@lru_cache(maxsize=1 << 14)
def _resolution(M: Representation) -> _Resolution:
    return _Resolution(M)


def resolution_term(M: Representation, n: int):
    """(generator vertices, module) of the n-th term of the minimal projective resolution."""
    st = _resolution(M).term(n)
    if st is None:
        return [], zero_module(M.algebra)
    return st.vertices, st.module


def generator_hom_matrix(alg: AlgebraPresentation, target_vertices: Sequence[int],
                         source_vertices: Sequence[int], elements: Sequence[Sequence],
                         N: Representation) -> Matrix:
    """Matrix of Hom(g, N) for g: sum P_{w_j} -> sum P_{v_i} given by generator images.

    Coordinates use Hom(sum P_v, N) = sum N_v; rows follow the w_j, columns the v_i.
    """
    f = alg.field
    pv, cv = list(target_vertices), list(source_vertices)
    ncols = sum(N.dims[v] for v in pv)
    if not cv or not pv:
        return Matrix.zeros(f, sum(N.dims[w] for w in cv), ncols)
    block_rows = []
    for w, vec in zip(cv, elements):
        blocks = []
        off = 0
        for v in pv:
            paths = alg.paths_between(v, w)
            acc = Matrix.zeros(f, N.dims[w], N.dims[v])
            for k, pth in enumerate(paths):
                c = vec[off + k]
                if c:
                    acc = acc + N.path_matrix(pth).scale(c)
            off += len(paths)
            blocks.append(acc)
        block_rows.append(hstack(f, blocks, N.dims[w]))
    return vstack(f, block_rows, ncols)


def _dual_differential(M: Representation, n: int, N: Representation) -> Matrix:
    """Matrix of Hom(d_n, N): Hom(P_{n-1}, N) -> Hom(P_n, N) in generator coordinates."""
    res = _resolution(M)
    cur = res.term(n)
    prev = res.term(n - 1) if n >= 1 else None
    pv = prev.vertices if prev is not None else []
    cv = cur.vertices if cur is not None else []
    if cur is None or prev is None:
        return Matrix.zeros(M.field, sum(N.dims[w] for w in cv), sum(N.dims[v] for v in pv))
    return generator_hom_matrix(M.algebra, pv, cv, cur.diff, N)


def resolution_maps(M: Representation, n: int) -> List[ModuleMap]:
    """Differentials d_1..d_n (d_k: P_k -> P_{k-1}) of the minimal projective resolution."""
    alg = M.algebra
    out = []
    for k in range(1, n + 1):
        verts_prev, prev = resolution_term(M, k - 1)
        verts, cur = resolution_term(M, k)
        st = _resolution(M).term(k)
        elems = st.diff if st is not None else []
        out.append(map_from_generators(alg, verts, prev, elems, source=cur))
    return out


def ext(n: int, M: Representation, N: Representation) -> ExtSpace:
    """Ext^n(M, N) from the minimal projective resolution of M."""
    if n < 0:
        raise ValueError("negative degree")
    _same_algebra(M, N)
    if n == 0:
        return hom_space(M, N)
    alg = M.algebra
    f = alg.field
    dn1 = _dual_differential(M, n + 1, N)
    dn = _dual_differential(M, n, N)
    ker = kernel_basis(dn1) if dn1.nrows else Matrix.identity(f, dn1.ncols)
    img_rank = rank(dn) if dn.nrows and dn.ncols else 0
    dim = ker.ncols - img_rank
    if dim == 0:
        return ExtSpace(n, 0, M, N)

    def vectors():
        chosen = [c for c in column_basis(dn).columns()] if dn.ncols else []
        reps = []
        for c in ker.columns():
            trial = chosen + [c]
            if rank(Matrix.from_columns(f, trial, ker.nrows)) == len(trial):
                chosen.append(c)
                reps.append(c)
            if len(reps) == dim:
                break
        return reps

    vecs = vectors()
    verts, Pn = resolution_term(M, n)

    def build(vec):
        elems, off = [], 0
        for w in verts:
            elems.append(vec[off:off + N.dims[w]])
            off += N.dims[w]
        return map_from_generators(alg, verts, N, elems, source=Pn)

    return ExtSpace(n, dim, M, N, _vectors=vecs, _builder=build)


@lru_cache(maxsize=1 << 16)
def ext_dim(n: int, M: Representation, N: Representation) -> int:
    if n == 0:
        return hom_dim(M, N)
    _same_algebra(M, N)
    dn1 = _dual_differential(M, n + 1, N)
    dn = _dual_differential(M, n, N)
    k = dn1.ncols - (rank(dn1) if dn1.nrows and dn1.ncols else 0)
    return k - (rank(dn) if dn.nrows and dn.ncols else 0)


def pd(M: Representation):
    """Projective dimension; ``math.inf`` when the syzygies cycle."""
    if M.dim == 0:
        return 0
    res = _resolution(M)
    cap = max(M.algebra.dimension, 1)
    syz: List[Representation] = []
    for n in range(cap + 1):
        st = res.term(n + 1)
        if st is None or st.module.dim == 0:
            return n
        K = res.steps[n].syzygy
        for earlier in syz:
            if is_isomorphic(earlier, K):
                return math.inf
        syz.append(K)
    raise InfiniteResolution(f"resolution of {M!r} neither ended nor cycled within {cap} steps")


# -- presentations, duality, tau -----------------------------------------------

@dataclass
class ProjPresentation:
    """Minimal projective presentation p1 --d--> p0 --cover--> target --> 0."""

    p1: Representation
    p0: Representation
    d: ModuleMap
    target: Representation
    cover: ModuleMap
    p1_vertices: List[int]
    p0_vertices: List[int]
    algebra_matrix: List[List[Dict[Path, object]]]
    elements: List[list] = dc_field(default_factory=list)

    def hom_matrix(self, N: Representation) -> Matrix:
        """Hom(d, N): Hom(p0, N) -> Hom(p1, N) in generator coordinates."""
        return generator_hom_matrix(self.target.algebra, self.p0_vertices, self.p1_vertices,
                                    self.elements, N)


def minimal_projective_presentation(M: Representation) -> ProjPresentation:
    res = _resolution(M)
    st0 = res.term(0)
    st1 = res.term(1)
    alg = M.algebra
    p0 = st0.module
    if st1 is None:
        p1, v1, diff = zero_module(alg), [], []
    else:
        p1, v1, diff = st1.module, st1.vertices, st1.diff
    d = map_from_generators(alg, v1, p0, diff, source=p1)
    amat = []
    for v in st0.vertices:
        amat.append([{} for _ in v1])
    for j, (w, vec) in enumerate(zip(v1, diff)):
        off = 0
        for i, v in enumerate(st0.vertices):
            paths = alg.paths_between(v, w)
            for k, pth in enumerate(paths):
                if vec[off + k]:
                    amat[i][j][pth] = vec[off + k]
            off += len(paths)
    return ProjPresentation(p1, p0, d, M, res.cover, list(v1), list(st0.vertices), amat,
                            [list(x) for x in diff])


def dual(M: Representation) -> Representation:
    """D M = Hom_k(M, k) as a module over the opposite algebra."""
    return Representation(opposite(M.algebra), M.dims, [m.T for m in M.maps], check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), [m.T for m in f.mats], check=False)


def dual_map_between(f: ModuleMap, source: Representation, target: Representation) -> ModuleMap:
    """D f with explicitly supplied D(target) and D(source) objects."""
    return ModuleMap(source, target, [m.T for m in f.mats], check=False)


def transpose(M: Representation) -> Representation:
    """Tr M over the opposite algebra."""
    alg = M.algebra
    op = opposite(alg)
    pres = minimal_projective_presentation(M)
    v0, v1 = pres.p0_vertices, pres.p1_vertices
    if not v1:
        return zero_module(op)
    tgt = projective_sum(op, v1)
    elems = []
    for i, v in enumerate(v0):
        vec = []
        for j, w in enumerate(v1):
            basis = op.paths_between(w, v)
            index = {p: k for k, p in enumerate(basis)}
            part = [op.field.zero] * len(basis)
            for pth, c in pres.algebra_matrix[i][j].items():
                for r, rc in op.normal_form(reverse_path(pth, alg)).items():
                    part[index[r]] += c * rc
            if op.field.p:
                part = [x % op.field.p for x in part]
            vec.extend(part)
        elems.append(vec)
    g = map_from_generators(op, v0, tgt, elems)
    return cokernel(g)[0]


def tau(M: Representation) -> Representation:
    """Auslander-Reiten translate D Tr M."""
    return dual(transpose(M))


def tau_inverse(M: Representation) -> Representation:
    """Tr D M."""
    return transpose(dual(M))


# -- isomorphism and decomposition ---------------------------------------------

def _invariants(M: Representation):
    return (M.dims, tuple(rank(m) for m in M.maps))


def _random_combination(basis, rng, field, bound=10 ** 6):
    if field.p:
        coeffs = [rng.randrange(field.p) for _ in basis]
    else:
        coeffs = [rng.randint(-bound, bound) for _ in basis]
    acc = None
    for c, b in zip(coeffs, basis):
        if c:
            t = b.scale(c)
            acc = t if acc is None else acc + t
    return acc if acc is not None else basis[0].scale(0)


def _combinations(basis, field):
    for coeffs in itertools.product(field.elements(), repeat=len(basis)):
        acc = basis[0].scale(0)
        for c, b in zip(coeffs, basis):
            if c:
                acc = acc + b.scale(c)
        yield acc


EXHAUSTIVE_LIMIT = 1 << 14


def is_isomorphic(M: Representation, N: Representation, witness: bool = False):
    """Decide M = N; with ``witness=True`` return ``(bool, ModuleMap or None)``."""
    _same_algebra(M, N)
    result = None
    if _invariants(M) != _invariants(N):
        result = None
        return (False, None) if witness else False
    if M.dim == 0:
        w = ModuleMap.zero(M, N)
        return (True, w) if witness else True
    basis = hom_basis(M, N)
    if basis:
        f = M.field
        rng = random.Random(0x5EED)
        tries = 4 if f.p == 0 else 64
        for _ in range(tries):
            g = _random_combination(basis, rng, f)
            if g.is_iso():
                result = g
                break
        if result is None and f.p and f.p ** len(basis) <= EXHAUSTIVE_LIMIT:
            for g in _combinations(basis, f):
                if g.is_iso():
                    result = g
                    break
    ok = result is not None
    return (ok, result) if witness else ok


def _map_power(phi: ModuleMap, k: int) -> List[Matrix]:
    return [m.power(k) for m in phi.mats]


def _fitting_split(M: Representation, phi: ModuleMap):
    """Submodule bases (image, kernel) of phi^N when phi is neither nilpotent nor invertible."""
    N = max(M.dims) if M.dims else 0
    pw = _map_power(phi, max(N, 1))
    ranks = [rank(m) for m in pw]
    if sum(ranks) == 0 or list(ranks) == list(M.dims):
        return None
    return [column_basis(m) for m in pw], [kernel_basis(m) for m in pw]


def _poly_of_map(coeffs, phi: ModuleMap) -> List[Matrix]:
    """Evaluate a polynomial (highest degree first) at phi, vertex by vertex."""
    f = phi.source.field
    out = []
    for m in phi.mats:
        n = m.nrows
        acc = Matrix.zeros(f, n, n)
        ident = Matrix.identity(f, n)
        for c in coeffs:
            acc = acc @ m + ident.scale(c)
        out.append(acc)
    return out


def _charpoly_split(M: Representation, phi: ModuleMap):
    import sympy

    f = M.field
    big = block_diag(f, list(phi.mats))
    x = sympy.Symbol("x")
    if f.p:
        mat = sympy.Matrix([[int(v) for v in r] for r in big.rows])
        poly = sympy.Poly(mat.charpoly(x).as_expr(), x, modulus=f.p)
    else:
        mat = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in big.rows])
        poly = sympy.Poly(mat.charpoly(x).as_expr(), x, domain="QQ")
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    g1, e1 = factors[0]
    first = g1 ** e1
    rest = sympy.Poly(1, x, modulus=f.p) if f.p else sympy.Poly(1, x, domain="QQ")
    for g, e in factors[1:]:
        rest = rest * g ** e

    def coeffs(pl):
        out = []
        for c in pl.all_coeffs():
            if f.p:
                out.append(f(int(c)))
            else:
                c = sympy.Rational(c)
                out.append(f(__import__("fractions").Fraction(int(c.p), int(c.q))))
        return out

    U = [kernel_basis(m) for m in _poly_of_map(coeffs(first), phi)]
    W = [kernel_basis(m) for m in _poly_of_map(coeffs(rest), phi)]
    if all(u.ncols == 0 for u in U) or all(w.ncols == 0 for w in W):
        return None
    return U, W


def _trace_radical_dim(M: Representation, basis) -> int:
    f = M.field
    d = len(basis)
    gram = []
    for a in basis:
        row = []
        for b in basis:
            t = f.zero
            for x, y in zip(a.mats, b.mats):
                if x.nrows:
                    t = t + (x @ y).trace()
            row.append(t % f.p if f.p else t)
        gram.append(row)
    return d - rank(Matrix._raw(f, gram, d))


def _find_split(M: Representation):
    f = M.field
    basis = list(hom_basis(M, M))
    d = len(basis)
    if d <= 1:
        return None
    trace_ok = f.p == 0 or f.p > M.dim
    if trace_ok and d - _trace_radical_dim(M, basis) == 1:
        return None
    for phi in basis:
        s = _fitting_split(M, phi)
        if s:
            return s
    for a, b in itertools.combinations(basis, 2):
        for phi in (a + b, a - b):
            s = _fitting_split(M, phi)
            if s:
                return s
    if f.p and f.p ** d <= EXHAUSTIVE_LIMIT:
        for phi in _combinations(basis, f):
            s = _fitting_split(M, phi)
            if s:
                return s
        return None
    rng = random.Random(1729 + M.dim)
    for _ in range(12):
        phi = _random_combination(basis, rng, f, bound=7)
        s = _fitting_split(M, phi) or _charpoly_split(M, phi)
        if s:
            return s
    if not trace_ok:
        raise FieldTooSmall(
            f"cannot certify a decomposition over {f} for a module of dimension {M.dim}")
    log.warning("no splitting endomorphism found although End/rad has dimension > 1; "
                "treating %r as indecomposable over %s", M, f)
    return None


def _split_all(M: Representation) -> List[Representation]:
    if M.dim == 0:
        return []
    s = _find_split(M)
    if s is None:
        return [M]
    U, W = s
    out = []
    for bases in (U, W):
        sub, _ = subrepresentation(M, bases)
        out.extend(_split_all(sub))
    return out


def is_indecomposable(M: Representation) -> bool:
    return M.dim > 0 and _find_split(M) is None


def decompose(M: Representation) -> List[Tuple[Representation, int]]:
    """Krull-Schmidt decomposition as (indecomposable, multiplicity) pairs."""
    groups: List[List] = []
    for X in _split_all(M):
        for g in groups:
            if is_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1])
    groups.sort(key=lambda g: sort_key(g[0]))
    return [(X, m) for X, m in groups]


def sort_key(M: Representation):
    return (M.dims, M.canonical_bytes())


# -- enumeration ---------------------------------------------------------------

def _line_components(alg: AlgebraPresentation):
    """Vertex orderings of the components when the underlying graph is a disjoint union of lines."""
    q = alg.quiver
    n = alg.n_vertices
    adj = [[] for _ in range(n)]
    seen_edges = set()
    for s, t in zip(q.src, q.tgt):
        if s == t:
            return None
        e = (min(s, t), max(s, t))
        if e in seen_edges:
            return None
        seen_edges.add(e)
        adj[s].append(t)
        adj[t].append(s)
    if any(len(a) > 2 for a in adj):
        return None
    comps = []
    visited = [False] * n
    for start in range(n):
        if visited[start] or len(adj[start]) == 2:
            continue
        line = [start]
        visited[start] = True
        prev, cur = None, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            visited[cur] = True
            line.append(cur)
        comps.append(line)
    if not all(visited):
        return None     # a component is a cycle
    return comps


def interval_modules(alg: AlgebraPresentation, dim_bound: Optional[int] = None):
    """All interval modules of a type-A quiver with monomial relations, or None if not applicable."""
    comps = _line_components(alg)
    if comps is None or any(len(r.terms) != 1 for r in alg.relations):
        return None
    q = alg.quiver
    f = alg.field
    rel_sets = []
    for rel in alg.relations:
        path = [q.arrow_index[a] for a in rel.terms[0][1]]
        rel_sets.append({q.src[a] for a in path} | {q.tgt[path[-1]]})
    out = []
    for line in comps:
        for i in range(len(line)):
            for j in range(i, len(line)):
                verts = set(line[i:j + 1])
                if dim_bound is not None and len(verts) > dim_bound:
                    continue
                if any(r <= verts for r in rel_sets):
                    continue
                dims = [1 if v in verts else 0 for v in range(alg.n_vertices)]
                maps = []
                for s, t in zip(q.src, q.tgt):
                    if s in verts and t in verts:
                        maps.append(Matrix(f, [[1]]))
                    else:
                        maps.append(None)
                out.append(Representation(alg, dims, maps))
    return out


def _dimension_vectors(n, bound):
    for total in range(1, bound + 1):
        for combo in itertools.product(range(total + 1), repeat=n):
            if sum(combo) == total:
                yield combo


def brute_force_indecomposables(alg: AlgebraPresentation, dim_bound: int, budget: int = 500000):
    """Exhaustive search over all arrow-matrix tuples over a prime field."""
    f = alg.field
    if not f.p:
        raise ValueError("brute-force enumeration needs a prime field")
    q = alg.quiver
    found: List[Representation] = []
    spent = 0
    for dims in _dimension_vectors(alg.n_vertices, dim_bound):
        shapes = [(dims[t], dims[s]) for s, t in zip(q.src, q.tgt)]
        entries = sum(r * c for r, c in shapes)
        count = f.p ** entries
        spent += count
        if spent > budget:
            raise SearchBudgetExceeded(f"more than {budget} candidate representations")
        local: List[Representation] = []
        for flat in itertools.product(range(f.p), repeat=entries):
            maps, k = [], 0
            for r, c in shapes:
                maps.append(Matrix._raw(f, [list(flat[k + i * c:k + (i + 1) * c]) for i in range(r)], c))
                k += r * c
            try:
                M = Representation(alg, dims, maps)
            except RelationViolation:
                continue
            if not is_indecomposable(M):
                continue
            if any(is_isomorphic(X, M) for X in local):
                continue
            local.append(M)
        found.extend(local)
    return found


@lru_cache(maxsize=256)
def enumerate_indecomposables(alg: AlgebraPresentation, dim_bound: Optional[int] = None,
                              budget: int = 500000) -> Tuple[Representation, ...]:
    """Pairwise non-isomorphic indecomposables of total dimension <= dim_bound."""
    mods = interval_modules(alg, dim_bound)
    if mods is None:
        if dim_bound is None:
            raise SearchBudgetExceeded("brute-force enumeration needs an explicit dim_bound")
        mods = brute_force_indecomposables(alg, dim_bound, budget)
    return tuple(sorted(mods, key=sort_key))


# -- random modules -----------------------------------------------------------

def random_module(alg: AlgebraPresentation, rng: random.Random, max_generators: int = 3,
                  coeff_bound: int = 3) -> Representation:
    """Cokernel of a random map between random sums of indecomposable projectives."""
    n = alg.n_vertices
    f = alg.field
    v0 = sorted(rng.randrange(n) for _ in range(rng.randint(1, max_generators)))
    v1 = sorted(rng.randrange(n) for _ in range(rng.randint(0, max_generators)))
    P0 = projective_sum(alg, v0)
    elems = []
    for w in v1:
        elems.append([f(rng.randint(-coeff_bound, coeff_bound)) for _ in range(P0.dims[w])])
    g = map_from_generators(alg, v1, P0, elems)
    return cokernel(g)[0]
