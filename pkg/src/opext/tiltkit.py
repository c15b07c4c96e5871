"""Subcategory calculus and the tilting-type classes of modules.

Additively closed subcategories are given by finitely many pairwise
non-isomorphic indecomposables.  Every "large" quantifier (Add, Prod,
contravariant finiteness in Mod) is read in the finite-dimensional category;
verdicts record this as ``scope == "findim"``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import NotCertified, NotRepFinite, TransportFailure
from .exactlin import Matrix, column_basis, hstack, rank, vstack
from .presentation import AlgebraPresentation, opposite
from .repcat import (ModuleMap, ProjPresentation, Representation, cokernel, decompose,
                     direct_sum_module, dual, dual_map, enumerate_indecomposables,
                     ext_dim, hom_basis, hom_dim, interval_modules, is_isomorphic, kernel,
                     map_from_generators, minimal_projective_presentation, pd, projective,
                     projective_sum, random_module, sort_key, subrepresentation, tau)


# -- catalogues and samples ------------------------------------------------------

class Catalog:
    """The enumerated indecomposables of an algebra, with isomorphism lookup."""

    def __init__(self, alg: AlgebraPresentation, dim_bound: Optional[int] = None):
        self.algebra = alg
        self.complete = interval_modules(alg) is not None
        self.modules: Tuple[Representation, ...] = enumerate_indecomposables(alg, dim_bound)
        self._by_dims: Dict[tuple, List[int]] = defaultdict(list)
        for i, M in enumerate(self.modules):
            self._by_dims[M.dims].append(i)

    def __len__(self):
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def index(self, M: Representation) -> int:
        for i in self._by_dims.get(M.dims, ()):
            if is_isomorphic(self.modules[i], M):
                return i
        raise NotRepFinite(f"{M!r} is not among the enumerated indecomposables")

    def sample(self, indices: Iterable[int]) -> "SubcatSample":
        idx = sorted(set(indices))
        return SubcatSample(self.algebra, tuple(self.modules[i] for i in idx), tuple(idx))

    def require_complete(self):
        if not self.complete:
            raise NotRepFinite("no exhaustive enumeration of indecomposables is available")


@lru_cache(maxsize=64)
def catalog(alg: AlgebraPresentation, dim_bound: Optional[int] = None) -> Catalog:
    return Catalog(alg, dim_bound)


@dataclass(frozen=True)
class SubcatSample:
    """add of finitely many pairwise non-isomorphic indecomposables."""

    algebra: AlgebraPresentation
    generators: Tuple[Representation, ...]
    indices: Optional[Tuple[int, ...]] = None
    closure_note: str = "AddClosure"

    @classmethod
    def from_modules(cls, alg: AlgebraPresentation, modules: Iterable[Representation],
                     use_catalog: bool = True) -> "SubcatSample":
        """add of the given modules: decompose, deduplicate, and match to the catalogue."""
        summands: List[Representation] = []
        for M in modules:
            for X, _ in decompose(M):
                if not any(is_isomorphic(Y, X) for Y in summands):
                    summands.append(X)
        if use_catalog:
            cat = catalog(alg)
            try:
                return cat.sample(cat.index(X) for X in summands)
            except NotRepFinite:
                pass
        return cls(alg, tuple(sorted(summands, key=sort_key)))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def module(self) -> Representation:
        return direct_sum_module(self.generators, self.algebra)

    def support(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.algebra.n_vertices)
                     if any(T.dims[v] for T in self.generators))

    def key(self):
        if self.indices is not None:
            return self.indices
        return tuple(sort_key(T) for T in self.generators)

    def same_as(self, other: "SubcatSample") -> bool:
        if len(self) != len(other):
            return False
        return all(any(is_isomorphic(X, Y) for Y in other) for X in self)


TLike = Union[SubcatSample, Representation, Sequence[Representation]]


def _gens(T: TLike) -> Tuple[Representation, ...]:
    if isinstance(T, SubcatSample):
        return T.generators
    if isinstance(T, Representation):
        return (T,)
    return tuple(T)


@dataclass
class Verdict:
    ok: bool
    mode: str
    clauses: Dict[str, bool] = dc_field(default_factory=dict)
    evidence: Dict[str, list] = dc_field(default_factory=dict)
    scope: str = "findim"

    def __bool__(self):
        return self.ok

    def failed_clauses(self) -> List[str]:
        return [k for k, v in self.clauses.items() if not v]


# -- trace, Gen, Cogen, add, approximations --------------------------------------

def trace(T: TLike, M: Representation):
    """Sum of the images of all maps from the generators into M: (submodule, inclusion)."""
    f = M.field
    cols: List[List[Matrix]] = [[] for _ in M.dims]
    for X in _gens(T):
        for g in hom_basis(X, M):
            for v, m in enumerate(g.mats):
                if m.ncols:
                    cols[v].append(m)
    bases = []
    for v, d in enumerate(M.dims):
        if cols[v]:
            bases.append(column_basis(hstack(f, cols[v], d)))
        else:
            bases.append(Matrix.zeros(f, d, 0))
    return subrepresentation(M, bases)


def _trace_dims(T: TLike, M: Representation) -> Tuple[int, ...]:
    f = M.field
    out = []
    maps = [g for X in _gens(T) for g in hom_basis(X, M)]
    for v, d in enumerate(M.dims):
        blocks = [g.mats[v] for g in maps if g.mats[v].ncols]
        out.append(rank(hstack(f, blocks, d)) if blocks and d else 0)
    return tuple(out)


def in_gen(T: TLike, M: Representation) -> bool:
    return _trace_dims(T, M) == M.dims


def in_cogen(T: TLike, M: Representation) -> bool:
    """The common kernel of all maps M -> T_i vanishes."""
    f = M.field
    maps = [g for X in _gens(T) for g in hom_basis(M, X)]
    for v, d in enumerate(M.dims):
        if not d:
            continue
        blocks = [g.mats[v] for g in maps if g.mats[v].nrows]
        if not blocks or rank(vstack(f, blocks, d)) < d:
            return False
    return True


def in_add(T: TLike, M: Representation) -> bool:
    """id_M lies in the span of the endomorphisms factoring through some generator."""
    if M.dim == 0:
        return True
    f = M.field
    vecs = []
    for X in _gens(T):
        into = hom_basis(M, X)
        back = hom_basis(X, M)
        for a in into:
            for b in back:
                vecs.append((b @ a).flatten())
    if not vecs:
        return False
    ident = ModuleMap.identity(M).flatten()
    n = len(ident)
    r = rank(Matrix(f, vecs, n))
    return rank(Matrix(f, vecs + [ident], n)) == r


def left_approximation(T: TLike, M: Representation) -> ModuleMap:
    """The universal map M -> sum_i T_i^{dim Hom(M, T_i)}."""
    parts, comps = [], []
    for X in _gens(T):
        for g in hom_basis(M, X):
            parts.append(X)
            comps.append(g)
    alg = M.algebra
    target = direct_sum_module(parts, alg)
    f = M.field
    mats = []
    for v, d in enumerate(M.dims):
        blocks = [g.mats[v] for g in comps]
        mats.append(vstack(f, blocks, d) if blocks else Matrix.zeros(f, 0, d))
    return ModuleMap(M, target, mats, check=False)


def right_approximation(T: TLike, M: Representation) -> ModuleMap:
    """The universal map sum_i T_i^{dim Hom(T_i, M)} -> M."""
    parts, comps = [], []
    for X in _gens(T):
        for g in hom_basis(X, M):
            parts.append(X)
            comps.append(g)
    alg = M.algebra
    source = direct_sum_module(parts, alg)
    f = M.field
    mats = []
    for v, d in enumerate(M.dims):
        blocks = [g.mats[v] for g in comps]
        mats.append(hstack(f, blocks, d) if blocks else Matrix.zeros(f, d, 0))
    return ModuleMap(source, M, mats, check=False)


def in_pres(T: TLike, M: Representation) -> bool:
    """M has a two-term add(T)-presentation: the kernel of the universal cover lies in Gen(T)."""
    r = right_approximation(T, M)
    if not r.is_surjective():
        return False
    K, _ = kernel(r)
    return in_gen(T, K)


# -- tilting ---------------------------------------------------------------------

def _ext_range(gens) -> int:
    """Degrees needed for Ext^{>=1}(T, -): up to the largest projective dimension."""
    top = 1
    for X in gens:
        p = pd(X)
        if p == math.inf:
            top = max(top, X.algebra.n_vertices + 2)
        else:
            top = max(top, int(p))
    return top


def fac_class(T: TLike, cat: Catalog) -> List[int]:
    return [i for i, X in enumerate(cat.modules) if in_gen(T, X)]


def is_tilting(T: TLike, mode: str = "coresolution", cat: Optional[Catalog] = None) -> Verdict:
    gens = _gens(T)
    alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    if mode == "coresolution":
        rigid_bad = [(i, j) for i, X in enumerate(gens) for j, Y in enumerate(gens)
                     if ext_dim(1, X, Y)]
        pd_bad = [i for i, X in enumerate(gens) if pd(X) > 1]
        cores_bad = []
        for v in range(alg.n_vertices):
            P = projective(alg, v)
            f = left_approximation(gens, P)
            if not f.is_injective():
                cores_bad.append(v)
                continue
            C, _ = cokernel(f)
            if not in_add(gens, C):
                cores_bad.append(v)
        clauses = {"contravariantly_finite": True, "rigid": not rigid_bad,
                   "pd_le_1": not pd_bad, "coresolves_projectives": not cores_bad}
        return Verdict(all(clauses.values()), mode, clauses,
                       {"rigid": rigid_bad, "pd_le_1": pd_bad, "coresolves_projectives": cores_bad})
    if mode == "perp":
        cat = cat or catalog(alg)
        cat.require_complete()
        top = _ext_range(gens)
        perp = {i for i, X in enumerate(cat.modules)
                if all(ext_dim(k, Tg, X) == 0 for Tg in gens for k in range(1, top + 1))}
        fac = set(fac_class(gens, cat))
        clauses = {"contravariantly_finite": True, "perp_equals_fac": perp == fac,
                   "cogenerating_in_perp": True}
        return Verdict(perp == fac, mode, clauses,
                       {"perp_not_fac": sorted(perp - fac), "fac_not_perp": sorted(fac - perp)})
    raise ValueError(f"unknown tilting mode {mode!r}")


# -- tau-rigid and support tau-tilting ---------------------------------------------

def presentation_epi(g: ProjPresentation, N: Representation) -> bool:
    """Hom(g, N) is surjective."""
    need = sum(N.dims[w] for w in g.p1_vertices)
    if need == 0:
        return True
    return rank(g.hom_matrix(N)) == need


def is_tau_rigid(T: TLike) -> bool:
    gens = _gens(T)
    return all(hom_dim(X, tau(Y)) == 0 for X in gens for Y in gens)


def is_support_tau_tilting(T: TLike, mode: str = "approximation") -> Verdict:
    gens = _gens(T)
    if isinstance(T, SubcatSample):
        alg = T.algebra
    elif gens:
        alg = gens[0].algebra
    else:
        raise ValueError("an empty generator list needs a SubcatSample carrying the algebra")
    n = alg.n_vertices
    if mode == "approximation":
        rigid_bad = []
        for i, X in enumerate(gens):
            g = minimal_projective_presentation(X)
            for j, Y in enumerate(gens):
                if not presentation_epi(g, Y):
                    rigid_bad.append((i, j))
        approx_bad = []
        for v in range(n):
            f = left_approximation(gens, projective(alg, v))
            C, _ = cokernel(f)
            if not in_add(gens, C):
                approx_bad.append(v)
        clauses = {"tau_rigid": not rigid_bad, "projective_approximations": not approx_bad,
                   "contravariantly_finite": True}
        return Verdict(all(clauses.values()), mode, clauses,
                       {"tau_rigid": rigid_bad, "projective_approximations": approx_bad})
    if mode == "tau-pairs":
        rigid_bad = [(i, j) for i, X in enumerate(gens) for j, Y in enumerate(gens)
                     if hom_dim(X, tau(Y))]
        outside = [v for v in range(n) if not any(X.dims[v] for X in gens)]
        count_ok = len(gens) + len(outside) == n
        clauses = {"tau_rigid": not rigid_bad, "support_count": count_ok}
        return Verdict(all(clauses.values()), mode, clauses,
                       {"tau_rigid": rigid_bad, "support_count": [len(gens), len(outside), n]})
    raise ValueError(f"unknown support tau-tilting mode {mode!r}")


# -- silting ---------------------------------------------------------------------

def silting_presentation(T: TLike, alg: Optional[AlgebraPresentation] = None) -> ProjPresentation:
    """Minimal presentation of T plus P_v -> 0 for every vertex outside the support of T."""
    gens = _gens(T)
    if alg is None:
        alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    M = direct_sum_module(gens, alg)
    base = minimal_projective_presentation(M)
    outside = [v for v in range(alg.n_vertices) if M.dims[v] == 0]
    if not outside:
        return base
    v1 = list(base.p1_vertices) + outside
    elems = [list(x) for x in base.elements]
    elems += [[alg.field.zero] * base.p0.dims[v] for v in outside]
    p1 = projective_sum(alg, v1)
    d = map_from_generators(alg, v1, base.p0, elems, source=p1)
    amat = [row + [{} for _ in outside] for row in base.algebra_matrix]
    return ProjPresentation(p1, base.p0, d, M, base.cover, v1, list(base.p0_vertices), amat, elems)


def d_sigma_contains(sigma: ProjPresentation, M: Representation) -> bool:
    return presentation_epi(sigma, M)


@dataclass
class SiltingWitness:
    module: Representation
    sigma: ProjPresentation
    ok: bool
    gen_agreement: bool
    mismatches: List[int] = dc_field(default_factory=list)
    random_checked: int = 0
    random_mismatches: int = 0
    scope: str = "findim"

    def __bool__(self):
        return self.ok


def is_silting_findim(T: TLike, cat: Optional[Catalog] = None, random_count: int = 0,
                      seed: int = 0, alg: Optional[AlgebraPresentation] = None) -> SiltingWitness:
    gens = _gens(T)
    if alg is None:
        alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    cat = cat or catalog(alg)
    cat.require_complete()
    sigma = silting_presentation(gens, alg)
    mism = [i for i, X in enumerate(cat.modules)
            if d_sigma_contains(sigma, X) != in_gen(gens, X)]
    rng = random.Random(seed)
    rbad = 0
    for _ in range(random_count):
        X = random_module(alg, rng)
        if d_sigma_contains(sigma, X) != in_gen(gens, X):
            rbad += 1
    ok = not mism and not rbad
    return SiltingWitness(sigma.target, sigma, ok, not mism, mism, random_count, rbad)


def is_quasi_tilting_findim(T: TLike, cat: Optional[Catalog] = None,
                            alg: Optional[AlgebraPresentation] = None) -> Verdict:
    gens = _gens(T)
    if alg is None:
        alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    cat = cat or catalog(alg)
    cat.require_complete()
    gen = fac_class(gens, cat)
    ext_bad = [i for i in gen for X in gens if ext_dim(1, X, cat.modules[i])]
    pres_bad = [i for i in gen if not in_pres(gens, cat.modules[i])]
    clauses = {"ext_projective_in_gen": not ext_bad, "pres_equals_gen": not pres_bad,
               "finendo": True}
    return Verdict(all(clauses.values()), "findim", clauses,
                   {"ext_projective_in_gen": sorted(set(ext_bad)), "pres_equals_gen": pres_bad})


# -- cosilting -------------------------------------------------------------------

@dataclass
class InjCopresentation:
    """zeta: I0 -> I1, the dual of a silting presentation of D T over the opposite algebra."""

    i0: Representation
    i1: Representation
    zeta: ModuleMap
    sigma_op: ProjPresentation


def cosilting_copresentation(T: TLike, alg: Optional[AlgebraPresentation] = None) -> InjCopresentation:
    gens = _gens(T)
    if alg is None:
        alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    op = opposite(alg)
    sigma = silting_presentation([dual(X) for X in gens], op)
    zeta = dual_map(sigma.d)
    return InjCopresentation(zeta.source, zeta.target, zeta, sigma)


def b_zeta_contains(zeta: InjCopresentation, M: Representation) -> bool:
    """Hom(M, zeta): Hom(M, I0) -> Hom(M, I1) is surjective."""
    need = hom_dim(M, zeta.i1)
    if need == 0:
        return True
    vecs = [(zeta.zeta @ g).flatten() for g in hom_basis(M, zeta.i0)]
    if not vecs:
        return False
    return rank(Matrix(M.field, vecs, len(vecs[0]))) == need


def is_cosilting_findim(T: TLike, cat: Optional[Catalog] = None,
                        alg: Optional[AlgebraPresentation] = None,
                        cross_check: bool = True) -> Verdict:
    gens = _gens(T)
    if alg is None:
        alg = T.algebra if isinstance(T, SubcatSample) else gens[0].algebra
    cat = cat or catalog(alg)
    cat.require_complete()
    zeta = cosilting_copresentation(gens, alg)
    mism = [i for i, X in enumerate(cat.modules) if b_zeta_contains(zeta, X) != in_cogen(gens, X)]
    clauses = {"cogen_equals_b_zeta": not mism}
    ev = {"cogen_equals_b_zeta": mism}
    if cross_check:
        op = opposite(alg)
        dual_ok = is_silting_findim([dual(X) for X in gens], catalog(op), alg=op).ok
        clauses["dual_is_silting"] = dual_ok == (not mism)
        ev["dual_is_silting"] = [dual_ok]
    return Verdict(not mism, "findim", clauses, ev)


# -- enumeration -----------------------------------------------------------------

def all_subsets(cat: Catalog):
    n = len(cat)
    for r in range(n + 1):
        for combo in itertools.combinations(range(n), r):
            yield cat.sample(combo)


def _pairwise_ok(cat: Catalog, pred) -> List[Tuple[int, ...]]:
    """Subsets on which the symmetric pairwise predicate holds, grown clique by clique."""
    n = len(cat)
    ok = [[pred(i, j) and pred(j, i) for j in range(n)] for i in range(n)]
    out = []

    def grow(cur, start):
        out.append(tuple(cur))
        for k in range(start, n):
            if ok[k][k] and all(ok[k][c] for c in cur):
                grow(cur + [k], k + 1)

    grow([], 0)
    return out


def enumerate_tilting(alg: AlgebraPresentation, mode: str = "coresolution") -> List[SubcatSample]:
    cat = catalog(alg)
    cat.require_complete()
    mods = cat.modules
    cands = _pairwise_ok(cat, lambda i, j: ext_dim(1, mods[i], mods[j]) == 0
                         and pd(mods[i]) <= 1)
    return [cat.sample(c) for c in cands if is_tilting(cat.sample(c), mode, cat).ok]


def enumerate_support_tau_tilting(alg: AlgebraPresentation, mode: str = "tau-pairs") -> List[SubcatSample]:
    cat = catalog(alg)
    cat.require_complete()
    mods = cat.modules
    taus = [tau(M) for M in mods]
    cands = _pairwise_ok(cat, lambda i, j: hom_dim(mods[i], taus[j]) == 0)
    return [cat.sample(c) for c in cands if is_support_tau_tilting(cat.sample(c), mode).ok]


def enumerate_silting(alg: AlgebraPresentation) -> List[SubcatSample]:
    cat = catalog(alg)
    return [T for T in all_subsets(cat) if is_silting_findim(T, cat).ok]


def enumerate_cosilting(alg: AlgebraPresentation) -> List[SubcatSample]:
    cat = catalog(alg)
    return [T for T in all_subsets(cat) if is_cosilting_findim(T, cat, cross_check=False).ok]


# -- transport -------------------------------------------------------------------

def _image_sample(alg, modules) -> SubcatSample:
    return SubcatSample.from_modules(alg, [M for M in modules if M.dim])


def transport_tilting(ctx, direction: str, T: SubcatSample, strict: bool = True):
    """R T over B, or E T' + S over A; returns (sample, verdict)."""
    from .functors import view_of

    view = view_of(ctx)
    if not is_tilting(T, "coresolution").ok:
        raise NotCertified("input is not tilting")
    if direction == "Restrict":
        out = _image_sample(view.B, [view.restrict(X) for X in T])
    elif direction == "Extend":
        out = _image_sample(view.A, [view.extend(X) for X in T] + [view.S])
    else:
        raise ValueError(f"unknown direction {direction!r}")
    v1 = is_tilting(out, "coresolution")
    v2 = is_tilting(out, "perp")
    verdict = Verdict(v1.ok and v2.ok, "coresolution+perp",
                      {**{f"coresolution.{k}": x for k, x in v1.clauses.items()},
                       **{f"perp.{k}": x for k, x in v2.clauses.items()}})
    if strict and not verdict.ok:
        raise TransportFailure(",".join(verdict.failed_clauses()), f"{direction} of {T.key()}")
    return out, verdict


def transport_stt(ctx, direction: str, T: SubcatSample, strict: bool = True):
    from .functors import view_of

    view = view_of(ctx)
    if not is_support_tau_tilting(T, "approximation").ok:
        raise NotCertified("input is not support tau-tilting")
    if direction == "Restrict":
        out = _image_sample(view.B, [view.restrict(X) for X in T])
    elif direction == "Extend":
        out = _image_sample(view.A, [view.extend(X) for X in T] + [view.S])
    else:
        raise ValueError(f"unknown direction {direction!r}")
    v1 = is_support_tau_tilting(out, "approximation")
    v2 = is_support_tau_tilting(out, "tau-pairs")
    verdict = Verdict(v1.ok and v2.ok, "approximation+tau-pairs",
                      {**{f"approximation.{k}": x for k, x in v1.clauses.items()},
                       **{f"tau-pairs.{k}": x for k, x in v2.clauses.items()}})
    if strict and not verdict.ok:
        raise TransportFailure(",".join(verdict.failed_clauses()), f"{direction} of {T.key()}")
    return out, verdict


def same_fac(T1: SubcatSample, T2: SubcatSample, cat: Optional[Catalog] = None) -> bool:
    """Equivalence of support tau-tilting objects: equal Fac classes."""
    cat = cat or catalog(T1.algebra)
    return fac_class(T1, cat) == fac_class(T2, cat)


# -- silting restriction and module-level transport ---------------------------------

def hom_surjective(d: ModuleMap, M: Representation) -> bool:
    """Hom(d, M): Hom(target, M) -> Hom(source, M) is surjective."""
    need = hom_dim(d.source, M)
    if need == 0:
        return True
    vecs = [(g @ d).flatten() for g in hom_basis(d.target, M)]
    if not vecs:
        return False
    return rank(Matrix(M.field, vecs, len(vecs[0]))) == need


@dataclass
class SiltingRestriction:
    """Comparison of D_{R sigma} with Gen(R T) over the enumerated B-modules."""

    hypothesis: bool                 # Ext^1_A(S, T) = 0
    d_not_gen: List[int]             # members of D_{R sigma} outside Gen(R T)
    gen_not_d: List[int]             # members of Gen(R T) outside D_{R sigma}

    @property
    def inclusion_ok(self) -> bool:
        return not self.d_not_gen

    @property
    def converse_ok(self) -> bool:
        return not self.gen_not_d


def silting_restriction(ctx, T: SubcatSample) -> SiltingRestriction:
    from .functors import view_of

    view = view_of(ctx)
    sigma = silting_presentation(T, view.A)
    Rd = view.restrict(sigma.d)
    RT = [view.restrict(X) for X in T]
    hyp = ext_dim(1, view.S, sigma.target) == 0
    cat = catalog(view.B)
    dn, gn = [], []
    for i, M in enumerate(cat.modules):
        inD, inG = hom_surjective(Rd, M), in_gen(RT, M)
        if inD and not inG:
            dn.append(i)
        if inG and not inD:
            gn.append(i)
    return SiltingRestriction(hyp, dn, gn)


def restrict_module(ctx, T: SubcatSample) -> SubcatSample:
    from .functors import view_of

    view = view_of(ctx)
    return _image_sample(view.B, [view.restrict(X) for X in T])


def extend_module(ctx, T: SubcatSample) -> SubcatSample:
    """E T' + S."""
    from .functors import view_of

    view = view_of(ctx)
    return _image_sample(view.A, [view.extend(X) for X in T] + [view.S])
