"""Torsion pairs, (tau-)cotorsion pairs and the triples they glue into.

Subcategories are sets of indices into the catalogue of indecomposables of a
representation-finite algebra; every perpendicular or Fac class is a predicate
filter over that catalogue, so each identity becomes a finite set comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, Iterable, List, Optional

from .errors import ComparisonFailure, NotCertified
from .presentation import AlgebraPresentation
from .repcat import Representation, cokernel, decompose, ext_dim, hom_basis, hom_dim, projective
from .tiltkit import (Catalog, SubcatSample, Verdict, catalog, fac_class,
                      is_support_tau_tilting, is_tilting, left_approximation,
                      trace, transport_stt, transport_tilting)
from .exactlin import Matrix, rank

COTORSION = "CotorsionTorsion"
TAU_COTORSION = "TauCotorsionTorsion"

IndexSet = FrozenSet[int]


@dataclass
class TorsionTriple:
    kind: str
    algebra: AlgebraPresentation
    C: IndexSet
    T: IndexSet
    F: IndexSet
    provenance: SubcatSample

    def sample(self, which: str) -> SubcatSample:
        return catalog(self.algebra).sample(getattr(self, which))

    def as_lists(self) -> Dict[str, List[int]]:
        return {"C": sorted(self.C), "T": sorted(self.T), "F": sorted(self.F)}


# -- predicate filters -----------------------------------------------------------

def left_ext1_perp(cat: Catalog, D: Iterable[int]) -> IndexSet:
    """{X : Ext^1(X, D) = 0}."""
    D = list(D)
    mods = cat.modules
    return frozenset(i for i, X in enumerate(mods) if all(ext_dim(1, X, mods[j]) == 0 for j in D))


def right_ext1_perp(cat: Catalog, C: Iterable[int]) -> IndexSet:
    """{Y : Ext^1(C, Y) = 0}."""
    C = list(C)
    mods = cat.modules
    return frozenset(i for i, Y in enumerate(mods) if all(ext_dim(1, mods[j], Y) == 0 for j in C))


def hom_right_perp(cat: Catalog, gens: Iterable[Representation]) -> IndexSet:
    """{Y : Hom(gens, Y) = 0}."""
    gens = list(gens)
    return frozenset(i for i, Y in enumerate(cat.modules) if all(hom_dim(X, Y) == 0 for X in gens))


def fac_set(cat: Catalog, gens: Iterable[Representation]) -> IndexSet:
    return frozenset(fac_class(list(gens), cat))


def summand_indices(cat: Catalog, modules: Iterable[Representation]) -> IndexSet:
    """Catalogue indices of all indecomposable summands of the given modules."""
    out = set()
    for M in modules:
        if M.dim == 0:
            continue
        for X, _ in decompose(M):
            out.add(cat.index(X))
    return frozenset(out)


# -- the bijection ---------------------------------------------------------------

def triple_from_tilting(T: SubcatSample, kind: str = COTORSION) -> TorsionTriple:
    """(perp_1 Fac T, Fac T, T^perp_0), with the round trip C n T = add T checked."""
    if kind == COTORSION:
        if not is_tilting(T, "coresolution").ok:
            raise NotCertified("not a tilting subcategory")
    elif kind == TAU_COTORSION:
        if not is_support_tau_tilting(T, "approximation").ok:
            raise NotCertified("not a support tau-tilting subcategory")
    else:
        raise ValueError(f"unknown triple kind {kind!r}")
    cat = catalog(T.algebra)
    cat.require_complete()
    Tc = fac_set(cat, T)
    C = left_ext1_perp(cat, Tc)
    F = hom_right_perp(cat, T)
    if T.indices is None:
        T = cat.sample(cat.index(X) for X in T)
    if C & Tc != frozenset(T.indices):
        raise NotCertified("C n T does not recover the generating subcategory")
    return TorsionTriple(kind, T.algebra, C, Tc, F, T)


def round_trip(triple: TorsionTriple) -> bool:
    return triple.C & triple.T == frozenset(triple.provenance.indices)


# -- verifiers ---------------------------------------------------------------------

def verify_torsion_pair(alg: AlgebraPresentation, Tset: Iterable[int], Fset: Iterable[int]) -> Verdict:
    cat = catalog(alg)
    Tset, Fset = frozenset(Tset), frozenset(Fset)
    mods = cat.modules
    hom_bad = [(i, j) for i in sorted(Tset) for j in sorted(Fset) if hom_dim(mods[i], mods[j])]
    seq_bad = []
    tgens = [mods[i] for i in sorted(Tset)]
    for k, X in enumerate(mods):
        t, inc = trace(tgens, X)
        q, _ = cokernel(inc)
        ok = summand_indices(cat, [t]) <= Tset and summand_indices(cat, [q]) <= Fset
        if not ok:
            seq_bad.append(k)
    clauses = {"hom_vanishing": not hom_bad, "canonical_sequences": not seq_bad}
    return Verdict(all(clauses.values()), "TorsionPair", clauses,
                   {"hom_vanishing": hom_bad, "canonical_sequences": seq_bad})


def verify_cotorsion_pair(alg: AlgebraPresentation, Cset: Iterable[int], Dset: Iterable[int],
                          provenance: Optional[SubcatSample] = None) -> Verdict:
    """C = perp_1 D and D = C^perp_1; approximation sequences certified for projectives."""
    cat = catalog(alg)
    Cset, Dset = frozenset(Cset), frozenset(Dset)
    c_ok = left_ext1_perp(cat, Dset) == Cset
    d_ok = right_ext1_perp(cat, Cset) == Dset
    seq_bad = []
    status = "inherited"
    if provenance is not None:
        status = "verified-for-projectives"
        for v in range(alg.n_vertices):
            f = left_approximation(provenance, projective(alg, v))
            coker, _ = cokernel(f)
            if not (f.is_injective() and summand_indices(cat, [f.target]) <= (Cset & Dset)
                    and summand_indices(cat, [coker]) <= Cset):
                seq_bad.append(v)
    clauses = {"C_is_left_perp": c_ok, "D_is_right_perp": d_ok,
               "approximation_sequences": not seq_bad}
    return Verdict(all(clauses.values()), "CotorsionPair", clauses,
                   {"approximation_sequences": seq_bad, "status": [status]})


def _is_left_approximation(f, targets: List[Representation]) -> bool:
    """Every map from f.source to a target factors through f."""
    for Y in targets:
        need = hom_dim(f.source, Y)
        if need == 0:
            continue
        vecs = [(g @ f).flatten() for g in hom_basis(f.target, Y)]
        if not vecs or rank(Matrix(f.source.field, vecs, len(vecs[0]))) < need:
            return False
    return True


def verify_tau_cotorsion_pair(alg: AlgebraPresentation, Cset: Iterable[int],
                              Dset: Iterable[int]) -> Verdict:
    """C = perp_1 D and, per projective, P -> D0 -> C0 -> 0 with f a left D-approximation."""
    cat = catalog(alg)
    Cset, Dset = frozenset(Cset), frozenset(Dset)
    mods = cat.modules
    c_ok = left_ext1_perp(cat, Dset) == Cset
    CD = [mods[i] for i in sorted(Cset & Dset)]
    Dmods = [mods[i] for i in sorted(Dset)]
    bad = []
    for v in range(alg.n_vertices):
        f = left_approximation(CD, projective(alg, v))
        coker, _ = cokernel(f)
        if not (_is_left_approximation(f, Dmods) and summand_indices(cat, [coker]) <= Cset):
            bad.append(v)
    clauses = {"C_is_left_perp": c_ok, "projective_sequences": not bad,
               "contravariantly_finite": True}
    return Verdict(all(clauses.values()), "TauCotorsionPair", clauses,
                   {"projective_sequences": bad, "contravariantly_finite": ["vacuous at findim"]})


def verify_triple(triple: TorsionTriple) -> Verdict:
    tp = verify_torsion_pair(triple.algebra, triple.T, triple.F)
    if triple.kind == COTORSION:
        cp = verify_cotorsion_pair(triple.algebra, triple.C, triple.T, triple.provenance)
    else:
        cp = verify_tau_cotorsion_pair(triple.algebra, triple.C, triple.T)
    clauses = {f"torsion.{k}": x for k, x in tp.clauses.items()}
    clauses.update({f"cotorsion.{k}": x for k, x in cp.clauses.items()})
    clauses["round_trip"] = round_trip(triple)
    return Verdict(all(clauses.values()), triple.kind, clauses)


# -- transport -------------------------------------------------------------------

@dataclass
class ComparisonRecord:
    name: str
    lhs: List[int]
    rhs: List[int]
    status: str     # "pass", "fail" or "not-applicable"


@dataclass
class ComparisonReport:
    direction: str
    hypothesis: bool
    records: List[ComparisonRecord] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def add(self, name, lhs, rhs, applicable: bool = True):
        if not applicable:
            self.records.append(ComparisonRecord(name, sorted(lhs), sorted(rhs), "not-applicable"))
        else:
            self.records.append(ComparisonRecord(name, sorted(lhs), sorted(rhs),
                                                 "pass" if frozenset(lhs) == frozenset(rhs) else "fail"))


def _image(cat_target: Catalog, functor, cat_source: Catalog, idx: Iterable[int]) -> IndexSet:
    return summand_indices(cat_target, [functor(cat_source.modules[i]) for i in idx])


def transport_triple(ctx, direction: str, triple: TorsionTriple, strict: bool = True):
    """Transport a triple along R or E; returns (triple, ComparisonReport)."""
    from .functors import view_of

    view = view_of(ctx)
    tilt = transport_tilting if triple.kind == COTORSION else transport_stt
    new_prov, _ = tilt(view, direction, triple.provenance)
    new = triple_from_tilting(new_prov, triple.kind)
    catA, catB = catalog(view.A), catalog(view.B)
    prov = list(triple.provenance)
    if direction == "Restrict":
        src, tgt = catA, catB
        perp = frozenset(i for i, X in enumerate(catA.modules) if view.in_s_perp(X))
        hyp = triple.T <= perp
        rep = ComparisonReport(direction, hyp)
        R = view.restrict
        RC = _image(tgt, R, src, triple.C)
        RT = _image(tgt, R, src, triple.T)
        RF = _image(tgt, R, src, triple.F & perp)
        rep.add("C", new.C, RC, hyp)
        rep.add("T", new.T, RT, hyp)
        rep.add("F", new.F, RF, hyp)
        Rprov = [R(X) for X in prov]
        rep.add("R(Fac(CnT)) = Fac(R(CnT))", RT, fac_set(tgt, Rprov), hyp)
        rep.add("perp1(R T) = R(perp1 T)", left_ext1_perp(tgt, RT), RC, hyp)
        rep.add("(R(CnT))^perp0 = R((CnT)^perp0 n S-perp)", hom_right_perp(tgt, Rprov),
                _image(tgt, R, src, hom_right_perp(src, prov) & perp), hyp)
    elif direction == "Extend":
        src, tgt = catB, catA
        perp = frozenset(i for i, X in enumerate(catA.modules) if view.in_s_perp(X))
        rep = ComparisonReport(direction, True)
        E = view.extend
        Eprov = [E(X) for X in prov]
        fac_e = fac_set(tgt, Eprov)
        first_C = left_ext1_perp(tgt, fac_e)
        rep.add("C (first triple)", new.C, first_C)
        rep.add("T (first triple)", new.T, fac_set(tgt, Eprov + [view.S]))
        rep.add("F (first triple)", new.F, hom_right_perp(tgt, Eprov + [view.S]))
        rep.add("C in S-perp", first_C & perp, _image(tgt, E, src, triple.C))
        rep.add("T in S-perp", fac_e & perp, _image(tgt, E, src, triple.T))
        rep.add("F in S-perp", hom_right_perp(tgt, Eprov) & perp, _image(tgt, E, src, triple.F))
        rep.add("perp1 Fac(E(C'nT') + S) = perp1 Fac(E(C'nT'))",
                left_ext1_perp(tgt, fac_set(tgt, Eprov + [view.S])), first_C)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if strict and not rep.ok:
        diffs = [r for r in rep.records if r.status == "fail"]
        raise ComparisonFailure(f"{direction} comparison failed", diffs)
    return new, rep
