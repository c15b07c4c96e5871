"""Verification suites and their deterministic JSON reports.

Each suite produces one check record per anchor.  A record aggregates every
instance checked under that anchor and keeps the first counterexample as
replayable ``.rep`` payloads.  Status is ``pass``/``fail`` for asserted
statements and ``reported`` for open probes, which never fail a run; for a
probe, ``failed`` counts the instances where the probed statement did not hold.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence

from .errors import InputError
from .formats import format_rep
from .functors import ext_transport_report, view_of
from .presentation import AlgebraPresentation, ExtensionContext, opposite
from .repcat import (dual, ext_dim, injective, is_isomorphic, pd, projective, projective_sum,
                     radical, random_module)
from .tiltkit import (SubcatSample, all_subsets, catalog, extend_module,
                      is_cosilting_findim, is_quasi_tilting_findim, is_silting_findim,
                      is_support_tau_tilting, is_tilting, restrict_module, same_fac,
                      silting_restriction, transport_stt, transport_tilting)
from .triples import (COTORSION, TAU_COTORSION, round_trip, transport_triple,
                      triple_from_tilting, verify_triple)

# anchor id -> the statement checked under it
ANCHORS: Dict[str, str] = {
    "structure.s-injective": "The simple top S of the projective at the new vertex is injective.",
    "structure.pd-s": "S has projective dimension one when P0 is nonzero (zero otherwise).",
    "structure.radical": "The radical of the projective at the new vertex is isomorphic to P0.",
    "sequences.restriction": "Every A-module X fits in an exact sequence 0 -> L R X -> X -> S^u(X) -> 0.",
    "sequences.extension": "Every B-module M fits in an exact sequence 0 -> L M -> E M -> S^m -> 0, "
                           "m = dim Hom(P0, M).",
    "sequences.delta-mono": "The unit delta_X: X -> E R X is a monomorphism iff Hom(S, X) = 0.",
    "sequences.delta-epi": "The unit delta_X: X -> E R X is an epimorphism iff Ext^1(S, X) = 0.",
    "ext-transport.e-left": "Ext^j_A(E M, X) = Ext^j_B(M, R X) whenever X lies in S-perp.",
    "ext-transport.e-right": "Ext^j_A(X, E M) = Ext^j_B(R X, M).",
    "ext-transport.r-surjective": "R induces a surjection Ext^1_A(X, Y) -> Ext^1_B(R X, R Y).",
    "ext-transport.higher": "Ext^j_A(X, Y) = Ext^j_B(R X, R Y) for j >= 2.",
    "definitions.tilting": "T-perp = Fac(T) characterises tilting exactly when rigidity, pd <= 1 and "
                           "the coresolution of projectives do.",
    "definitions.stt": "The approximation definition of support tau-tilting agrees with "
                       "tau-rigid pairs of maximal count.",
    "definitions.silting": "A finite-dimensional module is silting iff it is support tau-tilting.",
    "definitions.tilting-silting": "Every tilting module is silting.",
    "definitions.cosilting": "T is cosilting iff its dual is silting over the opposite algebra.",
    "tilting.restrict": "For a tilting A-module T, R T is a tilting B-module.",
    "tilting.extend": "For a tilting B-module T', E T' + S is a tilting A-module.",
    "tilting.extend-injective": "Non-isomorphic tilting B-modules extend to non-isomorphic tilting A-modules.",
    "stt.restrict": "For a support tau-tilting A-module T, R T is support tau-tilting over B.",
    "stt.extend": "For a support tau-tilting B-module T', E T' + S is support tau-tilting over A.",
    "stt.extend-injective": "Inequivalent support tau-tilting B-modules extend to inequivalent ones.",
    "silting.restrict": "For a silting A-module T with presentation sigma, R T is silting over B.",
    "silting.restrict-inclusion": "D_{R sigma} is contained in Gen(R T).",
    "silting.restrict-equality": "D_{R sigma} = Gen(R T) when Ext^1_A(S, T) = 0.",
    "probe.restrict-equality-without-hypothesis":
        "Open: does D_{R sigma} = Gen(R T) still hold when Ext^1_A(S, T) != 0?",
    "probe.extend-silting": "Open: is E T' + S silting over A for every silting B-module T'?",
    "quasi-tilting.restrict": "For a finendo quasi-tilting A-module T, R T is finendo quasi-tilting.",
    "quasi-tilting.extend": "For a finendo quasi-tilting B-module T', E T' + S is finendo quasi-tilting.",
    "cosilting.restrict": "For a cosilting A-module C in S-perp, R C is cosilting over B.",
    "cosilting.extend": "For a cosilting B-module C', E C' + S is cosilting over A.",
    "triples.bijection": "(perp1 Fac T, Fac T, T^perp0) is a triple and C n T recovers add T.",
    "triples.verified": "Every triple from (support tau-)tilting provenance passes the pair checks.",
    "triples.restrict": "R of a cotorsion torsion triple is the triple of R T, including the proof identities.",
    "triples.extend": "The triple of E T' + S agrees with E of the triple of T' inside S-perp.",
    "triples.tau-restrict": "R of a tau-cotorsion torsion triple is the triple of R T.",
    "triples.tau-extend": "The tau-triple of E T' + S agrees with E of the tau-triple of T' inside S-perp.",
}

SUITES: Dict[str, List[str]] = {
    "structure": ["structure.s-injective", "structure.pd-s", "structure.radical"],
    "sequences": ["sequences.restriction", "sequences.extension", "sequences.delta-mono",
                  "sequences.delta-epi"],
    "ext-transport": ["ext-transport.e-left", "ext-transport.e-right",
                      "ext-transport.r-surjective", "ext-transport.higher"],
    "definitions": ["definitions.tilting", "definitions.stt", "definitions.silting",
                    "definitions.tilting-silting", "definitions.cosilting"],
    "transport-tilting": ["tilting.restrict", "tilting.extend", "tilting.extend-injective"],
    "transport-stt": ["stt.restrict", "stt.extend", "stt.extend-injective"],
    "silting-restriction": ["silting.restrict", "silting.restrict-inclusion",
                            "silting.restrict-equality",
                            "probe.restrict-equality-without-hypothesis", "probe.extend-silting"],
    "quasi-tilting": ["quasi-tilting.restrict", "quasi-tilting.extend"],
    "cosilting": ["cosilting.restrict", "cosilting.extend"],
    "triples": ["triples.bijection", "triples.verified", "triples.restrict", "triples.extend",
                "triples.tau-restrict", "triples.tau-extend"],
}

PROBES = frozenset(a for a in ANCHORS if a.startswith("probe."))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("OPEXT_THREADS", "1")))
    except ValueError:
        raise InputError("OPEXT_THREADS must be an integer") from None


def _pmap(fn: Callable, items: Sequence) -> list:
    """Ordered map; runs on a thread pool capped by OPEXT_THREADS."""
    n = _threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _payload(**named) -> Dict[str, str]:
    out = {}
    for name, obj in named.items():
        if isinstance(obj, SubcatSample):
            for i, X in enumerate(obj):
                out[f"{name}[{i}]"] = format_rep(X)
        elif obj is not None:
            out[name] = format_rep(obj)
    return out


class _Check:
    def __init__(self, anchor: str):
        if anchor not in ANCHORS:
            raise KeyError(f"unregistered anchor {anchor!r}")
        self.anchor = anchor
        self.probe = anchor in PROBES
        self.checked = 0
        self.failed = 0
        self.details: List[str] = []
        self.counterexample: Optional[Dict[str, str]] = None

    def add(self, ok: bool, payload: Optional[Callable[[], Dict[str, str]]] = None, detail: str = ""):
        """Record one instance; for probes ``ok`` means the probed statement held."""
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = payload() if payload else {}
                if detail:
                    self.details.append(detail)

    def note(self, text: str):
        self.details.append(text)

    def record(self) -> dict:
        if self.probe:
            status = "reported"
        else:
            status = "fail" if self.failed else "pass"
        return {
            "anchor": self.anchor,
            "statement": ANCHORS[self.anchor],
            "status": status,
            "checked": self.checked,
            "failed": self.failed,
            "detail": "; ".join(self.details),
            "counterexample": self.counterexample,
        }


@dataclass
class VerifyReport:
    suite: str
    algebras: Dict[str, str]
    seed: int
    count: int
    checks: List[dict] = dc_field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        out = {"pass": 0, "fail": 0, "reported": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def record(self, anchor: str) -> dict:
        for c in self.checks:
            if c["anchor"] == anchor:
                return c
        raise KeyError(anchor)

    def to_json(self) -> str:
        doc = {"suite": self.suite, "algebras": self.algebras, "seed": self.seed,
               "count": self.count, "checks": self.checks, "summary": self.summary}
        return json.dumps(doc, indent=2) + "\n"

    def human(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            lines.append(f"  {c['status']:8s} {c['anchor']}: {c['checked'] - c['failed']}/{c['checked']}"
                         + (f"  [{c['detail']}]" if c["detail"] else ""))
        s = self.summary
        lines.append(f"  {s['pass']} pass, {s['fail']} fail, {s['reported']} reported")
        return "\n".join(lines)


# -- suites on an extension context ----------------------------------------------

def _structure(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    A = view.A
    S = view.S
    c_inj, c_pd, c_rad = (_Check(a) for a in SUITES["structure"])
    c_inj.add(is_isomorphic(S, injective(A, view.omega)), lambda: _payload(S=S))
    want = 1 if ctx.p0_dimension() else 0
    got = pd(S)
    c_pd.add(got == want, lambda: _payload(S=S), f"pd S = {got}, expected {want}")
    P0 = view.embed(projective_sum(view.B, ctx.p0_vertices))
    rad, _ = radical(projective(A, view.omega))
    c_rad.add(is_isomorphic(rad, P0), lambda: _payload(radical=rad, P0=P0))
    return [c_inj, c_pd, c_rad]


def _sequences(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    rng = random.Random(seed)
    items = [(random_module(view.A, rng), random_module(view.B, rng)) for _ in range(count)]

    def run(item):
        X, M = item
        s1, s2 = view.restriction_sequence(X), view.extension_sequence(M)
        hom_s, ext_s = ext_dim(0, view.S, X), ext_dim(1, view.S, X)
        delta = view.unit_delta(X)
        m = sum(M.dims[i] for i in view.targets)
        return (s1.is_exact() and s1.s_multiplicity == view.top_fiber(X),
                s2.is_exact() and s2.s_multiplicity == m,
                delta.is_injective() == (hom_s == 0),
                delta.is_surjective() == (ext_s == 0))

    checks = [_Check(a) for a in SUITES["sequences"]]
    for (X, M), flags in zip(items, _pmap(run, items)):
        for chk, ok in zip(checks, flags):
            chk.add(ok, lambda: _payload(X=X, M=M))
    return checks


def _ext_transport(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    rng = random.Random(seed)
    items = [(random_module(view.A, rng), random_module(view.A, rng), random_module(view.B, rng))
             for _ in range(count)]
    checks = {i: _Check(a) for i, a in zip((1, 2, 3, 4), SUITES["ext-transport"])}
    reports = _pmap(lambda it: ext_transport_report(ctx, *it), items)
    for (X, Y, M), rep in zip(items, reports):
        for item, chk in checks.items():
            recs = [r for r in rep.records if r.item == item]
            if not recs:
                continue
            bad = [r for r in recs if not r.ok]
            chk.add(not bad, lambda: _payload(X=X, Y=Y, M=M),
                    ", ".join(f"j={r.degree}: {r.lhs} != {r.rhs}" for r in bad))
    return list(checks.values())


def _definitions_on(alg: AlgebraPresentation, checks: List[_Check]):
    cat = catalog(alg)
    cat.require_complete()
    c_t, c_s, c_sil, c_ts, c_cos = checks
    op = opposite(alg)
    for T in all_subsets(cat):
        pl = lambda T=T: _payload(T=T)
        t_perp = is_tilting(T, "perp", cat).ok
        t_cores = is_tilting(T, "coresolution", cat).ok
        c_t.add(t_perp == t_cores, pl, f"{alg.name}: {T.key()}")
        s_approx = is_support_tau_tilting(T, "approximation").ok
        s_pairs = is_support_tau_tilting(T, "tau-pairs").ok
        c_s.add(s_approx == s_pairs, pl, f"{alg.name}: {T.key()}")
        sil = is_silting_findim(T, cat).ok
        c_sil.add(sil == s_approx, pl, f"{alg.name}: {T.key()}")
        if t_cores:
            c_ts.add(sil, pl, f"{alg.name}: {T.key()}")
        cos = is_cosilting_findim(T, cat, cross_check=False).ok
        DT = SubcatSample.from_modules(op, [dual(X) for X in T])
        dual_stt = is_support_tau_tilting(DT, "approximation").ok
        c_cos.add(cos == dual_stt, pl, f"{alg.name}: {T.key()}")


def _definitions(ctx: Optional[ExtensionContext], seed: int, count: int,
                 alg: Optional[AlgebraPresentation] = None) -> List[_Check]:
    checks = [_Check(a) for a in SUITES["definitions"]]
    algs = [alg] if ctx is None else [ctx.base, ctx.extended]
    for a in algs:
        _definitions_on(a, checks)
    return checks


def _transport(ctx: ExtensionContext, kind: str) -> List[_Check]:
    view = view_of(ctx)
    catA, catB = catalog(view.A), catalog(view.B)
    catA.require_complete()
    catB.require_complete()
    if kind == "tilting":
        certified = lambda T, cat: is_tilting(T, "coresolution", cat).ok
        move = transport_tilting
        distinct = lambda U, V: not U.same_as(V)
    else:
        certified = lambda T, cat: is_support_tau_tilting(T, "approximation").ok
        move = transport_stt
        distinct = lambda U, V: not same_fac(U, V)
    c_r, c_e, c_inj = (_Check(a) for a in SUITES[f"transport-{kind}"])
    for T in all_subsets(catA):
        if certified(T, catA):
            out, verdict = move(view, "Restrict", T, strict=False)
            c_r.add(verdict.ok, lambda T=T: _payload(T=T), ",".join(verdict.failed_clauses()))
    images = []
    for T in all_subsets(catB):
        if certified(T, catB):
            out, verdict = move(view, "Extend", T, strict=False)
            c_e.add(verdict.ok, lambda T=T: _payload(T=T), ",".join(verdict.failed_clauses()))
            images.append((T, out))
    for (T1, U1), (T2, U2) in ((a, b) for i, a in enumerate(images) for b in images[i + 1:]):
        c_inj.add(distinct(U1, U2), lambda: _payload(T1=T1, T2=T2))
    c_r.note(f"{c_r.checked} restrictions")
    c_e.note(f"{c_e.checked} extensions")
    return [c_r, c_e, c_inj]


def _silting_restriction(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    catA, catB = catalog(view.A), catalog(view.B)
    c_sil, c_inc, c_eq, p_eq, p_ext = (_Check(a) for a in SUITES["silting-restriction"])
    for T in all_subsets(catA):
        if not is_silting_findim(T, catA).ok:
            continue
        pl = lambda T=T: _payload(T=T)
        RT = restrict_module(view, T)
        c_sil.add(is_silting_findim(RT, catB).ok, pl)
        r = silting_restriction(view, T)
        c_inc.add(r.inclusion_ok, pl, f"{len(r.d_not_gen)} modules in D but not Gen")
        if r.hypothesis:
            c_eq.add(r.converse_ok, pl)
        else:
            p_eq.add(r.converse_ok, pl)
    for T in all_subsets(catB):
        if is_silting_findim(T, catB).ok:
            p_ext.add(is_silting_findim(extend_module(view, T), catA).ok, lambda T=T: _payload(T=T))
    return [c_sil, c_inc, c_eq, p_eq, p_ext]


def _quasi_tilting(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    catA, catB = catalog(view.A), catalog(view.B)
    c_r, c_e = (_Check(a) for a in SUITES["quasi-tilting"])
    for T in all_subsets(catA):
        if is_quasi_tilting_findim(T, catA).ok:
            c_r.add(is_quasi_tilting_findim(restrict_module(view, T), catB).ok,
                    lambda T=T: _payload(T=T))
    for T in all_subsets(catB):
        if is_quasi_tilting_findim(T, catB).ok:
            c_e.add(is_quasi_tilting_findim(extend_module(view, T), catA).ok,
                    lambda T=T: _payload(T=T))
    return [c_r, c_e]


def _cosilting(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    catA, catB = catalog(view.A), catalog(view.B)
    c_r, c_e = (_Check(a) for a in SUITES["cosilting"])
    for T in all_subsets(catA):
        if all(view.in_s_perp(X) for X in T) and is_cosilting_findim(T, catA, cross_check=False).ok:
            c_r.add(is_cosilting_findim(restrict_module(view, T), catB).ok,
                    lambda T=T: _payload(T=T))
    for T in all_subsets(catB):
        if is_cosilting_findim(T, catB, cross_check=False).ok:
            c_e.add(is_cosilting_findim(extend_module(view, T), catA).ok,
                    lambda T=T: _payload(T=T))
    return [c_r, c_e]


def _triples(ctx: ExtensionContext, seed: int, count: int) -> List[_Check]:
    view = view_of(ctx)
    catA, catB = catalog(view.A), catalog(view.B)
    c_bij, c_ver, c_r, c_e, c_tr, c_te = (_Check(a) for a in SUITES["triples"])
    by_kind = {COTORSION: (lambda T, cat: is_tilting(T, "coresolution", cat).ok, c_r, c_e),
               TAU_COTORSION: (lambda T, cat: is_support_tau_tilting(T, "approximation").ok, c_tr, c_te)}
    for kind, (certified, chk_r, chk_e) in by_kind.items():
        for cat, direction, chk in ((catA, "Restrict", chk_r), (catB, "Extend", chk_e)):
            na = 0
            for T in all_subsets(cat):
                if not certified(T, cat):
                    continue
                pl = lambda T=T: _payload(T=T)
                tri = triple_from_tilting(T, kind)
                c_bij.add(round_trip(tri), pl)
                v = verify_triple(tri)
                c_ver.add(v.ok, pl, ",".join(v.failed_clauses()))
                _, rep = transport_triple(view, direction, tri, strict=False)
                bad = [r.name for r in rep.records if r.status == "fail"]
                na += sum(r.status == "not-applicable" for r in rep.records)
                chk.add(not bad, pl, "; ".join(bad))
            if na:
                chk.note(f"{na} comparisons not applicable (hypothesis T in S-perp fails)")
    return [c_bij, c_ver, c_r, c_e, c_tr, c_te]


_RUNNERS = {
    "structure": _structure,
    "sequences": _sequences,
    "ext-transport": _ext_transport,
    "definitions": _definitions,
    "transport-tilting": lambda ctx, seed, count: _transport(ctx, "tilting"),
    "transport-stt": lambda ctx, seed, count: _transport(ctx, "stt"),
    "silting-restriction": _silting_restriction,
    "quasi-tilting": _quasi_tilting,
    "cosilting": _cosilting,
    "triples": _triples,
}


def run_suite(suite: str, ctx: Optional[ExtensionContext] = None, seed: int = 0, count: int = 100,
              algebra: Optional[AlgebraPresentation] = None) -> VerifyReport:
    """Run a named suite on an extension (or, for ``definitions``, on a single algebra)."""
    if suite not in _RUNNERS:
        raise InputError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    if ctx is None:
        if suite != "definitions" or algebra is None:
            raise InputError(f"suite {suite!r} needs a base algebra and --p0")
        checks = _definitions(None, seed, count, algebra)
        algebras = {"algebra": algebra.fingerprint}
    else:
        checks = _RUNNERS[suite](ctx, seed, count)
        algebras = {"base": ctx.base.fingerprint, "extended": ctx.extended.fingerprint}
    return VerifyReport(suite, algebras, seed, count, [c.record() for c in checks])
