"""The eight acceptance criteria, each under its stated time limit.

Every test records one ``criterion N: PASS|FAIL ...`` line, printed in the
terminal summary.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

import conftest
from opext import corpus
from opext.exactlin import GF
from opext.repcat import brute_force_indecomposables, enumerate_indecomposables
from opext.suites import run_suite
from opext.tiltkit import enumerate_support_tau_tilting, enumerate_tilting

F2 = GF(2)


@contextmanager
def criterion(number, title, limit):
    """Time the block; record and assert both correctness and the time limit."""
    start = time.perf_counter()
    state = {"ok": False, "note": ""}
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        verdict = "PASS" if state["ok"] and within else "FAIL"
        note = f" ({state['note']})" if state["note"] else ""
        line = (f"criterion {number}: {verdict}  {title}  "
                f"{elapsed:.2f}s / limit {limit:g}s{note}")
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    assert state["ok"], state["note"]
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


def _suites(suites, contexts, **kw):
    failures = []
    for ctx in contexts:
        for suite in suites:
            report = run_suite(suite, ctx, **kw)
            if not report.ok:
                failures.append(f"{suite} on {ctx.extended.name}: "
                                + ", ".join(c["anchor"] for c in report.checks
                                            if c["status"] == "fail"))
    return failures


def test_criterion_1_structure():
    contexts = corpus.extensions()
    with criterion(1, "S injective, pd S = 1, rad P_w = P0", 1) as st:
        fails = _suites(["structure"], contexts)
        st["ok"] = not fails
        st["note"] = "; ".join(fails) or f"{len(contexts)} extensions"


def test_criterion_2_sequences():
    contexts = corpus.extensions()
    with criterion(2, "restriction/extension sequences and delta", 5) as st:
        fails = _suites(["sequences"], contexts, seed=0, count=100)
        st["ok"] = not fails
        st["note"] = "; ".join(fails) or "100 modules per extension"


def test_criterion_3_ext_transport():
    contexts = corpus.extensions()
    with criterion(3, "Ext transport items (1)-(4), j <= 3", 30) as st:
        fails = _suites(["ext-transport"], contexts, seed=0, count=100)
        st["ok"] = not fails
        st["note"] = "; ".join(fails) or "100 pairs per extension"


def test_criterion_4_counts():
    want = {"a2": (3, 2, 5), "a3": (6, 5, 14), "a3_rel": (5, None, None)}
    with criterion(4, "enumeration counts over F2", 60) as st:
        bad = []
        for name, (n_ind, n_tilt, n_stt) in want.items():
            alg = corpus.load(name, F2)
            got = len(enumerate_indecomposables(alg))
            brute = len(brute_force_indecomposables(alg, 3))
            if got != n_ind or brute != n_ind:
                bad.append(f"{name} ind {got}/{brute} != {n_ind}")
            if n_tilt is not None and len(enumerate_tilting(alg)) != n_tilt:
                bad.append(f"{name} tilting")
            if n_stt is not None and len(enumerate_support_tau_tilting(alg)) != n_stt:
                bad.append(f"{name} stt")
        st["ok"] = not bad
        st["note"] = "; ".join(bad)


def test_criterion_5_definitions():
    algebras = corpus.all_algebras()
    with criterion(5, "definition equivalences over all subsets", 120) as st:
        bad = []
        for alg in algebras:
            report = run_suite("definitions", None, algebra=alg)
            if not report.ok:
                bad.append(alg.name)
        st["ok"] = not bad
        st["note"] = "; ".join(bad) or f"{len(algebras)} algebras"


def test_criterion_6_transport():
    suites = ["transport-tilting", "transport-stt", "silting-restriction", "quasi-tilting",
              "cosilting"]
    with criterion(6, "transport of certified objects", 120) as st:
        fails = _suites(suites, corpus.extensions())
        st["ok"] = not fails
        st["note"] = "; ".join(fails)


def test_criterion_7_triples():
    with criterion(7, "triple bijections and transport", 120) as st:
        fails = _suites(["triples"], corpus.extensions())
        st["ok"] = not fails
        st["note"] = "; ".join(fails)


def test_criterion_8_oracles():
    import test_oracles as oracle
    from opext.repcat import direct_sum_module, ext_dim
    from opext.tiltkit import in_pres

    with criterion(8, "Ext1 and Pres against brute force over F2", 120) as st:
        bad = 0
        pairs = 0
        for name in ("a2", "a3"):
            alg = corpus.load(name, F2)
            reps = {d: list(oracle._all_reps(alg, d)) for d in range(1, 4)}
            for dm in range(1, 4):
                for dn in range(1, 5 - dm):
                    for M in reps[dm]:
                        for N in reps[dn]:
                            pairs += 1
                            bad += ext_dim(1, M, N) != oracle.brute_ext1(M, N)[0]
            inds = list(enumerate_indecomposables(alg))
            for dt in range(1, 4):
                for Tparts in oracle._sums(inds, dt):
                    T = direct_sum_module(Tparts, alg)
                    for dx in range(1, 5 - dt):
                        for Xparts in oracle._sums(inds, dx):
                            X = direct_sum_module(Xparts, alg)
                            pairs += 1
                            bad += in_pres(Tparts, X) != oracle.brute_in_pres(T, X)
        st["ok"] = bad == 0
        st["note"] = f"{pairs} comparisons, {bad} disagreements"
