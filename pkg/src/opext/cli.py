"""Command-line front end: ``opext algebra|module|functor|enumerate|verify|corpus``.

Exit status: 0 on success, 1 when a verification suite reports a failure,
2 on bad input or when a computation cannot be carried out.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, Optional, Sequence

from . import corpus
from .errors import InputError, OpextError
from .exactlin import GF, QQ, FieldSpec
from .formats import format_quiver, format_rep, load_quiver, parse_rep
from .functors import view_of
from .presentation import AlgebraPresentation, ExtensionContext, one_point_extension, recognize_extension
from .repcat import (Representation, decompose, injective, is_isomorphic, pd, projective, simple,
                     socle, tau, top)
from .suites import SUITES, run_suite


# -- argument helpers ------------------------------------------------------------

def parse_field(text: str) -> FieldSpec:
    t = text.strip().upper()
    if t == "Q":
        return QQ
    if t.startswith("F") and t[1:].isdigit():
        try:
            return GF(int(t[1:]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"unknown field {text!r}; use Q or F<p>")


def parse_p0(text: str) -> Dict[str, int]:
    out: Dict[str, int] = {}
    for part in text.split(","):
        v, sep, m = part.strip().partition(":")
        if not v:
            continue
        if sep and not m.strip().isdigit():
            raise InputError(f"bad multiplicity in {part!r}; use vertex:count")
        out[v] = out.get(v, 0) + (int(m) if sep else 1)
    if not out:
        raise InputError("--p0 needs at least one vertex:count")
    return out


def load_algebra(spec: str, field: Optional[FieldSpec] = None) -> AlgebraPresentation:
    """A ``.quiver`` path, or the name of a shipped algebra."""
    if os.path.exists(spec):
        alg = load_quiver(spec)
        return alg if field is None else corpus.with_field(alg, field)
    if spec in corpus.NAMES:
        return corpus.load(spec, field)
    raise InputError(f"no such file or corpus algebra: {spec}")


def _context(args, field: Optional[FieldSpec] = None) -> ExtensionContext:
    alg = load_algebra(args.algebra, field)
    if args.p0:
        return one_point_extension(alg, parse_p0(args.p0), args.omega)
    return recognize_extension(alg, args.omega)


def relabel(M: Representation, alg: AlgebraPresentation) -> Representation:
    """The same module over a presentation listing the same vertices and arrows in another order."""
    src = M.algebra
    return Representation(alg, dict(zip(src.vertices, M.dims)),
                          {a.id: m for a, m in zip(src.arrows, M.maps)}, check=False)


def _read_rep(path: str, *algebras: AlgebraPresentation) -> Representation:
    """Parse a module over whichever of ``algebras`` its header names."""
    text = open(path, encoding="utf-8").read()
    for alg in algebras:
        header = f"module over {alg.fingerprint}"
        if header in text:
            return parse_rep(text, alg)
    known = ", ".join(a.fingerprint for a in algebras)
    raise InputError(f"{path}: module is over none of the algebras {known}")


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dims(alg: AlgebraPresentation, dims) -> str:
    return " ".join(f"{v}={d}" for v, d in zip(alg.vertices, dims))


def describe(M: Representation) -> str:
    """A short name (0, S_v, P_v, I_v) when M is one, else its dimension vector."""
    alg = M.algebra
    if M.dim == 0:
        return "0"
    names = []
    for i, v in enumerate(alg.vertices):
        for tag, maker in (("S", simple), ("P", projective), ("I", injective)):
            X = maker(alg, i)
            if X.dims == M.dims and is_isomorphic(X, M):
                names.append(f"{tag}_{v}")
    label = "[" + _dims(alg, M.dims) + "]"
    return (" = ".join(dict.fromkeys(names)) + " " + label) if names else label


# -- commands --------------------------------------------------------------------

def cmd_algebra(args) -> int:
    alg = load_algebra(args.algebra)
    if args.action == "extend":
        if not args.p0:
            raise InputError("algebra extend needs --p0")
        alg = one_point_extension(alg, parse_p0(args.p0), args.omega).extended
    n_arrows = len(alg.arrows)
    head = (f"# {len(alg.vertices)} vertices, {n_arrows} arrows, dim {alg.dimension}, "
            f"fingerprint {alg.fingerprint}\n")
    _emit(head + format_quiver(alg), args.out)
    return 0


def cmd_module(args) -> int:
    alg = load_algebra(args.algebra)
    M = _read_rep(args.rep, alg)
    t, _ = top(M)
    s, _ = socle(M)
    lines = [f"dims: {_dims(alg, M.dims)}",
             f"top: {_dims(alg, t.dims)}",
             f"socle: {_dims(alg, s.dims)}",
             f"pd: {pd(M)}",
             f"tau: {describe(tau(M))}",
             "decomposition:"]
    for X, mult in decompose(M):
        lines.append(f"  {mult} x {describe(X)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_functor(args) -> int:
    ctx = _context(args)
    view = view_of(ctx)
    # modules over A are read and written in the file's own vertex/arrow order
    user_A = view.A if args.p0 else load_algebra(args.algebra)
    name = args.functor
    if name in ("extend", "L"):
        M = _read_rep(args.rep, view.B)
        out = view.extend(M) if name == "extend" else view.embed(M)
        _emit(format_rep(relabel(out, user_A)), args.out)
        return 0
    X = relabel(_read_rep(args.rep, user_A), view.A)
    if name == "restrict":
        _emit(format_rep(view.restrict(X)), args.out)
    elif name == "u":
        _emit(f"u: {view.top_fiber(X)}\n", args.out)
    elif name == "v":
        _emit(f"v: {view.s_socle(X)}\n", args.out)
    elif name == "delta":
        k, c = view.delta_multiplicities(X)
        text = (f"# kernel S-multiplicity {k}\n# cokernel S-multiplicity {c}\n"
                + format_rep(relabel(view.unit_delta(X).target, user_A)))
        _emit(text, args.out)
    return 0


def cmd_enumerate(args) -> int:
    from .repcat import enumerate_indecomposables
    from .tiltkit import (enumerate_cosilting, enumerate_silting,
                          enumerate_support_tau_tilting, enumerate_tilting)

    field = parse_field(args.field) if args.field else None
    alg = load_algebra(args.algebra, field)
    if args.kind == "ind":
        objs = [[X] for X in enumerate_indecomposables(alg, args.dim_bound)]
    else:
        fn = {"tilting": enumerate_tilting, "stt": enumerate_support_tau_tilting,
              "silting": enumerate_silting, "cosilting": enumerate_cosilting}[args.kind]
        objs = [list(T) for T in fn(alg)]
    lines = [str(len(objs))]
    if args.list:
        for obj in objs:
            lines.append(" + ".join(describe(X) for X in obj) if obj else "0")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    if args.algebra is None:
        raise InputError("verify needs --algebra or --base")
    if args.suite == "definitions" and not args.p0:
        report = run_suite("definitions", None, args.seed, args.count,
                           algebra=load_algebra(args.algebra))
    else:
        report = run_suite(args.suite, _context(args), args.seed, args.count)
    if args.out:
        _emit(report.to_json(), args.out)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        print(report.human())
    return report.exit_code


def cmd_corpus(args) -> int:
    if args.name is None:
        for n in corpus.NAMES:
            alg = corpus.load(n)
            print(f"{n:12s} dim {alg.dimension:2d}  {alg.fingerprint}")
        return 0
    _emit(format_quiver(corpus.load(args.name)), args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def ext_args(sp, algebra_flag: bool = False):
        if algebra_flag:
            sp.add_argument("--algebra", "--base", dest="algebra", metavar="QUIVER",
                            help=".quiver file or corpus name")
        sp.add_argument("--p0", help="P0 as vertex:multiplicity[,...]; the algebra is then the base")
        sp.add_argument("--omega", help="name of the new vertex")

    a = sub.add_parser("algebra", help="check or extend a .quiver presentation")
    a.add_argument("action", choices=["check", "extend"])
    a.add_argument("algebra", metavar="QUIVER")
    ext_args(a)
    a.add_argument("-o", "--out")
    a.set_defaults(func=cmd_algebra)

    m = sub.add_parser("module", help="analyse a module")
    m.add_argument("action", choices=["analyze"])
    m.add_argument("algebra", metavar="QUIVER")
    m.add_argument("rep", metavar="REP")
    m.add_argument("-o", "--out")
    m.set_defaults(func=cmd_module)

    f = sub.add_parser("functor", help="apply restrict/extend/L/u/v/delta to a module")
    f.add_argument("functor", choices=["restrict", "extend", "L", "u", "v", "delta"])
    f.add_argument("algebra", metavar="QUIVER",
                   help="the extended algebra, or the base when --p0 is given")
    f.add_argument("rep", metavar="REP")
    ext_args(f)
    f.add_argument("-o", "--out")
    f.set_defaults(func=cmd_functor)

    e = sub.add_parser("enumerate", help="count indecomposables or tilting-type modules")
    e.add_argument("kind", choices=["ind", "tilting", "stt", "silting", "cosilting"])
    e.add_argument("algebra", metavar="QUIVER")
    e.add_argument("--field", help="override the field: Q or F<p>")
    e.add_argument("--dim-bound", type=int, default=None)
    e.add_argument("--list", action="store_true", help="print each object")
    e.add_argument("-o", "--out")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=list(SUITES))
    ext_args(v, algebra_flag=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("corpus", help="list the shipped algebras or print one")
    c.add_argument("name", nargs="?", choices=list(corpus.NAMES))
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OpextError, OSError) as exc:
        print(f"opext: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
