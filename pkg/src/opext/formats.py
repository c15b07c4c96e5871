"""The ``.quiver`` and ``.rep`` text formats.

``.quiver``::

    field Q            # or: field F 2
    vertex 1
    vertex 2
    arrow a 1 2
    relation 1*a.b - 1*c.d

``.rep``::

    module over <algebra fingerprint>
    dim 1=1
    dim 2=1
    map a = [[1]]

Both writers are canonical: parsing and re-serialising is the identity on
their output.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path as FsPath
from typing import List, Optional, Tuple, Union

from .errors import AlgebraMismatch, ParseError
from .exactlin import GF, QQ, FieldSpec, Matrix
from .presentation import AlgebraPresentation, Arrow, Quiver, Relation, build_algebra
from .repcat import Representation

_TERM = re.compile(r"^(?:(?P<coeff>\d+(?:/\d+)?)\*)?(?P<path>[^\s*]+)$")
_SIGNED = re.compile(r"\s*([+-])\s*([^\s+-]+)\s*")
_ROW = re.compile(r"\[([^\[\]]*)\]")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _parse_relation(body: str, n: int) -> Relation:
    body = body.strip()
    if body[:1] not in "+-":
        body = "+" + body
    terms = []
    pos = 0
    for m in _SIGNED.finditer(body):
        if m.start() != pos:
            break
        pos = m.end()
        t = _TERM.match(m.group(2))
        path = tuple(t.group("path").split(".")) if t else ()
        if not t or any(not a for a in path):
            raise ParseError(f"bad relation term {m.group(2)!r}", n)
        coeff = Fraction(t.group("coeff")) if t.group("coeff") else Fraction(1)
        terms.append((-coeff if m.group(1) == "-" else coeff, path))
    if pos != len(body) or not terms:
        raise ParseError(f"malformed relation {body.lstrip('+')!r}", n)
    return Relation(tuple(terms))


def parse_quiver(text: str, name: str = "") -> AlgebraPresentation:
    field: Optional[FieldSpec] = None
    vertices: List[str] = []
    arrows: List[Arrow] = []
    relations: List[Relation] = []
    for n, line in _lines(text):
        word, _, rest = line.partition(" ")
        args = rest.split()
        if word == "field":
            if field is not None:
                raise ParseError("field declared twice", n)
            if args == ["Q"]:
                field = QQ
            elif len(args) == 2 and args[0] == "F" and args[1].isdigit():
                try:
                    field = GF(int(args[1]))
                except ValueError as exc:
                    raise ParseError(str(exc), n) from None
            else:
                raise ParseError(f"expected 'field Q' or 'field F <p>', got {line!r}", n)
        elif word == "vertex":
            if len(args) != 1:
                raise ParseError("expected 'vertex <id>'", n)
            vertices.append(args[0])
        elif word == "arrow":
            if len(args) != 3:
                raise ParseError("expected 'arrow <id> <src> <tgt>'", n)
            arrows.append(Arrow(*args))
        elif word == "relation":
            relations.append(_parse_relation(rest, n))
        else:
            raise ParseError(f"unknown directive {word!r}", n)
    if field is None:
        raise ParseError("missing field declaration")
    return build_algebra(field, Quiver(tuple(vertices), tuple(arrows)), relations, name=name)


def format_quiver(alg: AlgebraPresentation) -> str:
    return alg.canonical_text()


def load_quiver(path: Union[str, FsPath]) -> AlgebraPresentation:
    p = FsPath(path)
    return parse_quiver(p.read_text(encoding="utf-8"), name=p.stem)


# -- modules ---------------------------------------------------------------------

def _parse_matrix(text: str, field: FieldSpec, shape: Tuple[int, int], n: int) -> Matrix:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"matrix must be bracketed: {text!r}", n)
    inner = text[1:-1].strip()
    rows = []
    for body in _ROW.findall(inner):
        entries = [e for e in body.replace(",", " ").split() if e]
        try:
            rows.append([field.parse(e) for e in entries])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad matrix entry in {body!r}", n) from None
    nrows, ncols = shape
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ParseError(f"matrix shape does not match dimensions {nrows}x{ncols}", n)
    return Matrix(field, rows, ncols)


def _format_matrix(m: Matrix, field: FieldSpec) -> str:
    return "[" + ",".join("[" + ",".join(field.format(x) for x in row) + "]"
                          for row in m.rows) + "]"


def parse_rep(text: str, alg: AlgebraPresentation, strict_fingerprint: bool = True) -> Representation:
    dims = [0] * alg.n_vertices
    pending = []
    header = None
    for n, line in _lines(text):
        word, _, rest = line.partition(" ")
        if word == "module":
            parts = rest.split()
            if len(parts) != 2 or parts[0] != "over":
                raise ParseError("expected 'module over <fingerprint>'", n)
            header = parts[1]
            if strict_fingerprint and header != alg.fingerprint:
                raise AlgebraMismatch(f"module is over {header}, algebra is {alg.fingerprint}")
        elif word == "dim":
            v, eq, d = rest.partition("=")
            if not eq or not d.strip().isdigit():
                raise ParseError("expected 'dim <v>=<n>'", n)
            if v.strip() not in alg.quiver.vertex_index:
                raise ParseError(f"unknown vertex {v.strip()!r}", n)
            dims[alg.quiver.vertex_index[v.strip()]] = int(d)
        elif word == "map":
            a, eq, body = rest.partition("=")
            if not eq:
                raise ParseError("expected 'map <arrow> = [[...]]'", n)
            pending.append((a.strip(), body, n))
        else:
            raise ParseError(f"unknown directive {word!r}", n)
    if header is None:
        raise ParseError("missing 'module over' header")
    idx = alg.quiver.arrow_index
    src, tgt = alg.quiver.src, alg.quiver.tgt
    maps = {}
    for a, body, n in pending:
        if a not in idx:
            raise ParseError(f"unknown arrow {a!r}", n)
        i = idx[a]
        maps[a] = _parse_matrix(body, alg.field, (dims[tgt[i]], dims[src[i]]), n)
    return Representation(alg, dims, maps)


def format_rep(M: Representation) -> str:
    alg = M.algebra
    lines = [f"module over {alg.fingerprint}"]
    lines += [f"dim {v}={d}" for v, d in zip(alg.vertices, M.dims)]
    for a, m in zip(alg.arrows, M.maps):
        if m.nrows and m.ncols:
            lines.append(f"map {a.id} = {_format_matrix(m, alg.field)}")
    return "\n".join(lines) + "\n"


def load_rep(path: Union[str, FsPath], alg: AlgebraPresentation) -> Representation:
    return parse_rep(FsPath(path).read_text(encoding="utf-8"), alg)
