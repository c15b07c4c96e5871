"""Quivers with relations, path bases of kQ/I, opposites and one-point extensions.

Path convention: ``a.b`` traverses ``a`` first, then ``b``.  Internally a path
is a pair ``(source_vertex_index, arrow_index_tuple)``; the trivial path at
``v`` is ``(v, ())``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InputError, NonConfluent, NotAdmissible, UnknownVertex
from .exactlin import FieldSpec

Path = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(
            a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate arrow identifiers")
        vs = set(self.vertices)
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in vs:
                    raise UnknownVertex(f"arrow {a.id} uses undeclared vertex {end}")

    @cached_property
    def vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> Dict[str, int]:
        return {a.id: i for i, a in enumerate(self.arrows)}

    @cached_property
    def src(self) -> Tuple[int, ...]:
        return tuple(self.vertex_index[a.source] for a in self.arrows)

    @cached_property
    def tgt(self) -> Tuple[int, ...]:
        return tuple(self.vertex_index[a.target] for a in self.arrows)

    def is_acyclic(self) -> bool:
        n = len(self.vertices)
        indeg = [0] * n
        for t in self.tgt:
            indeg[t] += 1
        stack = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for i, s in enumerate(self.src):
                if s == v:
                    indeg[self.tgt[i]] -= 1
                    if indeg[self.tgt[i]] == 0:
                        stack.append(self.tgt[i])
        return seen == n


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least 2."""

    terms: Tuple[Tuple[Fraction, Tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(
            (Fraction(c), tuple(p)) for c, p in self.terms))

    @classmethod
    def monomial(cls, *arrows: str) -> "Relation":
        return cls(((Fraction(1), tuple(arrows)),))

    def reversed(self) -> "Relation":
        return Relation(tuple((c, tuple(reversed(p))) for c, p in self.terms))


def _deglex(w):
    return (len(w), w)


class _Rewriter:
    """Rewriting system for a two-sided ideal of the path algebra."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.rules: Dict[tuple, Dict[tuple, object]] = {}
        self.lengths: List[int] = []

    def _add(self, poly, w, c):
        p = self.field.p
        v = poly.get(w, 0) + c
        if p:
            v %= p
        if v:
            poly[w] = v
        else:
            poly.pop(w, None)

    def find(self, w):
        for L in self.lengths:
            for i in range(len(w) - L + 1):
                if w[i:i + L] in self.rules:
                    return i, L
        return None

    def reducible(self, w) -> bool:
        return self.find(w) is not None

    def reduce(self, poly):
        work = dict(poly)
        out = {}
        p = self.field.p
        while work:
            w = max(work, key=_deglex)
            c = work.pop(w)
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            i, L = hit
            for r, rc in self.rules[w[i:i + L]].items():
                v = c * rc
                self._add(work, w[:i] + r + w[i + L:], v % p if p else v)
        return out

    def set_rule(self, lhs, rhs):
        self.rules[lhs] = rhs
        self.lengths = sorted({len(k) for k in self.rules})

    def drop_rule(self, lhs):
        del self.rules[lhs]
        self.lengths = sorted({len(k) for k in self.rules})


def _contains(word, sub) -> bool:
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))


def _overlaps(u, v):
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            yield len(u) - k, u + v[k:]


class AlgebraPresentation:
    """A bound quiver algebra kQ/I with a computed basis of irreducible paths."""

    def __init__(self, field: FieldSpec, quiver: Quiver, relations: Sequence[Relation] = (),
                 max_path_length: Optional[int] = None, name: str = ""):
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)
        self.name = name
        if max_path_length is None:
            max_path_length = max(4, 2 * len(quiver.vertices))
        if max_path_length < 1:
            raise InputError("max_path_length must be at least 1")
        self.max_path_length = max_path_length
        self._opposite: Optional[AlgebraPresentation] = None
        self._check_relations()
        self._rw = _Rewriter(field)
        self._complete()
        self._build_basis()

    # -- construction ---------------------------------------------------

    def _check_relations(self):
        q = self.quiver
        for rel in self.relations:
            ends = set()
            for _, path in rel.terms:
                if len(path) < 2:
                    raise InputError(f"relation path {'.'.join(path)} has length < 2")
                for a in path:
                    if a not in q.arrow_index:
                        raise InputError(f"relation uses unknown arrow {a}")
                idx = [q.arrow_index[a] for a in path]
                for x, y in zip(idx, idx[1:]):
                    if q.tgt[x] != q.src[y]:
                        raise InputError(f"relation path {'.'.join(path)} is not composable")
                ends.add((q.src[idx[0]], q.tgt[idx[-1]]))
            if len(ends) > 1:
                raise InputError("relation paths are not parallel")

    def _complete(self):
        f = self.field
        q = self.quiver
        rw = self._rw
        pending = []
        for rel in self.relations:
            poly = {}
            for c, path in rel.terms:
                rw._add(poly, tuple(q.arrow_index[a] for a in path), f(c))
            pending.append(poly)
        bound = self.max_path_length
        steps = 0
        limit = 10000
        while pending:
            steps += 1
            if steps > limit:
                raise NonConfluent("completion did not terminate within the step limit")
            poly = rw.reduce(pending.pop(0))
            if not poly:
                continue
            lt = max(poly, key=_deglex)
            inv = f.inv(poly[lt])
            rhs = {}
            for w, c in poly.items():
                if w != lt:
                    rw._add(rhs, w, -c * inv)
            for lhs in list(rw.rules):
                if lhs != lt and _contains(lhs, lt):
                    back = {lhs: f.one}
                    for w, c in rw.rules[lhs].items():
                        rw._add(back, w, -c)
                    rw.drop_rule(lhs)
                    pending.append(back)
            rw.set_rule(lt, rhs)
            for other in list(rw.rules):
                for first, second in ((lt, other), (other, lt)):
                    for cut, word in _overlaps(first, second):
                        if len(word) > bound:
                            continue
                        # (first - r1) * tail  versus  head * (second - r2)
                        tail = word[len(first):]
                        head = word[:cut]
                        spoly = {}
                        for w, c in rw.rules[first].items():
                            rw._add(spoly, w + tail, -c)
                        for w, c in rw.rules[second].items():
                            rw._add(spoly, head + w, c)
                        if spoly:
                            pending.append(spoly)
        for lhs in list(rw.rules):
            rw.rules[lhs] = rw.reduce(rw.rules[lhs])

    def _build_basis(self):
        q = self.quiver
        n = len(q.vertices)
        out_arrows = [[i for i, s in enumerate(q.src) if s == v] for v in range(n)]
        basis: List[Path] = []
        frontier: List[Path] = [(v, ()) for v in range(n)]
        basis.extend(frontier)
        table = {}
        while frontier:
            nxt = []
            for v, w in frontier:
                end = q.tgt[w[-1]] if w else v
                for a in out_arrows[end]:
                    nw = w + (a,)
                    if self._rw.reducible(nw):
                        table[(v, nw)] = self._normal_word(nw)
                        continue
                    if len(nw) >= self.max_path_length:
                        raise NotAdmissible(
                            f"irreducible path of length {len(nw)} reaches the nilpotency bound; "
                            "the algebra may be infinite-dimensional")
                    nxt.append((v, nw))
            basis.extend(nxt)
            frontier = nxt
        basis.sort(key=lambda pth: (pth[0], len(pth[1]), pth[1]))
        self.path_basis: Tuple[Path, ...] = tuple(basis)
        self._basis_index = {pth: i for i, pth in enumerate(self.path_basis)}
        self.reduction_table: Dict[Path, Dict[Path, object]] = table
        by_pair: Dict[Tuple[int, int], List[Path]] = {}
        for pth in self.path_basis:
            by_pair.setdefault((pth[0], self.path_target(pth)), []).append(pth)
        self._by_pair = by_pair

    def _normal_word(self, word) -> Dict[Path, object]:
        src = self.quiver.src[word[0]]
        return {(src, w): c for w, c in self._rw.reduce({word: self.field.one}).items()}

    # -- queries ----------------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    def vertex(self, v) -> int:
        """Index of a vertex given by identifier or index."""
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.n_vertices:
                return v
            raise UnknownVertex(f"vertex index {v} out of range")
        try:
            return self.quiver.vertex_index[str(v)]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def path_target(self, path: Path) -> int:
        v, w = path
        return self.quiver.tgt[w[-1]] if w else v

    def paths_between(self, i: int, j: int) -> List[Path]:
        return self._by_pair.get((i, j), [])

    def path_name(self, path: Path) -> str:
        v, w = path
        if not w:
            return f"e{self.vertices[v]}"
        return ".".join(self.arrows[a].id for a in w)

    def normal_form(self, path: Path) -> Dict[Path, object]:
        v, w = path
        if not w:
            return {path: self.field.one}
        return self._normal_word(w)

    def multiply(self, p: Path, q: Path) -> Dict[Path, object]:
        """Normal form of ``p`` followed by ``q``."""
        if self.path_target(p) != q[0]:
            return {}
        return self.normal_form((p[0], p[1] + q[1]))

    def is_reduced(self, path: Path) -> bool:
        return not path[1] or not self._rw.reducible(path[1])

    def projective_dims(self) -> Dict[str, Tuple[int, ...]]:
        n = self.n_vertices
        return {self.vertices[i]: tuple(len(self.paths_between(i, j)) for j in range(n))
                for i in range(n)}

    # -- identity ---------------------------------------------------------

    @cached_property
    def key(self):
        return (self.field, self.quiver, self.relations)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def canonical_text(self) -> str:
        lines = [f"field {'Q' if self.field.p == 0 else 'F ' + str(self.field.p)}"]
        lines += [f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {a.id} {a.source} {a.target}" for a in self.arrows]
        for rel in self.relations:
            parts = []
            for i, (c, path) in enumerate(rel.terms):
                sign = "-" if c < 0 else "+"
                body = f"{abs(c)}*{'.'.join(path)}"
                if i == 0:
                    parts.append(("-" if c < 0 else "") + body)
                else:
                    parts.append(f"{sign} {body}")
            lines.append("relation " + " ".join(parts))
        return "\n".join(lines) + "\n"

    @cached_property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<AlgebraPresentation{label} dim={self.dimension} vertices={list(self.vertices)}>"


def build_algebra(field: FieldSpec, quiver: Quiver, relations: Sequence[Relation] = (),
                  max_path_length: Optional[int] = None, name: str = "") -> AlgebraPresentation:
    return AlgebraPresentation(field, quiver, relations, max_path_length, name)


def opposite(alg: AlgebraPresentation) -> AlgebraPresentation:
    """Opposite algebra: arrows and relation paths reversed.  Cached both ways."""
    if alg._opposite is None:
        q = alg.quiver
        oq = Quiver(q.vertices, tuple(Arrow(a.id, a.target, a.source) for a in q.arrows))
        op = AlgebraPresentation(alg.field, oq, [r.reversed() for r in alg.relations],
                                 alg.max_path_length, name=(alg.name + "^op") if alg.name else "")
        op._opposite = alg
        alg._opposite = op
    return alg._opposite


def reverse_path(path: Path, alg: AlgebraPresentation) -> Path:
    """The path of ``opposite(alg)`` traversing ``path`` backwards."""
    v, w = path
    if not w:
        return path
    return (alg.path_target(path), tuple(reversed(w)))


@dataclass
class ExtensionContext:
    """The data (B, P_0, A = B[P_0]) with the vertex ``new_vertex`` appended last."""

    base: AlgebraPresentation
    p0_multiplicities: Dict[str, int]
    extended: AlgebraPresentation
    new_vertex: str
    new_arrows: List[Tuple[str, str, int]] = dc_field(default_factory=list)

    @property
    def omega(self) -> int:
        return self.extended.n_vertices - 1

    @property
    def p0_vertices(self) -> List[int]:
        """Base vertex index of each summand P_{i_j} of P_0, in arrow order."""
        return [self.base.vertex(t) for _, t, _ in self.new_arrows]

    @property
    def new_arrow_indices(self) -> List[int]:
        idx = self.extended.quiver.arrow_index
        return [idx[a] for a, _, _ in self.new_arrows]

    def p0_dimension(self) -> int:
        pd = self.base.projective_dims()
        return sum(m * sum(pd[v]) for v, m in self.p0_multiplicities.items())


def one_point_extension(base: AlgebraPresentation, p0_multiplicities: Mapping,
                        new_vertex: Optional[str] = None) -> ExtensionContext:
    """Build A = B[P_0] for P_0 = sum of P_i^{m_i}; no relations are added."""
    mult: Dict[str, int] = {}
    for v, m in p0_multiplicities.items():
        key = base.vertices[base.vertex(v)]
        if int(m) < 0:
            raise InputError(f"negative multiplicity for vertex {key}")
        mult[key] = mult.get(key, 0) + int(m)
    if new_vertex is None:
        new_vertex = "w"
        k = 0
        while new_vertex in base.vertices:
            new_vertex = f"w{k}"
            k += 1
    elif new_vertex in base.vertices:
        raise InputError(f"vertex {new_vertex} already exists")
    taken = {a.id for a in base.arrows}
    new_arrows = []
    arrows = list(base.arrows)
    for v in base.vertices:
        m = mult.get(v, 0)
        for j in range(1, m + 1):
            aid = f"{new_vertex}_{v}" if m == 1 else f"{new_vertex}_{v}_{j}"
            while aid in taken:
                aid += "'"
            taken.add(aid)
            arrows.append(Arrow(aid, new_vertex, v))
            new_arrows.append((aid, v, j))
    quiver = Quiver(base.vertices + (new_vertex,), tuple(arrows))
    name = f"{base.name}[P0]" if base.name else ""
    ext = AlgebraPresentation(base.field, quiver, base.relations,
                              base.max_path_length + 1, name=name)
    ctx = ExtensionContext(base, {v: m for v, m in mult.items() if m}, ext, new_vertex, new_arrows)
    if ext.dimension != base.dimension + ctx.p0_dimension() + 1:
        raise AssertionError("dim A != dim B + dim P0 + 1")
    return ctx


def linear_quiver(n: int, prefix: str = "a") -> Quiver:
    """1 -> 2 -> ... -> n with arrows a1, a2, ..."""
    vs = tuple(str(i) for i in range(1, n + 1))
    return Quiver(vs, tuple(Arrow(f"{prefix}{i}", str(i), str(i + 1)) for i in range(1, n)))


def recognize_extension(alg: AlgebraPresentation, omega: Optional[str] = None) -> ExtensionContext:
    """Read ``alg`` as B[P_0] with ``omega`` as the new vertex.

    ``omega`` defaults to the last vertex when it is a source, else to the unique
    source.  The returned context's extended algebra is ``alg`` reordered so that
    ``omega`` and its arrows come last; vertex names and arrow ids are kept.
    """
    q = alg.quiver
    if omega is None:
        sources = [v for v in alg.vertices if not any(a.target == v for a in q.arrows)]
        if alg.vertices[-1] in sources:
            omega = alg.vertices[-1]
        elif len(sources) == 1:
            omega = sources[0]
        else:
            raise InputError("cannot choose the new vertex; pass it explicitly")
    w = alg.vertices[alg.vertex(omega)]
    if any(a.target == w for a in q.arrows):
        raise NotAdmissible(f"vertex {w} has incoming arrows, so it is not a one-point extension vertex")
    base_arrows = tuple(a for a in q.arrows if a.source != w)
    new = tuple(a for a in q.arrows if a.source == w)
    new_ids = {a.id for a in new}
    base_rel = [r for r in alg.relations if not any(p[0] in new_ids for _, p in r.terms)]
    base = AlgebraPresentation(alg.field, Quiver(tuple(v for v in alg.vertices if v != w), base_arrows),
                               base_rel, alg.max_path_length, name=alg.name + "^B" if alg.name else "")
    counts: Dict[str, int] = {}
    new_arrows = []
    for a in new:
        counts[a.target] = counts.get(a.target, 0) + 1
        new_arrows.append((a.id, a.target, counts[a.target]))
    ext = AlgebraPresentation(alg.field, Quiver(base.vertices + (w,), base_arrows + new),
                              alg.relations, alg.max_path_length, name=alg.name)
    ctx = ExtensionContext(base, counts, ext, w, new_arrows)
    if ext.dimension != base.dimension + ctx.p0_dimension() + 1:
        raise NotAdmissible(f"the radical of the projective at {w} is not projective over the rest")
    return ctx
