"""The recollement around a one-point extension A = B[P0].

A-modules are representations of the extended quiver; the new vertex w is a
source whose arrows w -> i_j carry the maps alpha_j.  With that encoding:

* R forgets the w-component, L adds a zero one;
* E(M) puts sum_j M_{i_j} = Hom_B(P0, M) at w, the j-th new arrow being the
  projection onto the j-th block;
* u(X) = X_w, v(X) = common kernel of the alpha_j, i_*(n) = S^n;
* the unit delta_X: X -> E R X is the identity away from w and the stacked
  alpha_j at w, so Hom(S, X) = ker and Ext^1(S, X) = coker of that stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Union

from .errors import AlgebraMismatch, NotCertified
from .exactlin import Matrix, block_diag, kernel_basis, rank, vstack
from .presentation import ExtensionContext
from .repcat import (ModuleMap, Representation, ext_dim, hom_basis, hom_dim, injective,
                     is_isomorphic, pd, resolution_maps, simple)


@dataclass
class CanonicalSequence:
    """0 -> terms[0] -> terms[1] -> terms[2] -> 0 with terms[2] = S^s_multiplicity."""

    kind: str
    terms: List[Representation]
    maps: List[ModuleMap]
    s_multiplicity: int

    def is_exact(self) -> bool:
        f, g = self.maps
        if not f.is_injective() or not g.is_surjective():
            return False
        if not (g @ f).is_zero():
            return False
        return all(a + b == d for a, b, d in zip(f.ranks(), g.ranks(), self.terms[1].dims))


class RecollementView:
    """The six functors attached to an :class:`ExtensionContext`."""

    def __init__(self, ctx: ExtensionContext, check: bool = True):
        self.ctx = ctx
        self.A = ctx.extended
        self.B = ctx.base
        self.omega = ctx.omega
        self.nB = self.B.n_vertices
        self.mB = len(self.B.arrows)
        self.new_arrows = ctx.new_arrow_indices
        self.targets = ctx.p0_vertices
        self.S = simple(self.A, self.omega)
        if check:
            if not is_isomorphic(self.S, injective(self.A, self.omega)):
                raise NotCertified("the simple at the new vertex is not injective")
            if pd(self.S) > 1:
                raise NotCertified("the simple at the new vertex has projective dimension > 1")

    # -- type guards -----------------------------------------------------

    def _over_A(self, X):
        if X.algebra != self.A:
            raise AlgebraMismatch("expected a module over the extended algebra")

    def _over_B(self, M):
        if M.algebra != self.B:
            raise AlgebraMismatch("expected a module over the base algebra")

    # -- R, E, L -----------------------------------------------------------

    def restrict(self, X: Union[Representation, ModuleMap]):
        if isinstance(X, ModuleMap):
            return ModuleMap(self.restrict(X.source), self.restrict(X.target),
                             X.mats[:self.nB], check=False)
        self._over_A(X)
        return Representation(self.B, X.dims[:self.nB], X.maps[:self.mB], check=False)

    def _omega_blocks(self, M: Representation) -> List[int]:
        return [M.dims[i] for i in self.targets]

    def extend(self, M: Union[Representation, ModuleMap]):
        if isinstance(M, ModuleMap):
            mats = list(M.mats) + [block_diag(M.source.field, [M.mats[i] for i in self.targets])]
            return ModuleMap(self.extend(M.source), self.extend(M.target), mats, check=False)
        self._over_B(M)
        f = M.field
        blocks = self._omega_blocks(M)
        total = sum(blocks)
        maps = list(M.maps)
        off = 0
        for b in blocks:
            rows = [[f.one if c == off + r else f.zero for c in range(total)] for r in range(b)]
            maps.append(Matrix._raw(f, rows, total))
            off += b
        return Representation(self.A, M.dims + (total,), maps, check=False)

    def embed(self, M: Union[Representation, ModuleMap]):
        """L(M): M with a zero component at the new vertex."""
        if isinstance(M, ModuleMap):
            mats = list(M.mats) + [Matrix.zeros(M.source.field, 0, 0)]
            return ModuleMap(self.embed(M.source), self.embed(M.target), mats, check=False)
        self._over_B(M)
        maps = list(M.maps) + [None] * len(self.new_arrows)
        return Representation(self.A, M.dims + (0,), maps, check=False)

    # -- u, v, i_* -----------------------------------------------------------

    def alpha_stack(self, X: Representation) -> Matrix:
        """The new-arrow maps of X stacked into X_w -> sum_j X_{i_j}."""
        self._over_A(X)
        f = X.field
        d = X.dims[self.omega]
        return vstack(f, [X.maps[a] for a in self.new_arrows], d)

    def top_fiber(self, X: Representation) -> int:
        """u(X) = X_w, returned as its dimension."""
        self._over_A(X)
        return X.dims[self.omega]

    def s_socle(self, X: Representation) -> int:
        """v(X) = Hom_A(S, X): the common kernel of the new-arrow maps."""
        st = self.alpha_stack(X)
        return st.ncols - rank(st)

    def s_socle_basis(self, X: Representation) -> Matrix:
        return kernel_basis(self.alpha_stack(X))

    def inflate(self, n: int) -> Representation:
        """i_*(k^n) = S^n."""
        dims = [0] * self.A.n_vertices
        dims[self.omega] = int(n)
        return Representation(self.A, dims, check=False)

    # -- canonical sequences and the unit ---------------------------------

    def restriction_sequence(self, X: Representation) -> CanonicalSequence:
        self._over_A(X)
        f = X.field
        LR = self.embed(self.restrict(X))
        n = X.dims[self.omega]
        Sn = self.inflate(n)
        inc = [Matrix.identity(f, d) for d in X.dims[:self.nB]] + [Matrix.zeros(f, n, 0)]
        proj = [Matrix.zeros(f, 0, d) for d in X.dims[:self.nB]] + [Matrix.identity(f, n)]
        return CanonicalSequence("RestrictionSeq", [LR, X, Sn],
                                 [ModuleMap(LR, X, inc), ModuleMap(X, Sn, proj)], n)

    def extension_sequence(self, M: Representation) -> CanonicalSequence:
        self._over_B(M)
        f = M.field
        L = self.embed(M)
        E = self.extend(M)
        n = E.dims[self.omega]
        Sn = self.inflate(n)
        inc = [Matrix.identity(f, d) for d in M.dims] + [Matrix.zeros(f, n, 0)]
        proj = [Matrix.zeros(f, 0, d) for d in M.dims] + [Matrix.identity(f, n)]
        return CanonicalSequence("ExtensionSeq", [L, E, Sn],
                                 [ModuleMap(L, E, inc), ModuleMap(E, Sn, proj)], n)

    def unit_delta(self, X: Representation) -> ModuleMap:
        """delta_X: X -> E R X."""
        self._over_A(X)
        f = X.field
        ERX = self.extend(self.restrict(X))
        mats = [Matrix.identity(f, d) for d in X.dims[:self.nB]] + [self.alpha_stack(X)]
        return ModuleMap(X, ERX, mats, check=False)

    def delta_multiplicities(self, X: Representation):
        """(dim Hom(S, X), dim Ext^1(S, X)) read off the kernel and cokernel of delta_X."""
        st = self.alpha_stack(X)
        r = rank(st)
        return st.ncols - r, st.nrows - r

    def in_s_perp(self, X: Representation, cross_check: bool = False) -> bool:
        """Hom(S, X) = 0 and Ext^1(S, X) = 0, via bijectivity of the stacked alpha_j."""
        st = self.alpha_stack(X)
        verdict = st.nrows == st.ncols and rank(st) == st.ncols
        if cross_check:
            direct = hom_dim(self.S, X) == 0 and ext_dim(1, self.S, X) == 0
            if direct != verdict:
                raise NotCertified("S-perp criteria disagree")
        return verdict

    # -- Ext transport -------------------------------------------------------

    def ext1_transport_rank(self, X: Representation, Y: Representation) -> Dict[str, int]:
        """Image of Ext^1_A(X, Y) -> Ext^1_B(RX, RY) induced by R.

        R is exact and keeps projectives projective, so R of the minimal
        A-resolution of X is a projective resolution of RX; the induced map is
        read on cocycles: surjective iff R(Z^1_A) + B^1_B = Z^1_B.
        """
        self._over_A(X)
        self._over_A(Y)
        d1, d2 = resolution_maps(X, 2)
        P1 = d1.source
        f = X.field
        RY = self.restrict(Y)
        # cocycles over A
        hA = hom_basis(P1, Y)
        zA = _cocycles(hA, d2, f)
        # cochains over B
        Rd1, Rd2 = self.restrict(d1), self.restrict(d2)
        RP1, RP0 = Rd1.source, Rd1.target
        hB = hom_basis(RP1, RY)
        zB = _cocycles(hB, Rd2, f)
        bB = [(chi @ Rd1).flatten() for chi in hom_basis(RP0, RY)]
        image = [phi.mats[:self.nB] for phi in zA]
        image = [[x for m in mats for x in m.flatten()] for mats in image]
        ncoords = sum(a * b for a, b in zip(RP1.dims, RY.dims))
        dim_z = len(zB)
        dim_b = _span_dim(bB, ncoords, f)
        dim_img = _span_dim(image + bB, ncoords, f)
        return {"ext_B": dim_z - dim_b, "image": dim_img - dim_b,
                "ext_A": len(zA) - _span_dim([(c @ d1).flatten() for c in hom_basis(d1.target, Y)],
                                             sum(a * b for a, b in zip(P1.dims, Y.dims)), f)}


def _span_dim(vectors, ncoords, f) -> int:
    if not vectors or ncoords == 0:
        return 0
    return rank(Matrix(f, vectors, ncoords))


def _cocycles(basis, d, f):
    """Elements phi of span(basis) with phi o d = 0."""
    if not basis:
        return []
    comps = [(phi @ d).flatten() for phi in basis]
    n = len(comps[0])
    if n == 0:
        return list(basis)
    mat = Matrix.from_columns(f, comps, n)
    ker = kernel_basis(mat)
    out = []
    for col in ker.columns():
        acc = None
        for c, phi in zip(col, basis):
            if c:
                t = phi.scale(c)
                acc = t if acc is None else acc + t
        out.append(acc)
    return out


_VIEWS: Dict[int, RecollementView] = {}


def view_of(ctx: Union[ExtensionContext, RecollementView]) -> RecollementView:
    if isinstance(ctx, RecollementView):
        return ctx
    v = _VIEWS.get(id(ctx))
    if v is None or v.ctx is not ctx:
        v = RecollementView(ctx)
        _VIEWS[id(ctx)] = v
    return v


def restrict(ctx, X):
    return view_of(ctx).restrict(X)


def extend(ctx, M):
    return view_of(ctx).extend(M)


def embed(ctx, M):
    return view_of(ctx).embed(M)


def top_fiber(ctx, X) -> int:
    return view_of(ctx).top_fiber(X)


def s_socle(ctx, X) -> int:
    return view_of(ctx).s_socle(X)


def inflate(ctx, n: int) -> Representation:
    return view_of(ctx).inflate(n)


def restriction_sequence(ctx, X) -> CanonicalSequence:
    return view_of(ctx).restriction_sequence(X)


def extension_sequence(ctx, M) -> CanonicalSequence:
    return view_of(ctx).extension_sequence(M)


def unit_delta(ctx, X) -> ModuleMap:
    return view_of(ctx).unit_delta(X)


def in_s_perp(ctx, X, cross_check: bool = False) -> bool:
    return view_of(ctx).in_s_perp(X, cross_check)


@dataclass
class TransportRecord:
    item: int
    degree: int
    lhs: int
    rhs: int
    ok: bool
    note: str = ""


@dataclass
class ExtTransportReport:
    records: List[TransportRecord] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def violations(self) -> List[TransportRecord]:
        return [r for r in self.records if not r.ok]


def ext_transport_report(ctx, X: Representation, Y: Representation, M: Representation,
                         j_max: int = 3) -> ExtTransportReport:
    """Check the four Ext comparisons between A and B on one (X, Y, M)."""
    view = view_of(ctx)
    RX, RY, EM = view.restrict(X), view.restrict(Y), view.extend(M)
    rep = ExtTransportReport()
    perp = view.in_s_perp(X)
    for j in range(j_max + 1):
        if perp:
            a, b = ext_dim(j, EM, X), ext_dim(j, M, RX)
            rep.records.append(TransportRecord(1, j, a, b, a == b))
        a, b = ext_dim(j, X, EM), ext_dim(j, RX, M)
        rep.records.append(TransportRecord(2, j, a, b, a == b))
        if j >= 2:
            a, b = ext_dim(j, X, Y), ext_dim(j, RX, RY)
            rep.records.append(TransportRecord(4, j, a, b, a == b))
    t = view.ext1_transport_rank(X, Y)
    consistent = t["ext_B"] == ext_dim(1, RX, RY) and t["ext_A"] == ext_dim(1, X, Y)
    rep.records.append(TransportRecord(3, 1, t["image"], t["ext_B"],
                                       consistent and t["image"] == t["ext_B"],
                                       "" if consistent else "cocycle count disagrees with ext_dim"))
    return rep
