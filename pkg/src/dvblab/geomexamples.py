"""
Fibre models of the tangent and cotangent doubles of a vector bundle and
of its dual, the jet and Atiyah fibres, and the square of dualities
relating them.

Everything lives over a single point: ``T`` models the tangent space of
the base and ``E`` the fibre.  ``TE`` is the slice ``(T, E; E)`` with
elements ``(x, e, edot)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import exactla as la
from .dualization.adual import SideComparison, side_dual_compare
from .dualization.side_duals import SideDual, dual_over_A
from .dualization.udual import transpose
from .dualization.xspace import xspace
from .dvb import DVBElement, DVBMorphism, TrivialDVB, check_interchange, extract_canonical
from .equivalence import (
    NatT,
    Trivialization,
    combining,
    doubling_on_morphism,
)
from .exactla import ZERO, LinMap, Space, contract_first, contract_second, dot, zeros
from .sampling import make_rng, random_scalar, random_vector
from .seq import DVBStarSeq, SeqMorphism


@dataclass(frozen=True)
class GeomContext:
    T: Space
    E: Space

    @classmethod
    def of_dims(cls, dT: int, dE: int) -> "GeomContext":
        return cls(Space(dT, "T"), Space(dE, "E"))

    @property
    def dims(self) -> tuple[int, int]:
        return (self.T.dim, self.E.dim)


def _relabel(D: TrivialDVB, a: str, b: str, c: str) -> TrivialDVB:
    return TrivialDVB(D.A.relabel(a), D.B.relabel(b), D.C.relabel(c))


def _relabel_seq(s: DVBStarSeq, u: str, v: str, k: str) -> DVBStarSeq:
    U, V, K = s.U.relabel(u), s.V.relabel(v), s.K.relabel(k)
    return DVBStarSeq(U, V, K, s.i.with_spaces(domain=U.tensor(V)), s.j.with_spaces(codomain=K))


def tangent_double(ctx: GeomContext) -> TrivialDVB:
    return TrivialDVB(ctx.T, ctx.E, ctx.E)


def tangent_double_dual_side(ctx: GeomContext) -> TrivialDVB:
    Es = ctx.E.dual()
    return TrivialDVB(ctx.T, Es, Es)


def cotangent_pairing(ctx: GeomContext) -> SideDual:
    """Dual of ``TE`` over ``E``, paired with ``flip(TE)`` (elements ``(e, x, edot)``)."""
    return dual_over_A(tangent_double(ctx).flip())


def cotangent_double(ctx: GeomContext) -> TrivialDVB:
    """``(E, E*; T*)``."""
    return _relabel(cotangent_pairing(ctx).model, "E", "E*", "T*")


def cotangent_dual_pairing(ctx: GeomContext) -> SideDual:
    return dual_over_A(tangent_double_dual_side(ctx).flip())


def cotangent_double_of_dual(ctx: GeomContext) -> TrivialDVB:
    """``(E*, E; T*)`` with ``E**`` read as ``E``."""
    return _relabel(cotangent_dual_pairing(ctx).model, "E*", "E", "T*")


def r_map_identity(ctx: GeomContext, rng, trials: int = 5) -> bool:
    """``<r_E(xi), e'> = <xi, 0~_e +_T e'_bar>`` where ``r_E`` projects onto the ``E*`` side."""
    TE = tangent_double(ctx)
    sd = cotangent_pairing(ctx)
    for _ in range(trials):
        e, e2 = random_vector(rng, ctx.E.dim), random_vector(rng, ctx.E.dim)
        xi = sd.model.random_over(rng, a=e)
        d = TE.combine_A(1, TE.zero_B(e), TE.core_embed(e2))
        if dot(sd.model.proj_B(xi), e2) != sd.pair(xi, TrivialDVB.flip_element(d)):
            return False
    return True


# --------------------------------------------------------------------------
# jet and Atiyah fibres


@dataclass
class FiberReport:
    name: str
    dims: tuple
    seq: DVBStarSeq = field(repr=False)
    direct: DVBStarSeq = field(repr=False)
    iso: LinMap = field(repr=False)
    invertible: bool
    kernel_square: bool
    quotient_square: bool
    sections_consistent: bool
    swap: LinMap | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.seq.Pi.dim

    @property
    def passed(self) -> bool:
        return self.invertible and self.kernel_square and self.quotient_square and self.sections_consistent

    def shape(self) -> str:
        s = self.seq
        return "0 -> %s -> %s -> %s -> 0" % (s.i.domain.label, s.Pi.label, s.K.label)


def _direct_seq(U: Space, V: Space, K: Space, label: str) -> DVBStarSeq:
    UV = U.tensor(V)
    P = Space(UV.dim + K.dim, label)
    return DVBStarSeq(U, V, K, la.inclusion(UV, P, 0), la.projection(P, K, UV.dim))


def _sections_iso(D: TrivialDVB, side_dim: int, out_dim: int, label: Space, build) -> tuple:
    """Read each element of ``X(D)`` through its sections over the first side of ``D``.

    ``build(point_at_zero, points_at_basis)`` turns the solved sections into
    direct-model coordinates.  Also reports whether the base-point
    coordinate of the section is independent of where it is taken.
    """
    cmp = SideComparison(D, "A")
    X = cmp.X
    cols, consistent = [], True
    for sigma in X.Pi.basis():
        at_zero = cmp.sigma_section(sigma, zeros(side_dim))
        at_basis = [cmp.sigma_section(sigma, u) for u in Space(side_dim).basis()]
        consistent &= all(p.b == at_zero.b for p in at_basis)
        cols.append(build(at_zero, at_basis))
    return X, LinMap.from_columns(X.Pi, label, cols), consistent


def jet_fiber(ctx: GeomContext) -> FiberReport:
    """``J E = X(TE*)``: ``0 -> T* (x) E -> JE -> E -> 0``.

    The direct model stores a horizontal lift ``x -> (x, e, phi(x))`` as
    ``(phi, e)`` with ``phi`` flattened in ``T* (x) E`` order.
    """
    dT, dE = ctx.dims
    TEs = tangent_double_dual_side(ctx)
    Ts = ctx.T.dual()
    direct = _direct_seq(Ts, ctx.E, ctx.E, "JE")

    def build(at_zero, at_basis):
        phi = [ZERO] * (dT * dE)
        for i, p in enumerate(at_basis):
            for k in range(dE):
                phi[i * dE + k] = p.c[k]
        return tuple(phi) + tuple(at_zero.b)

    X, iso, consistent = _sections_iso(TEs, dT, direct.Pi.dim, direct.Pi, build)
    seq = _relabel_seq(X, "T*", "E", "E")
    return FiberReport("jet", ctx.dims, seq, direct, iso, la.is_invertible(iso),
                       iso @ seq.i == direct.i, direct.j @ iso == seq.j, consistent)


def jet_linear_structure(ctx: GeomContext, rng, trials: int = 5) -> bool:
    """``r (mu1, e1) + (mu2, e2) = (r mu1 + mu2, r e1 + e2)`` computed pointwise with the operations of ``TE``."""
    TE = tangent_double(ctx)
    dT, dE = ctx.dims

    def lift(phi, e, x):
        return DVBElement(tuple(x), tuple(e), la.LinMap(ctx.T, ctx.E, phi)(tuple(x)))

    def rand_phi():
        return [random_vector(rng, dT) for _ in range(dE)]

    for _ in range(trials):
        p1, p2 = rand_phi(), rand_phi()
        e1, e2 = random_vector(rng, dE), random_vector(rng, dE)
        r = random_scalar(rng)
        x, x2 = random_vector(rng, dT), random_vector(rng, dT)
        combo = [la.vcomb(r, a, b) for a, b in zip(p1, p2)]
        lhs = TE.combine_A(r, lift(p1, e1, x), lift(p2, e2, x))
        if lhs != lift(combo, la.vcomb(r, e1, e2), x):
            return False
        # a horizontal lift is a section of Tq, linear for the structure over E
        m = lift(p1, e1, x)
        if TE.proj_A(m) != tuple(x):
            return False
        if TE.combine_B(r, m, lift(p1, e1, x2)) != lift(p1, e1, la.vcomb(r, x, x2)):
            return False
    return True


def atiyah_fiber(ctx: GeomContext) -> FiberReport:
    """``D E = X(T*E*)`` printed as ``0 -> E* (x) E -> DE -> T -> 0``.

    ``X(T*E*)`` comes with kernel ``E (x) E*``; the printed order is reached
    by precomposing with the swap ``E* (x) E -> E (x) E*``.  The direct model
    stores ``(psi, x)`` with ``psi: E* -> E*`` flattened row-major
    (``psi[k][l]`` at ``k dE + l``), so ``beta (x) e`` goes to ``alpha -> alpha(e) beta``.
    """
    dT, dE = ctx.dims
    TsEs = cotangent_double_of_dual(ctx)
    Es = ctx.E.dual()
    direct = _direct_seq(Es, ctx.E, ctx.T, "DE")

    def build(at_zero, at_basis):
        psi = [ZERO] * (dE * dE)
        for l, p in enumerate(at_basis):
            for k in range(dE):
                psi[k * dE + l] = p.c[k]
        return tuple(psi) + tuple(at_zero.b)

    X, iso, consistent = _sections_iso(TsEs, dE, direct.Pi.dim, direct.Pi, build)
    raw = _relabel_seq(X, "E", "E*", "T")
    sw = la.swap_map(Es, ctx.E)
    seq = DVBStarSeq(Es, ctx.E, raw.K, raw.i @ sw, raw.j)
    return FiberReport("atiyah", ctx.dims, seq, direct, iso, la.is_invertible(iso),
                       iso @ seq.i == direct.i, direct.j @ iso == seq.j, consistent, swap=sw)


def atiyah_anchor_is_projection(rep: FiberReport) -> bool:
    dT = rep.seq.K.dim
    n = rep.direct.Pi.dim
    return rep.direct.j == la.projection(rep.direct.Pi, rep.seq.K, n - dT)


# --------------------------------------------------------------------------
# the square


def split_iso(source: DVBStarSeq, target: DVBStarSeq) -> LinMap:
    """Iso of sequences with identity on the kernel and the quotient, through the deterministic splittings."""
    rho = source.seq.retraction()
    s_t = target.seq.section()
    return (target.i @ rho + s_t @ source.j).with_spaces(domain=source.Pi, codomain=target.Pi)


def _is_sequence_iso(f: LinMap, source: DVBStarSeq, target: DVBStarSeq) -> bool:
    return la.is_invertible(f) and f @ source.i == target.i and target.j @ f == source.j


@dataclass
class Edge:
    name: str
    value: str
    passed: bool
    vacuous: bool = False
    pairing_rank: int | None = None


@dataclass
class SquareReport:
    dims: tuple
    edges: list
    consistency: dict
    cotangent_iso: bool
    signs: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.edges) and all(self.consistency.values()) and self.cotangent_iso


def _derive_sign(lhs, rhs):
    """``+1`` or ``-1`` if ``lhs = sign * rhs`` for every pair given, else ``None``."""
    for sign in (1, -1):
        if all(l == tuple(sign * x for x in r) for l, r in zip(lhs, rhs)):
            return sign
    return None


def _duality_signs(P, left: DVBStarSeq, right: DVBStarSeq, side: str, rng, trials: int = 4,
                   kernel_swap: LinMap | None = None):
    """Signs making ``P`` satisfy the two duality equalities of the given side, or ``None``."""
    w = right.U.dim if side == "First" else right.V.dim
    contract = contract_second if side == "First" else contract_first
    l1, r1, l2, r2 = [], [], [], []
    for _ in range(trials):
        theta = random_vector(rng, right.U.dim * right.V.dim)
        sigma = random_vector(rng, left.Pi.dim)
        l1.append(P(sigma, right.i(theta)))
        r1.append(contract(theta, left.j(sigma), w))
        kappa = random_vector(rng, left.U.dim * left.V.dim)
        tau = random_vector(rng, right.Pi.dim)
        l2.append(P(left.i(kappa), tau))
        k = kernel_swap(kappa) if kernel_swap is not None else kappa
        r2.append(contract(k, right.j(tau), w))
    return _derive_sign(l1, r1), _derive_sign(l2, r2)


def square_report(ctx: GeomContext, seed: int = 0) -> SquareReport:
    rng = make_rng(seed, "square", *ctx.dims)
    TE, TEs = tangent_double(ctx), tangent_double_dual_side(ctx)
    TsE, TsEs = cotangent_double(ctx), cotangent_double_of_dual(ctx)
    DE, DEs = xspace(TsEs), xspace(TsE)
    DEt = transpose(DE)
    edges = []
    # (1) DE* is the transposition of DE
    f = split_iso(DEs, DEt)
    edges.append(Edge("transposition DE* ~ DE^t", "-", _is_sequence_iso(f, DEs, DEt)))
    # (2)-(4) side dualities
    specs = [("JE* / JE", "T*", TE), ("JE / DE", "E", TEs.flip()), ("JE* / DE*", "E*", TE.flip())]
    reports = {}
    for name, value, D in specs:
        rep = side_dual_compare(D, "A", rng)
        reports[name] = rep
        rank = None
        if rep.pairing is not None:
            rank = rep.pairing.left.dim - rep.pairing.left_kernel_dim()
        edges.append(Edge(name, value, rep.passed, rep.vacuous, rank))
    consistency, signs = {}, {}
    # (4) carried along (1) is an E*-duality of JE* with DE^t
    P4 = reports["JE* / DE*"].pairing
    left4 = xspace(TE.flip())
    try:
        finv = la.inverse(f)
    except la.NotInjective:
        finv = None
    if finv is not None and P4 is not None and DEt.U.dim:
        P4t = P4.transported(right_map=finv)
        s1, s2 = _duality_signs(P4t, left4, DEt, "First", rng)
        consistency["edge4-along-transposition"] = s1 is not None and s2 is not None and P4t.is_nondegenerate()
        signs["edge4"] = (s1, s2)
    else:
        consistency["edge4-along-transposition"] = True
    # (3) read against DE^t is a duality over its second side E, with a derived sign
    P3 = reports["JE / DE"].pairing
    left3 = xspace(TEs.flip())
    if P3 is not None and DEt.V.dim and not reports["JE / DE"].vacuous:
        sw = la.swap_map(left3.U, left3.V)
        s1, s2 = _duality_signs(P3, left3, DEt, "Second", rng, kernel_swap=sw)
        consistency["edge3-against-transposition"] = s1 is not None and s2 is not None
        signs["edge3"] = (s1, s2)
    else:
        consistency["edge3-against-transposition"] = True
    return SquareReport(ctx.dims, edges, consistency, cotangent_iso(ctx).passed, signs)


# --------------------------------------------------------------------------
# T*E and T*E* are isomorphic


@dataclass
class CotangentIsoReport:
    dims: tuple
    sequence_iso: bool
    dvb_iso: bool
    morphism: DVBMorphism | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.sequence_iso and self.dvb_iso


def cotangent_iso(ctx: GeomContext) -> CotangentIsoReport:
    """``T*E ~ flip(T*E*)`` as DVBs, obtained from the transposition of the Atiyah sequences.

    ``h: X(flip T*E*) -> X(T*E)`` is the transposition iso composed with the
    split identification ``X(flip T*E*) ~ X(T*E*)^t``; its transpose is a
    morphism of combined sequences, and doubling it and conjugating with
    the natural isomorphisms gives the DVB isomorphism.
    """
    TsE, TsEs = cotangent_double(ctx), cotangent_double_of_dual(ctx)
    flipped = TsEs.flip()
    X_flip, X_TsE = xspace(flipped), xspace(TsE)
    DEt = transpose(xspace(TsEs))
    g = split_iso(X_flip, DEt)
    f = split_iso(X_TsE, DEt)
    seq_ok = _is_sequence_iso(g, X_flip, DEt) and _is_sequence_iso(f, X_TsE, DEt)
    if not seq_ok:
        return CotangentIsoReport(ctx.dims, False, False)
    h = la.inverse(f) @ g
    src, tgt = combining(TsE), combining(flipped)
    varpi = LinMap(src.seq.Omega, tgt.seq.Omega, la.dual_map(h).matrix)
    ident = lambda S: LinMap.identity(S)
    m = SeqMorphism(src.seq, tgt.seq, varpi, ident(TsE.A), ident(TsE.B), ident(TsE.C))
    if not m.check().passed:
        return CotangentIsoReport(ctx.dims, True, False)
    Dm = doubling_on_morphism(m)
    t_src, t_tgt = NatT(TsE), NatT(flipped)
    back = Trivialization(Dm.target)
    # t_tgt is an iso onto D(C(flipped)); undo it through its canonical form
    t_tgt_inv = t_tgt.canonical().inverse()

    def total(d):
        return t_tgt_inv.apply(back.forward(Dm.apply(t_src.apply(d))))

    phi = extract_canonical(total, TsE, flipped)
    ok = phi.is_iso() and all(total(d) == phi.apply(d)
                              for d in (TsE.random_element(make_rng(0, "cotangent", k)) for k in range(3)))
    return CotangentIsoReport(ctx.dims, True, ok, phi)


def interchange_ok(D: TrivialDVB, trials: int = 50, seed: int = 0) -> bool:
    return check_interchange(D, trials, seed).passed
