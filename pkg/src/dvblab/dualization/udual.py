"""
Duals of DVB* sequences with respect to one of the side bundles.

For ``0 -> U (x) V -i-> Pi -j-> K -> 0`` the ``U``-dual is the space of
pairs ``(v*, eps)`` with ``eps: Pi -> U`` and ``eps(i(theta)) = theta`` contracted
with ``v*`` on the second slot.  Unknowns are ordered ``v*`` first, then
``eps`` row-major (output index of ``U`` slowest), so a basis vector of the
solution space reads ``(v*, eps)`` directly.  The ``V``-dual is computed on
the swapped sequence and its kernel reordered to ``K* (x) V``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import exactla as la
from ..exactla import ONE, ZERO, LinMap, Space, contract_first, contract_second
from ..sampling import random_vector
from ..seq import DVBStarSeq
from .pairing import DegenerateSide, ValuedPairing

FIRST, SECOND = "First", "Second"


def _check_side(side: str) -> str:
    if side not in (FIRST, SECOND):
        raise ValueError("side must be %r or %r, got %r" % (FIRST, SECOND, side))
    return side


class UDual:
    """The dual sequence ``Delta``, its embedding into ``V* (+) Hom(Pi, U)``, and the pairing."""

    def __init__(self, source: DVBStarSeq, side: str, seq: DVBStarSeq, embedding: LinMap,
                 pairing: ValuedPairing, swap: LinMap | None = None):
        self.source, self.side, self.seq = source, side, seq
        self.embedding = embedding
        self.pairing = pairing
        self.swap = swap

    @property
    def value_space(self) -> Space:
        return self.pairing.value

    def eps(self, delta) -> list:
        """The map ``Pi -> value`` of a dual element, as rows."""
        z = self.embedding(delta)
        nv = self.seq.K.dim
        w, n = self.value_space.dim, self.source.Pi.dim
        flat = z[nv:]
        return [flat[r * n:(r + 1) * n] for r in range(w)]

    def conjugate_equalities(self, rng, trials: int = 5) -> tuple[bool, bool]:
        """The two compatibility equalities on random inputs.

        First side: ``<delta, i(theta)> = theta . p(delta)`` and ``<e(kappa), sigma> = kappa . j(sigma)``
        (second-slot contractions); Second side contracts the first slot instead.
        """
        s, t = self.source, self.seq
        contract = contract_second if self.side == FIRST else contract_first
        other = s.U.dim if self.side == FIRST else s.V.dim
        first_ok = second_ok = True
        for _ in range(trials):
            delta = random_vector(rng, t.Pi.dim)
            theta = random_vector(rng, s.U.dim * s.V.dim)
            first_ok &= self.pairing(delta, s.i(theta)) == contract(theta, t.j(delta), other)
            kappa = random_vector(rng, t.U.dim * t.V.dim)
            sigma = random_vector(rng, s.Pi.dim)
            kother = t.U.dim if self.side == FIRST else t.V.dim
            second_ok &= self.pairing(t.i(kappa), sigma) == contract(kappa, s.j(sigma), kother)
        return first_ok, second_ok


def _degenerate(dw: int, dv: int, dk: int) -> bool:
    return dw == 0 and (dv != 0 or dk != 0)


def u_dual(s: DVBStarSeq, side: str = FIRST) -> UDual:
    """Solve for the ``U``-dual (``First``) or ``V``-dual (``Second``) of ``s``."""
    _check_side(side)
    if side == SECOND:
        return _v_dual(s)
    U, V, K, Pi = s.U, s.V, s.K, s.Pi
    dU, dV, dK, n = U.dim, V.dim, K.dim, Pi.dim
    if _degenerate(dU, dV, dK):
        raise DegenerateSide("U = 0 with V, K not both zero: the covector v* is not determined")
    nunk = dV + dU * n
    rows = []
    imat = s.i.matrix
    for a in range(dU):
        for b in range(dV):
            col = a * dV + b
            for r in range(dU):
                row = [ZERO] * nunk
                for k in range(n):
                    if imat[k][col]:
                        row[dV + r * n + k] = imat[k][col]
                if r == a:
                    row[b] -= ONE
                rows.append(row)
    basis = la.nullspace(rows, nunk)
    Delta = Space(len(basis), "Π*_%s" % U.label)
    Vs, Ks = V.dual(), K.dual()
    ambient = Space(nunk, "%s⊕Hom(Π,%s)" % (Vs.label, U.label))
    embedding = LinMap.from_columns(Delta, ambient, basis)
    p = LinMap.from_columns(Delta, Vs, [z[:dV] for z in basis])
    # e(u_a (x) k*_c) = (0, u_a . (k*_c o j))
    jmat = s.j.matrix
    e_cols = []
    for a in range(dU):
        for c in range(dK):
            z = [ZERO] * nunk
            for k in range(n):
                z[dV + a * n + k] = jmat[c][k]
            coords = la.coordinates(basis, tuple(z))
            if coords is None:
                raise la.NotInjective("image of U (x) K* does not lie in the solved dual")
            e_cols.append(coords)
    e = LinMap.from_columns(U.tensor(Ks), Delta, e_cols)
    seq = DVBStarSeq(U, Ks, Vs, e, p)
    form = [[tuple(sum((z[dV + r * n + k] * sig[k] for k in range(n)), ZERO) for r in range(dU))
             for sig in Pi.basis()] for z in basis]
    pairing = ValuedPairing(Delta, Pi, U, form, left_seq=seq, right_seq=s)
    return UDual(s, FIRST, seq, embedding, pairing)


def _v_dual(s: DVBStarSeq) -> UDual:
    U, V, K = s.U, s.V, s.K
    if _degenerate(V.dim, U.dim, K.dim):
        raise DegenerateSide("V = 0 with U, K not both zero: the covector u* is not determined")
    sw = la.swap_map(V, U)
    swapped = DVBStarSeq(V, U, K, s.i @ sw, s.j)
    inner = u_dual(swapped, FIRST)
    Ks = K.dual()
    t = inner.seq
    # kernel printed as K* (x) V; the solver produced V (x) K*
    to_inner = la.swap_map(Ks, V)
    e = t.i @ to_inner
    seq = DVBStarSeq(Ks, V, t.K, e, t.j)
    pairing = ValuedPairing(t.Pi, s.Pi, V, inner.pairing.form, left_seq=seq, right_seq=s)
    return UDual(s, SECOND, seq, inner.embedding, pairing, swap=to_inner)


# --------------------------------------------------------------------------
# the description through sl(U) (+) line


def u_dual_abstract(s: DVBStarSeq) -> list[tuple]:
    """Basis of the ``U``-dual as a subspace of ``U (x) Pi* = Hom(Pi, U)`` (row-major ``eps``).

    It is the preimage under ``Id_U (x) i*`` of ``R Id_U (x) V*``, i.e. the kernel of
    the composite with the projection onto the trace-free part.
    """
    dU, dV, n = s.U.dim, s.V.dim, s.Pi.dim
    if dU == 0:
        raise DegenerateSide("the trace-free decomposition needs dim U >= 1")
    imat = s.i.matrix
    N = dU * n
    # y[a][a'][b] = sum_r eps[a][r] i[r][a' dV + b];  P(y) = y - delta_{aa'} tr(y)[b] / dU
    rows = []
    inv = ONE / dU
    for a in range(dU):
        for a2 in range(dU):
            for b in range(dV):
                row = [ZERO] * N
                col = a2 * dV + b
                for r in range(n):
                    if imat[r][col]:
                        row[a * n + r] += imat[r][col]
                if a == a2:
                    for t in range(dU):
                        tcol = t * dV + b
                        for r in range(n):
                            if imat[r][tcol]:
                                row[t * n + r] -= inv * imat[r][tcol]
                rows.append(row)
    return la.nullspace(rows, N)


def abstract_matches(s: DVBStarSeq) -> bool:
    """The solved ``U``-dual and the trace-free description give the same subspace of ``Hom(Pi, U)``."""
    ud = u_dual(s, FIRST)
    dV = s.V.dim
    solved = [z[dV:] for z in ud.embedding.columns()]
    abstract = u_dual_abstract(s)
    N = s.U.dim * s.Pi.dim
    return (len(abstract) == ud.seq.Pi.dim
            and la.same_span(solved, abstract, N))


def dimension_law(ud: UDual) -> bool:
    s = ud.source
    if ud.side == FIRST:
        return ud.seq.Pi.dim == s.U.dim * s.K.dim + s.V.dim
    return ud.seq.Pi.dim == s.V.dim * s.K.dim + s.U.dim


# --------------------------------------------------------------------------
# transposition and the line case


def transpose(s: DVBStarSeq) -> DVBStarSeq:
    """Exchange the side bundles and negate: ``v (x) u -> -i(u (x) v)``."""
    return DVBStarSeq(s.V, s.U, s.K, -(s.i @ la.swap_map(s.V, s.U)), s.j)


@dataclass
class LineDualReport:
    iso: LinMap = field(repr=False)
    invertible: bool
    pairing_transport: bool
    kernel_compatible: bool
    quotient_compatible: bool

    @property
    def passed(self) -> bool:
        return self.invertible and self.pairing_transport and self.kernel_compatible and self.quotient_compatible


def line_dual_compare(s: DVBStarSeq, rng=None, trials: int = 5) -> LineDualReport:
    """For ``dim U = 1`` identify the ``U``-dual with the ordinary dual ``Pi*``.

    The iso sends ``delta`` to its functional ``eps_delta``; it carries the
    ``U``-pairing to evaluation, ``e`` to ``j*`` and ``i*`` to ``p``.
    """
    if s.U.dim != 1:
        raise ValueError("line dual comparison needs dim U = 1, got %d" % s.U.dim)
    ud = u_dual(s, FIRST)
    Delta = ud.seq.Pi
    Pis = s.Pi.dual()
    iso = LinMap.from_columns(Delta, Pis, [tuple(ud.eps(d)[0]) for d in Delta.basis()])
    ok = True
    if rng is not None:
        for _ in range(trials):
            d = random_vector(rng, Delta.dim)
            sig = random_vector(rng, s.Pi.dim)
            ok &= ud.pairing(d, sig) == (la.dot(iso(d), sig),)
    jstar = la.dual_map(s.j)
    istar = la.dual_map(s.i)
    # U (x) K* = K* and V* = (U (x) V)* once U is the line
    kernel = iso @ ud.seq.i == jstar.with_spaces(domain=ud.seq.i.domain, codomain=Pis)
    quotient = ud.seq.j == (istar @ iso).with_spaces(domain=Delta, codomain=ud.seq.K)
    return LineDualReport(iso, la.is_invertible(iso), ok, kernel, quotient)
