"""
Three successive duals of a DVB* sequence.

``Delta`` is the ``U``-dual of ``s``; ``Xi`` is the ``K*``-dual of ``Delta``
(its second side), with kernel ``V (x) K*`` and quotient ``U*``.  The
``V``-valued pairing of ``Xi`` with ``Pi`` is

    <eta, sigma>_V . v* = <<eta, eps>_{K*}, j(sigma)> - <<eps, sigma>_U, q(eta)>

for any ``eps`` in ``Delta`` lifting ``v*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import exactla as la
from ..exactla import ZERO, LinMap, Space, contract_second, dot
from ..sampling import random_vector
from ..seq import DVBStarSeq
from .pairing import DegenerateSide, ValuedPairing
from .udual import FIRST, SECOND, UDual, transpose, u_dual


def _v_pairing(s: DVBStarSeq, delta: UDual, xi: UDual, lifts) -> ValuedPairing:
    """Build the ``V``-valued form from one lift ``eps_b`` of each basis covector of ``V*``."""
    dV = s.V.dim
    Xi, Pi = xi.seq.Pi, s.Pi
    q = xi.seq.j
    form = []
    for eta in Xi.basis():
        qe = q(eta)
        row = []
        for sigma in Pi.basis():
            js = s.j(sigma)
            cell = []
            for b in range(dV):
                eps = lifts[b]
                first = dot(xi.pairing(eta, eps), js)
                second = dot(delta.pairing(eps, sigma), qe)
                cell.append(first - second)
            row.append(tuple(cell))
        form.append(row)
    return ValuedPairing(Xi, Pi, s.V, form, left_seq=xi.seq, right_seq=transpose(s))


@dataclass
class TrialityReport:
    dims: tuple
    lift_independent: bool
    tp3: bool
    tp4: bool
    nondegenerate: bool
    double_transpose: bool
    degenerate: bool = False
    pairing: ValuedPairing | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return (self.lift_independent and self.tp3 and self.tp4
                and self.nondegenerate and self.double_transpose)


class Triality:
    def __init__(self, s: DVBStarSeq):
        dims = s.dims
        if any(d == 0 for d in dims) and any(dims):
            raise DegenerateSide("triality needs every side nonzero (or all zero), got %s" % (dims,))
        self.source = s
        self.delta = u_dual(s, FIRST)
        self.xi = u_dual(self.delta.seq, SECOND)
        # Xi's kernel comes out as (V*)* (x) K*; read it as V (x) K*
        t = self.xi.seq
        self.seq = DVBStarSeq(s.V, t.V, t.K, t.i, t.j)
        section = la.right_inverse(self.delta.seq.j)
        self.lifts = section.columns()
        self.pairing = _v_pairing(s, self.delta, self.xi, self.lifts)

    def pairing_with_lifts(self, lifts) -> ValuedPairing:
        return _v_pairing(self.source, self.delta, self.xi, lifts)

    def check(self, rng, trials: int = 5) -> TrialityReport:
        s = self.source
        dU, dV, dK = s.dims
        e = self.delta.seq.i
        shifted = [la.vadd(eps, e(random_vector(rng, dU * dK))) for eps in self.lifts]
        independent = self.pairing_with_lifts(shifted) == self.pairing
        st = transpose(s)
        r, q = self.seq.i, self.seq.j
        tp3 = tp4 = True
        for _ in range(trials):
            eta = random_vector(rng, self.seq.Pi.dim)
            theta = random_vector(rng, dV * dU)
            tp3 &= self.pairing(eta, st.i(theta)) == contract_second(theta, q(eta), dV)
            zeta = random_vector(rng, dV * dK)
            sigma = random_vector(rng, s.Pi.dim)
            tp4 &= self.pairing(r(zeta), sigma) == contract_second(zeta, s.j(sigma), dV)
        return TrialityReport(s.dims, independent, tp3, tp4, self.pairing.is_nondegenerate(),
                              transpose(st) == s, pairing=self.pairing)


def triality_pairing(s: DVBStarSeq) -> tuple[DVBStarSeq, ValuedPairing]:
    t = Triality(s)
    return t.seq, t.pairing


def check_triality(s: DVBStarSeq, rng, trials: int = 5) -> TrialityReport:
    """Run the triality checks; an all-zero sequence passes trivially."""
    if not any(s.dims):
        empty = Space(0, "0")
        return TrialityReport(s.dims, True, True, True, True, transpose(transpose(s)) == s, degenerate=True,
                              pairing=ValuedPairing(empty, empty, empty, []))
    return Triality(s).check(rng, trials)


def xi_to_v_dual(tri: Triality) -> LinMap:
    """``Xi -> Pi*_V``: ``eta`` goes to ``(u* = -q(eta), <eta, .>_V)``.

    The sign comes from ``i(u (x) v) = -i^t(v (x) u)`` in the tp3 equality.
    """
    s = tri.source
    vd = u_dual(s, SECOND)
    basis = vd.embedding.columns()
    dV, n = s.V.dim, s.Pi.dim
    cols = []
    for eta in tri.seq.Pi.basis():
        ustar = tuple(-x for x in tri.seq.j(eta))
        eps = [ZERO] * (dV * n)
        for k, sigma in enumerate(s.Pi.basis()):
            val = tri.pairing(eta, sigma)
            for b in range(dV):
                eps[b * n + k] = val[b]
        coords = la.coordinates(basis, ustar + tuple(eps))
        if coords is None:
            raise la.NotSurjective("V-pairing functional does not lie in the V-dual")
        cols.append(coords)
    return LinMap.from_columns(tri.seq.Pi, vd.seq.Pi, cols)
