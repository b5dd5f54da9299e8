"""
Duals of a slice over one of its side bundles.

Over ``A`` the dual is modelled as the slice ``(A, C*; B*)`` with elements
``(a, chi, psi)`` paired fibrewise against ``(a, b, c)`` by
``<psi, b> + <chi, c>``.  The mirror over ``B`` has elements
``(chi, b, phi)`` and pairing ``<phi, a> + <chi, c>``.

:func:`check_side_dual` recovers the projection, the addition over ``C*``,
the zero above ``chi`` and the core embedding from their pairing
characterisations by solving linear systems, and compares with the model.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import exactla as la
from ..dvb import DVBElement, FiberMismatch, TrivialDVB
from ..exactla import Space, dot, vadd, zeros
from ..sampling import random_scalar, random_vector
from .pairing import ValuedPairing


class SideDual:
    """A side dual: the model slice, the side it lives over, and the fibre pairing."""

    def __init__(self, source: TrivialDVB, side: str):
        if side not in ("A", "B"):
            raise ValueError("side must be 'A' or 'B', got %r" % (side,))
        self.source, self.side = source, side
        A, B, C = source.A, source.B, source.C
        if side == "A":
            self.model = TrivialDVB(A, C.dual(), B.dual())
        else:
            self.model = TrivialDVB(C.dual(), B, A.dual())

    def base_point(self, phi: DVBElement):
        return phi.a if self.side == "A" else phi.b

    def pair(self, phi: DVBElement, d: DVBElement):
        self.model.check(phi)
        self.source.check(d)
        if self.side == "A":
            if phi.a != d.a:
                raise FiberMismatch("dual element over %s paired with element over %s" % (phi.a, d.a))
            return dot(phi.c, d.b) + dot(phi.b, d.c)
        if phi.b != d.b:
            raise FiberMismatch("dual element over %s paired with element over %s" % (phi.b, d.b))
        return dot(phi.c, d.a) + dot(phi.a, d.c)

    def fiber_spaces(self) -> tuple[Space, Space]:
        """Coordinates of a single fibre: ``(chi, psi)`` against ``(b, c)`` over ``A``; mirror over ``B``."""
        A, B, C = self.source.A, self.source.B, self.source.C
        if self.side == "A":
            return Space(C.dim + B.dim, "C*⊕B*"), Space(B.dim + C.dim, "B⊕C")
        return Space(C.dim + A.dim, "C*⊕A*"), Space(A.dim + C.dim, "A⊕C")

    def fiber_pairing(self) -> ValuedPairing:
        """The pairing on the fibre over the zero base point (independent of the base point)."""
        left, right = self.fiber_spaces()
        return ValuedPairing.from_function(left, right, Space(1, "Q"),
                                           lambda x, y: (self.pair(self._dual_in_fiber(x), self._elt_in_fiber(y)),))

    def _split(self):
        A, B, C = self.source.dims
        return (B, C) if self.side == "A" else (A, C)

    def _dual_in_fiber(self, x, base=None) -> DVBElement:
        _, nc = self._split()
        chi, rest = tuple(x[:nc]), tuple(x[nc:])
        if self.side == "A":
            a = zeros(self.source.A.dim) if base is None else tuple(base)
            return DVBElement(a, chi, rest)
        b = zeros(self.source.B.dim) if base is None else tuple(base)
        return DVBElement(chi, b, rest)

    def _elt_in_fiber(self, y, base=None) -> DVBElement:
        ns, _ = self._split()
        side, c = tuple(y[:ns]), tuple(y[ns:])
        if self.side == "A":
            a = zeros(self.source.A.dim) if base is None else tuple(base)
            return DVBElement(a, side, c)
        b = zeros(self.source.B.dim) if base is None else tuple(base)
        return DVBElement(side, b, c)


def dual_over_A(D: TrivialDVB) -> SideDual:
    return SideDual(D, "A")


def dual_over_B(D: TrivialDVB) -> SideDual:
    return SideDual(D, "B")


def flipped_model(sd: SideDual) -> TrivialDVB:
    return sd.model.flip()


# --------------------------------------------------------------------------
# oracle for the defining identities (stated over A; B via flip)


def _solve_fiber_functional(sd: SideDual, base, constraints):
    """Unique ``(chi, psi)`` over ``base`` with ``<Phi, d> = value`` for all ``(d, value)`` given.

    Returns ``None`` when the constraints are inconsistent or do not pin the answer down.
    """
    left, _ = sd.fiber_spaces()
    rows, rhs = [], []
    for d, value in constraints:
        rows.append(tuple(sd.pair(sd._dual_in_fiber(u, base), d) for u in left.basis()))
        rhs.append(value)
    if la.rank_of_rows(rows, left.dim) != left.dim:
        return None
    x = la.solve(rows, tuple(rhs), left.dim)
    return None if x is None else sd._dual_in_fiber(x, base)


def _probes(rng, dB: int, dC: int) -> list:
    """Fibre points ``(b, c)``: the standard basis of ``B (+) C`` followed by one random point."""
    pts = [(tuple(u[:dB]), tuple(u[dB:])) for u in Space(dB + dC).basis()]
    pts.append((random_vector(rng, dB), random_vector(rng, dC)))
    return pts


@dataclass
class SideDualReport:
    projection: bool
    addition: bool
    zero: bool
    core: bool
    vertical_linear: bool
    nondegenerate: bool

    @property
    def passed(self) -> bool:
        return all(vars(self).values())


def check_side_dual(D: TrivialDVB, rng, trials: int = 3) -> SideDualReport:
    """Recover the four defining operations of the dual over ``A`` from pairings and compare with the model."""
    sd = dual_over_A(D)
    E = sd.model
    dA, dB, dC = D.dims
    ok = dict(projection=True, addition=True, zero=True, core=True, vertical_linear=True)
    for _ in range(trials):
        a, a2 = random_vector(rng, dA), random_vector(rng, dA)
        phi = E.random_over(rng, a=a)
        # projection onto C*: <q(Phi), c> = <Phi, 0_a +_B c>
        zero_plus_c = lambda c: D.combine_B(1, D.zero_A(a), D.core_embed(c))
        chi = tuple(sd.pair(phi, zero_plus_c(c)) for c in D.C.basis())
        ok["projection"] &= chi == E.proj_B(phi)
        # addition over C*: <Phi +_{C*} Phi', d +_B d'> = <Phi, d> + <Phi', d'>
        phi2 = DVBElement(a2, phi.b, random_vector(rng, dB))
        cons = []
        probes = _probes(rng, dB, dC)
        for n, (b, c) in enumerate(probes):
            # the basis probes keep d' on the zero core so the sums still span the fibre
            c2 = random_vector(rng, dC) if n == len(probes) - 1 else zeros(dC)
            d1 = DVBElement(a, b, c)
            d2 = DVBElement(a2, b, c2)
            cons.append((D.combine_B(1, d1, d2), sd.pair(phi, d1) + sd.pair(phi2, d2)))
        got = _solve_fiber_functional(sd, vadd(a, a2), cons)
        ok["addition"] &= got == E.combine_B(1, phi, phi2)
        # zero above chi: <0_chi, 0_b +_A c> = <chi, c>
        chi0 = random_vector(rng, dC)
        cons = [(D.combine_A(1, D.zero_B(b), D.core_embed(c)), dot(chi0, c)) for b, c in _probes(rng, dB, dC)]
        got = _solve_fiber_functional(sd, zeros(dA), cons)
        ok["zero"] &= got == E.zero_B(chi0)
        # core: <0_a +_{C*} psi_bar, d> = <psi, q_B(d)>
        psi = random_vector(rng, dB)
        cons = [(DVBElement(a, b, c), dot(psi, b)) for b, c in _probes(rng, dB, dC)]
        got = _solve_fiber_functional(sd, a, cons)
        ok["core"] &= got == E.combine_B(1, E.zero_A(a), E.core_embed(psi))
        # the vertical structure of the dual is the fibrewise dual vector space
        r = random_scalar(rng)
        phi3 = E.random_over(rng, a=a)
        d = D.random_over(rng, a=a)
        ok["vertical_linear"] &= sd.pair(E.combine_A(r, phi, phi3), d) == r * sd.pair(phi, d) + sd.pair(phi3, d)
    return SideDualReport(nondegenerate=sd.fiber_pairing().is_nondegenerate(), **ok)


def double_dual_matches(D: TrivialDVB) -> bool:
    """The dual over ``A`` of the dual over ``A`` has sides ``(A, B**)`` and core ``C**`` with nondegenerate pairing."""
    first = dual_over_A(D)
    second = dual_over_A(first.model)
    return (second.model.dims == D.dims and first.fiber_pairing().is_nondegenerate()
            and second.fiber_pairing().is_nondegenerate())


def mirror_matches(D: TrivialDVB, rng, trials: int = 5) -> bool:
    """``dual_over_B(D)`` agrees with the flip of ``dual_over_A(flip(D))``, pairings included."""
    over_b = dual_over_B(D)
    via_flip = dual_over_A(D.flip())
    if over_b.model.dims != via_flip.model.flip().dims:
        return False
    for _ in range(trials):
        b = random_vector(rng, D.B.dim)
        phi = over_b.model.random_over(rng, b=b)
        d = D.random_over(rng, b=b)
        lhs = over_b.pair(phi, d)
        rhs = via_flip.pair(TrivialDVB.flip_element(phi), TrivialDVB.flip_element(d))
        if lhs != rhs:
            return False
    return True
