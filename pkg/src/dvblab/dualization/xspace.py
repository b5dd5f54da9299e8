"""Double-linear functions on a trivial slice and their pairing with the combined space."""

from __future__ import annotations

from dataclasses import dataclass

from .. import exactla as la
from ..dvb import ShapeMismatch, TrivialDVB
from ..exactla import Space, dot, tensor_vec
from ..seq import DVBStarSeq
from .pairing import ValuedPairing


@dataclass(frozen=True)
class DoubleLinearFunctional:
    """``sigma(a, b, c) = <theta, a (x) b> + <chi, c>``."""

    theta: tuple
    chi: tuple

    def __call__(self, d) -> object:
        return dot(self.theta, tensor_vec(d.a, d.b)) + dot(self.chi, d.c)

    @property
    def coords(self) -> tuple:
        return tuple(self.theta) + tuple(self.chi)


def functional(D: TrivialDVB, sigma) -> DoubleLinearFunctional:
    """Split a coordinate vector of X(D) into ``(theta, chi)``."""
    n = D.A.dim * D.B.dim
    if len(sigma) != n + D.C.dim:
        raise ShapeMismatch("vector of length %d is not in X(D) of dim %d" % (len(sigma), n + D.C.dim))
    return DoubleLinearFunctional(tuple(sigma[:n]), tuple(sigma[n:]))


def xspace(D: TrivialDVB) -> DVBStarSeq:
    """``0 -> A* (x) B* -i-> X(D) -j-> C* -> 0`` with ``X(D)`` stored as pairs ``(theta, chi)``."""
    U, V, K = D.A.dual(), D.B.dual(), D.C.dual()
    UV = U.tensor(V)
    X = Space(UV.dim + K.dim, "X(%s)" % _name(D))
    return DVBStarSeq(U, V, K, la.inclusion(UV, X, 0), la.projection(X, K, UV.dim))


def _name(D: TrivialDVB) -> str:
    return "%s,%s;%s" % (D.A.label, D.B.label, D.C.label)


def evaluate(D: TrivialDVB, sigma, d) -> object:
    return functional(D, sigma)(D.check(d))


def pair_cd_xd(D: TrivialDVB, omega, sigma) -> object:
    """``<x (+) c, (theta, chi)> = <theta, x> + <chi, c>`` for ``omega = (x, c)`` in ``A (x) B (+) C``."""
    n = D.A.dim * D.B.dim + D.C.dim
    if len(omega) != n or len(sigma) != n:
        raise ShapeMismatch("pairing needs two vectors of length %d, got %d and %d" % (n, len(omega), len(sigma)))
    return dot(omega, sigma)


def pairing_cd_xd(D: TrivialDVB) -> ValuedPairing:
    """The combined-space / double-linear pairing as a scalar-valued form."""
    n = D.A.dim * D.B.dim + D.C.dim
    Om = Space(n, "C(%s)" % _name(D))
    X = xspace(D).Pi
    return ValuedPairing.from_function(Om, X, Space(1, "Q"), lambda w, s: (pair_cd_xd(D, w, s),))
