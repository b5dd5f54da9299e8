"""
Short exact sequences ``0 -> left -e-> mid -p-> right -> 0``.

Two specialisations carry tensor-factor bookkeeping: :class:`DVBSeq`
(``0 -> C -> Omega -> A (x) B -> 0``) and :class:`DVBStarSeq`
(``0 -> U (x) V -> Pi -> K -> 0``).  Constructors certify exactness by
rank computations and raise :class:`NotExact` otherwise.

Sequence morphisms run in the direction ``varpi: Omega -> Omega'`` and must
make both squares of the ladder commute.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import (
    LinMap,
    Space,
    inclusion,
    inverse,
    left_inverse,
    map_from_json,
    projection,
    rank,
    right_inverse,
    tensor_map,
)
from .sampling import random_invertible, random_map


class NotExact(ValueError):
    """The pair of maps does not form a short exact sequence."""


@dataclass
class ExactnessReport:
    injective: bool
    surjective: bool
    composite_zero: bool
    ranks_add_up: bool

    @property
    def exact(self) -> bool:
        return self.injective and self.surjective and self.composite_zero and self.ranks_add_up

    def failures(self) -> list[str]:
        names = ("injective", "surjective", "composite_zero", "ranks_add_up")
        return [n for n in names if not getattr(self, n)]


def check_exact(e: LinMap, p: LinMap) -> ExactnessReport:
    """Certify ``0 -> . -e-> . -p-> . -> 0`` by exact ranks."""
    re, rp = rank(e), rank(p)
    composite_zero = e.codomain.dim == p.domain.dim and (p @ e).is_zero()
    return ExactnessReport(
        injective=re == e.domain.dim,
        surjective=rp == p.codomain.dim,
        composite_zero=composite_zero,
        ranks_add_up=re + rp == e.codomain.dim,
    )


class ShortExactSeq:
    __slots__ = ("left", "mid", "right", "e", "p")

    def __init__(self, e: LinMap, p: LinMap, verify: bool = True):
        if e.codomain.dim != p.domain.dim:
            raise NotExact("middle spaces differ: %d vs %d" % (e.codomain.dim, p.domain.dim))
        self.left, self.mid, self.right = e.domain, e.codomain, p.codomain
        self.e, self.p = e, p
        if verify:
            report = check_exact(e, p)
            if not report.exact:
                raise NotExact("sequence fails: %s" % ", ".join(report.failures()))

    def report(self) -> ExactnessReport:
        return check_exact(self.e, self.p)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.left.dim, self.mid.dim, self.right.dim)

    def section(self) -> LinMap:
        """Deterministic right inverse of ``p``."""
        return right_inverse(self.p)

    def retraction(self) -> LinMap:
        """Left inverse ``rho`` of ``e`` with ``rho o section = 0``."""
        s = self.section()
        e_plus = left_inverse(self.e)
        return e_plus @ (LinMap.identity(self.mid) - s @ self.p)

    def __eq__(self, other):
        return isinstance(other, ShortExactSeq) and self.e == other.e and self.p == other.p

    def __hash__(self):
        return hash((self.e, self.p))

    def __repr__(self):
        return "ShortExactSeq(0 -> %s -> %s -> %s -> 0)" % (
            self.left.label, self.mid.label, self.right.label)


class DVBSeq:
    """``0 -> C -e-> Omega -p-> A (x) B -> 0``."""

    def __init__(self, A: Space, B: Space, C: Space, e: LinMap, p: LinMap, verify: bool = True):
        if e.domain.dim != C.dim or p.codomain.dim != A.dim * B.dim:
            raise NotExact("maps do not fit C=%d and A(x)B=%d" % (C.dim, A.dim * B.dim))
        self.A, self.B, self.C = A, B, C
        AB = A.tensor(B)
        self.seq = ShortExactSeq(e.with_spaces(domain=C), p.with_spaces(codomain=AB), verify)

    @property
    def e(self) -> LinMap:
        return self.seq.e

    @property
    def p(self) -> LinMap:
        return self.seq.p

    @property
    def Omega(self) -> Space:
        return self.seq.mid

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.A.dim, self.B.dim, self.C.dim)

    def __eq__(self, other):
        return isinstance(other, DVBSeq) and self.dims == other.dims and self.seq == other.seq

    def __hash__(self):
        return hash((self.dims, self.seq))

    def __repr__(self):
        return "DVBSeq(A=%d, B=%d, C=%d, Omega=%d)" % (self.dims + (self.Omega.dim,))

    def to_json(self) -> dict:
        return {"kind": "seq", "A": self.A.dim, "B": self.B.dim, "C": self.C.dim, "Omega": self.Omega.dim,
                "e": self.e.to_json(), "p": self.p.to_json()}


class DVBStarSeq:
    """``0 -> U (x) V -i-> Pi -j-> K -> 0``."""

    def __init__(self, U: Space, V: Space, K: Space, i: LinMap, j: LinMap, verify: bool = True):
        if i.domain.dim != U.dim * V.dim or j.codomain.dim != K.dim:
            raise NotExact("maps do not fit U(x)V=%d and K=%d" % (U.dim * V.dim, K.dim))
        self.U, self.V, self.K = U, V, K
        self.seq = ShortExactSeq(i.with_spaces(domain=U.tensor(V)), j.with_spaces(codomain=K), verify)

    @property
    def i(self) -> LinMap:
        return self.seq.e

    @property
    def j(self) -> LinMap:
        return self.seq.p

    @property
    def Pi(self) -> Space:
        return self.seq.mid

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.U.dim, self.V.dim, self.K.dim)

    def __eq__(self, other):
        return isinstance(other, DVBStarSeq) and self.dims == other.dims and self.seq == other.seq

    def __hash__(self):
        return hash((self.dims, self.seq))

    def __repr__(self):
        return "DVBStarSeq(U=%d, V=%d, K=%d, Pi=%d)" % (self.dims + (self.Pi.dim,))


# --------------------------------------------------------------------------
# generators


def _twisted(rng, left: Space, right: Space, mid_label: str, twist: bool):
    mid = Space(left.dim + right.dim, mid_label)
    if twist:
        T = random_invertible(rng, mid)
    else:
        T = LinMap.identity(mid)
    e = T @ inclusion(left, mid, 0)
    p = projection(mid, right, left.dim) @ inverse(T)
    return e, p


def random_seq(dims, rng, twist: bool = True) -> DVBSeq:
    """Random DVB sequence with ``Omega = C (+) A (x) B`` twisted by a random automorphism."""
    dA, dB, dC = dims
    A, B, C = Space(dA, "A"), Space(dB, "B"), Space(dC, "C")
    e, p = _twisted(rng, C, A.tensor(B), "Ω", twist)
    return DVBSeq(A, B, C, e, p)


def split_seq(dims) -> DVBSeq:
    return random_seq(dims, None, twist=False)


def random_star_seq(dims, rng, twist: bool = True) -> DVBStarSeq:
    """Random DVB* sequence with ``Pi = U (x) V (+) K`` twisted by a random automorphism."""
    dU, dV, dK = dims
    U, V, K = Space(dU, "U"), Space(dV, "V"), Space(dK, "K")
    i, j = _twisted(rng, U.tensor(V), K, "Π", twist)
    return DVBStarSeq(U, V, K, i, j)


def split_star_seq(dims) -> DVBStarSeq:
    return random_star_seq(dims, None, twist=False)


def seq_from_json(data: dict) -> DVBSeq:
    try:
        dA, dB, dC = data["A"], data["B"], data["C"]
        e_raw, p_raw = data["e"], data["p"]
    except (KeyError, TypeError):
        raise ValueError("sequence instance needs fields A, B, C, e, p") from None
    for d in (dA, dB, dC):
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ValueError("sequence dims must be nonnegative integers")
    A, B, C = Space(dA, "A"), Space(dB, "B"), Space(dC, "C")
    Om = Space(dA * dB + dC, "Ω")
    if data.get("Omega", Om.dim) != Om.dim:
        raise ValueError("Omega must have dimension A*B + C = %d, got %r" % (Om.dim, data["Omega"]))
    e = map_from_json(C, Om, e_raw)
    p = map_from_json(Om, A.tensor(B), p_raw)
    return DVBSeq(A, B, C, e, p)


# --------------------------------------------------------------------------
# morphisms


@dataclass
class SquareReport:
    quotient_square: bool
    kernel_square: bool

    @property
    def passed(self) -> bool:
        return self.quotient_square and self.kernel_square


class SeqMorphism:
    """``(varpi; fA, fB)`` with ``fC`` the restriction of ``varpi`` to the core."""

    def __init__(self, source: DVBSeq, target: DVBSeq,
                 varpi: LinMap, fA: LinMap, fB: LinMap, fC: LinMap):
        self.source, self.target = source, target
        self.varpi, self.fA, self.fB, self.fC = varpi, fA, fB, fC

    @classmethod
    def identity(cls, s: DVBSeq) -> "SeqMorphism":
        return cls(s, s, LinMap.identity(s.Omega), LinMap.identity(s.A),
                   LinMap.identity(s.B), LinMap.identity(s.C))

    def check(self) -> SquareReport:
        s, t = self.source, self.target
        quotient = t.p @ self.varpi == tensor_map(self.fA, self.fB) @ s.p
        kernel = self.varpi @ s.e == t.e @ self.fC
        return SquareReport(quotient, kernel)

    def compose_after(self, first: "SeqMorphism") -> "SeqMorphism":
        """``self o first``."""
        return SeqMorphism(first.source, self.target, self.varpi @ first.varpi,
                           self.fA @ first.fA, self.fB @ first.fB, self.fC @ first.fC)

    def components(self):
        return (self.varpi, self.fA, self.fB, self.fC)

    def __eq__(self, other):
        return isinstance(other, SeqMorphism) and self.components() == other.components()

    def __hash__(self):
        return hash(self.components())


def seq_morphism_check(m: SeqMorphism) -> SquareReport:
    return m.check()


def compose(second: SeqMorphism, first: SeqMorphism) -> SeqMorphism:
    return second.compose_after(first)


def lift_morphism(source: DVBSeq, target: DVBSeq, fA: LinMap, fB: LinMap, fC: LinMap,
                  omega: LinMap) -> SeqMorphism:
    """The morphism with prescribed ``fA, fB, fC`` whose failure to respect splittings is ``omega``.

    ``varpi = e' fC rho + (e' omega + s' (fA (x) fB)) p`` where ``s``, ``s'``
    are the deterministic sections and ``rho`` the retraction of ``e``
    vanishing on ``s``.
    """
    rho = source.seq.retraction()
    s_t = target.seq.section()
    varpi = target.e @ fC @ rho + (target.e @ omega + s_t @ tensor_map(fA, fB)) @ source.p
    return SeqMorphism(source, target, varpi, fA, fB, fC)


def random_seq_morphism(rng, source: DVBSeq, target: DVBSeq, invertible: bool = False) -> SeqMorphism:
    if invertible:
        fA = random_invertible(rng, source.A)
        fB = random_invertible(rng, source.B)
        fC = random_invertible(rng, source.C)
    else:
        fA = random_map(rng, source.A, target.A)
        fB = random_map(rng, source.B, target.B)
        fC = random_map(rng, source.C, target.C)
    omega = random_map(rng, source.A.tensor(source.B), target.C)
    return lift_morphism(source, target, fA, fB, fC, omega)
