"""
Fiberwise double vector bundles.

A trivial DVB over one base point is the carrier ``A x B x C`` with two
linear structures: the vertical one over ``A`` keeps ``a`` fixed and adds
``(b, c)``; the horizontal one over ``B`` keeps ``b`` fixed and adds
``(a, c)``.  Any object exposing the structure methods of
:class:`DVBStructure` (for instance a doubled sequence) can be fed to
:func:`check_interchange`.

Morphisms over the identity base map are stored in the canonical form
``(fA, fB, fC, omega)`` acting by ``(a, b, c) -> (fA a, fB b, fC c + omega(a (x) b))``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from .exactla import (
    ONE,
    DimensionMismatch,
    LinMap,
    Space,
    inverse,
    tensor_map,
    tensor_vec,
    vadd,
    vcomb,
    vec,
    vscale,
    zeros,
)
from .sampling import make_rng, random_scalar, random_vector


class FiberMismatch(ValueError):
    """Two elements do not lie over the same base point of the structure being used."""


class ShapeMismatch(ValueError):
    """An element or map does not fit the DVB it is used with."""


@dataclass(frozen=True)
class DVBElement:
    a: tuple
    b: tuple
    c: tuple

    def as_tuple(self):
        return (self.a, self.b, self.c)


class DVBStructure:
    """Shared double-structure vocabulary.

    Subclasses provide ``combine_A``, ``combine_B``, ``zero_A``, ``zero_B``,
    ``core_embed``, ``proj_A``, ``proj_B`` and ``random_over``; everything
    else is derived from those.
    """

    A: Space
    B: Space
    C: Space

    def add_A(self, d1, d2):
        return self.combine_A(ONE, d1, d2)

    def add_B(self, d1, d2):
        return self.combine_B(ONE, d1, d2)

    def scale_A(self, r, d):
        return self.combine_A(r, d, self.zero_A(self.proj_A(d)))

    def scale_B(self, r, d):
        return self.combine_B(r, d, self.zero_B(self.proj_B(d)))

    def sub_A(self, d1, d2):
        return self.combine_A(-ONE, d2, d1)

    def sub_B(self, d1, d2):
        return self.combine_B(-ONE, d2, d1)

    def random_element(self, rng):
        return self.random_over(rng)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.A.dim, self.B.dim, self.C.dim)


class TrivialDVB(DVBStructure):
    """The slice ``A x B x C`` of a trivial double vector bundle."""

    def __init__(self, A: Space, B: Space, C: Space):
        self.A, self.B, self.C = A, B, C

    @classmethod
    def of_dims(cls, dA: int, dB: int, dC: int, labels=("A", "B", "C")) -> "TrivialDVB":
        return cls(Space(dA, labels[0]), Space(dB, labels[1]), Space(dC, labels[2]))

    def __eq__(self, other):
        return isinstance(other, TrivialDVB) and self.dims == other.dims

    def __hash__(self):
        return hash(("TrivialDVB",) + self.dims)

    def __repr__(self):
        return "TrivialDVB(%s=%d, %s=%d; core %s=%d)" % (
            self.A.label, self.A.dim, self.B.label, self.B.dim, self.C.label, self.C.dim)

    def element(self, a, b, c) -> DVBElement:
        a, b, c = vec(a), vec(b), vec(c)
        self.check(DVBElement(a, b, c))
        return DVBElement(a, b, c)

    def check(self, d: DVBElement) -> DVBElement:
        if (len(d.a), len(d.b), len(d.c)) != self.dims:
            raise ShapeMismatch("element of shape %s in DVB of dims %s"
                                % ((len(d.a), len(d.b), len(d.c)), self.dims))
        return d

    def proj_A(self, d: DVBElement):
        return d.a

    def proj_B(self, d: DVBElement):
        return d.b

    def combine_A(self, r, d1: DVBElement, d2: DVBElement) -> DVBElement:
        """``r *_A d1 +_A d2``; both elements must lie over the same ``a``."""
        if d1.a != d2.a:
            raise FiberMismatch("vertical sum needs equal A-components, got %s and %s" % (d1.a, d2.a))
        return DVBElement(d1.a, vcomb(r, d1.b, d2.b), vcomb(r, d1.c, d2.c))

    def combine_B(self, r, d1: DVBElement, d2: DVBElement) -> DVBElement:
        """``r *_B d1 +_B d2``; both elements must lie over the same ``b``."""
        if d1.b != d2.b:
            raise FiberMismatch("horizontal sum needs equal B-components, got %s and %s" % (d1.b, d2.b))
        return DVBElement(vcomb(r, d1.a, d2.a), d1.b, vcomb(r, d1.c, d2.c))

    def zero_A(self, a) -> DVBElement:
        return DVBElement(tuple(a), zeros(self.B.dim), zeros(self.C.dim))

    def zero_B(self, b) -> DVBElement:
        return DVBElement(zeros(self.A.dim), tuple(b), zeros(self.C.dim))

    def core_embed(self, c) -> DVBElement:
        return DVBElement(zeros(self.A.dim), zeros(self.B.dim), tuple(c))

    def random_over(self, rng, a=None, b=None) -> DVBElement:
        a = random_vector(rng, self.A.dim) if a is None else tuple(a)
        b = random_vector(rng, self.B.dim) if b is None else tuple(b)
        return DVBElement(a, b, random_vector(rng, self.C.dim))

    def flip(self) -> "TrivialDVB":
        """Same slice with the two side bundles exchanged."""
        return TrivialDVB(self.B, self.A, self.C)

    @staticmethod
    def flip_element(d: DVBElement) -> DVBElement:
        return DVBElement(d.b, d.a, d.c)


def combine_A(D: TrivialDVB, r, d1: DVBElement, d2: DVBElement) -> DVBElement:
    return D.combine_A(r, d1, d2)


def combine_B(D: TrivialDVB, r, d1: DVBElement, d2: DVBElement) -> DVBElement:
    return D.combine_B(r, d1, d2)


def core_embed(D: TrivialDVB, c) -> DVBElement:
    return D.core_embed(c)


# --------------------------------------------------------------------------
# interchange laws

LAW_NAMES = (
    "sum-sum",           # (d1 +B d2) +A (d3 +B d4) = (d1 +A d3) +B (d2 +A d4)
    "scaleA-sumB",       # t *A (d1 +B d2) = t *A d1 +B t *A d2
    "scaleB-sumA",       # t *B (d1 +A d2) = t *B d1 +A t *B d2
    "scale-scale",       # t *A (s *B d) = s *B (t *A d)
    "zeroA-additive",    # 0A_{a1+a2} = 0A_{a1} +B 0A_{a2}
    "zeroA-homogeneous", # 0A_{ta} = t *B 0A_a
    "zeroB-additive",    # 0B_{b1+b2} = 0B_{b1} +A 0B_{b2}
    "zeroB-homogeneous", # 0B_{tb} = t *A 0B_b
)


@dataclass
class LawTally:
    name: str
    trials: int = 0
    failures: int = 0
    counterexample: object = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class InterchangeReport:
    dims: tuple
    laws: dict
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.laws.values())

    @property
    def failures(self) -> int:
        return sum(t.failures for t in self.laws.values())

    def first_failure(self):
        for name in LAW_NAMES:
            t = self.laws[name]
            if not t.passed:
                return t
        return None


def _law_instances(D, rng):
    """One random instance of each law as ``(name, lhs, rhs, witness)``."""
    dA, dB = D.A.dim, D.B.dim
    a1, a2 = random_vector(rng, dA), random_vector(rng, dA)
    b1, b2 = random_vector(rng, dB), random_vector(rng, dB)
    t, s = random_scalar(rng), random_scalar(rng)

    d1 = D.random_over(rng, a1, b1)
    d2 = D.random_over(rng, a2, b1)
    d3 = D.random_over(rng, a1, b2)
    d4 = D.random_over(rng, a2, b2)
    lhs = D.add_A(D.add_B(d1, d2), D.add_B(d3, d4))
    rhs = D.add_B(D.add_A(d1, d3), D.add_A(d2, d4))
    yield LAW_NAMES[0], lhs, rhs, (d1, d2, d3, d4)

    lhs = D.scale_A(t, D.add_B(d1, d2))
    rhs = D.add_B(D.scale_A(t, d1), D.scale_A(t, d2))
    yield LAW_NAMES[1], lhs, rhs, (t, d1, d2)

    lhs = D.scale_B(t, D.add_A(d1, d3))
    rhs = D.add_A(D.scale_B(t, d1), D.scale_B(t, d3))
    yield LAW_NAMES[2], lhs, rhs, (t, d1, d3)

    lhs = D.scale_A(t, D.scale_B(s, d4))
    rhs = D.scale_B(s, D.scale_A(t, d4))
    yield LAW_NAMES[3], lhs, rhs, (t, s, d4)

    yield LAW_NAMES[4], D.zero_A(vadd(a1, a2)), D.add_B(D.zero_A(a1), D.zero_A(a2)), (a1, a2)
    yield LAW_NAMES[5], D.zero_A(vscale(t, a1)), D.scale_B(t, D.zero_A(a1)), (t, a1)
    yield LAW_NAMES[6], D.zero_B(vadd(b1, b2)), D.add_A(D.zero_B(b1), D.zero_B(b2)), (b1, b2)
    yield LAW_NAMES[7], D.zero_B(vscale(t, b1)), D.scale_A(t, D.zero_B(b1)), (t, b1)


def check_interchange(D, trials: int, seed: int, stream=("interchange",)) -> InterchangeReport:
    """Sample ``trials`` random instances of each of the eight interchange laws.

    Failures (including operations raising on compatible inputs) are
    counted per law; nothing is raised.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    start = time.perf_counter()
    laws = {name: LawTally(name) for name in LAW_NAMES}
    for k in range(trials):
        rng = make_rng(seed, *stream, k)
        try:
            instances = list(_law_instances(D, rng))
        except (FiberMismatch, DimensionMismatch) as exc:
            for name in LAW_NAMES:
                tally = laws[name]
                tally.trials += 1
                tally.failures += 1
                if tally.counterexample is None:
                    tally.counterexample = {"trial": k, "error": str(exc)}
            continue
        for name, lhs, rhs, witness in instances:
            tally = laws[name]
            tally.trials += 1
            if lhs != rhs:
                tally.failures += 1
                if tally.counterexample is None:
                    tally.counterexample = {"trial": k, "lhs": lhs, "rhs": rhs, "inputs": witness}
    return InterchangeReport(D.dims, laws, time.perf_counter() - start)


# --------------------------------------------------------------------------
# morphisms


class DVBMorphism:
    """Canonical-form morphism ``(fA, fB, fC, omega)`` between trivial DVBs."""

    def __init__(self, source: TrivialDVB, target: TrivialDVB,
                 fA: LinMap, fB: LinMap, fC: LinMap, omega: LinMap | None = None):
        if omega is None:
            omega = LinMap.zero(source.A.tensor(source.B), target.C)
        expected = {
            "fA": (fA, source.A.dim, target.A.dim),
            "fB": (fB, source.B.dim, target.B.dim),
            "fC": (fC, source.C.dim, target.C.dim),
            "omega": (omega, source.A.dim * source.B.dim, target.C.dim),
        }
        for name, (f, n, m) in expected.items():
            if (f.domain.dim, f.codomain.dim) != (n, m):
                raise ShapeMismatch("%s has shape %d -> %d, expected %d -> %d"
                                    % (name, f.domain.dim, f.codomain.dim, n, m))
        self.source, self.target = source, target
        self.fA, self.fB, self.fC, self.omega = fA, fB, fC, omega

    @classmethod
    def identity(cls, D: TrivialDVB) -> "DVBMorphism":
        return cls(D, D, LinMap.identity(D.A), LinMap.identity(D.B), LinMap.identity(D.C))

    def apply(self, d: DVBElement) -> DVBElement:
        try:
            self.source.check(d)
        except ShapeMismatch as exc:
            raise ShapeMismatch("element does not belong to the source: %s" % exc) from None
        c = vadd(self.fC(d.c), self.omega(tensor_vec(d.a, d.b)))
        return DVBElement(self.fA(d.a), self.fB(d.b), c)

    __call__ = apply

    def compose_after(self, first: "DVBMorphism") -> "DVBMorphism":
        """``self o first``."""
        if first.target.dims != self.source.dims:
            raise ShapeMismatch("cannot compose: target dims %s vs source dims %s"
                                % (first.target.dims, self.source.dims))
        omega = (self.fC @ first.omega) + (self.omega @ tensor_map(first.fA, first.fB))
        return DVBMorphism(first.source, self.target,
                           self.fA @ first.fA, self.fB @ first.fB, self.fC @ first.fC, omega)

    def inverse(self) -> "DVBMorphism":
        gA, gB, gC = inverse(self.fA), inverse(self.fB), inverse(self.fC)
        omega = (gC @ self.omega @ tensor_map(gA, gB)).scale(-1)
        return DVBMorphism(self.target, self.source, gA, gB, gC, omega)

    def is_iso(self) -> bool:
        from .exactla import is_invertible
        return is_invertible(self.fA) and is_invertible(self.fB) and is_invertible(self.fC)

    def components(self):
        return (self.fA, self.fB, self.fC, self.omega)

    def __eq__(self, other):
        return (isinstance(other, DVBMorphism)
                and self.source.dims == other.source.dims
                and self.target.dims == other.target.dims
                and self.components() == other.components())

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return "DVBMorphism(fA=%r, fB=%r, fC=%r, omega=%r)" % self.components()


def morphism_apply(phi: DVBMorphism, d: DVBElement) -> DVBElement:
    return phi.apply(d)


def morphism_compose(psi: DVBMorphism, phi: DVBMorphism) -> DVBMorphism:
    """``psi o phi``."""
    return psi.compose_after(phi)


def extract_canonical(fn, source: TrivialDVB, target: TrivialDVB,
                      rng=None, samples: int = 8) -> DVBMorphism:
    """Read off the canonical form of a double-linear element map ``fn``.

    ``fA``, ``fB`` come from images of ``0A_a``/``0B_b`` style elements,
    ``fC`` from the core, ``omega`` from the core component of
    ``fn(e_i, f_j, 0)``.  The candidate is then compared with ``fn`` on
    random samples; a disagreement raises ``ValueError``.
    """
    dA, dB, dC = source.dims
    colsA = [fn(DVBElement(e, zeros(dB), zeros(dC))).a for e in source.A.basis()]
    colsB = [fn(DVBElement(zeros(dA), f, zeros(dC))).b for f in source.B.basis()]
    colsC = [fn(DVBElement(zeros(dA), zeros(dB), g)).c for g in source.C.basis()]
    colsW = []
    for e in source.A.basis():
        for f in source.B.basis():
            colsW.append(fn(DVBElement(e, f, zeros(dC))).c)
    phi = DVBMorphism(source, target,
                      LinMap.from_columns(source.A, target.A, colsA),
                      LinMap.from_columns(source.B, target.B, colsB),
                      LinMap.from_columns(source.C, target.C, colsC),
                      LinMap.from_columns(source.A.tensor(source.B), target.C, colsW))
    if rng is not None:
        for _ in range(samples):
            d = source.random_element(rng)
            if phi.apply(d) != fn(d):
                raise ValueError("map is not of canonical form at %r" % (d,))
    return phi


def random_morphism(rng, source: TrivialDVB, target: TrivialDVB, invertible: bool = False) -> DVBMorphism:
    from .sampling import random_invertible, random_map
    if invertible:
        if source.dims != target.dims:
            raise ShapeMismatch("isomorphisms need equal dims")
        fA = random_invertible(rng, source.A)
        fB = random_invertible(rng, source.B)
        fC = random_invertible(rng, source.C)
    else:
        fA = random_map(rng, source.A, target.A)
        fB = random_map(rng, source.B, target.B)
        fC = random_map(rng, source.C, target.C)
    omega = random_map(rng, source.A.tensor(source.B), target.C)
    return DVBMorphism(source, target, fA, fB, fC, omega)


# --------------------------------------------------------------------------
# serialization


def element_to_json(d: DVBElement) -> dict:
    from .exactla import vector_to_json
    return {"a": vector_to_json(d.a), "b": vector_to_json(d.b), "c": vector_to_json(d.c)}


def dvb_to_json(D: TrivialDVB) -> dict:
    return {"kind": "dvb", "A": D.A.dim, "B": D.B.dim, "C": D.C.dim}


def dvb_from_json(data: dict) -> TrivialDVB:
    try:
        dims = [data["A"], data["B"], data["C"]]
    except (KeyError, TypeError):
        raise ValueError("DVB instance needs integer fields A, B, C") from None
    if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in dims):
        raise ValueError("DVB dims must be nonnegative integers, got %r" % (dims,))
    return TrivialDVB.of_dims(*dims)
