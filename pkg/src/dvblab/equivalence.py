"""
The doubling and combining functors and the two natural isomorphisms.

Doubling sends a DVB sequence ``0 -> C -> Omega -> A (x) B -> 0`` to the
slice ``{(omega, a, b) : p(omega) = a (x) b}``.  Combining sends a slice to
``A (x) B (+) C`` (tensor part first) with ``[(a, b, c)] = (a (x) b, c)``;
an independent realisation as the dual of the double-linear function
space is provided by :func:`combining_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ansatz import coefficients_of, double_linear_space, evaluate
from .dvb import (
    DVBElement,
    DVBMorphism,
    DVBStructure,
    FiberMismatch,
    ShapeMismatch,
    TrivialDVB,
    extract_canonical,
)
from .exactla import (
    LinMap,
    Space,
    concat,
    coordinates,
    inclusion,
    is_invertible,
    projection,
    tensor_vec,
    vadd,
    vcomb,
    zeros,
)
from .sampling import random_vector
from .seq import DVBSeq, SeqMorphism


# --------------------------------------------------------------------------
# doubling


@dataclass(frozen=True)
class DoubledElement:
    omega: tuple
    a: tuple
    b: tuple


class DoubledDVB(DVBStructure):
    """Double realisation of a DVB sequence."""

    def __init__(self, source: DVBSeq):
        self.source = source
        self.A, self.B, self.C = source.A, source.B, source.C
        self._section = source.seq.section()
        self._retraction = source.seq.retraction()

    def __repr__(self):
        return "DoubledDVB(%r)" % (self.source,)

    def is_member(self, d: DoubledElement) -> bool:
        if (len(d.omega), len(d.a), len(d.b)) != (self.source.Omega.dim, self.A.dim, self.B.dim):
            return False
        return self.source.p(d.omega) == tensor_vec(d.a, d.b)

    def element(self, omega, a, b) -> DoubledElement:
        d = DoubledElement(tuple(omega), tuple(a), tuple(b))
        if not self.is_member(d):
            raise ShapeMismatch("p(omega) differs from a (x) b")
        return d

    def proj_A(self, d):
        return d.a

    def proj_B(self, d):
        return d.b

    def combine_A(self, r, d1, d2):
        if d1.a != d2.a:
            raise FiberMismatch("vertical sum needs equal A-components")
        return DoubledElement(vcomb(r, d1.omega, d2.omega), d1.a, vcomb(r, d1.b, d2.b))

    def combine_B(self, r, d1, d2):
        if d1.b != d2.b:
            raise FiberMismatch("horizontal sum needs equal B-components")
        return DoubledElement(vcomb(r, d1.omega, d2.omega), vcomb(r, d1.a, d2.a), d1.b)

    def zero_A(self, a):
        return DoubledElement(zeros(self.source.Omega.dim), tuple(a), zeros(self.B.dim))

    def zero_B(self, b):
        return DoubledElement(zeros(self.source.Omega.dim), zeros(self.A.dim), tuple(b))

    def core_embed(self, c):
        return DoubledElement(self.source.e(tuple(c)), zeros(self.A.dim), zeros(self.B.dim))

    def lift(self, a, b, c) -> DoubledElement:
        """The member ``(s(a (x) b) + e(c), a, b)`` for the deterministic section ``s``."""
        omega = vadd(self._section(tensor_vec(a, b)), self.source.e(tuple(c)))
        return DoubledElement(omega, tuple(a), tuple(b))

    def core_part(self, d) -> tuple:
        """``e^{-1}(omega - s(a (x) b))``, computed as the retraction of ``omega``."""
        return self._retraction(d.omega)

    def random_over(self, rng, a=None, b=None):
        a = random_vector(rng, self.A.dim) if a is None else tuple(a)
        b = random_vector(rng, self.B.dim) if b is None else tuple(b)
        return self.lift(a, b, random_vector(rng, self.C.dim))


def doubling(s: DVBSeq) -> DoubledDVB:
    return DoubledDVB(s)


class Trivialization:
    """Element isomorphism between a doubled slice and ``TrivialDVB(A, B, C)``."""

    def __init__(self, doubled: DoubledDVB):
        self.doubled = doubled
        self.trivial = TrivialDVB(doubled.A, doubled.B, doubled.C)

    def forward(self, d: DoubledElement) -> DVBElement:
        return DVBElement(d.a, d.b, self.doubled.core_part(d))

    def backward(self, d: DVBElement) -> DoubledElement:
        return self.doubled.lift(d.a, d.b, d.c)


def doubled_to_trivial(d: DoubledDVB) -> Trivialization:
    return Trivialization(d)


# --------------------------------------------------------------------------
# combining


class Combination:
    """Associated DVB sequence of a slice plus the class map ``d -> [d]``.

    ``representatives[k]`` is an element whose class is the ``k``-th
    standard basis vector of ``Omega``.
    """

    def __init__(self, structure, seq: DVBSeq, class_of, representatives):
        self.structure = structure
        self.seq = seq
        self.class_of = class_of
        self.representatives = representatives


def _tensor_first_seq(A: Space, B: Space, C: Space) -> DVBSeq:
    AB = A.tensor(B)
    Om = Space(AB.dim + C.dim, "C(D)")
    e = inclusion(C, Om, AB.dim)
    p = projection(Om, AB, 0)
    return DVBSeq(A, B, C, e, p)


def combining(D) -> Combination:
    """``A (x) B (+) C`` with ``[(a, b, c)] = (a (x) b, c)``.

    A doubled slice is combined through its trivialisation.
    """
    seq = _tensor_first_seq(D.A, D.B, D.C)
    basic = [DVBElement(ea, fb, zeros(D.C.dim)) for ea in D.A.basis() for fb in D.B.basis()]
    basic += [DVBElement(zeros(D.A.dim), zeros(D.B.dim), g) for g in D.C.basis()]
    if isinstance(D, TrivialDVB):
        def class_of(d):
            return concat(tensor_vec(d.a, d.b), d.c)
        return Combination(D, seq, class_of, basic)
    if isinstance(D, DoubledDVB):
        triv = Trivialization(D)

        def class_of(d):
            return concat(tensor_vec(d.a, d.b), D.core_part(d))
        return Combination(D, seq, class_of, [triv.backward(x) for x in basic])
    raise TypeError("cannot combine %r" % (D,))


def check_class_relations(comb: Combination, rng, trials: int = 20) -> bool:
    """``[d1 +A d2] = [d1] + [d2]``, ``[r *A d] = r[d]`` and the horizontal mirror on random samples."""
    from .sampling import random_scalar
    D, cl = comb.structure, comb.class_of
    for _ in range(trials):
        a = random_vector(rng, D.A.dim)
        b = random_vector(rng, D.B.dim)
        r = random_scalar(rng)
        d1, d2 = D.random_over(rng, a=a), D.random_over(rng, a=a)
        d3, d4 = D.random_over(rng, b=b), D.random_over(rng, b=b)
        if cl(D.add_A(d1, d2)) != vadd(cl(d1), cl(d2)):
            return False
        if cl(D.add_B(d3, d4)) != vadd(cl(d3), cl(d4)):
            return False
        if cl(D.scale_A(r, d1)) != vcomb(r, cl(d1), zeros(len(cl(d1)))):
            return False
        if cl(D.scale_B(r, d3)) != vcomb(r, cl(d3), zeros(len(cl(d3)))):
            return False
    return True


@dataclass
class OracleComparison:
    dims: tuple
    oracle_dim: int
    iso: LinMap = field(repr=False)
    invertible: bool = False
    kernel_square: bool = False
    quotient_square: bool = False
    classes_match: bool = False

    @property
    def passed(self) -> bool:
        return self.invertible and self.kernel_square and self.quotient_square and self.classes_match


class OracleCombination(Combination):
    """``X(D)*`` computed from the ansatz; ``[d]`` is evaluation at ``d``."""


def combining_oracle(D: TrivialDVB, seed: int = 0) -> OracleCombination:
    basis, _ = double_linear_space(D, seed)
    n = sum(D.dims)
    X = Space(len(basis), "X(D)*")

    def class_of(d):
        return tuple(evaluate(sigma, d) for sigma in basis)

    C, A, B = D.C, D.A, D.B
    e_cols = [class_of(D.core_embed(g)) for g in C.basis()]
    e = LinMap.from_columns(C, X, e_cols)
    # i(theta) for theta = e_i* (x) f_j*, expressed in the ansatz basis; p is its transpose
    rows = []
    dA = A.dim
    for i in range(A.dim):
        for j in range(B.dim):
            target = coefficients_of(lambda x, i=i, j=j: x[i] * x[dA + j], n)
            y = coordinates(basis, target) if basis else None
            if y is None:
                raise ValueError("a tensor function is missing from the ansatz solution space")
            rows.append(y)
    p = LinMap(X, A.tensor(B), rows)
    seq = DVBSeq(A, B, C, e, p)
    return OracleCombination(D, seq, class_of, None)


def compare_with_oracle(D: TrivialDVB, rng, seed: int = 0, trials: int = 10) -> OracleComparison:
    comb = combining(D)
    orc = combining_oracle(D, seed)
    cols = [orc.class_of(r) for r in comb.representatives]
    phi = LinMap.from_columns(comb.seq.Omega, orc.seq.Omega, cols)
    out = OracleComparison(D.dims, orc.seq.Omega.dim, phi)
    out.invertible = is_invertible(phi)
    out.kernel_square = phi @ comb.seq.e == orc.seq.e
    out.quotient_square = orc.seq.p @ phi == comb.seq.p
    ok = True
    for _ in range(trials):
        d = D.random_element(rng)
        if phi(comb.class_of(d)) != orc.class_of(d):
            ok = False
            break
    out.classes_match = ok
    return out


# --------------------------------------------------------------------------
# functors on morphisms


class DoubledMorphism:
    """``D(varpi): (omega, a, b) -> (varpi(omega), fA a, fB b)``."""

    def __init__(self, m: SeqMorphism):
        self.seq_morphism = m
        self.source = DoubledDVB(m.source)
        self.target = DoubledDVB(m.target)
        self.fA, self.fB, self.fC = m.fA, m.fB, m.fC

    def apply(self, d: DoubledElement) -> DoubledElement:
        m = self.seq_morphism
        return DoubledElement(m.varpi(d.omega), m.fA(d.a), m.fB(d.b))

    __call__ = apply

    def compose_after(self, first: "DoubledMorphism") -> "DoubledMorphism":
        return DoubledMorphism(self.seq_morphism.compose_after(first.seq_morphism))

    def canonical(self) -> DVBMorphism:
        """Canonical form between the two trivialisations."""
        src, tgt = Trivialization(self.source), Trivialization(self.target)
        return extract_canonical(lambda d: tgt.forward(self.apply(src.backward(d))),
                                 src.trivial, tgt.trivial)

    def __eq__(self, other):
        return isinstance(other, DoubledMorphism) and self.seq_morphism == other.seq_morphism

    def __hash__(self):
        return hash(self.seq_morphism)


def doubling_on_morphism(m: SeqMorphism) -> DoubledMorphism:
    return DoubledMorphism(m)


def combining_on_morphism(phi) -> SeqMorphism:
    """``C(phi)[d] = [phi(d)]``, read off on the basis representatives."""
    src, tgt = combining(phi.source), combining(phi.target)
    cols = [tgt.class_of(phi.apply(r)) for r in src.representatives]
    varpi = LinMap.from_columns(src.seq.Omega, tgt.seq.Omega, cols)
    return SeqMorphism(src.seq, tgt.seq, varpi, phi.fA, phi.fB, phi.fC)


def check_combining_well_defined(phi, rng, trials: int = 10) -> bool:
    """``C(phi)([d]) = [phi(d)]`` on random ``d`` (not just the representatives)."""
    m = combining_on_morphism(phi)
    src, tgt = combining(phi.source), combining(phi.target)
    for _ in range(trials):
        d = phi.source.random_element(rng)
        if m.varpi(src.class_of(d)) != tgt.class_of(phi.apply(d)):
            return False
    return m.check().passed


# --------------------------------------------------------------------------
# natural transformations


@dataclass
class NatReport:
    name: str
    iso: bool = False
    morphism_axioms: bool = False
    formula: bool = False
    naturality: bool | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.iso and self.morphism_axioms and self.formula and self.naturality is not False


class NatT:
    """``t_D(d) = ([d], a, b)`` into the double realisation of ``C(D)``."""

    def __init__(self, D: TrivialDVB):
        self.D = D
        self.comb = combining(D)
        self.target = DoubledDVB(self.comb.seq)
        self.triv = Trivialization(self.target)

    def apply(self, d: DVBElement) -> DoubledElement:
        return DoubledElement(self.comb.class_of(d), d.a, d.b)

    __call__ = apply

    def canonical(self) -> DVBMorphism:
        return extract_canonical(lambda d: self.triv.forward(self.apply(d)), self.D, self.triv.trivial)


def nat_t(D: TrivialDVB) -> NatT:
    return NatT(D)


def _commutes_with_structure(fn, S, T, rng, trials) -> bool:
    from .sampling import random_scalar
    for _ in range(trials):
        a = random_vector(rng, S.A.dim)
        b = random_vector(rng, S.B.dim)
        r = random_scalar(rng)
        d1, d2 = S.random_over(rng, a=a), S.random_over(rng, a=a)
        d3, d4 = S.random_over(rng, b=b), S.random_over(rng, b=b)
        if fn(S.combine_A(r, d1, d2)) != T.combine_A(r, fn(d1), fn(d2)):
            return False
        if fn(S.combine_B(r, d3, d4)) != T.combine_B(r, fn(d3), fn(d4)):
            return False
    return True


def check_nat_t(D: TrivialDVB, rng, phi: DVBMorphism | None = None, trials: int = 10) -> NatReport:
    t = NatT(D)
    rep = NatReport("nat_t")
    canon = t.canonical()
    rep.iso = canon.is_iso()
    members = True
    for _ in range(trials):
        d = D.random_element(rng)
        if not t.target.is_member(t.apply(d)):
            members = False
    core_ok = all(t.apply(D.core_embed(g)) == t.target.core_embed(g) for g in D.C.basis())
    rep.morphism_axioms = members and core_ok and _commutes_with_structure(t.apply, D, t.target, rng, trials)
    rep.formula = all(t.apply(x) == DoubledElement(t.comb.class_of(x), x.a, x.b)
                      for x in (D.random_element(rng) for _ in range(3)))
    if phi is not None:
        t2 = NatT(phi.target)
        DC_phi = doubling_on_morphism(combining_on_morphism(phi))
        nat = True
        for _ in range(trials):
            d = D.random_element(rng)
            if t2.apply(phi.apply(d)) != DC_phi.apply(t.apply(d)):
                nat = False
                break
        rep.naturality = nat
    return rep


class NatPi:
    """``pi([(omega, a, b)]) = omega`` from ``C(D(Omega))`` back to ``Omega``."""

    def __init__(self, s: DVBSeq):
        self.s = s
        self.doubled = DoubledDVB(s)
        self.comb = combining(self.doubled)
        cols = [r.omega for r in self.comb.representatives]
        self.matrix = LinMap.from_columns(self.comb.seq.Omega, s.Omega, cols)

    def morphism(self) -> SeqMorphism:
        s = self.s
        return SeqMorphism(self.comb.seq, s, self.matrix, LinMap.identity(s.A),
                           LinMap.identity(s.B), LinMap.identity(s.C))


def nat_pi(s: DVBSeq) -> NatPi:
    return NatPi(s)


def check_nat_pi(s: DVBSeq, rng, m: SeqMorphism | None = None, trials: int = 10) -> NatReport:
    pi = NatPi(s)
    rep = NatReport("nat_pi")
    rep.iso = is_invertible(pi.matrix)
    rep.morphism_axioms = pi.morphism().check().passed
    ok = True
    for _ in range(trials):
        d = pi.doubled.random_element(rng)
        if pi.matrix(pi.comb.class_of(d)) != d.omega:
            ok = False
            break
    rep.formula = ok
    if m is not None:
        pi2 = NatPi(m.target)
        CD_m = combining_on_morphism(doubling_on_morphism(m))
        rep.naturality = pi2.matrix @ CD_m.varpi == m.varpi @ pi.matrix
    return rep


def check_functor_laws(phi: DVBMorphism, psi: DVBMorphism, m1: SeqMorphism, m2: SeqMorphism, rng,
                       trials: int = 5) -> dict:
    """Identity and composition preservation for both functors.

    ``psi o phi`` and ``m2 o m1`` must be composable.
    """
    out = {}
    C_id = combining_on_morphism(DVBMorphism.identity(phi.source))
    out["combining-identity"] = C_id == SeqMorphism.identity(combining(phi.source).seq)
    out["combining-composition"] = (combining_on_morphism(psi.compose_after(phi))
                                    == combining_on_morphism(psi).compose_after(combining_on_morphism(phi)))
    D_id = doubling_on_morphism(SeqMorphism.identity(m1.source))
    S = DoubledDVB(m1.source)
    ok = True
    for _ in range(trials):
        d = S.random_element(rng)
        if D_id.apply(d) != d:
            ok = False
    out["doubling-identity"] = ok
    D1, D2 = doubling_on_morphism(m1), doubling_on_morphism(m2)
    D21 = doubling_on_morphism(m2.compose_after(m1))
    ok = True
    for _ in range(trials):
        d = S.random_element(rng)
        if D21.apply(d) != D2.apply(D1.apply(d)):
            ok = False
    out["doubling-composition"] = ok
    return out

