"""
Brute-force oracles built on a polynomial ansatz.

An unknown function on a slice is written as a polynomial of degree at
most two in the element's coordinates.  Each defining axiom evaluated at
random points gives a linear equation on the coefficients, so the
computed nullspace always contains the true solution space.  When it
has the same span as a family of closed-form solutions, the two spaces
coincide; that comparison is what the oracles report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactla import ONE, ZERO, nullspace, same_span, vcomb, vsub, zeros
from .sampling import make_rng, random_scalar, random_vector


def monomials(n: int) -> list[tuple]:
    """Exponent index tuples of degree <= 2 in ``n`` variables: ``()``, ``(i,)``, ``(i, j)`` with ``i <= j``."""
    out: list[tuple] = [()]
    out += [(i,) for i in range(n)]
    out += [(i, j) for i in range(n) for j in range(i, n)]
    return out


def monomial_vector(x) -> tuple:
    n = len(x)
    out = [ONE]
    out += list(x)
    for i in range(n):
        xi = x[i]
        for j in range(i, n):
            out.append(xi * x[j])
    return tuple(out)


def coefficients_of(fn, n: int) -> tuple:
    """Ansatz coefficients of a known polynomial ``fn`` of degree <= 2 (by interpolation on a grid)."""
    mons = monomials(n)
    coeffs = []
    c0 = fn(zeros(n))
    lin = []
    for i in range(n):
        e = [ZERO] * n
        e[i] = ONE
        em = list(e)
        em[i] = -ONE
        fp, fm = fn(tuple(e)), fn(tuple(em))
        lin.append(((fp - fm) / 2, (fp + fm) / 2 - c0))
    for m in mons:
        if len(m) == 0:
            coeffs.append(c0)
        elif len(m) == 1:
            coeffs.append(lin[m[0]][0])
        elif m[0] == m[1]:
            coeffs.append(lin[m[0]][1])
        else:
            i, j = m
            x = [ZERO] * n
            x[i] = x[j] = ONE
            coeffs.append(fn(tuple(x)) - c0 - lin[i][0] - lin[j][0] - lin[i][1] - lin[j][1])
    return tuple(coeffs)


class RowSpace:
    """Incrementally maintained echelon basis of a row space."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row) -> bool:
        r = list(row)
        for piv, base in zip(self.pivots, self.rows):
            f = r[piv]
            if f:
                for k in range(piv, self.ncols):
                    if base[k]:
                        r[k] -= f * base[k]
        lead = next((k for k, x in enumerate(r) if x), None)
        if lead is None:
            return False
        inv = ONE / r[lead]
        r = [x * inv if x else x for x in r]
        self.rows.append(r)
        self.pivots.append(lead)
        return True

    def nullspace(self) -> list[tuple]:
        return nullspace(self.rows, self.ncols)


def solve_ansatz(nunknowns: int, sample_rows, rng, patience: int = 12, max_rows: int = 4000):
    """Collect constraint rows until ``patience`` consecutive samples add no rank.

    ``sample_rows(rng)`` returns a list of constraint rows.  Returns the
    nullspace basis and the number of rows examined.
    """
    space = RowSpace(nunknowns)
    idle = 0
    seen = 0
    while idle < patience and seen < max_rows:
        grew = False
        for row in sample_rows(rng):
            seen += 1
            if space.rank < nunknowns and space.add(row):
                grew = True
        idle = 0 if grew else idle + 1
        if space.rank == nunknowns:
            break
    return space.nullspace(), seen


# --------------------------------------------------------------------------
# double-linear functions on a trivial slice


def _coords(d) -> tuple:
    return tuple(d.a) + tuple(d.b) + tuple(d.c)


def double_linear_rows(D, rng) -> list:
    """One row for each of the four defining axioms of a double-linear function."""
    dA, dB = D.A.dim, D.B.dim
    a = random_vector(rng, dA)
    b = random_vector(rng, dB)
    r = random_scalar(rng)
    mv = lambda d: monomial_vector(_coords(d))

    d1, d2 = D.random_over(rng, a=a), D.random_over(rng, a=a)
    d3, d4 = D.random_over(rng, b=b), D.random_over(rng, b=b)
    d5, d6 = D.random_element(rng), D.random_element(rng)
    m1, m2, m3, m4 = mv(d1), mv(d2), mv(d3), mv(d4)
    rows = [
        vsub(mv(D.add_A(d1, d2)), tuple(x + y for x, y in zip(m1, m2))),
        vcomb(-r, mv(d5), mv(D.scale_A(r, d5))),
        vsub(mv(D.add_B(d3, d4)), tuple(x + y for x, y in zip(m3, m4))),
        vcomb(-r, mv(d6), mv(D.scale_B(r, d6))),
    ]
    return rows


def closed_form_functions(D) -> list:
    """Coefficient vectors of ``(a, b, c) -> <theta, a (x) b> + <chi, c>`` over basis ``theta``, ``chi``."""
    dA, dB, dC = D.dims
    n = dA + dB + dC
    out = []
    for i in range(dA):
        for j in range(dB):
            out.append(coefficients_of(lambda x, i=i, j=j: x[i] * x[dA + j], n))
    for k in range(dC):
        out.append(coefficients_of(lambda x, k=k: x[dA + dB + k], n))
    return out


@dataclass
class DoubleLinearReport:
    dims: tuple
    ansatz_dim: int
    expected_dim: int
    closed_forms_inside: bool
    same_space: bool
    rows_used: int
    basis: list = field(repr=False, default_factory=list)

    @property
    def passed(self) -> bool:
        return self.same_space


def double_linear_space(D, seed: int = 0):
    """Nullspace basis of the double-linearity constraints on the degree-2 ansatz."""
    n = sum(D.dims)
    rng = make_rng(seed, "double-linear", *D.dims)
    basis, seen = solve_ansatz(len(monomials(n)), lambda g: double_linear_rows(D, g), rng)
    return basis, seen


def double_linear_oracle(D, seed: int = 0) -> DoubleLinearReport:
    basis, seen = double_linear_space(D, seed)
    n = sum(D.dims)
    N = len(monomials(n))
    closed = closed_form_functions(D)
    inside = same_span(basis, basis + closed, N)
    same = same_span(basis, closed, N)
    dA, dB, dC = D.dims
    return DoubleLinearReport(D.dims, len(basis), dA * dB + dC, inside, same, seen, basis)


def evaluate(coeffs, d) -> object:
    mv = monomial_vector(_coords(d))
    return sum((c * m for c, m in zip(coeffs, mv) if c), ZERO)


# --------------------------------------------------------------------------
# morphism completeness


def _component_rows(D, Dt_kind: str, rng) -> list:
    """Constraint rows on one target coordinate of a candidate morphism.

    ``kind`` says which part of the target the coordinate lives in: ``A``
    coordinates are constant along vertical fibres and linear horizontally,
    ``B`` the mirror image, ``C`` coordinates are double-linear.
    """
    mv = lambda d: monomial_vector(_coords(d))
    a = random_vector(rng, D.A.dim)
    b = random_vector(rng, D.B.dim)
    r = random_scalar(rng)
    d1, d2 = D.random_over(rng, a=a), D.random_over(rng, a=a)
    d3, d4 = D.random_over(rng, b=b), D.random_over(rng, b=b)
    d5 = D.random_element(rng)
    m1, m2, m3, m4, m5 = mv(d1), mv(d2), mv(d3), mv(d4), mv(d5)
    sum_A, sum_B = mv(D.add_A(d1, d2)), mv(D.add_B(d3, d4))
    sc_A, sc_B = mv(D.scale_A(r, d5)), mv(D.scale_B(r, d5))
    add = lambda x, y: tuple(p + q for p, q in zip(x, y))
    linear_A = [vsub(sum_A, add(m1, m2)), vcomb(-r, m5, sc_A)]
    linear_B = [vsub(sum_B, add(m3, m4)), vcomb(-r, m5, sc_B)]
    const_A = [vsub(m1, m2), vsub(sum_A, m1), vsub(sc_A, m5)]
    const_B = [vsub(m3, m4), vsub(sum_B, m3), vsub(sc_B, m5)]
    if Dt_kind == "A":
        return const_A + linear_B
    if Dt_kind == "B":
        return const_B + linear_A
    return linear_A + linear_B


@dataclass
class MorphismSpaceReport:
    source_dims: tuple
    target_dims: tuple
    ansatz_dim: int
    canonical_dim: int
    same_space: bool

    @property
    def passed(self) -> bool:
        return self.same_space


def morphism_space_oracle(D, Dt, seed: int = 0) -> MorphismSpaceReport:
    """Compare all degree-2 double-linear maps ``D -> Dt`` with the canonical ``(fA, fB, fC, omega)`` family.

    The constraints decouple over target coordinates, so each coordinate
    kind is solved separately and the full solution space is their product.
    """
    dA, dB, dC = D.dims
    n = dA + dB + dC
    N = len(monomials(n))
    tA, tB, tC = Dt.dims
    ansatz_dim = 0
    same = True
    closed = {
        "A": [coefficients_of(lambda x, i=i: x[i], n) for i in range(dA)],
        "B": [coefficients_of(lambda x, j=j: x[dA + j], n) for j in range(dB)],
        "C": closed_form_functions(D),
    }
    for kind, count in (("A", tA), ("B", tB), ("C", tC)):
        if count == 0:
            continue
        rng = make_rng(seed, "morphism-ansatz", kind, *D.dims)
        basis, _ = solve_ansatz(N, lambda g: _component_rows(D, kind, g), rng)
        ansatz_dim += count * len(basis)
        same = same and same_span(basis, closed[kind], N)
    canonical = tA * dA + tB * dB + tC * (dA * dB + dC)
    return MorphismSpaceReport(D.dims, Dt.dims, ansatz_dim, canonical, same and ansatz_dim == canonical)
