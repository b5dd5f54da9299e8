"""
Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq`` rationals and vectors are tuples of them.
A :class:`LinMap` stores a dense matrix whose column ``j`` is the image
of the ``j``-th standard basis vector of its domain.  Tensor products use the row-major convention:
``e_i (x) f_j`` has index ``i * dim(Y) + j`` in ``X (x) Y``.

Elimination always picks the leftmost nonzero pivot, so kernels and
right inverses are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Scalar = mpq
Vec = tuple  # tuple of mpq

ZERO = mpq(0)
ONE = mpq(1)


class NotSurjective(ValueError):
    pass


class NotInjective(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# scalars and vectors


def scalar(x) -> mpq:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if type(x) is mpq:
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars: %r" % (x,))
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def format_scalar(x) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)


def vec(*entries) -> Vec:
    if len(entries) == 1 and not isinstance(entries[0], (int, Fraction, str, mpq)):
        entries = tuple(entries[0])
    return tuple(scalar(x) for x in entries)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, k: int) -> Vec:
    return tuple(ONE if i == k else ZERO for i in range(n))


def vadd(x: Vec, y: Vec) -> Vec:
    if len(x) != len(y):
        raise DimensionMismatch("vector lengths %d and %d" % (len(x), len(y)))
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vec, y: Vec) -> Vec:
    if len(x) != len(y):
        raise DimensionMismatch("vector lengths %d and %d" % (len(x), len(y)))
    return tuple(a - b for a, b in zip(x, y))


def vscale(r, x: Vec) -> Vec:
    r = scalar(r)
    return tuple(r * a for a in x)


def vcomb(r, x: Vec, y: Vec) -> Vec:
    """``r*x + y``."""
    r = scalar(r)
    if len(x) != len(y):
        raise DimensionMismatch("vector lengths %d and %d" % (len(x), len(y)))
    return tuple(r * a + b for a, b in zip(x, y))


def dot(x: Vec, y: Vec) -> mpq:
    if len(x) != len(y):
        raise DimensionMismatch("vector lengths %d and %d" % (len(x), len(y)))
    return sum((a * b for a, b in zip(x, y)), ZERO)


def is_zero(x: Vec) -> bool:
    return all(a == 0 for a in x)


def concat(*parts: Vec) -> Vec:
    out: tuple = ()
    for p in parts:
        out += tuple(p)
    return out


def tensor_vec(x: Vec, y: Vec) -> Vec:
    """Row-major Kronecker product of two vectors."""
    return tuple(a * b for a in x for b in y)


# --------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    """A finite-dimensional rational vector space with its standard basis.

    Equality compares ``dim`` and ``label``; ``factors`` records a tensor
    decomposition when the space was built by :meth:`tensor`.
    """

    dim: int
    label: str = "V"
    factors: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError("dimension must be a nonnegative integer, got %r" % (self.dim,))

    def zero(self) -> Vec:
        return zeros(self.dim)

    def basis(self) -> list[Vec]:
        return [unit(self.dim, k) for k in range(self.dim)]

    def dual(self) -> "Space":
        return Space(self.dim, self.label + "*")

    def tensor(self, other: "Space") -> "Space":
        return Space(self.dim * other.dim, "%s⊗%s" % (self.label, other.label), (self, other))

    def oplus(self, other: "Space") -> "Space":
        return Space(self.dim + other.dim, "%s⊕%s" % (self.label, other.label))

    def relabel(self, label: str) -> "Space":
        return Space(self.dim, label, self.factors)

    def check(self, v: Vec) -> Vec:
        if len(v) != self.dim:
            raise DimensionMismatch(
                "vector of length %d is not in %s (dim %d)" % (len(v), self.label, self.dim))
        return v


# --------------------------------------------------------------------------
# linear maps


class LinMap:
    """A linear map between two spaces, stored as a dense rational matrix."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Space, codomain: Space, matrix: Iterable[Iterable]):
        rows = tuple(tuple(scalar(x) for x in row) for row in matrix)
        if len(rows) != codomain.dim:
            raise DimensionMismatch(
                "matrix has %d rows, codomain %s has dim %d"
                % (len(rows), codomain.label, codomain.dim))
        for row in rows:
            if len(row) != domain.dim:
                raise DimensionMismatch(
                    "matrix row of length %d, domain %s has dim %d"
                    % (len(row), domain.label, domain.dim))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", rows)

    def __setattr__(self, name, value):
        raise AttributeError("LinMap is immutable")

    # constructors

    @classmethod
    def identity(cls, space: Space) -> "LinMap":
        n = space.dim
        return cls(space, space, [unit(n, i) for i in range(n)])

    @classmethod
    def zero(cls, domain: Space, codomain: Space) -> "LinMap":
        return cls(domain, codomain, [zeros(domain.dim) for _ in range(codomain.dim)])

    @classmethod
    def from_columns(cls, domain: Space, codomain: Space, columns: Sequence[Vec]) -> "LinMap":
        if len(columns) != domain.dim:
            raise DimensionMismatch("%d columns for domain of dim %d" % (len(columns), domain.dim))
        rows = [[columns[j][i] for j in range(domain.dim)] for i in range(codomain.dim)]
        return cls(domain, codomain, rows)

    @classmethod
    def from_function(cls, domain: Space, codomain: Space, fn) -> "LinMap":
        """Matrix of ``fn`` evaluated on the standard basis (``fn`` must be linear)."""
        return cls.from_columns(domain, codomain, [codomain.check(tuple(fn(e))) for e in domain.basis()])

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.codomain.dim, self.domain.dim)

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.matrix)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.domain.dim)]

    def __call__(self, v: Vec) -> Vec:
        if len(v) != self.domain.dim:
            raise DimensionMismatch(
                "cannot apply map from %s (dim %d) to vector of length %d"
                % (self.domain.label, self.domain.dim, len(v)))
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self.matrix)

    # algebra

    def __matmul__(self, other: "LinMap") -> "LinMap":
        """Composition ``self o other``."""
        if other.codomain.dim != self.domain.dim:
            raise DimensionMismatch(
                "cannot compose %s -> %s after %s -> %s"
                % (self.domain.label, self.codomain.label, other.domain.label, other.codomain.label))
        cols = other.columns()
        return LinMap.from_columns(other.domain, self.codomain, [self(c) for c in cols])

    def _check_same_shape(self, other: "LinMap"):
        if self.shape != other.shape:
            raise DimensionMismatch("shapes %s and %s differ" % (self.shape, other.shape))

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same_shape(other)
        return LinMap(self.domain, self.codomain,
                      [vadd(r, s) for r, s in zip(self.matrix, other.matrix)])

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_same_shape(other)
        return LinMap(self.domain, self.codomain,
                      [vsub(r, s) for r, s in zip(self.matrix, other.matrix)])

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def scale(self, r) -> "LinMap":
        return LinMap(self.domain, self.codomain, [vscale(r, row) for row in self.matrix])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.domain.dim == other.domain.dim
                and self.codomain.dim == other.codomain.dim
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain.dim, self.codomain.dim, self.matrix))

    def is_zero(self) -> bool:
        return all(is_zero(row) for row in self.matrix)

    def with_spaces(self, domain: Space | None = None, codomain: Space | None = None) -> "LinMap":
        """Same matrix, relabelled domain/codomain (dims must agree)."""
        return LinMap(domain or self.domain, codomain or self.codomain, self.matrix)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.matrix)
        return "LinMap(%s -> %s, [%s])" % (self.domain.label, self.codomain.label, body)

    def to_json(self) -> list[list[str]]:
        return matrix_to_json(self.matrix)


# --------------------------------------------------------------------------
# elimination


def rref(rows: Sequence[Sequence], ncols: int | None = None, pivot_limit: int | None = None):
    """Reduced row echelon form with leftmost-pivot selection.

    Only columns ``< pivot_limit`` may hold pivots (used for augmented
    systems).  Returns ``(reduced_rows, pivot_columns)``; zero rows are
    dropped.
    """
    m = [list(map(scalar, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if pivot_limit is None:
        pivot_limit = ncols
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(pivot_limit):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if k is None:
            continue
        if k != r:
            m[r], m[k] = m[k], m[r]
        row = m[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            row = m[r] = [x * inv if x else x for x in row]
        nz = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f == 0:
                continue
            other = m[i]
            for j in nz:
                other[j] -= f * row[j]
        pivots.append(c)
        r += 1
    reduced = [tuple(row) for row in m[:r]]
    # rows below r are zero in the pivot region; keep nonzero tails for augmented use
    tail = [tuple(row) for row in m[r:] if any(row)]
    return reduced + tail, pivots


def rank_of_rows(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def rank(f: LinMap) -> int:
    """Rank by exact elimination."""
    if f.codomain.dim == 0 or f.domain.dim == 0:
        return 0
    return rank_of_rows(f.matrix, f.domain.dim)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Kernel basis of the row system: free variables set to 1 one at a time, ascending."""
    reduced, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def kernel_basis(f: LinMap) -> list[Vec]:
    """Deterministic basis of ``ker f``."""
    if f.codomain.dim == 0:
        return f.domain.basis()
    return nullspace(f.matrix, f.domain.dim)


def solve(rows: Sequence[Sequence], rhs: Vec, ncols: int) -> Vec | None:
    """One solution of ``M x = rhs`` with free variables zeroed, or None if inconsistent."""
    aug = [tuple(r) + (scalar(b),) for r, b in zip(rows, rhs)]
    if not aug:
        return zeros(ncols)
    reduced, pivots = rref(aug, ncols + 1, pivot_limit=ncols)
    for row in reduced[len(pivots):]:
        if row[ncols] != 0:
            return None
    x = [ZERO] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def right_inverse(p: LinMap) -> LinMap:
    """A section ``s`` with ``p o s = Id``; free variables are set to zero."""
    n, m = p.domain.dim, p.codomain.dim
    if rank(p) != m:
        raise NotSurjective("map %s -> %s has rank %d < %d" % (p.domain.label, p.codomain.label, rank(p), m))
    if m == 0:
        return LinMap.zero(p.codomain, p.domain)
    aug = [tuple(row) + unit(m, i) for i, row in enumerate(p.matrix)]
    reduced, pivots = rref(aug, n + m, pivot_limit=n)
    cols = []
    for t in range(m):
        x = [ZERO] * n
        for row, pc in zip(reduced, pivots):
            x[pc] = row[n + t]
        cols.append(tuple(x))
    return LinMap.from_columns(p.codomain, p.domain, cols)


def left_inverse(e: LinMap) -> LinMap:
    """A retraction ``r`` with ``r o e = Id`` (dual of a right inverse of the dual)."""
    if rank(e) != e.domain.dim:
        raise NotInjective("map %s -> %s is not injective" % (e.domain.label, e.codomain.label))
    s = right_inverse(dual_map(e))
    return LinMap(e.codomain, e.domain, transpose_rows(s.matrix, e.domain.dim))


def inverse(f: LinMap) -> LinMap:
    if f.domain.dim != f.codomain.dim or rank(f) != f.domain.dim:
        raise ValueError("map %s -> %s is not invertible" % (f.domain.label, f.codomain.label))
    return right_inverse(f)


def is_invertible(f: LinMap) -> bool:
    return f.domain.dim == f.codomain.dim and rank(f) == f.domain.dim


def coordinates(basis: Sequence[Vec], v: Vec) -> Vec | None:
    """Coefficients ``y`` with ``sum y_k basis_k = v``, or None when ``v`` is outside the span."""
    n = len(v)
    rows = [tuple(b[i] for b in basis) for i in range(n)]
    return solve(rows, v, len(basis))


def span_rank(vectors: Sequence[Vec], dim: int) -> int:
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return rank_of_rows(vectors, dim)


def same_span(first: Sequence[Vec], second: Sequence[Vec], dim: int) -> bool:
    """Two families span the same subspace (rank test of the combined family)."""
    r1, r2 = span_rank(first, dim), span_rank(second, dim)
    return r1 == r2 == span_rank(list(first) + list(second), dim)


def transpose_rows(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    return [tuple(r[j] for r in rows) for j in range(ncols)]


# --------------------------------------------------------------------------
# duals, tensors, contractions


def dual_map(f: LinMap) -> LinMap:
    """Transpose, as a map between the dual spaces."""
    return LinMap(f.codomain.dual(), f.domain.dual(), transpose_rows(f.matrix, f.domain.dim))


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    """Kronecker product ``f (x) g`` under the row-major convention."""
    dom = f.domain.tensor(g.domain)
    cod = f.codomain.tensor(g.codomain)
    rows = []
    for frow in f.matrix:
        for grow in g.matrix:
            rows.append(tuple(a * b for a in frow for b in grow))
    return LinMap(dom, cod, rows)


def swap_map(X: Space, Y: Space) -> LinMap:
    """The canonical flip ``X (x) Y -> Y (x) X``."""
    dom = X.tensor(Y)
    cod = Y.tensor(X)
    n = dom.dim
    cols = []
    for i in range(X.dim):
        for j in range(Y.dim):
            cols.append(unit(n, j * X.dim + i))
    return LinMap.from_columns(dom, cod, cols)


def contract_second(t: Vec, lam: Vec, left_dim: int) -> Vec:
    """``(Id_X (x) lam)(t)`` for ``t`` in ``X (x) Y`` and ``lam`` in ``Y*``."""
    k = len(lam)
    if len(t) != left_dim * k:
        raise DimensionMismatch("tensor of length %d does not split as %d x %d" % (len(t), left_dim, k))
    return tuple(sum((t[i * k + j] * lam[j] for j in range(k)), ZERO) for i in range(left_dim))


def contract_first(t: Vec, lam: Vec, right_dim: int) -> Vec:
    """Pair ``lam`` in ``X*`` with the first slot of ``t`` in ``X (x) Y``.

    Computed as :func:`contract_second` after the explicit swap ``X (x) Y -> Y (x) X``.
    """
    X = Space(len(lam), "X")
    Y = Space(right_dim, "Y")
    return contract_second(swap_map(X, Y)(t), lam, right_dim)


def direct_sum_maps(f: LinMap, g: LinMap) -> LinMap:
    """Block-diagonal ``f (+) g``."""
    dom = f.domain.oplus(g.domain)
    cod = f.codomain.oplus(g.codomain)
    rows = [tuple(r) + zeros(g.domain.dim) for r in f.matrix]
    rows += [zeros(f.domain.dim) + tuple(r) for r in g.matrix]
    return LinMap(dom, cod, rows)


def hstack(domain: Space, codomain: Space, blocks: Sequence[LinMap]) -> LinMap:
    """``[f_1 | f_2 | ...]`` out of a direct sum of the blocks' domains."""
    rows = []
    for i in range(codomain.dim):
        row: tuple = ()
        for b in blocks:
            row += b.matrix[i]
        rows.append(row)
    return LinMap(domain, codomain, rows)


def inclusion(sub: Space, total: Space, offset: int) -> LinMap:
    return LinMap.from_columns(sub, total, [unit(total.dim, offset + k) for k in range(sub.dim)])


def projection(total: Space, sub: Space, offset: int) -> LinMap:
    return LinMap(total, sub, [unit(total.dim, offset + k) for k in range(sub.dim)])


# --------------------------------------------------------------------------
# serialization


def matrix_to_json(rows: Sequence[Sequence]) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in rows]


def matrix_from_json(data) -> list[tuple]:
    if not isinstance(data, list):
        raise ValueError("matrix must be a list of rows")
    out = []
    for row in data:
        if not isinstance(row, list):
            raise ValueError("matrix row must be a list")
        out.append(tuple(scalar(x) for x in row))
    return out


def vector_to_json(v: Vec) -> list[str]:
    return [format_scalar(x) for x in v]


def vector_from_json(data) -> Vec:
    if not isinstance(data, list):
        raise ValueError("vector must be a list")
    return tuple(scalar(x) for x in data)


def map_from_json(domain: Space, codomain: Space, data) -> LinMap:
    rows = matrix_from_json(data)
    if codomain.dim == 0 and rows == []:
        return LinMap.zero(domain, codomain)
    return LinMap(domain, codomain, rows)
