"""Vector-valued bilinear pairings stored as three-index rational arrays."""

from __future__ import annotations

from .. import exactla as la
from ..exactla import ZERO, Space, format_scalar, rank_of_rows


class DegenerateSide(ValueError):
    """A side bundle is zero while the rest of the sequence is not, so no nondegenerate dual exists."""


class ValuedPairing:
    """Bilinear map ``left x right -> value`` with ``form[l][r][w]`` on basis vectors."""

    def __init__(self, left: Space, right: Space, value: Space, form, left_seq=None, right_seq=None):
        self.left, self.right, self.value = left, right, value
        self.form = tuple(tuple(tuple(la.scalar(x) for x in cell) for cell in row) for row in form)
        if len(self.form) != left.dim or any(len(row) != right.dim for row in self.form):
            raise la.DimensionMismatch("pairing array does not match %d x %d" % (left.dim, right.dim))
        if any(len(cell) != value.dim for row in self.form for cell in row):
            raise la.DimensionMismatch("pairing values do not lie in a space of dim %d" % value.dim)
        self.left_seq, self.right_seq = left_seq, right_seq

    @classmethod
    def from_function(cls, left: Space, right: Space, value: Space, fn, **seqs) -> "ValuedPairing":
        form = [[tuple(fn(x, y)) for y in right.basis()] for x in left.basis()]
        return cls(left, right, value, form, **seqs)

    def __call__(self, x, y) -> tuple:
        out = [ZERO] * self.value.dim
        for xl, row in zip(x, self.form):
            if not xl:
                continue
            for yr, cell in zip(y, row):
                if not yr:
                    continue
                f = xl * yr
                for w, c in enumerate(cell):
                    if c:
                        out[w] += f * c
        return tuple(out)

    def left_kernel_dim(self) -> int:
        rows = [tuple(self.form[l][r][w] for l in range(self.left.dim))
                for r in range(self.right.dim) for w in range(self.value.dim)]
        return self.left.dim - (rank_of_rows(rows, self.left.dim) if rows else 0)

    def right_kernel_dim(self) -> int:
        rows = [tuple(self.form[l][r][w] for r in range(self.right.dim))
                for l in range(self.left.dim) for w in range(self.value.dim)]
        return self.right.dim - (rank_of_rows(rows, self.right.dim) if rows else 0)

    def is_nondegenerate(self) -> bool:
        return self.left_kernel_dim() == 0 and self.right_kernel_dim() == 0

    def agrees_with(self, fn, rng, trials: int = 5) -> bool:
        """Spot-check that ``fn`` and the stored form agree (bilinearity of ``fn`` on random inputs)."""
        from ..sampling import random_vector
        for _ in range(trials):
            x = random_vector(rng, self.left.dim)
            y = random_vector(rng, self.right.dim)
            if tuple(fn(x, y)) != self(x, y):
                return False
        return True

    def transported(self, left_map=None, right_map=None) -> "ValuedPairing":
        """Pull back along linear maps into the left/right spaces."""
        L = left_map.domain if left_map is not None else self.left
        R = right_map.domain if right_map is not None else self.right
        lf = left_map if left_map is not None else la.LinMap.identity(self.left)
        rf = right_map if right_map is not None else la.LinMap.identity(self.right)
        return ValuedPairing.from_function(L, R, self.value, lambda x, y: self(lf(x), rf(y)))

    def matrix(self, w: int = 0) -> list:
        return [[self.form[l][r][w] for r in range(self.right.dim)] for l in range(self.left.dim)]

    def __eq__(self, other):
        return isinstance(other, ValuedPairing) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def to_json(self) -> dict:
        return {
            "value": self.value.label,
            "dims": [self.left.dim, self.right.dim, self.value.dim],
            "form": [[[format_scalar(c) for c in cell] for cell in row] for row in self.form],
        }
