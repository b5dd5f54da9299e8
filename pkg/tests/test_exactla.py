"""Exact linear algebra: spec examples plus sympy as an independent oracle."""

import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mat, q
from dvblab import exactla as la
from dvblab.exactla import LinMap, Space

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(0, max_rows))
    n = draw(st.integers(0, max_cols))
    return [[draw(small) for _ in range(n)] for _ in range(m)], n


def to_sympy(rows, n):
    return sympy.Matrix(len(rows), n, [x for r in rows for x in r])


# examples


def test_rank_examples():
    assert la.rank(mat([[1, 0], [0, 1]])) == 2
    assert la.rank(mat([[1, 2], [2, 4]])) == 1
    assert la.rank(LinMap.zero(Space(2), Space(3))) == 0


def test_kernel_examples():
    assert la.kernel_basis(mat([[1, 0]])) == [q(0, 1)]
    assert la.kernel_basis(mat([[1, 0], [0, 1]])) == []
    assert la.kernel_basis(mat([[1, 1]])) == [q(-1, 1)]


def test_right_inverse_examples():
    assert la.right_inverse(mat([[2]])).matrix == ((mpq(1, 2),),)
    assert la.right_inverse(mat([[1, 0]])).matrix == ((1,), (0,))
    assert la.right_inverse(mat([[1, 0], [0, 1]])) == LinMap.identity(Space(2))


def test_tensor_map_examples():
    assert la.tensor_map(mat([[1]]), mat([[1]])) == mat([[1]])
    assert la.tensor_map(mat([[2]]), mat([[3]])) == mat([[6]])
    block_swap = la.tensor_map(LinMap.identity(Space(2)), mat([[0, 1], [1, 0]]))
    assert block_swap.matrix == mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]).matrix


def test_contract_second_examples():
    # e_0 (x) f_1 in Q^2 (x) Q^2 sits at index 0*2 + 1
    assert la.contract_second(la.unit(4, 1), q(0, 1), 2) == q(1, 0)
    assert la.contract_second(la.zeros(4), q(1, 1), 2) == q(0, 0)
    t = q(1, 0, 0, 2)
    assert la.contract_second(t, q(1, 1), 2) == q(1, 2)


def test_contract_first_is_swap_then_second():
    t = q(1, 2, 3, 4, 5, 6)  # Q^2 (x) Q^3
    lam = q(1, -1)
    swapped = la.swap_map(Space(2), Space(3))(t)
    assert la.contract_first(t, lam, 3) == la.contract_second(swapped, lam, 3)
    assert la.contract_first(t, lam, 3) == q(-3, -3, -3)


def test_dual_map_examples():
    assert la.dual_map(LinMap.identity(Space(3))) == LinMap.identity(Space(3))
    assert la.dual_map(mat([[1, 2], [3, 4]])).matrix == mat([[1, 3], [2, 4]]).matrix


def test_inverse_raises_on_singular():
    import pytest
    with pytest.raises(ValueError):
        la.inverse(mat([[1, 2], [2, 4]]))


def test_json_round_trip():
    f = mat([[1, mpq(-2, 3)], [0, 5]])
    assert la.map_from_json(f.domain, f.codomain, f.to_json()) == f
    assert f.to_json() == [["1", "-2/3"], ["0", "5"]]


# properties against sympy


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(data):
    rows, n = data
    assert la.rank_of_rows([q(*r) for r in rows], n) == (to_sympy(rows, n).rank() if rows and n else 0)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_is_a_kernel_basis(data):
    rows, n = data
    basis = la.nullspace([q(*r) for r in rows], n)
    expected = n - (to_sympy(rows, n).rank() if rows and n else 0)
    assert len(basis) == expected
    assert la.span_rank(basis, n) == expected
    for v in basis:
        assert all(la.dot(q(*r), v) == 0 for r in rows)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_kronecker_matches_sympy(f, g):
    (fr, fn), (gr, gn) = f, g
    F = LinMap(Space(fn), Space(len(fr)), [q(*r) for r in fr])
    G = LinMap(Space(gn), Space(len(gr)), [q(*r) for r in gr])
    K = la.tensor_map(F, G)
    if fr and fn and gr and gn:
        expected = sympy.kronecker_product(to_sympy(fr, fn), to_sympy(gr, gn))
        assert [list(map(int, r)) for r in K.matrix] == expected.tolist()
    assert K.shape == (len(fr) * len(gr), fn * gn)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_right_inverse_is_a_section(m, extra, data):
    n = m + extra
    rows = [[data.draw(small) for _ in range(n)] for _ in range(m)]
    p = LinMap(Space(n), Space(m), [q(*r) for r in rows])
    if la.rank(p) < m:
        return
    s = la.right_inverse(p)
    assert p @ s == LinMap.identity(Space(m))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_tensor_contraction_is_bilinear_evaluation(nx, ny, data):
    x = q(*[data.draw(small) for _ in range(nx)])
    y = q(*[data.draw(small) for _ in range(ny)])
    lam = q(*[data.draw(small) for _ in range(ny)])
    mu = q(*[data.draw(small) for _ in range(nx)])
    t = la.tensor_vec(x, y)
    assert la.contract_second(t, lam, nx) == la.vscale(la.dot(y, lam), x)
    assert la.contract_first(t, mu, ny) == la.vscale(la.dot(x, mu), y)
