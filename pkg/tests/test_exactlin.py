from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kumcoh.exactlin import (
    FinAbGroup,
    IntMatrix,
    cokernel_structure,
    crt_decompose,
    format_matrix_text,
    homology_mod,
    integer_kernel,
    kernel_mod,
    parse_matrix_text,
    smith_normal_form,
    solve_mod,
)


def small_matrices(max_dim=3, lo=-6, hi=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c).map(
                lambda e: IntMatrix(r, c, tuple(e)))))


def mat_vec(A, x, m):
    return tuple(sum(A[i, j] * x[j] for j in range(A.cols)) % m for i in range(A.rows))


@pytest.mark.parametrize("rows,diag", [
    ([[2, 1], [1, 2]], [1, 3]),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[2, 4], [6, 8]], [2, 4]),
])
def test_snf_examples(rows, diag):
    assert smith_normal_form(IntMatrix.from_rows(rows)).diagonal == diag


def test_snf_empty():
    sf = smith_normal_form(IntMatrix.zeros(0, 3))
    assert sf.diagonal == []


@given(small_matrices(4, -20, 20))
def test_snf_contract(A):
    sf = smith_normal_form(A)
    assert sf.U @ A @ sf.V == sf.S
    assert abs(sf.U.det()) == 1 and abs(sf.V.det()) == 1
    assert sf.S.is_diagonal()
    d = sf.diagonal
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)


@given(small_matrices(3))
def test_snf_deterministic(A):
    assert smith_normal_form(A) == smith_normal_form(A)


def test_cokernel_examples():
    assert cokernel_structure(IntMatrix.from_rows([[1], [1], [1]])) == FinAbGroup((), 2)
    assert cokernel_structure(IntMatrix.from_rows([[2, 1], [1, 2]])) == FinAbGroup((3,))
    assert cokernel_structure(IntMatrix.zeros(2, 2)) == FinAbGroup((), 2)


@given(small_matrices(3))
def test_cokernel_order_is_product_of_divisors(A):
    G = cokernel_structure(A)
    if G.free_rank == 0:
        d = [x for x in smith_normal_form(A).diagonal if x]
        prod = 1
        for x in d:
            prod *= x
        assert G.order == prod


def test_kernel_mod_examples():
    gens, K = kernel_mod(IntMatrix.from_rows([[2]]), 4)
    assert K == FinAbGroup((2,)) and gens == [(2,)]
    gens, K = kernel_mod(IntMatrix.from_rows([[2, 1], [1, 2]]), 3)
    assert K == FinAbGroup((3,))
    assert mat_vec(IntMatrix.from_rows([[2, 1], [1, 2]]), gens[0], 3) == (0, 0)
    assert {tuple(k * x % 3 for x in gens[0]) for k in range(3)} == {(0, 0), (1, 1), (2, 2)}
    assert kernel_mod(IntMatrix.identity(3), 6)[1].is_trivial


def _span(gens, m, cols):
    seen = {tuple([0] * cols)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 6 // r).flatmap(
    lambda c: st.tuples(st.just(r), st.just(c), st.lists(st.integers(-7, 7), min_size=r * c, max_size=r * c)))),
    st.integers(2, 7))
def test_kernel_and_solve_against_enumeration(shape, m):
    r, c, entries = shape
    A = IntMatrix(r, c, tuple(entries))
    brute = {x for x in product(range(m), repeat=c) if not any(mat_vec(A, x, m))}
    gens, K = kernel_mod(A, m)
    assert K.order == len(brute)
    assert _span(gens, m, c) == brute
    image = {mat_vec(A, x, m) for x in product(range(m), repeat=c)}
    for b in product(range(m), repeat=r):
        x = solve_mod(A, b, m)
        if b in image:
            assert x is not None and mat_vec(A, x, m) == b
        else:
            assert x is None


def test_solve_mod_examples():
    assert solve_mod(IntMatrix.from_rows([[3]]), [1], 5) == (2,)
    assert solve_mod(IntMatrix.from_rows([[2]]), [1], 4) is None
    assert solve_mod(IntMatrix.identity(3), [1, 2, 3], 7) == (1, 2, 3)
    with pytest.raises(ValueError):
        solve_mod(IntMatrix.identity(2), [1], 5)


@pytest.mark.parametrize("m,parts", [(12, [4, 3]), (5, [5]), (360, [8, 9, 5])])
def test_crt(m, parts):
    assert crt_decompose(m) == parts


def test_integer_kernel():
    ker = integer_kernel(IntMatrix.from_rows([[1, 1, 1]]))
    assert len(ker) == 2
    assert all(sum(v) == 0 for v in ker)


def test_homology_mod_cyclic():
    # C_2 acting by -1 on Z/4: ker(1 + t) / im(t - 1) = (Z/4) / (2)
    norm = IntMatrix.from_rows([[0]])
    tm1 = IntMatrix.from_rows([[-2]])
    assert homology_mod(norm, tm1, 4).group == FinAbGroup((2,))


def test_fin_ab_group_normalizes():
    assert FinAbGroup.from_cyclic_orders([2, 3]) == FinAbGroup((6,))
    assert FinAbGroup.from_cyclic_orders([2, 4, 1]) == FinAbGroup((2, 4))
    assert str(FinAbGroup()) == "0"
    with pytest.raises(ValueError):
        FinAbGroup((4, 2))


def test_text_format_roundtrip():
    A = IntMatrix.from_rows([[1, -2, 3], [0, 4, 5]])
    assert parse_matrix_text(format_matrix_text(A)) == A
    with pytest.raises(ValueError):
        parse_matrix_text("2 2\n1 2\n")
