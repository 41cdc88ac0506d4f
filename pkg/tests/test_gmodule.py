from itertools import product
from math import gcd

import numpy as np
import pytest

from kumcoh.exactlin import IntMatrix
from kumcoh.gmodule import (
    MODULE_KEYS,
    brute_force_hom_count,
    canonical_phi0,
    diagonal_map,
    dual_isogeny_phihat0,
    dual_standard_module,
    fixed_points,
    hom_equivariant,
    induced_trivial_module,
    module_by_key,
    permutation_module,
    standard_inclusion_ses,
    standard_module,
    summation_map,
    tensor_sequence_modules,
    trivial_module,
)
from kumcoh.symgroup import sylow_subgroup, symmetric_group


def brute_fixed_count(M):
    m = M.modulus
    gens = M.generator_actions()
    count = 0
    for v in product(range(m), repeat=M.rank):
        x = np.array(v)
        if all(not ((A @ x - x) % m).any() for A in gens):
            count += 1
    return count


@pytest.mark.parametrize("key", MODULE_KEYS)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_modules_are_homomorphisms(key, n):
    assert module_by_key(key, n, 3).check_homomorphism()


def test_unknown_key():
    with pytest.raises(ValueError):
        module_by_key("nope", 3, 2)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 6) for m in range(2, 7) if m ** (n - 1) <= 5000])
def test_fixed_points_against_enumeration(n, m):
    for M in (standard_module(n, m), dual_standard_module(n, m)):
        assert fixed_points(M)[0].order == brute_fixed_count(M)


def test_h0_law_full_range():
    for n in range(2, 8):
        for m in range(2, 13):
            std = fixed_points(standard_module(n, m))[0]
            dual = fixed_points(dual_standard_module(n, m))[0]
            assert std.invariants == ((gcd(n, m),) if gcd(n, m) > 1 else ())
            if n >= 3:
                assert dual.order == 1
            else:
                assert dual.order == gcd(2, m)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phi0_and_dual_isogeny(n):
    G = symmetric_group(n)
    phi = canonical_phi0(n, 0, G)
    hat = dual_isogeny_phihat0(n, 0, G)
    assert phi.is_equivariant(G.elements) and hat.is_equivariant(G.elements)
    assert abs(IntMatrix.from_rows(phi.matrix.tolist()).det()) == n
    nI = n * np.eye(n - 1, dtype=np.int64)
    assert np.array_equal(phi.matrix @ hat.matrix, nI)
    assert np.array_equal(hat.matrix @ phi.matrix, nI)


def test_phi0_factors_through_permutation_module():
    n = 4
    ses = standard_inclusion_ses(n, 0)
    inc = ses.inc.matrix
    proj = np.hstack([np.eye(n - 1, dtype=np.int64), np.zeros((n - 1, 1), dtype=np.int64)])
    # [e_n] = -(sum of the others) in the dual standard module
    proj[:, -1] = -1
    assert np.array_equal(proj @ inc, canonical_phi0(n).matrix)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 4), (4, 3)])
def test_hom_against_brute_force(n, m):
    mods = [standard_module(n, m), dual_standard_module(n, m), trivial_module(symmetric_group(n), m)]
    for M in mods:
        for N in mods:
            if M.rank * N.rank > 9 or m ** (M.rank * N.rank) > 300_000:
                continue
            maps, group = hom_equivariant(M, N)
            assert all(f.is_equivariant() for f in maps)
            assert group.order == brute_force_hom_count(M, N)


def test_hom_integral_lattices_rank_one():
    for n in (3, 4, 5):
        std, dual = standard_module(n), dual_standard_module(n)
        for M, N in ((std, std), (dual, dual), (std, dual), (dual, std)):
            assert hom_equivariant(M, N)[1].free_rank == 1


def test_hom_rejects_mixed_rings():
    with pytest.raises(ValueError):
        hom_equivariant(standard_module(3, 2), standard_module(3, 3))


@pytest.mark.parametrize("n,m", [(3, 2), (4, 3), (4, 4), (5, 2)])
def test_inclusion_ses_exact(n, m):
    assert standard_inclusion_ses(n, m).validate()


def test_diagonal_and_summation_need_divisibility():
    with pytest.raises(ValueError):
        diagonal_map(5, 2)
    with pytest.raises(ValueError):
        summation_map(5, 3)
    assert diagonal_map(4, 2).is_equivariant() and summation_map(6, 3).is_equivariant()


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_tensor_sequence(n, m):
    out = tensor_sequence_modules(n, m)
    assert out["order"] == gcd(n, m)
    assert (out["torsion"] is None) == (gcd(n, m) == 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_induced_trivial_is_permutation_module(n):
    ind = induced_trivial_module(n, 3)
    M = ind.module
    assert M.rank == n and M.check_homomorphism()
    # same character as the permutation module, hence same fixed points
    P = permutation_module(n, 3)
    for g in symmetric_group(n).elements:
        assert np.trace(M.action(g)) == np.trace(P.action(g))


def test_restrict_and_reduce():
    M = standard_module(4, 12)
    P = sylow_subgroup(4, 2)
    assert M.restrict(P).group.order == 8
    assert M.reduce(4).modulus == 4
    with pytest.raises(ValueError):
        M.reduce(5)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_phihat0_explicit_image(n):
    # image of [e_1] is (n-1, -1, ..., -1) in ambient coordinates
    col = dual_isogeny_phihat0(n).matrix[:, 0]
    ambient = np.append(col, -col.sum())
    assert ambient.tolist() == [n - 1] + [-1] * (n - 1)
