import random
from itertools import product

import numpy as np
import pytest

from kumcoh.cohomology import h_k_bar, is_coboundary
from kumcoh.gmodule import dual_standard_module, permutation_module, standard_module, trivial_module
from kumcoh.symgroup import symmetric_group
from kumcoh.torsors import (
    EquivariantTorsor,
    GGroup,
    GGroupHom,
    TableError,
    class_of_cocycle,
    cocycle_of,
    contracted_product,
    crossed_homomorphisms,
    has_fixed_point,
    invariants_form_pseudo_torsor,
    nonabelian_h1,
    pushforward_class,
    random_module_torsor,
    relabel,
    torsor_class,
    torsor_from_cocycle,
    trivial_torsor,
)


def module_groups():
    out = []
    for n in (2, 3):
        G = symmetric_group(n)
        mods = [standard_module(n, 2, G), standard_module(n, 4, G), dual_standard_module(n, 3, G),
                trivial_module(G, 4), trivial_module(G, 2, 2), permutation_module(n, 2, G)]
        out.extend(GGroup.from_module(M) for M in mods)
    return out


def s3_as_ggroup(G, conjugation: bool) -> GGroup:
    S3 = symmetric_group(3)
    T = S3.mul_table
    inv = S3.inverse_table
    if conjugation:
        # G = S3 acting on itself
        action = np.array([[T[T[g, a], inv[g]] for a in range(6)] for g in range(G.order)])
    else:
        action = np.tile(np.arange(6), (G.order, 1))
    return GGroup(G, T, 0, action)


def homs_up_to_conjugacy(G, A) -> int:
    """Count Hom(G, A) / A-conjugacy by brute force over all maps on generators."""
    gens = [G.index(g) for g in G.generators]
    homs = set()
    for images in product(range(A.order), repeat=len(gens)):
        phi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for s, im in zip(gens, images):
                    y = int(G.mul_table[x, s])
                    v = int(A.mul_table[phi[x], im])
                    if y in phi:
                        ok &= phi[y] == v
                    else:
                        phi[y] = v
                        nxt.append(y)
            frontier = nxt
        if ok and all(phi[int(G.mul_table[x, y])] == A.mul_table[phi[x], phi[y]]
                      for x in range(G.order) for y in range(G.order)):
            homs.add(tuple(phi[x] for x in range(G.order)))
    classes = set()
    for h in homs:
        classes.add(min(tuple(int(A.mul_table[A.mul_table[b, x], A.inverse_table[b]]) for x in h)
                        for b in range(A.order)))
    return len(classes)


@pytest.mark.parametrize("idx", range(12))
def test_abelian_h1_matches_bar(idx):
    A = module_groups()[idx]
    A.validate()
    assert len(nonabelian_h1(A)) == h_k_bar(A.module, 1).order


def test_trivial_action_counts_homs_up_to_conjugacy():
    G = symmetric_group(2)
    A = s3_as_ggroup(G, conjugation=False)
    A.validate()
    assert len(nonabelian_h1(A)) == homs_up_to_conjugacy(G, symmetric_group(3)) == 2


def test_conjugation_action_counts_homs_up_to_conjugacy():
    G = symmetric_group(3)
    A = s3_as_ggroup(G, conjugation=True)
    A.validate()
    assert len(nonabelian_h1(A)) == homs_up_to_conjugacy(G, G)


@pytest.mark.parametrize("conj", [False, True])
def test_fixed_point_iff_trivial_nonabelian(conj):
    G = symmetric_group(2 if not conj else 3)
    A = s3_as_ggroup(G, conj)
    rng = random.Random(0)
    for a in crossed_homomorphisms(A):
        T = torsor_from_cocycle(A, a)
        T.validate()
        T = relabel(T, rng.sample(range(T.size), T.size))
        assert has_fixed_point(T) == torsor_class(T).is_trivial
        assert torsor_class(T) == class_of_cocycle(A, a)
        assert invariants_form_pseudo_torsor(T)


def test_random_torsors_dictionary():
    rng = random.Random(11)
    groups = module_groups()
    for _ in range(100):
        A = rng.choice(groups)
        T, a = random_module_torsor(A, rng)
        cl = torsor_class(T)
        assert cl == torsor_class(T, rng.randrange(T.size))
        assert has_fixed_point(T) == cl.is_trivial == (is_coboundary(cocycle_of(A, a)) is not None)
        k = rng.randrange(A.module.modulus)
        gamma = GGroupHom.scalar(A, k)
        gamma.validate()
        assert torsor_class(contracted_product(T, gamma)) == pushforward_class(gamma, T)


def test_reduction_pushforward():
    G = symmetric_group(3)
    A = GGroup.from_module(standard_module(3, 4, G))
    B = GGroup.from_module(standard_module(3, 2, G))
    gamma = GGroupHom.reduction(A, B)
    gamma.validate()
    for a in crossed_homomorphisms(A):
        T = torsor_from_cocycle(A, a)
        assert torsor_class(contracted_product(T, gamma)) == pushforward_class(gamma, T)


def test_trivial_torsor():
    A = module_groups()[0]
    T = trivial_torsor(A)
    assert has_fixed_point(T) and torsor_class(T).is_trivial


def test_bad_tables_rejected():
    G = symmetric_group(2)
    A = GGroup.from_module(trivial_module(G, 3))
    bad = GGroup(G, A.mul, 0, np.array([[0, 1, 2], [0, 0, 2]]))
    with pytest.raises(TableError):
        bad.validate()
    T = trivial_torsor(A)
    broken = EquivariantTorsor(A, T.right, np.array([[0, 1, 2], [1, 1, 2]]))
    with pytest.raises(TableError):
        broken.validate()
    with pytest.raises(TableError):
        GGroupHom(A, A, [0, 1, 1]).validate()


def test_sign_torsor_example():
    G = symmetric_group(2)
    A = GGroup.from_module(standard_module(2, 4, G))
    classes = nonabelian_h1(A)
    assert len(classes) == 2
    nontrivial = next(c for c in classes if not c.is_trivial)
    a = nontrivial.canonical
    T = torsor_from_cocycle(A, a)
    assert not has_fixed_point(T)
    B = GGroup.from_module(standard_module(2, 2, G))
    gamma = GGroupHom.reduction(A, B)
    pushed = pushforward_class(gamma, T)
    assert pushed == torsor_class(contracted_product(T, gamma))
    reduced = [int(gamma.table[x]) for x in a]
    assert pushed.is_trivial == (is_coboundary(cocycle_of(B, reduced)) is not None)
