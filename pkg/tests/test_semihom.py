import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kumcoh.semihom import (
    StrictPartition,
    TorsionModel,
    all_projective_dims_even,
    f_lambda,
    family_element,
    g_lambda_formula,
    kernel_cardinality,
    ledger,
    random_invertible,
    shifted_tableaux,
    shifted_tableaux_count,
    strict_partitions,
)


@pytest.mark.parametrize("n", range(2, 13))
def test_ledger_identities(n):
    L = ledger(n)
    assert L.holds(), {k: v for k, v in L.identities().items() if not v}


def test_ledger_rejects_small_n():
    with pytest.raises(ValueError):
        ledger(1)


@pytest.mark.parametrize("n,e", [(3, 1), (3, 2), (5, 2), (5, 3)])
def test_default_kernel_cardinality(n, e):
    rep = kernel_cardinality(TorsionModel.default(n, e))
    assert rep.cardinality == n ** (4 * n)
    assert rep.matches


@pytest.mark.parametrize("n", [3, 5])
def test_random_lambda_kernel_and_family(n):
    rng = random.Random(n)
    for _ in range(5):
        model = TorsionModel(n, 2, random_invertible(n, rng))
        assert np.array_equal(model.Lam @ model.LamD % n, 2 * np.eye(4, dtype=np.int64) % n)
        assert kernel_cardinality(model).cardinality == n ** (4 * n)
        M = model.matrix()
        for _ in range(5):
            a = np.array([rng.randrange(n) for _ in range(4 * (n - 1))])
            alpha = np.array([rng.randrange(n) for _ in range(4)])
            assert not (M @ family_element(model, a, alpha) % n).any()


def test_torsion_model_rejects():
    with pytest.raises(ValueError):
        TorsionModel.default(4, 2)
    with pytest.raises(ValueError):
        TorsionModel(3, 1, np.zeros((4, 4), dtype=np.int64))


def test_strict_partitions():
    assert [p.parts for p in strict_partitions(5)] == [(5,), (4, 1), (3, 2)]
    assert strict_partitions(0) == []
    assert str(StrictPartition((4, 1))) == "(4,1)"
    with pytest.raises(ValueError):
        StrictPartition((2, 2))


def test_known_small_counts():
    assert g_lambda_formula((3, 2)) == 2
    assert g_lambda_formula((2, 1)) == 1
    assert f_lambda((2, 1)) == 1
    tabs = list(shifted_tableaux((3, 1)))
    assert tabs == [((1, 2, 3), (4,)), ((1, 2, 4), (3,))]


@pytest.mark.parametrize("n", range(1, 10))
def test_formula_matches_enumeration(n):
    for lam in strict_partitions(n):
        assert shifted_tableaux_count(lam) == g_lambda_formula(lam) == shifted_tableaux_count(lam, enumerate_all=False)


@given(st.integers(10, 22))
def test_formula_matches_corner_recursion(n):
    for lam in strict_partitions(n):
        assert shifted_tableaux_count(lam, enumerate_all=False) == g_lambda_formula(lam)


def test_projective_dims_even():
    for n in range(4, 15):
        v = all_projective_dims_even(n)
        assert v.all_even and not v.vacuous
    v3 = all_projective_dims_even(3)
    assert v3.vacuous and not v3.all_even
