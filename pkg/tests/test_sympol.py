from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kumcoh.sympol import (
    HeckeMatrix,
    PolarizationType,
    ScalarSp,
    compose,
    dual_type,
    identity_sp,
    orlov_f,
    parse_hecke_matrix,
    sp_witness,
    tilde,
    to_hecke_matrix,
)


def test_polarization_type():
    t = PolarizationType((2, 4))
    assert (t.g, t.degree, t.exponent) == (2, 64, 4)
    assert dual_type(t).d == (1, 2)
    with pytest.raises(ValueError):
        PolarizationType((2, 3))
    with pytest.raises(ValueError):
        PolarizationType(())


@given(st.integers(1, 40).flatmap(lambda d: st.tuples(st.just(1), st.sampled_from([k * d for k in range(1, 6)]))))
def test_dual_type_involution_for_principal_first_entry(d):
    t = PolarizationType(d)
    assert dual_type(dual_type(t)) == t
    assert dual_type(t).exponent == t.exponent


def test_symplectic_condition():
    assert not ScalarSp(2, 1, 1, 4, 3, 2).is_symplectic()
    assert ScalarSp(1, 1, 1, 2, 3, 2).is_symplectic()
    with pytest.raises(ValueError):
        ScalarSp(1, 0, 0, 1, 3, 2, "sideways")


def test_witness_examples():
    assert sp_witness(3, 2).coefficients == (1, 1, 1, 2)
    assert sp_witness(3, 3) is None
    # n = 2 is handled with effective modulus 1, so every e has a witness
    assert all(sp_witness(2, e) is not None for e in range(1, 31))


def test_witness_exists_iff_coprime():
    for n in range(3, 31):
        for e in range(1, 31):
            w = sp_witness(n, e)
            assert (w is not None) == (gcd(n, e) == 1)
            if w is not None:
                assert w.is_symplectic() and w.a1 == w.a3 == 1


def test_tilde_inverts_witnesses():
    for n in range(2, 31):
        for e in range(1, 31):
            w = sp_witness(n, e)
            if w is None:
                continue
            tw = tilde(w)
            assert tw.variant == "codual" and tilde(tw) == w
            ident = identity_sp(n, e)
            assert compose(tw, w) == ident and compose(w, tw) == ident


def test_compose_rejects_bad_pairs():
    w = sp_witness(3, 2)
    with pytest.raises(ValueError):
        compose(w, w)
    with pytest.raises(ValueError):
        compose(w, sp_witness(5, 2))


def _gamma0(level, steps):
    M = HeckeMatrix(1, 0, 0, 1, level)
    for upper, k in steps:
        M = M @ (HeckeMatrix(1, k, 0, 1, level) if upper else HeckeMatrix(1, 0, level * k, 1, level))
    return M


moves = st.lists(st.tuples(st.booleans(), st.integers(-3, 3)), max_size=6)


@given(n=st.integers(2, 7), e=st.integers(1, 6), s1=moves, s2=moves)
def test_hecke_is_multiplicative(n, e, s1, s2):
    level = (1 if n == 2 else n) * e
    A, B = _gamma0(level, s1), _gamma0(level, s2)
    f = ScalarSp(A.a, A.b, A.c // level, A.d, n, e, "auto")
    g = ScalarSp(B.a, B.b, B.c // level, B.d, n, e, "auto")
    assert f.is_symplectic() and g.is_symplectic()
    assert to_hecke_matrix(compose(g, f)) == to_hecke_matrix(g) @ to_hecke_matrix(f)
    assert to_hecke_matrix(compose(g, f)).is_member()


def test_to_hecke_rejects():
    with pytest.raises(ValueError):
        to_hecke_matrix(sp_witness(3, 2))
    with pytest.raises(ValueError):
        to_hecke_matrix(ScalarSp(2, 0, 0, 1, 3, 2, "auto"))


def test_parse_hecke_matrix():
    M = parse_hecke_matrix("1,2;6,13", 6)
    assert M.rows() == ((1, 2), (6, 13)) and M.is_member()
    assert not parse_hecke_matrix("1,2;3,7", 6).is_member()
    with pytest.raises(ValueError):
        parse_hecke_matrix("1,2,3", 6)


def test_orlov_f():
    f = orlov_f(3, 2)
    assert (f.n3, f.n4) == (1, 2)
    assert (orlov_f(5, 1).n3, orlov_f(5, 1).n4) == (0, 1)
    with pytest.raises(ValueError):
        orlov_f(5, 5)
    for n in range(2, 51):
        for e in range(1, 51):
            if gcd(n, e) == 1:
                f = orlov_f(n, e)
                assert f.n4 * e - f.n3 * n == 1
                if n > 2:
                    assert f.sp.is_symplectic()
