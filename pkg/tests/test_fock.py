from fractions import Fraction

import pytest

from qgl11.fock import (
    A1,
    A2,
    C,
    EMPTY_MONO,
    FockState,
    FockVector,
    ModuleParams,
    base_site,
    basis_up_to,
    d_exponent,
    enumerate_basis,
    fermion_number_sign,
    identify_site,
    mono_add,
    mono_degree,
    pairing,
    relative_parity,
    vacuum,
    weight_eigenvalues,
)
from qgl11.scalars import ONE, ZERO, Scalar, qint, qnum, qpow

F = Fraction


# ---------------------------------------------------------------------------
# a-oscillator oracle for the pairing table.  The elementary relations are
# [a^i_n, a^j_{-n}] = (-1)^{i+1} delta_ij [n]^2 / n (i = 1, 2) and
# [c_n, c_{-n}] = [n]^2 / n; the A-basis is  A1_n = a1_n + a2_n,
# A2_n = (q^n + q^-n)/2 (a1_n - a2_n).

def _a_basis_coeffs(family, n):
    half = (qpow(n) + qpow(-n)) * F(1, 2)
    if family == A1:
        return (ONE, ONE, ZERO)
    if family == A2:
        return (half, -half, ZERO)
    return (ZERO, ZERO, ONE)


def pairing_oracle(fa, fb, n):
    xa = _a_basis_coeffs(fa, n)
    xb = _a_basis_coeffs(fb, n)
    unit = qint(n) * qint(n) / n
    signs = (1, -1, 1)
    total = ZERO
    for i in range(3):
        total = total + xa[i] * xb[i] * signs[i] * unit
    return total


def test_pairing_matches_a_basis_oracle_through_10():
    for n in range(1, 11):
        for fa in (A1, A2, C):
            for fb in (A1, A2, C):
                assert pairing(fa, fb, n) == pairing_oracle(fa, fb, n), (fa, fb, n)


def test_pairing_examples():
    assert pairing(C, C, 1) == ONE
    assert pairing(A1, A1, 3) == ZERO
    assert pairing(A1, A2, 1) == qpow(1) + qpow(-1)


def test_pairing_symmetry():
    for n in range(1, 11):
        for fa in (A1, A2, C):
            for fb in (A1, A2, C):
                assert pairing(fa, fb, n) == pairing(fb, fa, n)


# ---------------------------------------------------------------------------
# basis enumeration against the generating function prod (1-t^n)^-3

def _count_oracle(max_degree):
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for n in range(1, max_degree + 1):
        for _ in range(3):  # three families
            for d in range(n, max_degree + 1):
                coeffs[d] += coeffs[d - n]
    return coeffs


def test_enumerate_basis_counts():
    site = base_site(ModuleParams(0, 0))
    oracle = _count_oracle(8)
    for d in range(9):
        assert len(enumerate_basis(site, d)) == oracle[d]


def test_enumerate_basis_small():
    site = base_site(ModuleParams(F(1, 2), F(1, 3)))
    assert len(enumerate_basis(site, 0)) == 1
    assert len(enumerate_basis(site, 1)) == 3
    assert len(enumerate_basis(site, 3)) == 22


def test_monomials_unique_and_graded():
    site = base_site(ModuleParams(0, 0))
    seen = set()
    for st in basis_up_to(site, 5):
        assert st not in seen
        seen.add(st)
        assert st.degree() == mono_degree(st.mono)


# ---------------------------------------------------------------------------
# diagonal data

def test_d_exponent_vacuum_and_mode():
    params = ModuleParams(0, 0)
    v = vacuum(params)
    assert d_exponent(v) == 0
    st = FockState(v.site, mono_add(EMPTY_MONO, A1, 1))
    assert d_exponent(st) == 1


def test_d_exponent_base_site_prefactor():
    for alpha, beta in ((F(1, 2), F(1, 3)), (2, 0), (-1, F(1, 2))):
        params = ModuleParams(alpha, beta)
        e = d_exponent(vacuum(params))
        a, b = params.alpha, params.beta
        assert e == F(1, 2) * (-a) * (2 * b - a) + F(1, 2) * a * (a + 1)
        assert e == F(1, 2) * a * (2 * a - 2 * b + 1)


def test_d_exponent_site_offsets():
    params = ModuleParams(F(1, 2), F(1, 3))
    e0 = d_exponent(vacuum(params))
    for i in range(-6, 7):
        ei = d_exponent(vacuum(params, i=i))
        assert ei - e0 == F(i * i + i, 2)


def test_weights():
    params = ModuleParams(F(1, 2), F(1, 3))
    a, b = params.alpha, params.beta
    for i in (-1, 0, 2):
        st = vacuum(params, i=i)
        h1, h2 = weight_eigenvalues(st)
        assert h1 == -a
        assert h2 == 2 * b - a + 2 * i
    assert weight_eigenvalues(vacuum(ModuleParams(0, 0))) == (0, 0)
    h2a = weight_eigenvalues(vacuum(params, i=0))[1]
    h2b = weight_eigenvalues(vacuum(params, i=1))[1]
    assert h2b - h2a == 2


def test_identify_site():
    params = ModuleParams(F(1, 2), F(1, 3))
    assert identify_site(params, base_site(params, i=3, l=-2)) == (3, -2)
    off = base_site(params, 0, 0).shifted(F(1, 2), 0, 0)
    assert identify_site(params, off) is None


def test_fermion_number_sign():
    params = ModuleParams(0, 0)
    assert fermion_number_sign(params, base_site(params, 0, 0)) == ONE
    assert fermion_number_sign(params, base_site(params, 1, 0)) == -ONE
    assert fermion_number_sign(params, base_site(params, 1, 1)) == ONE
    podd = ModuleParams(3, 0)
    assert fermion_number_sign(podd, base_site(podd, 0, 0)) == -ONE
    pgen = ModuleParams(F(1, 2), 0)
    s = fermion_number_sign(pgen, base_site(pgen, 1, 0))
    assert s.phase == 1
    assert s == Scalar(-1) * Scalar.phase_unit()


def test_relative_parity():
    params = ModuleParams(F(1, 2), F(1, 3))
    st0 = vacuum(params)
    st1 = vacuum(params, i=1)
    assert relative_parity(params, st0) == 0
    assert relative_parity(params, st1) == 1
    with pytest.raises(ValueError):
        relative_parity(params, FockState(st0.site.shifted(0, 0, F(1, 2)), EMPTY_MONO))


def test_fockvector_arithmetic():
    params = ModuleParams(0, 0)
    v = vacuum(params)
    x = FockVector.unit(v, qnum(2)) + FockVector.unit(v, qnum(-2))
    assert x.is_zero()
    y = FockVector.unit(v).scaled(qint(2))
    assert y.coeff(v) == qint(2)
