from fractions import Fraction

import pytest

from qgl11.algebra import CurrentAlgebra, currents, graded_bracket
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
    mono_add,
    vacuum,
)
from qgl11.kernels import (
    AffineForm,
    ExpKernel,
    KernelSum,
    ModeOffsetError,
    apply_kernelsum,
    boson_factor,
    build_kernel,
    compose_apply,
    extract_mode,
)
from qgl11.scalars import ONE, ZERO, Scalar, qint, qnum, qpow

F = Fraction
PARAMS = ModuleParams(F(1, 2), F(1, 3))


def _identity_kernel():
    return KernelSum.single(
        ExpKernel({}, {}, (F(0), F(0), F(0)), AffineForm(), AffineForm(),
                  AffineForm(), label="id")
    )


def test_identity_kernel_acts_trivially():
    v = FockVector.unit(vacuum(PARAMS))
    res = apply_kernelsum(PARAMS, _identity_kernel(), v, D=3)
    assert set(res) == {F(0)}
    assert res[F(0)] == v


def test_single_mode_exponential_expansion():
    # exp(z * A1_{-1}) on the vacuum: degree-k term is (A1_{-1})^k / k!
    k = ExpKernel(
        {A1: lambda n: ONE if n == 1 else ZERO}, {},
        (F(0), F(0), F(0)), AffineForm(), AffineForm(), AffineForm(),
        label="exp(zA1)",
    )
    v = FockVector.unit(vacuum(PARAMS))
    res = apply_kernelsum(PARAMS, KernelSum.single(k), v, D=2)
    st1 = FockState(vacuum(PARAMS).site, mono_add(EMPTY_MONO, A1, 1))
    st2 = FockState(vacuum(PARAMS).site, mono_add(mono_add(EMPTY_MONO, A1, 1), A1, 1))
    assert res[F(1)].coeff(st1) == ONE
    assert res[F(2)].coeff(st2) == qnum(F(1, 2))
    assert F(3) not in res


def test_single_wick_contraction():
    # exp(z^-1 A1_1) on A2_{-1}|0>: one contraction with pairing(A1,A2,1)
    k = ExpKernel(
        {}, {A1: lambda n: ONE if n == 1 else ZERO},
        (F(0), F(0), F(0)), AffineForm(), AffineForm(), AffineForm(),
        label="exp(A1_1/z)",
    )
    st = FockState(vacuum(PARAMS).site, mono_add(EMPTY_MONO, A2, 1))
    res = apply_kernelsum(PARAMS, KernelSum.single(k), FockVector.unit(st), D=1)
    out = res[F(-1)]
    assert out.coeff(vacuum(PARAMS)) == qpow(1) + qpow(-1)


def test_zero_mode_shift_composition():
    cat = currents()
    v = FockVector.unit(vacuum(PARAMS))
    alg = CurrentAlgebra(PARAMS)
    once = alg.x_mode(+1, 0)(v)
    twice = alg.x_mode(+1, -1)(once)
    for st in twice.terms:
        # X+ shifts by Q_{A1} + Q_c twice: (lam1,lam2,lam3) += (2,-2,2)
        assert st.site.lam1 == vacuum(PARAMS).site.lam1 + 2
        assert st.site.lam2 == vacuum(PARAMS).site.lam2 - 2
        assert st.site.lam3 == vacuum(PARAMS).site.lam3 + 2


def test_mode_extraction_error_off_lattice():
    # xi has z-form -c_0; at lam3 = 1/2 the required offset is fractional
    alg = CurrentAlgebra(PARAMS)
    st = vacuum(PARAMS)  # lam3 = alpha = 1/2
    with pytest.raises(ModeOffsetError):
        alg.xi_mode(0)(FockVector.unit(st))


def test_eta_xi_clifford_relations():
    params = ModuleParams(0, F(1, 3))
    alg = CurrentAlgebra(params)
    states = basis_up_to(base_site(params), 3)
    for m in (-1, 0, 1):
        for n in (-1, 0, 1):
            eta_m, eta_n = alg.eta_mode(m), alg.eta_mode(n)
            xi_m, xi_n = alg.xi_mode(m), alg.xi_mode(n)
            for st in states:
                v = FockVector.unit(st)
                acomm = xi_m(eta_n(v)) + eta_n(xi_m(v))
                expect = v if m + n == 0 else FockVector()
                assert acomm == expect, (m, n, st)
                assert (eta_m(eta_n(v)) + eta_n(eta_m(v))).is_zero()
                assert (xi_m(xi_n(v)) + xi_n(xi_m(v))).is_zero()


def test_worked_zero_mode_bracket():
    # [X+_0, X-_0] on a site vacuum equals (q^-a - q^a)/(q - q^-1) vacuum
    for alpha, beta in ((F(1, 2), F(1, 3)), (F(1, 3), F(1, 5))):
        params = ModuleParams(alpha, beta)
        alg = CurrentAlgebra(params)
        v = FockVector.unit(vacuum(params))
        br = graded_bracket(alg.x_mode(+1, 0), alg.x_mode(-1, 0))
        got = br(v)
        expect = v.scaled(
            (qpow(-alpha) - qpow(alpha)) / (qpow(1) - qpow(-1))
        )
        assert got == expect


def test_compose_apply_identity_and_fermions():
    params = ModuleParams(0, F(1, 3))
    v = FockVector.unit(vacuum(params))
    ident = _identity_kernel()
    res = compose_apply(params, [ident, ident], v, D=2, D_int=2,
                        windows=[(0, 0), (0, 0)])
    assert res == {(F(0), F(0)): v}

    # eta(z1) xi(z2) + xi(z2)... anticommutator via double mode extraction:
    # {xi_m, eta_n} = delta_{m+n,0} on the vacuum for |m|, |n| <= 2
    cat = currents()
    alg = CurrentAlgebra(params)
    for m in (-2, -1, 0, 1, 2):
        for n in (-2, -1, 0, 1, 2):
            a = alg.xi_mode(m)(alg.eta_mode(n)(v)) + alg.eta_mode(n)(alg.xi_mode(m)(v))
            assert a == (v if m + n == 0 else FockVector()), (m, n)


def test_xplus_anticommutator_vanishes_via_modes():
    params = ModuleParams(0, F(1, 3))
    alg = CurrentAlgebra(params)
    states = basis_up_to(base_site(params), 2)
    for n in (-2, -1, 0, 1, 2):
        for m in (-2, -1, 0, 1, 2):
            xn, xm = alg.x_mode(+1, n), alg.x_mode(+1, m)
            for st in states:
                v = FockVector.unit(st)
                assert (xn(xm(v)) + xm(xn(v))).is_zero(), (n, m, st)


def test_truncation_stability_of_apply():
    # coefficients inside a window do not move when D grows
    params = ModuleParams(F(1, 2), F(1, 3))
    cat = currents()
    st = FockState(base_site(params), mono_add(EMPTY_MONO, C, 2))
    v = FockVector.unit(st)
    r1 = apply_kernelsum(params, cat.x_plus, v, D=4)
    r2 = apply_kernelsum(params, cat.x_plus, v, D=6)
    for e, fv in r1.items():
        for s, c in fv.terms.items():
            assert r2[e].coeff(s) == c


def test_degree_bookkeeping():
    params = ModuleParams(F(1, 2), F(1, 3))
    cat = currents()
    st = FockState(base_site(params), mono_add(EMPTY_MONO, A2, 1))
    v = FockVector.unit(st)
    res = apply_kernelsum(params, cat.x_plus, v, D=4)
    zf = cat.x_plus.terms[0][2].z_form.value(st.site)
    for e, fv in res.items():
        for s, c in fv.terms.items():
            assert e == zf + (s.degree() - st.degree())
