"""Kernel constructions, derivative operators, and their structural checks.

The rate-based comparisons against the printed main terms live in the verify
suites; here we pin exact values, degrees, and the small derivative facts.
"""

import numpy as np
import pytest

from hlkernels import domain, forms, kernels
from hlkernels.forms import DoubleForm
from hlkernels.kernels import (KernelError, PoleOnDiagonal, adjoint_kernel,
                               coefficient_a, coefficient_c)

BALL2 = domain.ball(2)
BALL3 = domain.ball(3)


def c(*vals):
    return np.array(vals, dtype=complex)


ZETA = c(1.0, 0.0)
Z = c(0.9, 0.0)


# -- building blocks ---------------------------------------------------------------


def test_alpha_frozen_value():
    v = kernels.alpha(BALL2).eval(ZETA, Z)
    assert v.component(((1,), (), (), ())) == pytest.approx(10.0)
    assert v.component(((2,), (), (), ())) == pytest.approx(0.0)


def test_alpha_vanishes_outside_patch():
    deep = c(0.2, 0.0)       # |r| = 0.96 > 3 delta / 2
    assert kernels.alpha(BALL2).eval(deep, Z).is_zero()


def test_beta_frozen_value():
    v = kernels.beta(BALL2).eval(ZETA, Z)
    r2 = BALL2.rho2(ZETA, Z)
    assert v.component(((1,), (), (), ())) == pytest.approx(2 * 0.1 / r2)


def test_beta_pole_on_diagonal():
    with pytest.raises(PoleOnDiagonal):
        kernels.beta(BALL2).eval(ZETA, ZETA)


def test_coefficients():
    assert coefficient_a(3, 1, 0, 0) == pytest.approx((1 / (2j * np.pi)) ** 3)
    assert coefficient_a(3, 1, 0, 1) == 0.0
    assert coefficient_c(3, 1) == pytest.approx(2 / (2 * np.pi) ** 3)
    with pytest.raises(KernelError):
        coefficient_a(3, 1, 5, 0)
    with pytest.raises(KernelError):
        coefficient_c(3, 2)


def test_c0_degenerate_single_term():
    # n=2, q=0: single term alpha ^ beta
    k = kernels.cq(BALL2, 0)
    v = k.eval(ZETA, Z)
    al = kernels.alpha(BALL2).eval(ZETA, Z)
    be = kernels.beta(BALL2).eval(ZETA, Z)
    want = forms.wedge(al, be).scale(coefficient_a(2, 0, 0, 0))
    assert (v - want).norm() < 1e-9 * max(v.norm(), 1.0)


def test_cq_bidegree():
    n, q = 3, 1
    v = kernels.cq(BALL3, q).eval(c(0.98, 0.1, 0.05), c(0.9, 0.12, 0.04))
    assert v.zeta_degree() == (n, n - q - 2)
    assert v.z_degree() == (0, q)


def test_lq_bidegree_and_claimed_type():
    k = kernels.lq(BALL3, 1)
    v = k.eval(c(0.98, 0.1, 0.05), c(0.9, 0.12, 0.04))
    assert v.zeta_degree() == (0, 3)
    assert v.z_degree() == (1, 0)
    assert k.claimed_type == 2


# -- parametrix ---------------------------------------------------------------------


def test_gamma00_frozen_value():
    zeta, z = c(0.5, 0.1), c(0.3, -0.2)
    v = kernels.gamma0q(BALL2, 0).eval(zeta, z)
    r2 = BALL2.rho2(zeta, z)
    assert v.component(((), (), (), ())) == pytest.approx(1 / (2 * np.pi ** 2) / r2)


def test_gamma0q_harmonic_in_zeta():
    g00 = kernels.gamma0q(BALL2, 0)
    zeta, z = c(0.6, 0.1), c(0.2, -0.3)
    scalar = lambda p: g00.eval(p, z).component(((), (), (), ()))
    hs = [0.02, 0.01, 0.005]
    resid = []
    for h in hs:
        lap = 0.0
        for k in range(4):
            e = np.zeros(2, dtype=complex)
            e[k // 2] = h if k % 2 == 0 else 1j * h
            lap += scalar(zeta + e) + scalar(zeta - e) - 2 * scalar(zeta)
        resid.append(abs(lap) / h ** 2)
    assert resid[-1] < 1e-6 * abs(scalar(zeta))


def test_gamma0q_self_adjoint_on_ball():
    g01 = kernels.gamma0q(BALL3, 1)
    zeta, z = c(0.7, 0.1, 0.0), c(0.6, 0.05, 0.1)
    v = g01.eval(zeta, z)
    w = adjoint_kernel(g01).eval(zeta, z)
    assert (v - w).norm() < 1e-12 * v.norm()


def test_parametrix_interlock_exact():
    """vartheta of the (0,1) parametrix equals the adjoint of dbar of the
    scalar parametrix; this pins the normalization."""
    zeta, z = c(0.8, 0.15, 0.05), c(0.7, 0.1, 0.12)
    a = kernels.kernel_vartheta_zeta(kernels.gamma0q(BALL3, 1)).eval(zeta, z)
    b = adjoint_kernel(kernels.kernel_dbar_zeta(kernels.gamma0q(BALL3, 0))).eval(zeta, z)
    assert (a - b).norm() < 1e-8 * b.norm()


# -- derivative operators --------------------------------------------------------------


def test_dbar_of_constant_kernel_vanishes():
    const = kernels.KernelEvaluator(
        "const", 2, lambda zeta, z: DoubleForm.monomial(2, az=(1,), value=2.0 - 1.0j))
    v = kernels.kernel_dbar_zeta(const).eval(c(0.5, 0.1), c(0.3, -0.2))
    assert v.norm() < 1e-9


def test_dbar_squared_vanishes():
    def smooth(zeta, z):
        return DoubleForm.scalar(2, np.exp(zeta[0] + 2 * np.conj(zeta[1]))
                                 * (1 + zeta[1] * np.conj(zeta[0])))

    k = kernels.KernelEvaluator("smooth", 2, smooth)
    dd = kernels.kernel_dbar_zeta(kernels.kernel_dbar_zeta(k))
    v = dd.eval(c(0.4, 0.2), c(0.1, -0.1))
    ref = kernels.kernel_dbar_zeta(k).eval(c(0.4, 0.2), c(0.1, -0.1)).norm()
    assert v.norm() < 1e-5 * max(ref, 1.0)


def test_dbar_vartheta_dbar_r_vanishes():
    """The composition dbar vartheta applied to the conormal one-form."""
    def dbar_r(zeta, z):
        grad = BALL3.jet(zeta).grad
        return DoubleForm(3, {((), (j,), (), ()): np.conj(grad[j - 1])
                              for j in range(1, 4)})

    k = kernels.KernelEvaluator("dbar-r", 3, dbar_r)
    comp = kernels.kernel_dbar_zeta(kernels.kernel_vartheta_zeta(k))
    zeta, z = c(0.7, 0.2, 0.1), c(0.55, 0.1, 0.05)
    v = comp.eval(zeta, z)
    scale = kernels.kernel_vartheta_zeta(k).eval(zeta, z).norm()
    assert v.norm() < 1e-5 * max(scale, 1.0)


def test_fd_step_guard():
    const = kernels.KernelEvaluator("c", 2, lambda a, b: DoubleForm.scalar(2, 1.0))
    with pytest.raises(kernels.StepTooLarge):
        kernels.kernel_dbar_zeta(const).eval(ZETA, ZETA)


# -- adjoint wrapper ---------------------------------------------------------------


def test_adjoint_kernel_involution_pointwise():
    k = kernels.gamma0q(BALL3, 1)
    kk = adjoint_kernel(adjoint_kernel(k))
    zeta, z = c(0.7, 0.1, 0.05), c(0.5, 0.2, 0.1)
    assert (k.eval(zeta, z) - kk.eval(zeta, z)).norm() < 1e-13


def test_adjoint_of_gamma_scalar():
    k = kernels.KernelEvaluator(
        "gam", 2, lambda zeta, z: DoubleForm.scalar(2, BALL2.gamma(zeta)))
    v = adjoint_kernel(k).eval(c(0.5, 0.1), c(0.8, 0.0))
    assert v.component(((), (), (), ())) == pytest.approx(BALL2.gamma(c(0.8, 0.0)))


# -- assembled kernels ---------------------------------------------------------------


def test_tq_bidegrees():
    t1 = kernels.tq(BALL3, 1)
    v = t1.eval(c(0.97, 0.12, 0.06), c(0.9, 0.1, 0.05))
    assert v.zeta_degree() == (0, 2)
    assert v.z_degree() == (1, 0)


def test_t0_variant_constructs():
    t0 = kernels.tq(BALL3, 0)
    v = t0.eval(c(0.97, 0.12, 0.06), c(0.9, 0.1, 0.05))
    assert v.zeta_degree() == (0, 1)
    assert v.z_degree() == (0, 0)


def test_nq_requires_range():
    with pytest.raises(KernelError):
        kernels.nq(BALL2, 1)       # needs n >= 3
    with pytest.raises(KernelError):
        kernels.nq(BALL3, 0)


def test_nq_bidegree_and_gnq_value():
    nk = kernels.nq(BALL3, 1)
    zeta, z = c(0.97, 0.12, 0.06), c(0.9, 0.1, 0.05)
    v = nk.eval(zeta, z)
    assert v.zeta_degree() == (0, 1)
    assert v.z_degree() == (1, 0)
    # printed conormal-block coefficient, checked through g_l
    gl = kernels.g_l(BALL3, 1, (3,))
    vv = gl.eval(zeta, z)
    P = BALL3.big_p(zeta, z)
    const = -(2.0 ** 2) * 1 / (2 * np.pi) ** 3 * P ** (1 - 3)
    U = BALL3.frame(zeta)
    vad = forms.change_frame_zeta(vv, U, forms.ADAPTED)
    assert vad.component(((), (3,), (), ())) == pytest.approx(const)


def test_nq_main_terms_have_type_two():
    from hlkernels import typecalc as tc
    nk = kernels.nq(BALL3, 1)
    assert nk.claimed_type == 2
    assert all(tc.admissible_type(d, 3) == 2 for d in tc.neumann_main_terms(3, 1))


def test_h_l_rejects_bad_index():
    with pytest.raises(KernelError):
        kernels.h_l_main(BALL3, 1, (1, 2))


def test_make_kernel_registry():
    k = kernels.make_kernel("Gamma0q", BALL2, 0)
    assert k.id.startswith("Gamma0q")
    with pytest.raises(KernelError):
        kernels.make_kernel("Zq", BALL2, 0)


def test_wedge_power_beyond_slots_vanishes():
    v = forms.DoubleForm.monomial(2, az=(1,), hw=(1,))
    assert forms.wedge_power(v, 3).is_zero()


def test_lq_main_matches_definition_at_sample():
    # same-order agreement of the definition-built kernel and the printed
    # main term at a boundary-adjacent pair (rates live in the verify suite)
    zeta = np.array([0.98, 0.1, 0.05], dtype=complex)
    zeta /= np.linalg.norm(zeta)
    nu = BALL3.inward_normal(zeta)
    tv = BALL3.tangent_direction(zeta)
    z1 = zeta + 0.0009765625 * nu
    z2 = BALL3.project_boundary(zeta + 0.03125 * tv) + 0.0009765625 * nu
    a = kernels.lq(BALL3, 1).eval(z1, z2)
    b = kernels.lq_main(BALL3, 1).eval(z1, z2)
    assert (a - b).norm() < 0.25 * b.norm()
