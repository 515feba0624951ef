"""Eigen-equation residuals for the differential, difference and Baxter
operators."""

import math

import numpy as np
import pytest

from cswave.errors import DomainError, PoleError, StepTooLarge
from cswave.gammafn import dual_kernel_khat, kernel_k
from cswave.operators import (
    EigenResidual,
    FDStencil,
    apply_baxter,
    apply_cs_hamiltonian,
    apply_dual_baxter,
    apply_dual_difference_hr,
    apply_macdonald_rational,
)
from cswave.quadrature import QuadSpec

SPEC6 = QuadSpec(abs_tol=1e-300, rel_tol=1e-6, max_depth=24)
SPEC9 = QuadSpec(abs_tol=1e-300, rel_tol=1e-9, max_depth=26)


class TestStencil:
    def test_validation(self):
        with pytest.raises(DomainError):
            FDStencil(order=4)
        with pytest.raises(DomainError):
            FDStencil(h=0.0)

    def test_residual_normalization(self):
        r = EigenResidual(1.0 + 0j, 1.0 + 1e-6j)
        assert r.residual == pytest.approx(1e-6, rel=1e-6)


class TestHamiltonian:
    def test_plane_wave(self):
        res = apply_cs_hamiltonian([0.3], [1.2], 2.0, FDStencil(5, 1e-3))
        assert res.residual < 1e-8

    def test_two_particle(self):
        res = apply_cs_hamiltonian([0.5, -0.3], [0.8, 0.0], 2.0)
        assert res.residual < 1e-4

    def test_potential_sign(self):
        # with g(g-1) > 0 the pair potential is positive off the diagonal
        g, x12 = 2.0, 0.5
        v = 2.0 * math.pi**2 * g * (g - 1.0) / math.sinh(math.pi * x12) ** 2
        assert v > 0.0

    def test_richardson_ratio(self):
        r1 = apply_cs_hamiltonian([0.5, -0.3], [0.8, 0.0], 2.0, FDStencil(5, 0.04))
        r2 = apply_cs_hamiltonian([0.5, -0.3], [0.8, 0.0], 2.0, FDStencil(5, 0.02))
        assert r1.residual / r2.residual >= 8.0

    def test_richardson_flag_path(self):
        # richardson=True passes when halving h behaves
        res = apply_cs_hamiltonian([0.5, -0.3], [0.8, 0.0], 2.0, FDStencil(5, 0.04),
                                   richardson=True)
        assert res.residual < 1e-4

    def test_diagonal_rejected(self):
        with pytest.raises(DomainError):
            apply_cs_hamiltonian([0.5, -0.3], [0.4, 0.4], 2.0)


class TestMacdonald:
    def test_n1_shift(self):
        res = apply_macdonald_rational(1, [0.4], [0.6], 2.0)
        assert res.residual < 1e-9

    def test_n2_r2_telescopes(self):
        # both spectra shifted: coefficients cancel and the eigenvalue is
        # exp(2 pi (x_1 + x_2)) by shift covariance
        res = apply_macdonald_rational(2, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        assert res.residual < 1e-5

    def test_n2_r1(self):
        res = apply_macdonald_rational(1, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        assert res.residual < 1e-4

    def test_coupling_margin(self):
        with pytest.raises(DomainError):
            apply_macdonald_rational(1, [0.4, -0.4], [0.6, 0.0], 1.05)

    def test_coincident_spectra(self):
        with pytest.raises(PoleError):
            apply_macdonald_rational(1, [0.4, 0.4], [0.6, 0.0], 2.0)

    def test_translation_invariant_residual(self):
        a = apply_macdonald_rational(1, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        b = apply_macdonald_rational(1, [0.4, -0.4], [1.1, 0.5], 2.0, SPEC9)
        assert abs(a.residual - b.residual) < 5.0 * max(a.residual, b.residual)


class TestDualDifference:
    def test_n1_matches_macdonald(self):
        a = apply_dual_difference_hr(1, [0.4], [0.6], 2.0)
        b = apply_macdonald_rational(1, [0.4], [0.6], 2.0)
        assert a.residual < 1e-9 and b.residual < 1e-9

    def test_n2_consistency_with_macdonald(self):
        # the two residuals measure the same identity through different
        # normalizations and agree within a small factor
        a = apply_dual_difference_hr(1, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        b = apply_macdonald_rational(1, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        assert a.residual < 1e-4 and b.residual < 1e-4
        assert a.residual <= 2.0 * b.residual + 1e-12 or b.residual <= 2.0 * a.residual + 1e-12

    def test_n2_r2(self):
        res = apply_dual_difference_hr(2, [0.4, -0.4], [0.6, 0.0], 2.0, SPEC9)
        assert res.residual < 1e-4


class TestBaxter:
    def test_n1_exact_fourier(self):
        res = apply_baxter(0.25, [0.4], [0.6], 2.0)
        assert res.residual < 1e-8

    def test_n1_unit_eigenvalue(self):
        # lam_b = lam_1 gives eigenvalue K^(0) = Gamma(g/2)^2 = 1 at g = 2
        res = apply_baxter(0.4, [0.4], [0.6], 2.0)
        ev = res.lhs / complex(np.exp(2j * np.pi * 0.4 * 0.6))
        assert abs(ev - 1.0) < 1e-8

    def test_n2(self):
        res = apply_baxter(0.1, [0.3, -0.3], [0.5, 0.0], 2.0, SPEC6)
        assert res.residual < 1e-4

    def test_n2_factorization_sweep(self):
        lam = [0.3, -0.3]
        x = [0.5, 0.0]
        psi_phase = None
        for lam_b in (-0.8, 0.0, 0.8):
            res = apply_baxter(lam_b, lam, x, 2.0, SPEC6)
            target = complex(dual_kernel_khat(lam_b - lam[0], 2.0)) * complex(
                dual_kernel_khat(lam_b - lam[1], 2.0)
            )
            measured = res.lhs / (res.rhs / target)
            assert abs(measured - target) < 1e-4 * abs(target)

    def test_imag_parameter_window(self):
        with pytest.raises(DomainError):
            apply_baxter(0.1 + 1.1j, [0.3], [0.5], 2.0)

    def test_complex_parameter_accepted(self):
        res = apply_baxter(0.1 + 0.4j, [0.3], [0.5], 2.0)
        assert res.residual < 1e-8


class TestDualBaxter:
    def test_n1_exact_fourier(self):
        res = apply_dual_baxter(0.2, [0.4], [0.6], 2.0)
        assert res.residual < 1e-8

    def test_n1_eigenvalue_at_coincidence(self):
        # x_b = x_1 gives eigenvalue K(0) = 2^-g
        res = apply_dual_baxter(0.6, [0.4], [0.6], 2.0)
        ev = res.lhs / complex(np.exp(2j * np.pi * 0.4 * 0.6))
        assert abs(ev - 0.25) < 1e-8

    def test_n2(self):
        res = apply_dual_baxter(0.2, [0.5, -0.5], [0.4, 0.0], 2.0, SPEC6)
        assert res.residual < 1e-4

    def test_n2_factorization(self):
        x = [0.4, 0.0]
        res = apply_dual_baxter(0.2, [0.5, -0.5], x, 2.0, SPEC6)
        target = float(kernel_k(0.2 - x[0], 2.0) * kernel_k(0.2 - x[1], 2.0))
        measured = res.lhs / (res.rhs / target)
        assert abs(measured - target) < 1e-4 * abs(target)

    def test_requires_strong_coupling(self):
        with pytest.raises(DomainError):
            apply_dual_baxter(0.2, [0.5, -0.5], [0.4, 0.0], 0.8)
