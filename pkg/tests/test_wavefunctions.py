"""Wave function representations: closed-form anchors, cross-representation
agreement, series coefficients, asymptotics and symmetries."""

import math

import numpy as np
import pytest

from cswave.errors import DomainError, PoleError
from cswave.gammafn import dual_weight_what, kernel_k, norm_const
from cswave.quadrature import QuadSpec, integrate_1d
from cswave.wavefunctions import (
    chamber_gap,
    euler_psi,
    hc_coeff,
    hc_index_matrices,
    hc_psi,
    hc_psi_symmetrized,
    ho_f,
    lattice_gap,
    mb_psi,
    phi_asymptotic,
    phi_renormalized,
    psi_asymptotic,
    psi_zero,
    rho_vector,
    total_bound_exponent,
)

TIGHT = QuadSpec(abs_tol=1e-300, rel_tol=1e-11, max_depth=26)
FAST3 = QuadSpec(abs_tol=1e-300, rel_tol=1e-5, max_depth=22)


class TestPsiZero:
    def test_n2_value(self):
        assert psi_zero([0.0, 0.0], 2.0) == pytest.approx(1.0 / 6.0, rel=1e-13)

    def test_n3_value(self):
        assert psi_zero([0.0, 0.0, 0.0], 2.0) == pytest.approx(1.0 / 720.0, rel=1e-13)

    def test_unit_gap(self):
        # |Gamma(2+i)|^2 / Gamma(4) = 2 pi / (6 sinh(pi)) via recurrence+reflection
        expected = 2.0 * math.pi / math.sinh(math.pi) / 6.0
        assert psi_zero([0.5, -0.5], 2.0) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(0.0906763517, abs=1e-9)

    def test_pole(self):
        with pytest.raises(PoleError):
            psi_zero([1j * 2.0, 0.0], 2.0)  # i*lam_12 + g hits 0


class TestEulerPsi:
    def test_plane_wave_base(self):
        res = euler_psi([0.3], [1.2], 2.0)
        assert res.value == complex(np.exp(2j * np.pi * 0.36))
        assert res.abs_err == 0.0

    def test_n2_zero_point(self):
        res = euler_psi([0.0, 0.0], [0.0, 0.0], 2.0, TIGHT)
        assert abs(res.value - 1.0 / 6.0) < 1e-10

    def test_n2_zero_point_direct_quadrature_oracle(self):
        # the same number through the explicit integral 2 pi Gamma(2)
        # int (2 cosh(pi y))^-4 dy = 2 pi / (12 pi) = 1/6
        spec = QuadSpec(abs_tol=1e-13, rel_tol=1e-11, tail_decay=4.0 * math.pi)
        direct = norm_const(1, 2.0) * integrate_1d(
            lambda y: kernel_k(y, 2.0) ** 2 + 0j, (-np.inf, np.inf), spec
        ).value
        assert abs(direct - 1.0 / 6.0) < 1e-12
        assert abs(euler_psi([0.0, 0.0], [0.0, 0.0], 2.0, TIGHT).value - direct) < 1e-10

    def test_lambda_permutation_symmetry(self):
        a = euler_psi([0.4, -0.2], [0.7, 0.1], 2.0, TIGHT)
        b = euler_psi([-0.2, 0.4], [0.7, 0.1], 2.0, TIGHT)
        assert abs(a.value - b.value) < 1e-9 * abs(a.value)

    def test_x_permutation_symmetry(self):
        a = euler_psi([0.4, -0.2], [0.7, 0.1], 2.0, TIGHT)
        b = euler_psi([0.4, -0.2], [0.1, 0.7], 2.0, TIGHT)
        assert abs(a.value - b.value) < 1e-9 * abs(a.value)

    def test_shift_covariance(self):
        lam = np.array([0.4, -0.2])
        x = np.array([0.7, 0.1])
        eta = 0.37
        a = euler_psi(lam + eta, x, 2.0, TIGHT)
        b = euler_psi(lam, x, 2.0, TIGHT)
        phase = np.exp(2j * np.pi * eta * np.sum(x))
        assert abs(a.value - phase * b.value) < 1e-9 * abs(a.value)

    def test_complex_spectrum_against_shift(self):
        # lam - i * (1,1) multiplies Psi by exp(2 pi sum x) exactly
        lam = np.array([0.4, -0.2])
        x = np.array([0.7, 0.1])
        a = euler_psi(lam - 1j, x, 2.0, TIGHT)
        b = euler_psi(lam, x, 2.0, TIGHT)
        assert abs(a.value - math.exp(2.0 * math.pi * x.sum()) * b.value) < 1e-8 * abs(a.value)

    def test_imag_spread_precondition(self):
        with pytest.raises(DomainError):
            euler_psi([0.4 - 2.1j, 0.0], [0.5, 0.0], 2.0)

    def test_n_cap(self):
        with pytest.raises(DomainError):
            euler_psi([0.1, 0.2, 0.3, 0.4], [0.0] * 4, 2.0)


class TestMBPsi:
    def test_plane_wave_base(self):
        res = mb_psi([0.3], [1.2], 2.0)
        assert res.value == complex(np.exp(2j * np.pi * 0.36))

    def test_n2_zero_point_barnes_value(self):
        # Gamma(g) Gamma(g + i lam_12) Gamma(g - i lam_12) / Gamma(2g)
        lam = [0.4, -0.1]
        res = mb_psi(lam, [0.0, 0.0], 2.0, TIGHT)
        assert abs(res.value - psi_zero(lam, 2.0)) < 1e-10

    def test_requires_strong_coupling(self):
        with pytest.raises(DomainError):
            mb_psi([0.3, -0.3], [0.1, 0.0], 0.9)

    def test_contour_condition(self):
        with pytest.raises(DomainError):
            mb_psi([0.3 + 1.2j, -0.3], [0.1, 0.0], 2.0)

    def test_duality_generic_point(self):
        lam = [0.3, -0.2]
        x = [0.4, -0.1]
        a = euler_psi(lam, x, 2.5, TIGHT)
        b = mb_psi(lam, x, 2.5, TIGHT)
        assert abs(a.value - b.value) < 1e-6 * abs(a.value)

    @pytest.mark.parametrize("g", [1.5, 3.0])
    def test_duality_small_grid(self, g):
        spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-9, max_depth=26)
        for l12 in (0.5, 1.3):
            for x12 in (0.4, 1.1):
                lam = [l12 / 2, -l12 / 2]
                x = [x12 / 2, -x12 / 2]
                a = euler_psi(lam, x, g, spec)
                b = mb_psi(lam, x, g, spec)
                assert abs(a.value - b.value) <= max(
                    1e-6 * abs(a.value), a.abs_err + b.abs_err
                )


class TestN3:
    def test_zero_point_both_reps(self):
        lam = [0.5, 0.1, -0.4]
        tgt = psi_zero(lam, 2.0)
        e = euler_psi(lam, [0.0] * 3, 2.0, FAST3)
        m = mb_psi(lam, [0.0] * 3, 2.0, FAST3)
        assert abs(e.value - tgt) < 1e-4 * abs(tgt)
        assert abs(m.value - tgt) < 1e-4 * abs(tgt)

    def test_normalized_value_at_origin(self):
        res = ho_f([0.5, 0.0, -0.5], [0.0] * 3, 2.0, rep="mb", spec=FAST3)
        assert abs(res.value - 1.0) < 1e-4


class TestHCCoefficients:
    def test_c0_n2(self):
        lam = np.array([0.5, -0.5])
        c0 = hc_coeff(np.zeros((2, 2), int), lam, 2.0)
        expected = 1.0 / complex(dual_weight_what(lam[0] - lam[1], 2.0))
        assert abs(c0 - expected) < 1e-12 * abs(expected)

    def test_first_coefficient_ratio(self):
        # c1/c0 = g (g - i lam_12) / (1 - i lam_12) via Gamma(z+1) = z Gamma(z)
        g = 2.0
        lam = np.array([0.5, -0.5])
        l12 = lam[0] - lam[1]
        c0 = hc_coeff(np.zeros((2, 2), int), lam, g)
        c1 = hc_coeff(np.array([[0, 0], [1, 0]]), lam, g)
        expected = g * (g - 1j * l12) / (1.0 - 1j * l12)
        assert abs(c1 / c0 - expected) < 1e-11

    def test_two_forms_agree(self):
        rng = np.random.default_rng(8)
        for n in (2, 3):
            lam = np.sort(rng.uniform(-1.2, 1.2, n))[::-1] + 0j
            lam += np.arange(n) * 1e-3  # keep pairwise distinct
            for deg in range(0, 4):
                for m in hc_index_matrices(n, deg):
                    a = hc_coeff(m, lam, 1.7, form="gamma")
                    b = hc_coeff(m, lam, 1.7, form="what")
                    assert abs(a - b) <= 1e-10 * max(abs(a), 1e-12)

    def test_index_matrix_enumeration(self):
        # n = 3 has 3 lower-triangular slots; degree-2 compositions: C(4,2) = 6
        mats = hc_index_matrices(3, 2)
        assert len(mats) == 6
        assert all(m.sum() == 2 for m in mats)
        flat = [tuple(m[np.tril_indices(3, -1)]) for m in mats]
        assert flat == sorted(flat)  # lexicographic

    def test_rejects_bad_matrix(self):
        with pytest.raises(DomainError):
            hc_coeff(np.array([[0, 1], [0, 0]]), [0.5, -0.5], 2.0)


class TestHCSeries:
    def test_k0_single_term(self):
        lam = np.array([0.5, -0.5])
        x = np.array([1.0, 0.0])
        g = 2.0
        res = hc_psi(lam, x, g, k_max=0)
        c0 = hc_coeff(np.zeros((2, 2), int), lam, g)
        pref = np.exp(2j * np.pi * np.dot(x, lam) - 2.0 * np.pi * g * np.dot(x, rho_vector(2)))
        assert abs(res.value - pref * c0) < 1e-12 * abs(res.value)

    def test_geometric_shell_decay(self):
        # shell ratio ~ exp(-2 pi (x_1 - x_2)) per unit degree
        lam = np.array([0.5, -0.5])
        x = np.array([1.0, 0.0])
        shells = []
        prev = 0.0 + 0.0j
        for k in range(0, 4):
            cur = hc_psi(lam, x, 2.0, k_max=k).value
            shells.append(abs(cur - prev))
            prev = cur
        ratios = [shells[i + 1] / shells[i] for i in range(1, 3)]
        for r in ratios:
            assert 0.3 * math.exp(-2.0 * math.pi) < r < 3.0 * math.exp(-2.0 * math.pi)

    def test_plane_wave_base(self):
        res = hc_psi_symmetrized([0.3], [1.2], 2.0)
        assert abs(res.value - np.exp(2j * np.pi * 0.36)) < 1e-14

    def test_symmetrized_matches_mb(self):
        lam = [0.5, -0.5]
        for gap in (0.5, 1.0, 2.0):
            x = [gap / 2.0, -gap / 2.0]
            s = hc_psi_symmetrized(lam, x, 2.0)
            m = mb_psi(lam, x, 2.0, QuadSpec(abs_tol=1e-300, rel_tol=1e-10, max_depth=26))
            assert abs(s.value - m.value) <= max(1e-7 * abs(m.value), s.abs_err + m.abs_err)

    def test_symmetrized_invariant_under_permutation(self):
        a = hc_psi_symmetrized([0.7, -0.4], [0.8, 0.0], 2.0)
        b = hc_psi_symmetrized([-0.4, 0.7], [0.8, 0.0], 2.0)
        assert abs(a.value - b.value) < 1e-12 * abs(a.value)

    def test_n3_matches_euler(self):
        lam = [0.8, 0.0, -0.8]
        x = [1.2, 0.0, -1.2]
        s = hc_psi_symmetrized(lam, x, 2.0)
        e = euler_psi(lam, x, 2.0, FAST3)
        assert abs(s.value - e.value) <= max(1e-4 * abs(e.value), s.abs_err + e.abs_err)

    def test_requires_chamber(self):
        with pytest.raises(DomainError):
            hc_psi([0.5, -0.5], [0.0, 1.0], 2.0, k_max=2)

    def test_rejects_coincident_spectra(self):
        with pytest.raises(PoleError):
            hc_psi([0.5, 0.5], [1.0, 0.0], 2.0, k_max=2)


class TestAsymptotics:
    def test_plane_wave_base(self):
        val = psi_asymptotic([0.3], [1.2], 2.0)
        assert abs(val - np.exp(2j * np.pi * 0.36)) < 1e-14

    def test_chamber_swap_symmetry(self):
        lam = [0.6, -0.2]
        x_desc = [1.5, -0.5]
        a = psi_asymptotic(lam, x_desc, 2.0, "descending")
        b = psi_asymptotic(lam, x_desc[::-1], 2.0, "ascending")
        assert abs(a - b) < 1e-12 * abs(a)

    def test_approach_rate(self):
        # relative difference scaled by the leading weight decays like
        # exp(-(2 pi - eps) m) as the gap m grows
        lam = [0.5, -0.5]
        g = 2.0
        diffs = []
        for m in (1.5, 2.5):
            x = [m / 2.0, -m / 2.0]
            exact = hc_psi_symmetrized(lam, x, g, k_max=12).value
            asym = psi_asymptotic(lam, x, g)
            scale = math.exp(-2.0 * math.pi * g * float(np.dot(x, rho_vector(2))))
            diffs.append(abs(exact - asym) / scale)
        slope = math.log(diffs[0] / diffs[1])
        assert slope > (2.0 * math.pi - 0.3)

    def test_coincident_spectra_rejected(self):
        with pytest.raises(PoleError):
            psi_asymptotic([0.5, 0.5], [1.0, 0.0], 2.0)


class TestNormalizedF:
    def test_plane_wave_base(self):
        res = ho_f([0.3], [1.2], 2.0, rep="zero" if False else "euler")
        assert abs(res.value - np.exp(2j * np.pi * 0.36)) < 1e-12

    def test_unit_normalization_n2(self):
        res = ho_f([0.4, -0.1], [0.0, 0.0], 2.0, rep="mb", spec=TIGHT)
        assert abs(res.value - 1.0) < 1e-8
        res = ho_f([0.4, -0.1], [0.0, 0.0], 2.0, rep="euler", spec=TIGHT)
        assert abs(res.value - 1.0) < 1e-8

    def test_zero_rep(self):
        res = ho_f([0.4, -0.1], [0.0, 0.0], 2.0, rep="zero")
        assert abs(res.value - 1.0) < 1e-13
        with pytest.raises(DomainError):
            ho_f([0.4, -0.1], [0.5, 0.0], 2.0, rep="zero")


class TestPhi:
    def test_n1_equals_psi(self):
        res = phi_renormalized([0.3], [1.2], 2.0)
        assert res.value == complex(np.exp(2j * np.pi * 0.36))

    def test_checked_variant_scaling(self):
        lam = [0.5, -0.5]
        x = [0.6, 0.0]
        g = 2.0
        plain = phi_renormalized(lam, x, g, TIGHT)
        checked = phi_renormalized(lam, x, g, TIGHT, checked=True)
        scale = math.exp(math.pi * g * abs(x[0] - x[1]))
        assert abs(checked.value - scale * plain.value) < 1e-12 * abs(checked.value)

    def test_total_bound_sweep_stable(self):
        # |Phi| * gap^-N(g) * exp(pi g sum |x_i - x_j|) stays bounded and the
        # sup does not blow up when the grid is refined
        g = 2.0
        nexp = total_bound_exponent(2, g)
        spec = QuadSpec(abs_tol=1e-300, rel_tol=1e-9, max_depth=26)

        def sweep(l12s, gaps):
            sup = 0.0
            for l12 in l12s:
                for gap in gaps:
                    lam = [l12 / 2.0, -l12 / 2.0]
                    x = [gap / 2.0, -gap / 2.0]
                    phi = phi_renormalized(lam, x, g, spec)
                    c = abs(phi.value) * lattice_gap(lam) ** (-nexp) * math.exp(
                        math.pi * g * gap
                    )
                    sup = max(sup, c)
            return sup

        coarse = sweep((0.4, 1.6), (0.4, 1.6))
        fine = sweep((0.4, 0.9, 1.6, 2.4), (0.4, 0.9, 1.6))
        assert np.isfinite(fine)
        assert fine <= 2.0 * max(coarse, 1e-3) + 1.0

    def test_phi_asymptotic_consistency(self):
        # the asymptotic form of Phi equals w^ * (asymptotic form of Psi)
        lam = np.array([0.5, -0.5])
        x = [1.0, -1.0]
        g = 2.0
        w12 = complex(dual_weight_what(lam[0] - lam[1], g))
        a = phi_asymptotic(lam, x, g)
        b = w12 * psi_asymptotic(lam, x, g, "descending")
        assert abs(a - b) < 1e-12 * abs(a)


class TestHelpers:
    def test_rho(self):
        assert np.allclose(rho_vector(2), [0.5, -0.5])
        assert np.allclose(rho_vector(3), [1.0, 0.0, -1.0])

    def test_gaps(self):
        assert chamber_gap([3.0, 1.0, 0.5]) == 0.5
        assert lattice_gap([1.0, 0.0]) == 2.0
        assert lattice_gap([0.5]) == 1.0

    def test_total_bound_exponent(self):
        assert total_bound_exponent(2, 2.0) == pytest.approx(2.0)
        assert total_bound_exponent(3, 2.0) == pytest.approx(8.0)
        # N(n=3) = 4 g - (g - 2); at g = 3 that is 11
        assert total_bound_exponent(3, 3.0) == pytest.approx(11.0)
