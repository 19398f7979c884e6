import numpy as np
import pytest

from helpers import random_density, random_pure
from umtrace import (ansatz_state, default_observable, depolarize_state,
                     exponential_suppression_curve, make_density, mt_exact,
                     mt_via_shift_operator, observable, shift_operator,
                     vd_exact)
from umtrace.oracle import top_eigen_expectation


class TestShiftOperator:
    def test_m2_is_swap(self):
        swap = np.array([[1, 0, 0, 0],
                         [0, 0, 1, 0],
                         [0, 1, 0, 0],
                         [0, 0, 0, 1]])
        assert np.array_equal(shift_operator(2, 1), swap)

    def test_moves_contents_forward(self):
        op = shift_operator(3, 1)
        vecs = [np.array([1.0, 0.0]), np.array([0.0, 1.0]),
                np.array([1.0, 1.0]) / np.sqrt(2)]
        inp = np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
        out = np.kron(np.kron(vecs[2], vecs[0]), vecs[1])
        assert np.allclose(op @ inp, out)


class TestMTExact:
    def test_identical_pure_states(self):
        rho = random_pure(1, 2)
        assert abs(mt_exact([rho] * 4) - 1.0) < 1e-12

    def test_orthogonal(self):
        a = make_density(np.diag([1.0, 0.0]))
        b = make_density(np.diag([0.0, 1.0]))
        assert abs(mt_exact([a, b])) < 1e-15

    def test_two_maximally_mixed(self):
        mixed = make_density(np.eye(2) / 2)
        assert abs(mt_exact([mixed, mixed]) - 0.5) < 1e-15

    @pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (4, 1), (6, 1), (12, 1),
                                     (2, 2), (3, 2), (4, 2), (6, 2),
                                     (2, 3), (4, 3), (3, 4)])
    def test_paths_agree(self, m, n):
        states = [random_density(100 * m + k, n) for k in range(m)]
        product = mt_exact(states, cross_check=True)
        shift = mt_via_shift_operator(states)
        assert abs(product - shift) < 1e-10

    def test_cyclic_invariance(self):
        states = [random_density(k, 2) for k in range(4)]
        rotated = states[1:] + states[:1]
        assert abs(mt_exact(states) - mt_exact(rotated)) < 1e-12

    def test_reversal_conjugates(self):
        states = [random_density(k + 40, 2) for k in range(4)]
        assert abs(mt_exact(states[::-1]) - np.conj(mt_exact(states))) < 1e-12

    def test_imaginary_part_is_nonzero_generically(self):
        states = [random_density(k + 7, 1) for k in range(3)]
        assert abs(mt_exact(states).imag) > 1e-4

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mt_exact([random_density(0, 1), random_density(1, 2)])

    def test_shift_path_size_limit(self):
        states = [random_density(k, 2) for k in range(7)]  # m*n = 14
        with pytest.raises(ValueError):
            mt_via_shift_operator(states)


class TestVDExact:
    def test_paper_values(self):
        rho = ansatz_state()
        obs = default_observable()
        noisy = depolarize_state(rho, 0.4)
        assert round(vd_exact(rho, 1, obs), 4) == 0.7547
        assert round(vd_exact(noisy, 1, obs), 4) == 0.4528
        assert round(vd_exact(noisy, 5, obs), 4) == 0.7546

    def test_numerator_formula(self):
        # Tr(O rho_noise^5) = <O> (E0^5 - E1^5) via the eigenvalue structure
        rho = ansatz_state()
        obs = default_observable()
        noisy = depolarize_state(rho, 0.4)
        ideal = vd_exact(rho, 1, obs)
        expected = ideal * (0.7 ** 5 - 0.1 ** 5)
        power = np.linalg.matrix_power(noisy.data, 5)
        assert abs(np.trace(obs.matrix() @ power).real - expected) < 1e-12

    def test_pure_state_fixed_point(self):
        rho = random_pure(9, 2)
        obs = observable((1.0, "ZZ"))
        base = vd_exact(rho, 1, obs)
        for m in (2, 3, 5):
            assert abs(vd_exact(rho, m, obs) - base) < 1e-10


class TestSuppressionCurve:
    def test_pure_state_errors_vanish(self):
        rho = random_pure(5, 2)
        curve = exponential_suppression_curve(rho, range(1, 6),
                                              observable((1.0, "ZI")))
        assert all(err < 1e-10 for _, err in curve)

    def test_ratio_approaches_eigenvalue_gap(self):
        noisy = depolarize_state(ansatz_state(), 0.4)
        curve = dict(exponential_suppression_curve(noisy, range(1, 9),
                                                   default_observable()))
        for m in (5, 6, 7):
            ratio = curve[m + 1] / curve[m]
            assert abs(ratio - 1 / 7) <= 0.1 / 7, (m, ratio)

    def test_degenerate_top_flagged_not_crashed(self):
        mixed = make_density(np.eye(4) / 4)
        with pytest.warns(RuntimeWarning):
            curve = exponential_suppression_curve(mixed, range(1, 4),
                                                  default_observable())
        assert all(err < 1e-12 for _, err in curve)

    def test_top_expectation_degeneracy_flag(self):
        _, degenerate = top_eigen_expectation(make_density(np.eye(2) / 2),
                                              observable((1.0, "Z")))
        assert degenerate
        _, nondeg = top_eigen_expectation(make_density(np.diag([0.9, 0.1])),
                                          observable((1.0, "Z")))
        assert not nondeg
