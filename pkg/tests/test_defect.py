import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rwkit import (
    DefectParams,
    EstimationError,
    Frame,
    IterationCapError,
    ParameterError,
    bregman_defect,
    brute_force_defect,
    coefficient_defect,
    expected_defect,
    make_partial_fourier,
    sparsity_defect,
)

IDENTITY = Frame(kind="identity")


def analytic_defect(w, budget):
    # min ||w - a||_1 over ||a||_1 <= budget is the excess L1 mass.
    return max(0.0, float(np.sum(np.abs(w))) - budget)


class TestDefectParams:
    def test_validation(self):
        with pytest.raises(ParameterError):
            DefectParams(solution_bound=0.0)
        with pytest.raises(ParameterError):
            DefectParams(solution_bound=1.0, bregman_lambda=0.0)
        with pytest.raises(ParameterError):
            DefectParams(solution_bound=1.0, tolerance=0.0)
        with pytest.raises(ParameterError):
            DefectParams(solution_bound=1.0, max_iterations=0)


class TestCoefficientDefect:
    def test_interior_point_has_zero_defect(self):
        result = coefficient_defect(np.array([0.2, -0.3]), DefectParams(solution_bound=1.0))
        assert result.defect == 0.0
        assert not result.failed
        assert result.iterations == 0

    def test_worked_scalar_example(self):
        result = coefficient_defect(np.array([3.0]), DefectParams(solution_bound=1.0))
        assert result.defect == pytest.approx(2.0, abs=1e-6)

    def test_worked_pair_example(self):
        result = coefficient_defect(np.array([3.0, 1.0]), DefectParams(solution_bound=2.0))
        assert result.defect == pytest.approx(2.0, abs=1e-6)

    def test_minimizer_is_feasible(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            w = rng.uniform(-3, 3, rng.integers(1, 9))
            budget = rng.uniform(0.5, 3.0)
            result = coefficient_defect(w, DefectParams(solution_bound=budget))
            assert result.final_l1 <= budget + 1e-8

    def test_matches_analytic_value(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            w = rng.uniform(-3, 3, rng.integers(1, 17))
            budget = rng.uniform(0.5, 3.0)
            result = coefficient_defect(w, DefectParams(solution_bound=budget))
            assert result.defect == pytest.approx(analytic_defect(w, budget), abs=1e-6)

    def test_complex_coefficients(self):
        w = np.array([3.0 + 4.0j])  # modulus 5
        result = coefficient_defect(w, DefectParams(solution_bound=1.0))
        assert result.defect == pytest.approx(4.0, abs=1e-6)

    @given(st.floats(1.0, 4.0), st.integers(0, 2**31 - 1))
    @settings(max_examples=25, deadline=None)
    def test_scale_monotone_on_rays(self, scale, seed):
        w = np.random.default_rng(seed).uniform(-2, 2, 4)
        params = DefectParams(solution_bound=1.0)
        base = coefficient_defect(w, params).defect
        scaled = coefficient_defect(scale * w, params).defect
        assert scaled >= base - 1e-8

    def test_iteration_cap_raises(self):
        with pytest.raises(IterationCapError):
            bregman_defect(
                np.array([3.0, -2.0, 1.5]), 1.0, lam=0.5, tolerance=1e-14, max_iterations=1
            )


class TestBruteForce:
    def test_interior_point(self):
        assert brute_force_defect(np.array([0.5]), 1.0, 0.01) == pytest.approx(0.0, abs=0.02)

    def test_worked_scalar(self):
        assert brute_force_defect(np.array([3.0]), 1.0, 1e-3) == pytest.approx(2.0, abs=2e-3)

    def test_mass_reduction_in_3d(self):
        assert brute_force_defect(np.array([1.0, 1.0, 1.0]), 1.5, 0.01) == pytest.approx(
            1.5, abs=0.03
        )

    def test_refuses_high_dimension(self):
        with pytest.raises(ParameterError):
            brute_force_defect(np.ones(4), 1.0, 0.1)

    def test_refuses_nonpositive_grid(self):
        with pytest.raises(ParameterError):
            brute_force_defect(np.ones(2), 1.0, 0.0)

    def test_oracle_agreement(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            dim = rng.integers(1, 4)
            w = rng.uniform(-3, 3, dim)
            budget = rng.uniform(0.5, 3.0)
            solver = coefficient_defect(w, DefectParams(solution_bound=budget)).defect
            oracle = brute_force_defect(w, budget, 0.01)
            assert abs(solver - oracle) <= 0.05


class TestSparsityDefect:
    def test_full_sampling_identity_frame(self):
        # The sample is back-projected through the adjoint before the frame
        # analysis, so the defect is the excess L1 mass of the IFFT of x.
        op = make_partial_fourier(8, 1.0, 0)
        x = np.zeros(8)
        x[0] = 3.0
        back = np.fft.ifft(x, norm="ortho")
        expected = analytic_defect(back, 1.0)
        result = sparsity_defect(x, op, IDENTITY, DefectParams(solution_bound=1.0))
        assert result.defect == pytest.approx(expected, abs=1e-6)

    def test_dft_frame_full_sampling_is_passthrough(self):
        # With the unitary DFT frame and q=1 the analysis of the adjoint is
        # the signal itself, so the worked coefficient values carry over.
        dft = Frame(kind="unitary-dft")
        op = make_partial_fourier(8, 1.0, 0)
        x = np.zeros(8)
        x[0] = 3.0
        result = sparsity_defect(x, op, dft, DefectParams(solution_bound=1.0))
        assert result.defect == pytest.approx(2.0, abs=1e-6)

    def test_zero_for_budgeted_signal(self):
        op = make_partial_fourier(16, 0.5, 1)
        x = np.zeros(16)
        x[3] = 0.4
        result = sparsity_defect(x, op, IDENTITY, DefectParams(solution_bound=1.0))
        assert result.defect <= 1e-6

    def test_monotone_in_budget(self):
        op = make_partial_fourier(16, 1.0, 0)
        x = np.random.default_rng(7).standard_normal(16) * 2
        defects = [
            sparsity_defect(x, op, IDENTITY, DefectParams(solution_bound=t)).defect
            for t in (1.0, 2.0, 4.0, 8.0)
        ]
        assert all(b <= a + 1e-8 for a, b in zip(defects, defects[1:]))


class TestExpectedDefect:
    def test_single_operator_is_max_over_samples(self):
        params = DefectParams(solution_bound=1.0)
        samples = [np.eye(8)[0] * 3.0, np.eye(8)[1] * 2.0]
        est = expected_defect(samples, IDENTITY, params, num_operators=1, master_seed=0)
        op = make_partial_fourier(8, 1.0, 0)
        expected = max(
            sparsity_defect(s, op, IDENTITY, params).defect for s in samples
        )
        assert est.estimate == pytest.approx(expected, abs=1e-6)

    def test_exactly_sparse_budgeted_samples_give_zero(self):
        # Full sampling with the DFT frame makes the analysis of the
        # back-projection the sample itself; budgeted samples have defect 0.
        params = DefectParams(solution_bound=1.0)
        dft = Frame(kind="unitary-dft")
        samples = [np.eye(8)[i] * 0.5 for i in range(4)]
        est = expected_defect(samples, dft, params, num_operators=3, master_seed=0)
        assert est.estimate == pytest.approx(0.0, abs=1e-10)
        assert est.failed_instances == 0

    def test_monotone_in_budget(self):
        rng = np.random.default_rng(9)
        samples = [rng.standard_normal(16) for _ in range(20)]
        estimates = [
            expected_defect(
                samples,
                IDENTITY,
                DefectParams(solution_bound=t),
                num_operators=3,
                master_seed=1,
                subsample_prob=0.7,
            ).estimate
            for t in (1.0, 2.0, 4.0, 8.0)
        ]
        assert all(b <= a + 1e-8 for a, b in zip(estimates, estimates[1:]))

    def test_requires_samples_and_operators(self):
        params = DefectParams(solution_bound=1.0)
        with pytest.raises(ParameterError):
            expected_defect([], IDENTITY, params, num_operators=1, master_seed=0)
        with pytest.raises(ParameterError):
            expected_defect([np.ones(8)], IDENTITY, params, num_operators=0, master_seed=0)
