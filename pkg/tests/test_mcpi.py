import numpy as np
import pytest

from corrpca.datagen import ExperimentSpec, sample_mvn
from corrpca.linalg import sym_evd
from corrpca.mcpi import (
    DeflationState,
    DegenerateInputError,
    MCPIConfig,
    NumericalSingularityError,
    build_deflated_operator,
    fit,
    mcpi_first_component,
    mcpi_ith_component,
    standard_pca,
    woodbury_update,
)

DEMO_SCATTER = np.array([[8.0, 3.0, -1.0], [3.0, 4.0, -2.0], [-1.0, -2.0, 6.0]])


def clean_data(n=400, seed=0, scatter=DEMO_SCATTER):
    spec = ExperimentSpec(n=n, p=scatter.shape[0], scatter=scatter, seed=seed)
    return sample_mvn(spec)


def huge_sigma(X):
    return 1e6 * float(np.max(np.linalg.norm(X, axis=1)))


def abs_cos(u, v):
    return abs(float(u @ v))


class TestWoodburyUpdate:
    def test_identity_plus_rank_one(self):
        v = np.array([0.0, 1.0, 0.0])
        Q = woodbury_update(np.eye(3), v)
        assert np.allclose(Q, np.eye(3) - np.outer(v, v) / 2.0, atol=1e-14)

    def test_inverse_oracle(self):
        rng = np.random.default_rng(0)
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        P = np.zeros((4, 4))
        Q = np.eye(4)
        for i in range(3):
            v = q[:, i]
            Q = woodbury_update(Q, v)
            P = P + np.outer(v, v)
            assert np.max(np.abs((np.eye(4) + P) @ Q - np.eye(4))) <= 1e-10

    def test_two_orthogonal_updates_analytic(self):
        q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((5, 5)))
        v1, v2 = q[:, 0], q[:, 1]
        Q = woodbury_update(woodbury_update(np.eye(5), v1), v2)
        expected = np.eye(5) - (np.outer(v1, v1) + np.outer(v2, v2)) / 2.0
        assert np.max(np.abs(Q - expected)) <= 1e-10

    def test_corrupted_state_detected(self):
        v = np.array([1.0, 0.0])
        with pytest.raises(NumericalSingularityError):
            woodbury_update(-np.eye(2), v)


class TestBuildDeflatedOperator:
    def test_empty_state_is_shifted_scatter(self):
        S = DEMO_SCATTER
        state = DeflationState.initial(3)
        K = build_deflated_operator(S, state)
        assert np.allclose(K, S + np.max(np.abs(np.diag(S))) * np.eye(3))

    def test_hand_computed_2x2(self):
        S = np.diag([4.0, 1.0])
        state = DeflationState.initial(2)
        state.add(np.array([1.0, 0.0]))
        K = build_deflated_operator(S, state)
        assert np.allclose(K, np.diag([0.0, 3.0]), atol=1e-12)
        assert np.allclose(sym_evd(K).vectors[:, 0], [0.0, 1.0])

    def test_found_component_stays_eigendirection(self):
        # with P = v v^T the pre-shift operator sends v to -(v^T S v)/2 v,
        # so v remains an eigenvector and never leaks into the complement
        rng = np.random.default_rng(2)
        B = rng.standard_normal((4, 4))
        S = B @ B.T
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        v = q[:, 0]
        state = DeflationState.initial(4)
        state.add(v)
        K_pre = state.Q @ (S - state.P @ S - S @ state.P)
        expected = -0.5 * float(v @ S @ v) * v
        assert np.max(np.abs(K_pre @ v - expected)) <= 1e-8
        K = build_deflated_operator(S, state)
        leak = (np.eye(4) - state.P) @ (K @ v)
        assert np.max(np.abs(leak)) <= 1e-8
        # on the complement the operator acts as the compressed scatter
        for u in q[:, 1:].T:
            assert np.max(np.abs(K_pre @ u - (np.eye(4) - state.P) @ (S @ u))) <= 1e-8


class TestFirstComponent:
    def test_single_direction_data(self):
        c = 3.0
        X = np.array([[c, 0.0], [-c, 0.0], [c, 0.0], [-c, 0.0]])
        v0 = np.array([1.0, 1.0]) / np.sqrt(2)
        v, diag = mcpi_first_component(X, 1.0, v0, MCPIConfig())
        assert diag.converged
        assert np.allclose(np.abs(v), [1.0, 0.0], atol=1e-8)

    def test_large_sigma_reduces_to_pca(self):
        X = clean_data(seed=3)
        top = sym_evd(X.T @ X).vectors[:, 0]
        v0 = np.array([1.0, 0.0, 0.0])
        v, diag = mcpi_first_component(X, huge_sigma(X), v0, MCPIConfig())
        assert diag.converged
        assert abs_cos(v, top) >= 1.0 - 1e-6

    def test_sign_fixed_and_unit(self):
        X = clean_data(seed=4)
        v, _ = mcpi_first_component(X, 5.0, np.array([0.0, 1.0, 0.0]), MCPIConfig())
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-12
        assert v[np.argmax(np.abs(v))] > 0


class TestIthComponent:
    def test_empty_state_matches_first(self):
        X = clean_data(seed=5)
        v0 = np.array([1.0, 0.0, 0.0])
        sigma = 4.0
        state = DeflationState.initial(3)
        v_first, _ = mcpi_first_component(X, sigma, v0, MCPIConfig())
        v_ith, _ = mcpi_ith_component(X, state, sigma, v0, MCPIConfig())
        assert abs_cos(v_first, v_ith) >= 1.0 - 1e-8

    def test_large_sigma_second_eigenvector(self):
        X = clean_data(seed=6)
        pairs = sym_evd(X.T @ X)
        state = DeflationState.initial(3)
        state.add(pairs.vectors[:, 0])
        v0 = pairs.vectors[:, 1]
        v, diag = mcpi_ith_component(X, state, huge_sigma(X), v0, MCPIConfig())
        assert diag.converged
        assert abs_cos(v, pairs.vectors[:, 1]) >= 1.0 - 1e-4

    def test_orthogonal_to_prior_components(self):
        X = clean_data(seed=7)
        pairs = sym_evd(X.T @ X)
        state = DeflationState.initial(3)
        state.add(pairs.vectors[:, 0])
        v, _ = mcpi_ith_component(
            X, state, 2.0, pairs.vectors[:, 1], MCPIConfig()
        )
        for prior in state.components:
            assert abs_cos(v, prior) <= 1e-8


class TestFit:
    def test_orthonormal_components(self):
        X = clean_data(seed=8)
        res = fit(X, MCPIConfig(n_decay=10))
        V = res.components
        assert np.max(np.abs(V.T @ V - np.eye(3))) <= 1e-6

    def test_apriori_eigenvalues_sorted(self):
        X = clean_data(seed=9)
        res = fit(X, MCPIConfig(n_decay=5))
        assert np.all(np.diff(res.apriori_eigenvalues) <= 0)

    def test_p1_degenerate(self):
        X = np.abs(np.random.default_rng(10).standard_normal((20, 1))) + 0.5
        res = fit(X, MCPIConfig(n_decay=3))
        assert res.components.shape == (1, 1)
        assert res.components[0, 0] == pytest.approx(1.0)

    def test_frozen_huge_sigma_matches_pca(self):
        X = clean_data(seed=11)
        cfg = MCPIConfig(sigma0=huge_sigma(X), n_decay=1)
        res = fit(X, cfg)
        base = standard_pca(X)
        cos = np.abs(np.sum(res.components * base.components, axis=0))
        assert np.all(cos >= 1.0 - 1e-4)

    def test_deterministic(self):
        X = clean_data(seed=12)
        cfg = MCPIConfig(n_decay=8)
        r1 = fit(X, cfg)
        r2 = fit(X, cfg)
        assert r1.components.tobytes() == r2.components.tobytes()
        assert r1.apriori_eigenvalues.tobytes() == r2.apriori_eigenvalues.tobytes()

    def test_sigma_schedule_is_geometric(self):
        X = clean_data(seed=13)
        cfg = MCPIConfig(n_decay=7)
        res = fit(X, cfg)
        n = X.shape[0]
        for i in range(2):  # iterated components only
            sigma0 = np.sqrt(n * res.apriori_eigenvalues[i])
            expected_final = sigma0 * cfg.eta ** (cfg.n_decay - 1)
            assert res.diagnostics[i].final_sigma == pytest.approx(expected_final, rel=1e-12)

    def test_last_component_via_null_space(self):
        X = clean_data(seed=14)
        res = fit(X, MCPIConfig(n_decay=5))
        assert res.diagnostics[-1].method == "null_space"
        v_last = res.components[:, -1]
        assert np.linalg.norm(res.components[:, :2].T @ v_last) <= 1e-8

    def test_rank_deficient_rejected(self):
        X = np.ones((10, 3))
        with pytest.raises(DegenerateInputError):
            fit(X, MCPIConfig())

    def test_n_less_than_p_rejected(self):
        with pytest.raises(DegenerateInputError):
            fit(np.ones((2, 3)), MCPIConfig())

    def test_centering_flag(self):
        rng = np.random.default_rng(15)
        X = clean_data(seed=16) + 50.0
        res = fit(X, MCPIConfig(n_decay=3, center=True))
        ref = fit(X - X.mean(axis=0), MCPIConfig(n_decay=3))
        assert np.allclose(res.components, ref.components)

    def test_weight_recompute_matches_algorithm(self):
        # one weight recomputed independently with the exact residual operator
        from corrpca.correntropy import gaussian_kernel, residual_weights

        X = clean_data(seed=17)
        pairs = sym_evd(X.T @ X / X.shape[0])
        state = DeflationState.initial(3)
        state.add(pairs.vectors[:, 0])
        v = pairs.vectors[:, 1]
        sigma = 2.5
        R = np.eye(3) - state.P - np.outer(v, v)
        w = residual_weights(X, R, sigma)
        k = 123
        assert w[k] == pytest.approx(gaussian_kernel(R @ X[k], sigma), rel=1e-13)


class TestStandardPCA:
    def test_axis_data(self):
        X = np.diag([3.0, 2.0, 1.0]) @ np.eye(3)
        X = np.vstack([X, -X])
        res = standard_pca(X)
        assert np.allclose(np.abs(res.components), np.eye(3))

    def test_definitional_match_with_sym_evd(self):
        X = clean_data(seed=18)
        res = standard_pca(X)
        pairs = sym_evd(X.T @ X / X.shape[0])
        assert np.array_equal(res.components, pairs.vectors)
        assert np.array_equal(res.apriori_eigenvalues, pairs.values)

    def test_recovers_demo_directions_within_sampling_error(self):
        X = clean_data(n=4000, seed=19)
        truth = sym_evd(DEMO_SCATTER).vectors
        est = standard_pca(X).components
        cos = np.abs(np.sum(est * truth, axis=0))
        assert np.all(cos >= 0.97)


class TestConfigValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"eta": 0.0},
            {"eta": 1.0},
            {"n_decay": 0},
            {"inner_tol": 0.0},
            {"outer_max_iter": 0},
            {"sigma0": -1.0},
        ],
    )
    def test_rejects_bad_config(self, kwargs):
        with pytest.raises(ValueError):
            MCPIConfig(**kwargs).validate()
