"""Tour of the building blocks beneath the fit driver.

Walks through the pieces one at a time: the Jacobi eigensolver, the
correntropy weights and weighted scatter, one deflation step with its
rank-one inverse update, and the null-space extraction of the last
component.
"""

import numpy as np

import corrpca as cp
from corrpca.mcpi import DeflationState, build_deflated_operator

SCATTER = np.array([[8.0, 3.0, -1.0], [3.0, 4.0, -2.0], [-1.0, -2.0, 6.0]])


def main():
    rng = np.random.default_rng(0)

    print("-- symmetric eigendecomposition (cyclic Jacobi) --")
    pairs = cp.sym_evd(SCATTER)
    print("eigenvalues:", np.round(pairs.values, 4))
    recon = pairs.vectors @ np.diag(pairs.values) @ pairs.vectors.T
    print("reconstruction error:", np.max(np.abs(recon - SCATTER)))

    print("\n-- correntropy weights downweight far-out samples --")
    X = cp.sample_mvn(cp.ExperimentSpec(n=8, p=3, scatter=SCATTER, seed=5))
    X[0] *= 10.0  # plant one wild row
    v = pairs.vectors[:, 0]
    R = np.eye(3) - np.outer(v, v)
    w = cp.residual_weights(X, R, sigma=3.0)
    for k, (wk, row) in enumerate(zip(w, X)):
        print(f"  sample {k}: |residual|={np.linalg.norm(R @ row):6.2f}  weight={wk:.4f}")
    S = cp.weighted_scatter(X, w)
    print("weighted scatter diagonal:", np.round(np.diag(S), 2))

    print("\n-- one deflation step --")
    state = DeflationState.initial(3)
    state.add(v)
    print("(I+P) Q - I max deviation:", np.max(np.abs((np.eye(3) + state.P) @ state.Q - np.eye(3))))
    K = build_deflated_operator(S, state)
    res = cp.power_iteration(K, np.array([0.0, 1.0, 0.0]), tol=1e-12, max_iter=1000)
    print(f"power iteration: {res.iterations} steps, converged={res.converged}")
    print("next direction:", np.round(res.vector, 4))
    print("orthogonality to first component:", abs(float(res.vector @ v)))

    print("\n-- last component from the null space --")
    v2 = res.vector - float(res.vector @ v) * v
    v2 /= np.linalg.norm(v2)
    v3 = cp.null_space_vector(np.column_stack([v, v2]))
    print("null-space vector:", np.round(v3, 4))
    print("max |V^T v3|:", float(np.max(np.abs(np.column_stack([v, v2]).T @ v3))))


if __name__ == "__main__":
    main()
