"""Correntropy power-iteration PCA solvers.

Three layers:

* ``mcpi_first_component`` -- fixed-point loop for the leading component:
  freeze the sample weights, power-iterate on the weighted scatter, refresh
  the weights, repeat.
* ``mcpi_ith_component`` -- same loop on the deflated, diagonally shifted
  operator K = Q (S - P S - S P) + theta I, which removes the components
  already found.
* ``fit`` -- full decomposition: an a-priori eigendecomposition seeds each
  component and its kernel size (sigma_i = sqrt(lambda_i)), the kernel is
  shrunk geometrically (sigma <- eta sigma) for n_decay rounds per
  component, projections are maintained with a rank-one Woodbury inverse
  update, and the last component is read off the null space.

``standard_pca`` provides the plain eigendecomposition baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .correntropy import all_underflowed, residual_weights, weighted_scatter
from .linalg import (
    EigenPairs,
    fix_sign,
    null_space_vector,
    orthogonalize_against,
    power_iteration,
    sym_evd,
)


class SigmaTooSmallError(RuntimeError):
    """All sample weights underflowed; carries the last valid direction."""

    def __init__(self, last_valid: np.ndarray):
        super().__init__("kernel size shrank until every sample weight underflowed")
        self.last_valid = last_valid


class NumericalSingularityError(RuntimeError):
    """Woodbury denominator collapsed; deflation state is corrupted."""


class DegenerateInputError(ValueError):
    """Input matrix is (numerically) rank deficient or too small."""


@dataclass
class MCPIConfig:
    """Loop tolerances and the kernel-shrinking schedule.

    ``sigma0`` overrides the sqrt(lambda_i) initial kernel size for every
    component when set (used to freeze sigma large and recover plain PCA).
    """

    eta: float = 0.95
    n_decay: int = 65
    inner_tol: float = 1e-10
    inner_max_iter: int = 1000
    outer_tol: float = 1e-8
    outer_max_iter: int = 200
    center: bool = False
    sigma0: float | None = None

    def validate(self) -> None:
        if not (0.0 < self.eta < 1.0):
            raise ValueError(f"eta must be in (0,1), got {self.eta}")
        if self.n_decay < 1:
            raise ValueError("n_decay must be >= 1")
        if self.inner_tol <= 0 or self.outer_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.inner_max_iter < 1 or self.outer_max_iter < 1:
            raise ValueError("iteration caps must be >= 1")
        if self.sigma0 is not None and self.sigma0 <= 0:
            raise ValueError("sigma0 must be positive when set")


@dataclass
class DeflationState:
    """Projection P onto found components, its companion Q = (I+P)^-1,
    and the components themselves."""

    P: np.ndarray
    Q: np.ndarray
    components: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def initial(cls, p: int) -> "DeflationState":
        return cls(P=np.zeros((p, p)), Q=np.eye(p), components=[])

    def add(self, v: np.ndarray) -> None:
        v = np.asarray(v, dtype=float)
        self.Q = woodbury_update(self.Q, v)
        self.P = self.P + np.outer(v, v)
        self.components.append(v)


def woodbury_update(Q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rank-one inverse update: from (I+P)^-1 to (I + P + v v^T)^-1."""
    Q = np.asarray(Q, dtype=float)
    v = np.asarray(v, dtype=float)
    q = Q @ v
    denom = 1.0 + float(v @ q)
    if denom <= 1e-12:
        raise NumericalSingularityError(f"update denominator {denom:g} <= 1e-12")
    return Q - np.outer(q, q) / denom


def build_deflated_operator(S: np.ndarray, state: DeflationState) -> np.ndarray:
    """K = Q (S - P S - S P), shifted by max |diag K| so the dominant
    eigenvalue in magnitude is the most positive one."""
    S = np.asarray(S, dtype=float)
    K = state.Q @ (S - state.P @ S - S @ state.P)
    theta = float(np.max(np.abs(np.diag(K))))
    return K + theta * np.eye(K.shape[0])


@dataclass
class ComponentDiagnostics:
    final_sigma: float
    outer_iterations: int
    inner_iterations: int
    converged: bool
    sigma_underflow: bool = False
    oscillation_detected: bool = False
    method: str = "mcpi"

    def as_dict(self) -> dict:
        return {
            "final_sigma": self.final_sigma,
            "outer_iterations": self.outer_iterations,
            "inner_iterations": self.inner_iterations,
            "converged": self.converged,
            "sigma_underflow": self.sigma_underflow,
            "oscillation_detected": self.oscillation_detected,
            "method": self.method,
        }


@dataclass
class PCAResult:
    """Ordered components (columns), a-priori eigenvalues, and per-component
    solver diagnostics."""

    components: np.ndarray
    apriori_eigenvalues: np.ndarray
    diagnostics: list[ComponentDiagnostics]


def _check_unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise ValueError("v0 must be a unit vector")
    return v


def _fixed_point_loop(X, sigma, v0, cfg, operator, residual):
    """Shared alternating scheme: freeze weights, power-iterate, repeat.

    ``operator(S)`` maps the weighted scatter to the iteration matrix and
    ``residual(v)`` builds the p x p residual operator feeding the weights.
    """
    v = _check_unit(v0)
    inner_total = 0
    converged = False
    oscillated = False
    outer = 0
    for outer in range(1, cfg.outer_max_iter + 1):
        w = residual_weights(X, residual(v), sigma)
        if all_underflowed(w):
            raise SigmaTooSmallError(last_valid=v)
        S = weighted_scatter(X, w)
        res = power_iteration(operator(S), v, cfg.inner_tol, cfg.inner_max_iter)
        inner_total += res.iterations
        oscillated = oscillated or res.oscillated
        v_new = res.vector
        if float(v_new @ v) < 0.0:  # sign ambiguity must not stall convergence
            v_new = -v_new
        if np.linalg.norm(v_new - v) <= cfg.outer_tol:
            v = v_new
            converged = True
            break
        v = v_new
    diag = ComponentDiagnostics(
        final_sigma=float(sigma),
        outer_iterations=outer,
        inner_iterations=inner_total,
        converged=converged,
        oscillation_detected=oscillated,
    )
    return v, diag


def mcpi_first_component(X, sigma, v0, cfg: MCPIConfig):
    """Leading robust component via the correntropy fixed-point iteration."""
    X = np.asarray(X, dtype=float)
    p = X.shape[1]
    eye = np.eye(p)
    v, diag = _fixed_point_loop(
        X, sigma, v0, cfg,
        operator=lambda S: S,
        residual=lambda v: eye - np.outer(v, v),
    )
    return fix_sign(v), diag


def mcpi_ith_component(X, state: DeflationState, sigma, v0, cfg: MCPIConfig):
    """Next robust component, deflating the directions already in ``state``."""
    X = np.asarray(X, dtype=float)
    p = X.shape[1]
    eye = np.eye(p)
    v0 = _check_unit(v0)
    if state.components:
        v0 = orthogonalize_against(v0, state.components)
    v, diag = _fixed_point_loop(
        X, sigma, v0, cfg,
        operator=lambda S: build_deflated_operator(S, state),
        residual=lambda v: eye - state.P - np.outer(v, v),
    )
    if state.components:  # guard against floating-point drift out of the complement
        v = orthogonalize_against(v, state.components)
    return fix_sign(v), diag


def _shrinking_rounds(X, state, sigma, v, cfg):
    """n_decay rounds of {solve at fixed sigma; sigma <- eta sigma}."""
    diag = None
    underflow = False
    outer_total = 0
    inner_total = 0
    oscillated = False
    for _ in range(cfg.n_decay):
        try:
            v, diag = mcpi_ith_component(X, state, sigma, v, cfg)
        except SigmaTooSmallError as err:
            v = err.last_valid
            underflow = True
            break
        outer_total += diag.outer_iterations
        inner_total += diag.inner_iterations
        oscillated = oscillated or diag.oscillation_detected
        sigma *= cfg.eta
    final_sigma = diag.final_sigma if diag is not None else float(sigma)
    return v, ComponentDiagnostics(
        final_sigma=final_sigma,
        outer_iterations=outer_total,
        inner_iterations=inner_total,
        converged=diag.converged if diag is not None else False,
        sigma_underflow=underflow,
        oscillation_detected=oscillated,
    )


def _prepare(X, cfg: MCPIConfig):
    cfg.validate()
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DegenerateInputError(f"expected an n x p matrix, got shape {X.shape}")
    n, p = X.shape
    if n < p or p < 1:
        raise DegenerateInputError(f"need n >= p >= 1, got n={n}, p={p}")
    if cfg.center:
        X = X - X.mean(axis=0)
    apriori = sym_evd(X.T @ X / n)
    if apriori.values[-1] <= 1e-10 * apriori.values[0]:
        raise DegenerateInputError("input is numerically rank deficient")
    return X, apriori


def fit(X, cfg: MCPIConfig | None = None) -> PCAResult:
    """Full robust decomposition via the kernel-shrinking schedule."""
    cfg = cfg if cfg is not None else MCPIConfig()
    X, apriori = _prepare(X, cfg)
    p = X.shape[1]
    state = DeflationState.initial(p)
    diags: list[ComponentDiagnostics] = []

    n = X.shape[0]
    n_iterated = p - 1 if p > 1 else 1
    for i in range(n_iterated):
        # Initial kernel size: the i-th singular value of X, i.e.
        # sqrt(n * lambda_i) with lambda_i from the scatter/n spectrum.
        # Starting at data norm scale keeps the early rounds in the
        # near-quadratic regime; n_decay shrink steps then land at the
        # per-direction noise scale instead of collapsing below it.
        sigma = cfg.sigma0 if cfg.sigma0 is not None else float(np.sqrt(n * apriori.values[i]))
        v = apriori.vectors[:, i]
        if state.components:
            v = orthogonalize_against(v, state.components)
        v, diag = _shrinking_rounds(X, state, sigma, v, cfg)
        state.add(v)
        diags.append(diag)

    if p > 1:
        v_last = null_space_vector(np.column_stack(state.components))
        state.add(v_last)
        diags.append(
            ComponentDiagnostics(
                final_sigma=float("nan"),
                outer_iterations=0,
                inner_iterations=0,
                converged=True,
                method="null_space",
            )
        )

    return PCAResult(
        components=np.column_stack(state.components),
        apriori_eigenvalues=apriori.values,
        diagnostics=diags,
    )


def standard_pca(X, center: bool = False) -> PCAResult:
    """Baseline: eigendecomposition of the (optionally centered) scatter /n."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < X.shape[1]:
        raise DegenerateInputError(f"need n >= p, got shape {X.shape}")
    if center:
        X = X - X.mean(axis=0)
    n = X.shape[0]
    pairs: EigenPairs = sym_evd(X.T @ X / n)
    diags = [
        ComponentDiagnostics(
            final_sigma=float("nan"),
            outer_iterations=0,
            inner_iterations=0,
            converged=True,
            method="evd",
        )
        for _ in range(X.shape[1])
    ]
    return PCAResult(
        components=pairs.vectors,
        apriori_eigenvalues=pairs.values,
        diagnostics=diags,
    )
