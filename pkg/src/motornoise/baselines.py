"""Multi-output linear baselines: OLS, ridge, lasso and elastic net.

Each of the four outputs is fit independently.  OLS and ridge solve the
normal equations on centered data; lasso and elastic net run cyclic
coordinate descent with soft-thresholding on standardized inputs
(coefficients are mapped back to the original scale), minimizing

    (1 / 2n) ||y - X b||^2 + lam * (ratio * ||b||_1 + (1 - ratio) / 2 * ||b||^2)

Link counting matches the network convention: nonzero coefficients plus
the four intercepts, so a dense fit on 40 inputs has 4*40 + 4 = 164 links.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .data import as_xy
from .errors import ValidationError
from .validation import as_float_matrix

N_OUTPUTS = 4
_CD_TOL = 1e-7
_CD_MAX_SWEEPS = 10000


@dataclass(frozen=True)
class LinearModel:
    """Fitted multi-output linear map; exact-zero coefficients mean "no link"."""

    coef: np.ndarray        # (4, d)
    intercept: np.ndarray   # (4,)
    kind: str
    lam: float = 0.0
    ratio: float = 1.0
    converged: bool = True

    def __post_init__(self):
        coef = np.asarray(self.coef, dtype=float).copy()
        intercept = np.asarray(self.intercept, dtype=float).reshape(-1).copy()
        if coef.ndim != 2 or coef.shape[0] != intercept.shape[0]:
            raise ValidationError("coefficient matrix and intercept disagree")
        if not (np.all(np.isfinite(coef)) and np.all(np.isfinite(intercept))):
            raise ValidationError("linear model parameters must be finite")
        coef.setflags(write=False)
        intercept.setflags(write=False)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "intercept", intercept)

    def predict(self, X) -> np.ndarray:
        X = as_float_matrix(X, name="X", n_cols=self.coef.shape[1])
        return X @ self.coef.T + self.intercept

    @property
    def links(self) -> int:
        return int(np.count_nonzero(self.coef)) + self.intercept.shape[0]

    def sparse_coefficients(self) -> list[dict[int, float]]:
        """Per-output {input index: coefficient} maps of the nonzero entries."""
        return [
            {int(j): float(c) for j, c in enumerate(row) if c != 0.0}
            for row in self.coef
        ]


def _prepare(train) -> tuple[np.ndarray, np.ndarray]:
    X, Y = as_xy(train)
    if Y.shape[1] != N_OUTPUTS:
        raise ValidationError(f"expected {N_OUTPUTS} outputs, got {Y.shape[1]}")
    return X, Y


def fit_linear(train, rank_fallback: bool = True) -> LinearModel:
    """Ordinary least squares via the normal equations on centered data.

    Rank-deficient designs fall back to ridge with lam=1e-8 (with a
    warning) unless ``rank_fallback`` is False, in which case they error.
    """
    X, Y = _prepare(train)
    n, d = X.shape
    if n <= d:
        raise ValidationError(f"OLS needs more patterns than inputs (n={n}, d={d})")
    xmean = X.mean(axis=0)
    Xc = X - xmean
    if np.linalg.matrix_rank(Xc) < d:
        if not rank_fallback:
            raise ValidationError("design matrix is rank deficient")
        warnings.warn("rank-deficient design; falling back to ridge with lam=1e-8")
        return fit_ridge(train, 1e-8)
    ymean = Y.mean(axis=0)
    beta = np.linalg.solve(Xc.T @ Xc, Xc.T @ (Y - ymean))  # (d, 4)
    return LinearModel(coef=beta.T, intercept=ymean - xmean @ beta, kind="ols")


def fit_ridge(train, lam: float) -> LinearModel:
    """Ridge regression: solve (Xc'Xc + lam*I) b = Xc'yc per output."""
    if lam < 0:
        raise ValidationError(f"lam must be >= 0, got {lam}")
    X, Y = _prepare(train)
    xmean = X.mean(axis=0)
    ymean = Y.mean(axis=0)
    Xc = X - xmean
    G = Xc.T @ Xc + lam * np.eye(X.shape[1])
    beta = np.linalg.solve(G, Xc.T @ (Y - ymean))
    return LinearModel(coef=beta.T, intercept=ymean - xmean @ beta, kind="ridge", lam=lam)


def _standardize(X: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    sigma = np.where(sigma == 0, 1.0, sigma)
    return (X - mu) / sigma, mu, sigma


def _soft(value: float, threshold: float) -> float:
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def _coordinate_descent(
    Xs: np.ndarray,
    y: np.ndarray,
    l1: float,
    l2: float,
    tol: float,
    max_sweeps: int,
) -> tuple[np.ndarray, bool]:
    """Cyclic coordinate descent for one output on standardized inputs."""
    n, d = Xs.shape
    col_sq = (Xs * Xs).sum(axis=0) / n  # 1.0 except for constant columns
    beta = np.zeros(d)
    resid = y.copy()
    for _ in range(max_sweeps):
        max_delta = 0.0
        for j in range(d):
            if col_sq[j] == 0.0:
                continue
            old = beta[j]
            if old != 0.0:
                resid += Xs[:, j] * old
            rho = float(Xs[:, j] @ resid) / n
            new = _soft(rho, l1) / (col_sq[j] + l2)
            if new != 0.0:
                resid -= Xs[:, j] * new
            beta[j] = new
            max_delta = max(max_delta, abs(new - old))
        if max_delta < tol:
            return beta, True
    return beta, False


def fit_elastic_net(
    train,
    lam: float,
    ratio: float,
    tol: float = _CD_TOL,
    max_sweeps: int = _CD_MAX_SWEEPS,
) -> LinearModel:
    """Elastic net; ratio=1 is the lasso, ratio=0 a ridge-type penalty.

    Non-convergence within ``max_sweeps`` returns the current iterate
    with ``converged=False`` rather than raising.
    """
    if lam < 0:
        raise ValidationError(f"lam must be >= 0, got {lam}")
    if not 0.0 <= ratio <= 1.0:
        raise ValidationError(f"ratio must be in [0, 1], got {ratio}")
    X, Y = _prepare(train)
    Xs, mu, sigma = _standardize(X)
    ymean = Y.mean(axis=0)
    coef = np.zeros((N_OUTPUTS, X.shape[1]))
    converged = True
    for q in range(N_OUTPUTS):
        beta_s, ok = _coordinate_descent(
            Xs, Y[:, q] - ymean[q], lam * ratio, lam * (1.0 - ratio), tol, max_sweeps
        )
        converged = converged and ok
        coef[q] = beta_s / sigma
    intercept = ymean - coef @ mu
    kind = "lasso" if ratio == 1.0 else "elastic_net"
    return LinearModel(
        coef=coef, intercept=intercept, kind=kind, lam=lam, ratio=ratio,
        converged=converged,
    )


def fit_lasso(
    train, lam: float, tol: float = _CD_TOL, max_sweeps: int = _CD_MAX_SWEEPS
) -> LinearModel:
    return fit_elastic_net(train, lam, ratio=1.0, tol=tol, max_sweeps=max_sweeps)


def lambda_max(train) -> np.ndarray:
    """Per-output critical lasso penalty max_j |x_j'(y - ybar)| / n on
    standardized inputs; at or above it every coefficient is exactly zero."""
    X, Y = _prepare(train)
    Xs, _, _ = _standardize(X)
    Yc = Y - Y.mean(axis=0)
    return np.abs(Xs.T @ Yc).max(axis=0) / X.shape[0]


_FITTERS = {
    "ridge": lambda train, lam, ratio: fit_ridge(train, lam),
    "lasso": lambda train, lam, ratio: fit_lasso(train, lam),
    "elastic_net": lambda train, lam, ratio: fit_elastic_net(train, lam, ratio),
}


def select_lambda(
    train,
    kind: str,
    lambda_grid,
    ratio: float = 0.5,
    n_folds: int = 5,
    seed: int = 0,
) -> float:
    """Pick the penalty minimizing 5-fold cross-validated global MSE.

    Fold assignment is a seeded permutation; ties break toward the larger
    (sparser) penalty.
    """
    if kind not in _FITTERS:
        raise ValidationError(f"kind must be one of {sorted(_FITTERS)}, got {kind!r}")
    grid = [float(v) for v in lambda_grid]
    if not grid:
        raise ValidationError("lambda grid must be non-empty")
    X, Y = _prepare(train)
    n = X.shape[0]
    folds = np.array_split(np.random.default_rng(seed).permutation(n), n_folds)
    best_lam = None
    best_score = np.inf
    for lam in grid:
        scores = []
        for fold in folds:
            if len(fold) == 0 or len(fold) == n:
                continue
            mask = np.ones(n, dtype=bool)
            mask[fold] = False
            model = _FITTERS[kind]((X[mask], Y[mask]), lam, ratio)
            diff = model.predict(X[fold]) - Y[fold]
            scores.append(float(np.mean(diff * diff, axis=0).sum()))
        score = float(np.mean(scores))
        if score < best_score or (score == best_score and lam > best_lam):
            best_score = score
            best_lam = lam
    return best_lam


class LinearBaseline(RegressorMixin, BaseEstimator):
    """sklearn-style wrapper over the four linear baseline fitters.

    ``lam=None`` triggers cross-validated selection on ``lambda_grid``
    (ignored for kind="ols").
    """

    def __init__(
        self,
        kind: str = "ols",
        lam: float | None = None,
        ratio: float = 0.5,
        lambda_grid=None,
        cv_seed: int = 0,
    ):
        self.kind = kind
        self.lam = lam
        self.ratio = ratio
        self.lambda_grid = lambda_grid
        self.cv_seed = cv_seed

    def fit(self, X, y):
        X = as_float_matrix(X, name="X")
        y = as_float_matrix(y, name="y", n_cols=N_OUTPUTS)
        if self.kind == "ols":
            self.model_ = fit_linear((X, y))
        else:
            lam = self.lam
            if lam is None:
                grid = self.lambda_grid
                if grid is None:
                    top = float(lambda_max((X, y)).max())
                    grid = np.geomspace(max(top * 1e-4, 1e-12), top, 20)
                lam = select_lambda((X, y), self.kind, grid, self.ratio, seed=self.cv_seed)
            self.lam_ = lam
            self.model_ = _FITTERS[self.kind]((X, y), lam, self.ratio)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        if not hasattr(self, "model_"):
            raise NotFittedError("LinearBaseline is not fitted yet")
        return self.model_.predict(X)
