"""Ordination: PCA, Bray-Curtis/Euclidean distances, PCoA and RDA.

Samples are the observations throughout; assay matrices are features x
samples, so they are transposed on entry. PCA runs on the SVD of the
centered matrix rather than the covariance eigendecomposition (the tests
hold the two routes against each other). All score/loading columns follow
a deterministic sign convention: the largest-magnitude loading entry of
each component is positive, so results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .container import Assay, HierarchicalExperiment, ReducedDim
from .errors import (BadComponent, BadParameter, DegenerateInput, KTooLarge, NegativeValue,
                     NoLoadings, RankDeficientDesign, UnknownColumn, ZeroSample)

_EIG_TOL = 1e-9


@dataclass(frozen=True)
class DistanceMatrix:
    values: np.ndarray  # samples x samples
    metric: str

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        n = v.shape[0]
        if v.shape != (n, n):
            raise ValueError("distance matrix must be square")
        if np.abs(np.diag(v)).max(initial=0.0) > 0:
            raise ValueError("distance matrix diagonal must be zero")
        if np.abs(v - v.T).max(initial=0.0) > 1e-12:
            raise ValueError("distance matrix must be symmetric")
        if (v < 0).any():
            raise ValueError("distances must be non-negative")
        object.__setattr__(self, "values", v)


def _sign_fix(scores: np.ndarray, loadings: np.ndarray):
    """Flip each component so its largest-|.| loading entry is positive."""
    for j in range(loadings.shape[1]):
        i = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[i, j] < 0:
            loadings[:, j] = -loadings[:, j]
            scores[:, j] = -scores[:, j]
    return scores, loadings


def pca(assay: Assay, k: int) -> ReducedDim:
    X = assay.values.T  # samples x features
    n, p = X.shape
    if k < 1 or k > min(n - 1, p):
        raise KTooLarge(f"k={k} exceeds min(samples-1, features)={min(n - 1, p)}")
    Xc = X - X.mean(axis=0)
    U, s, Vt = np.linalg.svd(Xc, full_matrices=False)
    total = float((s ** 2).sum())
    if total == 0:
        raise DegenerateInput("all samples identical: zero total variance")
    scores = U[:, :k] * s[:k]
    loadings = Vt[:k].T.copy()
    scores, loadings = _sign_fix(scores, loadings)
    ve = tuple(float(si ** 2 / total) for si in s[:k])
    return ReducedDim(scores=scores, loadings=loadings, variance_explained=ve,
                      kind="unconstrained")


def bray_curtis(assay: Assay, sample_ids=None) -> DistanceMatrix:
    X = assay.values.T  # samples x features
    if (X < 0).any():
        raise NegativeValue("Bray-Curtis needs non-negative values")
    zero = np.nonzero(X.sum(axis=1) == 0)[0]
    if zero.size:
        i = int(zero[0])
        raise ZeroSample(sample_ids[i] if sample_ids is not None else i)
    num = np.abs(X[:, None, :] - X[None, :, :]).sum(axis=2)
    den = (X[:, None, :] + X[None, :, :]).sum(axis=2)
    d = num / den
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(values=d, metric="bray_curtis")


def euclidean(assay: Assay) -> DistanceMatrix:
    X = assay.values.T
    sq = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
    d = np.sqrt(np.maximum(sq, 0.0))
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(values=(d + d.T) / 2, metric="euclidean")


def pcoa(dist: DistanceMatrix, k: int) -> ReducedDim:
    """Classical scaling of a distance matrix.

    Negative eigenvalues are excluded from the axes but enter the
    variance-explained denominator through the sum of absolute values.
    """
    if k < 1:
        raise KTooLarge("k must be >= 1")
    D = dist.values
    n = D.shape[0]
    J = np.eye(n) - np.ones((n, n)) / n
    B = -0.5 * J @ (D ** 2) @ J
    vals, vecs = np.linalg.eigh(B)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    tol = max(np.abs(vals).max(initial=0.0), 1.0) * _EIG_TOL
    positive = np.nonzero(vals > tol)[0]
    if len(positive) < k:
        raise KTooLarge(f"only {len(positive)} positive eigenvalues, k={k}")
    scores = vecs[:, positive[:k]] * np.sqrt(vals[positive[:k]])
    for j in range(k):  # no loadings here; anchor the sign on the scores
        i = int(np.argmax(np.abs(scores[:, j])))
        if scores[i, j] < 0:
            scores[:, j] = -scores[:, j]
    denom = float(np.abs(vals).sum())
    ve = tuple(float(vals[i] / denom) for i in positive[:k])
    return ReducedDim(scores=scores, loadings=None, variance_explained=ve,
                      kind="unconstrained")


@dataclass(frozen=True)
class CovariateDesign:
    names: tuple[str, ...]
    matrix: np.ndarray  # samples x p, standardized / one-hot encoded


def encode_covariates(exp: HierarchicalExperiment, covariate_names) -> CovariateDesign:
    """Numeric covariates standardized to mean 0, sd 1; categoricals one-hot
    with the first (lexicographic) level dropped."""
    if not covariate_names:
        raise RankDeficientDesign("at least one covariate is required")
    cols = []
    names = []
    for name in covariate_names:
        col = exp.col_data.column(name)
        if any(v is None for v in col.values):
            raise BadParameter(name, f"covariate {name!r} has missing values")
        if col.kind == "real":
            x = np.asarray(col.values, dtype=float)
            sd = x.std(ddof=1)
            if sd == 0:
                raise RankDeficientDesign(f"covariate {name!r} is constant")
            cols.append((x - x.mean()) / sd)
            names.append(name)
        else:
            levels = sorted(set(col.values))
            if len(levels) < 2:
                raise RankDeficientDesign(f"covariate {name!r} is constant")
            for lev in levels[1:]:
                cols.append(np.asarray([1.0 if v == lev else 0.0 for v in col.values]))
                names.append(f"{name}={lev}")
    return CovariateDesign(names=tuple(names), matrix=np.column_stack(cols))


def rda(exp: HierarchicalExperiment, assay_name: str, covariate_names, k: int) -> ReducedDim:
    """Redundancy analysis: PCA of the covariate-explained part of the assay.

    Variance-explained fractions are reported against the TOTAL variance of
    the response, so the constrained/unconstrained split stays visible.
    """
    for name in covariate_names:
        if name not in exp.col_data.columns:
            raise UnknownColumn(f"no col_data column {name!r}")
    design = encode_covariates(exp, covariate_names)
    Y = exp.assay(assay_name).values.T  # samples x features
    n = Y.shape[0]
    Yc = Y - Y.mean(axis=0)
    X = np.column_stack([np.ones(n), design.matrix])
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise RankDeficientDesign("design matrix is rank deficient")
    B, *_ = np.linalg.lstsq(X, Yc, rcond=None)
    Yhat = X @ B

    total = float((Yc ** 2).sum())
    if total == 0:
        raise DegenerateInput("response has zero variance")
    U, s, Vt = np.linalg.svd(Yhat, full_matrices=False)
    tol = max(s.max(initial=0.0), 1.0) * _EIG_TOL
    r = int((s > tol).sum())
    if k < 1 or k > r:
        raise KTooLarge(f"only {r} constrained axes available, k={k}")
    scores = U[:, :k] * s[:k]
    loadings = Vt[:k].T.copy()
    scores, loadings = _sign_fix(scores, loadings)
    ve = tuple(float(si ** 2 / total) for si in s[:k])

    cov_scores = np.empty((design.matrix.shape[1], k))
    for j in range(design.matrix.shape[1]):
        xj = design.matrix[:, j]
        for i in range(k):
            cov_scores[j, i] = np.corrcoef(xj, scores[:, i])[0, 1]
    return ReducedDim(scores=scores, loadings=loadings, variance_explained=ve,
                      kind="constrained", covariate_scores=cov_scores,
                      covariate_names=design.names)


def constrained_axis_count(exp: HierarchicalExperiment, assay_name: str, covariate_names) -> int:
    """Rank of the fitted response, i.e. how many RDA axes exist."""
    design = encode_covariates(exp, covariate_names)
    Y = exp.assay(assay_name).values.T
    Yc = Y - Y.mean(axis=0)
    X = np.column_stack([np.ones(Y.shape[0]), design.matrix])
    B, *_ = np.linalg.lstsq(X, Yc, rcond=None)
    s = np.linalg.svd(X @ B, compute_uv=False)
    tol = max(s.max(initial=0.0), 1.0) * _EIG_TOL
    return int((s > tol).sum())


def top_loadings(rd: ReducedDim, component: int, n: int, feature_ids) -> list[dict]:
    """Features ranked by |loading| on one component, signed values reported."""
    if rd.loadings is None:
        raise NoLoadings("this reduced dim carries no loadings")
    if component < 1 or component > rd.k:
        raise BadComponent(f"component {component} outside 1..{rd.k}")
    if n < 0:
        raise ValueError("n must be >= 0")
    col = rd.loadings[:, component - 1]
    ids = list(feature_ids)
    order = sorted(range(len(ids)), key=lambda i: (-abs(col[i]), ids[i]))
    return [{"feature_id": ids[i], "loading": float(col[i])} for i in order[:min(n, len(ids))]]
