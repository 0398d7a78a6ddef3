"""Statistically normalized vectors, Lagrangian critical systems, and score ranking.

A vector is statistically normalized when its mean is zero and its population
standard deviation (divisor m) is one; such vectors live on the radius-sqrt(m)
sphere intersected with the zero-sum hyperplane.  This module provides the
standardization transform, membership checks, residuals of the
sphere-constrained Lagrangian critical system, paired-vector identities, and
the multivariate ranking pipeline built on the supporting-vector solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstantVector,
    LengthMismatch,
    NotStandardized,
    NotSymmetric,
    ShapeMismatch,
    TooShort,
    ZeroVector,
)
from .gsv_solver import gsv_solve
from .spectra_core import _frozen_array

_STANDARDIZED_ATOL = 1e-12


def _population_std(values, mean):
    return float(np.sqrt(np.mean((values - mean) ** 2)))


@dataclass(frozen=True)
class StatVector:
    """Real vector together with its own mean and population standard deviation."""

    values: np.ndarray
    mean: float = 0.0
    std: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ShapeMismatch("vector contains non-finite entries")
        mean = float(np.mean(v))
        object.__setattr__(self, "values", _frozen_array(v))
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "std", _population_std(v, mean))

    def __len__(self):
        return self.values.shape[0]

    @property
    def standardized(self):
        """True when the stored values have zero mean and unit population std."""
        return (
            len(self) >= 2
            and abs(self.mean) <= _STANDARDIZED_ATOL
            and abs(self.std - 1.0) <= _STANDARDIZED_ATOL
        )


def standardize(x):
    """Center and scale ``x`` to zero mean and unit population standard deviation.

    Uses the population convention (divisor m), so the output has squared
    Euclidean norm m.  The two-point case is computed exactly: it always
    standardizes to ``(1, -1)`` or ``(-1, 1)``.

    Raises TooShort for m < 2 and ConstantVector when the standard deviation
    vanishes (below ``1e-14 * max(1, |mean|)``).
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    m = x.shape[0]
    if m < 2:
        raise TooShort(f"standardization needs m >= 2, got m={m}")
    if not np.all(np.isfinite(x)):
        raise ShapeMismatch("vector contains non-finite entries")
    mu = float(np.mean(x))
    sigma = _population_std(x, mu)
    if sigma <= 1e-14 * max(1.0, abs(mu)):
        raise ConstantVector()
    if m == 2:
        # the only standardized vectors in R^2 are +-(1, -1); avoid round-off
        values = np.array([1.0, -1.0]) if x[0] > x[1] else np.array([-1.0, 1.0])
    else:
        values = (x - mu) / sigma
    return StatVector(values)


def is_snv(x, tol=1e-10):
    """Membership test for statistically normalized vectors.

    True iff ``|sum x_i| <= tol * m`` and ``|sum x_i^2 - m| <= tol * m``,
    i.e. x lies on the radius-sqrt(m) sphere inside the zero-sum hyperplane.
    Total over finite vectors; meaningful for m >= 2.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    m = x.shape[0]
    return bool(
        abs(float(np.sum(x))) <= tol * m
        and abs(float(np.sum(x * x)) - m) <= tol * m
    )


@dataclass(frozen=True)
class StatMatrix:
    """Column-standardized data matrix with provenance of the raw means and stds."""

    data: np.ndarray
    col_means: np.ndarray
    col_stds: np.ndarray
    standardized: bool

    def __post_init__(self):
        object.__setattr__(self, "data", _frozen_array(self.data))
        object.__setattr__(self, "col_means", _frozen_array(self.col_means))
        object.__setattr__(self, "col_stds", _frozen_array(self.col_stds))

    @property
    def shape(self):
        return self.data.shape

    @classmethod
    def from_raw(cls, raw, columns=None):
        """Standardize every column of ``raw``, recording its mean and std.

        ``columns`` optionally names the columns for error reporting;
        ConstantVector is raised naming the offending column.
        """
        raw = np.asarray(raw, dtype=float)
        if raw.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D data matrix, got shape {raw.shape}")
        m, n = raw.shape
        if m < 2:
            raise TooShort(f"standardization needs m >= 2 rows, got m={m}")
        data = np.empty_like(raw)
        means = np.empty(n)
        stds = np.empty(n)
        for j in range(n):
            name = columns[j] if columns is not None else j
            try:
                data[:, j] = standardize(raw[:, j]).values
            except ConstantVector:
                raise ConstantVector(column=name) from None
            means[j] = np.mean(raw[:, j])
            stds[j] = _population_std(raw[:, j], means[j])
        return cls(data, means, stds, True)

    @classmethod
    def from_standardized(cls, data):
        """Wrap data whose columns are already standardized; validates each column."""
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D data matrix, got shape {data.shape}")
        m, n = data.shape
        for j in range(n):
            col = StatVector(data[:, j])
            norm_sq = float(np.sum(data[:, j] ** 2))
            if not col.standardized or abs(norm_sq - m) > 1e-10 * m:
                raise NotStandardized(f"column {j} is not standardized")
        return cls(data, np.zeros(n), np.ones(n), True)


@dataclass(frozen=True)
class CriticalSystem:
    """Coefficients of the sphere-constrained Lagrangian critical system.

    The stationarity equations place ``2 * lam`` on the diagonal and the
    symmetric couplings ``c_jk`` off the diagonal; the diagonal of ``coeffs``
    is unused and stored as zero.
    """

    coeffs: np.ndarray
    lam: float

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ShapeMismatch(f"coefficients must be square, got shape {c.shape}")
        if not np.array_equal(c, c.T):
            raise NotSymmetric("coupling coefficients must satisfy c_jk == c_kj exactly")
        c = c.copy()
        np.fill_diagonal(c, 0.0)
        object.__setattr__(self, "coeffs", _frozen_array(c))
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def n(self):
        return self.coeffs.shape[0]

    @classmethod
    def equal_coefficients(cls, n, c, lam):
        """System with every off-diagonal coupling equal to ``c``."""
        coeffs = np.full((n, n), float(c))
        np.fill_diagonal(coeffs, 0.0)
        return cls(coeffs, lam)

    def matrix(self):
        """The critical-system matrix: 2*lam on the diagonal, c_jk off it."""
        m = self.coeffs.copy()
        np.fill_diagonal(m, 2.0 * self.lam)
        return m


def critical_residual(sys, x):
    """Euclidean norm of the stacked critical-system residual at ``x``.

    Stacks the stationarity residual (the system matrix applied to x, which
    must vanish) with the sphere defect ``sum x_j^2 - 1``.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != sys.n:
        raise ShapeMismatch(f"vector length {x.shape[0]} != system size {sys.n}")
    if not np.any(x):
        raise ZeroVector("critical residual requires a nonzero vector")
    stationarity = sys.matrix() @ x
    sphere = float(np.sum(x * x)) - 1.0
    return float(np.linalg.norm(np.append(stationarity, sphere)))


def score_rows(m, gap_rtol=1e-10):
    """Oriented supporting-vector scores for the rows of a standardized matrix.

    Solves ``max ||M x||^2`` over unit vectors and orients x so the score
    total ``1^T M x`` is nonnegative (scores predominantly positive, high
    score = best row).  A score total within round-off of zero keeps the
    solver's deterministic orientation.  Returns ``(scores, solution)``.
    """
    if not isinstance(m, StatMatrix):
        raise TypeError("score_rows expects a StatMatrix")
    if not m.standardized:
        raise NotStandardized("matrix columns must be standardized")
    rows, cols = m.shape
    if rows <= cols:
        raise ShapeMismatch(f"need more rows than columns, got {rows} x {cols}")
    solution = gsv_solve([m.data], gap_rtol=gap_rtol)
    scores = m.data @ solution.basis[:, 0]
    total = float(np.sum(scores))
    if total < -1e-12 * max(1.0, float(np.sum(np.abs(scores)))):
        scores = -scores
    return scores, solution


def rank_by_score(m, gap_rtol=1e-10):
    """Rank the rows of a standardized matrix by their supporting-vector scores.

    Returns ``[(row_index, score), ...]`` sorted by descending score with
    ties broken by ascending original index.
    """
    scores, _ = score_rows(m, gap_rtol=gap_rtol)
    order = np.argsort(-scores, kind="stable")
    return [(int(i), float(scores[i])) for i in order]


def snv_pair_identities(x, y):
    """Dot-product identities for a pair of statistically normalized vectors.

    Returns ``(dot, bound_ok, formula_gap)`` where ``bound_ok`` checks
    ``|x . y| <= m`` (within 1e-10 * m) and ``formula_gap`` is the defect of
    the identity ``x . y = (||x + y||^2 - 2m) / 2``.
    """
    if not isinstance(x, StatVector) or not isinstance(y, StatVector):
        raise TypeError("snv_pair_identities expects StatVector operands")
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    if not (x.standardized and y.standardized):
        raise NotStandardized("both vectors must be standardized")
    m = len(x)
    dot = float(x.values @ y.values)
    bound_ok = abs(dot) <= m + 1e-10 * m
    formula = (float(np.sum((x.values + y.values) ** 2)) - 2.0 * m) / 2.0
    return dot, bound_ok, abs(dot - formula)
