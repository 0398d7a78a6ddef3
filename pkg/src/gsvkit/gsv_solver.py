"""Solvers for unit-sphere maximizers of ``sum_i ||A_i x||^2``.

The general solver reduces the problem to the maximal eigenpair of the Gram
sum ``sum_i A_i^T A_i``.  Also provided: the closed form for a single m x 2
matrix with equal-norm columns, the Cholesky-whitened weighted variant
(quadratic energy constraint ``psi^T R psi``), and a seeded sphere-sampling
lower-bound oracle kept deliberately independent of the eigen path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, solve_triangular

from .errors import (
    ColumnNormMismatch,
    ConvergenceFailure,
    DimensionTooLarge,
    NonFiniteInput,
    NotSPD,
    NotSymmetric,
    ShapeMismatch,
    WrongShape,
)
from .spectra_core import (
    _frozen_array,
    fix_column_signs,
    gram_sum,
    max_eigenpair,
    validated_matrices,
)

_ORACLE_MAX_DIM = 10
_ORACLE_CHUNK = 1 << 17


@dataclass(frozen=True)
class OperatorStack:
    """Ordered list of real m_i x n matrices sharing the column count n."""

    mats: tuple
    ncols: int = 0

    def __post_init__(self):
        mats = validated_matrices(self.mats)
        object.__setattr__(self, "mats", mats)
        object.__setattr__(self, "ncols", mats[0].shape[1])

    def __len__(self):
        return len(self.mats)

    def __iter__(self):
        return iter(self.mats)


def as_stack(stack):
    """Coerce a stack-like object (OperatorStack or matrix sequence)."""
    if isinstance(stack, OperatorStack):
        return stack
    return OperatorStack(tuple(stack))


def objective_value(stack, x):
    """Evaluate ``sum_i ||A_i x||^2`` directly from the stack matrices."""
    stack = as_stack(stack)
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != stack.ncols:
        raise ShapeMismatch(f"vector length {x.shape[0]} != column count {stack.ncols}")
    return float(sum(np.sum((a @ x) ** 2) for a in stack.mats))


@dataclass(frozen=True)
class GsvSolution:
    """Maximum value and maximizer basis of the stacked objective.

    ``basis`` is an orthonormal n x r block spanning the merged maximal
    eigenspace of the Gram sum; every unit vector in its span (intersected
    with the unit sphere) attains ``lambda_max``.  ``objective_check`` is the
    objective re-evaluated from the stack at the first basis column, never
    from the Gram matrix.
    """

    lambda_max: float
    basis: np.ndarray
    multiplicity: int
    objective_check: float
    residual: float

    def __post_init__(self):
        basis = _frozen_array(self.basis)
        if basis.ndim != 2 or basis.shape[1] != self.multiplicity:
            raise ShapeMismatch("basis must be n x multiplicity")
        norms = np.linalg.norm(basis, axis=0)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("basis columns must be unit vectors to 1e-12")
        if abs(self.objective_check - self.lambda_max) > 1e-8 * max(
            1.0, self.lambda_max
        ):
            raise ValueError(
                "objective re-evaluation disagrees with lambda_max beyond 1e-8"
            )
        object.__setattr__(self, "basis", basis)

    @property
    def whole_sphere(self):
        """True when the eigenspace is the whole space, so every unit vector is optimal."""
        return self.multiplicity == self.basis.shape[0]


def gsv_solve(stack, gap_rtol=1e-10):
    """Solve ``max sum_i ||A_i x||^2`` over unit vectors x, exactly.

    Returns a GsvSolution with the largest eigenvalue of the Gram sum, an
    orthonormal basis of its (gap-merged) eigenspace, and a direct
    re-evaluation of the objective at the first basis column.

    Raises AllZero for an all-zero stack and propagates ConvergenceFailure
    from the eigen backend.
    """
    stack = as_stack(stack)
    pair = max_eigenpair(gram_sum(stack), gap_rtol=gap_rtol)
    check = objective_value(stack, pair.vectors[:, 0])
    return GsvSolution(
        lambda_max=pair.value,
        basis=pair.vectors,
        multiplicity=pair.multiplicity,
        objective_check=check,
        residual=pair.residual,
    )


def gsv_solve_2col_equalnorm(a):
    """Closed-form maximizer for one m x 2 matrix with equal-norm columns.

    With columns a1, a2 of equal Euclidean norm, the maximum is
    ``||a1||^2 + |a1 . a2|`` and the maximizers split into three cases on the
    sign of the dot product: orthogonal columns make every unit vector
    optimal (basis e1, e2, whole sphere), a positive dot selects
    ``(sqrt(2)/2, sqrt(2)/2)`` up to sign, a negative dot selects
    ``(-sqrt(2)/2, sqrt(2)/2)`` up to sign.  The deterministic orientation of
    :func:`fix_column_signs` is applied to the returned vector.

    Raises WrongShape unless the matrix has exactly two columns and
    ColumnNormMismatch if the column norms differ beyond
    ``1e-12 * max(||a1||, 1)``.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[1] != 2:
        raise WrongShape(f"expected an m x 2 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("matrix contains non-finite entries")
    a1, a2 = a[:, 0], a[:, 1]
    n1, n2 = np.linalg.norm(a1), np.linalg.norm(a2)
    if abs(n1 - n2) > 1e-12 * max(n1, 1.0):
        raise ColumnNormMismatch(
            f"column norms differ: {n1!r} vs {n2!r} beyond 1e-12 relative"
        )
    dot = float(a1 @ a2)
    lam = float(n1**2 + abs(dot))
    half = np.sqrt(2.0) / 2.0
    if abs(dot) <= 1e-12 * n1**2:
        basis = np.eye(2)
    elif dot > 0:
        basis = fix_column_signs(np.array([[half], [half]]))
    else:
        basis = fix_column_signs(np.array([[-half], [half]]))
    gram = a.T @ a
    residual = float(np.max(np.linalg.norm(gram @ basis - lam * basis, axis=0)))
    return GsvSolution(
        lambda_max=lam,
        basis=basis,
        multiplicity=basis.shape[1],
        objective_check=float(np.sum((a @ basis[:, 0]) ** 2)),
        residual=residual,
    )


@dataclass(frozen=True)
class WeightedProblem:
    """Field matrices E_x, E_y, E_z (each H x N) with an SPD resistance R (N x N).

    The solve maximizes the summed squared field responses subject to the
    quadratic energy constraint ``psi^T R psi = 1``.
    """

    fields: tuple
    resistance: np.ndarray

    def __post_init__(self):
        fields = validated_matrices(self.fields)
        n = fields[0].shape[1]
        r = np.asarray(self.resistance, dtype=float)
        if r.shape != (n, n):
            raise ShapeMismatch(
                f"resistance must be {n} x {n} to match the field matrices, got {r.shape}"
            )
        if not np.all(np.isfinite(r)):
            raise NonFiniteInput("resistance matrix contains non-finite entries")
        asym = np.linalg.norm(r - r.T)
        if asym > 1e-8 * np.linalg.norm(r):
            raise NotSymmetric("resistance matrix is not symmetric")
        object.__setattr__(self, "fields", fields)
        object.__setattr__(self, "resistance", _frozen_array((r + r.T) / 2.0))

    @property
    def n_nodes(self):
        return self.resistance.shape[0]


def _upper_cholesky(r):
    """Upper-triangular C with ``R = C^T C``; NotSPD carries the failing pivot."""
    c, info = lapack.dpotrf(r, lower=0, clean=1)
    if info > 0:
        raise NotSPD(info)
    if info < 0:
        raise ValueError(f"illegal value in Cholesky argument {-info}")
    return c


def weighted_gsv_solve(prob, gap_rtol=1e-10):
    """Solve the energy-constrained problem via Cholesky whitening.

    Factors ``R = C^T C`` (upper-triangular C), whitens each field matrix to
    ``A_i = E_i C^{-1}`` by triangular solves (C is never inverted
    explicitly), runs :func:`gsv_solve` on the whitened stack and maps the
    first basis column phi back through ``psi = C^{-1} phi``.  Since
    ``||phi|| = 1``, the returned psi satisfies ``psi^T R psi = 1`` within
    1e-8.

    Returns ``(psi, solution)``.  Raises NotSPD (with the failing pivot
    index, no automatic regularization) and propagates solver errors.
    """
    if not isinstance(prob, WeightedProblem):
        raise TypeError("weighted_gsv_solve expects a WeightedProblem")
    c = _upper_cholesky(prob.resistance)
    whitened = tuple(
        solve_triangular(c, e.T, trans="T", lower=False).T for e in prob.fields
    )
    solution = gsv_solve(whitened, gap_rtol=gap_rtol)
    phi = solution.basis[:, 0]
    psi = solve_triangular(c, phi, lower=False)
    energy = float(psi @ (prob.resistance @ psi))
    if abs(energy - 1.0) > 1e-8:
        raise ConvergenceFailure(
            f"whitened solution violates psi^T R psi = 1 (got {energy!r}); "
            "resistance matrix is too ill-conditioned",
            0,
        )
    return psi, solution


def brute_force_max(stack, samples, seed):
    """Sampled lower bound for the stacked objective over the unit sphere.

    Evaluates ``sum_i ||A_i x||^2`` at ``samples`` uniformly distributed unit
    vectors (normalized Gaussian draws from a generator seeded with ``seed``)
    and returns the maximum.  The value never exceeds the true maximum; it is
    a desk-scale oracle, so the ambient dimension is capped at 10.
    """
    stack = as_stack(stack)
    n = stack.ncols
    if n > _ORACLE_MAX_DIM:
        raise DimensionTooLarge(
            f"sampling oracle supports n <= {_ORACLE_MAX_DIM}, got {n}"
        )
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be at least 1")
    # Row-compress the stacked matrix through its isometric QR factor:
    # ||vstack(A) x|| == ||R x||, so per-sample cost drops to O(n^2).
    compressed = np.linalg.qr(np.vstack(stack.mats), mode="r")
    rng = np.random.default_rng(seed)
    best = -np.inf
    remaining = samples
    while remaining > 0:
        chunk = min(remaining, _ORACLE_CHUNK)
        x = rng.standard_normal((n, chunk))
        y = compressed @ x
        num = np.einsum("ij,ij->j", y, y)
        den = np.einsum("ij,ij->j", x, x)
        if np.any(den == 0.0):  # measure-zero draw; drop rather than divide
            ok = den > 0.0
            num, den = num[ok], den[ok]
            if num.size == 0:
                remaining -= chunk
                continue
        best = max(best, float(np.max(num / den)))
        remaining -= chunk
    return best
