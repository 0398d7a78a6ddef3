"""Truncated probability-density-operator model over an orthonormal state family.

The operator acts diagonally in the state basis, scaling the k-th coordinate
by the probability rho_k.  Truncating the convex probability series at N
states leaves an explicit ``tail`` mass; the operator norm, trace, supporting
state, and the positivity chain ``D >= D^2 >= 0`` are all computable exactly
in this diagonal representation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MassExceedsOne, NegativeProbability, NonFiniteInput, NotSymmetric
from .gsv_solver import as_stack, gsv_solve
from .spectra_core import _frozen_array

_MASS_ATOL = 1e-12
_CHAIN_CHUNK = 1 << 14


@dataclass(frozen=True)
class DensityModel:
    """Truncated probability vector (rho_1 ... rho_N) plus the dropped tail mass."""

    probs: np.ndarray
    tail: float = 0.0

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).reshape(-1)
        if p.shape[0] < 1:
            raise ValueError("at least one probability is required")
        if not np.all(np.isfinite(p)):
            raise NonFiniteInput("probabilities contain non-finite entries")
        if np.any(p < 0.0):
            raise NegativeProbability(f"negative probability at index {int(np.argmin(p)) + 1}")
        total = float(np.sum(p))
        if total > 1.0 + _MASS_ATOL:
            raise MassExceedsOne(f"probabilities sum to {total!r} > 1")
        object.__setattr__(self, "probs", _frozen_array(p))
        object.__setattr__(self, "tail", max(0.0, 1.0 - total))

    @property
    def n_states(self):
        return self.probs.shape[0]

    def truncated(self, k):
        """Model keeping only the first ``k`` states; the rest joins the tail."""
        if not 1 <= k <= self.n_states:
            raise ValueError(f"truncation index must lie in [1, {self.n_states}]")
        return DensityModel(self.probs[:k])

    def apply(self, x):
        """Diagonal action: scale coordinate k by rho_k."""
        x = np.asarray(x, dtype=float).reshape(-1)
        return self.probs * x


def build_density(probs):
    """Build a truncated density model from nonnegative probabilities.

    The entries must be nonnegative and sum to at most 1 (within 1e-12);
    the remainder ``1 - sum`` becomes the recorded tail mass.

    Raises NegativeProbability or MassExceedsOne.
    """
    return DensityModel(np.asarray(probs, dtype=float))


def density_norm(d):
    """Operator norm and supporting state of the diagonal model.

    Returns ``(norm, support_index)`` where ``norm = max rho_n`` and
    ``support_index`` is the smallest 1-based index attaining it; the
    corresponding unit state is a supporting vector of the operator (the
    state of highest probability).
    """
    idx = int(np.argmax(d.probs))
    return float(d.probs[idx]), idx + 1


def density_trace(d):
    """Trace of the truncated model, ``sum rho_n = 1 - tail``."""
    return float(np.sum(d.probs))


def check_positivity_chain(d, trials, seed):
    """Verify ``D >= D^2 >= 0`` on sampled unit vectors.

    Draws ``trials`` seeded Gaussian-normalized unit vectors x and checks the
    diagonal quadratic forms ``sum rho_n x_n^2 >= sum rho_n^2 x_n^2 >= -1e-12``
    for every sample.  Returns True iff the chain holds throughout.
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    n = d.n_states
    rho = d.probs
    rho_sq = rho * rho
    remaining = trials
    while remaining > 0:
        chunk = min(remaining, _CHAIN_CHUNK)
        x = rng.standard_normal((n, chunk))
        sq_norms = np.sum(x**2, axis=0)
        ok = sq_norms > 0.0
        xsq = x[:, ok] ** 2 / sq_norms[ok]
        first = rho @ xsq
        second = rho_sq @ xsq
        if not (np.all(first >= second) and np.all(second >= -1e-12)):
            return False
        remaining -= chunk
    return True


def joint_magnitude_state(ops):
    """Pure state jointly maximizing the summed squared actions of observables.

    ``ops`` is a stack of symmetric matrices (finite truncations of
    selfadjoint observables); for symmetric T the Gram term T^T T equals T^2,
    so the solve delegates directly to :func:`gsv_solve`.

    Raises NotSymmetric when a matrix deviates from symmetry beyond 1e-10
    relative (Frobenius).
    """
    ops = as_stack(ops)
    for k, t in enumerate(ops.mats):
        if t.shape[0] != t.shape[1]:
            raise NotSymmetric(f"observable {k} is not square: shape {t.shape}")
        if np.linalg.norm(t - t.T) > 1e-10 * np.linalg.norm(t):
            raise NotSymmetric(f"observable {k} is not symmetric to 1e-10 relative")
    return gsv_solve(ops)
