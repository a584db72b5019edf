"""Dense symmetric eigenvalue computation and definiteness tests.

This is the exact-answer oracle the bound and selection routines are
measured against, so the contract is strict: full real spectrum, ascending
order, deterministic for identical inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, laplacian

SYMMETRY_TOL = 1e-12


def _as_symmetric(m) -> np.ndarray:
    """Validate squareness/finiteness/symmetry, then return (M + M^T)/2.

    Symmetrizing after the check removes representational noise without
    masking modeling errors.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValueError(
            f"matrix is asymmetric beyond tolerance {SYMMETRY_TOL}"
        )
    return (m + m.T) / 2.0


def eigenvalues_sym(m) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending."""
    return np.linalg.eigvalsh(_as_symmetric(m))


def is_negative_definite(m):
    """(True, margin) when the largest eigenvalue `margin` is negative."""
    margin = float(eigenvalues_sym(m)[-1])
    return margin < 0.0, margin


@dataclass(frozen=True)
class PinningPlan:
    """Pinning set plus per-node injection gains.

    `gains` has one entry per node, strictly positive exactly on the pinned
    nodes; the binary indicator is derived from it.
    """

    pins: tuple
    gains: np.ndarray

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=float)
        pins = tuple(sorted(set(int(i) for i in self.pins)))
        object.__setattr__(self, "pins", pins)
        object.__setattr__(self, "gains", gains)
        if pins and (pins[0] < 0 or pins[-1] >= gains.size):
            raise ValueError(f"pins {pins} outside [0, {gains.size - 1}]")
        on = np.zeros(gains.size, dtype=bool)
        on[list(pins)] = True
        if np.any(gains[on] <= 0.0):
            raise ValueError("pinned nodes must have strictly positive gains")
        if np.any(gains[~on] != 0.0):
            raise ValueError("unpinned nodes must have zero gain")

    @classmethod
    def uniform(cls, pins, gain, n) -> "PinningPlan":
        """Plan with one common gain on every pinned node."""
        pins = tuple(sorted(set(int(i) for i in pins)))
        gains = np.zeros(n)
        if pins:
            if gain <= 0.0:
                raise ValueError(f"pinning gain must be positive, got {gain}")
            gains[list(pins)] = float(gain)
        return cls(pins=pins, gains=gains)

    @property
    def indicator(self) -> np.ndarray:
        """Binary vector marking pinned nodes."""
        return (self.gains > 0.0).astype(float)

    @property
    def n(self) -> int:
        return self.gains.size


def pinned_matrix(g: Graph, plan: PinningPlan, c=1.0) -> np.ndarray:
    """c*L + diag(gains): the Laplacian grounded at the pinned nodes."""
    if plan.n != g.n:
        raise ValueError(f"plan covers {plan.n} nodes, graph has {g.n}")
    return c * laplacian(g) + np.diag(plan.gains)


def lambda_min_pinned(g: Graph, plan: PinningPlan, c=1.0) -> float:
    """Smallest eigenvalue of c*L + ZG, the connectivity to the reference."""
    return float(eigenvalues_sym(pinned_matrix(g, plan, c))[0])
