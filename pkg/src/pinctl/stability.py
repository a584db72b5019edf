"""Network stability certificate and uniform-gain design.

A pinned network of identical systems with one-sided quadratic nonlinearity
bound F and inner coupling H is certified stable when F - mu_i * H_sym is
negative definite for every eigenvalue mu_i of c*L + ZG.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .graph import Graph

_PSD_SLACK = 1e-10


@dataclass(frozen=True)
class StabilityCertificate:
    stable: bool
    worst_margin: float
    worst_mode: int | None
    rate_bound: float | None


def check_stability(f_matrix, h_matrix, c, g: Graph, plan: spectral.PinningPlan) -> StabilityCertificate:
    """Certify asymptotic stability of the pinned error dynamics.

    f_matrix must be symmetric positive semidefinite (the one-sided
    quadratic bound on the node nonlinearity); h_matrix may be asymmetric
    and is symmetrized internally. worst_mode indexes the ascending
    eigenvalues of c*L + ZG; rate_bound is the conservative decay estimate
    min_i(mu_i * lambda_min(H_sym)) - lambda_max(F), reported only when the
    certificate holds.
    """
    f_sym = spectral._as_symmetric(f_matrix)
    f_eigs = spectral.eigenvalues_sym(f_sym)
    scale = 1.0 + float(np.abs(f_sym).sum(axis=1).max())
    if f_eigs[0] < -_PSD_SLACK * scale:
        raise ValueError(
            "the quadratic nonlinearity bound F must be positive semidefinite"
        )
    h_matrix = np.asarray(h_matrix, dtype=float)
    if h_matrix.shape != f_sym.shape:
        raise ValueError(
            f"F {f_sym.shape} and H {h_matrix.shape} must have equal order"
        )
    h_sym = (h_matrix + h_matrix.T) / 2.0
    mus = spectral.eigenvalues_sym(spectral.pinned_matrix(g, plan, c))
    margins = [
        float(spectral.eigenvalues_sym(f_sym - mu * h_sym)[-1]) for mu in mus
    ]
    worst = int(np.argmax(margins))
    # a sufficiency certificate must not hinge on margins that are zero
    # within eigensolver noise (e.g. the unpinned Laplacian's zero mode)
    noise = _PSD_SLACK * (
        1.0 + abs(f_eigs[-1]) + float(np.abs(mus).max() * np.abs(h_sym).max())
    )
    stable = margins[worst] < -noise
    rate_bound = None
    if stable:
        h_min = float(spectral.eigenvalues_sym(h_sym)[0])
        rate_bound = float(np.min(mus * h_min) - f_eigs[-1])
    return StabilityCertificate(
        stable=stable,
        worst_margin=margins[worst],
        worst_mode=None if stable else worst,
        rate_bound=rate_bound,
    )


def design_uniform_gain(f_matrix, h_matrix, alpha) -> float:
    """Uniform all-node gain guaranteeing decay rate at least alpha.

    g = (alpha + lambda_max(F)) / lambda_min(H_sym); pinning every node
    with this gain always passes check_stability.
    """
    if alpha <= 0.0:
        raise ValueError(f"desired rate must be positive, got {alpha}")
    h_matrix = np.asarray(h_matrix, dtype=float)
    h_sym = (h_matrix + h_matrix.T) / 2.0
    h_min = float(spectral.eigenvalues_sym(h_sym)[0])
    if h_min <= 0.0:
        raise ValueError(
            "the symmetric part of the inner coupling must be positive "
            f"definite (lambda_min = {h_min:g})"
        )
    f_max = float(spectral.eigenvalues_sym(f_matrix)[-1])
    return (alpha + f_max) / h_min
