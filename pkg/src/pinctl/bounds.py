"""Closed-form upper bounds and recursive lower bounds on the connectivity
of a pinned network to its reference signal.

The quantity bounded is lambda_min(L + gZ), where L is the graph Laplacian
and Z marks the pinned nodes. The upper bound comes from testing the
all-ones direction against the Schur complement of the pinned block; the
lower bound peels BFS layers off the pinned set one Schur complement at a
time, which reduces to a scalar recursion in mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .graph import Graph, distance_to_set, layer_partition

# Bisection steps for the lower-bound root search; 64 steps leave the
# bracketing error far below every tolerance used downstream.
_BISECT_STEPS = 64


def upper_bound_single(n, m, gain) -> float:
    """Upper bound on the pinned connectivity when one node of degree m is
    pinned with gain `gain` in a connected network of n nodes.

    Smaller root of  mu^2 - (m + g + m/(n-1)) mu + m g/(n-1),  evaluated in
    product-of-roots form to avoid cancellation.
    """
    if n < 2:
        raise ValueError(f"network size must be at least 2, got {n}")
    if not 1 <= m <= n - 1:
        raise ValueError(f"pinned-node degree {m} outside [1, {n - 1}]")
    if gain <= 0.0:
        raise ValueError(f"pinning gain must be positive, got {gain}")
    t = m + gain + m / (n - 1)
    product = m * gain / (n - 1)
    r_plus = t / 2.0 + math.sqrt(t * t / 4.0 - product)
    return product / r_plus


def single_pin_limit(n, m, gain):
    """(ceiling, approx) for single pinning.

    ceiling = m/(n-1) caps the bound regardless of gain; approx is the
    rational approximation m g/(n m + (n-1) g), accurate when the gain is
    far from the degree scale.
    """
    if n < 2:
        raise ValueError(f"network size must be at least 2, got {n}")
    if not 1 <= m <= n - 1:
        raise ValueError(f"pinned-node degree {m} outside [1, {n - 1}]")
    if gain <= 0.0:
        raise ValueError(f"pinning gain must be positive, got {gain}")
    return m / (n - 1), m * gain / (n * m + (n - 1) * gain)


def upper_bound_multi(g: Graph, pins, gain) -> float:
    """Upper bound on lambda_min(L + gZ) for an arbitrary pinning set.

    Uses only the structure of the pinned layer: the total coupling from
    the pinning set to its neighbor layer (sum_out), the squared per-node
    couplings (sum_sq), and the spectral radius of the pinned diagonal
    block. With a single pinned node this reduces exactly to
    upper_bound_single.
    """
    pins = sorted(set(int(i) for i in pins))
    if not pins:
        raise ValueError("pinning set must be nonempty")
    if gain <= 0.0:
        raise ValueError(f"pinning gain must be positive, got {gain}")
    n = g.n
    m0 = len(pins)
    if m0 >= n:
        raise ValueError(
            "upper bound formula needs unpinned nodes; with every node "
            "pinned the connectivity is exactly the gain "
            "(use lambda_min_pinned)"
        )
    part = layer_partition(g, pins)
    out = part.out_sums[0]
    sum_out = float(out.sum())
    sum_sq = float((out**2).sum())
    # Pinned diagonal block of L: internal Laplacian plus outgoing degrees.
    sub = g.adjacency[np.ix_(pins, pins)]
    block = np.diag(sub.sum(axis=1)) - sub + np.diag(out)
    g_block = gain + float(spectral.eigenvalues_sym(block)[-1])
    rest = n - m0
    a = (rest * g_block + sum_out) / (2.0 * rest)
    b = (rest * g_block - sum_out) / (2.0 * rest)
    product = (sum_out * g_block - sum_sq) / rest
    r_plus = a + math.sqrt(b * b + sum_sq / rest)
    return product / r_plus


def _alpha_chain(part, gain):
    """(bases, couplings) of the layer-peeling recursion.

    Evaluated at mu, level j of the chain is
        alpha_j = bases[j] - mu - couplings[j] / alpha_{j+1}
    with couplings[k] = 0 at the deepest layer. Feasible mu keep every
    level strictly positive.
    """
    k = part.k
    bases = np.empty(k + 1)
    coups = np.zeros(k + 1)
    bases[k] = part.in_sums[k - 1].min()
    for j in range(1, k):
        bases[j] = part.in_sums[j - 1].min() + part.out_sums[j].min()
        coups[j] = part.in_sums[j].max() * part.out_sums[j].max()
    bases[0] = gain + part.out_sums[0].min()
    coups[0] = part.in_sums[0].max() * part.out_sums[0].max()
    return bases, coups


def _chain_feasible(bases, coups, mu) -> bool:
    v = bases[-1] - mu
    if v <= 0.0:
        return False
    for j in range(len(bases) - 2, -1, -1):
        v = bases[j] - mu - coups[j] / v
        if v <= 0.0:
            return False
    return True


def lower_bound(g: Graph, pins, gain) -> float:
    """Lower bound on lambda_min(L + gZ) via the layer-peeling recursion.

    Returns the supremum of the interval of mu >= 0 on which every chain
    level stays positive; 0 when some level is already nonpositive at
    mu = 0 (the bound is then trivial but still valid). Exact on the
    two-node path. With every node pinned the bound is the gain itself.
    """
    pins = sorted(set(int(i) for i in pins))
    if not pins:
        raise ValueError("pinning set must be nonempty")
    if gain <= 0.0:
        raise ValueError(f"pinning gain must be positive, got {gain}")
    part = layer_partition(g, pins)
    if part.k == 0:
        return float(gain)
    bases, coups = _alpha_chain(part, gain)
    if not _chain_feasible(bases, coups, 0.0):
        return 0.0
    lo = 0.0
    hi = gain + float(g.degrees.max())
    for _ in range(_BISECT_STEPS):
        mid = (lo + hi) / 2.0
        if _chain_feasible(bases, coups, mid):
            lo = mid
        else:
            hi = mid
    return lo


def pin_count_ceiling(mu) -> int:
    """Minimum admissible pinning-set size for a target connectivity mu."""
    if mu < 0.0:
        raise ValueError(f"target connectivity must be nonnegative, got {mu}")
    return int(math.floor(mu)) + 1


@dataclass(frozen=True)
class BoundsReport:
    """Bounds, optional exact value, and reporting metadata for one pinning set.

    mean_dist averages the hop distance from each unpinned node to the
    pinning set; k is the hop distance of the farthest node.
    """

    mu_l: float
    mu_u: float
    mu_exact: float | None
    pins: tuple
    gain: float
    k: int
    mean_dist: float


def _scaled(g: Graph, c) -> Graph:
    if c == 1.0:
        return g
    if c <= 0.0:
        raise ValueError(f"coupling strength must be positive, got {c}")
    return Graph(
        n=g.n,
        edges=tuple((u, v, c * w) for u, v, w in g.edges),
        adjacency=c * g.adjacency,
    )


def bounds_report(g: Graph, pins, gain, c=1.0, with_exact=True) -> BoundsReport:
    """Assemble the lower/upper bounds around the (optional) exact value.

    When every node is pinned both bounds collapse onto the exact value,
    which equals the gain.
    """
    pins = tuple(sorted(set(int(i) for i in pins)))
    scaled = _scaled(g, c)
    if len(pins) == g.n:
        mu_l = mu_u = float(gain)
        k = 0
        mean_dist = 0.0
    else:
        mu_u = upper_bound_multi(scaled, pins, gain)
        mu_l = lower_bound(scaled, pins, gain)
        dist = distance_to_set(g, pins)
        unpinned = dist > 0
        k = int(dist.max())
        mean_dist = float(dist[unpinned].mean())
    mu_exact = None
    if with_exact:
        plan = spectral.PinningPlan.uniform(pins, gain, g.n)
        mu_exact = spectral.lambda_min_pinned(g, plan, c)
    return BoundsReport(
        mu_l=mu_l,
        mu_u=mu_u,
        mu_exact=mu_exact,
        pins=pins,
        gain=float(gain),
        k=k,
        mean_dist=mean_dist,
    )
