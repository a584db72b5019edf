"""Pinning-set selection: bound-driven greedy algorithms, the exhaustive
optimum, and degree/centrality baselines.

The greedy objective scores a candidate by the bound interval of the
augmented pinning set minus the candidate's mean hop distance to the
remaining unpinned nodes, so no eigensolve is needed during the search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .bounds import (
    BoundsReport,
    bounds_report,
    lower_bound,
    pin_count_ceiling,
    upper_bound_multi,
)
from .graph import (
    Graph,
    GraphError,
    betweenness_centrality,
    closeness_centrality,
    hop_distances,
    is_connected,
    laplacian,
)

DEFAULT_SUBSET_BUDGET = 10**6

BASELINE_METHODS = ("highest-degree", "lowest-degree", "closeness", "betweenness")


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one selection run.

    pins preserves insertion order (greedy) or ranking order (baselines);
    scores holds the per-step objective or per-node ranking score;
    evaluations counts candidate evaluations performed.
    """

    pins: tuple
    scores: tuple
    report: BoundsReport
    evaluations: int


def objective_value(mu_u, mu_l, mean_dist) -> float:
    """Greedy objective: bound interval endpoints minus mean distance."""
    return mu_u + mu_l - mean_dist


def objective_f(g: Graph, pins, candidate, gain, dist=None) -> float:
    """Score `candidate` for addition to the pinning set `pins`.

    The distance term averages hop counts from the candidate to the nodes
    that would remain unpinned, so the score needs a nonempty remainder.
    """
    pins = set(int(i) for i in pins)
    candidate = int(candidate)
    if candidate in pins:
        raise ValueError(f"candidate node {candidate} is already pinned")
    if len(pins) + 1 >= g.n:
        raise ValueError(
            "candidate exhausts the node set; the objective needs at least "
            "one unpinned node left"
        )
    if dist is None:
        dist = hop_distances(g)
    trial = pins | {candidate}
    mu_u = upper_bound_multi(g, trial, gain)
    mu_l = lower_bound(g, trial, gain)
    rest = [j for j in range(g.n) if j not in trial]
    return objective_value(mu_u, mu_l, float(dist[candidate, rest].mean()))


def greedy_select(g: Graph, m0, gain) -> SelectionResult:
    """Grow the pinning set one argmax-objective node at a time.

    Deterministic: ties go to the lowest node index. Performs exactly
    m0*(n - (m0-1)/2) candidate evaluations. On the final step of a
    full-pin run the distance term is empty and the interval collapses to
    the gain, so that step scores 2*gain.
    """
    n = g.n
    if not 1 <= m0 <= n:
        raise ValueError(f"requested pin count {m0} outside [1, {n}]")
    if not is_connected(g):
        raise GraphError("greedy_select requires a connected graph")
    dist = hop_distances(g)
    pinned = set()
    pins = []
    scores = []
    evaluations = 0
    for _ in range(m0):
        best = None
        best_f = -math.inf
        for i in range(n):
            if i in pinned:
                continue
            evaluations += 1
            if len(pinned) + 1 == n:
                f = 2.0 * gain
            else:
                f = objective_f(g, pinned, i, gain, dist=dist)
            if f > best_f:
                best, best_f = i, f
        pins.append(best)
        scores.append(best_f)
        pinned.add(best)
    report = bounds_report(g, pinned, gain)
    return SelectionResult(tuple(pins), tuple(scores), report, evaluations)


def optimal_select(g: Graph, m0, gain, budget=DEFAULT_SUBSET_BUDGET) -> SelectionResult:
    """Exhaustive argmax of lambda_min(L + gZ) over all size-m0 subsets.

    Ties resolve to the lexicographically smallest subset. Refuses to
    enumerate when C(n, m0) exceeds `budget`.
    """
    n = g.n
    if not 1 <= m0 <= n:
        raise ValueError(f"requested pin count {m0} outside [1, {n}]")
    count = math.comb(n, m0)
    if count > budget:
        raise ValueError(
            f"optimal search over {count} subsets exceeds the budget "
            f"{budget}; raise the budget to proceed"
        )
    lap = laplacian(g)
    best = None
    best_mu = -math.inf
    evaluations = 0
    for subset in itertools.combinations(range(n), m0):
        evaluations += 1
        m = lap.copy()
        idx = list(subset)
        m[idx, idx] += gain
        mu = float(np.linalg.eigvalsh(m)[0])
        if mu > best_mu:
            best, best_mu = subset, mu
    report = bounds_report(g, best, gain)
    return SelectionResult(tuple(best), (best_mu,), report, evaluations)


def baseline_select(g: Graph, m0, method, gain=None) -> SelectionResult:
    """Pick the m0 top- (or bottom-) ranked nodes by a classical score.

    Methods: highest-degree, lowest-degree, closeness, betweenness; ties
    go to the lowest node index. When `gain` is given the result carries a
    full bounds report for the chosen set.
    """
    n = g.n
    if not 1 <= m0 <= n:
        raise ValueError(f"requested pin count {m0} outside [1, {n}]")
    if method == "highest-degree":
        score = g.degrees
    elif method == "lowest-degree":
        score = -g.degrees
    elif method == "closeness":
        score = closeness_centrality(g)
    elif method == "betweenness":
        score = betweenness_centrality(g)
    else:
        raise ValueError(
            f"unknown method {method!r}; expected one of {BASELINE_METHODS}"
        )
    order = sorted(range(n), key=lambda i: (-score[i], i))
    pins = tuple(order[:m0])
    report = None
    if gain is not None:
        report = bounds_report(g, pins, gain)
    return SelectionResult(pins, tuple(float(score[i]) for i in pins), report, n)


def target_select(g: Graph, mu_star, gain) -> SelectionResult:
    """Smallest greedy pinning set certified to reach connectivity mu_star.

    Starts from the admissibility floor floor(mu_star)+1, grows the set
    greedily, and certifies lambda_min(L + gZ) >= mu_star with an exact
    eigensolve before stopping; pinning everything yields exactly the gain,
    so mu_star < gain guarantees termination.
    """
    if mu_star <= 0.0:
        raise ValueError(f"target connectivity must be positive, got {mu_star}")
    if mu_star >= gain:
        raise ValueError(
            f"target {mu_star} is unreachable: even pinning every node "
            f"yields exactly the gain {gain}"
        )
    n = g.n
    m0 = min(pin_count_ceiling(mu_star), n)
    evaluations = 0
    while True:
        result = greedy_select(g, m0, gain)
        evaluations += result.evaluations
        if result.report.mu_exact >= mu_star:
            return SelectionResult(
                result.pins, result.scores, result.report, evaluations
            )
        m0 += 1


def phi(g: Graph, plan: spectral.PinningPlan, f_matrix, h_matrix, c=1.0) -> float:
    """lambda_min of I_n (x) F - (cL + ZG) (x) H_sym, assembled explicitly.

    The inner coupling enters through its symmetric part so the assembled
    matrix is a real symmetric eigenproblem.
    """
    f_matrix = np.asarray(f_matrix, dtype=float)
    h_matrix = np.asarray(h_matrix, dtype=float)
    if f_matrix.ndim != 2 or f_matrix.shape[0] != f_matrix.shape[1] \
            or f_matrix.shape != h_matrix.shape:
        raise ValueError(
            f"F {f_matrix.shape} and H {h_matrix.shape} must be square "
            "matrices of equal order"
        )
    h_sym = (h_matrix + h_matrix.T) / 2.0
    pinned = spectral.pinned_matrix(g, plan, c)
    big = np.kron(np.eye(g.n), f_matrix) - np.kron(pinned, h_sym)
    return float(spectral.eigenvalues_sym(big)[0])
