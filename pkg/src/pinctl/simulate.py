"""Islanded-microgrid secondary voltage control simulation.

After the distributed controller gain k is factored out, the voltage error
obeys the linear dynamics  e' = -k (L + (g/k) Z) e,  so the asymptotic
decay rate is k times the pinned connectivity of L + (g/k)Z. Note the two
gain conventions: the selection and bound routines use the raw pinning
gain g on L + gZ, while the simulated matrix carries g/k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import spectral
from .graph import Graph

NORM_FLOOR = 1e-300
RELAY_WINDOW_S = 0.30
RELAY_BAND = (-0.05, 0.10)

# Connectivity below this is indistinguishable from the unpinned zero mode
# at eigensolver precision; no restoration happens at that scale.
CONNECTIVITY_FLOOR = 1e-9

# Fixed-step classical RK4 on the linear system has real-axis stability
# boundary ~2.785; refuse a comfortable margin inside it.
_STEP_LIMIT = 2.5


def default_e0(n, seed=0) -> np.ndarray:
    """Default initial voltage error: -10 V plus a seeded +-2 V perturbation."""
    rng = np.random.default_rng(seed)
    return -10.0 + rng.uniform(-2.0, 2.0, size=n)


@dataclass(frozen=True)
class SimConfig:
    """Parameters of one secondary-control run.

    pins are internal node indices; e0 defaults to default_e0(n, seed)
    when omitted.
    """

    pins: tuple = ()
    k: float = 10.0
    gain: float = 100.0
    v_ref: float = 380.0
    e0: np.ndarray | None = None
    dt: float = 1e-4
    t_end: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"step size must be positive, got {self.dt}")
        if self.t_end <= self.dt:
            raise ValueError(
                f"horizon {self.t_end} must exceed the step size {self.dt}"
            )
        if self.k <= 0.0:
            raise ValueError(f"controller gain must be positive, got {self.k}")
        if self.gain <= 0.0:
            raise ValueError(f"pinning gain must be positive, got {self.gain}")
        object.__setattr__(self, "pins", tuple(sorted(set(int(i) for i in self.pins))))


@dataclass(frozen=True)
class Trace:
    """Sampled error trajectory with its fitted exponential decay rate."""

    times: np.ndarray = field(repr=False)
    errors: np.ndarray = field(repr=False)
    norms: np.ndarray = field(repr=False)
    rate: float


def _slope_rate(times, norms, burn_in_fraction) -> float:
    if not 0.0 < burn_in_fraction < 1.0:
        raise ValueError(
            f"burn-in fraction must lie in (0, 1), got {burn_in_fraction}"
        )
    if np.all(norms <= NORM_FLOOR):
        raise ValueError("trace norms are all zero; no rate to fit")
    t_start = times[0] + burn_in_fraction * (times[-1] - times[0])
    keep = (times >= t_start) & (norms > NORM_FLOOR)
    if keep.sum() < 10:
        raise ValueError(
            f"only {int(keep.sum())} usable samples after burn-in; need >= 10"
        )
    slope = np.polyfit(times[keep], np.log(norms[keep]), 1)[0]
    return float(-slope)


def estimate_rate(trace: Trace, burn_in_fraction=0.1) -> float:
    """Exponential decay rate fitted to the error-norm envelope.

    Least-squares slope of ln||e(t)|| over the post-burn-in window,
    negated; samples whose norms have underflowed are excluded.
    """
    return _slope_rate(trace.times, trace.norms, burn_in_fraction)


def _fit_rate(times, norms) -> float:
    """Rate for a freshly integrated trace, tolerant of underflowed tails."""
    valid = norms > NORM_FLOOR
    if valid.sum() < 20:
        return 0.0
    return _slope_rate(times[valid], norms[valid], 0.1)


def simulate_secondary(g: Graph, cfg: SimConfig) -> Trace:
    """Integrate e' = -k (L + (g/k) Z) e with fixed-step classical RK4.

    Refuses step sizes outside the scheme's stability region, suggesting a
    safe one. Voltages are recoverable as v_i(t) = v_ref + e_i(t).
    """
    n = g.n
    plan = spectral.PinningPlan.uniform(cfg.pins, cfg.gain / cfg.k, n)
    pinned = spectral.pinned_matrix(g, plan)
    lam_max = float(spectral.eigenvalues_sym(pinned)[-1])
    if cfg.dt * cfg.k * lam_max > _STEP_LIMIT:
        suggested = _STEP_LIMIT / (cfg.k * lam_max) * 0.8
        raise ValueError(
            f"step size {cfg.dt:g} is unstable for this system "
            f"(dt*k*lambda_max = {cfg.dt * cfg.k * lam_max:.3g} > "
            f"{_STEP_LIMIT}); use dt <= {suggested:.3g}"
        )
    e0 = cfg.e0 if cfg.e0 is not None else default_e0(n, cfg.seed)
    e0 = np.asarray(e0, dtype=float)
    if e0.shape != (n,):
        raise ValueError(f"initial error must have shape ({n},), got {e0.shape}")
    a = -cfg.k * pinned
    h = cfg.dt
    # One RK4 step of a linear autonomous system is the degree-4 Taylor
    # polynomial of exp(h*a); precomputing it turns each step into a matvec.
    ha = h * a
    step = np.eye(n) + ha @ (np.eye(n) + ha @ (np.eye(n) / 2 + ha @ (np.eye(n) / 6 + ha / 24)))
    steps = int(round(cfg.t_end / h))
    times = np.arange(steps + 1) * h
    errors = np.empty((steps + 1, n))
    errors[0] = e0
    for i in range(steps):
        errors[i + 1] = step @ errors[i]
    norms = np.linalg.norm(errors, axis=1)
    return Trace(times=times, errors=errors, norms=norms, rate=_fit_rate(times, norms))


def relay_window_ok(trace: Trace, v_ref, connectivity,
                    window=RELAY_WINDOW_S, band=RELAY_BAND) -> bool:
    """Whether every node's error settles into the protective-relay band.

    True when all per-unit errors e_i/v_ref enter [band[0], band[1]] by
    `window` seconds and stay there, and the configuration actually
    restores the reference (positive pinned connectivity); an unpinned
    network holds its error indefinitely and never restores.
    """
    if connectivity <= CONNECTIVITY_FLOOR:
        return False
    rel = trace.errors / v_ref
    in_band = np.all((rel >= band[0]) & (rel <= band[1]), axis=1)
    out = np.nonzero(~in_band)[0]
    if out.size == 0:
        return True
    return bool(trace.times[out[-1]] <= window)


def write_trace_csv(trace: Trace, path):
    """Write "t,e_1,...,e_N,norm" rows at 12 significant digits, LF-terminated."""
    n = trace.errors.shape[1]
    header = "t," + ",".join(f"e_{i + 1}" for i in range(n)) + ",norm"
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for t, row, norm in zip(trace.times, trace.errors, trace.norms):
            cells = [f"{t:.11e}"] + [f"{x:.11e}" for x in row] + [f"{norm:.11e}"]
            fh.write(",".join(cells) + "\n")
