import numpy as np
import pytest

import pinctl as pc


def pinned_rate(g, pins, k, gain):
    plan = pc.PinningPlan.uniform(pins, gain / k, g.n)
    return k * pc.lambda_min_pinned(g, plan)


def expm_exact(g, pins, k, gain, e0, t):
    plan = pc.PinningPlan.uniform(pins, gain / k, g.n)
    m = k * pc.pinned_matrix(g, plan)
    w, v = np.linalg.eigh(m)
    return v @ (np.exp(-w * t) * (v.T @ e0))


def test_single_node_scalar_exponential():
    g = pc.from_edges(1, [])
    cfg = pc.SimConfig(pins=(0,), k=10.0, gain=100.0, dt=1e-4, t_end=0.05,
                       e0=np.array([10.0]))
    trace = pc.simulate_secondary(g, cfg)
    expected = 10.0 * np.exp(-100.0 * 0.05)
    assert trace.errors[-1][0] == pytest.approx(expected, rel=1e-6)


def test_two_node_closed_form_rate(path2):
    cfg = pc.SimConfig(pins=(0,), k=10.0, gain=100.0, dt=1e-4, t_end=5.0)
    trace = pc.simulate_secondary(path2, cfg)
    target = 10.0 * (12.0 - np.sqrt(104.0)) / 2.0
    assert target == pytest.approx(9.0098, abs=1e-4)
    assert trace.rate == pytest.approx(target, rel=0.02)
    assert pc.estimate_rate(trace, 0.25) == pytest.approx(target, rel=0.02)


def test_terminal_norm_within_decay_envelope(dg14):
    pins = (1, 13)
    cfg = pc.SimConfig(pins=pins, k=10.0, gain=100.0, dt=1e-3, t_end=1.0, seed=2)
    trace = pc.simulate_secondary(dg14, cfg)
    mu = pinned_rate(dg14, pins, 10.0, 100.0) / 10.0
    bound = trace.norms[0] * np.exp(-10.0 * mu * 1.0)
    assert trace.norms[-1] <= bound * (1 + 1e-6)


def test_rate_law_across_random_configs():
    rng = np.random.default_rng(3)
    for t in range(12):
        n = int(rng.integers(5, 13))
        g = pc.random_connected_graph(n, 0.4, rng)
        pins = tuple(sorted(
            rng.choice(n, size=int(rng.integers(1, 4)), replace=False).tolist()
        ))
        k = float(rng.uniform(2, 12))
        gain = float(rng.uniform(20, 150))
        target = pinned_rate(g, pins, k, gain)
        # horizon scaled to the system time constant keeps the envelope
        # fit inside the asymptotic regime
        cfg = pc.SimConfig(pins=pins, k=k, gain=gain, dt=5e-4,
                           t_end=max(3.0, 9.0 / target), seed=t)
        trace = pc.simulate_secondary(g, cfg)
        assert pc.estimate_rate(trace, 0.5) == pytest.approx(target, rel=0.02)


def test_fourth_order_step_halving(path3):
    e0 = np.array([3.0, -1.0, 2.0])
    errs = []
    for dt in (0.02, 0.01):
        cfg = pc.SimConfig(pins=(0,), k=1.0, gain=2.0, dt=dt, t_end=1.0, e0=e0)
        trace = pc.simulate_secondary(path3, cfg)
        exact = expm_exact(path3, (0,), 1.0, 2.0, e0, 1.0)
        errs.append(np.linalg.norm(trace.errors[-1] - exact))
    assert 12.0 <= errs[0] / errs[1] <= 20.0


def test_superposition(dg14):
    rng = np.random.default_rng(4)
    a = rng.normal(size=dg14.n)
    b = rng.normal(size=dg14.n)
    def run(e0):
        cfg = pc.SimConfig(pins=(13,), k=10.0, gain=100.0, dt=1e-3, t_end=0.5,
                           e0=e0)
        return pc.simulate_secondary(dg14, cfg).errors
    assert np.allclose(run(a + b), run(a) + run(b), atol=1e-9)


def test_nested_pinning_rate_dominance(dg14):
    rates = []
    for pins in ((13,), (1, 13), (1, 9, 13)):
        cfg = pc.SimConfig(pins=pins, k=10.0, gain=100.0, dt=1e-3, t_end=4.0,
                           seed=0)
        rates.append(pc.simulate_secondary(dg14, cfg).rate)
    assert rates[0] <= rates[1] * 1.02 and rates[1] <= rates[2] * 1.02


def test_estimate_rate_synthetic_exponential():
    times = np.linspace(0.0, 4.0, 401)
    norms = 5.0 * np.exp(-2.2 * times)
    trace = pc.Trace(times=times, errors=norms[:, None], norms=norms, rate=0.0)
    assert pc.estimate_rate(trace, 0.1) == pytest.approx(2.2, abs=1e-9)


def test_estimate_rate_constant_trace():
    times = np.linspace(0.0, 2.0, 100)
    norms = np.full(100, 3.0)
    trace = pc.Trace(times=times, errors=norms[:, None], norms=norms, rate=0.0)
    assert pc.estimate_rate(trace, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_estimate_rate_rejects_degenerate_traces():
    times = np.linspace(0.0, 1.0, 50)
    zero = pc.Trace(times=times, errors=np.zeros((50, 1)),
                    norms=np.zeros(50), rate=0.0)
    with pytest.raises(ValueError, match="all zero"):
        pc.estimate_rate(zero, 0.1)
    short = pc.Trace(times=times[:5], errors=np.ones((5, 1)),
                     norms=np.ones(5), rate=0.0)
    with pytest.raises(ValueError, match="need >= 10"):
        pc.estimate_rate(short, 0.5)
    ok = pc.Trace(times=times, errors=np.ones((50, 1)),
                  norms=np.ones(50), rate=0.0)
    with pytest.raises(ValueError, match="burn-in"):
        pc.estimate_rate(ok, 1.5)


def test_step_size_guard(path2):
    cfg = pc.SimConfig(pins=(0,), k=10.0, gain=100.0, dt=0.1, t_end=1.0)
    with pytest.raises(ValueError, match="use dt <="):
        pc.simulate_secondary(path2, cfg)


def test_unpinned_network_holds_offset(dg14):
    cfg = pc.SimConfig(pins=(), k=10.0, gain=100.0, dt=1e-3, t_end=5.0, seed=0)
    trace = pc.simulate_secondary(dg14, cfg)
    assert abs(trace.rate) < 1e-2
    assert not pc.relay_window_ok(trace, 380.0, 0.0)


def test_relay_window_pinned_network(dg14):
    cfg = pc.SimConfig(pins=(13,), k=10.0, gain=100.0, dt=1e-3, t_end=2.0, seed=0)
    trace = pc.simulate_secondary(dg14, cfg)
    mu = pc.lambda_min_pinned(
        dg14, pc.PinningPlan.uniform((13,), 10.0, dg14.n))
    assert pc.relay_window_ok(trace, 380.0, mu)
    # a slow-settling start outside the band misses the window
    slow = pc.SimConfig(pins=(13,), k=0.05, gain=0.5, dt=1e-3, t_end=2.0,
                        e0=np.full(dg14.n, -60.0))
    slow_trace = pc.simulate_secondary(dg14, slow)
    slow_mu = pc.lambda_min_pinned(
        dg14, pc.PinningPlan.uniform((13,), 10.0, dg14.n))
    assert not pc.relay_window_ok(slow_trace, 380.0, slow_mu)


def test_sim_config_validation():
    with pytest.raises(ValueError, match="step size"):
        pc.SimConfig(dt=0.0)
    with pytest.raises(ValueError, match="horizon"):
        pc.SimConfig(dt=0.1, t_end=0.05)
    with pytest.raises(ValueError, match="controller gain"):
        pc.SimConfig(k=-1.0)
    with pytest.raises(ValueError, match="pinning gain"):
        pc.SimConfig(gain=0.0)


def test_default_e0_seeded():
    a = pc.default_e0(14, 3)
    b = pc.default_e0(14, 3)
    c = pc.default_e0(14, 4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all(a >= -12.0) and np.all(a <= -8.0)


def test_trace_csv_format(tmp_path, path2):
    cfg = pc.SimConfig(pins=(0,), k=10.0, gain=100.0, dt=1e-3, t_end=0.01)
    trace = pc.simulate_secondary(path2, cfg)
    out = tmp_path / "trace.csv"
    pc.write_trace_csv(trace, out)
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().split("\n")
    assert lines[0] == "t,e_1,e_2,norm"
    first = lines[1].split(",")
    assert len(first) == 4
    # 12 significant digits in scientific notation
    mantissa = first[1].split("e")[0]
    assert len(mantissa.replace("-", "").replace(".", "")) == 12
    assert float(first[1]) == pytest.approx(trace.errors[0, 0])
