import io
import json
import pathlib

import numpy as np
import pytest
import jsonschema

from pinctl import cli

DATA = pathlib.Path(__file__).parent / "data"
SCHEMA = json.loads(
    (pathlib.Path(__file__).parents[1] / "docs" / "cli_output.schema.json")
    .read_text()
)


def run_cli(argv):
    stream = io.StringIO()
    args = cli.build_parser().parse_args(argv)
    code = args.func(args, stream)
    return code, stream.getvalue()


def validate(payload, name):
    schema = dict(SCHEMA["$defs"][name])
    schema["$defs"] = SCHEMA["$defs"]
    jsonschema.validate(payload, schema)


@pytest.fixture()
def path2_file(tmp_path):
    path = tmp_path / "path2.json"
    path.write_text('{"nodes": 2, "edges": [[1, 2, 1.0]]}')
    return str(path)


DG14 = str(DATA / "dg14.json")


def test_bounds_two_node_path(path2_file):
    code, out = run_cli(["bounds", "--graph", path2_file, "--pins", "1",
                         "--gain", "100"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "bounds")
    assert payload["pins"] == [1]
    assert payload["mu_l"] == pytest.approx(0.990001, abs=1e-6)
    assert payload["mu_exact"] == pytest.approx(0.990001, abs=1e-6)
    # exactly tight on the two-node path; interval width is one ulp
    assert payload["mu_l"] <= payload["mu_exact"] + 1e-9
    assert payload["mu_exact"] <= payload["mu_u"] + 1e-9


def test_bounds_dg14_max_degree_node():
    code, out = run_cli(["bounds", "--graph", DG14, "--pins", "14",
                         "--gain", "100"])
    assert code == 0
    payload = json.loads(out)
    assert payload["mu_u"] == pytest.approx(0.570, abs=1e-3)
    assert payload["mu_l"] == 0.0


def test_bounds_all_pins_is_an_error(capsys):
    code = cli.main(["bounds", "--graph", DG14, "--pins", "all"])
    assert code == 1
    err = capsys.readouterr().err
    assert "lambda_min_pinned" in err and "gain" in err


def test_bounds_missing_file_is_an_error(capsys):
    code = cli.main(["bounds", "--graph", "/nonexistent.json", "--pins", "1"])
    assert code == 1
    assert "cannot read graph file" in capsys.readouterr().err


def test_select_greedy_counts():
    code, out = run_cli(["select", "--graph", DG14, "--mode", "greedy",
                         "--m", "7", "--gain", "100"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "select")
    assert payload["evaluations"] == 77
    assert len(payload["pins"]) == 7
    assert payload["pins"][0] == 14


def test_select_optimal_counts():
    code, out = run_cli(["select", "--graph", DG14, "--mode", "optimal",
                         "--m", "7", "--gain", "100"])
    assert code == 0
    payload = json.loads(out)
    assert payload["evaluations"] == 3432


def test_select_budget_env(monkeypatch, capsys):
    monkeypatch.setenv(cli.BUDGET_ENV, "100")
    code = cli.main(["select", "--graph", DG14, "--mode", "optimal", "--m", "7"])
    assert code == 1
    assert "3432" in capsys.readouterr().err


def test_select_target_mu(path2_file):
    code, out = run_cli(["select", "--graph", path2_file, "--mode", "greedy",
                         "--target-mu", "0.9", "--gain", "100"])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "select")
    assert len(payload["pins"]) == 1
    assert payload["report"]["mu_exact"] >= 0.9


def test_select_requires_exactly_one_size_flag(capsys):
    code = cli.main(["select", "--graph", DG14, "--mode", "greedy"])
    assert code == 1
    assert "exactly one" in capsys.readouterr().err
    code = cli.main(["select", "--graph", DG14, "--mode", "greedy",
                     "--m", "2", "--target-mu", "1.0"])
    assert code == 1


def test_select_baseline():
    code, out = run_cli(["select", "--graph", DG14, "--mode", "lowest-degree",
                         "--m", "1", "--gain", "100"])
    assert code == 0
    assert json.loads(out)["pins"] == [1]


def test_simulate_summary_and_trace(tmp_path, path2_file):
    out_csv = tmp_path / "trace.csv"
    code, out = run_cli(["simulate", "--graph", path2_file, "--pins", "1",
                         "--k", "10", "--gain", "100", "--dt", "1e-4",
                         "--t-end", "3.0", "--out", str(out_csv)])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "simulate")
    assert payload["rate"] == pytest.approx(9.0098, rel=0.02)
    assert payload["predicted_rate"] == pytest.approx(
        10 * (12 - np.sqrt(104)) / 2, abs=1e-9)
    assert payload["gain_prime"] == 10.0
    assert payload["relay_ok"] is True
    assert payload["manifest"]["outputs"] == [str(out_csv)]
    header = out_csv.read_text().splitlines()[0]
    assert header == "t,e_1,e_2,norm"


def test_simulate_unpinned(tmp_path):
    out_csv = tmp_path / "trace.csv"
    code, out = run_cli(["simulate", "--graph", DG14, "--pins", "none",
                         "--dt", "1e-3", "--t-end", "5.0",
                         "--out", str(out_csv)])
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["rate"]) < 1e-2
    assert payload["relay_ok"] is False
    assert payload["lambda_min"] == pytest.approx(0.0, abs=1e-8)


def test_simulate_rejects_unstable_dt(tmp_path, capsys):
    code = cli.main(["simulate", "--graph", DG14, "--pins", "14",
                     "--dt", "0.05", "--out", str(tmp_path / "t.csv")])
    assert code == 1
    assert "use dt <=" in capsys.readouterr().err


def test_sweep_stdout_sandwich():
    code, out = run_cli(["sweep", "--graph", DG14, "--gain", "100",
                         "--m-range", "1:14", "--modes", "greedy"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "m,mode,mu_l,mu_exact,mu_u"
    assert len(lines) == 15
    rows = [line.split(",") for line in lines[1:]]
    exacts = []
    for m, mode, mu_l, mu_exact, mu_u in rows:
        assert mode == "greedy"
        assert float(mu_l) <= float(mu_exact) + 1e-8
        assert float(mu_exact) <= float(mu_u) + 1e-8
        exacts.append(float(mu_exact))
    assert exacts == sorted(exacts)
    assert exacts[-1] == pytest.approx(100.0, abs=1e-8)


def test_sweep_optimal_dominates_greedy_per_m():
    code, out = run_cli(["sweep", "--graph", DG14, "--gain", "100",
                         "--m-range", "1:4", "--modes", "greedy,optimal"])
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    greedy = {r[0]: float(r[3]) for r in rows if r[1] == "greedy"}
    optimal = {r[0]: float(r[3]) for r in rows if r[1] == "optimal"}
    for m in greedy:
        assert optimal[m] >= greedy[m] - 1e-9


def test_sweep_to_file_emits_manifest(tmp_path):
    out_csv = tmp_path / "sweep.csv"
    code, out = run_cli(["sweep", "--graph", DG14, "--m-range", "1:3",
                         "--modes", "greedy", "--out", str(out_csv)])
    assert code == 0
    payload = json.loads(out)
    validate(payload, "sweep")
    assert payload["manifest"]["outputs"] == [str(out_csv)]
    assert out_csv.read_text().splitlines()[0] == "m,mode,mu_l,mu_exact,mu_u"


def test_reruns_are_byte_identical(tmp_path, path2_file):
    a = run_cli(["bounds", "--graph", path2_file, "--pins", "1"])
    b = run_cli(["bounds", "--graph", path2_file, "--pins", "1"])
    assert a == b
    csv1, csv2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(["simulate", "--graph", path2_file, "--pins", "1", "--dt", "1e-3",
             "--t-end", "0.5", "--out", str(csv1)])
    run_cli(["simulate", "--graph", path2_file, "--pins", "1", "--dt", "1e-3",
             "--t-end", "0.5", "--out", str(csv2)])
    assert csv1.read_bytes() == csv2.read_bytes()


def test_bad_pins_rejected(capsys):
    code = cli.main(["bounds", "--graph", DG14, "--pins", "0"])
    assert code == 1
    assert "outside [1, 14]" in capsys.readouterr().err
    code = cli.main(["bounds", "--graph", DG14, "--pins", "3,3"])
    assert code == 1
    assert "repeats" in capsys.readouterr().err
