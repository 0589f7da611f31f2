"""End-to-end command tests, run in process through ``cli.main``."""

import json

import pytest

from segmarket import PriceWindow, market, scheme_surplus, validate_scheme
from segmarket import serialize
from segmarket.cli import main
from segmarket.passive import unregulated_consumer_optimal
from segmarket.regulator import feasibility_sweep


@pytest.fixture
def m1_file(tmp_path, m1):
    path = tmp_path / "m1.json"
    path.write_text(serialize.dumps(serialize.market_to_obj(m1)))
    return str(path)


def test_segment_ps_max(m1_file, tmp_path, capsys, m1, w23):
    out = tmp_path / "scheme.json"
    trace = tmp_path / "trace.json"
    code = main([
        "segment", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--objective", "ps-max",
        "--out", str(out), "--trace", str(trace),
    ])
    assert code == 0
    printed = capsys.readouterr().out
    assert "CS=43/50 (0.860000)" in printed
    assert "PS=41/25 (1.640000)" in printed
    scheme = serialize.scheme_from_obj(json.loads(out.read_text()))
    assert validate_scheme(scheme, w23, "passive").ok
    s = scheme_surplus(scheme)
    assert str(s.ps) == "41/25"
    steps = json.loads(trace.read_text())
    assert len(steps) == 4
    assert steps[0]["support"] == [1, 3, 4]


def test_segment_all_objectives_both_models(m1_file, capsys):
    for model, objective, cs in [
        ("passive", "cs-max", "CS=47/50"),
        ("passive", "sw-min", "CS=43/50"),
        ("active", "ps-max", "CS=39/50"),
        ("active", "cs-max", "CS=59/50"),
        ("active", "sw-min", "CS=39/50"),
    ]:
        code = main([
            "segment", "--market", m1_file, "--flo", "2", "--fhi", "3",
            "--model", model, "--objective", objective,
        ])
        assert code == 0
        assert cs in capsys.readouterr().out


def test_segment_infeasible_window(m1_file, capsys):
    code = main([
        "segment", "--market", m1_file, "--flo", "3", "--fhi", "3",
        "--model", "passive", "--objective", "ps-max",
    ])
    assert code == 2
    code = main([
        "segment", "--market", m1_file, "--flo", "3", "--fhi", "3",
        "--model", "passive", "--objective", "cs-max",
    ])
    assert code == 2


def test_segment_trace_needs_passive(m1_file, tmp_path):
    code = main([
        "segment", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "active", "--objective", "ps-max",
        "--trace", str(tmp_path / "t.json"),
    ])
    assert code == 1


def test_hash_index_window_form(m1_file, capsys):
    code = main([
        "segment", "--market", m1_file, "--flo", "#2", "--fhi", "#3",
        "--model", "passive", "--objective", "ps-max",
    ])
    assert code == 0
    assert "PS=41/25" in capsys.readouterr().out


def test_region_command(m1_file, tmp_path):
    out = tmp_path / "region.json"
    code = main([
        "region", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--out", str(out),
    ])
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["vertices"]["min"] == ["43/50", "39/25"]


def test_point_command(m1_file, tmp_path, capsys, m1, w23):
    out = tmp_path / "mixed.json"
    code = main([
        "point", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--cs", "9/10", "--ps", "8/5",
        "--out", str(out),
    ])
    assert code == 0
    assert "seller=1/2" in capsys.readouterr().out
    scheme = serialize.scheme_from_obj(json.loads(out.read_text()))
    s = scheme_surplus(scheme)
    assert (str(s.cs), str(s.ps)) == ("9/10", "8/5")
    assert validate_scheme(scheme, w23, "passive").ok


def test_point_outside_region(m1_file):
    code = main([
        "point", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--cs", "0", "--ps", "0",
    ])
    assert code == 3


def test_feasible_command(m1_file, capsys):
    assert main(["feasible", "--market", m1_file, "--flo", "2", "--fhi", "3"]) == 0
    assert capsys.readouterr().out.strip() == "feasible"
    assert main(["feasible", "--market", m1_file, "--flo", "3", "--fhi", "3"]) == 2
    assert capsys.readouterr().out.strip() == "infeasible"


def test_design_f_command(m1_file, capsys):
    assert main(["design-f", "--market", m1_file]) == 0
    assert capsys.readouterr().out.strip() == "1..2"


def test_sweep_command(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--top", "9", "--out", str(out)])
    assert code == 0
    assert out.read_text() == serialize.sweep_to_csv(feasibility_sweep(9))
    code = main(["sweep", "--top", "9", "--lows", "2,5"])
    assert code == 0
    assert capsys.readouterr().out.startswith(serialize.SWEEP_HEADER)


def test_sweep_guards_large_tops(capsys):
    assert main(["sweep", "--top", "50"]) == 1


def test_validate_command(m1_file, tmp_path, capsys, m1):
    # a scheme that is fine under the full grid but not under the window
    scheme = unregulated_consumer_optimal(m1).scheme
    path = tmp_path / "scheme.json"
    path.write_text(serialize.dumps(serialize.scheme_to_obj(scheme)))
    code = main([
        "validate", "--scheme", str(path), "--flo", "2", "--fhi", "3",
        "--model", "passive",
    ])
    assert code == 2
    printed = capsys.readouterr().out
    assert "price-outside-window" in printed
    assert "invalid: 2 violation(s)" in printed
    code = main([
        "validate", "--scheme", str(path), "--flo", "1", "--fhi", "6",
        "--model", "passive",
    ])
    assert code == 0
    assert "valid: 0 violations" in capsys.readouterr().out


def test_oracle_values(m1_file, capsys, tmp_path):
    code = main([
        "oracle", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--objective", "eta0", "--i0", "2",
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "4/25 (0.160000)"
    code = main([
        "oracle", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--objective", "min-cs",
    ])
    assert code == 0
    assert capsys.readouterr().out.strip() == "43/50 (0.860000)"
    dump = tmp_path / "lp.txt"
    code = main([
        "oracle", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--objective", "feasible", "--dump-lp", str(dump),
    ])
    assert code == 0
    assert "mass[v=1]" in dump.read_text()


def test_oracle_infeasible(m1_file, capsys):
    code = main([
        "oracle", "--market", m1_file, "--flo", "3", "--fhi", "3",
        "--model", "passive", "--objective", "feasible",
    ])
    assert code == 2
    assert capsys.readouterr().out.strip() == "infeasible"


def test_oracle_eta0_needs_floor(m1_file):
    code = main([
        "oracle", "--market", m1_file, "--flo", "2", "--fhi", "3",
        "--model", "passive", "--objective", "eta0",
    ])
    assert code == 1


def test_usage_errors(m1_file, tmp_path):
    assert main([]) == 1
    assert main(["segment"]) == 1
    assert main([
        "feasible", "--market", m1_file, "--flo", "4", "--fhi", "6",
    ]) == 1  # 4 is not a grid value
    missing = str(tmp_path / "missing.json")
    assert main(["feasible", "--market", missing, "--flo", "2", "--fhi", "3"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["feasible", "--market", str(bad), "--flo", "2", "--fhi", "3"]) == 1
