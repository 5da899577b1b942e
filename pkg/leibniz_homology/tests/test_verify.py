import json

import pytest

from leibniz_homology import ConfigurationError, VerifyConfig, verify_all
from leibniz_homology.cli import main
from leibniz_homology.verify import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, dilation_moves


# ==========================================================
# verify_all
# ==========================================================

def test_tables_and_boundaries_pass(tmp_path):
    output = tmp_path / "report.json"
    cfg = VerifyConfig(
        ns=(2,),
        steps=("tables", "boundaries"),
        boundary_max_degree=3,
        stable=True,
        output=str(output),
    )
    seen = []
    result = verify_all(cfg, on_step=seen.append)

    assert result.exit_code == EXIT_OK
    assert [step.name for step in seen] == ["tables", "boundaries"]

    report = json.loads(output.read_text())
    assert report["verdict"] == "pass"
    assert all("elapsed_ms" not in step for step in report["steps"])


def test_config_validation():
    with pytest.raises(ConfigurationError):
        VerifyConfig(ns=(1,))
    with pytest.raises(ConfigurationError):
        VerifyConfig(steps=("tables", "oracle"))
    with pytest.raises(ConfigurationError):
        VerifyConfig(emit="xml")


def test_report_is_byte_stable(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        cfg = VerifyConfig(
            ns=(2,),
            steps=("tables", "classical", "boundaries"),
            boundary_max_degree=3,
            stable=True,
            output=str(path),
        )
        verify_all(cfg)

    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_classical_values_pass():
    result = verify_all(VerifyConfig(ns=(2,), steps=("classical",), stable=True))
    step = result.report["steps"][0]

    assert result.exit_code == EXIT_OK
    assert step["data"]["ce so_4"]["primes"]
    assert [row["betti"] for row in step["data"]["loday so_3"]["degrees"]] == [1, 0, 0, 0, 0]


def test_galilei_step_reports_the_non_central_dilation():
    cfg = VerifyConfig(ns=(2,), steps=("galilei",), galilei_max_degree=3, stable=True)
    result = verify_all(cfg)
    step = result.report["steps"][0]

    assert result.exit_code == EXIT_MISMATCH
    assert sorted(step["data"]["dilation_moves"]) == ["y1", "y2", "y3", "y4"]
    assert step["data"]["predicted"] == [1, 2, 5, 12]

    severities = {f["severity"]: f for f in step["findings"]}
    assert "semidirect" in severities["soft"]["message"]
    assert severities["hard"]["actual"] == [1, 2, 4, 8]


def test_dilation_moves_is_empty_without_d(sch2):
    assert dilation_moves(sch2) == {}


def test_rank_strategy_follows_the_config():
    cfg = VerifyConfig(strategy="sparse", field="rational", primes=3, seed=4)
    strategy = cfg.rank_strategy()

    assert strategy.strategy == "sparse"
    assert strategy.field == "rational"
    assert strategy.primes == 3
    assert cfg.rank_strategy("modular").field == "modular"


def test_acceptance_profile():
    cfg = VerifyConfig.acceptance()

    assert cfg.ns == (2, 3, 4)
    assert cfg.boundary_max_degree == 5
    assert cfg.galilei_max_degree == 4
    assert [cfg.leibniz_top(n) for n in cfg.ns] == [6, 5, 0]
    assert VerifyConfig.acceptance(ns=(2,)).ns == (2,)
    assert cfg.to_dict()["leibniz_degrees"] == [[3, 5], [4, 0]]


def test_leibniz_degrees_validation():
    with pytest.raises(ConfigurationError):
        VerifyConfig(leibniz_degrees=((1, 3),))
    with pytest.raises(ConfigurationError):
        VerifyConfig(strategy="gauss")


# ==========================================================
# CLI
# ==========================================================

def test_cli_homology_json(capsys):
    code = main(
        [
            "homology",
            "--algebra", "sl2",
            "--n", "2",
            "--complex", "ce",
            "--max-degree", "3",
            "--field", "rational",
            "--stable",
        ]
    )
    payload = json.loads(capsys.readouterr().out)

    assert code == EXIT_OK
    assert [row["betti"] for row in payload["degrees"]] == [1, 0, 0, 1]


def test_cli_leibniz_alias(capsys):
    code = main(["homology", "--algebra", "sl2", "--n", "2", "--complex", "leibniz",
                 "--max-degree", "2", "--emit", "csv"])
    lines = capsys.readouterr().out.strip().splitlines()

    assert code == EXIT_OK
    assert lines[0] == "k,dim,rank_dk,rank_dk1,betti"
    assert lines[-1].endswith(",0")


def test_cli_series_table(capsys):
    code = main(["series", "predict", "--target", "leibniz_sch", "--n", "2",
                 "--gamma-degree", "both", "--max-degree", "4", "--emit", "table"])
    out = capsys.readouterr().out

    assert code == EXIT_OK
    assert "leibniz_sch[2n-2]" in out


def test_cli_chain(capsys):
    assert main(["chains", "show", "--name", "beta", "--n", "2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["terms"]) == 2


def test_cli_invariants(capsys):
    code = main(["invariants", "--n", "2", "--module", "wedge", "--k", "2"])
    payload = json.loads(capsys.readouterr().out)

    assert code == EXIT_OK
    assert payload["dim"] == 1


def test_cli_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--n", "2"])
    assert exc.value.code == EXIT_USAGE


def test_cli_configuration_error_maps_to_usage():
    code = main(["homology", "--algebra", "sl2", "--n", "2", "--max-degree", "9"])
    assert code == EXIT_USAGE


def test_cli_name_alias(capsys):
    assert main(["algebra", "info", "--name", "schrodinger", "--n", "3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 12

    code = main(["homology", "--name", "sl2", "--n", "2", "--max-degree", "3", "--stable"])
    payload = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert [row["betti"] for row in payload["degrees"]] == [1, 0, 0, 1]


def test_cli_verify_threads_strategy_and_field(tmp_path):
    output = tmp_path / "report.json"
    code = main(
        [
            "verify", "galilei",
            "--n", "2",
            "--galilei-max-degree", "2",
            "--strategy", "dense",
            "--field", "rational",
            "--stable",
            "--output", str(output),
        ]
    )
    report = json.loads(output.read_text())

    assert code == EXIT_MISMATCH
    assert report["config"]["strategy"] == "dense"
    assert report["config"]["field"] == "rational"
    assert report["config"]["galilei_max_degree"] == 2
    assert report["config"]["boundary_max_degree"] == 4


def test_cli_verify_acceptance_keeps_overrides(tmp_path):
    output = tmp_path / "report.json"
    code = main(
        [
            "verify", "galilei",
            "--acceptance",
            "--n", "2",
            "--galilei-max-degree", "2",
            "--stable",
            "--output", str(output),
        ]
    )
    config = json.loads(output.read_text())["config"]

    assert code == EXIT_MISMATCH
    assert config["ns"] == [2]
    assert config["boundary_max_degree"] == 5
    assert config["leibniz_degrees"] == [[3, 5], [4, 0]]
