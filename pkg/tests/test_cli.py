import json

import pytest

import app

DATASET = ["--n", "300", "--keys", "12", "--zipf", "1.0", "--m", "3", "--seed", "5"]


def _run(capsys, *argv):
    code = app.main(list(argv))
    return code, capsys.readouterr()


def test_analyze_emits_bdm_json(capsys):
    code, captured = _run(capsys, "analyze", *DATASET)
    assert code == app.EXIT_OK
    document = json.loads(captured.out)
    assert document["m"] == 3
    assert document["entity_total"] == 300
    assert document["keys"] == sorted(document["keys"])
    assert sum(document["pair_counts"]) == document["total_pairs"]


def test_run_is_byte_identical_across_invocations(capsys):
    argv = ["run", "--strategy", "blocksplit", "--r", "4", "--workers", "3", *DATASET]
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[0] == second[0] == app.EXIT_OK
    assert first[1].out == second[1].out

    report = json.loads(first[1].out)
    assert report["strategy"] == "blocksplit"
    assert report["config"]["r"] == 4
    assert "wall_time_ms" not in report


def test_run_with_timing(capsys):
    code, captured = _run(capsys, "run", "--r", "2", "--timing", *DATASET)
    assert code == app.EXIT_OK
    assert "wall_time_ms" in json.loads(captured.out)


def test_plan_from_saved_bdm(capsys, tmp_path):
    bdm_path = tmp_path / "bdm.json"
    assert app.main(["analyze", "--out", str(bdm_path), *DATASET]) == app.EXIT_OK
    capsys.readouterr()

    code, captured = _run(capsys, "plan", "--strategy", "pairrange", "--r", "3", "--bdm", str(bdm_path))
    assert code == app.EXIT_OK
    plan = json.loads(captured.out)
    bdm = json.loads(bdm_path.read_text(encoding="utf-8"))
    assert plan["strategy"] == "pairrange"
    assert plan["total_pairs"] == bdm["total_pairs"]
    assert len(plan["boundaries"]) == 3


def test_blocksplit_plan_lists_tasks(capsys):
    code, captured = _run(capsys, "plan", "--strategy", "blocksplit", "--r", "4", *DATASET)
    assert code == app.EXIT_OK
    plan = json.loads(captured.out)
    assert sum(task["pair_count"] for task in plan["tasks"]) == sum(plan["per_reduce_load"])
    assert all("key" in task for task in plan["tasks"])


def test_bench_emits_csv(capsys):
    code, captured = _run(capsys, "bench", "--r-values", "1,2", "--mode", "analytic", *DATASET)
    assert code == app.EXIT_OK
    lines = captured.out.splitlines()
    assert lines[0] == "strategy,r,imbalance,replication,makespan,speedup"
    assert len(lines) == 1 + 3 * 2


def test_gen_writes_csv(capsys, tmp_path):
    out = tmp_path / "gen.csv"
    assert app.main(["gen", "--n", "5", "--m", "2", "--out", str(out)]) == app.EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "key,attr0"
    assert len(lines) == 6


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as excinfo:
        app.main(["run", "--r", "many"])
    assert excinfo.value.code == app.EXIT_USAGE


def test_invalid_threshold_is_a_usage_error(capsys):
    code, captured = _run(capsys, "run", "--threshold", "2.5", *DATASET)
    assert code == app.EXIT_USAGE
    assert "threshold" in captured.err


def test_zero_partitions_is_a_usage_error(capsys):
    code, _ = _run(capsys, "analyze", "--n", "10", "--m", "0")
    assert code == app.EXIT_USAGE


def test_missing_key_column_is_a_data_error(capsys, tmp_path):
    path = tmp_path / "people.csv"
    path.write_text("name,city\nann,oslo\n", encoding="utf-8")
    code, captured = _run(capsys, "run", "--input", str(path), "--key-column", "surname")
    assert code == app.EXIT_DATA
    assert "surname" in captured.err


def test_env_file_sets_defaults(capsys, tmp_path, monkeypatch):
    # registered with monkeypatch so the value written by the env file is undone afterwards
    monkeypatch.setenv("ERLB_REDUCE_TASKS", "8")
    env_file = tmp_path / "erlb.env"
    env_file.write_text("ERLB_REDUCE_TASKS=3\n", encoding="utf-8")
    code, captured = _run(capsys, "run", "--env-file", str(env_file), *DATASET)
    assert code == app.EXIT_OK
    assert json.loads(captured.out)["config"]["r"] == 3


def test_missing_env_file(capsys, tmp_path):
    code, _ = _run(capsys, "run", "--env-file", str(tmp_path / "absent.env"), *DATASET)
    assert code == app.EXIT_USAGE


def test_invalid_environment_value(capsys, monkeypatch):
    monkeypatch.setenv("ERLB_WORKERS", "several")
    code, captured = _run(capsys, "analyze", *DATASET)
    assert code == app.EXIT_USAGE
    assert "ERLB_WORKERS" in captured.err


def test_bench_zero_workers_is_a_usage_error(capsys):
    code, captured = _run(capsys, "bench", "--r-values", "1,2", "--mode", "analytic", "--workers", "0", *DATASET)
    assert code == app.EXIT_USAGE
    assert "worker_count" in captured.err


def test_bench_reads_workers_from_environment(capsys, monkeypatch):
    monkeypatch.delenv("ERLB_WORKERS", raising=False)
    argv = ["bench", "--strategies", "pairrange", "--r-values", "4", "--mode", "analytic", *DATASET]
    code, captured = _run(capsys, *argv)
    assert code == app.EXIT_OK
    default_makespan = captured.out.splitlines()[1].split(",")[4]

    monkeypatch.setenv("ERLB_WORKERS", "1")
    code, captured = _run(capsys, *argv)
    assert code == app.EXIT_OK
    single_worker_makespan = captured.out.splitlines()[1].split(",")[4]
    assert float(single_worker_makespan) > float(default_makespan)


def test_directory_input_is_a_data_error(capsys, tmp_path):
    code, captured = _run(capsys, "run", "--input", str(tmp_path), "--key-column", "key")
    assert code == app.EXIT_DATA
    assert "cannot read" in captured.err


def test_bdm_with_non_string_keys_is_a_data_error(capsys, tmp_path):
    bdm_path = tmp_path / "bdm.json"
    bdm_path.write_text('{"m": 1, "keys": [1], "counts": [[2]]}', encoding="utf-8")
    code, captured = _run(capsys, "plan", "--strategy", "pairrange", "--r", "2", "--bdm", str(bdm_path))
    assert code == app.EXIT_DATA
    assert "malformed BDM document" in captured.err
