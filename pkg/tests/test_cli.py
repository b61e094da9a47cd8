"""End-to-end tests of the command line surface."""

import json
import sys

import pytest

import config
from cli.commands import check_step_against_oracle
from main import build_parser, main
from reduction.scheduler import run_reduction


def run(argv):
    args = build_parser().parse_args(argv)
    return args.handler(args)


class TestReduce:
    def test_worked_example_to_stdout(self, corpus_path, capsys):
        assert run(["reduce", str(corpus_path("worked_example"))]) == config.EXIT_OK
        assert capsys.readouterr().out == (
            "indep x y\n"
            "unknown f g\n"
            "eq 6*x^2*f + 18*y^2*f + 29*x*y\n"
            "eq -3*x*f + 3*y*f + 6*y*g - 7*y\n"
        )

    def test_output_stats_and_log_files(self, corpus_path, tmp_path):
        out, stats, log = tmp_path / "out.eqs", tmp_path / "stats.jsonl", tmp_path / "log.jsonl"
        code = run(["reduce", str(corpus_path("motivating")), "-o", str(out),
                    "--stats", str(stats), "--log", str(log), "--oracle-check"])
        assert code == config.EXIT_OK
        assert out.read_text(encoding="utf-8").splitlines()[-2:] == [
            "eq d(f,x)", "eq x + y"
        ]
        record = json.loads(stats.read_text(encoding="utf-8"))
        assert (record["terms_before"], record["terms_after"], record["steps"]) == (6, 3, 2)
        steps = [json.loads(line) for line in log.read_text(encoding="utf-8").splitlines()]
        assert [s["outcome"] for s in steps] == ["reduced", "inconsistency"]

    def test_strategy_is_recorded(self, corpus_path, tmp_path):
        stats = tmp_path / "stats.jsonl"
        run(["reduce", str(corpus_path("kimura")), "--strategy", "many", "--stats", str(stats),
             "-o", str(tmp_path / "k.eqs")])
        record = json.loads(stats.read_text(encoding="utf-8"))
        assert record["strategy"] == "many"
        assert record["steps"] == 0
        assert record["terms_after"] == 70

    def test_empty_system(self, corpus_path, capsys):
        assert run(["reduce", str(corpus_path("empty"))]) == config.EXIT_OK
        assert capsys.readouterr().out == ""

    def test_parse_error_is_a_usage_error(self, tmp_path, capsys):
        path = tmp_path / "bad.eqs"
        path.write_text("indep x\neq x + q\n", encoding="utf-8")
        assert run(["reduce", str(path)]) == config.EXIT_USAGE
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert run(["reduce", str(tmp_path / "missing.eqs")]) == config.EXIT_USAGE

    def test_bad_limits(self, corpus_path):
        assert run(["reduce", str(corpus_path("worked_example")), "--threads", "0"]) == \
            config.EXIT_USAGE

    def test_treat_as_unknown(self, corpus_path, capsys):
        assert run(["reduce", str(corpus_path("kimura")), "--treat-as-unknown", "b"]) == \
            config.EXIT_OK
        assert "unknown k00 k01 k02 k03 k11 k12 k13 k22 k23 k33 b" in capsys.readouterr().out

    def test_argparse_errors_exit_with_usage_code(self):
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["reduce"])
        assert info.value.code == config.EXIT_USAGE
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["bench", "--n1", "a,b"])
        assert info.value.code == config.EXIT_USAGE


def test_oracle_check_of_a_step(worked, state_of):
    state = run_reduction(state_of(worked))
    assert check_step_against_oracle(state.log[0])


class TestDiagnose:
    def test_sections(self, corpus_path, capsys):
        assert run(["diagnose", str(corpus_path("kimura"))]) == config.EXIT_OK
        out = capsys.readouterr().out
        for title in ("== Validation", "== Occupancy", "== ODE-form equations", "== Decoupling"):
            assert title in out
        assert "never applies" in out
        assert "single-unknown equations: 1" in out

    def test_reduced_motivating_system_has_an_ode(self, corpus_path, tmp_path, capsys):
        reduced = tmp_path / "reduced.eqs"
        assert run(["reduce", str(corpus_path("motivating")), "-o", str(reduced)]) == \
            config.EXIT_OK
        capsys.readouterr()
        assert run(["diagnose", str(reduced)]) == config.EXIT_OK
        out = capsys.readouterr().out
        section = out.split("== ODE-form equations\n", 1)[1].split("\n\n", 1)[0]
        header, *rows = section.splitlines()
        assert header.split() == ["equation", "unknown", "base", "variable"]
        assert [row.split() for row in rows] == [["0", "f", "f", "x"]]

    def test_excel_export(self, corpus_path, tmp_path):
        path = tmp_path / "diag.xlsx"
        assert run(["diagnose", str(corpus_path("worked_example")), "--xlsx", str(path)]) == \
            config.EXIT_OK
        assert path.exists()


class TestBenchAndCompare:
    def test_bench_csv_to_stdout(self, capsys):
        code = run(["bench", "--n1", "5", "--n2", "3", "--reps", "1", "--vars", "2",
                    "--degree", "3", "--seed", "4"])
        assert code == config.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ",".join(config.BENCH_CSV_COLUMNS)
        assert lines[1].startswith("5,3,2,3,unsuccessful,")

    def test_bench_rejects_bad_grid(self):
        assert run(["bench", "--reps", "0"]) == config.EXIT_USAGE

    def test_compare(self, corpus_path, tmp_path, capsys):
        path = tmp_path / "compare.csv"
        assert run(["compare", str(corpus_path("worked_example")), "--csv", str(path)]) == \
            config.EXIT_OK
        assert "few" in capsys.readouterr().out
        assert path.read_text(encoding="utf-8").splitlines() == [
            "strategy,equations,terms,steps", "few,2,7,1", "many,2,7,1"
        ]


def test_main_logs_to_the_configured_directory(corpus_path, tmp_path, monkeypatch,
                                                capsys, clean_logging):
    monkeypatch.setattr(config, "LOG_DIR", tmp_path)
    monkeypatch.setattr(sys, "excepthook", sys.excepthook)
    assert main(["reduce", str(corpus_path("worked_example"))]) == config.EXIT_OK
    assert (tmp_path / config.LOG_FILE_NAME).exists()
    assert "29*x*y" in capsys.readouterr().out
