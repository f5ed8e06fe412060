"""Tests for the command-line entry point."""

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from sweep_hand.main import (
    EXIT_CHECKS_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    build_arg_parser,
    main,
)

SMALL_BENCH = """
[problem]
kind = "grover"
n = 1
T = 2.0
min_success = 0.0

[[schemes]]
family = "hdr"
base = "Strang"

[[schemes]]
family = "qdrift"

[run]
n_grid = [4, 8, 16]
seeds = [0, 1]
output = "small"
"""


@pytest.fixture
def bench_file(tmp_path: Path) -> Path:
    """Provide a fast benchmark config."""
    path = tmp_path / "small.toml"
    path.write_text(SMALL_BENCH)
    return path


class TestArgParser:
    """Tests for the argument parser."""

    def test_subcommands(self) -> None:
        parser = build_arg_parser()
        for command in ("audit-gates", "qdrift-bias", "analog-sweep"):
            assert parser.parse_args([command]).command == command

    def test_grid_option(self) -> None:
        """verify-order should accept a comma-separated grid."""
        args = build_arg_parser().parse_args(["verify-order", "--grid", "8,16,32"])
        assert args.grid == [8, 16, 32]

    def test_bench_requires_config(self) -> None:
        with pytest.raises(SystemExit):
            build_arg_parser().parse_args(["bench"])


class TestMain:
    """Tests for main exit codes and artifacts."""

    def test_version(self) -> None:
        assert main(["--version"]) == EXIT_OK

    def test_missing_subcommand(self) -> None:
        assert main([]) == EXIT_USAGE

    def test_unknown_family_choice(self) -> None:
        assert main(["verify-order", "--families", "mpf"]) == EXIT_USAGE

    def test_invalid_settings(self) -> None:
        """Invalid environment settings should be a usage error."""
        with patch.dict(os.environ, {"SWEEP_HAND_WORKERS": "0"}):
            assert main(["audit-gates"]) == EXIT_USAGE

    def test_audit_gates_passes(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """audit-gates should pass and write only the HTML report."""
        assert main(["--output-dir", str(tmp_path), "audit-gates"]) == EXIT_OK
        assert (tmp_path / "audit-gates.html").exists()
        assert not (tmp_path / "audit-gates.csv").exists()
        out = capsys.readouterr().out
        assert "[PASS] iacs FRS gates" in out
        assert "audit-gates: 3/3 checks passed" in out

    def test_bench_missing_config(self, tmp_path: Path) -> None:
        code = main(["--output-dir", str(tmp_path), "bench", str(tmp_path / "x.toml")])
        assert code == EXIT_USAGE

    def test_bench_writes_artifacts(self, tmp_path: Path, bench_file: Path) -> None:
        """A bench run without checks should exit 0 and emit CSV, SVG and HTML."""
        out_dir = tmp_path / "out"
        code = main(["--output-dir", str(out_dir), "bench", str(bench_file)])
        assert code == EXIT_OK
        for suffix in (".csv", ".svg", ".html"):
            assert (out_dir / f"small{suffix}").exists()
        lines = (out_dir / "small.csv").read_text().splitlines()
        assert lines[0].startswith("# gates: ")
        assert lines[1] == "scheme,base,N,gates,error,seconds"
        # two schemes, three grid points, seeds averaged
        assert len(lines) == 2 + 6

    def test_bench_without_timings_is_reproducible(
        self, tmp_path: Path, bench_file: Path
    ) -> None:
        """Two runs with --no-timings should produce identical CSV files."""
        first, second = tmp_path / "a", tmp_path / "b"
        for out_dir in (first, second):
            code = main(
                ["--output-dir", str(out_dir), "bench", str(bench_file), "--no-timings"]
            )
            assert code == EXIT_OK
        assert (first / "small.csv").read_text() == (second / "small.csv").read_text()

    def test_bench_failed_check(self, tmp_path: Path) -> None:
        """An unreachable slope target should exit 1."""
        path = tmp_path / "strict.toml"
        path.write_text(SMALL_BENCH + "expected_slope = 10.0\n")
        code = main(["--output-dir", str(tmp_path), "bench", str(path)])
        assert code == EXIT_CHECKS_FAILED

    def test_unwritable_output_dir(self, tmp_path: Path, bench_file: Path) -> None:
        """Output errors should be usage errors."""
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        code = main(["--output-dir", str(blocker / "out"), "bench", str(bench_file)])
        assert code == EXIT_USAGE
