"""Tests for the benchmark runner."""

import math

import pytest

from sweep_hand.config import BenchConfig, Settings
from sweep_hand.services.bench import (
    BenchRecord,
    aggregate,
    run_benchmark,
    scheme_series,
)
from sweep_hand.services.reference_cache import ReferenceCache


def make_config(schemes: list[dict], **run: object) -> BenchConfig:
    """Build a config on a single-qubit Grover problem."""
    return BenchConfig.model_validate(
        {
            "problem": {"kind": "grover", "n": 1, "T": 2.0, "min_success": 0.0},
            "schemes": schemes,
            "run": {"n_grid": [4, 8], "seeds": [0], **run},
        }
    )


def record(scheme: str, n: int, seed: int | None, error: float, **kw) -> BenchRecord:
    return BenchRecord(scheme, "hdr", "Strang", n, seed, 3 * n, error, 0.01, **kw)


class TestBenchRecord:
    """Tests for BenchRecord."""

    def test_ok(self) -> None:
        assert record("a", 4, 0, 1e-3).ok
        assert not record("a", 4, 0, math.nan).ok
        assert not record("a", 4, 0, 1e-3, failure="boom").ok

    def test_sort_key_puts_averages_first(self) -> None:
        assert record("a", 4, None, 1e-3).sort_key < record("a", 4, 0, 1e-3).sort_key


class TestAggregate:
    """Tests for aggregate function."""

    def test_averages_over_seeds(self) -> None:
        records = [record("a", 4, 0, 1e-3), record("a", 4, 1, 3e-3)]
        (averaged,) = aggregate(records)
        assert averaged.seed is None
        assert averaged.error == pytest.approx(2e-3)
        assert averaged.gates == 12

    def test_failed_seeds_are_skipped(self) -> None:
        records = [
            record("a", 4, 0, 1e-3),
            record("a", 4, 1, math.nan, failure="singular"),
        ]
        (averaged,) = aggregate(records)
        assert averaged.ok
        assert averaged.error == pytest.approx(1e-3)

    def test_all_failed_keeps_failure(self) -> None:
        (averaged,) = aggregate([record("a", 4, 0, math.nan, failure="singular")])
        assert averaged.failure == "singular"
        assert math.isnan(averaged.error)

    def test_sorted_by_scheme_and_n(self) -> None:
        records = [
            record("b", 4, 0, 1e-3),
            record("a", 8, 0, 1e-3),
            record("a", 4, 0, 1.0),
        ]
        keys = [(r.scheme, r.N) for r in aggregate(records)]
        assert keys == [("a", 4), ("a", 8), ("b", 4)]


class TestSchemeSeries:
    """Tests for scheme_series function."""

    def test_skips_failures(self) -> None:
        records = [
            record("a", 4, None, 1e-3),
            record("a", 8, None, math.nan, failure="x"),
            record("b", 4, None, math.nan, failure="x"),
        ]
        assert scheme_series(records) == {"a": [(12, 1e-3)], "b": []}


class TestRunBenchmark:
    """Tests for run_benchmark function."""

    def test_every_family(self, settings: Settings) -> None:
        config = make_config(
            [
                {"family": "pointwise", "base": "Strang", "lambda_prime": 0},
                {"family": "hdr", "base": "Strang"},
                {"family": "iacs", "base": "FRS"},
                {"family": "mpf", "k": [1, 2]},
                {"family": "qdrift"},
                {"family": "taylor2"},
            ]
        )
        records = run_benchmark(config, settings)

        assert len(records) == 12
        assert all(r.ok for r in records)
        assert records == sorted(records, key=lambda r: r.sort_key)
        gates = {(r.scheme, r.N): r.gates for r in records}
        assert gates[("pointwise0-Strang", 4)] == 12
        assert gates[("hdr-Strang", 8)] == 24
        assert gates[("iacs-FRS", 4)] == 28
        assert gates[("mpf-pointwise-k1,2", 4)] == 36
        assert gates[("qdrift-v1", 8)] == 8
        assert gates[("taylor2", 4)] == 28
        assert {r.base for r in records if r.family in ("qdrift", "taylor2")} == {"-"}

    def test_error_falls_with_steps(self, settings: Settings) -> None:
        config = make_config([{"family": "hdr", "base": "Strang"}])
        coarse, fine = run_benchmark(config, settings)
        assert fine.error < coarse.error

    def test_operator_metric_rejects_channels(self, settings: Settings) -> None:
        config = make_config([{"family": "qdrift"}], metric="operator")
        records = run_benchmark(config, settings)
        assert all(not r.ok for r in records)
        assert "operator metric" in (records[0].failure or "")

    def test_thread_pool_matches_serial(self) -> None:
        config = make_config(
            [{"family": "hdr", "base": "FRS"}, {"family": "qdrift", "samples": 8}],
            seeds=[0, 1],
        )
        serial = run_benchmark(config, Settings(workers=1))
        pooled = run_benchmark(config, Settings(workers=4))
        assert [(r.scheme, r.N, r.seed, r.error) for r in serial] == [
            (r.scheme, r.N, r.seed, r.error) for r in pooled
        ]

    def test_reference_is_shared_across_schemes(self, settings: Settings) -> None:
        config = make_config(
            [{"family": "hdr", "base": "Strang"}, {"family": "hdr", "base": "FRS"}]
        )
        run_benchmark(config, settings)
        assert ReferenceCache.get_instance().stats.misses == 1
