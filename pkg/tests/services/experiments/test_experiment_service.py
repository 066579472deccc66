"""Tests for the experiment orchestration service."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.models.enums import SweepAxis
from src.models.profile import IcProfile
from src.repositories import (
    AllocationRepository,
    ProfileRepository,
    SolutionRepository,
    SweepRepository,
    TraceRepository,
    ValidationRepository
)
from src.schemas.experiments import ExperimentConfig
from src.services.errors import ConfigError, InfeasibleGameError
from src.services.experiments import ExperimentService
from src.services.units import to_db


class TestExperimentConfig:
    """Merged run configuration."""

    def test_dashed_aliases(self):
        """Config-file spellings map onto the attributes."""
        config = ExperimentConfig.model_validate({"M-info": "500", "p-max": "inf", "K": "4"})
        assert config.M_info == 500
        assert math.isinf(config.p_max)
        assert config.K == 4

    def test_fractional_sweep_values(self):
        """Rates may be written as fractions and are sorted."""
        config = ExperimentConfig.model_validate(
            {"sweep-axis": "rate", "sweep-values": "1/16,1/64,1/32", "K": "8"}
        )
        assert [overrides["N"] for _, overrides in config.sweep_points()] == [64, 32, 16]

    def test_rejects_unknown_key(self):
        """Typos are not silently ignored."""
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"KK": "4"})

    def test_load_is_not_checked_on_parsing(self):
        """K is irrelevant to some commands, so K > N parses."""
        config = ExperimentConfig.model_validate({"N": "1"})
        assert config.is_overloaded
        assert config.overloaded_points() == [(16, 1)]

    def test_overloaded_sweep_points(self):
        """Sweep overrides are applied before the load is measured."""
        config = ExperimentConfig.model_validate(
            {"K": "8", "sweep-axis": "rate", "sweep-values": "1/4,1/16"}
        )
        assert config.overloaded_points() == [(8, 4)]

    def test_rejects_non_reciprocal_rate(self):
        """Rate sweeps need values of the form 1/N."""
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"sweep-axis": "rate", "sweep-values": "0.3"})

    def test_sweep_axis_needs_values(self):
        """An axis without values is incomplete."""
        with pytest.raises(ValidationError):
            ExperimentConfig.model_validate({"sweep-axis": "users"})

    def test_header_items_use_dashed_keys(self):
        """Header keys match the config-file spelling."""
        items = ExperimentConfig(seed=3).header_items()
        assert items["M-info"] == "1000"
        assert items["p-max"] == "inf"
        assert items["seed"] == "3"


class TestExperimentService:
    """Runs writing result files."""

    def test_solve_writes_solution_and_allocation(self, tmp_path):
        """A feasible scenario writes both files."""
        config = ExperimentConfig(K=8, p_max=2.0, seed=11)
        result = ExperimentService(config, tmp_path).run_solve()
        assert [path.name for path in result.files] == ["solution.csv", "allocation.csv"]
        (solution,) = SolutionRepository(tmp_path / "solution.csv").read()
        assert solution.status == "solved"
        assert solution.gamma_star > 0.0
        allocation = AllocationRepository(tmp_path / "allocation.csv").read()
        assert len(allocation) == 8
        assert {row.status for row in allocation} <= {"optimal", "capped", "outage"}

    def test_users_draw_overrides_count(self, tmp_path):
        """users-draw sets how many gains are drawn."""
        config = ExperimentConfig(K=4, users_draw=10)
        ExperimentService(config, tmp_path).run_solve()
        assert len(AllocationRepository(tmp_path / "allocation.csv").read()) == 10

    def test_gains_follow_seed(self, tmp_path):
        """The channel draw depends on the seed only."""
        first = ExperimentService(ExperimentConfig(seed=4), tmp_path).draw_gains(6)
        second = ExperimentService(ExperimentConfig(seed=4), tmp_path).draw_gains(6)
        np.testing.assert_array_equal(first, second)

    def test_infeasible_solve_records_status(self, tmp_path):
        """The infeasibility row is written before the error propagates."""
        profile_path = ProfileRepository(tmp_path / "flat.csv").save(IcProfile.constant(1.0))
        config = ExperimentConfig(K=16, profile=str(profile_path))
        with pytest.raises(InfeasibleGameError):
            ExperimentService(config, tmp_path / "out").run_solve()
        (solution,) = SolutionRepository(tmp_path / "out" / "solution.csv").read()
        assert solution.status == "infeasible"
        assert solution.k_max < 16

    def test_solve_refuses_overloaded(self, tmp_path):
        """Only validation runs accept overloaded systems."""
        config = ExperimentConfig(K=8, N=4, allow_overloaded=True)
        with pytest.raises(ConfigError):
            ExperimentService(config, tmp_path).run_solve()

    def test_sweep_over_users(self, tmp_path):
        """One curve per value, gamma* nearly constant in K."""
        config = ExperimentConfig(sweep_axis=SweepAxis.USERS, sweep_values=(4, 8, 16))
        ExperimentService(config, tmp_path).run_sweep()
        rows = SweepRepository(tmp_path / "sweep_users.csv").read()
        assert len(rows) == 600
        roots = sorted({row.gamma_star for row in rows})
        assert (roots[-1] - roots[0]) / roots[0] < 0.01

    def test_estimate_f_ignores_user_count(self, tmp_path):
        """A rate-one code estimates with the default sixteen users configured."""
        config = ExperimentConfig(N=1, M_info=20, trials=1)
        ExperimentService(config, tmp_path).run_estimate_f()
        profile = ProfileRepository(tmp_path / "profile_N1_M20.csv").load()
        np.testing.assert_allclose(profile.f_values, 1.0)

    def test_validate_needs_flag_for_overloaded(self, tmp_path):
        """Validation of K > N without the opt-in is a configuration error."""
        config = ExperimentConfig(K=8, N=4, M_info=20, frames=1, iterations=1)
        with pytest.raises(ConfigError):
            ExperimentService(config, tmp_path).run_validate()

    def test_estimate_f_writes_profile(self, tmp_path):
        """The estimated table is written under its code's name."""
        config = ExperimentConfig(N=4, M_info=20, trials=1)
        ExperimentService(config, tmp_path).run_estimate_f()
        profile = ProfileRepository(tmp_path / "profile_N4_M20.csv").load()
        assert profile.metadata.trials == 1
        assert np.all(np.diff(profile.f_values) <= 0.0)

    def test_validate_with_trace(self, tmp_path):
        """Validation rows and one trace row per frame, iteration and user."""
        config = ExperimentConfig(K=2, N=4, M_info=50, frames=3, iterations=3)
        ExperimentService(config, tmp_path).run_validate(write_trace=True)
        rows = ValidationRepository(tmp_path / "validation.csv").read()
        assert 1 <= len(rows) <= 9
        assert all(0.0 <= row.ber_simulated <= 1.0 for row in rows)
        trace = TraceRepository(tmp_path / "trace.csv").read()
        assert len(trace) == 3 * 3 * 2

    def test_validate_overloaded(self, tmp_path):
        """At K/N = 2 the simulation departs from the SINR evolution somewhere on the grid."""
        config = ExperimentConfig(K=8, N=4, M_info=100, frames=2, iterations=30, allow_overloaded=True)
        ExperimentService(config, tmp_path).run_validate()
        rows = ValidationRepository(tmp_path / "validation.csv").read()
        assert len(rows) == 9
        gaps = [abs(to_db(row.gamma_simulated / row.gamma_predicted)) for row in rows]
        assert max(gaps) > 0.5


class TestSweepTrends:
    """Orderings of gamma* read back from sweep files."""

    @staticmethod
    def roots(tmp_path, **settings):
        config = ExperimentConfig(**settings)
        ExperimentService(config, tmp_path).run_sweep()
        rows = SweepRepository(tmp_path / f"sweep_{config.sweep_axis.value}.csv").read()
        by_value = {row.value: row.gamma_star for row in rows}
        return [by_value[value] for value in sorted(by_value)]

    def test_lower_rate_lowers_gamma_star(self, tmp_path):
        """gamma*(1/64) < gamma*(1/32) < gamma*(1/16)."""
        low, mid, high = self.roots(
            tmp_path, K=8, sweep_axis=SweepAxis.RATE, sweep_values=(1 / 64, 1 / 32, 1 / 16)
        )
        assert low < mid < high

    def test_longer_frames_raise_gamma_star(self, tmp_path):
        """gamma*(128) < gamma*(1000) < gamma*(4096)."""
        short, medium, long = self.roots(
            tmp_path, sweep_axis=SweepAxis.FRAME_LENGTH, sweep_values=(128, 1000, 4096)
        )
        assert short < medium < long

    def test_gamma_star_increases_with_s(self, tmp_path):
        """A larger QoS exponent asks for more SINR."""
        roots = self.roots(tmp_path, sweep_axis=SweepAxis.S_EXPONENT, sweep_values=(0.5, 1.0, 2.0))
        assert roots[0] < roots[1] < roots[2]


class TestReproducibility:
    """Identical seeds give identical files."""

    @pytest.mark.parametrize(
        "command, settings",
        [
            ("run_solve", {"K": 4, "p_max": 2.0}),
            ("run_sweep", {"sweep_axis": SweepAxis.USERS, "sweep_values": (2, 4)}),
            ("run_validate", {"K": 2, "N": 4, "M_info": 50, "frames": 3, "iterations": 3}),
            ("run_estimate_f", {"N": 4, "M_info": 20, "trials": 2}),
        ],
    )
    def test_reruns_are_byte_identical(self, tmp_path, command, settings):
        """Every subcommand writes the same bytes for the same seed."""
        outputs = []
        for name in ("first", "second"):
            service = ExperimentService(ExperimentConfig(seed=9, **settings), tmp_path / name)
            outputs.append(getattr(service, command)().files)
        first, second = outputs
        assert [path.name for path in first] == [path.name for path in second]
        for a, b in zip(first, second):
            assert a.read_bytes() == b.read_bytes()

    def test_validation_rows_independent_of_workers(self, tmp_path):
        """Threads change neither the samples nor their order."""
        rows = []
        for workers in (1, 3):
            config = ExperimentConfig(K=2, N=4, M_info=50, frames=4, iterations=3, seed=9, workers=workers)
            ExperimentService(config, tmp_path / str(workers)).run_validate()
            rows.append(ValidationRepository(tmp_path / str(workers) / "validation.csv").read())
        assert rows[0] == rows[1]
