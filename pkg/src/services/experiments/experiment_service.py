"""Experiment orchestration: profile estimation, solve, sweep and validation runs."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.models.profile import IcProfile
from src.repositories import (
    AllocationRepository,
    BaseCsvRepository,
    ProfileRepository,
    SolutionRepository,
    SweepRepository,
    TraceRepository,
    ValidationRepository
)
from src.schemas.coding import CodeConfig
from src.schemas.experiments import (
    ANALYTIC_PROFILE,
    ESTIMATE_PROFILE,
    AllocationRow,
    ExperimentConfig,
    SolutionRow,
    SweepRow,
    TraceRow,
    ValidationRow
)
from src.schemas.game import GameParams, GameSolution
from src.services.codec import bit_error_prob, goodput
from src.services.errors import ConfigError, InfeasibleGameError, NonConvergenceError
from src.services.game import PowerGameService, gamma_min
from src.services.simulation import (
    CbcReceiver,
    analytic_profile,
    default_gamma_grid,
    derive_rng,
    estimate_f,
    transmit
)
from src.services.simulation.seeding import CHANNEL_STREAM, NOISE_STREAM, PAYLOAD_STREAM
from src.services.sinr import SinrEvolutionService
from src.services.units import to_db

logger = logging.getLogger(__name__)

SWEEP_GRID_POINTS = 200
ESTIMATE_GRID_POINTS = 80
VALIDATION_SPAN = (0.5, 2.0)
VALIDATION_POINTS = 9
OVERLOADED_POWERS = (0.05, 5.0)


@dataclass
class RunResult:
    """Files written by one run and a one-line summary for the CLI."""
    files: List[Path] = field(default_factory=list)
    summary: str = ""


class ExperimentService:
    """Service layer for the CLI subcommands."""

    def __init__(self, config: ExperimentConfig, out_dir: Path):
        """Initialize the service with a validated configuration and output directory."""
        self.config = config
        self.out_dir = Path(out_dir)
        self._profiles: Dict[Tuple[int, int], IcProfile] = {}

    @property
    def header(self) -> Dict[str, str]:
        """Reproducibility comment lines of every file written by this run."""
        return BaseCsvRepository.reproducibility_header(self.config.header_items())

    def _estimated_profile(self, code: CodeConfig) -> IcProfile:
        return estimate_f(
            code,
            default_gamma_grid(ESTIMATE_GRID_POINTS),
            self.config.trials,
            self.config.seed,
            workers=self.config.workers
        )

    def profile_for(self, code: CodeConfig) -> IcProfile:
        """Cancellation profile for one code, loaded or computed once per (N, M_info)."""
        key = (code.N, code.M_info)
        if key in self._profiles:
            return self._profiles[key]

        source = self.config.profile
        if source == ANALYTIC_PROFILE:
            profile = analytic_profile(code)
        elif source == ESTIMATE_PROFILE:
            profile = self._estimated_profile(code)
        else:
            profile = ProfileRepository(Path(source)).load()
            rate = profile.metadata.rate
            if rate is not None and rate != code.rate:
                logger.warning(f"profile {source} was estimated for rate {rate}, scenario uses {code.rate}")
        self._profiles[key] = profile
        return profile

    def _game(self, params: GameParams) -> PowerGameService:
        return PowerGameService(params, self.profile_for(params.code))

    def _check_load(self, command: str, overloaded_ok: bool = False) -> None:
        """
        Refuse scenario points with K/N > 1.

        Only commands that can demonstrate the overloaded mismatch accept
        them, and only with ``allow-overloaded`` set.
        """
        overloaded = self.config.overloaded_points()
        if not overloaded:
            return
        K, N = overloaded[0]
        if not overloaded_ok:
            raise ConfigError(f"{command} does not support overloaded systems (K={K}, N={N})")
        if not self.config.allow_overloaded:
            raise ConfigError(
                f"K={K} users with N={N} is overloaded (K/N > 1); "
                f"pass --allow-overloaded to run the mismatch demonstration"
            )

    def _solution_row(self, params: GameParams, solution: Optional[GameSolution], status: str) -> SolutionRow:
        return SolutionRow(
            K=params.K,
            N=params.code.N,
            M_info=params.code.M_info,
            s=params.s,
            sigma2=params.noise_var,
            p_max=params.p_max,
            gamma_star=solution.gamma_star if solution else None,
            residual=solution.residual if solution else None,
            iterations=solution.iterations if solution else None,
            k_max=solution.k_max if solution else None,
            status=status
        )

    def run_estimate_f(self) -> RunResult:
        """Estimate the profile of the configured code and write it as a CSV table."""
        code = self.config.code_config()
        profile = self._estimated_profile(code)
        path = self.out_dir / f"profile_N{code.N}_M{code.M_info}.csv"
        ProfileRepository(path).save(profile, self.header)
        return RunResult(
            [path],
            f"profile with {len(profile)} points, f({profile.gamma_grid[-1]:g})="
            f"{profile.f_values[-1]:.3g} -> {path}"
        )

    def draw_gains(self, count: int) -> np.ndarray:
        """Channel power gains h^2 of standard Gaussian real gains."""
        return derive_rng(self.config.seed, 0, CHANNEL_STREAM).standard_normal(count) ** 2

    def run_solve(self) -> RunResult:
        """
        Solve for gamma* and allocate power to the drawn users.

        Raises:
            InfeasibleGameError: After the infeasibility row has been written
        """
        self._check_load("solve")
        params = self.config.game_params()
        game = self._game(params)
        solution_path = self.out_dir / "solution.csv"
        solution_repository = SolutionRepository(solution_path)

        try:
            solution = game.solve_gamma_star()
        except InfeasibleGameError:
            solution_repository.write([self._solution_row(params, None, "infeasible")], self.header)
            raise
        if not solution.feasible:
            solution_repository.write([self._solution_row(params, solution, "infeasible")], self.header)
            raise InfeasibleGameError(
                f"K={params.K} exceeds k_max={solution.k_max:g} at gamma*={solution.gamma_star:.6g}",
                k_max=solution.k_max
            )
        solution_repository.write([self._solution_row(params, solution, "solved")], self.header)

        gains = self.draw_gains(self.config.users_draw or params.K)
        allocation = game.allocate(solution.gamma_star, gains)
        allocation_path = self.out_dir / "allocation.csv"
        AllocationRepository(allocation_path).write(
            [
                AllocationRow(
                    user=user.user,
                    gain=user.gain,
                    power=user.power,
                    status=user.status.value,
                    gamma0_pmax=user.gamma0_pmax
                )
                for user in allocation.users
            ],
            self.header
        )
        return RunResult(
            [solution_path, allocation_path],
            f"gamma*={solution.gamma_star:.6g} ({to_db(solution.gamma_star):.3f} dB), "
            f"k_max={solution.k_max:g}, {len(allocation.users)} users allocated"
        )

    def run_sweep(self) -> RunResult:
        """z(gamma) and utility curves for every sweep value on a log grid around gamma*."""
        self._check_load("sweep")
        rows: List[SweepRow] = []
        roots = []
        for value, overrides in self.config.sweep_points():
            params = self.config.game_params(**overrides)
            game = self._game(params)
            solution = game.solve_gamma_star()
            floor = gamma_min(params.code.rate)
            grid = np.geomspace(floor / 2.0, 100.0 * solution.gamma_star, SWEEP_GRID_POINTS)
            targets = game.target_curve(grid)
            utilities = game.utility_curve(grid)
            roots.append(solution.gamma_star)
            for gamma, target, util in zip(grid, targets, utilities):
                rows.append(SweepRow(
                    axis=self.config.sweep_axis.value,
                    value=value,
                    gamma=float(gamma),
                    gamma_db=to_db(float(gamma)),
                    target=float(target),
                    utility=float(util),
                    gamma_star=solution.gamma_star
                ))
            logger.info(f"sweep {self.config.sweep_axis.value}={value:g}: gamma*={solution.gamma_star:.6g}")

        path = self.out_dir / f"sweep_{self.config.sweep_axis.value}.csv"
        SweepRepository(path).write(rows, self.header)
        described = ", ".join(f"{root:.4g}" for root in roots)
        return RunResult([path], f"{len(roots)} curves, gamma* = [{described}] -> {path}")

    def _validation_powers(self, params: GameParams, game: PowerGameService) -> Tuple[np.ndarray, int]:
        """Equal powers to validate at, plus the index of the point closest to gamma*."""
        if params.is_overloaded:
            low, high = OVERLOADED_POWERS
            powers = params.noise_var * np.geomspace(low, high, VALIDATION_POINTS)
            return powers, VALIDATION_POINTS // 2

        gamma_star = game.solve_gamma_star().gamma_star
        powers = []
        for gamma in gamma_star * np.geomspace(*VALIDATION_SPAN, VALIDATION_POINTS):
            load = 1.0 - (params.K - 1) * gamma * game.profile.f_eval(gamma)
            if load > 0.0:
                powers.append(params.noise_var * gamma / load)
        if not powers:
            raise InfeasibleGameError(f"no positive equal power around gamma*={gamma_star:.6g}")
        return np.array(powers), len(powers) // 2

    def _simulate_frame(self, params: GameParams, power: float, point: int, frame: int):
        K = params.K
        code = params.code
        payloads = 2 * derive_rng(self.config.seed, point, frame, PAYLOAD_STREAM).integers(
            0, 2, (K, code.M_info)
        ) - 1
        realization = transmit(
            code,
            np.ones(K),
            np.full(K, power),
            params.noise_var,
            payloads,
            derive_rng(self.config.seed, point, frame, NOISE_STREAM),
            network_seed=self.config.seed
        )
        receiver = CbcReceiver(code, self.config.schedule, self.config.damping)
        return receiver.decode_frame(realization, self.config.iterations)

    def run_validate(self, write_trace: bool = False) -> RunResult:
        """
        Compare SINR evolution with the chip-level simulation at equal received powers.

        For each power the predicted steady-state SINR, utility and bit error
        rate are paired with Monte Carlo means and standard errors over
        ``frames`` frames. Overloaded scenarios run on a fixed power grid.
        """
        self._check_load("validate", overloaded_ok=True)
        params = self.config.game_params()
        if params.is_overloaded:
            logger.warning(
                f"validating overloaded system K={params.K}, N={params.code.N}; "
                f"SINR evolution is not expected to match"
            )
        game = self._game(params)
        evolution = SinrEvolutionService(game.profile)
        powers, trace_point = self._validation_powers(params, game)
        frames = self.config.frames
        K = params.K
        samples = frames * K

        rows: List[ValidationRow] = []
        trace_rows: List[TraceRow] = []
        for point, power in enumerate(powers):
            try:
                predicted = evolution.steady_state_equal_power(power, K, params.noise_var)
            except NonConvergenceError as exc:
                logger.warning(f"equal-power fixed point at p={power:.4g} did not converge")
                predicted = float(exc.last_iterate)

            def simulate(frame: int, point=point, power=power):
                return self._simulate_frame(params, float(power), point, frame)

            if self.config.workers > 1:
                with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                    traces = list(pool.map(simulate, range(frames)))
            else:
                traces = [simulate(frame) for frame in range(frames)]

            final_sinr = np.array([trace.final_sinr for trace in traces]).ravel()
            bit_errors = np.array([trace.final_bit_errors for trace in traces]).ravel()
            success = (bit_errors == 0).astype(float)
            ber = bit_errors / params.code.M_info

            g_hat = float(success.mean())
            g_se = float(np.sqrt(g_hat * (1.0 - g_hat) / samples))
            s = params.s
            utility_sim = g_hat ** s / power
            utility_se = s * g_hat ** (s - 1.0) * g_se / power if g_hat > 0.0 else 0.0

            rows.append(ValidationRow(
                power=float(power),
                gamma_predicted=predicted,
                gamma_predicted_db=to_db(predicted),
                gamma_simulated=float(final_sinr.mean()),
                gamma_simulated_se=float(final_sinr.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0,
                utility_predicted=float(goodput(predicted, params.code) ** s / power),
                utility_simulated=float(utility_sim),
                utility_simulated_se=float(utility_se),
                ber_predicted=float(bit_error_prob(predicted, params.code.N)),
                ber_simulated=float(ber.mean()),
                ber_simulated_se=float(ber.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
            ))
            logger.info(
                f"validate p={power:.4g}: predicted {predicted:.4g}, simulated {final_sinr.mean():.4g}"
            )

            if write_trace and point == trace_point:
                trajectory = evolution.sinr_trajectory(
                    np.full(K, power), np.ones(K), params.noise_var, self.config.iterations
                )
                for frame, trace in enumerate(traces):
                    for t in range(trace.iterations):
                        for user in range(K):
                            trace_rows.append(TraceRow(
                                frame=frame,
                                iter=t + 1,
                                user=user,
                                empirical_sinr=float(trace.empirical_sinr[t, user]),
                                predicted_sinr=float(trajectory[t, user]),
                                bit_errors=int(trace.bit_errors[t, user])
                            ))

        path = self.out_dir / "validation.csv"
        files = [ValidationRepository(path).write(rows, self.header)]
        if trace_rows:
            files.append(TraceRepository(self.out_dir / "trace.csv").write(trace_rows, self.header))
        return RunResult(files, f"{len(rows)} validation points over {frames} frames -> {path}")
