"""Chip-level transmitter and iterative chip-by-chip (CBC) receiver."""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.models.enums import Schedule, SoftDirection
from src.models.frames import NOISE_SAMPLE_FRACTION, FrameTrace, ScenarioRealization, SoftFrame
from src.models.interleaver import Interleaver
from src.schemas.coding import CodeConfig
from src.services.codec import RepetitionCodec

logger = logging.getLogger(__name__)

VARIANCE_FLOOR = 1e-12
# Feedback LLR magnitude limit; keeps a residual chip variance of about 4.5e-7.
FEEDBACK_LLR_LIMIT = 16.0
DEFAULT_DAMPING = 0.5


def transmit(
    cfg: CodeConfig,
    gains: Sequence[float],
    powers: Sequence[float],
    noise_var: float,
    payloads: np.ndarray,
    rng: np.random.Generator,
    network_seed: int = 0,
    interleavers: Optional[Sequence[Interleaver]] = None
) -> ScenarioRealization:
    """
    Encode, interleave and superimpose the frames of all users.

    r(j) = sum_i sqrt(p_i) h_i x_i(j) + n(j). The chips are antipodal on the
    in-phase component, so n ~ N(0, noise_var / 2): a single user at
    p |h|^2 / noise_var = gamma errs on a chip with probability Q(sqrt(2 gamma)).

    Args:
        cfg: Repetition code shared by all users
        gains: Real channel gains h_k
        powers: Transmit powers p_k (>= 0)
        noise_var: Noise power sigma^2 (>= 0; zero gives a noiseless channel)
        payloads: +/-1 bits of shape (K, M_info)
        rng: Generator for the noise samples
        network_seed: Seed of the per-user interleavers
        interleavers: Explicit interleavers, overriding ``network_seed``
    """
    gains = np.asarray(gains, dtype=float)
    powers = np.asarray(powers, dtype=float)
    payloads = np.asarray(payloads)
    K = gains.size
    if gains.ndim != 1 or powers.shape != gains.shape:
        raise ValueError("gains and powers must be vectors of the same length")
    if payloads.shape != (K, cfg.M_info):
        raise ValueError(f"payloads must have shape ({K}, {cfg.M_info}), got {payloads.shape}")
    if np.any(powers < 0.0):
        raise ValueError("transmit powers must be non-negative")
    if noise_var < 0.0:
        raise ValueError(f"noise variance must be non-negative, got {noise_var}")

    if interleavers is None:
        interleavers = [Interleaver.for_user(cfg.M_chips, network_seed, k) for k in range(K)]
    if len(interleavers) != K:
        raise ValueError(f"expected {K} interleavers, got {len(interleavers)}")

    codec = RepetitionCodec(cfg)
    coded = codec.encode(payloads)
    chips = np.stack([pi.interleave(coded[k]) for k, pi in enumerate(interleavers)])
    noise = rng.normal(0.0, np.sqrt(NOISE_SAMPLE_FRACTION * noise_var), size=cfg.M_chips)
    received = (np.sqrt(powers) * gains) @ chips + noise

    return ScenarioRealization(
        gains=gains,
        powers=powers,
        noise_var=float(noise_var),
        payloads=payloads,
        chips=chips,
        noise=noise,
        received=received,
        interleavers=tuple(interleavers)
    )


class CbcReceiver:
    """
    Turbo loop of an elementary signal estimator (ESE) and K repetition decoders.

    The ESE treats the interference of every other user as Gaussian with the
    mean and variance of its soft chip estimates. With the parallel schedule
    all users are estimated from the previous iteration's feedback; with the
    serial schedule each user sees the feedback already refreshed for the
    users processed before it.

    Decoder feedback is damped: the LLRs handed back to the ESE are
    ``(1 - damping) * fresh + damping * previous``, limited to
    +/- FEEDBACK_LLR_LIMIT. Undamped parallel cancellation at K/N = 1
    overshoots once the soft estimates turn confident.
    """

    def __init__(
        self,
        cfg: CodeConfig,
        schedule: Schedule = Schedule.PARALLEL,
        damping: float = DEFAULT_DAMPING
    ):
        """Initialize the receiver for one code, cancellation schedule and damping factor."""
        if not 0.0 <= damping < 1.0:
            raise ValueError(f"damping must lie in [0, 1), got {damping}")
        self.cfg = cfg
        self.schedule = schedule
        self.damping = damping
        self.codec = RepetitionCodec(cfg)

    @staticmethod
    def _interference_stats(
        realization: ScenarioRealization,
        feedback: Sequence[SoftFrame]
    ) -> Tuple[np.ndarray, np.ndarray]:
        soft_chips = np.stack([frame.soft_chips for frame in feedback])
        amplitudes = realization.amplitudes[:, None]
        means = amplitudes * soft_chips
        variances = amplitudes ** 2 * (1.0 - soft_chips ** 2)
        return means, variances

    @staticmethod
    def _chip_llr(realization: ScenarioRealization, k: int, mu_k: np.ndarray, v_k: np.ndarray) -> np.ndarray:
        v_k = np.maximum(v_k, VARIANCE_FLOOR)
        return 2.0 * realization.amplitudes[k] * (realization.received - mu_k) / v_k

    def ese_pass(
        self,
        realization: ScenarioRealization,
        feedback: Sequence[SoftFrame]
    ) -> List[SoftFrame]:
        """
        Extrinsic chip LLRs of every user from the decoders' feedback.

        Args:
            realization: Received frame
            feedback: One DEC-to-ESE frame per user, in chip-time order

        Returns:
            One ESE-to-DEC frame per user
        """
        if len(feedback) != realization.num_users:
            raise ValueError(
                f"expected feedback for {realization.num_users} users, got {len(feedback)}"
            )
        means, variances = self._interference_stats(realization, feedback)
        mu = means.sum(axis=0) - means
        v = variances.sum(axis=0) - variances + realization.noise_sample_var
        return [
            SoftFrame(self._chip_llr(realization, k, mu[k], v[k]), SoftDirection.ESE_TO_DEC)
            for k in range(realization.num_users)
        ]

    def dec_pass(self, ese_extrinsic: SoftFrame, interleaver: Interleaver) -> SoftFrame:
        """Leave-one-out repetition decoding in code order, returned in chip-time order."""
        coded = interleaver.deinterleave(ese_extrinsic.llr)
        extrinsic = self.codec.extrinsic(coded)
        return SoftFrame(interleaver.interleave(extrinsic), SoftDirection.DEC_TO_ESE)

    def damp(self, previous: SoftFrame, fresh: SoftFrame) -> SoftFrame:
        """Blend fresh decoder feedback with the previous round's and limit its magnitude."""
        llr = (1.0 - self.damping) * fresh.llr + self.damping * previous.llr
        return SoftFrame(np.clip(llr, -FEEDBACK_LLR_LIMIT, FEEDBACK_LLR_LIMIT), SoftDirection.DEC_TO_ESE)

    def _bit_decisions(self, ese_llr: np.ndarray, interleaver: Interleaver) -> np.ndarray:
        return self.codec.hard_decision(self.codec.bit_llr(interleaver.deinterleave(ese_llr)))

    @staticmethod
    def _genie_sinr(realization: ScenarioRealization, mu_k: np.ndarray, k: int) -> float:
        """
        p_k h_k^2 over the measured residual interference power plus sigma^2.

        The residual is r - mu_k - sqrt(p_k) h_k x_k with the recorded noise
        samples removed, so the measurement follows the same SINR definition
        as the SINR evolution.
        """
        a_k = realization.amplitudes[k]
        residual = realization.received - mu_k - a_k * realization.chips[k] - realization.noise
        power = np.mean(residual ** 2) + realization.noise_var
        if power == 0.0:
            return float(np.inf)
        return float(a_k ** 2 / power)

    def _parallel_round(
        self,
        realization: ScenarioRealization,
        feedback: List[SoftFrame],
        sinr: np.ndarray
    ) -> List[SoftFrame]:
        means, _ = self._interference_stats(realization, feedback)
        mu = means.sum(axis=0) - means
        for k in range(realization.num_users):
            sinr[k] = self._genie_sinr(realization, mu[k], k)
        return self.ese_pass(realization, feedback)

    def _serial_round(
        self,
        realization: ScenarioRealization,
        feedback: List[SoftFrame],
        sinr: np.ndarray
    ) -> List[SoftFrame]:
        means, variances = self._interference_stats(realization, feedback)
        total_mean = means.sum(axis=0)
        total_var = variances.sum(axis=0) + realization.noise_sample_var
        amplitude = realization.amplitudes
        ese = []
        for k, pi in enumerate(realization.interleavers):
            mu_k = total_mean - means[k]
            sinr[k] = self._genie_sinr(realization, mu_k, k)
            frame = SoftFrame(
                self._chip_llr(realization, k, mu_k, total_var - variances[k]), SoftDirection.ESE_TO_DEC
            )
            ese.append(frame)
            feedback[k] = self.damp(feedback[k], self.dec_pass(frame, pi))
            soft_k = feedback[k].soft_chips
            mean_k = amplitude[k] * soft_k
            var_k = amplitude[k] ** 2 * (1.0 - soft_k ** 2)
            total_mean += mean_k - means[k]
            total_var += var_k - variances[k]
            means[k], variances[k] = mean_k, var_k
        return ese

    def decode_frame(self, realization: ScenarioRealization, iterations: int) -> FrameTrace:
        """
        Run the turbo loop and record per-iteration genie SINR and bit errors.

        Args:
            realization: Received frame with its true chips
            iterations: Number of ESE/DEC rounds (>= 1)

        Returns:
            FrameTrace with decoded bits of the last iteration
        """
        if iterations < 1:
            raise ValueError(f"iterations must be at least 1, got {iterations}")
        K = realization.num_users
        feedback = [SoftFrame.uninformative(self.cfg.M_chips) for _ in range(K)]
        decisions = np.zeros((K, self.cfg.M_info), dtype=int)
        sinr = np.empty((iterations, K))
        errors = np.empty((iterations, K), dtype=int)

        for t in range(iterations):
            if self.schedule == Schedule.SERIAL:
                ese = self._serial_round(realization, feedback, sinr[t])
            else:
                ese = self._parallel_round(realization, feedback, sinr[t])
                feedback = [
                    self.damp(previous, self.dec_pass(frame, pi))
                    for previous, frame, pi in zip(feedback, ese, realization.interleavers)
                ]
            for k, pi in enumerate(realization.interleavers):
                decisions[k] = self._bit_decisions(ese[k].llr, pi)
            errors[t] = np.count_nonzero(decisions != realization.payloads, axis=1)
            logger.debug(
                f"iteration {t + 1}: mean genie SINR {np.mean(sinr[t]):.4g}, "
                f"bit errors {int(errors[t].sum())}"
            )

        return FrameTrace(decoded_bits=decisions.copy(), empirical_sinr=sinr, bit_errors=errors)
