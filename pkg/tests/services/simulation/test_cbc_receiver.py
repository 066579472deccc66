"""Tests for the chip-level transmitter and CBC receiver."""
import numpy as np
import pytest

from src.models.enums import Schedule, SoftDirection
from src.models.frames import SoftFrame
from src.models.interleaver import Interleaver
from src.schemas.coding import CodeConfig
from src.services.codec import RepetitionCodec, bit_error_prob, chip_error_prob
from src.services.simulation import CbcReceiver, analytic_profile, derive_rng, transmit
from src.services.simulation.cbc_receiver import FEEDBACK_LLR_LIMIT
from src.services.sinr import SinrEvolutionService


def random_payloads(rng, K, cfg):
    return 2 * rng.integers(0, 2, (K, cfg.M_info)) - 1


def uninformative(realization):
    return [SoftFrame.uninformative(realization.chips.shape[1]) for _ in range(realization.num_users)]


class TestTransmit:
    """Superposition of interleaved chips."""

    def test_noiseless_single_user(self, rng):
        """Without noise the received signal is the interleaved chip stream."""
        cfg = CodeConfig(N=4, M_info=25)
        realization = transmit(cfg, [1.0], [1.0], 0.0, random_payloads(rng, 1, cfg), rng)
        np.testing.assert_array_equal(realization.received, realization.chips[0])

    def test_noiseless_superposition(self, rng):
        """All-ones payloads add up to the sum of amplitudes at every chip."""
        cfg = CodeConfig(N=4, M_info=25)
        payloads = np.ones((2, 25), dtype=int)
        realization = transmit(cfg, [1.0, 0.5], [4.0, 1.0], 0.0, payloads, rng)
        np.testing.assert_allclose(realization.received, 2.5)

    def test_chips_are_interleaved_code(self, rng):
        """De-interleaving a user's chips gives its repeated bits."""
        cfg = CodeConfig(N=3, M_info=40)
        payloads = random_payloads(rng, 2, cfg)
        realization = transmit(cfg, [1.0, 1.0], [1.0, 1.0], 1.0, payloads, rng, network_seed=9)
        codec = RepetitionCodec(cfg)
        for k in range(2):
            restored = realization.interleavers[k].deinterleave(realization.chips[k])
            np.testing.assert_array_equal(restored, codec.encode(payloads[k]))

    def test_noise_variance(self, rng):
        """Noise samples carry half the noise power sigma^2."""
        cfg = CodeConfig(N=10, M_info=100_000)
        realization = transmit(cfg, [1.0], [1.0], 0.3, random_payloads(rng, 1, cfg), rng)
        noise = realization.received - realization.chips[0]
        assert np.var(noise) == pytest.approx(0.15, rel=0.01)
        assert realization.noise_sample_var == pytest.approx(0.15)

    def test_rejects_bad_payload_shape(self, rng):
        """Payloads must be K x M_info."""
        cfg = CodeConfig(N=2, M_info=10)
        with pytest.raises(ValueError):
            transmit(cfg, [1.0, 1.0], [1.0, 1.0], 1.0, np.ones((1, 10)), rng)


class TestEsePass:
    """Elementary signal estimator."""

    def test_single_user_matched_filter(self, rng):
        """With one user the LLR is 2 sqrt(p) h r over the sample noise variance."""
        cfg = CodeConfig(N=2, M_info=50)
        realization = transmit(cfg, [0.8], [2.0], 0.5, random_payloads(rng, 1, cfg), rng)
        (frame,) = CbcReceiver(cfg).ese_pass(realization, uninformative(realization))
        expected = 2.0 * np.sqrt(2.0) * 0.8 * realization.received / 0.25
        np.testing.assert_allclose(frame.llr, expected)
        assert frame.direction == SoftDirection.ESE_TO_DEC

    def test_zero_feedback_treats_others_as_noise(self, rng):
        """Without feedback the interference variance is the others' full power."""
        cfg = CodeConfig(N=2, M_info=50)
        realization = transmit(cfg, [1.0, 1.0, 1.0], [1.0, 2.0, 0.5], 1.0, random_payloads(rng, 3, cfg), rng)
        frames = CbcReceiver(cfg).ese_pass(realization, uninformative(realization))
        expected = 2.0 * 1.0 * realization.received / (2.0 + 0.5 + 0.5)
        np.testing.assert_allclose(frames[0].llr, expected)

    def test_perfect_feedback_cancels_interference(self, rng):
        """Saturated feedback removes the other users exactly."""
        cfg = CodeConfig(N=2, M_info=50)
        realization = transmit(cfg, [1.0, 1.0], [1.0, 1.0], 0.5, random_payloads(rng, 2, cfg), rng)
        feedback = [SoftFrame(100.0 * chips, SoftDirection.DEC_TO_ESE) for chips in realization.chips]
        frames = CbcReceiver(cfg).ese_pass(realization, feedback)
        expected = 2.0 * (realization.chips[0] + realization.noise) / 0.25
        np.testing.assert_allclose(frames[0].llr, expected)

    def test_single_user_chip_error_rate(self):
        """Hard chip decisions fail with probability Q(sqrt(2 gamma))."""
        cfg = CodeConfig(N=1, M_info=200_000)
        rng = derive_rng(11, 0)
        realization = transmit(cfg, [1.0], [0.5], 1.0, random_payloads(rng, 1, cfg), rng)
        (frame,) = CbcReceiver(cfg).ese_pass(realization, uninformative(realization))
        rate = np.mean(np.sign(frame.llr) != realization.chips[0])
        q = chip_error_prob(0.5)
        assert abs(rate - q) < 4 * np.sqrt(q * (1 - q) / cfg.M_chips)

    def test_majority_vote_bit_error_rate(self):
        """Majority voting of hard chips follows the analytical bit error rate."""
        cfg = CodeConfig(N=3, M_info=100_000)
        rng = derive_rng(12, 0)
        payloads = random_payloads(rng, 1, cfg)
        realization = transmit(cfg, [1.0], [0.5], 1.0, payloads, rng)
        (frame,) = CbcReceiver(cfg).ese_pass(realization, uninformative(realization))
        hard = np.sign(realization.interleavers[0].deinterleave(frame.llr))
        decoded = RepetitionCodec(cfg).majority_decode(hard)
        ber = np.mean(decoded != payloads[0])
        pe = bit_error_prob(0.5, 3)
        assert abs(ber - pe) < 4 * np.sqrt(pe * (1 - pe) / cfg.M_info)


class TestDecPass:
    """Repetition decoder inside the turbo loop."""

    def test_identity_interleaver(self):
        """Leave-one-out sums come back in chip-time order."""
        cfg = CodeConfig(N=3, M_info=1)
        frame = SoftFrame(np.array([1.0, 2.0, 3.0]), SoftDirection.ESE_TO_DEC)
        out = CbcReceiver(cfg).dec_pass(frame, Interleaver.identity(3))
        np.testing.assert_allclose(out.llr, [5.0, 4.0, 3.0])
        assert out.direction == SoftDirection.DEC_TO_ESE

    def test_extrinsic_is_uncorrelated_with_input(self, rng):
        """A chip's feedback does not contain its own input LLR."""
        cfg = CodeConfig(N=16, M_info=1000)
        pi = Interleaver.for_user(cfg.M_chips, 3, 0)
        llr = rng.standard_normal(cfg.M_chips)
        out = CbcReceiver(cfg).dec_pass(SoftFrame(llr, SoftDirection.ESE_TO_DEC), pi)
        assert abs(np.corrcoef(llr, out.llr)[0, 1]) < 0.05


class TestFeedbackDamping:
    """Blending and limiting of decoder feedback."""

    def test_blends_previous_and_fresh(self):
        """Half the step is taken towards the fresh LLRs."""
        cfg = CodeConfig(N=2, M_info=2)
        previous = SoftFrame(np.array([0.0, 2.0, -4.0, 1.0]), SoftDirection.DEC_TO_ESE)
        fresh = SoftFrame(np.array([2.0, 2.0, 0.0, -3.0]), SoftDirection.DEC_TO_ESE)
        out = CbcReceiver(cfg, damping=0.5).damp(previous, fresh)
        np.testing.assert_allclose(out.llr, [1.0, 2.0, -2.0, -1.0])
        assert out.direction == SoftDirection.DEC_TO_ESE

    def test_limits_magnitude(self):
        """Confident feedback is clipped symmetrically."""
        cfg = CodeConfig(N=2, M_info=1)
        previous = SoftFrame(np.array([40.0, -40.0]), SoftDirection.DEC_TO_ESE)
        out = CbcReceiver(cfg, damping=0.0).damp(previous, previous)
        np.testing.assert_allclose(out.llr, [FEEDBACK_LLR_LIMIT, -FEEDBACK_LLR_LIMIT])

    def test_zero_damping_passes_fresh_feedback(self):
        """Without damping the previous round is ignored."""
        cfg = CodeConfig(N=2, M_info=2)
        previous = SoftFrame(np.full(4, 5.0), SoftDirection.DEC_TO_ESE)
        fresh = SoftFrame(np.array([1.0, -2.0, 3.0, 0.5]), SoftDirection.DEC_TO_ESE)
        out = CbcReceiver(cfg, damping=0.0).damp(previous, fresh)
        np.testing.assert_array_equal(out.llr, fresh.llr)

    @pytest.mark.parametrize("damping", [-0.1, 1.0, 1.5])
    def test_rejects_damping_outside_unit_interval(self, damping):
        """The previous round may not dominate completely."""
        with pytest.raises(ValueError):
            CbcReceiver(CodeConfig(N=2, M_info=1), damping=damping)


class TestDecodeFrame:
    """Full turbo loop."""

    def test_noiseless_single_user(self, rng):
        """A lone user without noise decodes error-free at once."""
        cfg = CodeConfig(N=4, M_info=64)
        payloads = random_payloads(rng, 1, cfg)
        realization = transmit(cfg, [1.0], [1.0], 0.0, payloads, rng)
        trace = CbcReceiver(cfg).decode_frame(realization, 2)
        assert trace.bit_errors[0, 0] == 0
        np.testing.assert_array_equal(trace.decoded_bits, payloads)

    def test_first_iteration_sinr(self):
        """Before cancellation the genie SINR is P / ((K - 1) P + sigma^2)."""
        cfg = CodeConfig(N=16, M_info=2000)
        rng = derive_rng(5, 0)
        realization = transmit(cfg, np.ones(4), np.ones(4), 1.0, random_payloads(rng, 4, cfg), rng)
        trace = CbcReceiver(cfg).decode_frame(realization, 1)
        np.testing.assert_allclose(trace.empirical_sinr[0], 0.25, rtol=0.05)

    def test_cancellation_improves_sinr(self):
        """Later iterations see far less interference."""
        cfg = CodeConfig(N=16, M_info=500)
        rng = derive_rng(6, 0)
        realization = transmit(cfg, np.ones(8), np.ones(8), 0.5, random_payloads(rng, 8, cfg), rng)
        trace = CbcReceiver(cfg).decode_frame(realization, 8)
        assert np.all(trace.final_sinr > 2.0 * trace.empirical_sinr[0])
        assert trace.final_bit_errors.sum() <= trace.bit_errors[0].sum()

    def test_deterministic(self):
        """Identical seeds give identical traces."""
        cfg = CodeConfig(N=8, M_info=100)
        traces = []
        for _ in range(2):
            rng = derive_rng(3, 1)
            realization = transmit(cfg, np.ones(4), np.ones(4), 1.0, random_payloads(rng, 4, cfg), rng)
            traces.append(CbcReceiver(cfg).decode_frame(realization, 5))
        np.testing.assert_array_equal(traces[0].empirical_sinr, traces[1].empirical_sinr)
        np.testing.assert_array_equal(traces[0].decoded_bits, traces[1].decoded_bits)

    def test_serial_schedule_uses_fresh_feedback(self):
        """The first user matches the parallel schedule; later users gain."""
        cfg = CodeConfig(N=16, M_info=500)
        rng = derive_rng(8, 0)
        realization = transmit(cfg, np.ones(4), np.ones(4), 0.1, random_payloads(rng, 4, cfg), rng)
        parallel = CbcReceiver(cfg, Schedule.PARALLEL).decode_frame(realization, 1)
        serial = CbcReceiver(cfg, Schedule.SERIAL).decode_frame(realization, 1)
        assert serial.empirical_sinr[0, 0] == parallel.empirical_sinr[0, 0]
        assert serial.empirical_sinr[0, 1] > parallel.empirical_sinr[0, 1]

    def test_single_user_genie_sinr_is_exact(self, rng):
        """Without interferers the genie SINR is p h^2 / sigma^2."""
        cfg = CodeConfig(N=4, M_info=100)
        realization = transmit(cfg, [1.0], [0.5], 1.0, random_payloads(rng, 1, cfg), rng)
        trace = CbcReceiver(cfg).decode_frame(realization, 3)
        np.testing.assert_allclose(trace.empirical_sinr, 0.5, rtol=1e-12)

    def test_parallel_round_composes_ese_and_decoder(self):
        """Two parallel iterations equal ese_pass, dec_pass and damp applied by hand."""
        cfg = CodeConfig(N=8, M_info=200)
        rng = derive_rng(21, 0)
        realization = transmit(cfg, np.ones(4), np.full(4, 0.8), 1.0, random_payloads(rng, 4, cfg), rng)
        receiver = CbcReceiver(cfg)
        feedback = uninformative(realization)
        for _ in range(2):
            ese = receiver.ese_pass(realization, feedback)
            feedback = [
                receiver.damp(previous, receiver.dec_pass(frame, pi))
                for previous, frame, pi in zip(feedback, ese, realization.interleavers)
            ]
        codec = RepetitionCodec(cfg)
        expected = np.stack([
            codec.hard_decision(codec.bit_llr(pi.deinterleave(frame.llr)))
            for frame, pi in zip(ese, realization.interleavers)
        ])
        trace = receiver.decode_frame(realization, 2)
        np.testing.assert_array_equal(trace.decoded_bits, expected)
        np.testing.assert_array_equal(
            trace.final_bit_errors, np.count_nonzero(expected != realization.payloads, axis=1)
        )

    def test_full_load_does_not_collapse(self):
        """At K/N = 1 the damped loop settles near the predicted SINR instead of oscillating."""
        cfg = CodeConfig(N=16, M_info=1000)
        K, power = 16, 0.8
        predicted = SinrEvolutionService(analytic_profile(cfg)).steady_state_equal_power(power, K, 1.0)
        receiver = CbcReceiver(cfg)
        for frame in range(2):
            rng = derive_rng(77, frame)
            realization = transmit(
                cfg, np.ones(K), np.full(K, power), 1.0, random_payloads(rng, K, cfg), rng,
                network_seed=77
            )
            mean_sinr = receiver.decode_frame(realization, 30).empirical_sinr.mean(axis=1)
            assert abs(10 * np.log10(mean_sinr[-1] / predicted)) < 1.0
            assert mean_sinr[-1] >= 0.9 * mean_sinr.max()

    def test_rejects_zero_iterations(self, rng):
        """At least one iteration is required."""
        cfg = CodeConfig(N=2, M_info=10)
        realization = transmit(cfg, [1.0], [1.0], 1.0, random_payloads(rng, 1, cfg), rng)
        with pytest.raises(ValueError):
            CbcReceiver(cfg).decode_frame(realization, 0)


@pytest.mark.slow
class TestSinrEvolutionAgreement:
    """Simulation against the analytical SINR evolution."""

    def test_steady_state_within_half_a_decibel(self):
        """Mean final genie SINR tracks the predicted fixed point."""
        cfg = CodeConfig(N=16, M_info=1000)
        evolution = SinrEvolutionService(analytic_profile(cfg))
        receiver = CbcReceiver(cfg)
        K = 16
        for point, power in enumerate((0.5, 0.8, 1.2)):
            predicted = evolution.steady_state_equal_power(power, K, 1.0)
            simulated = []
            for frame in range(200):
                rng = derive_rng(2024, point, frame)
                realization = transmit(
                    cfg, np.ones(K), np.full(K, power), 1.0, random_payloads(rng, K, cfg), rng,
                    network_seed=2024
                )
                simulated.append(receiver.decode_frame(realization, 30).final_sinr)
            mean = np.mean(simulated)
            assert abs(10 * np.log10(mean / predicted)) < 0.5
