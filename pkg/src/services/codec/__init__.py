"""Repetition code services."""
from src.services.codec.error_model import (
    chip_error_prob,
    chip_error_prob_prime,
    majority_error_prob,
    majority_error_prob_prime,
    bit_error_prob,
    goodput,
    goodput_prime
)
from src.services.codec.repetition_codec import RepetitionCodec

__all__ = [
    "chip_error_prob",
    "chip_error_prob_prime",
    "majority_error_prob",
    "majority_error_prob_prime",
    "bit_error_prob",
    "goodput",
    "goodput_prime",
    "RepetitionCodec",
]
