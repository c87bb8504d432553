"""Succinct building blocks: bit vectors, sequences, permutations, interval reporting."""
from .bitvector import BitVector, PackedArray
from .permutation import SuccinctPermutation, default_spacing
from .reporter import IntervalReporter
from .sequence import SuccinctSequence, sequence_space_bound

__all__ = [
    "BitVector",
    "IntervalReporter",
    "PackedArray",
    "SuccinctPermutation",
    "SuccinctSequence",
    "default_spacing",
    "sequence_space_bound",
]
