"""Synthetic response generation for testing and benchmarks.

The generator must be reproducible from (questionnaire, n, seed) alone, in
any implementation, so it uses SplitMix64, a small public-domain PRNG with
a one-line state transition. Draw order: participants in order, and within
each participant the questions in questionnaire order; each draw takes one
SplitMix64 output reduced modulo the scale size.
"""

from __future__ import annotations

from .questionnaire import Questionnaire

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator: state += 0x9E3779B97F4A7C15, output mixed twice."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def simulate_responses(questionnaire: Questionnaire, participants: int, seed: int) -> bytes:
    """Produce a valid response CSV with uniformly random answer levels.

    Identical (questionnaire, participants, seed) yield identical bytes.
    Participant ids are P00001, P00002, ... in row order; no demographic
    columns are generated.
    """
    if participants < 1:
        raise ValueError("participants must be at least 1")
    rng = SplitMix64(seed)
    question_ids = questionnaire.question_ids()
    size = questionnaire.scale.size

    lines = [",".join(["participant_id", *question_ids])]
    for i in range(1, participants + 1):
        answers = [str(rng.next_u64() % size) for _ in question_ids]
        lines.append(",".join([f"P{i:05d}", *answers]))
    return ("\n".join(lines) + "\n").encode("utf-8")
