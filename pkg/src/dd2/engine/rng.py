"""Seeded randomness with a fixed stream-derivation rule.

Each round gets an independent substream so a logged session replays exactly
even if the amount of randomness consumed in earlier rounds were to change.

Derivation rule (normative, relied on by replays and external checkers):

    round_seed = first 8 bytes, big-endian, of SHA-256("dd2:<seed>:<round_index>")
    stream    = Mersenne Twister seeded with round_seed, consumed only via
                random() calls (uniform floats in [0, 1)), one per draw.

Restricting consumption to ``random()`` keeps the stream reproducible across
Python versions; the draw order within a round is fixed by the engine's round
pipeline.
"""

from __future__ import annotations

import hashlib
import random


def derive_round_seed(session_seed: int, round_index: int) -> int:
    digest = hashlib.sha256(f"dd2:{session_seed}:{round_index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


class RoundStream:
    """One round's substream. Counts draws so replay can audit consumption."""

    def __init__(self, session_seed: int, round_index: int):
        self._rng = random.Random(derive_round_seed(session_seed, round_index))
        self.draws = 0

    def next_unit(self) -> float:
        self.draws += 1
        return self._rng.random()


def resistance_roll(level: float, stream: RoundStream) -> bool:
    """True (blocked) with probability ``level``. Consumes exactly one draw."""
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"resistance level out of range: {level}")
    return stream.next_unit() < level


def weighted_draw_without_replacement(
    pool: list[str], weights: dict[str, float], count: int, stream: RoundStream
) -> list[str]:
    """Draw up to ``count`` items, one cumulative-weight inversion per draw.

    The pool keeps its given order between draws, so results depend only on
    the stream and the authored ordering. Consumes exactly min(count, len(pool))
    draws.
    """
    remaining = list(pool)
    picked: list[str] = []
    for _ in range(min(count, len(remaining))):
        total = sum(weights[item] for item in remaining)
        x = stream.next_unit() * total
        cumulative = 0.0
        chosen_index = len(remaining) - 1  # guard against float edge at x == total
        for i, item in enumerate(remaining):
            cumulative += weights[item]
            if x < cumulative:
                chosen_index = i
                break
        picked.append(remaining.pop(chosen_index))
    return picked
