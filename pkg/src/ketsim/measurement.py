"""Outcome distributions and seeded sampling by cumulative probability."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Protocol, Tuple

from .state import BasisState, StateVector, norm

NORMALIZATION_TOLERANCE = 1e-9


class RandomStream(Protocol):
    def random(self) -> float: ...


def make_stream(seed: int) -> random.Random:
    return random.Random(seed)


@dataclass(frozen=True)
class OutcomeDistribution:
    width: int
    entries: Tuple[Tuple[int, float], ...]  # (basis index, probability), ascending index

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def probability(self, index: int) -> float:
        for i, p in self.entries:
            if i == index:
                return p
        return 0.0

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)

    def basis_entries(self) -> Iterable[Tuple[BasisState, float]]:
        for index, p in self.entries:
            yield BasisState.from_index(self.width, index), p

    def marginal(self, positions: Iterable[int]) -> dict[int, float]:
        """Probability of each value of the bits at ``positions`` (1-based, MSB first).

        The returned keys encode the selected bits in the given order.
        """
        positions = list(positions)
        shifts = [self.width - p for p in positions]
        for p, s in zip(positions, shifts):
            if s < 0 or s >= self.width:
                raise ValueError(f"position {p} out of range 1..{self.width}")
        out: dict[int, float] = {}
        for index, prob in self.entries:
            key = 0
            for s in shifts:
                key = (key << 1) | ((index >> s) & 1)
            out[key] = out.get(key, 0.0) + prob
        return dict(sorted(out.items()))


def distribution(v: StateVector) -> OutcomeDistribution:
    length = norm(v)
    if abs(length - 1.0) > NORMALIZATION_TOLERANCE:
        raise ValueError(f"state is not normalized (norm {length!r})")
    entries = tuple((i, abs(v.terms[i]) ** 2) for i in sorted(v.terms))
    return OutcomeDistribution(v.width, entries)


def sample_index(dist: OutcomeDistribution, rng: RandomStream) -> int:
    u = rng.random()
    cumulative = 0.0
    for index, p in dist.entries:
        cumulative += p
        if u <= cumulative:
            return index
    # rounding left the running total just under u
    return dist.entries[-1][0]


def sample(v: StateVector, rng: RandomStream) -> BasisState:
    dist = distribution(v)
    return BasisState.from_index(v.width, sample_index(dist, rng))
