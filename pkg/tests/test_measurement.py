import math
from collections import Counter

import pytest

from ketsim.measurement import distribution, make_stream, sample, sample_index
from ketsim.state import from_pairs, ket, zero

S = 1 / math.sqrt(2)


class FixedStream:
    def __init__(self, *values):
        self.values = list(values)
        self.calls = 0

    def random(self):
        self.calls += 1
        return self.values.pop(0)


PLUS = from_pairs(1, [(0, S), (1, S)])


def test_distribution_examples():
    d = distribution(PLUS)
    assert [i for i, _ in d] == [0, 1]
    assert all(p == pytest.approx(0.5, abs=1e-15) for _, p in d)
    assert distribution(ket(1, 0)).entries == ((2, 1.0),)
    four = from_pairs(2, [(0, 0.5), (1, 0.5j), (2, -0.5), (3, -0.5j)])
    assert [p for _, p in distribution(four)] == [0.25] * 4


def test_distribution_is_index_ordered():
    v = from_pairs(3, [(6, 0.6), (1, 0.8)])
    assert [i for i, _ in distribution(v)] == [1, 6]
    assert [str(b) for b, _ in distribution(v).basis_entries()] == ["001", "110"]


@pytest.mark.parametrize("v", [zero(1), from_pairs(1, [(0, 1.0), (1, 0.1)])])
def test_distribution_requires_normalized(v):
    with pytest.raises(ValueError):
        distribution(v)


def test_sample_cumulative_rule():
    s = FixedStream(0.3)
    assert sample(PLUS, s).index == 0
    assert s.calls == 1
    assert sample(PLUS, FixedStream(0.7)).index == 1
    quarter = from_pairs(2, [(k, 0.5) for k in range(4)])
    assert sample(quarter, FixedStream(0.25)).index == 0  # boundary is inclusive
    assert sample(quarter, FixedStream(0.2500001)).index == 1
    single = ket(1, 0, 1)
    for u in (0.0, 0.5, 0.999999):
        assert sample(single, FixedStream(u)).bits == (1, 0, 1)


def test_sample_never_returns_absent_term():
    v = from_pairs(2, [(1, S), (3, S)])
    rng = make_stream(11)
    assert {sample(v, rng).index for _ in range(500)} == {1, 3}


def test_sample_rounding_falls_back_to_last_entry():
    d = distribution(from_pairs(2, [(0, 0.5), (1, 0.5), (2, 0.5), (3, 0.5)]))
    assert sample_index(d, FixedStream(1 - 1e-17)) == 3


def test_sampling_frequencies():
    uniform = from_pairs(2, [(k, 0.5) for k in range(4)])
    d = distribution(uniform)
    rng = make_stream(2024)
    counts = Counter(sample_index(d, rng) for _ in range(100_000))
    for k in range(4):
        assert abs(counts[k] / 100_000 - 0.25) < 0.01


def test_sampling_deterministic_per_seed():
    v = from_pairs(3, [(k, 1 / math.sqrt(8)) for k in range(8)])
    a = [sample(v, make_stream(5)).index for _ in range(1)]
    r1, r2 = make_stream(99), make_stream(99)
    seq1 = [sample(v, r1).index for _ in range(50)]
    seq2 = [sample(v, r2).index for _ in range(50)]
    assert seq1 == seq2
    assert a == [sample(v, make_stream(5)).index]


def test_marginal_first_register():
    v = from_pairs(4, [(0b0001, 0.5), (0b0110, 0.5), (0b0111, 0.5), (0b1100, 0.5)])
    m = distribution(v).marginal([1, 2])
    assert m == pytest.approx({0b00: 0.25, 0b01: 0.5, 0b11: 0.25})
