import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ketsim.gates import (
    SingleQubitGate,
    TwoQubitGate,
    apply_single,
    apply_two,
    hadamard,
    rotation,
    swap,
)
from ketsim.state import add, from_pairs, ket, norm, scale

from .strategies import dense, max_diff, normalized_states, random_normalized

S = 1 / math.sqrt(2)


# Dense oracle: build the full 2^n x 2^n operator by explicit Kronecker
# products (position 1 = leftmost factor = most significant bit).

def lift_single(u, i, n):
    out = np.eye(1)
    for p in range(1, n + 1):
        out = np.kron(out, u if p == i else np.eye(2))
    return out


def lift_two(u, i, j, n):
    # sum over the 16 matrix units of u, each a tensor of |a><b| factors
    out = np.zeros((2**n, 2**n), dtype=complex)
    for row in range(4):
        for col in range(4):
            if u[row, col] == 0:
                continue
            term = np.eye(1)
            for p in range(1, n + 1):
                if p == i:
                    f = np.zeros((2, 2)); f[row >> 1, col >> 1] = 1
                elif p == j:
                    f = np.zeros((2, 2)); f[row & 1, col & 1] = 1
                else:
                    f = np.eye(2)
                term = np.kron(term, f)
            out += u[row, col] * term
    return out


def test_hadamard_images():
    h = hadamard()
    assert max_diff(h.image0, from_pairs(1, [(0, S), (1, S)])) == 0
    assert max_diff(h.image1, from_pairs(1, [(0, S), (1, -S)])) == 0
    twice = apply_single(h, 1, apply_single(h, 1, ket(0)))
    assert max_diff(twice, ket(0)) < 1e-15


def test_rotation_examples():
    r1 = rotation(1)
    assert max_diff(apply_two(r1, 1, 2, ket(1, 1)), scale(1j, ket(1, 1))) < 1e-15
    assert apply_two(r1, 1, 2, ket(1, 0)) == ket(1, 0)
    expected = scale(math.sqrt(2) / 2 * (1 + 1j), ket(1, 1))
    assert max_diff(apply_two(rotation(2), 1, 2, ket(1, 1)), expected) < 1e-15


def test_rotation_rejects_bad_distance():
    with pytest.raises(ValueError):
        rotation(0)


def test_swap_examples():
    sw = swap()
    assert apply_two(sw, 1, 2, ket(0, 1)) == ket(1, 0)
    assert apply_two(sw, 1, 2, ket(1, 1)) == ket(1, 1)
    psi = from_pairs(2, [(1, 0.6), (2, 0.8j)])
    assert apply_two(sw, 1, 2, apply_two(sw, 1, 2, psi)) == psi


def test_apply_single_examples():
    h = hadamard()
    assert max_diff(apply_single(h, 1, ket(0, 0)), scale(S, add(ket(0, 0), ket(1, 0)))) < 1e-15
    assert max_diff(apply_single(h, 2, ket(0, 0)), scale(S, add(ket(0, 0), ket(0, 1)))) < 1e-15
    plus = from_pairs(1, [(0, S), (1, S)])
    out = apply_single(h, 1, plus)
    assert len(out) == 1 and max_diff(out, ket(0)) < 1e-15


def test_apply_two_examples():
    assert apply_two(swap(), 1, 3, ket(1, 0, 0)) == ket(0, 0, 1)
    assert max_diff(apply_two(rotation(1), 1, 2, ket(1, 1, 0)), scale(1j, ket(1, 1, 0))) < 1e-15
    assert apply_two(rotation(1), 1, 2, ket(0, 1, 0)) == ket(0, 1, 0)


@pytest.mark.parametrize("i", [0, 3])
def test_apply_single_position_range(i):
    with pytest.raises(ValueError):
        apply_single(hadamard(), i, ket(0, 1))


@pytest.mark.parametrize("i,j", [(2, 1), (1, 1), (0, 2), (2, 4)])
def test_apply_two_position_range(i, j):
    with pytest.raises(ValueError):
        apply_two(swap(), i, j, ket(0, 1, 1))


def test_non_unitary_gate_rejected():
    with pytest.raises(ValueError):
        SingleQubitGate(ket(0), ket(0))
    with pytest.raises(ValueError):
        TwoQubitGate((ket(0, 0), ket(0, 0), ket(1, 0), ket(1, 1)))


def test_reversed_orientation_by_permuted_images():
    # control/target swapped: permute images rather than passing i > j
    cnot_rev = TwoQubitGate((ket(0, 0), ket(1, 1), ket(1, 0), ket(0, 1)))
    assert apply_two(cnot_rev, 1, 2, ket(0, 1)) == ket(1, 1)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_builtin_gates_unitary(d):
    for g in (hadamard(), rotation(d), swap()):
        m = g.matrix()
        assert np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) < 1e-12


gate_choice = st.sampled_from(["H", "R1", "R2", "R3", "SWAP"])


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    normalized_states(width=n), st.integers(1, n), st.integers(1, n))), gate_choice)
def test_dense_kronecker_oracle(case, name):
    v, a, b = case
    n = v.width
    if name == "H":
        out = apply_single(hadamard(), a, v)
        ref = lift_single(hadamard().matrix(), a, n) @ dense(v)
    else:
        if n < 2 or a == b:
            return
        i, j = min(a, b), max(a, b)
        g = swap() if name == "SWAP" else rotation(int(name[1:]))
        out = apply_two(g, i, j, v)
        ref = lift_two(g.matrix(), i, j, n) @ dense(v)
    assert np.max(np.abs(dense(out) - ref)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    normalized_states(width=n), st.integers(1, n), st.integers(1, n))))
def test_single_qubit_applications_commute(case):
    v, i, k = case
    if i == k:
        return
    h = hadamard()
    ab = apply_single(h, k, apply_single(h, i, v))
    ba = apply_single(h, i, apply_single(h, k, v))
    assert max_diff(ab, ba) < 1e-12


@settings(max_examples=100, deadline=None)
@given(normalized_states(max_width=6), st.data())
def test_involutions(v, data):
    n = v.width
    i = data.draw(st.integers(1, n))
    assert max_diff(apply_single(hadamard(), i, apply_single(hadamard(), i, v)), v) < 1e-12
    if n >= 2:
        j = data.draw(st.integers(i + 1, n)) if i < n else None
        if j is not None:
            assert max_diff(apply_two(swap(), i, j, apply_two(swap(), i, j, v)), v) < 1e-12


@settings(max_examples=200, deadline=None)
@given(normalized_states(max_width=6), st.data(), gate_choice)
def test_norm_preserved(v, data, name):
    n = v.width
    if name == "H":
        out = apply_single(hadamard(), data.draw(st.integers(1, n)), v)
    else:
        if n < 2:
            return
        i = data.draw(st.integers(1, n - 1))
        j = data.draw(st.integers(i + 1, n))
        out = apply_two(swap() if name == "SWAP" else rotation(int(name[1:])), i, j, v)
    assert abs(norm(out) - 1) < 1e-12
