"""Quantum Fourier transform: gate circuit plus two closed-form references.

The circuit is the textbook decomposition: for each qubit ``i`` a Hadamard,
then controlled phases from every later qubit ``j`` with phase
``exp(i*pi / 2**(j-i))``, and finally a layer of swaps that reverses the
qubit order.  :func:`qft_direct` and :func:`qft_product_form` compute the
same output straight from the Fourier sum and from its factorization into
single-qubit states; they exist to check the circuit.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from . import gates
from .state import StateVector, from_pairs, scale, tensor_all


class GateKind(enum.Enum):
    H = "H"
    R = "R"
    SWAP = "SWAP"


@dataclass(frozen=True)
class GateApplication:
    kind: GateKind
    positions: Tuple[int, ...]

    def __post_init__(self) -> None:
        expected = 1 if self.kind is GateKind.H else 2
        if len(self.positions) != expected:
            raise ValueError(f"{self.kind.value} takes {expected} position(s), got {self.positions}")
        if expected == 2 and not self.positions[0] < self.positions[1]:
            raise ValueError(f"two-qubit positions must be increasing, got {self.positions}")

    @property
    def distance(self) -> int | None:
        """Rotation distance ``d = j - i``; None for other kinds."""
        if self.kind is GateKind.R:
            return self.positions[1] - self.positions[0]
        return None

    def to_text(self) -> str:
        return " ".join([self.kind.value, *map(str, self.positions)])

    @classmethod
    def from_text(cls, line: str) -> "GateApplication":
        name, *rest = line.split()
        return cls(GateKind(name.upper()), tuple(int(p) for p in rest))


@dataclass(frozen=True)
class Circuit:
    width: int
    steps: Tuple[GateApplication, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        for step in self.steps:
            if not all(1 <= p <= self.width for p in step.positions):
                raise ValueError(f"step {step.to_text()!r} outside width {self.width}")

    def to_text(self) -> str:
        return "\n".join(step.to_text() for step in self.steps)

    @classmethod
    def from_text(cls, width: int, text: str) -> "Circuit":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        return cls(width, tuple(GateApplication.from_text(ln) for ln in lines))


def build_qft_circuit(q: int) -> Circuit:
    if q < 1:
        raise ValueError(f"qubit count must be >= 1, got {q}")
    steps = []
    for i in range(1, q + 1):
        steps.append(GateApplication(GateKind.H, (i,)))
        for j in range(i + 1, q + 1):
            steps.append(GateApplication(GateKind.R, (i, j)))
    for i in range(1, q // 2 + 1):
        steps.append(GateApplication(GateKind.SWAP, (i, q + 1 - i)))
    return Circuit(q, tuple(steps))


_HADAMARD = gates.hadamard()
_SWAP = gates.swap()


@lru_cache(maxsize=None)
def _rotation(d: int) -> gates.TwoQubitGate:
    return gates.rotation(d)


def apply_steps(steps: Sequence[GateApplication], v: StateVector) -> StateVector:
    """Apply steps in order; positions may address any qubit of ``v``."""
    for step in steps:
        if step.kind is GateKind.H:
            v = gates.apply_single(_HADAMARD, step.positions[0], v)
        elif step.kind is GateKind.R:
            v = gates.apply_two(_rotation(step.distance), *step.positions, v)
        else:
            v = gates.apply_two(_SWAP, *step.positions, v)
    return v


def run_circuit(c: Circuit, v: StateVector) -> StateVector:
    if c.width != v.width:
        raise ValueError(f"circuit width {c.width} != state width {v.width}")
    return apply_steps(c.steps, v)


def _check_basis(j: int, q: int) -> int:
    if q < 1:
        raise ValueError(f"qubit count must be >= 1, got {q}")
    n = 1 << q
    if not 0 <= j < n:
        raise ValueError(f"basis index {j} out of range for {q} qubits")
    return n


def qft_direct(j: int, q: int) -> StateVector:
    n = _check_basis(j, q)
    norm = 1 / math.sqrt(n)
    # reduce jk mod n first so the phase argument stays small
    return from_pairs(q, ((k, norm * cmath.exp(2j * math.pi * ((j * k) % n) / n)) for k in range(n)))


def qft_product_form(j: int, q: int) -> StateVector:
    n = _check_basis(j, q)
    factors = []
    for m in range(1, q + 1):
        phase = cmath.exp(2j * math.pi * (j % 2**m) / 2**m)
        factors.append(from_pairs(1, [(0, 1), (1, phase)]))
    return scale(1 / math.sqrt(n), tensor_all(factors))


def dft_oracle(amplitudes: Sequence[complex]) -> np.ndarray:
    """Unitary DFT ``beta_k = n**-0.5 * sum_j alpha_j exp(2*pi*i*j*k/n)``."""
    a = np.asarray(amplitudes, dtype=complex)
    n = a.shape[0]
    if n < 2 or n & (n - 1):
        raise ValueError(f"length must be a power of two >= 2, got {n}")
    # positive exponent + 1/sqrt(n) is numpy's orthonormal inverse transform
    return np.fft.ifft(a, norm="ortho")


def gate_counts(q: int) -> dict:
    if q < 1:
        raise ValueError(f"qubit count must be >= 1, got {q}")
    return {"h_and_r": q * (q + 1) // 2, "swaps": q // 2}
