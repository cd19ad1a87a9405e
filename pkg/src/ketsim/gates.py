"""Gates as rewrite rules on basis kets, and their positioned application.

A gate is stored as the images of the basis kets it acts on.  Applying a
gate at position ``i`` (or positions ``i < j``) rewrites only those bits of
every term and leaves the rest of the register alone, i.e. the lifted
operator ``I x ... x U x ... x I`` without ever building its matrix.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .state import StateVector, _chopped, from_pairs, ket

UNITARY_TOLERANCE = 1e-12


def _image_matrix(images: Tuple[StateVector, ...]) -> np.ndarray:
    dim = len(images)
    mat = np.zeros((dim, dim), dtype=complex)
    for col, image in enumerate(images):
        for row, amp in image.terms.items():
            mat[row, col] = amp
    return mat


def _check_unitary(mat: np.ndarray, name: str) -> None:
    err = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
    if err > UNITARY_TOLERANCE:
        raise ValueError(f"{name} is not unitary (deviation {err:.3g})")


@dataclass(frozen=True)
class SingleQubitGate:
    """``U|e[0] -> image0`` and ``U|e[1] -> image1``."""

    image0: StateVector
    image1: StateVector
    name: str = "U"
    _rules: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.image0.width != 1 or self.image1.width != 1:
            raise ValueError("single-qubit gate images must have width 1")
        _check_unitary(self.matrix(), self.name)
        rules = tuple(tuple(img.terms.items()) for img in (self.image0, self.image1))
        object.__setattr__(self, "_rules", rules)

    def matrix(self) -> np.ndarray:
        return _image_matrix((self.image0, self.image1))


@dataclass(frozen=True)
class TwoQubitGate:
    """Images of ``e[0,0], e[0,1], e[1,0], e[1,1]`` in that order."""

    images: Tuple[StateVector, StateVector, StateVector, StateVector]
    name: str = "U2"
    _rules: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if len(images) != 4 or any(img.width != 2 for img in images):
            raise ValueError("two-qubit gate needs four images of width 2")
        object.__setattr__(self, "images", images)
        _check_unitary(self.matrix(), self.name)
        rules = tuple(tuple(img.terms.items()) for img in images)
        object.__setattr__(self, "_rules", rules)

    def matrix(self) -> np.ndarray:
        return _image_matrix(self.images)


_S = 1 / math.sqrt(2)


def hadamard() -> SingleQubitGate:
    return SingleQubitGate(
        image0=from_pairs(1, [(0, _S), (1, _S)]),
        image1=from_pairs(1, [(0, _S), (1, -_S)]),
        name="H",
    )


def rotation(d: int) -> TwoQubitGate:
    """Controlled phase: ``e[1,1] -> exp(i*pi/2**d) e[1,1]``, identity otherwise."""
    if d < 1:
        raise ValueError(f"rotation distance must be >= 1, got {d}")
    phase = cmath.exp(1j * math.pi / 2**d)
    return TwoQubitGate(
        images=(ket(0, 0), ket(0, 1), ket(1, 0), from_pairs(2, [(3, phase)])),
        name=f"R{d}",
    )


def swap() -> TwoQubitGate:
    return TwoQubitGate(images=(ket(0, 0), ket(1, 0), ket(0, 1), ket(1, 1)), name="SWAP")


def apply_single(g: SingleQubitGate, i: int, v: StateVector) -> StateVector:
    n = v.width
    if not 1 <= i <= n:
        raise ValueError(f"position {i} out of range 1..{n}")
    shift = n - i
    mask = 1 << shift
    rules = g._rules
    acc: dict[int, complex] = {}
    get = acc.get
    for index, amp in v.terms.items():
        rest = index & ~mask
        for bit, coeff in rules[(index >> shift) & 1]:
            key = rest | (bit << shift)
            acc[key] = get(key, 0j) + amp * coeff
    return _chopped(n, acc)


def apply_two(g: TwoQubitGate, i: int, j: int, v: StateVector) -> StateVector:
    n = v.width
    if not (1 <= i < j <= n):
        raise ValueError(f"positions ({i}, {j}) invalid for width {n}; need 1 <= i < j <= n")
    si, sj = n - i, n - j
    mask = (1 << si) | (1 << sj)
    rules = g._rules
    acc: dict[int, complex] = {}
    get = acc.get
    for index, amp in v.terms.items():
        rest = index & ~mask
        local = (((index >> si) & 1) << 1) | ((index >> sj) & 1)
        for pair, coeff in rules[local]:
            key = rest | ((pair >> 1) << si) | ((pair & 1) << sj)
            acc[key] = get(key, 0j) + amp * coeff
    return _chopped(n, acc)
