"""Sparse superpositions over the computational basis.

A state on ``n`` qubits is a map from basis index to complex amplitude.
Qubit position 1 is the most significant bit, so the ket ``e[x_1, ..., x_n]``
has index ``x_n * 2**0 + ... + x_1 * 2**(n-1)``.

Every constructor funnels through :func:`canonicalize`: like terms are
collected and amplitudes smaller than :data:`CHOP_TOLERANCE` are dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Tuple

CHOP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BasisState:
    """One computational basis ket ``e[x_1, ..., x_n]``."""

    bits: Tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("a basis state needs at least one qubit")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_index(cls, width: int, index: int) -> "BasisState":
        return cls(index_to_bits(width, index))

    @classmethod
    def from_string(cls, text: str) -> "BasisState":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return bits_to_index(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def index_to_bits(width: int, index: int) -> Tuple[int, ...]:
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    if not 0 <= index < (1 << width):
        raise ValueError(f"index {index} out of range for {width} qubits")
    return tuple((index >> (width - 1 - p)) & 1 for p in range(width))


def bits_to_index(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        index = (index << 1) | b
    return index


@dataclass(frozen=True, eq=False)
class StateVector:
    """Canonical sparse state: ``terms`` maps basis index to amplitude.

    Build instances with :func:`canonicalize` / :func:`from_pairs`; the
    constructor trusts its input.
    """

    width: int
    terms: Mapping[int, complex]

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if not isinstance(self.terms, MappingProxyType):
            object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.width == other.width and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.width, frozenset(self.terms.items())))

    def amplitude(self, basis: BasisState | int) -> complex:
        index = basis if isinstance(basis, int) else basis.index
        return self.terms.get(index, 0j)

    def basis_terms(self) -> Iterator[Tuple[BasisState, complex]]:
        """Yield ``(BasisState, amplitude)`` in ascending index order."""
        for index in sorted(self.terms):
            yield BasisState.from_index(self.width, index), self.terms[index]

    def to_dense(self) -> list[complex]:
        dense = [0j] * (1 << self.width)
        for index, amp in self.terms.items():
            dense[index] = amp
        return dense

    def __add__(self, other: "StateVector") -> "StateVector":
        return add(self, other)

    def __rmul__(self, s: complex) -> "StateVector":
        return scale(s, self)

    def __matmul__(self, other: "StateVector") -> "StateVector":
        return tensor(self, other)

    def __repr__(self) -> str:
        parts = [f"({amp:.6g})e[{basis}]" for basis, amp in self.basis_terms()]
        return f"StateVector({self.width}, {' + '.join(parts) or '0'})"


def from_pairs(width: int, pairs: Iterable[Tuple[int, complex]]) -> StateVector:
    """Collect ``(index, amplitude)`` pairs, possibly repeating, into a state."""
    limit = 1 << width
    acc: dict[int, complex] = {}
    for index, amp in pairs:
        if not 0 <= index < limit:
            raise ValueError(f"index {index} out of range for {width} qubits")
        acc[index] = acc.get(index, 0j) + complex(amp)
    return _chopped(width, acc)


def _chopped(width: int, acc: dict[int, complex]) -> StateVector:
    for index, amp in acc.items():
        if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
            raise ValueError(f"non-finite amplitude {amp} on index {index}")
    return StateVector(width, {i: a for i, a in acc.items() if abs(a) >= CHOP_TOLERANCE})


def canonicalize(state: StateVector) -> StateVector:
    return from_pairs(state.width, state.terms.items())


def basis_ket(width: int, index: int) -> StateVector:
    index_to_bits(width, index)
    return StateVector(width, {index: 1 + 0j})


def ket(*bits: int) -> StateVector:
    """Shorthand for ``e[x_1, ..., x_n]``: ``ket(1, 0, 1)``."""
    basis = BasisState(bits)
    return StateVector(basis.width, {basis.index: 1 + 0j})


def zero(width: int) -> StateVector:
    return StateVector(width, {})


def tensor(a: StateVector, b: StateVector) -> StateVector:
    shift = b.width
    acc: dict[int, complex] = {}
    for ia, xa in a.terms.items():
        high = ia << shift
        for ib, xb in b.terms.items():
            acc[high | ib] = xa * xb
    return _chopped(a.width + b.width, acc)


def tensor_all(states: Iterable[StateVector]) -> StateVector:
    it = iter(states)
    result = next(it)
    for s in it:
        result = tensor(result, s)
    return result


def add(a: StateVector, b: StateVector) -> StateVector:
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    acc = dict(a.terms)
    for index, amp in b.terms.items():
        acc[index] = acc.get(index, 0j) + amp
    return _chopped(a.width, acc)


def scale(s: complex, a: StateVector) -> StateVector:
    s = complex(s)
    return _chopped(a.width, {i: s * amp for i, amp in a.terms.items()})


def norm(a: StateVector) -> float:
    return math.sqrt(math.fsum(abs(amp) ** 2 for amp in a.terms.values()))


def is_normalized(a: StateVector, tol: float = 1e-9) -> bool:
    return abs(norm(a) - 1.0) <= tol


def to_records(a: StateVector) -> list[dict]:
    """Serialize as ``[{"basis": "x_1...x_n", "re": float, "im": float}, ...]``."""
    return [
        {"basis": str(basis), "re": amp.real, "im": amp.imag}
        for basis, amp in a.basis_terms()
    ]


def from_records(records: Sequence[Mapping]) -> StateVector:
    if not isinstance(records, Sequence) or not records:
        raise ValueError("state file must be a non-empty JSON array of terms")
    pairs = []
    width = None
    for rec in records:
        try:
            basis = BasisState.from_string(rec["basis"])
            amp = complex(float(rec["re"]), float(rec["im"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed term record {rec!r}") from exc
        if width is None:
            width = basis.width
        elif basis.width != width:
            raise ValueError(f"term {basis} has width {basis.width}, expected {width}")
        pairs.append((basis.index, amp))
    return from_pairs(width, pairs)
