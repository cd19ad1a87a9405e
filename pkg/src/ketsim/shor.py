"""Shor's factoring algorithm on the sparse simulator.

The classical parts (input checks, gcd shortcut, continued fractions and
the final gcds) run directly; order finding builds the two-register state
``sum_c e[c] e[x^c mod N]``, applies the QFT circuit to the first register
and measures once.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

from .measurement import RandomStream, distribution, make_stream, sample_index
from .qft import apply_steps, build_qft_circuit
from .state import StateVector


class InvalidInput(ValueError):
    """N cannot be handed to the order-finding loop."""

    hint = ""


class TooSmallInput(InvalidInput):
    hint = "the smallest odd composite that is not a prime power is 15"


class EvenInput(InvalidInput):
    hint = "divide out factors of 2 first and factor the odd part"


class PrimeInput(InvalidInput):
    hint = "N is prime and has no nontrivial factors"


class PrimePowerInput(InvalidInput):
    hint = "prime powers are found classically via integer roots"


class FailureReason(str, enum.Enum):
    ODD_ORDER = "OddOrder"
    TRIVIAL_ROOT = "TrivialRoot"
    NO_CONVERGENT_WORKED = "NoConvergentWorked"
    GCD_SHORTCUT = "GcdShortcut"


def gcd(a: int, b: int) -> int:
    """Euclid's algorithm."""
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError(f"gcd needs non-negative arguments, not both zero: ({a}, {b})")
    while b:
        a, b = b, a % b
    return a


def mod_pow(x: int, c: int, n: int) -> int:
    """``x**c mod n`` by right-to-left square-and-multiply."""
    if n < 1 or c < 0:
        raise ValueError(f"mod_pow needs n >= 1 and c >= 0, got n={n}, c={c}")
    result = 1 % n
    base = x % n
    while c:
        if c & 1:
            result = result * base % n
        base = base * base % n
        c >>= 1
    return result


def integer_root(n: int, b: int) -> int:
    """Largest ``r`` with ``r**b <= n``, by binary search."""
    lo, hi = 0, 1 << (n.bit_length() // b + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**b <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_base(n: int) -> Optional[Tuple[int, int]]:
    """``(p, b)`` with ``p**b == n``, ``b >= 2`` and p prime, or None."""
    for b in range(n.bit_length(), 1, -1):
        r = integer_root(n, b)
        if r >= 2 and r**b == n and is_prime(r):
            return r, b
    return None


def validate_input(n: int) -> int:
    if n < 2:
        raise TooSmallInput(f"N={n} is too small to factor")
    if n % 2 == 0:
        raise EvenInput(f"N={n} is even")
    if is_prime(n):
        raise PrimeInput(f"N={n} is prime")
    pp = prime_power_base(n)
    if pp is not None:
        raise PrimePowerInput(f"N={n} = {pp[0]}^{pp[1]} is a prime power")
    return n


def brute_force_order(x: int, n: int) -> int:
    if gcd(x % n, n) != 1:
        raise ValueError(f"x={x} is not coprime to N={n}")
    r, y = 1, x % n
    while y != 1 % n:
        y = y * x % n
        r += 1
    return r


def default_qubits(n: int) -> int:
    """Smallest q with ``2**q >= N**2``."""
    return (n * n - 1).bit_length()


def default_attempts(n: int) -> int:
    if n < 3:
        return 1
    return max(1, math.ceil(160 * math.log(math.log(n)) / 9))


def prepare_registers(q: int, x: int, n: int) -> StateVector:
    """``2**-q/2 * sum_c e[c] e[x^c mod N]`` on ``2q`` qubits."""
    if n < 2:
        raise ValueError(f"N must be >= 2, got {n}")
    if (1 << q) <= n - 1:
        raise ValueError(f"q={q} qubits cannot hold residues up to N-1={n - 1}")
    if gcd(x % n, n) != 1:
        raise ValueError(f"x={x} is not coprime to N={n}")
    size = 1 << q
    amp = complex(1 / math.sqrt(size))
    terms = {}
    f = 1 % n
    for c in range(size):
        terms[(c << q) | f] = amp
        f = f * x % n
    return StateVector(2 * q, terms)


def order_find_state(n: int, x: int, q: int) -> StateVector:
    """Two-register state after the QFT on the first register."""
    circuit = build_qft_circuit(q)
    return apply_steps(circuit.steps, prepare_registers(q, x, n))


def order_find_quantum(n: int, x: int, q: int, rng: RandomStream) -> int:
    state = order_find_state(n, x, q)
    joint = sample_index(distribution(state), rng)
    return joint >> q


def continued_fraction(num: int, den: int) -> List[int]:
    terms = []
    while den:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    return terms


def convergent_denominators(k: int, q: int) -> List[int]:
    if not 0 <= k < (1 << q):
        raise ValueError(f"k={k} out of range for {q} qubits")
    # h/k recurrences: k_{-2}=1, k_{-1}=0
    prev, cur = 1, 0
    out = []
    for a in continued_fraction(k, 1 << q):
        prev, cur = cur, a * cur + prev
        out.append(cur)
    return out


def _try_denominator(n: int, x: int, d: int) -> Tuple[Optional[Tuple[int, int]], Optional[FailureReason]]:
    if mod_pow(x, d, n) != 1:
        return None, None
    if d % 2:
        return None, FailureReason.ODD_ORDER
    y = mod_pow(x, d // 2, n)
    if y == n - 1:
        return None, FailureReason.TRIVIAL_ROOT
    if y == 1:
        # d/2 is already a multiple of the order; both gcds would be trivial
        return None, None
    return (gcd(n, y + 1), gcd(n, y - 1)), None


def extract_factors(n: int, x: int, denominators: List[int]) -> Optional[Tuple[int, int]]:
    return scan_denominators(n, x, denominators)[0]


def scan_denominators(n: int, x: int, denominators: List[int]):
    """Return ``(factors, accepted_r, failure_reason)`` for the first qualifying d."""
    first_failure = None
    for d in denominators:
        factors, reason = _try_denominator(n, x, d)
        if factors is not None:
            return factors, d, None
        if first_failure is None and reason is not None:
            first_failure = reason
    return None, None, first_failure or FailureReason.NO_CONVERGENT_WORKED


@dataclass
class ShorConfig:
    seed: int = 0
    qubits_override: Optional[int] = None
    max_attempts_override: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        for name in ("qubits_override", "max_attempts_override"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive, got {value}")

    def qubits(self, n: int) -> int:
        return self.qubits_override or default_qubits(n)

    def attempts(self, n: int) -> int:
        return self.max_attempts_override or default_attempts(n)


@dataclass
class ShorTrace:
    chosen_x: int
    gcd_shortcut: Optional[int] = None
    measured_k: Optional[int] = None
    convergent_denominators: List[int] = field(default_factory=list)
    accepted_r: Optional[int] = None
    factors: Optional[Tuple[int, int]] = None
    failure_reason: Optional[FailureReason] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.factors is not None:
            d["factors"] = list(self.factors)
        if self.failure_reason is not None:
            d["failure_reason"] = self.failure_reason.value
        return d


@dataclass
class ShorResult:
    factors: Optional[Tuple[int, int]]
    traces: List[ShorTrace]
    qubits: int
    max_attempts: int


def shor_attempt(n: int, x: int, q: int, rng: RandomStream) -> ShorTrace:
    g = gcd(x, n)
    if g != 1:
        return ShorTrace(chosen_x=x, gcd_shortcut=g, factors=(g, n // g),
                         failure_reason=FailureReason.GCD_SHORTCUT)
    k = order_find_quantum(n, x, q, rng)
    dens = convergent_denominators(k, q)
    factors, r, reason = scan_denominators(n, x, dens)
    return ShorTrace(chosen_x=x, measured_k=k, convergent_denominators=dens,
                     accepted_r=r, factors=factors, failure_reason=reason)


def shor_factor(n: int, config: Optional[ShorConfig] = None) -> ShorResult:
    config = config or ShorConfig()
    validate_input(n)
    q = config.qubits(n)
    attempts = config.attempts(n)
    rng = make_stream(config.seed)
    traces = []
    for _ in range(attempts):
        x = rng.randint(2, n - 1)
        trace = shor_attempt(n, x, q, rng)
        traces.append(trace)
        if trace.factors is not None:
            return ShorResult(trace.factors, traces, q, attempts)
    return ShorResult(None, traces, q, attempts)
