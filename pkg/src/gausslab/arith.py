"""Exact integer and residue arithmetic.

Everything downstream (Gauss sums, Kloosterman sums, class statistics)
reduces to the primitives in this module: gcd, modular inverses, the
Jacobi symbol, the quartic unit factor of odd integers, and factored
modulus metadata.  All functions are pure and operate on Python ints;
moduli stay well inside 64 bits at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EvenArgument, EvenModulus, IsSquare, NotCoprime


def gcd(a: int, b: int) -> int:
    """Greatest common divisor, nonnegative; gcd(0, 0) = 0."""
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m).

    Raises NotCoprime if gcd(a, m) != 1.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {math.gcd(a, m)} != 1")
    return pow(a, -1, m)


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd b, extended to negative b.

    Binary reduction via quadratic reciprocity for b > 0; a negative
    lower argument contributes the sign of a, and (0/+-1) = 1.
    """
    if b % 2 == 0:
        raise EvenModulus(f"lower argument must be odd, got {b}")
    if b < 0:
        if a == 0:
            return 1 if b == -1 else 0
        return (1 if a > 0 else -1) * jacobi(a, -b)
    if b == 1:
        return 1
    a %= b
    j = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                j = -j
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            j = -j
        a %= b
    return j if b == 1 else 0


def epsilon(a: int) -> complex:
    """Quartic unit of an odd integer: 1 if a = 1 mod 4, i if a = 3 mod 4."""
    if a % 2 == 0:
        raise EvenArgument(f"argument must be odd, got {a}")
    return 1 + 0j if a % 4 == 1 else 1j


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as sorted (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


@dataclass(frozen=True)
class Modulus:
    """A modulus q with the derived quantities used throughout.

    phi is Euler's totient, tau the divisor count; q_mod4 and is_square
    select the normalization and class scheme for value distributions.
    """

    q: int
    factorization: tuple[tuple[int, int], ...]
    phi: int
    tau: int
    q_mod4: int
    is_square: bool


def analyze_modulus(q: int) -> Modulus:
    """Factor q and derive totient, divisor count, residue mod 4, squareness."""
    factors = factorize(q)
    phi = q
    tau = 1
    square = True
    for p, e in factors:
        phi -= phi // p
        tau *= e + 1
        if e % 2:
            square = False
    return Modulus(q, tuple(factors), phi, tau, q % 4, square)


def find_nonresidue_witness(q: int, max_attempts: int = 10**6) -> int:
    """Smallest r = 1 mod 4 with (q/r) = -1.

    Exists whenever q is not a perfect square; for squares the symbol is
    never -1, so we refuse upfront instead of searching forever.
    """
    if q < 1:
        raise ValueError(f"need a positive integer, got {q}")
    if is_perfect_square(q):
        raise IsSquare(f"{q} is a perfect square; no witness exists")
    r = 1
    for _ in range(max_attempts):
        if jacobi(q, r) == -1:
            return r
        r += 4
    raise RuntimeError(f"no witness for q={q} below r={r}")


@dataclass(frozen=True)
class UnitResidue:
    """A residue p in [1, q] coprime to q."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or not (1 <= self.p <= self.q):
            raise ValueError(f"residue {self.p} outside [1, {self.q}]")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")


def units(q: int) -> np.ndarray:
    """Residues in [1, q] coprime to q, ascending."""
    if q < 1:
        raise ValueError(f"need a positive integer, got {q}")
    r = np.arange(1, q + 1, dtype=np.int64)
    return r[np.gcd(r, q) == 1]


def inverse_table(q: int) -> tuple[np.ndarray, np.ndarray]:
    """(units of q, their inverses mod q), aligned arrays.

    For q = 1 the single unit is 1 with inverse 0 (the zero residue),
    which is the correct exponent convention e(0) = 1.
    """
    ps = units(q)
    invs = np.array([pow(int(p), -1, q) for p in ps], dtype=np.int64)
    return ps, invs
