"""Incomplete Gauss sums three ways.

g(w, p, q) = sum_{h=0}^{q-1} w(h/q) e_q(p h^2) with e_q(x) = exp(2 pi i x / q).

* direct: the O(q) definition, with the phase p*h^2 reduced mod q in
  exact integer arithmetic before any floating-point conversion;
* closed: the classical complete sum (w = 1) in terms of the Jacobi
  symbol and the quartic unit factor;
* fast: O(#coefficients) evaluation of the incomplete sum through the
  functional equations, as the complete sum times a quadratic Fourier
  series evaluated at a rational point built from a modular inverse.

The quadratic series come in three variants keyed to q mod 4:

  G_plus(x)  = sum_n c_{2n} e(n^2 x)      (q = 0 mod 4)
  G_full(x)  = sum_n c_n   e(n^2 x)      (q odd)
  G_minus(x) = sum_{n odd} c_n e(n^2 x)  (q = 2 mod 4)

Evaluating these at a uniformly random point of [0, 1) gives the limit
law of the normalized incomplete sums; `distlab` builds on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import IndicatorKind, NotCoprime
from .weights import (
    FOURIER,
    WeightFunction,
    evaluate_grid,
    reduce_weight,
)

G_PLUS = "G_plus"
G_FULL = "G_full"
G_MINUS = "G_minus"
VARIANTS = (G_PLUS, G_FULL, G_MINUS)


def variant_for_modulus(q: int) -> str:
    """The series variant whose law matches the normalized sums mod q."""
    if q % 4 == 0:
        return G_PLUS
    if q % 2 == 1:
        return G_FULL
    return G_MINUS


# ---------------------------------------------------------------------------
# direct summation
# ---------------------------------------------------------------------------

class DirectEvaluator:
    """Reusable O(q) evaluator for one weight and modulus.

    Precomputes the weight values on the grid h/q and the q-th roots of
    unity; each call is a table lookup plus a dot product, so sweeping
    over many p costs O(q) per sum with no transcendental calls.
    """

    def __init__(self, w: WeightFunction, q: int):
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        self.q = q
        h = np.arange(q, dtype=np.int64)
        self.h2 = (h * h) % q
        self.roots = np.exp(2j * np.pi * np.arange(q) / q)
        self.values = np.asarray(evaluate_grid(w, q), dtype=np.complex128)
        self.grid_mass = complex(self.values.sum())

    def __call__(self, p: int) -> complex:
        t = ((p % self.q) * self.h2) % self.q
        return complex(self.values @ self.roots[t])


def gauss_sum_direct(w: WeightFunction, p: int, q: int) -> complex:
    """The defining sum; p need not be coprime to q."""
    return DirectEvaluator(w, q)(p)


# ---------------------------------------------------------------------------
# complete sum, closed form
# ---------------------------------------------------------------------------

def gauss_sum_closed(p: int, q: int) -> complex:
    """The complete sum (weight 1) for gcd(p, q) = 1.

    (1+i) eps_p^{-1} (q/p) sqrt(q)  if q = 0 mod 4,
    eps_q (p/q) sqrt(q)             if q odd,
    0                               if q = 2 mod 4.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    p %= q
    if q % 4 == 0:
        return (1 + 1j) * arith.epsilon(p).conjugate() * arith.jacobi(q, p) * math.sqrt(q)
    if q % 2 == 1:
        return arith.epsilon(q) * arith.jacobi(p, q) * math.sqrt(q)
    return 0j


def reduce_noncoprime(w: WeightFunction, p: int, q: int):
    """Rewrite g(w, p, q) with a coprime pair.

    For r = gcd(p, q): g(w, p, q) = g(w_r, p/r, q/r) where w_r is the
    r-fold compressed weight.  Identity when r = 1.
    """
    r = math.gcd(p, q)
    if r <= 1:
        return w, p, q
    return reduce_weight(w, r), p // r, q // r


# ---------------------------------------------------------------------------
# quadratic series kernel
# ---------------------------------------------------------------------------

def _variant_terms(coefficients: dict[int, complex], variant: str,
                   cutoff: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Fold a coefficient map into series terms c_n e(n^2 x), n >= 0.

    Indices n and -n share e(n^2 x), so their coefficients are summed.
    cutoff bounds the series index |n| (not the coefficient index).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    folded: dict[int, complex] = {}
    for k, c in coefficients.items():
        if variant == G_PLUS:
            if k % 2 != 0:
                continue
            n = k // 2
        elif variant == G_MINUS:
            if k % 2 == 0:
                continue
            n = k
        else:
            n = k
        if cutoff is not None and abs(n) > cutoff:
            continue
        key = abs(n)
        folded[key] = folded.get(key, 0j) + complex(c)
    ns = np.array(sorted(folded), dtype=np.int64)
    cs = np.array([folded[int(n)] for n in ns], dtype=np.complex128)
    return ns, cs


def _eval_quadratic_series(ns: np.ndarray, cs: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """sum_j cs[j] e(ns[j]^2 x) for a vector of x.

    Sparse supports go through direct complex exponentials.  Dense
    supports on an arithmetic progression (the folded indicator series)
    use the two-multiply recurrence for quadratic phases, which turns
    the evaluation into streaming vector multiplies.
    """
    out = np.zeros(xs.shape, dtype=np.complex128)
    m = int(ns.size)
    if m == 0:
        return out
    if m > 2 and xs.size > 512:
        d = int(ns[1] - ns[0])
        if d > 0 and np.all(np.diff(ns) == d):
            a = int(ns[0])
            tp = 2j * np.pi
            cur = np.exp(tp * float(a * a) * xs)
            step = np.exp(tp * float(2 * a * d + d * d) * xs)
            mult = np.exp(tp * float(2 * d * d) * xs)
            for c in cs.tolist():
                if c != 0:
                    out += c * cur
                cur *= step
                step *= mult
            return out
    for n, c in zip(ns.tolist(), cs.tolist()):
        out += c * np.exp((2j * np.pi * float(n * n)) * xs)
    return out


def limit_series(variant: str, w: WeightFunction, x, cutoff: int | None = None):
    """Truncated quadratic series of the weight at x (scalar or array).

    The truncation is on the series index: terms with |n| > cutoff are
    dropped; cutoff None keeps the weight's full finite support.
    """
    ns, cs = _variant_terms(w.coefficients, variant, cutoff)
    xs = np.asarray(x, dtype=np.float64)
    scalar = xs.ndim == 0
    out = _eval_quadratic_series(ns, cs, np.atleast_1d(xs))
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# functional-equation fast path
# ---------------------------------------------------------------------------

def _inv(a: int, m: int) -> int:
    # inverse mod 1 is the zero residue: e(0) = 1
    if m == 1:
        return 0
    return pow(a, -1, m)


def gauss_sum_fast_batch(w: WeightFunction, ps, q: int) -> np.ndarray:
    """Functional-equation evaluation for many p at once.

    Cost O(#coefficients + #p) after the per-p modular inverses; see
    gauss_sum_fast for the scalar contract.
    """
    if w.kind != FOURIER:
        raise IndicatorKind(
            "fast evaluation needs a finite Fourier series; "
            "convert indicators with as_fourier_series() first"
        )
    ps = np.asarray(ps, dtype=np.int64)
    for p in ps.tolist():
        if math.gcd(int(p), q) != 1:
            raise NotCoprime(f"gcd({p}, {q}) != 1")
    if q % 4 == 0:
        invs = np.array([_inv(int(p), q) for p in ps.tolist()], dtype=np.int64)
        xs = (-invs.astype(np.float64) / q) % 1.0
        g1 = np.array([gauss_sum_closed(int(p), q) for p in ps.tolist()])
        return g1 * limit_series(G_PLUS, w, xs)
    if q % 2 == 1:
        invs = np.array([_inv(4 * int(p), q) for p in ps.tolist()], dtype=np.int64)
        xs = (-invs.astype(np.float64) / q) % 1.0
        g1 = np.array([gauss_sum_closed(int(p), q) for p in ps.tolist()])
        return g1 * limit_series(G_FULL, w, xs)
    q0 = q // 2
    invs = np.array([_inv(8 * int(p), q0) for p in ps.tolist()], dtype=np.int64)
    xs = (-invs.astype(np.float64) / q0) % 1.0
    g1 = np.array([gauss_sum_closed(2 * int(p), q0) for p in ps.tolist()])
    return 2.0 * g1 * limit_series(G_MINUS, w, xs)


def gauss_sum_fast(w: WeightFunction, p: int, q: int) -> complex:
    """Incomplete sum via the functional equations, O(#coefficients).

    Equal to the direct sum for finite-series weights and coprime (p, q):
      q = 0 mod 4:  g_1(p, q)      * G_plus (-inv(p, q)   / q)
      q odd:        g_1(p, q)      * G_full (-inv(4p, q)  / q)
      q = 2 mod 4:  2 g_1(2p, q/2) * G_minus(-inv(8p, q/2)/ (q/2))
    Raw indicators are refused (IndicatorKind): the caller must opt in
    to a truncated series so the truncation error stays visible.
    """
    return complex(gauss_sum_fast_batch(w, [p], q)[0])


# ---------------------------------------------------------------------------
# value classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaClass:
    """Conditioning class of a unit residue.

    kind "quarter": value eps_p * (q/p) in {1, -1, i, -i}  (q = 0 mod 4, non-square)
    kind "mod4":    value +-1 for p = +-1 mod 4            (q = 0 mod 4, square)
    kind "half":    value (p/q) = +-1 for odd q, or (2p / (q/2)) for q = 2 mod 4
    kind "none":    no conditioning (the square cases of odd / 2 mod 4 moduli)
    """

    kind: str
    value: complex | int | None

    def label(self) -> str:
        if self.kind == "none":
            return ""
        v = complex(self.value)
        if v == 1:
            return "1"
        if v == -1:
            return "-1"
        if v == 1j:
            return "i"
        if v == -1j:
            return "-i"
        return str(self.value)


def sigma_class(p: int, q: int | arith.Modulus) -> SigmaClass:
    """Class of p per the modulus's residue type; requires gcd(p, q) = 1."""
    if isinstance(q, arith.Modulus):
        mod_q, square = q.q, q.is_square
    else:
        mod_q, square = q, arith.is_perfect_square(q)
    if math.gcd(p, mod_q) != 1:
        raise NotCoprime(f"gcd({p}, {mod_q}) != 1")
    if mod_q % 4 == 0:
        if square:
            return SigmaClass("mod4", 1 if p % 4 == 1 else -1)
        return SigmaClass("quarter", complex(arith.epsilon(p) * arith.jacobi(mod_q, p)))
    if mod_q % 2 == 1:
        if square:
            return SigmaClass("none", None)
        return SigmaClass("half", arith.jacobi(p, mod_q))
    half = mod_q // 2
    if arith.is_perfect_square(half):
        return SigmaClass("none", None)
    return SigmaClass("half", arith.jacobi(2 * p, half))


@dataclass(frozen=True)
class GaussSumValue:
    """An evaluated sum with its provenance."""

    value: complex
    p: int
    q: int
    method: str  # "direct" | "closed" | "fast"


def gauss_sum(w: WeightFunction, p: int, q: int, method: str = "direct") -> GaussSumValue:
    """Evaluate by the named method and record the provenance."""
    if method == "direct":
        v = gauss_sum_direct(w, p, q)
    elif method == "closed":
        v = gauss_sum_closed(p, q)
    elif method == "fast":
        v = gauss_sum_fast(w, p, q)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GaussSumValue(v, p, q, method)
