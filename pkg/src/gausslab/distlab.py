"""Empirical value distributions of normalized incomplete Gauss sums.

The finite side enumerates every admissible p deterministically (the
empirical law over the whole unit group is the sampling distribution;
no Monte Carlo is needed there) and normalizes case by case:

  q = 0 mod 4:              g(w,p,q) / g_1(p,q)
  q odd,  non-square:       g(w,p,q) / g_1(p,q)
  q odd,  square:           g(w,p,q) / (eps_q sqrt(q))
  q = 2 mod 4, q/2 non-sq:  g(w,p,q) / (2 g_1(2p, q/2))
  q = 2 mod 4, q/2 square:  g(w,p,q) / (eps_{q/2} sqrt(2q))

The limit side samples the matching quadratic series at uniform random
points.  Histograms, moments, and the two-sample KS distance quantify
the agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .errors import EmptyInput
from .gauss_sums import (
    DirectEvaluator,
    SigmaClass,
    _eval_quadratic_series,
    _variant_terms,
    gauss_sum_closed,
    gauss_sum_fast_batch,
    sigma_class,
    variant_for_modulus,
)
from .weights import WeightFunction, as_fourier_series

_CHUNK = 1 << 16


@dataclass(frozen=True)
class DomainWindow:
    """A finite union of disjoint subintervals of [0, 1).

    Membership of a rational p/q is decided exactly through Fraction
    comparison against the (binary float) endpoints.
    """

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        last = 0.0
        for a, b in self.intervals:
            if not (0.0 <= a < b <= 1.0):
                raise ValueError(f"bad subinterval [{a}, {b})")
            if a < last:
                raise ValueError("subintervals must be sorted and disjoint")
            last = b

    @classmethod
    def full(cls) -> "DomainWindow":
        return cls(((0.0, 1.0),))

    @classmethod
    def interval(cls, a: float, b: float) -> "DomainWindow":
        return cls(((float(a), float(b)),))

    @property
    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)

    @property
    def is_full(self) -> bool:
        return self.intervals == ((0.0, 1.0),)

    def contains_rational(self, p: int, q: int) -> bool:
        x = Fraction(p, q) % 1
        for a, b in self.intervals:
            if Fraction(a) <= x < Fraction(b):
                return True
        return False


@dataclass
class EmpiricalBatch:
    """Normalized values over the admissible units of one modulus."""

    modulus: arith.Modulus
    weight: WeightFunction
    samples: list[tuple[int, SigmaClass, complex]]
    normalization: str
    grid_mass: float  # sum of weight values on the grid h/q; counts the kept terms for indicators

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, _, v in self.samples], dtype=np.complex128)

    @property
    def residues(self) -> np.ndarray:
        return np.array([p for p, _, _ in self.samples], dtype=np.int64)


def _admissible_units(q: int, window: DomainWindow | None) -> np.ndarray:
    ps = arith.units(q)
    if window is None or window.is_full:
        return ps
    keep = [p for p in ps.tolist() if window.contains_rational(p, q)]
    return np.array(keep, dtype=np.int64)


def empirical_batch(q: int, w: WeightFunction, window: DomainWindow | None = None,
                    fast: bool = False) -> EmpiricalBatch:
    """One normalized sample per admissible p, sorted by p.

    fast=True routes the numerator through the functional equations and
    requires a finite-series weight; the default direct route is exact
    for indicators too.
    """
    if q < 3:
        raise ValueError(f"modulus must be >= 3, got {q}")
    mod = arith.analyze_modulus(q)
    ps = _admissible_units(q, window)
    direct = DirectEvaluator(w, q)
    if fast:
        numerators = gauss_sum_fast_batch(w, ps, q)
    else:
        numerators = np.array([direct(int(p)) for p in ps.tolist()])

    if mod.q_mod4 == 0:
        denoms = np.array([gauss_sum_closed(int(p), q) for p in ps.tolist()])
        label = "g_phi(p,q)/g_1(p,q)"
    elif mod.q_mod4 % 2 == 1:
        if mod.is_square:
            denoms = np.full(ps.shape, arith.epsilon(q) * math.sqrt(q))
            label = "g_phi(p,q)/(eps_q sqrt(q))"
        else:
            denoms = np.array([gauss_sum_closed(int(p), q) for p in ps.tolist()])
            label = "g_phi(p,q)/g_1(p,q)"
    else:
        q0 = q // 2
        if arith.is_perfect_square(q0):
            denoms = np.full(ps.shape, arith.epsilon(q0) * math.sqrt(2 * q))
            label = "g_phi(p,q)/(eps_{q/2} sqrt(2q))"
        else:
            denoms = np.array([2.0 * gauss_sum_closed(2 * int(p), q0) for p in ps.tolist()])
            label = "g_phi(p,q)/(2 g_1(2p,q/2))"

    values = numerators / denoms
    samples = [(int(p), sigma_class(int(p), mod), complex(v))
               for p, v in zip(ps.tolist(), values.tolist())]
    return EmpiricalBatch(mod, w, samples, label, float(direct.grid_mass.real))


def sample_limit_law(variant: str, w: WeightFunction, cutoff: int | None,
                     n_samples: int, seed: int) -> np.ndarray:
    """Series values at n_samples uniform points, deterministic in seed."""
    if n_samples < 1:
        raise ValueError(f"need at least one sample, got {n_samples}")
    rng = np.random.default_rng(seed)
    xs = rng.random(n_samples)
    ns, cs = _variant_terms(w.coefficients, variant, cutoff)
    out = np.empty(n_samples, dtype=np.complex128)
    for lo in range(0, n_samples, _CHUNK):
        hi = min(lo + _CHUNK, n_samples)
        out[lo:hi] = _eval_quadratic_series(ns, cs, xs[lo:hi])
    return out


def _next_prime(n: int) -> int:
    n = max(n, 2)
    while True:
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            return n
        n += 1


def limit_moment(variant: str, w: WeightFunction, k: float,
                 grid_size: int | None = None) -> float:
    """k-th absolute moment of the series by periodic rectangle rule.

    The default grid is a prime exceeding twice the largest series
    index, which makes the k = 2 case alias-free: quadratic frequencies
    n^2 - m^2 = (n-m)(n+m) cannot vanish mod such a prime unless n = m.
    """
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    ns, cs = _variant_terms(w.coefficients, variant, None)
    n_max = int(ns.max(initial=0))
    if grid_size is None:
        grid_size = _next_prime(max(65537, 2 * n_max + 1))
    if grid_size < 2:
        raise ValueError(f"grid size must be >= 2, got {grid_size}")
    total = 0.0
    xs = np.arange(grid_size, dtype=np.float64) / grid_size
    for lo in range(0, grid_size, _CHUNK):
        vals = _eval_quadratic_series(ns, cs, xs[lo:lo + _CHUNK])
        total += float(np.sum(np.abs(vals) ** k))
    return total / grid_size


def mean_square_from_coefficients(variant: str, w: WeightFunction) -> float:
    """Closed form for the k = 2 moment: |c_0|^2 + sum_{n>=1} |c_n + c_{-n}|^2.

    Coefficient algebra only (orthogonality of e(n^2 x) across distinct
    n^2); independent of the quadrature path in limit_moment.
    """
    _, cs = _variant_terms(w.coefficients, variant, None)
    return float(np.sum(np.abs(cs) ** 2))


@dataclass(frozen=True)
class MomentReport:
    k: float
    empirical: float
    limit: float
    relative_gap: float


def empirical_moment(q: int, w: WeightFunction, window: DomainWindow | None = None,
                     k: float = 2.0, fast: bool = False) -> MomentReport:
    """Normalized empirical k-th moment next to its limit value.

    The empirical side is (1/(phi(q)|D|)) sum |g(w,p,q)|^k over the
    admissible units, divided by (2q)^{k/2} for even q and q^{k/2} for
    odd q.  The limit side integrates the matching series variant; for
    indicator weights that series is the stored truncated one.
    """
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    mod = arith.analyze_modulus(q)
    window = window or DomainWindow.full()
    ps = _admissible_units(q, window)
    if fast:
        sums = gauss_sum_fast_batch(w, ps, q)
    else:
        direct = DirectEvaluator(w, q)
        sums = np.array([direct(int(p)) for p in ps.tolist()])
    raw = float(np.sum(np.abs(sums) ** k)) / (mod.phi * window.measure)
    normalizer = (2 * q) ** (k / 2) if q % 2 == 0 else q ** (k / 2)
    empirical = raw / normalizer
    variant = variant_for_modulus(q)
    limit = limit_moment(variant, as_fourier_series(w), k)
    gap = abs(empirical - limit) / max(limit, 1e-12)
    return MomentReport(k, empirical, limit, gap)


@dataclass
class Histogram:
    """Binned counts with a density normalized to unit mass in range.

    Out-of-range values land in the below/above overflow counters, never
    silently dropped; total counts the in-range values only.
    """

    bin_edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray
    total: int
    below: int
    above: int


def histogram(values, bins: int = 40, value_range: tuple[float, float] | None = None) -> Histogram:
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("cannot bin an empty sample set")
    if bins < 1:
        raise ValueError(f"need at least one bin, got {bins}")
    if value_range is None:
        value_range = (float(arr.min()), float(arr.max()))
    lo, hi = value_range
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    # edge i is the rounding of lo + (hi-lo)*i/bins, so a data value that
    # is the rounding of the same rational lands in the half-open bin to
    # its right; the top edge is closed
    edges = lo + (hi - lo) * np.arange(bins + 1, dtype=np.float64) / bins
    edges[-1] = hi
    below = int(np.count_nonzero(arr < lo))
    above = int(np.count_nonzero(arr > hi))
    in_range = arr[(arr >= lo) & (arr <= hi)]
    idx = np.clip(np.searchsorted(edges, in_range, side="right") - 1, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins)
    total = int(counts.sum())
    widths = np.diff(edges)
    density = counts / (total * widths) if total else np.zeros(bins)
    return Histogram(edges, counts, density, total, below, above)


def ks_distance(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise EmptyInput("cannot compare empty sample sets")
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


def discrete_factor_counts(q: int) -> dict[complex, Fraction]:
    """Exact frequencies of the normalized complete sum over the units.

    q = 0 mod 4: g_1(p,q)/sqrt(q) = (1+i) eps_p^{-1} (q/p), values
    among +-1 +- i.  q odd: g_1(p,q)/(eps_q sqrt(q)) = (p/q).  Even
    q = 2 mod 4 uses the halved modulus, g_1(2p, q/2)/(eps_{q/2}
    sqrt(q/2)) = (2p / (q/2)).  All values are computed exactly from
    integer data, so the returned frequencies are exact fractions.
    """
    mod = arith.analyze_modulus(q)
    counts: dict[complex, int] = {}
    for p in arith.units(q).tolist():
        if mod.q_mod4 == 0:
            val = (1 + 1j) * arith.epsilon(p).conjugate() * arith.jacobi(q, p)
        elif mod.q_mod4 % 2 == 1:
            val = complex(arith.jacobi(p, q))
        else:
            val = complex(arith.jacobi(2 * p, q // 2))
        counts[val] = counts.get(val, 0) + 1
    return {v: Fraction(c, mod.phi) for v, c in counts.items()}
