"""Kloosterman, twisted Kloosterman, and Salie sums.

All three run over the unit group of q with p-bar the inverse of p:

  K(m, n, q)       = sum_p              e((m p + n p-bar)/q)
  S_theta(m, n, q) = sum_p eps_p (q/p)  e((m p + n p-bar)/q)   (q = 0 mod 4)
  S(m, n, q)       = sum_p (p/q)        e((m p + n p-bar)/q)   (q odd)

Each satisfies |sum| <= gcd(m, n, q)^{1/2} q^{1/2} tau(q).  The Weyl
statistic divides a class-restricted sum by phi(q); its decay in q is
what makes the pairs (p/q, t p-bar/q) equidistribute, and the exact
class counts here are the base case of that argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import BadModulus, NotCoprime
from .gauss_sums import SigmaClass, sigma_class


@dataclass(frozen=True)
class ExpSumReport:
    """One evaluated sum next to its Weil bound."""

    kind: str  # "kloosterman" | "twisted" | "salie"
    m: int
    n: int
    q: int
    value: complex
    weil_bound: float

    @property
    def ratio(self) -> float:
        return abs(self.value) / self.weil_bound if self.weil_bound else math.inf


def _phase_values(m: int, n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """(units p, e((m p + n p-bar)/q)) with exact integer phase reduction."""
    ps, invs = arith.inverse_table(q)
    t = (m * ps + n * invs) % q
    return ps, np.exp(2j * np.pi * t / q)


def kloosterman(m: int, n: int, q: int) -> complex:
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    _, vals = _phase_values(m, n, q)
    return complex(vals.sum())


def twisted_kloosterman(m: int, n: int, q: int) -> complex:
    """Kloosterman sum twisted by eps_p (q/p); defined for q = 0 mod 4."""
    if q % 4 != 0:
        raise BadModulus(f"twisted sum needs q = 0 mod 4, got {q}")
    ps, vals = _phase_values(m, n, q)
    twist = np.array([arith.epsilon(int(p)) * arith.jacobi(q, int(p)) for p in ps.tolist()])
    return complex((twist * vals).sum())


def salie(m: int, n: int, q: int) -> complex:
    """Kloosterman sum twisted by (p/q); defined for odd q."""
    if q % 2 == 0:
        raise BadModulus(f"Salie sum needs odd q, got {q}")
    ps, vals = _phase_values(m, n, q)
    twist = np.array([arith.jacobi(int(p), q) for p in ps.tolist()], dtype=np.float64)
    return complex((twist * vals).sum())


def weil_bound(m: int, n: int, q: int, tau: int | None = None) -> float:
    """gcd(m, n, q)^{1/2} q^{1/2} tau(q)."""
    if tau is None:
        tau = arith.analyze_modulus(q).tau
    g = math.gcd(math.gcd(m, n), q)
    return math.sqrt(g) * math.sqrt(q) * tau


def expsum_report(kind: str, m: int, n: int, q: int) -> ExpSumReport:
    """Evaluate the named sum and attach its bound."""
    if kind == "kloosterman":
        value = kloosterman(m, n, q)
    elif kind == "twisted":
        value = twisted_kloosterman(m, n, q)
    elif kind == "salie":
        value = salie(m, n, q)
    else:
        raise ValueError(f"unknown sum kind {kind!r}")
    return ExpSumReport(kind, m, n, q, value, weil_bound(m, n, q))


def weil_check(report: ExpSumReport, slack: float = 1e-6) -> bool:
    """True iff the value respects its Weil bound up to float slack."""
    return abs(report.value) <= report.weil_bound + slack


def weyl_statistic(q: int | arith.Modulus, t: int | arith.UnitResidue,
                   m: int, n: int, class_filter: SigmaClass | None = None) -> complex:
    """(1/phi(q)) sum over p (optionally one sigma-class) of e((m p + n t p-bar)/q).

    Must decay as q grows for (m, n) != (0, 0); the Weil bounds give the
    rate.  The normalization is by the full phi(q) even when a class
    filter keeps only a quarter or half of the units.
    """
    mod = q if isinstance(q, arith.Modulus) else arith.analyze_modulus(q)
    t_val = t.p if isinstance(t, arith.UnitResidue) else int(t)
    if (m, n) == (0, 0):
        raise ValueError("(m, n) = (0, 0) is the trivial statistic")
    if math.gcd(t_val, mod.q) != 1:
        raise NotCoprime(f"gcd({t_val}, {mod.q}) != 1")
    ps, invs = arith.inverse_table(mod.q)
    phases = (m * ps + n * ((t_val * invs) % mod.q)) % mod.q
    vals = np.exp(2j * np.pi * phases / mod.q)
    if class_filter is not None:
        mask = np.array([sigma_class(int(p), mod) == class_filter for p in ps.tolist()])
        vals = vals[mask]
    return complex(vals.sum() / mod.phi)


def class_counts(q: int | arith.Modulus, by_mod4: bool = False) -> dict:
    """Exact sizes of the sigma-classes of the unit group.

    Default keying follows sigma_class (quarter values for non-square
    q = 0 mod 4, half values otherwise, None when unclassified).  With
    by_mod4=True the units of q = 0 mod 4 are counted by p mod 4
    instead (+1 for p = 1, -1 for p = 3), which is exact for squares
    and non-squares alike.
    """
    mod = q if isinstance(q, arith.Modulus) else arith.analyze_modulus(q)
    counts: dict = {}
    if by_mod4:
        if mod.q_mod4 != 0:
            raise BadModulus(f"mod-4 classes need q = 0 mod 4, got {mod.q}")
        for p in arith.units(mod.q).tolist():
            key = 1 if p % 4 == 1 else -1
            counts[key] = counts.get(key, 0) + 1
        return counts
    for p in arith.units(mod.q).tolist():
        key = sigma_class(p, mod).value
        counts[key] = counts.get(key, 0) + 1
    return counts
