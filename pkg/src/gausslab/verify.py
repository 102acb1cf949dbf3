"""Batch verification suites.

Each suite re-checks one family of identities over an exhaustive desk-
scale range and reports every violation with the offending tuple.  The
CLI `verify` command wraps these; the acceptance tests call them
directly.  All suites are deterministic (fixed seeds).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .expsums import class_counts, expsum_report, weil_check
from .gauss_sums import (
    DirectEvaluator,
    gauss_sum_closed,
    gauss_sum_direct,
    gauss_sum_fast_batch,
    reduce_noncoprime,
)
from .weights import constant_weight, fourier_weight

SUITES = ("closed_form", "functional_eq", "weil", "class_counts", "reduction")


@dataclass
class SuiteResult:
    name: str
    checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.name}: {self.checked} checks, {len(self.failures)} violations"


def closed_form_suite(q_max: int = 512, tol: float = 1e-6) -> SuiteResult:
    """Direct O(q) summation against the closed form, weight 1, all units."""
    one = constant_weight()
    res = SuiteResult("closed_form", 0)
    for q in range(1, q_max + 1):
        ev = DirectEvaluator(one, q)
        scale = tol * math.sqrt(q)
        for p in arith.units(q).tolist():
            res.checked += 1
            gap = abs(ev(p) - gauss_sum_closed(p, q))
            if gap >= scale:
                res.failures.append(f"p={p} q={q} |direct-closed|={gap:.3e}")
    return res


def functional_eq_suite(q_max: int = 400, n_weights: int = 50, n_p: int = 5,
                        support: int = 8, tol: float = 1e-6,
                        seed: int = 20260809) -> SuiteResult:
    """Fast functional-equation path against direct summation.

    Random finite-series weights with the given support, every modulus
    up to q_max (all three classes mod 4), a few random units each.
    """
    rng = np.random.default_rng(seed)
    res = SuiteResult("functional_eq", 0)
    for _ in range(n_weights):
        coeffs = {int(k): complex(rng.normal(), rng.normal())
                  for k in range(-support, support + 1)}
        w = fourier_weight(coeffs)
        for q in range(3, q_max + 1):
            ps = arith.units(q)
            if len(ps) > n_p:
                ps = rng.choice(ps, n_p, replace=False)
            ps = np.sort(np.asarray(ps, dtype=np.int64))
            ev = DirectEvaluator(w, q)
            fasts = gauss_sum_fast_batch(w, ps, q)
            scale = tol * math.sqrt(q)
            for p, fval in zip(ps.tolist(), fasts.tolist()):
                res.checked += 1
                gap = abs(ev(int(p)) - fval)
                if gap >= scale:
                    res.failures.append(f"p={p} q={q} |fast-direct|={gap:.3e}")
    return res


def weil_suite(q_max: int = 1000, mn_max: int = 4) -> SuiteResult:
    """Weil bound for all three sum kinds over a full (q, m, n) sweep."""
    res = SuiteResult("weil", 0)
    mns = [(m, n) for m in range(mn_max + 1) for n in range(mn_max + 1)]
    for q in range(1, q_max + 1):
        kinds = ["kloosterman"]
        if q % 4 == 0:
            kinds.append("twisted")
        if q % 2 == 1:
            kinds.append("salie")
        for kind in kinds:
            for m, n in mns:
                res.checked += 1
                report = expsum_report(kind, m, n, q)
                if not weil_check(report):
                    res.failures.append(
                        f"{kind} m={m} n={n} q={q} "
                        f"|value|={abs(report.value):.6f} bound={report.weil_bound:.6f}"
                    )
    return res


def class_count_suite(q_max: int = 2000) -> SuiteResult:
    """Exact integer class-size identities over every applicable modulus.

    Quarter classes (q = 0 mod 4, non-square) each hold phi(q)/4 units;
    the two p mod 4 classes (any q = 0 mod 4) and the half classes of
    odd non-squares each hold phi(q)/2.
    """
    res = SuiteResult("class_counts", 0)
    for q in range(3, q_max + 1):
        mod = arith.analyze_modulus(q)
        if mod.q_mod4 == 0:
            res.checked += 1
            counts = class_counts(mod, by_mod4=True)
            if sorted(counts.values()) != [mod.phi // 2] * 2:
                res.failures.append(f"q={q} mod4 counts {counts}")
            if not mod.is_square:
                res.checked += 1
                counts = class_counts(mod)
                if len(counts) != 4 or set(counts.values()) != {mod.phi // 4}:
                    res.failures.append(f"q={q} quarter counts {counts}")
        elif mod.q_mod4 % 2 == 1 and not mod.is_square:
            res.checked += 1
            counts = class_counts(mod)
            if len(counts) != 2 or set(counts.values()) != {mod.phi // 2}:
                res.failures.append(f"q={q} half counts {counts}")
    return res


def reduction_suite(q_max: int = 200, tol: float = 1e-8,
                    seed: int = 20260810) -> SuiteResult:
    """Non-coprime reduction identity checked by direct summation twice."""
    rng = np.random.default_rng(seed)
    coeffs = {int(k): complex(rng.normal(), rng.normal()) for k in range(-6, 7)}
    w = fourier_weight(coeffs)
    res = SuiteResult("reduction", 0)
    for q in range(2, q_max + 1):
        ev = DirectEvaluator(w, q)
        for p in range(1, q + 1):
            if math.gcd(p, q) == 1:
                continue
            res.checked += 1
            w2, p2, q2 = reduce_noncoprime(w, p, q)
            gap = abs(ev(p) - gauss_sum_direct(w2, p2, q2))
            if gap >= tol * q:
                res.failures.append(f"p={p} q={q} gap={gap:.3e}")
    return res


def run_suite(name: str, **overrides) -> SuiteResult:
    if name == "closed_form":
        return closed_form_suite(**overrides)
    if name == "functional_eq":
        return functional_eq_suite(**overrides)
    if name == "weil":
        return weil_suite(**overrides)
    if name == "class_counts":
        return class_count_suite(**overrides)
    if name == "reduction":
        return reduction_suite(**overrides)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
