"""Closed-form security quantities and a parameter planner.

Entropy formulas use logarithms base 2; the concentration bound keeps its
natural exponential form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .scheme import SchemeParams

__all__ = [
    "binary_entropy",
    "epsilon_nu",
    "serfling_bound",
    "g_nu",
    "eta",
    "eta_details",
    "robustness_bound",
    "plan_params",
    "InfeasiblePlanError",
]

NU_GRID_STEP = 1e-3


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("binary entropy argument must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def _check_split(s: int, k: int, m: int):
    if m != s + k:
        raise ValueError("m must equal s + k")
    if s < 1 or k < 1:
        raise ValueError("s and k must be positive")


def epsilon_nu(s: int, k: int, m: int, nu: float) -> float:
    """Smoothing parameter of the subset-sampling concentration bound."""
    _check_split(s, k, m)
    return math.exp(-s * k * k * nu * nu / (m * (k + 1)))


def serfling_bound(s: int, k: int, m: int, nu: float) -> float:
    """Probability bound for the two-sided sampling event; equals
    epsilon_nu squared."""
    _check_split(s, k, m)
    return math.exp(-2.0 * nu * nu * s * k * k / (m * (k + 1)))


def g_nu(s: int, n: int, delta: float, nu: float) -> float:
    return s * (1.0 - binary_entropy(delta + nu)) - n


def eta(s: int, k: int, m: int, n: int, delta: float, nu: float) -> float:
    """Distinguishing-advantage bound for the deletion game at the given
    smoothing offset nu."""
    _check_split(s, k, m)
    if not 0.0 < nu <= 0.5 - delta:
        raise ValueError("nu must lie in (0, 1/2 - delta]")
    g = g_nu(s, n, delta, nu)
    return 2.0 * (0.5 * math.sqrt(2.0 ** -g) + 2.0 * epsilon_nu(s, k, m, nu))


def eta_details(s: int, k: int, m: int, n: int, delta: float, nu: float) -> dict:
    return {
        "eta": eta(s, k, m, n, delta, nu),
        "g": g_nu(s, n, delta, nu),
        "epsilon": epsilon_nu(s, k, m, nu),
        "nu": nu,
    }


def robustness_bound(tau: int) -> float:
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return 2.0 ** -tau


def best_eta(s: int, k: int, n: int, delta: float,
             step: float = NU_GRID_STEP) -> tuple[float, float]:
    """Minimize eta over the nu grid; returns (eta, nu)."""
    m = s + k
    best = (math.inf, step)
    nu = step
    while nu <= 0.5 - delta + 1e-12:
        val = eta(s, k, m, n, delta, min(nu, 0.5 - delta))
        if val < best[0]:
            best = (val, min(nu, 0.5 - delta))
        nu += step
    return best


class InfeasiblePlanError(ValueError):
    """No parameter set within the search range meets the target."""


@dataclass(frozen=True)
class Plan:
    params: SchemeParams
    eta: float
    nu: float


_K_GRID = [1 << i for i in range(6, 21)]
_S_MAX = 1 << 21


def _feasible(s: int, n: int, delta: float, target_eta: float):
    """Best (eta, nu, k) at a given s, or None."""
    best = None
    for k in _K_GRID:
        val, nu = best_eta(s, k, n, delta)
        if best is None or val < best[0]:
            best = (val, nu, k)
        if val <= target_eta:
            return (val, nu, k)
    return best if best and best[0] <= target_eta else None


def plan_params(n: int, delta: float, target_eta: float,
                code_block: int = 8, code_syn: int = 4) -> Plan:
    """Smallest s (multiple of code_block) and grid-searched k meeting the
    target advantage; tau is picked so the robustness bound also meets it."""
    if not 0.0 < target_eta < 1.0:
        raise InfeasiblePlanError("target advantage must lie in (0, 1)")
    if not 0.0 <= delta < 0.5:
        raise InfeasiblePlanError("delta must lie in [0, 1/2)")
    lo, hi = code_block, _S_MAX
    if _feasible(hi, n, delta, target_eta) is None:
        raise InfeasiblePlanError("target advantage unreachable within search range")
    # eta is monotone nonincreasing in s at fixed (k, nu): bisect smallest s.
    while lo < hi:
        mid = (lo + hi) // 2
        mid -= mid % code_block
        mid = max(mid, code_block)
        if _feasible(mid, n, delta, target_eta) is not None:
            hi = mid
        else:
            lo = mid + code_block
            lo -= lo % code_block
    s = hi
    val, nu, k = _feasible(s, n, delta, target_eta)
    tau = max(1, math.ceil(-math.log2(target_eta)))
    mu = s // code_block * code_syn
    params = SchemeParams(n=n, m=s + k, s=s, k=k, tau=tau, mu=mu, delta=delta)
    return Plan(params=params, eta=val, nu=nu)
