"""Closed-form Bregman proximal maps.

Each map returns the exact minimizer of

    g(x) + <x, v> + (1/eta) D_H(x, y)

for one supported (g, H) pair; v is the gradient of the smooth term at the
linearization point, supplied by the caller so these maps stay independent
of any particular smooth function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation, DomainError
from .functions import Vector

GeneratorKind = str  # "quadratic" | "entropy"


def soft_threshold(v: Vector, y: Vector, eta: float) -> Vector:
    """Minimizer of ||x||_1 + <x, v> + 1/(2 eta) ||x - y||^2.

    Componentwise shrink of y - eta v by eta.
    """
    if eta <= 0:
        raise ContractViolation("eta must be positive")
    z = np.asarray(y, dtype=float) - eta * np.asarray(v, dtype=float)
    return np.sign(z) * np.maximum(np.abs(z) - eta, 0.0)


def simplex_projection(z: Vector) -> Vector:
    """Euclidean projection onto {x : sum x_i = 1, x >= 0} by sort-and-threshold."""
    z = np.asarray(z, dtype=float)
    u = np.sort(z)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, z.size + 1)
    rho = ks[u - css / ks > 0][-1]
    tau = css[rho - 1] / rho
    return np.maximum(z - tau, 0.0)


def project_simplex(v: Vector, y: Vector, eta: float) -> Vector:
    """Minimizer over the simplex of <x, v> + 1/(2 eta) ||x - y||^2."""
    if eta <= 0:
        raise ContractViolation("eta must be positive")
    return simplex_projection(np.asarray(y, dtype=float)
                              - eta * np.asarray(v, dtype=float))


def entropic_update(v: Vector, y: Vector, eta: float) -> Vector:
    """Mirror step on the simplex: x_i = y_i exp(-eta v_i) / normalization.

    Exponents are shifted by their maximum before exponentiating so that
    large steps (eta far above 1/L during line search) cannot overflow.
    """
    if eta <= 0:
        raise ContractViolation("eta must be positive")
    y = np.asarray(y, dtype=float)
    if np.min(y) <= 0.0:
        raise DomainError("mirror step undefined for nonpositive components")
    expo = -eta * np.asarray(v, dtype=float)
    w = y * np.exp(expo - np.max(expo))
    return w / np.sum(w)


def gradient_step(v: Vector, y: Vector, eta: float) -> Vector:
    """Minimizer of <x, v> + 1/(2 eta) ||x - y||^2 (g identically zero)."""
    if eta <= 0:
        raise ContractViolation("eta must be positive")
    return np.asarray(y, dtype=float) - eta * np.asarray(v, dtype=float)


@dataclass(frozen=True, eq=False)
class ProxMap:
    """Closed-form inner solver for one (g, H) pair."""

    g_kind: str  # "l1" | "simplex" | "zero"
    H_kind: GeneratorKind
    solve: Callable[[Vector, Vector, float], Vector]


_REGISTRY = {
    ("l1", "quadratic"): soft_threshold,
    ("simplex", "quadratic"): project_simplex,
    ("simplex", "entropy"): entropic_update,
    ("zero", "quadratic"): gradient_step,
}


def make_prox_map(g_kind: str, H_kind: GeneratorKind) -> ProxMap:
    """Look up the closed form for (g_kind, H_kind); fails fast if absent."""
    try:
        solve = _REGISTRY[(g_kind, H_kind)]
    except KeyError:
        raise ContractViolation(
            f"no closed-form prox registered for g={g_kind!r}, H={H_kind!r}"
        ) from None
    return ProxMap(g_kind=g_kind, H_kind=H_kind, solve=solve)


def _g_value(g_kind: str, x: Vector) -> float:
    if g_kind == "l1":
        return float(np.sum(np.abs(x)))
    if g_kind == "zero":
        return 0.0
    # simplex indicator: feasibility is enforced by the sampler/solver
    if abs(np.sum(x) - 1.0) <= 1e-9 and np.min(x) >= -1e-12:
        return 0.0
    return np.inf


def _dist_H(H_kind: GeneratorKind, x: Vector, y: Vector) -> float:
    if H_kind == "quadratic":
        return 0.5 * float(np.sum((x - y) ** 2))
    xp = x[x > 0.0]
    yp = y[x > 0.0]
    return float(np.sum(xp * np.log(xp / yp)) - np.sum(x) + np.sum(y))


def prox_objective(pm: ProxMap, x: Vector, v: Vector, y: Vector,
                   eta: float) -> float:
    """g(x) + <x, v> + (1/eta) D_H(x, y) for the map's (g, H) pair."""
    x = np.asarray(x, dtype=float)
    return (
        _g_value(pm.g_kind, x)
        + float(np.dot(x, v))
        + _dist_H(pm.H_kind, x, np.asarray(y, dtype=float)) / eta
    )


def _sample_feasible(pm: ProxMap, x_plus: Vector, rng) -> Vector:
    n = x_plus.size
    if pm.g_kind == "simplex":
        z = rng.dirichlet(np.ones(n))
        if pm.H_kind == "entropy":
            z = np.maximum(z, 1e-12)
            z /= np.sum(z)
        return z
    scale = 1.0 + np.linalg.norm(x_plus)
    return x_plus + scale * 10.0 ** rng.uniform(-6, 0) * rng.standard_normal(n)


def verify_prox_optimality(pm: ProxMap, v: Vector, y: Vector, eta: float,
                           trials: int = 1000, seed: int = 0) -> float:
    """Worst objective excess of the prox output over random feasible points.

    Nonpositive (up to rounding) iff the output is a global minimizer.
    """
    if trials < 100:
        raise ContractViolation("trials must be >= 100")
    rng = np.random.Generator(np.random.Philox(seed))
    x_plus = pm.solve(v, y, eta)
    base = prox_objective(pm, x_plus, v, y, eta)
    worst = -np.inf
    for _ in range(trials):
        z = _sample_feasible(pm, x_plus, rng)
        worst = max(worst, base - prox_objective(pm, z, v, y, eta))
    return worst
