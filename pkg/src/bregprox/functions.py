"""Convex function oracles, composite problems, and linear-algebra helpers.

Smooth terms are plain (value, gradient) oracle pairs with an optional
Lipschitz constant of the gradient.  Nonsmooth terms may return ``+inf``,
which is an in-band value (indicator functions), never an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ContractViolation, DegenerateInput, NumericalFailure

Vector = np.ndarray

SIMPLEX_SUM_TOL = 1e-9
SIMPLEX_MEMBER_MIN = -1e-12
SIMPLEX_INTERIOR_MIN = 1e-300


@dataclass(frozen=True, eq=False)
class DomainDescriptor:
    """Feasible set: all of R^n, the probability simplex, or the nonnegative orthant."""

    kind: str  # "rn" | "simplex" | "nonneg"
    ambient_dimension: int

    def __post_init__(self):
        if self.kind not in ("rn", "simplex", "nonneg"):
            raise ContractViolation(f"unknown domain kind {self.kind!r}")
        if self.ambient_dimension < 1:
            raise ContractViolation("ambient_dimension must be positive")

    def member(self, x: Vector) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.ambient_dimension,):
            return False
        if self.kind == "rn":
            return True
        if self.kind == "nonneg":
            return bool(np.min(x) >= SIMPLEX_MEMBER_MIN)
        return bool(
            np.min(x) >= SIMPLEX_MEMBER_MIN
            and abs(np.sum(x) - 1.0) <= SIMPLEX_SUM_TOL
        )

    def interior(self, x: Vector) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.ambient_dimension,):
            return False
        if self.kind == "rn":
            return True
        if self.kind == "nonneg":
            return bool(np.min(x) > 0.0)
        return bool(
            np.min(x) >= SIMPLEX_INTERIOR_MIN
            and abs(np.sum(x) - 1.0) <= SIMPLEX_SUM_TOL
        )

    def bounded(self) -> bool:
        return self.kind == "simplex"


def euclidean_space(n: int) -> DomainDescriptor:
    return DomainDescriptor("rn", n)


def probability_simplex(n: int) -> DomainDescriptor:
    return DomainDescriptor("simplex", n)


@dataclass(frozen=True, eq=False)
class SmoothFunction:
    """Differentiable convex function given by value and gradient oracles.

    ``lipschitz_grad`` is the Lipschitz constant L of the gradient (the
    paper-side step-size hypothesis reads eta <= 1/L).  ``None`` means
    unknown.
    """

    value: Callable[[Vector], float]
    grad: Callable[[Vector], Vector]
    dimension: int
    lipschitz_grad: Optional[float] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be positive")
        if self.lipschitz_grad is not None and self.lipschitz_grad < 0:
            raise ContractViolation("lipschitz_grad must be nonnegative")


@dataclass(frozen=True, eq=False)
class LeastSquaresFunction(SmoothFunction):
    """f(x) = 1/2 ||A x - b||^2 with A, b kept explicit so that the exact
    gradient-Lipschitz constant lambda_max(A^T A) is computable."""

    A: np.ndarray = None
    b: np.ndarray = None


@dataclass(frozen=True, eq=False)
class NonsmoothTerm:
    """Proper closed convex term; the value oracle may return +inf."""

    value: Callable[[Vector], float]
    kind: str  # "l1" | "simplex" | "zero"

    def __post_init__(self):
        if self.kind not in ("l1", "simplex", "zero"):
            raise ContractViolation(f"unknown nonsmooth kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class CompositeProblem:
    """Composite objective F = f + g over a feasible domain.

    ``optimum_oracle`` is an optional (x_star, F_star) reference pair, used
    only by certificate checks.
    """

    f: SmoothFunction
    g: NonsmoothTerm
    domain: DomainDescriptor
    optimum_oracle: Optional[Tuple[Vector, float]] = None
    problem_id: str = ""

    def __post_init__(self):
        if self.f.dimension != self.domain.ambient_dimension:
            raise ContractViolation(
                "smooth term dimension does not match the domain"
            )


def zero_function(n: int) -> SmoothFunction:
    return SmoothFunction(
        value=lambda x: 0.0,
        grad=lambda x: np.zeros(n),
        dimension=n,
        lipschitz_grad=0.0,
    )


def least_squares(A: np.ndarray, b: np.ndarray,
                  lipschitz: Optional[float] = None) -> LeastSquaresFunction:
    """f(x) = 1/2 ||A x - b||^2 with exact gradient A^T (A x - b)."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2 or b.shape != (A.shape[0],):
        raise ContractViolation("A must be 2-D with b matching its row count")
    return LeastSquaresFunction(
        value=lambda x: 0.5 * float(np.sum((A @ x - b) ** 2)),
        grad=lambda x: A.T @ (A @ x - b),
        dimension=A.shape[1],
        lipschitz_grad=lipschitz,
        A=A,
        b=b,
    )


def shifted_quadratic(b: np.ndarray, gamma: float) -> SmoothFunction:
    """f(x) = 1/(2 gamma) ||x - b||^2; gradient Lipschitz constant is 1/gamma."""
    b = np.asarray(b, dtype=float)
    if gamma <= 0:
        raise ContractViolation("gamma must be positive")
    return SmoothFunction(
        value=lambda x: 0.5 / gamma * float(np.sum((x - b) ** 2)),
        grad=lambda x: (x - b) / gamma,
        dimension=b.size,
        lipschitz_grad=1.0 / gamma,
    )


def l1_norm() -> NonsmoothTerm:
    return NonsmoothTerm(value=lambda x: float(np.sum(np.abs(x))), kind="l1")


def simplex_indicator(n: int) -> NonsmoothTerm:
    dom = probability_simplex(n)

    def value(x):
        return 0.0 if dom.member(x) else np.inf

    return NonsmoothTerm(value=value, kind="simplex")


def zero_term() -> NonsmoothTerm:
    return NonsmoothTerm(value=lambda x: 0.0, kind="zero")


def evaluate_composite(p: CompositeProblem, x: Vector) -> float:
    """F(x) = f(x) + g(x); +inf when g(x) = +inf."""
    x = np.asarray(x, dtype=float)
    if x.shape != (p.f.dimension,):
        raise ContractViolation(
            f"point has shape {x.shape}, expected ({p.f.dimension},)"
        )
    gx = p.g.value(x)
    if gx == np.inf:
        return np.inf
    return float(p.f.value(x)) + float(gx)


def check_gradient(f: SmoothFunction, x: Vector, h: float = 1e-6) -> float:
    """Max relative mismatch between the gradient oracle and central differences."""
    if h <= 0:
        raise ContractViolation("finite-difference step must be positive")
    x = np.asarray(x, dtype=float)
    g = np.asarray(f.grad(x), dtype=float)
    if not np.all(np.isfinite(g)):
        raise NumericalFailure("gradient oracle returned non-finite values")
    worst = 0.0
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fd = (f.value(x + e) - f.value(x - e)) / (2.0 * h)
        if not np.isfinite(fd):
            raise NumericalFailure("finite difference produced non-finite value")
        worst = max(worst, abs(fd - g[i]) / (1.0 + abs(g[i])))
    return worst


def estimate_spectral_norm(A: np.ndarray, iterations: int = 1000,
                           seed: int = 0) -> float:
    """Power-iteration estimate of lambda_max(A^T A).

    Deterministic seeded start vector; stops when successive Rayleigh
    quotients agree to 1e-10 relative, else at the iteration cap.
    """
    A = np.asarray(A, dtype=float)
    if iterations < 1:
        raise ContractViolation("iterations must be >= 1")
    if A.ndim != 2 or not np.any(A):
        raise DegenerateInput("matrix must be nonzero and 2-D")
    rng = np.random.Generator(np.random.Philox(seed))
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    rayleigh = 0.0
    for _ in range(iterations):
        w = A.T @ (A @ v)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            # v landed exactly in the null space; restart from fresh noise
            v = rng.standard_normal(A.shape[1])
            v /= np.linalg.norm(v)
            continue
        v = w / norm
        new = float(v @ (A.T @ (A @ v)))
        if abs(new - rayleigh) < 1e-10 * max(1.0, abs(new)):
            return new
        rayleigh = new
    return rayleigh
