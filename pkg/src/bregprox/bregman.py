"""Legendre-type generators, the distances they induce, and their identities.

A generator is convex on the closed domain with its gradient defined on the
interior.  The induced distance is

    D_h(x, y) = h(x) - h(y) - <x - y, grad h(y)>,

nonnegative for convex h, zero iff x = y when h is strictly convex.  The
composite generator (1/eta) H - f turns a Bregman proximal gradient step
into a generalized proximal point step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation, DomainError, HypothesisViolation
from .functions import (
    DomainDescriptor,
    SmoothFunction,
    Vector,
    euclidean_space,
    probability_simplex,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BregmanGenerator:
    """Convex generator: value on the closed domain, gradient on its interior.

    ``strong_convexity`` is the modulus sigma (0 means unknown/none) and
    ``strong_convexity_norm`` names the norm it is stated in.  Negative
    entropy is recorded with sigma = 1 in the l1 norm on the simplex
    (Pinsker); on the simplex the same modulus also holds in l2 since the
    Hessian diag(1/x_i) dominates the identity there, but the record keeps
    the l1 caveat explicit.
    """

    value: Callable[[Vector], float]
    grad: Callable[[Vector], Vector]
    domain: DomainDescriptor
    strong_convexity: float
    kind: str  # "quadratic" | "entropy" | "composite"
    strong_convexity_norm: str = "l2"

    def __post_init__(self):
        if self.kind not in ("quadratic", "entropy", "composite"):
            raise ContractViolation(f"unknown generator kind {self.kind!r}")
        if self.strong_convexity < 0:
            raise ContractViolation("strong_convexity must be nonnegative")


@dataclass(frozen=True)
class ProximalDistanceAxioms:
    """Outcome of the randomized axiom checks for a candidate distance."""

    nonnegativity_holds: bool
    identity_of_indiscernibles_holds: bool
    convex_in_first_arg_holds: bool
    bounded_level_set_holds: bool

    def all_hold(self) -> bool:
        return (
            self.nonnegativity_holds
            and self.identity_of_indiscernibles_holds
            and self.convex_in_first_arg_holds
            and self.bounded_level_set_holds
        )


def squared_euclidean(n: int) -> BregmanGenerator:
    """H(x) = 1/2 ||x||^2; induces D_H(x, y) = 1/2 ||x - y||^2."""
    return BregmanGenerator(
        value=lambda x: 0.5 * float(np.dot(x, x)),
        grad=lambda x: np.asarray(x, dtype=float).copy(),
        domain=euclidean_space(n),
        strong_convexity=1.0,
        kind="quadratic",
    )


def negative_entropy(n: int) -> BregmanGenerator:
    """H(x) = sum x_i ln x_i on the simplex, with 0 ln 0 = 0.

    The value oracle is finite on the whole closed simplex; the gradient
    (1 + ln x_i) exists only at strictly positive points.
    """
    dom = probability_simplex(n)

    def value(x):
        x = np.asarray(x, dtype=float)
        if not dom.member(x):
            return np.inf
        xp = x[x > 0.0]
        return float(np.sum(xp * np.log(xp)))

    def grad(x):
        x = np.asarray(x, dtype=float)
        if not dom.interior(x):
            raise DomainError("entropy gradient needs strictly positive x")
        return 1.0 + np.log(x)

    return BregmanGenerator(
        value=value,
        grad=grad,
        domain=dom,
        strong_convexity=1.0,
        kind="entropy",
        strong_convexity_norm="l1",
    )


def bregman_distance(h: BregmanGenerator, x: Vector, y: Vector) -> float:
    """D_h(x, y) = h(x) - h(y) - <x - y, grad h(y)>."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if not h.domain.member(x):
        raise DomainError("first argument lies outside the closed domain")
    if not h.domain.interior(y):
        raise DomainError("second argument must be interior (gradient point)")
    return float(h.value(x) - h.value(y) - np.dot(x - y, h.grad(y)))


def composite_generator(H: BregmanGenerator, f: SmoothFunction, eta: float,
                        unchecked: bool = False) -> BregmanGenerator:
    """Generator h = (1/eta) H - f.

    Convexity of the result needs sigma >= eta * L where L is the Lipschitz
    constant of grad f; violated hypotheses raise unless ``unchecked`` is
    set (negative testing, line-search probing above 1/L).
    """
    if eta <= 0:
        raise ContractViolation("eta must be positive")
    if not unchecked:
        if H.strong_convexity <= 0:
            raise HypothesisViolation("H must be strongly convex")
        if f.lipschitz_grad is None:
            raise HypothesisViolation(
                "gradient Lipschitz constant of f is required"
            )
        if H.strong_convexity < eta * f.lipschitz_grad - 1e-12:
            raise HypothesisViolation(
                f"sigma = {H.strong_convexity} < eta * L = "
                f"{eta * f.lipschitz_grad}; composite generator not convex"
            )
        if H.strong_convexity_norm != "l2":
            logger.warning(
                "strong convexity of %s generator is recorded in the %s "
                "norm; the convexity hypothesis is checked against it as if "
                "it held in l2",
                H.kind, H.strong_convexity_norm,
            )
    return BregmanGenerator(
        value=lambda x, H=H, f=f, eta=eta: H.value(x) / eta - f.value(x),
        grad=lambda x, H=H, f=f, eta=eta: np.asarray(H.grad(x)) / eta
        - np.asarray(f.grad(x)),
        domain=H.domain,
        strong_convexity=0.0,
        kind="composite",
    )


def _combined_domain(d1: DomainDescriptor, d2: DomainDescriptor) -> DomainDescriptor:
    if d1.ambient_dimension != d2.ambient_dimension:
        raise ContractViolation("generators live in different dimensions")
    if d1.kind == d2.kind:
        return d1
    if d1.kind == "rn":
        return d2
    if d2.kind == "rn":
        return d1
    raise ContractViolation(f"incompatible domains {d1.kind!r} and {d2.kind!r}")


def _combine(h1: BregmanGenerator, h2: BregmanGenerator,
             sign: float) -> BregmanGenerator:
    return BregmanGenerator(
        value=lambda x: h1.value(x) + sign * h2.value(x),
        grad=lambda x: np.asarray(h1.grad(x)) + sign * np.asarray(h2.grad(x)),
        domain=_combined_domain(h1.domain, h2.domain),
        strong_convexity=0.0,
        kind="composite",
    )


def check_three_point(h: BregmanGenerator, a: Vector, b: Vector,
                      c: Vector) -> float:
    """Residual of D_h(c,a) + D_h(a,b) - D_h(c,b) = <grad h(b) - grad h(a), c - a>."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    lhs = (
        bregman_distance(h, c, a)
        + bregman_distance(h, a, b)
        - bregman_distance(h, c, b)
    )
    rhs = float(np.dot(np.asarray(h.grad(b)) - np.asarray(h.grad(a)), c - a))
    return abs(lhs - rhs)


def check_linearity(h1: BregmanGenerator, h2: BregmanGenerator, a: Vector,
                    b: Vector) -> float:
    """Worst residual of D_{h1}(a,b) +/- D_{h2}(a,b) = D_{h1 +/- h2}(a,b)."""
    d1 = bregman_distance(h1, a, b)
    d2 = bregman_distance(h2, a, b)
    plus = abs(d1 + d2 - bregman_distance(_combine(h1, h2, +1.0), a, b))
    minus = abs(d1 - d2 - bregman_distance(_combine(h1, h2, -1.0), a, b))
    return max(plus, minus)


def _sample_member(domain: DomainDescriptor, rng) -> Vector:
    n = domain.ambient_dimension
    if domain.kind == "simplex":
        x = rng.dirichlet(np.ones(n))
        if rng.random() < 0.2 and n > 1:
            # exercise the boundary of the closed simplex
            x[rng.integers(n)] = 0.0
            x /= np.sum(x)
        return x
    if domain.kind == "nonneg":
        return np.abs(rng.standard_normal(n))
    return rng.standard_normal(n)


def _sample_interior(domain: DomainDescriptor, rng) -> Vector:
    n = domain.ambient_dimension
    if domain.kind == "simplex":
        return rng.dirichlet(np.ones(n))
    if domain.kind == "nonneg":
        return np.abs(rng.standard_normal(n)) + 1e-3
    return rng.standard_normal(n)


def verify_proximal_distance_axioms(h: BregmanGenerator, samples: int = 1000,
                                    seed: int = 0) -> ProximalDistanceAxioms:
    """Randomized check of the proximal-distance axioms for D_h.

    Failures are reported in the returned record, never raised: degenerate
    composite generators (flat in some directions) legitimately fail the
    identity-of-indiscernibles and bounded-level-set checks.
    """
    if samples < 100:
        raise ContractViolation("samples must be >= 100")
    rng = np.random.Generator(np.random.Philox(seed))

    nonneg = True
    identity = True
    convex = True

    for _ in range(samples):
        x = _sample_member(h.domain, rng)
        y = _sample_interior(h.domain, rng)
        d = bregman_distance(h, x, y)
        if d < -1e-12:
            nonneg = False
        if d < 1e-8 and np.linalg.norm(x - y) >= 1e-4:
            identity = False
        y2 = _sample_interior(h.domain, rng)
        if bregman_distance(h, y2, y2) > 1e-12:
            identity = False
        x2 = _sample_member(h.domain, rng)
        lam = rng.uniform(0.05, 0.95)
        mid = lam * x + (1.0 - lam) * x2
        if h.domain.kind == "simplex":
            mid = mid / np.sum(mid)
        d_mid = bregman_distance(h, mid, y)
        if d_mid > lam * d + (1.0 - lam) * bregman_distance(h, x2, y) + 1e-10:
            convex = False

    bounded = _bounded_level_sets(h, rng)
    return ProximalDistanceAxioms(nonneg, identity, convex, bounded)


def _bounded_level_sets(h: BregmanGenerator, rng) -> bool:
    if h.domain.bounded():
        return True
    if h.kind == "quadratic":
        # analytic cap: {x : 1/2 ||x - y||^2 <= alpha} has radius sqrt(2 alpha)
        y = _sample_interior(h.domain, rng)
        for _ in range(100):
            x = y + rng.standard_normal(h.domain.ambient_dimension)
            d = bregman_distance(h, x, y)
            if np.linalg.norm(x - y) > np.sqrt(2.0 * d) + 1e-8:
                return False
        return True
    # composite on an unbounded domain: require growth along random rays
    y = _sample_interior(h.domain, rng)
    for _ in range(50):
        d = rng.standard_normal(h.domain.ambient_dimension)
        d /= np.linalg.norm(d)
        if bregman_distance(h, y + 1e4 * d, y) < 1.0:
            return False
    return True
